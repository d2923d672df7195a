#include "mpsd/errors.hpp"

namespace mpsd {

RangeError::RangeError(const std::string& what, std::size_t row, std::size_t col)
    : std::range_error(what + " at entry (" + std::to_string(row) + ", " + std::to_string(col) + ")"),
      row_(row),
      col_(col) {}

ResolutionError::ResolutionError(const std::string& what, int required_K)
    : std::runtime_error(what + " (required K >= " + std::to_string(required_K) + ")"),
      required_K_(required_K) {}

}  // namespace mpsd
