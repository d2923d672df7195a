#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpsd::cli {

enum class Format { json, csv };

// Every input of a run. Identical configs produce byte-identical reports.
struct RunConfig {
  std::string subcommand;
  // Each input is a file path, inline JSON, or a bare catalog id.
  std::string matrix;
  std::string function;
  std::string measure;
  std::string points;
  std::string field;      // binary field file
  std::string field_out;  // where convolve / multiplier-apply write their output field
  std::vector<double> t;
  std::optional<double> eps;
  std::optional<double> a;
  std::optional<int> n;
  std::optional<double> L;
  std::optional<int> K;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  int probes = 8;
  std::string out;
  Format format = Format::json;
};

const std::vector<std::string>& subcommands();

// Exit status: 0 all checks passed, 1 a mathematical check failed, 2 input or usage error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into config. Returns an exit status when the program should stop
// (help, usage error), otherwise nullopt.
std::optional<int> parse(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                         std::ostream& err);

}  // namespace mpsd::cli
