#include "mpsd/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "mpsd/errors.hpp"
#include "mpsd/parallel.hpp"

namespace mpsd {

namespace {
bool is_power_of_two(int k) { return k > 0 && (k & (k - 1)) == 0; }
}  // namespace

GridSpec::GridSpec(int n, double L, int K) : n_(n), L_(L), K_(K), size_(1) {
  if (n < 1 || n > 3) throw InputError("grid dimension must be 1, 2 or 3");
  if (!(L > 0) || !std::isfinite(L)) throw InputError("grid side length must be positive");
  if (K < 8 || !is_power_of_two(K)) throw InputError("K must be a power of two >= 8");
  for (int a = 0; a < n; ++a) size_ *= static_cast<std::size_t>(K);
}

double GridSpec::dual_spacing() const { return 2.0 * std::numbers::pi / L_; }
double GridSpec::cell_volume() const { return std::pow(spacing(), n_); }
double GridSpec::dual_cell_volume() const { return std::pow(dual_spacing(), n_); }

std::vector<int> GridSpec::index(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(n_));
  for (int a = n_ - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % static_cast<std::size_t>(K_));
    flat /= static_cast<std::size_t>(K_);
  }
  return idx;
}

std::size_t GridSpec::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (int a = 0; a < n_; ++a) {
    int k = idx[static_cast<std::size_t>(a)] % K_;
    if (k < 0) k += K_;
    f = f * static_cast<std::size_t>(K_) + static_cast<std::size_t>(k);
  }
  return f;
}

Point GridSpec::coord(std::size_t flat_index) const {
  const auto idx = index(flat_index);
  Point x(n_);
  for (int a = 0; a < n_; ++a) x(a) = -L_ / 2 + idx[static_cast<std::size_t>(a)] * spacing();
  return x;
}

Point GridSpec::freq(std::size_t flat_index) const {
  const auto idx = index(flat_index);
  Point xi(n_);
  for (int a = 0; a < n_; ++a) xi(a) = (idx[static_cast<std::size_t>(a)] - K_ / 2) * dual_spacing();
  return xi;
}

std::size_t GridSpec::nearest(const Point& x) const {
  if (x.size() != n_) throw InputError("point dimension does not match grid");
  std::vector<int> idx(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a) {
    const double k = std::round((x(a) + L_ / 2) / spacing());
    idx[static_cast<std::size_t>(a)] = static_cast<int>(std::fmod(k, static_cast<double>(K_)));
  }
  return flat(idx);
}

bool GridSpec::contains(const Point& x) const {
  for (int a = 0; a < n_; ++a) {
    if (!(x(a) >= -L_ / 2 && x(a) < L_ / 2)) return false;
  }
  return true;
}

GridField::GridField(GridSpec spec, int m, Domain domain)
    : spec_(spec), m_(m), domain_(domain), data_(spec.size() * static_cast<std::size_t>(m) * m) {
  if (m < 1) throw InputError("matrix dimension must be positive");
}

GridField GridField::sample(const GridSpec& spec, int m, const std::function<CMatrix(const Point&)>& f,
                            Domain domain) {
  GridField out(spec, m, domain);
  parallel_for(spec.size(), [&](std::size_t i) {
    const CMatrix v = f(out.location(i));
    if (v.rows() != m || v.cols() != m) throw InputError("sampled value has wrong shape");
    if (!v.allFinite()) throw RangeError("sampled value is not finite", 0, 0);
    out.at(i) = v;
  });
  return out;
}

Point GridField::location(std::size_t i) const {
  return domain_ == Domain::space ? spec_.coord(i) : spec_.freq(i);
}

void GridField::require_same_shape(const GridField& o) const {
  if (spec_ != o.spec_ || m_ != o.m_ || domain_ != o.domain_) {
    throw InputError("fields differ in grid, matrix size or domain");
  }
}

GridField& GridField::operator+=(const GridField& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GridField& GridField::operator-=(const GridField& o) {
  require_same_shape(o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

GridField& GridField::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

GridField GridField::left_multiplied(const CMatrix& A) const {
  if (A.rows() != m_ || A.cols() != m_) throw InputError("left factor has wrong shape");
  GridField out(spec_, m_, domain_);
  for (std::size_t i = 0; i < size(); ++i) out.at(i) = A * at(i);
  return out;
}

GridField GridField::right_multiplied(const CMatrix& A) const {
  if (A.rows() != m_ || A.cols() != m_) throw InputError("right factor has wrong shape");
  GridField out(spec_, m_, domain_);
  for (std::size_t i = 0; i < size(); ++i) out.at(i) = at(i) * A;
  return out;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Parity of the index digit sum: the (-1)^k factor that moves the origin of the
// FFT index range to the centre of the grid.
bool odd_parity(const GridSpec& spec, std::size_t flat) {
  int s = 0;
  for (int k : spec.index(flat)) s += k;
  return (s & 1) != 0;
}

// Transforms every matrix entry as an independent n-dimensional sequence.
GridField transform(const GridField& in, int sign, double scale, Domain out_domain) {
  const GridSpec& spec = in.spec();
  const std::size_t count = spec.size(), block = in.block();
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count * block));
  if (!buf) throw std::bad_alloc();
  std::vector<int> dims(static_cast<std::size_t>(spec.n()), spec.K());
  std::vector<char> parity(count);
  for (std::size_t i = 0; i < count; ++i) parity[i] = odd_parity(spec, i);

  for (std::size_t i = 0; i < count; ++i) {
    const double s = parity[i] ? -1.0 : 1.0;
    for (std::size_t e = 0; e < block; ++e) {
      const cplx v = in.data()[i * block + e] * s;
      buf[i * block + e][0] = v.real();
      buf[i * block + e][1] = v.imag();
    }
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_many_dft(spec.n(), dims.data(), static_cast<int>(block), buf, nullptr,
                              static_cast<int>(block), 1, buf, nullptr, static_cast<int>(block), 1,
                              sign, FFTW_ESTIMATE);
  }
  if (!plan) {
    fftw_free(buf);
    throw std::runtime_error("FFT plan creation failed");
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  GridField out(spec, in.m(), out_domain);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = parity[i] ? -scale : scale;
    for (std::size_t e = 0; e < block; ++e) {
      out.data()[i * block + e] = cplx(buf[i * block + e][0], buf[i * block + e][1]) * s;
    }
  }
  fftw_free(buf);
  return out;
}

}  // namespace

GridField dft(const GridField& f) {
  if (f.domain() != Domain::space) throw InputError("dft expects a spatial field");
  const GridSpec& s = f.spec();
  const double scale = s.cell_volume() * std::pow(2.0 * std::numbers::pi, -s.n() / 2.0);
  return transform(f, FFTW_FORWARD, scale, Domain::frequency);
}

GridField idft(const GridField& g) {
  if (g.domain() != Domain::frequency) throw InputError("idft expects a frequency field");
  const GridSpec& s = g.spec();
  const double scale = s.dual_cell_volume() * std::pow(2.0 * std::numbers::pi, -s.n() / 2.0);
  return transform(g, FFTW_BACKWARD, scale, Domain::space);
}

namespace {
double cell(const GridField& f) {
  return f.domain() == Domain::space ? f.spec().cell_volume() : f.spec().dual_cell_volume();
}
}  // namespace

double hs_norm(const GridField& f) {
  double s = 0.0;
  const std::size_t total = f.size() * f.block();
  for (std::size_t i = 0; i < total; ++i) s += std::norm(f.data()[i]);
  return std::sqrt(s * cell(f));
}

double triple_norm_1(const GridField& f) {
  double s = 0.0;
  const std::size_t total = f.size() * f.block();
  for (std::size_t i = 0; i < total; ++i) s += std::abs(f.data()[i]);
  return s * cell(f);
}

double triple_norm_2(const GridField& f) {
  double total = 0.0;
  for (std::size_t e = 0; e < f.block(); ++e) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f.data()[i * f.block() + e]);
    total += std::sqrt(s * cell(f));
  }
  return total;
}

double sup_norm(const GridField& f, NormKind kind) {
  std::vector<double> v(f.size());
  parallel_for(f.size(), [&](std::size_t i) { v[i] = matrix_norm(f.at(i), kind); });
  double best = 0.0;
  for (double x : v) best = std::max(best, x);
  return best;
}

double max_abs_difference(const GridField& a, const GridField& b) {
  if (a.spec() != b.spec() || a.m() != b.m()) throw InputError("fields differ in shape");
  double best = 0.0;
  const std::size_t total = a.size() * a.block();
  for (std::size_t i = 0; i < total; ++i) best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
  return best;
}

cplx hs_inner(const GridField& a, const GridField& b) {
  if (a.spec() != b.spec() || a.m() != b.m() || a.domain() != b.domain()) {
    throw InputError("fields differ in shape");
  }
  cplx s = 0.0;
  const std::size_t total = a.size() * a.block();
  for (std::size_t i = 0; i < total; ++i) s += std::conj(a.data()[i]) * b.data()[i];
  return s * cell(a);
}

namespace {

constexpr char kMagic[8] = {'M', 'P', 'S', 'D', 'G', 'F', '1', '\0'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw InputError("truncated field file");
  return v;
}

}  // namespace

void write_field(std::ostream& os, const GridField& f, bool single_precision) {
  os.write(kMagic, sizeof(kMagic));
  put<std::int32_t>(os, f.spec().n());
  put<std::int32_t>(os, f.m());
  put<double>(os, f.spec().L());
  put<std::int32_t>(os, f.spec().K());
  put<std::int32_t>(os, f.domain() == Domain::space ? 0 : 1);
  put<std::int32_t>(os, single_precision ? 8 : 16);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto A = f.at(i);
    for (int r = 0; r < f.m(); ++r) {
      for (int c = 0; c < f.m(); ++c) {
        if (single_precision) {
          put<float>(os, static_cast<float>(A(r, c).real()));
          put<float>(os, static_cast<float>(A(r, c).imag()));
        } else {
          put<double>(os, A(r, c).real());
          put<double>(os, A(r, c).imag());
        }
      }
    }
  }
  if (!os) throw std::runtime_error("failed writing field");
}

GridField read_field(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw InputError("not a grid field file");
  }
  const int n = get<std::int32_t>(is);
  const int m = get<std::int32_t>(is);
  const double L = get<double>(is);
  const int K = get<std::int32_t>(is);
  const int domain = get<std::int32_t>(is);
  const int bytes = get<std::int32_t>(is);
  if (bytes != 8 && bytes != 16) throw InputError("unsupported scalar size in field file");
  if (m < 1 || m > 64) throw InputError("unsupported matrix size in field file");
  GridField f(GridSpec(n, L, K), m, domain == 0 ? Domain::space : Domain::frequency);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto A = f.at(i);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        if (bytes == 8) {
          const float re = get<float>(is), im = get<float>(is);
          A(r, c) = cplx(re, im);
        } else {
          const double re = get<double>(is), im = get<double>(is);
          A(r, c) = cplx(re, im);
        }
      }
    }
    if (!A.allFinite()) throw InputError("field file contains non-finite values");
  }
  return f;
}

void write_field_file(const std::string& path, const GridField& f, bool single_precision) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open " + path + " for writing");
  write_field(os, f, single_precision);
}

GridField read_field_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  return read_field(is);
}

}  // namespace mpsd
