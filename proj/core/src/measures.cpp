#include "mpsd/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mpsd/errors.hpp"
#include "mpsd/io.hpp"
#include "mpsd/parallel.hpp"

namespace mpsd {

MatrixMeasure::MatrixMeasure(int n, int m, std::vector<Atom> atoms, std::string provenance)
    : n_(n), m_(m), provenance_(std::move(provenance)) {
  if (n < 1 || m < 1) throw InputError("measure dimensions must be positive");
  std::map<std::vector<double>, CMatrix> merged;
  for (auto& a : atoms) {
    if (a.xi.size() != n) throw InputError("atom location has wrong dimension");
    if (!a.xi.allFinite()) throw InputError("atom location is not finite");
    if (a.W.rows() != m || a.W.cols() != m) throw InputError("atom weight has wrong shape");
    if (!a.W.allFinite()) throw InputError("atom weight is not finite");
    std::vector<double> key(a.xi.data(), a.xi.data() + n);
    auto [it, inserted] = merged.try_emplace(std::move(key), a.W);
    if (!inserted) it->second += a.W;
  }
  atoms_.reserve(merged.size());
  for (auto& [key, W] : merged) {
    atoms_.push_back({Eigen::Map<const Point>(key.data(), n), std::move(W)});
  }
}

CMatrix MatrixMeasure::total_mass() const {
  CMatrix s = CMatrix::Zero(m_, m_);
  for (const auto& a : atoms_) s += a.W;
  return s;
}

double variation(const MatrixMeasure& mu) {
  double s = 0.0;
  for (const auto& a : mu.atoms()) s += matrix_norm(a.W, NormKind::op);
  return s;
}

double entrywise_variation(const MatrixMeasure& mu) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(mu.m(), mu.m());
  for (const auto& a : mu.atoms()) s += a.W.cwiseAbs();
  return s.maxCoeff();
}

PsdVerdict is_nonnegative(const MatrixMeasure& mu, std::optional<double> tol) {
  PsdVerdict worst;
  worst.verdict = true;
  worst.witness = CVector::Unit(mu.m(), 0);
  worst.tol = tol.value_or(1e-9);
  bool first = true;
  for (const auto& a : mu.atoms()) {
    const PsdVerdict v = psd_check(a.W, tol);
    const bool worse = (worst.verdict && !v.verdict) ||
                       (worst.verdict == v.verdict && v.min_eigenvalue < worst.min_eigenvalue);
    if (first || worse) worst = v;
    first = false;
  }
  return worst;
}

CMatrix fourier_transform(const MatrixMeasure& mu, const Point& x) {
  if (x.size() != mu.n()) throw InputError("point dimension does not match measure");
  CMatrix s = CMatrix::Zero(mu.m(), mu.m());
  for (const auto& a : mu.atoms()) s += std::polar(1.0, -x.dot(a.xi)) * a.W;
  return s * std::pow(2.0 * std::numbers::pi, -mu.n() / 2.0);
}

MatrixFunction fourier_function(const MatrixMeasure& mu) {
  Properties props;
  props.hermitian_symmetric = std::all_of(mu.atoms().begin(), mu.atoms().end(), [](const Atom& a) {
    return hermiticity_defect(a.W) <= default_tol(a.W);
  });
  props.psd_claimed = mu.atoms().empty() || is_nonnegative(mu).verdict;
  props.cpsd_claimed = props.psd_claimed;
  return MatrixFunction(mu.n(), mu.m(), [mu](const Point& x) { return fourier_transform(mu, x); },
                        "bochner", props);
}

namespace {

void require_compatible(const MatrixMeasure& mu, const GridField& f) {
  if (f.domain() != Domain::space) throw InputError("measure operations need a spatial field");
  if (mu.n() != f.spec().n() || mu.m() != f.m()) {
    throw InputError("measure and field dimensions differ");
  }
}

std::vector<int> grid_offset(const GridSpec& spec, const Point& xi) {
  std::vector<int> s(static_cast<std::size_t>(spec.n()));
  for (int a = 0; a < spec.n(); ++a) {
    s[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(xi(a) / spec.spacing()));
  }
  return s;
}

}  // namespace

ConvolveResult convolve(const MatrixMeasure& mu, const GridField& f) {
  require_compatible(mu, f);
  const GridSpec& spec = f.spec();
  ConvolveResult res{GridField(spec, f.m()), false};
  std::vector<std::vector<int>> offsets;
  offsets.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) {
    if (!spec.contains(a.xi)) res.out_of_range = true;
    offsets.push_back(grid_offset(spec, a.xi));
  }
  const auto& atoms = mu.atoms();
  const int n = spec.n(), K = spec.K();
  parallel_for(spec.size(), [&](std::size_t i) {
    const std::vector<int> idx = spec.index(i);
    CMatrix acc = CMatrix::Zero(f.m(), f.m());
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      std::size_t src = 0;
      for (int a = 0; a < n; ++a) {
        int k = (idx[static_cast<std::size_t>(a)] - offsets[j][static_cast<std::size_t>(a)]) % K;
        if (k < 0) k += K;
        src = src * static_cast<std::size_t>(K) + static_cast<std::size_t>(k);
      }
      acc.noalias() += f.at(src) * atoms[j].W;
    }
    res.field.at(i) = acc;
  });
  return res;
}

cplx duality_pairing(const GridField& f, const MatrixMeasure& mu) {
  require_compatible(mu, f);
  CMatrix acc = CMatrix::Zero(f.m(), f.m());
  for (const auto& a : mu.atoms()) acc += f.at(f.spec().nearest(a.xi)) * a.W;
  return acc.trace();
}

namespace {
double gaussian_density(const Point& x) {
  return std::pow(2.0 * std::numbers::pi, -x.size() / 2.0) * std::exp(-x.squaredNorm() / 2.0);
}
}  // namespace

MatrixMeasure gaussian_measure(int n, double extent, int cells_per_axis, const CMatrix& weight) {
  if (n < 1 || n > 3) throw InputError("gaussian measure supports n = 1, 2, 3");
  if (!(extent > 0) || !std::isfinite(extent)) throw InputError("extent must be positive");
  if (cells_per_axis < 8) throw InputError("cells_per_axis must be >= 8");
  if (!weight.allFinite() || weight.rows() != weight.cols()) throw InputError("invalid weight");
  const double h = 2.0 * extent / cells_per_axis;
  const double vol = std::pow(h, n);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(cells_per_axis);
  std::vector<Atom> atoms;
  atoms.reserve(total);
  for (std::size_t f = 0; f < total; ++f) {
    Point x(n);
    std::size_t rest = f;
    for (int a = n - 1; a >= 0; --a) {
      x(a) = -extent + (static_cast<double>(rest % static_cast<std::size_t>(cells_per_axis)) + 0.5) * h;
      rest /= static_cast<std::size_t>(cells_per_axis);
    }
    atoms.push_back({x, gaussian_density(x) * vol * weight});
  }
  return MatrixMeasure(n, static_cast<int>(weight.rows()), std::move(atoms),
                       "gaussian-cells extent=" + std::to_string(extent) +
                           " cells=" + std::to_string(cells_per_axis));
}

MatrixMeasure gaussian_grid_measure(const GridSpec& spec, const CMatrix& weight) {
  if (!weight.allFinite() || weight.rows() != weight.cols()) throw InputError("invalid weight");
  const double cutoff = 1e-18 * gaussian_density(Point::Zero(spec.n()));
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Point x = spec.coord(i);
    const double d = gaussian_density(x);
    if (d < cutoff) continue;
    atoms.push_back({x, d * spec.cell_volume() * weight});
  }
  return MatrixMeasure(spec.n(), static_cast<int>(weight.rows()), std::move(atoms),
                       "gaussian-grid L=" + std::to_string(spec.L()) + " K=" + std::to_string(spec.K()));
}

CMatrix mass_in_ball(const MatrixMeasure& mu, const Point& center, double radius) {
  if (center.size() != mu.n()) throw InputError("centre dimension does not match measure");
  CMatrix s = CMatrix::Zero(mu.m(), mu.m());
  for (const auto& a : mu.atoms()) {
    if ((a.xi - center).norm() <= radius) s += a.W;
  }
  return s;
}

Report bochner_forward_check(const MatrixMeasure& mu, const PointSet& X, std::optional<double> tol) {
  const PsdVerdict nonneg = is_nonnegative(mu, tol);
  if (!nonneg.verdict) {
    throw PreconditionError("measure has a non positive semidefinite atom (min eigenvalue " +
                            std::to_string(nonneg.min_eigenvalue) + ")");
  }
  const MatrixFunction F = fourier_function(mu);
  const PsdVerdict v = psd_function_check(F, X, tol);
  const double t = tol.value_or(v.tol);
  const double origin = matrix_norm(F(Point::Zero(mu.n())), NormKind::op);

  double symmetry = 0.0, excess = -origin;
  for (int p = 0; p < X.size(); ++p) {
    excess = std::max(excess, matrix_norm(F(X[p]), NormKind::op) - origin);
    for (int q = 0; q < X.size(); ++q) {
      const Point x = X[p] - X[q];
      symmetry = std::max(symmetry, matrix_norm(F(-x) - F(x).adjoint(), NormKind::op));
      excess = std::max(excess, matrix_norm(F(x), NormKind::op) - origin);
    }
  }
  Report r("bochner_forward");
  r.add("positive_semidefinite", v.verdict, v.min_eigenvalue, -v.tol);
  r.add("hermitian_symmetry", symmetry <= t, symmetry, t);
  r.add("bounded_by_origin", excess <= t, excess, t);
  r.data["gram"] = verdict_json(v);
  r.data["origin_norm"] = origin;
  r.data["atoms"] = mu.atoms().size();
  return r;
}

}  // namespace mpsd
