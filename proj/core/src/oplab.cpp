#include "mpsd/oplab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mpsd/errors.hpp"
#include "mpsd/io.hpp"
#include "mpsd/parallel.hpp"

namespace mpsd {

namespace {

constexpr double kPi = std::numbers::pi;

double fourier_factor(int n) { return std::pow(2.0 * kPi, -n / 2.0); }

int next_pow2_at_least(double x) {
  int k = 8;
  while (k < x && k < (1 << 30)) k *= 2;
  return k;
}

void require_resolved(const GridSpec& spec, double feature, double points, const char* what) {
  if (feature < points * spec.spacing()) {
    throw ResolutionError(std::string(what) + " is smaller than " + std::to_string(static_cast<int>(points)) +
                              " grid spacings",
                          next_pow2_at_least(points * spec.L() / feature));
  }
}

double violation(const ScanPoint& p) { return std::max(-p.min_eigenvalue, p.defect); }

struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

Worst worst_violation(const std::vector<ScanPoint>& scan) {
  Worst w;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const double v = violation(scan[i]);
    if (v > w.value) w = {v, i};
  }
  return w;
}

void require_psd_probe(const GridField& probe, double tol, std::size_t index) {
  const double scale = std::max(1.0, sup_norm(probe, NormKind::op));
  const Worst w = worst_violation(eigen_scan(probe));
  if (w.value > tol * scale) {
    throw PreconditionError("probe " + std::to_string(index) +
                            " is not positive semidefinite at every grid point");
  }
}

GridField pointwise_adjoint(const GridField& f) {
  GridField out(f.spec(), f.m(), f.domain());
  for (std::size_t i = 0; i < f.size(); ++i) out.at(i) = f.at(i).adjoint();
  return out;
}

GridField hadamard_exp_field(const GridField& symbol, double t) {
  GridField out(symbol.spec(), symbol.m(), symbol.domain());
  for (std::size_t i = 0; i < symbol.size(); ++i) out.at(i) = hadamard_exp(symbol.at(i), t);
  return out;
}

GridField symbol_for(const MatrixFunction& F, double t, const GridSpec& spec) {
  if (F.n() != spec.n()) throw InputError("function dimension does not match grid");
  return hadamard_exp_field(MultiplierSymbol(F).sample(spec), t);
}

GridField unit_entry_field(const GridField& scalar, int m, int r, int c) {
  GridField out(scalar.spec(), m, scalar.domain());
  for (std::size_t i = 0; i < scalar.size(); ++i) out.at(i)(r, c) = scalar.at(i)(0, 0);
  return out;
}

GridField all_entries_field(const GridField& scalar, int m) {
  GridField out(scalar.spec(), m, scalar.domain());
  const double w = 1.0 / (static_cast<double>(m) * m);
  for (std::size_t i = 0; i < scalar.size(); ++i) out.at(i).setConstant(scalar.at(i)(0, 0) * w);
  return out;
}

GridField delta_scalar(const GridSpec& spec) {
  GridField d(spec, 1);
  d.at(spec.nearest(Point::Zero(spec.n())))(0, 0) = 1.0;
  return d;
}

}  // namespace

const char* to_string(NormMethod m) {
  switch (m) {
    case NormMethod::supremum: return "supremum";
    case NormMethod::power_iteration: return "power_iteration";
    case NormMethod::random_search: return "random_search";
  }
  return "unknown";
}

MultiplierSymbol::MultiplierSymbol(int n, int m, Evaluator f, std::string label)
    : n_(n), m_(m), f_(std::move(f)), label_(std::move(label)) {
  if (n < 1 || m < 1 || !f_) throw InputError("invalid multiplier symbol");
}

MultiplierSymbol::MultiplierSymbol(const MatrixFunction& F)
    : n_(F.n()), m_(F.m()), f_([F](const Point& xi) { return F(xi); }), label_(F.id()) {}

MultiplierSymbol::MultiplierSymbol(GridField samples, std::string label)
    : n_(samples.spec().n()), m_(samples.m()), label_(std::move(label)) {
  if (samples.domain() != Domain::frequency) throw InputError("symbol samples must be on the dual grid");
  samples_.emplace(std::move(samples));
}

GridField MultiplierSymbol::sample(const GridSpec& spec) const {
  if (samples_) {
    if (samples_->spec() != spec) throw InputError("precomputed symbol was sampled on another grid");
    return *samples_;
  }
  if (spec.n() != n_) throw InputError("symbol dimension does not match grid");
  return GridField::sample(spec, m_, f_, Domain::frequency);
}

GridField apply_multiplier_sampled(const GridField& symbol, const GridField& f) {
  if (symbol.domain() != Domain::frequency || symbol.spec() != f.spec() || symbol.m() != f.m()) {
    throw InputError("symbol and field are incompatible");
  }
  GridField g = dft(f);
  for (std::size_t i = 0; i < g.size(); ++i) g.at(i) = g.at(i) * symbol.at(i);
  return idft(g);
}

GridField apply_multiplier(const MultiplierSymbol& F, const GridField& f) {
  if (F.m() != f.m()) throw InputError("symbol and field matrix sizes differ");
  return apply_multiplier_sampled(F.sample(f.spec()), f);
}

std::vector<ScanPoint> eigen_scan(const GridField& f) {
  std::vector<ScanPoint> out(f.size());
  parallel_for(f.size(), [&](std::size_t i) {
    const CMatrix A = f.at(i);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A), Eigen::EigenvaluesOnly);
    out[i] = {es.eigenvalues()(0), hermiticity_defect(A)};
  });
  return out;
}

Report positivity_probe(const MultiplierSymbol& F, const std::vector<GridField>& probes, double tol) {
  if (probes.empty()) throw InputError("at least one probe is required");
  Report r("positivity_probe");
  json per_probe = json::array();
  double worst_min = std::numeric_limits<double>::infinity(), worst_defect = 0.0;
  Worst overall;
  std::size_t worst_probe = 0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    require_psd_probe(probes[p], tol, p);
    const GridField Y = apply_multiplier(F, probes[p]);
    const double scale = std::max(1.0, sup_norm(Y, NormKind::op));
    const auto scan = eigen_scan(Y);
    const Worst w = worst_violation(scan);
    for (const auto& s : scan) {
      worst_min = std::min(worst_min, s.min_eigenvalue);
      worst_defect = std::max(worst_defect, s.defect);
    }
    if (w.value / scale > overall.value) {
      overall = {w.value / scale, w.index};
      worst_probe = p;
    }
    r.add("probe_" + std::to_string(p), w.value <= tol * scale, w.value, tol * scale);
    per_probe.push_back({{"worst_violation", w.value},
                         {"worst_location", point_json(Y.location(w.index))},
                         {"min_eigenvalue", scan[w.index].min_eigenvalue},
                         {"defect", scan[w.index].defect}});
  }
  r.data["probes"] = std::move(per_probe);
  r.data["worst_min_eigenvalue"] = worst_min;
  r.data["worst_defect"] = worst_defect;
  r.data["worst_probe"] = worst_probe;
  r.data["worst_location"] = point_json(probes[worst_probe].location(overall.index));
  r.data["grid"] = {{"n", probes[0].spec().n()}, {"L", probes[0].spec().L()}, {"K", probes[0].spec().K()}};
  return r;
}

double smoothstep_cutoff(double r, double radius, double eps) {
  if (r <= radius) return 1.0;
  if (r >= radius + eps) return 0.0;
  const double u = (r - radius) / eps;
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

GridField bump_field(const GridSpec& spec, int m, double radius, double eps, const CMatrix& D) {
  if (D.rows() != m || D.cols() != m) throw InputError("bump weight has wrong shape");
  if (!psd_check(D).verdict) throw PreconditionError("bump weight must be positive semidefinite");
  if (!(radius >= 0) || !(eps > 0)) throw InputError("bump needs radius >= 0 and eps > 0");
  if (!(radius + eps < spec.L() / 2)) throw InputError("bump support must fit inside the torus");
  GridField out(spec, m);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double h = smoothstep_cutoff(spec.coord(i).norm(), radius, eps);
    if (h != 0.0) out.at(i) = h * D;
  }
  return out;
}

GridField gaussian_field(const GridSpec& spec, const Point& center, double width, const CMatrix& D) {
  if (!(width > 0)) throw InputError("gaussian width must be positive");
  if (center.size() != spec.n()) throw InputError("centre dimension does not match grid");
  GridField out(spec, static_cast<int>(D.rows()));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r2 = (spec.coord(i) - center).squaredNorm();
    out.at(i) = std::exp(-r2 / (2.0 * width * width)) * D;
  }
  return out;
}

double gaussian_unit_ball_mass(int n) {
  const double e = std::erf(1.0 / std::sqrt(2.0));
  switch (n) {
    case 1: return e;
    case 2: return 1.0 - std::exp(-0.5);
    case 3: return e - std::sqrt(2.0 / kPi) * std::exp(-0.5);
  }
  throw InputError("unit ball mass implemented for n = 1, 2, 3");
}

Report right_multiplier_counterexample(const GridSpec& spec, double eps, std::optional<CMatrix> M_opt) {
  CMatrix M(2, 2);
  M << 3, 1, 1, 3;
  if (M_opt) M = *M_opt;
  if (M.rows() != 2 || M.cols() != 2) throw InputError("probe weight must be 2 x 2");
  require_resolved(spec, eps, 4.0, "probe transition width");
  const int n = spec.n();
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;

  const MultiplierSymbol F(n, 2, [A, n](const Point& xi) -> CMatrix {
    return fourier_factor(n) * std::exp(-xi.squaredNorm() / 2.0) * A;
  }, "gaussian_diag");
  const GridField g = bump_field(spec, 2, 1.0, eps, M);
  const std::size_t origin = spec.nearest(Point::Zero(n));
  const CMatrix Y = apply_multiplier(F, g).at(origin);

  // Same value through the atomic measure: (2 pi)^{-n/2} sum_j g(-xi_j) W_j.
  const MatrixMeasure mu = gaussian_grid_measure(spec, A);
  CMatrix Yc = CMatrix::Zero(2, 2);
  for (const auto& a : mu.atoms()) Yc += g.at(spec.nearest(-a.xi)) * a.W;
  Yc *= fourier_factor(n);

  const CMatrix limit = fourier_factor(n) * gaussian_unit_ball_mass(n) * M * A;
  const double tol = 1e-9 * std::max(1.0, matrix_norm(Y, NormKind::op));
  const PsdVerdict v = psd_check(Y, tol);
  const double limit_scale = limit.cwiseAbs().maxCoeff();
  const double near = (Y - limit).cwiseAbs().maxCoeff() / limit_scale;
  const double routes = (Y - Yc).cwiseAbs().maxCoeff() / std::max(1e-300, Y.cwiseAbs().maxCoeff());

  Report r("right_multiplier_counterexample");
  r.add("output_not_psd", !v.verdict, v.min_eigenvalue, -tol);
  r.add("defect_above_10_tol", v.hermiticity_defect > 10 * tol, v.hermiticity_defect, 10 * tol);
  if (std::abs(limit(1, 0)) > 0 && std::abs(Y(1, 0)) > 0) {
    const double ratio = (Y(0, 1) / Y(1, 0)).real();
    const double expected = (limit(0, 1) / limit(1, 0)).real();
    r.add("entry_ratio", std::abs(ratio / expected - 1.0) <= 0.05, ratio, expected);
    r.data["entry_ratio"] = ratio;
  }
  r.add("near_limit", near <= 0.05, near, 0.05);
  r.add("measure_route_agrees", routes <= 1e-6, routes, 1e-6);
  r.matches_expected = r.all_passed();
  r.data["Y"] = matrix_json(Y);
  r.data["Y_measure_route"] = matrix_json(Yc);
  r.data["limit"] = matrix_json(limit);
  r.data["verdict"] = verdict_json(v);
  r.data["eps"] = eps;
  r.data["grid"] = {{"n", n}, {"L", spec.L()}, {"K", spec.K()}};
  return r;
}

Report bump_probe_witness(const MatrixFunction& F, double t, const GridSpec& spec, double eps,
                          std::optional<CMatrix> D_opt, double tol) {
  const int m = F.m();
  CMatrix D = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) D(j, j) = j + 1.0;
  if (D_opt) D = *D_opt;
  require_resolved(spec, eps, 4.0, "probe transition width");
  const GridField S = symbol_for(F, t, spec);

  Report r("bump_probe_witness");
  r.data["t"] = t;
  r.data["D"] = matrix_json(D);
  r.data["grid"] = {{"n", spec.n()}, {"L", spec.L()}, {"K", spec.K()}};
  json tried = json::array();
  bool found = false;
  for (double radius : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    if (!(radius + eps < spec.L() / 4)) break;
    const GridField Y = apply_multiplier_sampled(S, bump_field(spec, m, radius, eps, D));
    const double scale = std::max(1.0, sup_norm(Y, NormKind::op));
    const auto scan = eigen_scan(Y);
    const Worst w = worst_violation(scan);
    tried.push_back({{"radius", radius}, {"worst_violation", w.value}});
    if (w.value > tol * scale) {
      found = true;
      r.data["witness"] = {{"radius", radius},
                           {"location", point_json(Y.location(w.index))},
                           {"min_eigenvalue", scan[w.index].min_eigenvalue},
                           {"defect", scan[w.index].defect},
                           {"value", matrix_json(Y.at(w.index))}};
      r.add("positivity_preserved", false, w.value, tol * scale);
      break;
    }
  }
  r.data["radii"] = std::move(tried);
  r.data["witness_found"] = found;
  if (!found) {
    r.inconclusive = true;
    r.data["scope"] = "no witness at this resolution; positivity preservation is not certified";
  }
  // A witness is expected exactly when D is not a multiple of the identity.
  const bool expected = (D - D(0, 0) * CMatrix::Identity(m, m)).cwiseAbs().maxCoeff() > 0.0;
  r.matches_expected = found == expected;
  return r;
}

Report trace_positivity_check(const MatrixFunction& F, const std::vector<double>& ts,
                              const std::vector<GridField>& probes, double tol) {
  if (probes.empty() || ts.empty()) throw InputError("trace check needs probes and t values");
  for (std::size_t p = 0; p < probes.size(); ++p) require_psd_probe(probes[p], 1e-9, p);
  Report r("trace_positivity");
  double min_trace = std::numeric_limits<double>::infinity(), max_imag = 0.0;
  json worst;
  for (double t : ts) {
    std::optional<GridField> S;
    for (std::size_t p = 0; p < probes.size(); ++p) {
      if (!S || S->spec() != probes[p].spec()) S = symbol_for(F, t, probes[p].spec());
      const GridField Y = apply_multiplier_sampled(*S, probes[p]);
      double local = std::numeric_limits<double>::infinity();
      std::size_t where = 0;
      for (std::size_t i = 0; i < Y.size(); ++i) {
        const cplx tr = Y.at(i).trace();
        max_imag = std::max(max_imag, std::abs(tr.imag()));
        if (tr.real() < local) {
          local = tr.real();
          where = i;
        }
      }
      if (local < min_trace) {
        min_trace = local;
        worst = {{"t", t}, {"probe", p}, {"location", point_json(Y.location(where))}};
      }
      r.add("t=" + std::to_string(t) + ",probe=" + std::to_string(p), local >= -tol, local, -tol);
    }
  }
  r.data["min_trace"] = min_trace;
  r.data["max_imaginary_trace"] = max_imag;
  r.data["worst"] = worst;
  return r;
}

std::pair<NormEstimate, NormEstimate> l2_multiplier_norm(const MultiplierSymbol& F, const GridSpec& spec,
                                                         std::uint64_t seed, int max_iterations,
                                                         double rtol) {
  const GridField S = F.sample(spec);
  NormEstimate sup{sup_norm(S, NormKind::op), NormMethod::supremum, 0, 0.0};

  const GridField Sadj = pointwise_adjoint(S);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  GridField v(spec, F.m());
  for (std::size_t i = 0; i < v.size() * v.block(); ++i) v.data()[i] = cplx(g(rng), g(rng));
  v *= 1.0 / hs_norm(v);

  NormEstimate power{0.0, NormMethod::power_iteration, 0, 0.0};
  double lambda = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    GridField w = apply_multiplier_sampled(Sadj, apply_multiplier_sampled(S, v));
    lambda = hs_inner(v, w).real();
    power.iterations = it;
    const double wn = hs_norm(w);
    if (!(lambda > 0) || wn == 0.0) {
      lambda = 0.0;
      power.residual = 0.0;
      break;
    }
    GridField resid = w;
    GridField scaled = v;
    scaled *= lambda;
    resid -= scaled;
    power.residual = hs_norm(resid) / lambda;
    if (power.residual < rtol) break;
    w *= 1.0 / wn;
    v = std::move(w);
  }
  power.value = std::sqrt(std::max(0.0, lambda));
  return {sup, power};
}

CMatrix right_mult_matrix(const CMatrix& A) {
  require_valid(A);
  const Eigen::Index m = A.rows();
  CMatrix K = CMatrix::Zero(m * m, m * m);
  for (Eigen::Index b = 0; b < m; ++b) K.block(b * m, b * m, m, m) = A.transpose();
  return K;
}

double right_mult_norm(const CMatrix& A) { return matrix_norm(right_mult_matrix(A), NormKind::op); }

Report l1_norm_bounds_check(const MatrixMeasure& mu, const GridSpec& spec, int probe_family_size,
                            std::uint64_t seed) {
  if (mu.n() != spec.n()) throw InputError("measure dimension does not match grid");
  const int m = mu.m(), n = spec.n();
  const double lower = fourier_factor(n) * entrywise_variation(mu);
  const double upper = m * lower;

  Report r("l1_norm_bounds");
  bool wrapped = false;
  double best = 0.0;
  std::string best_label;
  auto consider = [&](const GridField& phi, const std::string& label) {
    const double denom = triple_norm_1(phi);
    if (denom == 0.0) return;
    ConvolveResult c = convolve(mu, phi);
    wrapped = wrapped || c.out_of_range;
    const double ratio = fourier_factor(n) * triple_norm_1(c.field) / denom;
    if (ratio > best) {
      best = ratio;
      best_label = label;
    }
  };

  const GridField delta = delta_scalar(spec);
  const Point origin = Point::Zero(n);
  std::vector<std::pair<double, GridField>> gaussians;
  for (double w : {1.0, 0.5, 0.25}) {
    if (w < 2 * spec.spacing()) continue;
    gaussians.emplace_back(w, gaussian_field(spec, origin, w, CMatrix::Ones(1, 1)));
  }
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const std::string entry = "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
      consider(unit_entry_field(delta, m, j, k), "delta" + entry);
      for (const auto& [w, gf] : gaussians) {
        consider(unit_entry_field(gf, m, j, k), "gaussian w=" + std::to_string(w) + entry);
      }
    }
  }
  consider(all_entries_field(delta, m), "delta all entries");
  for (const auto& [w, gf] : gaussians) consider(all_entries_field(gf, m), "gaussian all entries w=" + std::to_string(w));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int p = 0; p < probe_family_size; ++p) {
    CMatrix C(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) C(j, k) = cplx(g(rng), g(rng));
    const double w = 2 * spec.spacing() + unit(rng) * (1.0 - 2 * spec.spacing());
    Point c(n);
    for (int a = 0; a < n; ++a) c(a) = (unit(rng) - 0.5) * spec.L() / 4;
    consider(gaussian_field(spec, c, std::max(w, 1e-3), C), "random " + std::to_string(p));
  }

  const double slack = 1e-6;
  r.add("above_lower_bound", best >= lower * (1 - slack), best, lower);
  r.add("below_upper_bound", best <= upper * (1 + slack), best, upper);
  r.data["estimate"] = best;
  r.data["best_probe"] = best_label;
  r.data["lower_bound"] = lower;
  r.data["upper_bound"] = upper;
  r.data["entrywise_variation"] = entrywise_variation(mu);
  r.data["atoms_wrapped"] = wrapped;
  r.data["grid"] = {{"n", n}, {"L", spec.L()}, {"K", spec.K()}};
  return r;
}

Report l2_triple_norm_bounds_check(const MultiplierSymbol& F, const GridSpec& spec, int probe_family_size,
                                   std::uint64_t seed) {
  const int m = F.m(), n = spec.n();
  const GridField S = F.sample(spec);
  double finf = 0.0;
  std::size_t arg_i = 0;
  int arg_row = 0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        const double a = std::abs(S.at(i)(j, k));
        if (a > finf) {
          finf = a;
          arg_i = i;
          arg_row = j;
        }
      }
    }
  }
  const double lower = finf, upper = m * finf;

  double best = 0.0;
  std::string best_label;
  auto consider = [&](const GridField& phi, const std::string& label) {
    const double denom = triple_norm_2(phi);
    if (denom == 0.0) return;
    const double ratio = triple_norm_2(apply_multiplier_sampled(S, phi)) / denom;
    if (ratio > best) {
      best = ratio;
      best_label = label;
    }
  };

  // Plane wave at the frequency where the largest entry is attained, placed in the
  // column that meets that entry's row.
  const Point xi = spec.freq(arg_i);
  GridField wave(spec, 1);
  for (std::size_t i = 0; i < spec.size(); ++i) wave.at(i)(0, 0) = std::polar(1.0, xi.dot(spec.coord(i)));
  for (int r0 = 0; r0 < m; ++r0) consider(unit_entry_field(wave, m, r0, arg_row), "plane wave row " + std::to_string(r0 + 1));
  consider(all_entries_field(wave, m), "plane wave all entries");
  GridField flat(spec, 1);
  for (std::size_t i = 0; i < spec.size(); ++i) flat.at(i)(0, 0) = 1.0;
  consider(all_entries_field(flat, m), "constant all entries");

  const Point origin = Point::Zero(n);
  for (double w : {1.0, 0.5, 0.25}) {
    const GridField gf = gaussian_field(spec, origin, w, CMatrix::Ones(1, 1));
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) consider(unit_entry_field(gf, m, j, k), "gaussian w=" + std::to_string(w));
    consider(all_entries_field(gf, m), "gaussian all entries w=" + std::to_string(w));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int p = 0; p < probe_family_size; ++p) {
    CMatrix C(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) C(j, k) = cplx(g(rng), g(rng));
    Point c(n);
    for (int a = 0; a < n; ++a) c(a) = (unit(rng) - 0.5) * spec.L() / 4;
    consider(gaussian_field(spec, c, 0.1 + unit(rng), C), "random " + std::to_string(p));
  }

  const double slack = 1e-9;
  Report r("l2_triple_norm_bounds");
  r.add("above_lower_bound", best >= lower * (1 - slack) - slack, best, lower);
  r.add("below_upper_bound", best <= upper * (1 + slack) + slack, best, upper);
  r.data["estimate"] = best;
  r.data["best_probe"] = best_label;
  r.data["lower_bound"] = lower;
  r.data["upper_bound"] = upper;
  r.data["grid"] = {{"n", n}, {"L", spec.L()}, {"K", spec.K()}};
  return r;
}

Report exponential_kernel_bound_check(double a, const MultiplierSymbol& F, const GridSpec& spec) {
  if (!(a > 0)) throw InputError("kernel parameter a must be positive");
  const int n = spec.n(), m = F.m();
  GridField k(spec, 1);
  for (std::size_t i = 0; i < spec.size(); ++i) k.at(i)(0, 0) = std::exp(-a * spec.coord(i).lpNorm<1>());
  const GridField khat = dft(k);
  double l1 = 0.0;
  for (std::size_t i = 0; i < khat.size(); ++i) l1 += std::abs(khat.at(i)(0, 0));
  l1 *= spec.dual_cell_volume();
  const double expected = std::pow(2.0 * kPi, n / 2.0);

  const GridField S = F.sample(spec);
  GridField prod(spec, m, Domain::frequency);
  for (std::size_t i = 0; i < prod.size(); ++i) prod.at(i) = khat.at(i)(0, 0) * S.at(i);
  const GridField G = idft(prod);
  const double lhs = sup_norm(G, NormKind::op);
  const double fnorm = sup_norm(S, NormKind::op);
  const double rhs = static_cast<double>(m) * m * fnorm;

  Report r("exponential_kernel_bound");
  r.add("kernel_transform_l1", std::abs(l1 - expected) <= 1e-3, l1, expected);
  r.add("sup_bound", lhs <= rhs * (1 + 1e-9) + 1e-12, lhs, rhs);
  r.data["kernel_transform_l1"] = l1;
  r.data["sup_norm"] = lhs;
  r.data["symbol_sup"] = fnorm;
  r.data["factor"] = fnorm > 0 ? lhs / fnorm : 0.0;
  r.data["a"] = a;
  r.data["grid"] = {{"n", n}, {"L", spec.L()}, {"K", spec.K()}};
  return r;
}

namespace {

// Offsets and weights of exp(-1 / (1 - |x / eps|^2)) on a lattice of spacing h,
// normalized to unit sum.
std::vector<std::pair<Point, double>> bump_weights(int n, double h, double eps) {
  const int reach = static_cast<int>(std::ceil(eps / h));
  const int width = 2 * reach + 1;
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(width);
  std::vector<std::pair<Point, double>> out;
  double sum = 0.0;
  for (std::size_t f = 0; f < total; ++f) {
    Point x(n);
    std::size_t rest = f;
    for (int a = n - 1; a >= 0; --a) {
      x(a) = (static_cast<int>(rest % static_cast<std::size_t>(width)) - reach) * h;
      rest /= static_cast<std::size_t>(width);
    }
    const double u2 = x.squaredNorm() / (eps * eps);
    if (u2 >= 1.0) continue;
    const double w = std::exp(-1.0 / (1.0 - u2));
    out.emplace_back(x, w);
    sum += w;
  }
  for (auto& [x, w] : out) w /= sum;
  return out;
}

}  // namespace

GridField mollify(const GridField& f, double eps) {
  if (f.domain() != Domain::space) throw InputError("mollify expects a spatial field");
  require_resolved(f.spec(), eps, 2.0, "mollifier radius");
  std::vector<Atom> atoms;
  for (auto& [x, w] : bump_weights(f.spec().n(), f.spec().spacing(), eps)) {
    atoms.push_back({x, w * CMatrix::Identity(f.m(), f.m())});
  }
  return convolve(MatrixMeasure(f.spec().n(), f.m(), std::move(atoms), "mollifier"), f).field;
}

Report mollifier_recovery_check(const MatrixMeasure& mu, const GridSpec& spec, const std::vector<Point>& xs,
                                const std::vector<double>& eps_list) {
  if (mu.n() != spec.n()) throw InputError("measure dimension does not match grid");
  if (xs.empty() || eps_list.empty()) throw InputError("recovery check needs points and radii");
  const int n = spec.n(), m = mu.m();
  const MatrixFunction F = fourier_function(mu);
  const GridField S = MultiplierSymbol(F).sample(spec);
  const double dxi = spec.dual_spacing();

  Report r("mollifier_recovery");
  json table = json::array();
  for (std::size_t xi_index = 0; xi_index < xs.size(); ++xi_index) {
    const std::size_t idx = spec.nearest(xs[xi_index]);
    const Point xg = spec.coord(idx);
    std::vector<int> centre(static_cast<std::size_t>(n));
    Point xi0(n);
    for (int a = 0; a < n; ++a) {
      centre[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(xs[xi_index](a) / dxi));
      xi0(a) = centre[static_cast<std::size_t>(a)] * dxi;
    }
    const CMatrix target = fourier_factor(n) * F(xi0);
    json errors = json::array();
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (double eps : eps_list) {
      if (eps < 2.0 * dxi) {
        throw ResolutionError("frequency bump radius is below two dual grid spacings",
                              next_pow2_at_least(spec.K() * 2.0 * dxi / eps));
      }
      const auto weights = bump_weights(n, dxi, eps);
      GridField g(spec, m, Domain::frequency);
      for (const auto& [offset, w] : weights) {
        // Bump centred at the dual grid frequency nearest x; evaluated at the spatial point xg.
        std::vector<int> fidx(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
          fidx[static_cast<std::size_t>(a)] =
              centre[static_cast<std::size_t>(a)] + static_cast<int>(std::lround(offset(a) / dxi)) + spec.K() / 2;
        }
        const Point on_grid = spec.freq(spec.flat(fidx));
        g.at(spec.flat(fidx)) += std::polar(w / spec.dual_cell_volume(), -on_grid.dot(xg)) *
                                 CMatrix::Identity(m, m);
      }
      const CMatrix value = apply_multiplier_sampled(S, idft(g)).at(idx);
      const double err = matrix_norm(value - target, NormKind::op);
      monotone = monotone && err <= previous + 1e-12;
      previous = err;
      errors.push_back({{"eps", eps}, {"error", err}});
    }
    r.add("non_increasing_x" + std::to_string(xi_index), monotone, previous, 0.0);
    table.push_back({{"x", point_json(xi0)}, {"target", matrix_json(target)}, {"errors", errors}});
  }
  r.data["points"] = std::move(table);
  r.data["grid"] = {{"n", n}, {"L", spec.L()}, {"K", spec.K()}};
  return r;
}

Report hadamard_derivative_check(const MatrixFunction& F, double t, const GridField& f, double h) {
  if (!(h > 0) || !(h < std::abs(t) || t == 0.0)) throw InputError("step h must be positive and below |t|");
  const GridField base = MultiplierSymbol(F).sample(f.spec());
  auto run = [&](double s) { return apply_multiplier_sampled(hadamard_exp_field(base, s), f); };

  GridField deriv_symbol(f.spec(), f.m(), Domain::frequency);
  for (std::size_t i = 0; i < base.size(); ++i) {
    deriv_symbol.at(i) = hadamard_product(hadamard_exp(base.at(i), t), base.at(i));
  }
  const GridField exact = apply_multiplier_sampled(deriv_symbol, f);
  double scale = 0.0;
  for (std::size_t i = 0; i < exact.size() * exact.block(); ++i) scale = std::max(scale, std::abs(exact.data()[i]));

  auto discrepancy = [&](double step) {
    GridField d = run(t + step);
    d -= run(t - step);
    d *= 1.0 / (2.0 * step);
    return max_abs_difference(d, exact);
  };
  const double e1 = discrepancy(h), e2 = discrepancy(h / 2);
  const double floor = 1e-11 * std::max(1.0, scale);
  Report r("hadamard_derivative");
  r.data["discrepancy_h"] = e1;
  r.data["discrepancy_h_half"] = e2;
  r.data["derivative_scale"] = scale;
  if (e1 <= floor) {
    r.add("second_order", true, e1, floor);
    r.data["ratio"] = nullptr;
  } else {
    const double ratio = e1 / e2;
    r.add("second_order", ratio >= 3.0 && ratio <= 5.0, ratio, 4.0);
    r.data["ratio"] = ratio;
  }
  return r;
}

Report sup_bounds_check(const MultiplierSymbol& F, const std::vector<GridField>& probes) {
  if (probes.empty()) throw InputError("at least one probe is required");
  const int m = F.m();
  Report r("sup_bounds");
  std::optional<GridField> S;
  bool scalar_identity = true;
  double fnorm = 0.0;
  json per_probe = json::array();
  for (std::size_t p = 0; p < probes.size(); ++p) {
    if (!S || S->spec() != probes[p].spec()) {
      S = F.sample(probes[p].spec());
      fnorm = sup_norm(*S, NormKind::op);
      for (std::size_t i = 0; i < S->size(); ++i) {
        const CMatrix v = S->at(i);
        const CMatrix scalar = v(0, 0) * CMatrix::Identity(m, m);
        scalar_identity = scalar_identity && (v - scalar).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, fnorm);
      }
    }
    const double pmax = sup_norm(probes[p], NormKind::max);
    if (pmax == 0.0) continue;
    GridField f = probes[p];
    f *= 1.0 / pmax;
    const Worst w = worst_violation(eigen_scan(f));
    const bool psd = w.value <= 1e-9;
    const double factor = psd ? 2.0 * std::pow(m, 4) : 8.0 * std::pow(m, 6);
    const double value = sup_norm(apply_multiplier_sampled(*S, f), NormKind::max);
    r.add("probe_" + std::to_string(p), value <= factor * fnorm * (1 + 1e-12), value, factor * fnorm);
    per_probe.push_back({{"psd", psd}, {"sup_max", value}, {"bound", factor * fnorm}});
  }
  r.data["probes"] = std::move(per_probe);
  r.data["symbol_sup"] = fnorm;
  r.data["scalar_identity_symbol"] = scalar_identity;
  return r;
}

}  // namespace mpsd
