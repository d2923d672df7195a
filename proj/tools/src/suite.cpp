#include "mpsd/tools/suite.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "mpsd/catalog.hpp"
#include "mpsd/grid.hpp"
#include "mpsd/io.hpp"
#include "mpsd/matcore.hpp"
#include "mpsd/measures.hpp"
#include "mpsd/oplab.hpp"
#include "mpsd/psdfun.hpp"

namespace mpsd::suite {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Named {
  std::string label;
  MatrixFunction F;
};

CMatrix random_complex(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix C(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) C(j, k) = cplx(g(rng), g(rng));
  return C;
}

// G G^* normalized to unit trace.
CMatrix random_psd(int m, std::mt19937_64& rng) {
  const CMatrix G = random_complex(m, rng);
  CMatrix P = G * G.adjoint();
  return P / P.trace().real();
}

Point random_point(int n, double R, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-R, R);
  Point x(n);
  for (int a = 0; a < n; ++a) x(a) = u(rng);
  return x;
}

// Atoms at distinct grid nodes within half the torus, complex weights.
MatrixMeasure random_grid_measure(const GridSpec& spec, int m, int atoms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, spec.size() - 1);
  std::set<std::size_t> used;
  std::vector<Atom> out;
  while (static_cast<int>(out.size()) < atoms) {
    const std::size_t i = pick(rng);
    const Point x = spec.coord(i);
    if (x.lpNorm<Eigen::Infinity>() >= spec.L() / 4 || !used.insert(i).second) continue;
    out.push_back({x, random_complex(m, rng)});
  }
  return MatrixMeasure(spec.n(), m, std::move(out), "random");
}

// Sum of three complex Gaussian bumps in frequency, n = 1.
MultiplierSymbol random_smooth_symbol(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> centre(-10.0, 10.0), width(0.5, 3.0);
  std::vector<std::tuple<CMatrix, double, double>> terms;
  for (int k = 0; k < 3; ++k) terms.emplace_back(random_complex(m, rng), centre(rng), width(rng));
  return MultiplierSymbol(1, m, [terms, m](const Point& xi) {
    CMatrix v = CMatrix::Zero(m, m);
    for (const auto& [C, c, s] : terms) v += C * std::exp(-(xi(0) - c) * (xi(0) - c) / (2 * s * s));
    return v;
  }, "random_smooth");
}

GridField random_noise_field(const GridSpec& spec, int m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  GridField f(spec, m);
  for (std::size_t i = 0; i < f.size() * f.block(); ++i) f.data()[i] = cplx(g(rng), g(rng));
  return f;
}

std::vector<GridField> psd_gaussian_probes(const GridSpec& spec, int m, int count, double wmin, double wmax,
                                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> width(wmin, wmax);
  std::vector<GridField> probes;
  probes.push_back(gaussian_field(spec, Point::Zero(spec.n()), wmin, CMatrix::Ones(m, m)));
  while (static_cast<int>(probes.size()) < count) {
    const Point c = random_point(spec.n(), 3.0, rng);
    probes.push_back(gaussian_field(spec, c, width(rng), random_psd(m, rng)));
  }
  return probes;
}

std::vector<Named> cpsd_family(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double e1 = std::exp(-1.0);
  std::vector<Named> out;
  out.push_back({"point_mass_log n=1", catalog::point_mass_log(2, 1, 2, Point::Ones(1))});
  out.push_back({"point_mass_log n=2", catalog::point_mass_log(3, 1, 1, Point{{0.5, -1.0}})});
  out.push_back({"point_mass_log n=3 a=b=c", catalog::point_mass_log(e1, e1, e1, Point{{1.0, 0.5, -0.25}})});
  out.push_back({"quadratic n=1 m=2", catalog::scalar_generator(catalog::quadratic_generator(1, 1.0), 2)});
  {
    catalog::ScalarGenerator g{-0.5, Point{{0.3, -0.7}}, Eigen::MatrixXd(2, 2)};
    g.A << 0.5, 0.1, 0.1, 1.0;
    out.push_back({"generator n=2 m=3", catalog::scalar_generator(g, 3)});
  }
  {
    std::normal_distribution<double> nd;
    Eigen::MatrixXd G(3, 3);
    for (int j = 0; j < 9; ++j) G(j % 3, j / 3) = nd(rng);
    catalog::ScalarGenerator g{0.0, random_point(3, 1.0, rng), G * G.transpose() / 3.0};
    out.push_back({"generator n=3 m=4", catalog::scalar_generator(g, 4)});
  }
  out.push_back({"constant -H3", catalog::constant(-CMatrix::Ones(3, 3), 2)});
  out.push_back({"constant P-2H4", catalog::constant(random_psd(4, rng) - 2.0 * CMatrix::Ones(4, 4), 1)});
  {
    std::vector<Atom> atoms;
    for (int k = 0; k < 5; ++k) atoms.push_back({random_point(1, 2.0, rng), random_psd(2, rng) / 5.0});
    out.push_back({"bochner atomic n=1 m=2", fourier_function(MatrixMeasure(1, 2, std::move(atoms)))});
  }
  out.push_back({"bochner gaussian n=2 m=3",
                 fourier_function(gaussian_measure(2, 4.0, 16, random_psd(3, rng)))});
  return out;
}

std::vector<Named> non_cpsd_family() {
  std::vector<Named> out;
  out.push_back({"log_half_identity", catalog::log_half_identity(1)});
  out.push_back({"linear_skew", catalog::linear_skew(1.0)});
  out.push_back({"growing quadratic", catalog::scalar_generator(catalog::quadratic_generator(1, -1.0), 2)});
  out.push_back({"point_mass_log ac<b^2", catalog::point_mass_log(1, 2, 1, Point::Ones(1))});
  CMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  out.push_back({"constant swap", catalog::constant(swap, 1)});
  return out;
}

json grid_json(const GridSpec& s) { return {{"n", s.n()}, {"L", s.L()}, {"K", s.K()}}; }

Report log_half_identity_experiment(std::uint64_t seed) {
  Report r("log_half_identity");
  const CMatrix A = std::log(0.5) * CMatrix::Identity(2, 2);
  const CMatrix E = hadamard_exp(A);
  CMatrix expected(2, 2);
  expected << 0.5, 1.0, 1.0, 0.5;
  const double err = (E - expected).cwiseAbs().maxCoeff();
  r.add("hadamard_exp_value", err <= 1e-12, err, 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(E);
  const double eig_err = std::max(std::abs(es.eigenvalues()(0) + 0.5), std::abs(es.eigenvalues()(1) - 1.5));
  r.add("eigenvalues", eig_err <= 1e-12, eig_err, 1e-12);
  r.add("exp_not_psd", !psd_check(E).verdict, es.eigenvalues()(0), 0.0);

  const MatrixFunction F = catalog::log_half_identity(1);
  const PointSet X = PointSet::random(1, 3, 2.0, seed);
  const Report c = cpsd_function_check(F, X);
  const CVector w = vector_from_json(c.data.at("witness"));
  const double wsum = std::abs(w.sum());
  r.add("cpsd_fails", !c.all_passed(), c.data.at("min_eigenvalue").get<double>(), 0.0);
  r.add("witness_sums_to_zero", w.size() == 6 && wsum <= 1e-12, wsum, 1e-12);
  const Report weak = weak_cpsd_check(F, X, default_directions(2, 4, seed));
  r.add("weak_cpsd_holds", weak.all_passed(), weak.data.at("worst_min_eigenvalue").get<double>(), 0.0);
  r.data["exp"] = matrix_json(E);
  r.data["cpsd"] = to_json(c);
  return r;
}

Report schoenberg_experiment(std::uint64_t seed) {
  Report r("schoenberg_equivalence");
  const std::vector<double> ts{0.01, 0.1, 1.0, 10.0};
  json cpsd_rows = json::array();
  for (const auto& [label, F] : cpsd_family(derive_seed(seed, 1))) {
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 50; ++s) {
      const PointSet X = PointSet::random(F.n(), 1 + s % 6, 2.0, derive_seed(seed, 100 + s));
      for (double t : ts) {
        worst = std::min(worst, psd_function_check(hadamard_exp_function(F, t), X).min_eigenvalue);
      }
    }
    r.add("exp_psd " + label, worst >= -1e-8, worst, -1e-8);
    cpsd_rows.push_back({{"function", label}, {"worst_min_eigenvalue", worst}});
  }
  json witnesses = json::array();
  for (const auto& [label, F] : non_cpsd_family()) {
    bool found = false;
    json w;
    for (int s = 0; s < 50 && !found; ++s) {
      const PointSet X = PointSet::random(F.n(), 2 + s % 5, 2.0, derive_seed(seed, 200 + s));
      for (double t : {0.001, 0.01, 0.1, 1.0, 10.0}) {
        const PsdVerdict v = psd_function_check(hadamard_exp_function(F, t), X);
        if (!v.verdict && v.min_eigenvalue < -1e-8) {
          found = true;
          w = {{"function", label}, {"t", t}, {"points", points_json(X)}, {"verdict", verdict_json(v)}};
          break;
        }
      }
    }
    r.add("witness " + label, found);
    if (found) witnesses.push_back(std::move(w));
  }
  r.data["cpsd"] = std::move(cpsd_rows);
  r.data["witnesses"] = std::move(witnesses);
  return r;
}

Report linear_skew_experiment(std::uint64_t) {
  Report r("linear_skew_shifted_gram");
  const double s = 0.75, c2 = 0.6;
  const MatrixFunction F = catalog::linear_skew(s);
  const PointSet X(1, {Point::Ones(1), Point::Zero(1)});
  const BlockGram B = schoenberg_gram(F, X);
  const double shifted = B.matrix.cwiseAbs().maxCoeff();
  r.add("shifted_gram_vanishes", shifted < 1e-14, shifted, 1e-14);
  CVector c(4);
  c << 0.0, c2, -c2, 0.0;
  const cplx q = quadratic_form(gram(F, X).matrix, c);
  const double expected = -2 * s * c2 * c2;
  const double err = std::abs(q - cplx(expected, 0.0));
  r.add("gram_quadratic_form", err <= 1e-12, q.real(), expected);
  r.add("shifted_gram_psd", psd_check(B.matrix).verdict);
  const Report cp = cpsd_function_check(F, X);
  r.add("not_cpsd", !cp.all_passed(), cp.data.at("min_eigenvalue").get<double>(), 0.0);
  r.data["s"] = s;
  r.data["c2"] = c2;
  r.data["quadratic_form"] = {q.real(), q.imag()};
  return r;
}

Report shifted_gram_experiment(std::uint64_t seed) {
  Report r("shifted_gram_positivity");
  int count = 0;
  for (const auto& [label, F] : cpsd_family(derive_seed(seed, 1))) {
    if (!nonpositive_at_origin(F)) continue;
    ++count;
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 50; ++s) {
      const PointSet X = PointSet::random(F.n(), 1 + s % 6, 2.0, derive_seed(seed, 300 + s));
      worst = std::min(worst, psd_check(schoenberg_gram(F, X).matrix).min_eigenvalue);
    }
    r.add("shifted_gram_psd " + label, worst >= -1e-8, worst, -1e-8);
  }
  r.add("family_nonempty", count >= 4, count, 4);
  return r;
}

Report counterexample_experiment(std::uint64_t) {
  Report r = right_multiplier_counterexample(GridSpec(1, 40.0, 4096), 0.05);
  r.name = "right_multiplier_counterexample";
  return r;
}

Report l2_norm_experiment(std::uint64_t seed) {
  Report r("l2_norm_estimates");
  std::mt19937_64 rng(derive_seed(seed, 6));
  double worst_rm = 0.0, worst_action = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int m = 2 + i % 5;
    const CMatrix A = random_complex(m, rng), B = random_complex(m, rng);
    worst_rm = std::max(worst_rm, std::abs(right_mult_norm(A) - matrix_norm(A, NormKind::op)));
    const CMatrix K = right_mult_matrix(A);
    const CMatrix BA = B * A;
    CVector vb(m * m), vba(m * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        vb(a * m + b) = B(a, b);
        vba(a * m + b) = BA(a, b);
      }
    worst_action = std::max(worst_action, (K * vb - vba).cwiseAbs().maxCoeff() / std::max(1.0, vba.norm()));
  }
  r.add("right_mult_norm", worst_rm <= 1e-10, worst_rm, 1e-10);
  r.add("right_mult_action", worst_action <= 1e-12, worst_action, 1e-12);
  const GridSpec spec(1, 40.0, 512);
  json rows = json::array();
  for (int i = 0; i < 10; ++i) {
    const MultiplierSymbol S = random_smooth_symbol(1 + i % 3, rng);
    const auto [sup, power] = l2_multiplier_norm(S, spec, derive_seed(seed, 600 + i));
    const double rel = std::abs(power.value - sup.value) / sup.value;
    r.add("estimates_agree " + std::to_string(i), rel <= 0.02, rel, 0.02);
    rows.push_back({{"supremum", sup.value}, {"power_iteration", power.value}, {"iterations", power.iterations}});
  }
  r.data["symbols"] = std::move(rows);
  return r;
}

Report l1_bounds_experiment(std::uint64_t seed) {
  Report r("l1_bounds");
  std::mt19937_64 rng(derive_seed(seed, 7));
  const GridSpec spec(1, 40.0, 512);
  for (int i = 0; i < 20; ++i) {
    const MatrixMeasure mu = random_grid_measure(spec, 1 + i % 3, 1 + static_cast<int>(rng() % 6), rng);
    const Report b = l1_norm_bounds_check(mu, spec, 4, derive_seed(seed, 700 + i));
    const double est = b.data.at("estimate").get<double>();
    r.add("within_bounds " + std::to_string(i), b.all_passed(), est, b.data.at("upper_bound").get<double>());
  }
  CMatrix corner = CMatrix::Zero(2, 2);
  corner(0, 0) = 1.0;
  const Report b0 = l1_norm_bounds_check(gaussian_grid_measure(spec, corner), spec, 4, derive_seed(seed, 720));
  const double lower0 = b0.data.at("lower_bound").get<double>();
  r.add("corner_sharp", b0.data.at("estimate").get<double>() >= 0.9 * lower0,
        b0.data.at("estimate").get<double>(), 0.9 * lower0);
  const Report b1 = l1_norm_bounds_check(gaussian_grid_measure(spec, CMatrix::Ones(2, 2)), spec, 4,
                                         derive_seed(seed, 721));
  const double lower1 = b1.data.at("lower_bound").get<double>();
  r.add("all_entries_sharp", b1.data.at("estimate").get<double>() >= 0.9 * 2 * lower1,
        b1.data.at("estimate").get<double>(), 0.9 * 2 * lower1);
  r.data["corner"] = to_json(b0);
  r.data["all_entries"] = to_json(b1);
  return r;
}

Report l2_bounds_experiment(std::uint64_t seed) {
  Report r("l2_triple_norm_bounds");
  std::mt19937_64 rng(derive_seed(seed, 8));
  const GridSpec spec(1, 40.0, 512);
  CMatrix corner = CMatrix::Zero(2, 2);
  corner(0, 0) = 1.0;
  const Report b0 = l2_triple_norm_bounds_check(MultiplierSymbol(catalog::constant(corner)), spec, 4,
                                                derive_seed(seed, 800));
  const double est0 = b0.data.at("estimate").get<double>(), low0 = b0.data.at("lower_bound").get<double>();
  r.add("corner_witness", std::abs(est0 - low0) <= 0.05 * low0, est0, low0);
  const Report b1 = l2_triple_norm_bounds_check(MultiplierSymbol(catalog::constant(CMatrix::Ones(2, 2))), spec,
                                                4, derive_seed(seed, 801));
  const double est1 = b1.data.at("estimate").get<double>(), low1 = b1.data.at("lower_bound").get<double>();
  r.add("all_entries_sharp", est1 >= 0.9 * 2 * low1, est1, 0.9 * 2 * low1);
  for (int i = 0; i < 10; ++i) {
    const Report b = l2_triple_norm_bounds_check(random_smooth_symbol(1 + i % 3, rng), spec, 4,
                                                 derive_seed(seed, 810 + i));
    r.add("within_bounds " + std::to_string(i), b.all_passed(), b.data.at("estimate").get<double>(),
          b.data.at("upper_bound").get<double>());
  }
  return r;
}

Report trace_experiment(std::uint64_t seed) {
  Report r("trace_positivity");
  std::mt19937_64 rng(derive_seed(seed, 9));
  const std::vector<double> ts{0.5, 1.0, 2.0};
  const GridSpec spec(1, 40.0, 1024);
  const double e1 = std::exp(-1.0);
  std::vector<Named> fs;
  fs.push_back({"point_mass_log", catalog::point_mass_log(2, 1, 2, Point::Ones(1))});
  fs.push_back({"point_mass_log a=b=c", catalog::point_mass_log(e1, e1, e1, Point::Constant(1, 0.5))});
  fs.push_back({"quadratic m=2", catalog::scalar_generator(catalog::quadratic_generator(1, 1.0), 2)});
  fs.push_back({"generator m=3",
                catalog::scalar_generator({-0.5, Point::Constant(1, 0.8), Eigen::MatrixXd::Constant(1, 1, 0.3)}, 3)});
  fs.push_back({"constant -H2", catalog::constant(-CMatrix::Ones(2, 2), 1)});
  for (const auto& [label, F] : fs) {
    const auto probes = psd_gaussian_probes(spec, F.m(), 10, 0.4, 1.0, rng);
    const Report t = trace_positivity_check(F, ts, probes, 1e-8);
    r.add("trace_nonnegative " + label, t.all_passed(), t.data.at("min_trace").get<double>(), -1e-8);
  }
  const GridSpec coarse(1, 40.0, 256);
  const auto probes = psd_gaussian_probes(coarse, 2, 10, 0.5, 0.5, rng);
  const Report skew = trace_positivity_check(catalog::linear_skew(0.25), ts, probes, 1e-8);
  r.add("linear_skew_witness", !skew.all_passed(), skew.data.at("min_trace").get<double>(), -1e-8);
  r.data["linear_skew"] = {{"s", 0.25}, {"grid", grid_json(coarse)}, {"worst", skew.data.at("worst")},
                           {"min_trace", skew.data.at("min_trace")}};
  return r;
}

Report bump_witness_experiment(std::uint64_t) {
  Report r("bump_probe_witness");
  const GridSpec spec(1, 40.0, 1024);
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  const Report w = bump_probe_witness(catalog::point_mass_log(2, 1, 2, Point::Ones(1)), 1.0, spec, 0.25, D);
  r.add("witness_found", w.data.at("witness_found").get<bool>());
  const MatrixFunction G = catalog::scalar_generator(catalog::quadratic_generator(1, 1.0), 1);
  const Report control = bump_probe_witness(G, 1.0, spec);
  r.add("scalar_control_no_witness", !control.data.at("witness_found").get<bool>());
  const std::vector<GridField> probes{
      gaussian_field(spec, Point::Zero(1), 1.0, CMatrix::Ones(1, 1)),
      gaussian_field(spec, Point::Constant(1, 2.0), 0.5, CMatrix::Ones(1, 1))};
  const Report scalar = positivity_probe(MultiplierSymbol(hadamard_exp_function(G, 1.0)), probes);
  r.add("scalar_gaussian_probe_positive", scalar.all_passed(),
        scalar.data.at("worst_min_eigenvalue").get<double>(), 0.0);
  r.data["witness"] = w.data.contains("witness") ? w.data.at("witness") : json(nullptr);
  return r;
}

Report kernel_experiment(std::uint64_t seed) {
  Report r("exponential_kernel");
  const Report k = exponential_kernel_bound_check(1.0, MultiplierSymbol(catalog::constant(CMatrix::Identity(2, 2))),
                                                  GridSpec(1, 80.0, 4096));
  const Check* l1 = k.find("kernel_transform_l1");
  r.add("kernel_transform_l1", l1->passed, l1->value, l1->bound);
  std::mt19937_64 rng(derive_seed(seed, 11));
  const GridSpec spec(1, 40.0, 1024);
  for (int i = 0; i < 10; ++i) {
    const Report b = exponential_kernel_bound_check(1.0, random_smooth_symbol(2, rng), spec);
    const Check* c = b.find("sup_bound");
    r.add("sup_bound " + std::to_string(i), c->passed, c->value, c->bound);
  }
  return r;
}

Report sup_bounds_experiment(std::uint64_t seed) {
  Report r("sup_bounds");
  std::mt19937_64 rng(derive_seed(seed, 12));
  const GridSpec spec(1, 40.0, 1024);
  for (int m = 1; m <= 3; ++m) {
    for (double width : {1.0, 0.5}) {
      const MultiplierSymbol S(1, m, [m, width](const Point& xi) -> CMatrix {
        return std::exp(-0.5 * width * width * xi.squaredNorm()) / std::sqrt(2 * kPi) * CMatrix::Identity(m, m);
      });
      std::vector<GridField> probes;
      for (int k = 0; k < 3; ++k) probes.push_back(bump_field(spec, m, 1.0, 0.25, random_psd(m, rng)));
      for (auto& p : psd_gaussian_probes(spec, m, 3, 0.3, 1.0, rng)) probes.push_back(std::move(p));
      for (int k = 0; k < 3; ++k) {
        probes.push_back(gaussian_field(spec, random_point(1, 3.0, rng), 0.5, random_complex(m, rng)));
      }
      const Report b = sup_bounds_check(S, probes);
      r.add("bounds m=" + std::to_string(m) + " width=" + std::to_string(width), b.all_passed());
    }
  }
  return r;
}

Report inequalities_experiment(std::uint64_t seed) {
  Report r("cpsd_inequalities_growth");
  const std::vector<double> radii{0.5, 1, 2, 5, 10, 50, 100, 500, 1000};
  int s = 0;
  for (const auto& [label, F] : cpsd_family(derive_seed(seed, 1))) {
    if (!nonpositive_at_origin(F)) continue;
    std::mt19937_64 rng(derive_seed(seed, 1300 + s++));
    std::vector<std::pair<Point, Point>> pairs;
    for (int k = 0; k < 200; ++k) pairs.emplace_back(random_point(F.n(), 5.0, rng), random_point(F.n(), 5.0, rng));
    const Report q = cpsd_inequalities_check(F, pairs, 1e-8);
    r.add("inequalities " + label, q.all_passed());
    const Report g = growth_bound_estimate(F, radii, 8, derive_seed(seed, 1350 + s));
    r.add("growth " + label, g.all_passed(), g.data.at("ratio_sup").get<double>(), g.data.at("c_prime").get<double>());
  }
  return r;
}

Report oracle_experiment(std::uint64_t seed) {
  Report r("multiplier_convolution_agreement");
  std::mt19937_64 rng(derive_seed(seed, 14));
  for (int i = 0; i < 10; ++i) {
    const GridSpec spec = i < 8 ? GridSpec(1, 40.0, 512) : GridSpec(2, 20.0, 32);
    const int m = 1 + i % 3;
    const MatrixMeasure mu = random_grid_measure(spec, m, 1 + static_cast<int>(rng() % 6), rng);
    const GridField f = random_noise_field(spec, m, rng);
    const GridField viaF = apply_multiplier(MultiplierSymbol(fourier_function(mu)), f);
    GridField viaC = convolve(mu, f).field;
    viaC *= std::pow(2 * kPi, -spec.n() / 2.0);
    const double rel = max_abs_difference(viaF, viaC) / sup_norm(viaC, NormKind::max);
    r.add("agreement " + std::to_string(i), rel <= 1e-6, rel, 1e-6);
  }
  return r;
}

Report round_trip_experiment(std::uint64_t seed) {
  Report r("dft_round_trip");
  std::mt19937_64 rng(derive_seed(seed, 15));
  for (int K : {64, 256, 1024, 4096}) {
    const GridSpec spec(1, 40.0, K);
    const GridField f = random_noise_field(spec, 2, rng);
    const GridField g = dft(f);
    const double rt = max_abs_difference(idft(g), f) / std::max(1.0, sup_norm(f, NormKind::max));
    const double pl = std::abs(hs_norm(g) - hs_norm(f)) / hs_norm(f);
    r.add("round_trip K=" + std::to_string(K), rt <= 1e-12, rt, 1e-12);
    r.add("plancherel K=" + std::to_string(K), pl <= 1e-10, pl, 1e-10);
  }
  return r;
}

using Experiment = std::function<Report(std::uint64_t)>;

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> e{
      log_half_identity_experiment, schoenberg_experiment, linear_skew_experiment,
      shifted_gram_experiment,      counterexample_experiment, l2_norm_experiment,
      l1_bounds_experiment,         l2_bounds_experiment,    trace_experiment,
      bump_witness_experiment,      kernel_experiment,       sup_bounds_experiment,
      inequalities_experiment,      oracle_experiment,       round_trip_experiment};
  return e;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "log_half_identity", "constant ln(1/2) I: Hadamard exponential, weak but not full cpsd", 1},
      {2, "schoenberg_equivalence", "cpsd functions give PSD exp_H(tF); non-cpsd functions give witnesses", 30},
      {3, "linear_skew_shifted_gram", "i x S: vanishing shifted Gram without conditional positivity", 1},
      {4, "shifted_gram_positivity", "shifted Gram is PSD for cpsd F with F(0) <= 0", 30},
      {5, "right_multiplier_counterexample", "Gaussian times diag(1, 2) breaks positivity at the origin", 10},
      {6, "l2_norm_estimates", "right multiplication norm and L2 multiplier norm estimates", 60},
      {7, "l1_bounds", "L1 operator norm of measure convolutions against variation bounds", 60},
      {8, "l2_triple_norm_bounds", "L2 operator norm in the entry-sum norm against sup bounds", 60},
      {9, "trace_positivity", "trace of exp_H(tF)(-i grad) f stays nonnegative for cpsd F", 60},
      {10, "bump_probe_witness", "bump probes break positivity for a matrix point mass, not for scalars", 60},
      {11, "exponential_kernel", "L1 norm of the exp(-|x|) transform and the resulting sup bound", 60},
      {12, "sup_bounds", "sup norm bounds for positivity preserving scalar symbols", 60},
      {13, "cpsd_inequalities_growth", "necessary inequalities and quadratic growth of cpsd functions", 60},
      {14, "multiplier_convolution_agreement", "transform multiplier equals measure convolution", 60},
      {15, "dft_round_trip", "DFT inverse and Plancherel identity", 60}};
  return c;
}

Report run(int id, std::uint64_t seed) {
  if (id < 1 || id > static_cast<int>(experiments().size())) throw std::out_of_range("no such criterion");
  Report r = experiments()[static_cast<std::size_t>(id - 1)](seed);
  r.matches_expected = r.all_passed();
  return r;
}

SuiteResult run_all(std::uint64_t seed) {
  SuiteResult out;
  json rows = json::array();
  for (const auto& c : criteria()) {
    const Report r = run(c.id, seed);
    out.all_match = out.all_match && *r.matches_expected;
    rows.push_back({{"id", c.id}, {"name", c.name}, {"title", c.title},
                    {"matches_expected", *r.matches_expected}, {"report", to_json(r)}});
  }
  out.json = {{"seed", seed}, {"criteria", std::move(rows)}, {"all_match", out.all_match}};
  return out;
}

}  // namespace mpsd::suite
