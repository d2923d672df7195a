#include "mpsd/psdfun.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mpsd/errors.hpp"
#include "mpsd/io.hpp"
#include "mpsd/parallel.hpp"

namespace mpsd {

MatrixFunction::MatrixFunction(int n, int m, Evaluator f, std::string catalog_id, Properties props)
    : n_(n), m_(m), f_(std::move(f)), id_(std::move(catalog_id)), props_(props) {
  if (n_ < 1 || m_ < 1) throw InputError("function dimensions must be positive");
  if (!f_) throw InputError("function evaluator is empty");
}

CMatrix MatrixFunction::operator()(const Point& x) const {
  if (x.size() != n_) {
    throw InputError("point dimension " + std::to_string(x.size()) + " does not match n = " +
                     std::to_string(n_));
  }
  CMatrix v = f_(x);
  if (v.rows() != m_ || v.cols() != m_) throw InputError("evaluator returned wrong shape");
  if (!v.allFinite()) throw RangeError("function value is not finite", 0, 0);
  return v;
}

PointSet::PointSet(int n, std::vector<Point> points) : n_(n), points_(std::move(points)) {
  if (n_ < 1) throw InputError("point dimension must be positive");
  if (points_.empty()) throw InputError("point set must be non-empty");
  for (const auto& p : points_) {
    if (p.size() != n_) throw InputError("point has wrong dimension");
    if (!p.allFinite()) throw InputError("point has non-finite coordinates");
  }
}

PointSet PointSet::random(int n, int N, double R, std::uint64_t seed) {
  if (N < 1 || !(R > 0)) throw InputError("random point set needs N >= 1 and R > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-R, R);
  std::vector<Point> pts(static_cast<std::size_t>(N), Point(n));
  for (auto& p : pts) {
    for (int i = 0; i < n; ++i) p(i) = u(rng);
  }
  return PointSet(n, std::move(pts));
}

PointSet PointSet::shifted(const Point& v) const {
  if (v.size() != n_) throw InputError("shift has wrong dimension");
  std::vector<Point> pts = points_;
  for (auto& p : pts) p += v;
  return PointSet(n_, std::move(pts));
}

PointSet PointSet::subset(const std::vector<int>& indices) const {
  std::vector<Point> pts;
  for (int i : indices) {
    if (i < 0 || i >= size()) throw InputError("subset index out of range");
    pts.push_back(points_[static_cast<std::size_t>(i)]);
  }
  return PointSet(n_, std::move(pts));
}

namespace {

void require_compatible(const MatrixFunction& F, const PointSet& X) {
  if (F.n() != X.n()) {
    throw InputError("function dimension n = " + std::to_string(F.n()) +
                     " does not match point dimension " + std::to_string(X.n()));
  }
}

template <typename BlockFn>
BlockGram assemble(int m, int N, BlockFn block) {
  BlockGram G{m, N, CMatrix(m * N, m * N)};
  parallel_for(static_cast<std::size_t>(N) * N, [&](std::size_t i) {
    const int p = static_cast<int>(i) / N, q = static_cast<int>(i) % N;
    G.matrix.block(p * m, q * m, m, m) = block(p, q);
  });
  return G;
}

}  // namespace

BlockGram gram(const MatrixFunction& F, const PointSet& X) {
  require_compatible(F, X);
  return assemble(F.m(), X.size(), [&](int p, int q) { return F(X[p] - X[q]); });
}

BlockGram schoenberg_gram(const MatrixFunction& F, const PointSet& X) {
  require_compatible(F, X);
  std::vector<CMatrix> at(static_cast<std::size_t>(X.size()));
  for (int p = 0; p < X.size(); ++p) at[static_cast<std::size_t>(p)] = F(X[p]);
  return assemble(F.m(), X.size(), [&](int p, int q) -> CMatrix {
    return F(X[p] - X[q]) - at[static_cast<std::size_t>(p)] -
           at[static_cast<std::size_t>(q)].adjoint();
  });
}

PsdVerdict psd_function_check(const MatrixFunction& F, const PointSet& X,
                              std::optional<double> tol) {
  return psd_check(gram(F, X).matrix, tol);
}

Report cpsd_function_check(const MatrixFunction& F, const PointSet& X,
                           std::optional<double> tol) {
  const BlockGram G = gram(F, X);
  const double t = tol ? *tol : default_tol(G.matrix);

  double symmetry = 0.0;
  for (int p = 0; p < X.size(); ++p) {
    for (int q = 0; q < X.size(); ++q) {
      const Point x = X[p] - X[q];
      symmetry = std::max(symmetry, matrix_norm(F(-x) - F(x).adjoint(), NormKind::op));
    }
  }
  const bool hermitian = hermiticity_defect(G.matrix) <= t;
  const PsdVerdict beta = cpsd_check(hermitian ? G.matrix : hermitian_part(G.matrix), t);

  Report r("cpsd_function");
  r.add("hermitian_symmetry", symmetry <= t, symmetry, t);
  r.add("conditional_positivity", beta.verdict, beta.min_eigenvalue, -t);
  r.data["N"] = X.size();
  r.data["m"] = F.m();
  r.data["min_eigenvalue"] = beta.min_eigenvalue;
  r.data["witness"] = vector_json(beta.witness);
  r.data["checked_on_hermitian_part"] = !hermitian;
  r.data["scope"] = "no violation found at these points";
  return r;
}

std::vector<CVector> default_directions(int m, int random_count, std::uint64_t seed) {
  std::vector<CVector> dirs;
  for (int j = 0; j < m; ++j) dirs.push_back(CVector::Unit(m, j));
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < m; ++j) {
    for (int k = j + 1; k < m; ++k) {
      CVector a = CVector::Zero(m), b = CVector::Zero(m);
      a(j) = s;
      a(k) = s;
      b(j) = s;
      b(k) = cplx(0.0, s);
      dirs.push_back(a);
      dirs.push_back(b);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (int i = 0; i < random_count; ++i) {
    CVector v(m);
    for (int j = 0; j < m; ++j) v(j) = cplx(g(rng), g(rng));
    dirs.push_back(v.normalized());
  }
  return dirs;
}

Report weak_cpsd_check(const MatrixFunction& F, const PointSet& X,
                       const std::vector<CVector>& directions, std::optional<double> tol) {
  require_compatible(F, X);
  if (directions.empty()) throw InputError("at least one direction is required");
  const int N = X.size();
  std::vector<CMatrix> diffs(static_cast<std::size_t>(N) * N);
  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q) diffs[static_cast<std::size_t>(p * N + q)] = F(X[p] - X[q]);
  }

  Report r("weak_cpsd_function");
  json per_direction = json::array();
  double worst = 0.0;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const CVector& f = directions[d];
    if (f.size() != F.m() || std::abs(f.norm() - 1.0) > 1e-12) {
      throw InputError("direction " + std::to_string(d) + " must be a unit vector in C^m");
    }
    CMatrix S(N, N);
    for (int p = 0; p < N; ++p) {
      for (int q = 0; q < N; ++q) S(p, q) = quadratic_form(diffs[static_cast<std::size_t>(p * N + q)], f);
    }
    const double t = tol ? *tol : default_tol(S);
    const double defect = hermiticity_defect(S);
    bool ok = false;
    double min_eig = 0.0;
    if (defect <= t) {
      const PsdVerdict v = cpsd_check(S, t);
      ok = v.verdict;
      min_eig = v.min_eigenvalue;
    }
    worst = std::min(worst, min_eig);
    per_direction.push_back({{"direction", vector_json(f)}, {"passed", ok},
                             {"min_eigenvalue", min_eig}, {"defect", defect}});
    r.add("direction_" + std::to_string(d), ok, min_eig, -t);
  }
  r.data["directions"] = std::move(per_direction);
  r.data["worst_min_eigenvalue"] = worst;
  r.data["scope"] = "no violation found at these points and directions";
  return r;
}

MatrixFunction hadamard_exp_function(const MatrixFunction& F, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("hadamard exponent parameter must be >= 0");
  Properties props;
  props.hermitian_symmetric = F.properties().hermitian_symmetric;
  props.psd_claimed = F.properties().cpsd_claimed;
  props.cpsd_claimed = F.properties().cpsd_claimed;
  std::string id = "exp_H(" + std::to_string(t) + "*" + (F.id().empty() ? "F" : F.id()) + ")";
  return MatrixFunction(F.n(), F.m(), [F, t](const Point& x) { return hadamard_exp(F(x), t); },
                        std::move(id), props);
}

bool nonpositive_at_origin(const MatrixFunction& F, std::optional<double> tol) {
  return psd_check(-F(Point::Zero(F.n())), tol).verdict;
}

Report schoenberg_equivalence_report(const MatrixFunction& F, const PointSet& X,
                                     const std::vector<double>& t_grid,
                                     std::optional<double> tol) {
  Report r("schoenberg_equivalence");
  const Report cp = cpsd_function_check(F, X, tol);
  const bool v_i = cp.all_passed();
  r.data["cpsd"] = to_json(cp);

  bool all_ii = true;
  json per_t = json::array();
  for (double t : t_grid) {
    const PsdVerdict v = psd_function_check(hadamard_exp_function(F, t), X, tol);
    all_ii = all_ii && v.verdict;
    per_t.push_back({{"t", t}, {"verdict", v.verdict}, {"min_eigenvalue", v.min_eigenvalue}});
  }
  r.data["exp_psd"] = std::move(per_t);

  const bool origin_nonpos = nonpositive_at_origin(F, tol);
  r.data["origin_nonpositive"] = origin_nonpos;
  std::optional<bool> v_iii;
  if (origin_nonpos) {
    const PsdVerdict v = psd_check(schoenberg_gram(F, X).matrix, tol);
    v_iii = v.verdict;
    r.data["shifted_gram"] = verdict_json(v);
  }
  r.data["verdict_cpsd"] = v_i;
  r.data["verdict_exp_psd_all_t"] = all_ii;
  r.data["verdict_shifted_gram"] = v_iii ? json(*v_iii) : json(nullptr);

  r.add("cpsd_iff_exp_psd", v_i == all_ii);
  r.add("cpsd_implies_shifted_gram_psd", !(v_i && origin_nonpos) || v_iii.value_or(false));
  return r;
}

Report growth_bound_estimate(const MatrixFunction& F, const std::vector<double>& radii,
                             int samples_per_radius, std::uint64_t seed) {
  if (!F.properties().cpsd_claimed) {
    throw PreconditionError("growth bound requires a conditionally PSD function");
  }
  if (!nonpositive_at_origin(F)) throw PreconditionError("growth bound requires F(0) <= 0");
  if (samples_per_radius < 1) throw InputError("samples_per_radius must be positive");
  const int n = F.n();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto direction = [&] {
    Point u(n);
    for (int i = 0; i < n; ++i) u(i) = g(rng);
    const double norm = u.norm();
    return norm > 0 ? Point(u / norm) : Point(Point::Unit(n, 0));
  };
  auto opnorm = [&](const Point& x) { return matrix_norm(F(x), NormKind::op); };

  // C' from the closed ball of radius 2, including the rescaled points x / k used
  // by the subadditivity argument for each sampled |x| >= 2.
  double c_prime = opnorm(Point::Zero(n));
  for (double rho : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    for (int s = 0; s < samples_per_radius; ++s) c_prime = std::max(c_prime, opnorm(rho * direction()));
  }

  struct Sample { double radius; double value; };
  std::vector<Sample> samples;
  json per_radius = json::array();
  for (double radius : radii) {
    if (!(radius >= 0) || !std::isfinite(radius)) throw InputError("radii must be finite and >= 0");
    double sup_ratio = 0.0;
    for (int s = 0; s < samples_per_radius; ++s) {
      const Point x = radius * direction();
      const double v = opnorm(x);
      if (radius >= 2.0) {
        const double k = std::ceil(radius / 2.0);
        c_prime = std::max(c_prime, opnorm(x / k));
      }
      samples.push_back({radius, v});
      sup_ratio = std::max(sup_ratio, v / (1.0 + radius * radius));
    }
    per_radius.push_back({{"radius", radius}, {"ratio_sup", sup_ratio}});
  }

  double ratio_sup = 0.0, worst_quadratic = 0.0;
  for (const auto& s : samples) {
    ratio_sup = std::max(ratio_sup, s.value / (1.0 + s.radius * s.radius));
    if (s.radius >= 2.0) {
      worst_quadratic = std::max(worst_quadratic, s.value / (c_prime * s.radius * s.radius));
    }
  }
  const double slack = 1e-9;
  Report r("growth_bound");
  r.data["ratio_sup"] = ratio_sup;
  r.data["c_prime"] = c_prime;
  r.data["per_radius"] = std::move(per_radius);
  r.add("ratio_le_c_prime", ratio_sup <= c_prime * (1 + slack) + slack, ratio_sup, c_prime);
  r.add("quadratic_growth", worst_quadratic <= 1 + slack, worst_quadratic, 1.0);
  return r;
}

Report cpsd_inequalities_check(const MatrixFunction& F,
                               const std::vector<std::pair<Point, Point>>& pairs, double tol) {
  const CMatrix F0 = F(Point::Zero(F.n()));
  const double op0 = matrix_norm(F0, NormKind::op);
  double worst[5] = {0, 0, 0, 0, 0};  // max (lhs - rhs - slack) per inequality
  auto track = [&](int i, double excess) { worst[i] = std::max(worst[i], excess); };

  for (const auto& [x, y] : pairs) {
    const CMatrix Fx = F(x), Fy = F(y);
    const CMatrix re_x = hermitian_part(Fx);
    const CMatrix lower = F0 - 2.0 * re_x;
    const double nx = matrix_norm(Fx, NormKind::op), ny = matrix_norm(Fy, NormKind::op);

    const double scale = std::max({1.0, op0, nx});
    Eigen::SelfAdjointEigenSolver<CMatrix> es_low(hermitian_part(lower));
    track(0, -es_low.eigenvalues()(0) - tol * scale);
    Eigen::SelfAdjointEigenSolver<CMatrix> es_up(hermitian_part(-F0));
    track(1, -es_up.eigenvalues()(0) - tol * scale);

    const double lhs2 = matrix_norm(lower, NormKind::op), rhs2 = 2.0 * nx;
    track(2, lhs2 - rhs2 - tol * (1.0 + rhs2));

    const double lhs3 = matrix_norm(F(Point(x - y)) - Fx - Fy.adjoint(), NormKind::op);
    const double rhs3 = 2.0 * std::sqrt(nx) * std::sqrt(ny);
    track(3, lhs3 - rhs3 - tol * (1.0 + rhs3));

    const double lhs4 = std::sqrt(matrix_norm(F(Point(x + y)), NormKind::op));
    const double rhs4 = std::sqrt(nx) + std::sqrt(ny);
    track(4, lhs4 - rhs4 - tol * (1.0 + rhs4));
  }

  Report r("cpsd_inequalities");
  r.data["pairs"] = pairs.size();
  r.data["tol"] = tol;
  const char* names[5] = {"real_part_lower", "real_part_upper", "real_part_norm",
                          "shifted_difference", "sqrt_subadditivity"};
  for (int i = 0; i < 5; ++i) r.add(names[i], worst[i] <= 0.0, worst[i], 0.0);
  return r;
}

}  // namespace mpsd
