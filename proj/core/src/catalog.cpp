#include "mpsd/catalog.hpp"

#include <cmath>
#include <numbers>

#include "mpsd/errors.hpp"
#include "mpsd/io.hpp"

namespace mpsd::catalog {

namespace {

double two_pi_pow(int n) { return std::pow(2.0 * std::numbers::pi, n / 2.0); }

template <typename T>
T param(const json& p, const char* key, T fallback) {
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

}  // namespace

MatrixFunction log_half_identity(int n) {
  const CMatrix A = std::log(0.5) * CMatrix::Identity(2, 2);
  return MatrixFunction(n, 2, [A](const Point&) { return A; }, "log_half_identity",
                        Properties{true, false, false});
}

MatrixFunction linear_skew(double s, double s11, double s22) {
  CMatrix S(2, 2);
  S << s11, cplx(0.0, s), cplx(0.0, -s), s22;
  return MatrixFunction(1, 2, [S](const Point& x) -> CMatrix { return cplx(0.0, x(0)) * S; },
                        "linear_skew", Properties{true, s == 0.0 && s11 == 0.0 && s22 == 0.0, false});
}

MatrixFunction point_mass_log(double a, double b, double c, const Point& y0) {
  if (!(a > 0 && b > 0 && c > 0)) throw InputError("point_mass_log needs a, b, c > 0");
  if (y0.size() < 1 || !y0.allFinite()) throw InputError("point_mass_log needs a finite y0");
  CMatrix L(2, 2);
  L << std::log(a), std::log(b), std::log(b), std::log(c);
  const bool cpsd = a * c >= b * b;
  return MatrixFunction(static_cast<int>(y0.size()), 2,
                        [L, y0](const Point& x) -> CMatrix {
                          return cplx(0.0, -x.dot(y0)) * CMatrix::Ones(2, 2) + L;
                        },
                        "point_mass_log", Properties{true, cpsd, false});
}

ScalarGenerator quadratic_generator(int n, double scale) {
  return {0.0, Point::Zero(n), scale * Eigen::MatrixXd::Identity(n, n)};
}

MatrixFunction scalar_generator(const ScalarGenerator& g, int m) {
  const int n = static_cast<int>(g.beta.size());
  if (n < 1 || g.A.rows() != n || g.A.cols() != n) throw InputError("generator shapes are inconsistent");
  if ((g.A - g.A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.A.norm())) {
    throw InputError("generator matrix must be symmetric");
  }
  if (!std::isfinite(g.alpha) || !g.beta.allFinite() || !g.A.allFinite()) {
    throw InputError("generator coefficients must be finite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.A);
  const bool cpsd = es.eigenvalues()(0) >= -1e-12 * std::max(1.0, g.A.norm());
  return MatrixFunction(n, m,
                        [g, m](const Point& x) -> CMatrix {
                          const cplx v(g.alpha - x.dot(g.A * x), g.beta.dot(x));
                          return v * CMatrix::Ones(m, m);
                        },
                        "scalar_generator", Properties{true, cpsd, false});
}

MatrixFunction constant(const CMatrix& A, int n) {
  require_valid(A);
  const bool hermitian = hermiticity_defect(A) <= default_tol(A);
  const bool cpsd = hermitian && cpsd_check(A).verdict;
  const bool psd = psd_check(A).verdict;
  return MatrixFunction(n, static_cast<int>(A.rows()), [A](const Point&) { return A; }, "constant",
                        Properties{hermitian, cpsd, psd});
}

MatrixMeasure shifted_point_mass(double a, double b, double c, const Point& y0, double t) {
  CMatrix W(2, 2);
  W << std::pow(a, t), std::pow(b, t), std::pow(b, t), std::pow(c, t);
  const int n = static_cast<int>(y0.size());
  return MatrixMeasure(n, 2, {{t * y0, two_pi_pow(n) * W}}, "shifted_point_mass");
}

MatrixMeasure point_mass(int n, const CMatrix& W) {
  return MatrixMeasure(n, static_cast<int>(W.rows()), {{Point::Zero(n), W}}, "point_mass");
}

MatrixMeasure gaussian_diag(int n, double extent, int cells) {
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  return gaussian_measure(n, extent, cells, A);
}

MatrixMeasure gaussian_corner(int n, int m, double extent, int cells) {
  CMatrix W = CMatrix::Zero(m, m);
  W(0, 0) = 1.0;
  return gaussian_measure(n, extent, cells, W);
}

MatrixMeasure gaussian_all(int n, int m, double extent, int cells) {
  return gaussian_measure(n, extent, cells, CMatrix::Ones(m, m));
}

MatrixFunction function_from_json(const json& spec) {
  const std::string id = spec.is_string() ? spec.get<std::string>() : spec.at("id").get<std::string>();
  const json p = spec.is_object() && spec.contains("params") ? spec.at("params") : json::object();
  if (id == "log_half_identity") return log_half_identity(param(p, "n", 1));
  if (id == "linear_skew") {
    return linear_skew(param(p, "s", 1.0), param(p, "s11", 0.0), param(p, "s22", 0.0));
  }
  if (id == "point_mass_log") {
    const Point y0 = p.contains("y0") ? point_from_json(p.at("y0")) : Point::Ones(1);
    return point_mass_log(param(p, "a", 2.0), param(p, "b", 1.0), param(p, "c", 2.0), y0);
  }
  if (id == "scalar_generator") {
    const int n = param(p, "n", 1), m = param(p, "m", 2);
    ScalarGenerator g = quadratic_generator(n, 1.0);
    g.alpha = param(p, "alpha", 0.0);
    if (p.contains("beta")) g.beta = point_from_json(p.at("beta"));
    if (p.contains("A")) {
      const json& rows = p.at("A");
      g.A.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) throw InputError("generator matrix must be square");
        for (std::size_t c = 0; c < rows.size(); ++c) {
          g.A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
        }
      }
    } else if (p.contains("scale")) {
      g.A = p.at("scale").get<double>() * Eigen::MatrixXd::Identity(n, n);
    }
    return scalar_generator(g, m);
  }
  if (id == "constant") {
    if (!p.contains("A")) throw InputError("constant needs params.A");
    return constant(matrix_from_json(p.at("A")), param(p, "n", 1));
  }
  if (id == "bochner") {
    if (!p.contains("measure")) throw InputError("bochner needs params.measure");
    return fourier_function(measure_from_json(p.at("measure")));
  }
  throw InputError("unknown function id '" + id + "'");
}

MatrixMeasure measure_from_json(const json& spec) {
  if (spec.is_object() && spec.contains("atoms")) return mpsd::measure_from_json(spec);
  const std::string id = spec.is_string() ? spec.get<std::string>() : spec.at("id").get<std::string>();
  const json p = spec.is_object() && spec.contains("params") ? spec.at("params") : json::object();
  const int n = param(p, "n", 1);
  const double extent = param(p, "extent", 8.0);
  const int cells = param(p, "cells", 1024);
  if (id == "gaussian_diag") return gaussian_diag(n, extent, cells);
  if (id == "gaussian_corner") return gaussian_corner(n, param(p, "m", 2), extent, cells);
  if (id == "gaussian_all") return gaussian_all(n, param(p, "m", 2), extent, cells);
  if (id == "gaussian") {
    const CMatrix W = p.contains("weight") ? matrix_from_json(p.at("weight")) : CMatrix::Identity(2, 2);
    return gaussian_measure(n, extent, cells, W);
  }
  if (id == "point_mass") {
    const CMatrix W = p.contains("W") ? matrix_from_json(p.at("W")) : CMatrix::Identity(2, 2);
    return point_mass(n, W);
  }
  if (id == "shifted_point_mass") {
    const Point y0 = p.contains("y0") ? point_from_json(p.at("y0")) : Point::Ones(1);
    return shifted_point_mass(param(p, "a", 2.0), param(p, "b", 1.0), param(p, "c", 2.0), y0,
                              param(p, "t", 1.0));
  }
  throw InputError("unknown measure id '" + id + "'");
}

json listing() {
  auto fn = [](const char* id, json params, const char* description) {
    return json{{"id", id}, {"kind", "function"}, {"params", std::move(params)}, {"description", description}};
  };
  auto ms = [](const char* id, json params, const char* description) {
    return json{{"id", id}, {"kind", "measure"}, {"params", std::move(params)}, {"description", description}};
  };
  json out = json::array();
  out.push_back(fn("log_half_identity", {{"n", 1}},
                   "constant ln(1/2) I_2; weakly but not fully conditionally PSD"));
  out.push_back(fn("linear_skew", {{"s", 1.0}, {"s11", 0.0}, {"s22", 0.0}},
                   "i x S with S_12 = i s; shifted Gram vanishes, not conditionally PSD"));
  out.push_back(fn("point_mass_log", {{"a", 2.0}, {"b", 1.0}, {"c", 2.0}, {"y0", {1.0}}},
                   "-i (x . y0) H + entrywise log [[a, b], [b, c]]; conditionally PSD iff ac >= b^2"));
  out.push_back(fn("scalar_generator", {{"n", 1}, {"m", 2}, {"alpha", 0.0}, {"scale", 1.0}},
                   "(alpha + i beta . x - x . A x) H_m; conditionally PSD iff A >= 0"));
  out.push_back(fn("constant", {{"A", "matrix"}, {"n", 1}}, "constant matrix A"));
  out.push_back(fn("bochner", {{"measure", "measure spec"}}, "Fourier transform of an atomic measure"));
  out.push_back(ms("gaussian_diag", {{"n", 1}, {"extent", 8.0}, {"cells", 1024}},
                   "standard Gaussian times diag(1, 2)"));
  out.push_back(ms("gaussian_corner", {{"n", 1}, {"m", 2}, {"extent", 8.0}, {"cells", 1024}},
                   "standard Gaussian in the (1,1) entry only"));
  out.push_back(ms("gaussian_all", {{"n", 1}, {"m", 2}, {"extent", 8.0}, {"cells", 1024}},
                   "standard Gaussian in every entry"));
  out.push_back(ms("gaussian", {{"n", 1}, {"extent", 8.0}, {"cells", 1024}, {"weight", "matrix"}},
                   "standard Gaussian times a weight matrix"));
  out.push_back(ms("point_mass", {{"n", 1}, {"W", "matrix"}}, "single atom at the origin"));
  out.push_back(ms("shifted_point_mass", {{"a", 2.0}, {"b", 1.0}, {"c", 2.0}, {"y0", {1.0}}, {"t", 1.0}},
                   "single atom at t y0 whose transform is exp_H(t point_mass_log)"));
  return out;
}

}  // namespace mpsd::catalog
