#pragma once

#include <nlohmann/json.hpp>

#include "mpsd/measures.hpp"
#include "mpsd/psdfun.hpp"

namespace mpsd::catalog {

// Constant ln(1/2) I_2: weakly but not fully conditionally PSD.
MatrixFunction log_half_identity(int n = 1);

// F(x) = i x S on R with S = [[s11, i s], [-i s, s22]]; hermitian symmetric, and its
// shifted Gram vanishes, yet it is not conditionally PSD for s != 0.
MatrixFunction linear_skew(double s, double s11 = 0.0, double s22 = 0.0);

// F(x) = -i (x . y0) H + [[ln a, ln b], [ln b, ln c]]; conditionally PSD iff ac >= b^2.
// exp_H(tF) is the transform of a single atom at t y0.
MatrixFunction point_mass_log(double a, double b, double c, const Point& y0);

// alpha + i (beta . x) - x . (A x) with real alpha, beta and symmetric real A.
struct ScalarGenerator {
  double alpha = 0.0;
  Point beta;
  Eigen::MatrixXd A;
};
ScalarGenerator quadratic_generator(int n, double scale);  // -scale |x|^2
// G(x) H_m, conditionally PSD iff A is PSD.
MatrixFunction scalar_generator(const ScalarGenerator& g, int m);

MatrixFunction constant(const CMatrix& A, int n = 1);

// (2 pi)^{n/2} [[a^t, b^t], [b^t, c^t]] at t y0, whose transform is exp_H(t F) for
// F = point_mass_log(a, b, c, y0).
MatrixMeasure shifted_point_mass(double a, double b, double c, const Point& y0, double t);
// Single atom at the origin.
MatrixMeasure point_mass(int n, const CMatrix& W);
// Gaussian with weight diag(1, 2).
MatrixMeasure gaussian_diag(int n, double extent, int cells);
// Gaussian in the (1,1) entry only, and in every entry.
MatrixMeasure gaussian_corner(int n, int m, double extent, int cells);
MatrixMeasure gaussian_all(int n, int m, double extent, int cells);

// {"id": ..., "params": {...}} or a bare id string.
MatrixFunction function_from_json(const nlohmann::json& spec);
// Catalog measure spec, or an explicit {"n", "m", "atoms"} object.
MatrixMeasure measure_from_json(const nlohmann::json& spec);

nlohmann::json listing();

}  // namespace mpsd::catalog
