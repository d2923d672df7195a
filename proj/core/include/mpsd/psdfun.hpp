#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpsd/matcore.hpp"
#include "mpsd/report.hpp"

namespace mpsd {

using Point = Eigen::VectorXd;

struct Properties {
  bool hermitian_symmetric = false;  // F(-x) = F(x)*
  bool cpsd_claimed = false;
  bool psd_claimed = false;
};

class MatrixFunction {
 public:
  using Evaluator = std::function<CMatrix(const Point&)>;

  MatrixFunction(int n, int m, Evaluator f, std::string catalog_id = {}, Properties props = {});

  // Validates the argument dimension and the finiteness of the value.
  CMatrix operator()(const Point& x) const;

  int n() const { return n_; }
  int m() const { return m_; }
  const std::string& id() const { return id_; }
  const Properties& properties() const { return props_; }

 private:
  int n_;
  int m_;
  Evaluator f_;
  std::string id_;
  Properties props_;
};

class PointSet {
 public:
  PointSet(int n, std::vector<Point> points);

  // N points drawn uniformly from [-R, R]^n.
  static PointSet random(int n, int N, double R, std::uint64_t seed);

  int n() const { return n_; }
  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](int p) const { return points_[static_cast<std::size_t>(p)]; }
  const std::vector<Point>& points() const { return points_; }
  PointSet shifted(const Point& v) const;
  PointSet subset(const std::vector<int>& indices) const;

 private:
  int n_;
  std::vector<Point> points_;
};

struct BlockGram {
  int m = 0;
  int N = 0;
  CMatrix matrix;

  CMatrix block(int p, int q) const { return matrix.block(p * m, q * m, m, m); }
};

// Block (p, q) = F(x_p - x_q).
BlockGram gram(const MatrixFunction& F, const PointSet& X);

// Block (p, q) = F(x_p - x_q) - F(x_p) - F(x_q)*.
BlockGram schoenberg_gram(const MatrixFunction& F, const PointSet& X);

PsdVerdict psd_function_check(const MatrixFunction& F, const PointSet& X,
                              std::optional<double> tol = std::nullopt);

// Symmetry F(-x) = F(x)* on sampled differences, and conditional positivity of the
// block Gram under the single constraint that all mN coefficients sum to zero.
Report cpsd_function_check(const MatrixFunction& F, const PointSet& X,
                           std::optional<double> tol = std::nullopt);

// For each direction f, the scalar matrix (f, F(x_p - x_q) f) must be conditionally PSD.
Report weak_cpsd_check(const MatrixFunction& F, const PointSet& X,
                       const std::vector<CVector>& directions,
                       std::optional<double> tol = std::nullopt);

// Standard basis, pairwise real and imaginary combinations, then seeded random unit vectors.
std::vector<CVector> default_directions(int m, int random_count, std::uint64_t seed);

MatrixFunction hadamard_exp_function(const MatrixFunction& F, double t);

// psd_check(-F(0)).
bool nonpositive_at_origin(const MatrixFunction& F, std::optional<double> tol = std::nullopt);

// Conditional positivity of F versus positivity of exp_H(tF) for each t, and
// positivity of the shifted Gram when F(0) <= 0.
Report schoenberg_equivalence_report(const MatrixFunction& F, const PointSet& X,
                                     const std::vector<double>& t_grid,
                                     std::optional<double> tol = std::nullopt);

// Quadratic growth: sup ||F(x)|| / (1 + |x|^2) against C' = sup_{|y| <= 2} ||F(y)||.
Report growth_bound_estimate(const MatrixFunction& F, const std::vector<double>& radii,
                             int samples_per_radius, std::uint64_t seed);

// Necessary inequalities for a conditionally PSD F with F(0) <= 0:
//   0 <= F(0) - 2 Re F(x) <= -2 Re F(x)
//   ||F(0) - 2 Re F(x)|| <= 2 ||F(x)||
//   ||F(x - y) - F(x) - F(y)*|| <= 2 ||F(x)||^{1/2} ||F(y)||^{1/2}
//   ||F(x + y)||^{1/2} <= ||F(x)||^{1/2} + ||F(y)||^{1/2}
Report cpsd_inequalities_check(const MatrixFunction& F,
                               const std::vector<std::pair<Point, Point>>& pairs,
                               double tol = 1e-8);

}  // namespace mpsd
