#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpsd/grid.hpp"
#include "mpsd/measures.hpp"
#include "mpsd/psdfun.hpp"
#include "mpsd/report.hpp"

namespace mpsd {

// Symbol F of the multiplier F(-i grad): an evaluator on frequencies or a field
// already sampled on a dual grid.
class MultiplierSymbol {
 public:
  using Evaluator = std::function<CMatrix(const Point&)>;

  MultiplierSymbol(int n, int m, Evaluator f, std::string label = {});
  explicit MultiplierSymbol(const MatrixFunction& F);
  explicit MultiplierSymbol(GridField samples, std::string label = {});

  int n() const { return n_; }
  int m() const { return m_; }
  const std::string& label() const { return label_; }

  // Frequency-domain field of symbol values on the dual grid of spec.
  GridField sample(const GridSpec& spec) const;

 private:
  int n_;
  int m_;
  Evaluator f_;
  std::optional<GridField> samples_;
  std::string label_;
};

enum class NormMethod { supremum, power_iteration, random_search };
const char* to_string(NormMethod m);

struct NormEstimate {
  double value = 0.0;
  NormMethod method = NormMethod::supremum;
  int iterations = 0;
  double residual = 0.0;
};

// (f^ F)^v with f^(xi) F(xi) multiplied in that order.
GridField apply_multiplier(const MultiplierSymbol& F, const GridField& f);
GridField apply_multiplier_sampled(const GridField& symbol, const GridField& f);

struct ScanPoint {
  double min_eigenvalue;
  double defect;
};
std::vector<ScanPoint> eigen_scan(const GridField& f);

// Applies F to each PSD probe and runs psd_check at every output grid point.
Report positivity_probe(const MultiplierSymbol& F, const std::vector<GridField>& probes,
                        double tol = 1e-9);

// h(|x|) D where h = 1 on |x| <= radius, 0 on |x| >= radius + eps, quintic smoothstep between.
GridField bump_field(const GridSpec& spec, int m, double radius, double eps, const CMatrix& D);
double smoothstep_cutoff(double r, double radius, double eps);
// exp(-|x - center|^2 / (2 width^2)) D
GridField gaussian_field(const GridSpec& spec, const Point& center, double width, const CMatrix& D);

// Gaussian measure times diag(1, 2) tested on the bump probe with weight M at the origin:
// the output is a non-Hermitian multiple of M diag(1, 2).
Report right_multiplier_counterexample(const GridSpec& spec, double eps,
                                       std::optional<CMatrix> M = std::nullopt);

// Searches bump probes h(|x|) D, D = diag(1, ..., m), for a grid point where
// exp_H(tF)(-i grad) produces a non PSD value. Never reports pass.
Report bump_probe_witness(const MatrixFunction& F, double t, const GridSpec& spec,
                          double eps = 0.25, std::optional<CMatrix> D = std::nullopt,
                          double tol = 1e-9);

// min over probes and grid points of Re tr((exp_H(tF)(-i grad) f)(x)).
Report trace_positivity_check(const MatrixFunction& F, const std::vector<double>& ts,
                              const std::vector<GridField>& probes, double tol = 1e-8);

// (supremum of ||F(xi)||_op on the dual grid, power iteration on A*A in the HS metric).
std::pair<NormEstimate, NormEstimate> l2_multiplier_norm(const MultiplierSymbol& F,
                                                         const GridSpec& spec,
                                                         std::uint64_t seed = 1,
                                                         int max_iterations = 500,
                                                         double rtol = 1e-8);

// Matrix of X -> X A on row-major vectorized m x m matrices: m diagonal copies of A^T.
CMatrix right_mult_matrix(const CMatrix& A);
double right_mult_norm(const CMatrix& A);

// Sampled L1 operator norm of (2 pi)^{-n/2} T_mu against the entrywise variation bounds.
Report l1_norm_bounds_check(const MatrixMeasure& mu, const GridSpec& spec,
                            int probe_family_size, std::uint64_t seed);

// Sampled operator norm in the sum-of-entry L2 norm against max entry sup bounds.
Report l2_triple_norm_bounds_check(const MultiplierSymbol& F, const GridSpec& spec,
                                   int probe_family_size, std::uint64_t seed);

// L1 norm of the transform of prod_l exp(-a |x_l|), and the sup bound for its
// product with F.
Report exponential_kernel_bound_check(double a, const MultiplierSymbol& F, const GridSpec& spec);

// Convolution with a normalized C-infinity bump of radius eps times the identity.
GridField mollify(const GridField& f, double eps);

// Evaluates F(-i grad) on fields whose spectrum is a bump of radius eps around the
// dual grid frequency xi nearest x, against (2 pi)^{-n/2} F(xi) for F = mu^.
Report mollifier_recovery_check(const MatrixMeasure& mu, const GridSpec& spec,
                                const std::vector<Point>& xs, const std::vector<double>& eps_list);

// Central difference of t -> exp_H(tF)(-i grad) f against the (exp_H(tF) o_H F) multiplier,
// at steps h and h / 2.
Report hadamard_derivative_check(const MatrixFunction& F, double t, const GridField& f, double h);

// sup_x ||(F(-i grad) f)(x)||_max <= 2 m^4 ||F||_inf for PSD probes and 8 m^6 ||F||_inf
// otherwise, with probes rescaled to sup_x ||f(x)||_max = 1.
Report sup_bounds_check(const MultiplierSymbol& F, const std::vector<GridField>& probes);

// Probability that a standard Gaussian vector in R^n has norm <= 1 (n = 1, 2, 3).
double gaussian_unit_ball_mass(int n);

}  // namespace mpsd
