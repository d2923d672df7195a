#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpsd/grid.hpp"
#include "mpsd/matcore.hpp"
#include "mpsd/psdfun.hpp"
#include "mpsd/report.hpp"

namespace mpsd {

struct Atom {
  Point xi;
  CMatrix W;
};

// Finite atomic C^{m x m}-valued measure. Atoms at equal locations are merged on
// construction and kept in lexicographic order of location.
class MatrixMeasure {
 public:
  MatrixMeasure(int n, int m, std::vector<Atom> atoms, std::string provenance = {});

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::string& provenance() const { return provenance_; }
  CMatrix total_mass() const;

 private:
  int n_;
  int m_;
  std::vector<Atom> atoms_;
  std::string provenance_;
};

// sum_j ||W_j||_op
double variation(const MatrixMeasure& mu);
// max_{jk} sum_atoms |(W)_jk|
double entrywise_variation(const MatrixMeasure& mu);
// psd_check of the atom weight with the smallest eigenvalue margin.
PsdVerdict is_nonnegative(const MatrixMeasure& mu, std::optional<double> tol = std::nullopt);

// (2 pi)^{-n/2} sum_j exp(-i x . xi_j) W_j
CMatrix fourier_transform(const MatrixMeasure& mu, const Point& x);
MatrixFunction fourier_function(const MatrixMeasure& mu);

struct ConvolveResult {
  GridField field;
  bool out_of_range = false;  // some atom lies outside the torus and was wrapped
};

// (f * mu)(x) = sum_j f(x - xi_j) W_j with f read at the nearest grid point.
ConvolveResult convolve(const MatrixMeasure& mu, const GridField& f);

// tr(sum_j f(xi_j) W_j) with f read at the nearest grid point.
cplx duality_pairing(const GridField& f, const MatrixMeasure& mu);

// Standard Gaussian density discretized at the cell centres of [-extent, extent]^n.
MatrixMeasure gaussian_measure(int n, double extent, int cells_per_axis, const CMatrix& weight);

// Standard Gaussian density discretized at the nodes of a grid (atoms exactly on grid
// points), dropping nodes whose density is below 1e-18 of the peak.
MatrixMeasure gaussian_grid_measure(const GridSpec& spec, const CMatrix& weight);

// sum of weights of atoms with |xi - center| <= radius.
CMatrix mass_in_ball(const MatrixMeasure& mu, const Point& center, double radius);

// Positive semidefiniteness, hermitian symmetry and ||F(x)|| <= ||F(0)|| for F = mu^.
Report bochner_forward_check(const MatrixMeasure& mu, const PointSet& X,
                             std::optional<double> tol = std::nullopt);

}  // namespace mpsd
