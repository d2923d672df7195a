#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpsd/matcore.hpp"

namespace mpsd {

using Point = Eigen::VectorXd;

// Periodic grid on [-L/2, L/2)^n with K samples per axis.
// Spatial points x_k = -L/2 + k L / K; dual frequencies 2 pi j / L for j in [-K/2, K/2),
// stored at index j + K/2.
class GridSpec {
 public:
  GridSpec(int n, double L, int K);

  int n() const { return n_; }
  double L() const { return L_; }
  int K() const { return K_; }
  std::size_t size() const { return size_; }
  double spacing() const { return L_ / K_; }
  double dual_spacing() const;
  double cell_volume() const;
  double dual_cell_volume() const;

  std::vector<int> index(std::size_t flat) const;
  // Multi-index wrapped periodically onto [0, K).
  std::size_t flat(const std::vector<int>& idx) const;
  Point coord(std::size_t flat) const;
  Point freq(std::size_t flat) const;
  // Index of the grid point nearest to x after periodic wrap.
  std::size_t nearest(const Point& x) const;
  // True when every coordinate of x lies in [-L/2, L/2).
  bool contains(const Point& x) const;

  bool operator==(const GridSpec& o) const { return n_ == o.n_ && L_ == o.L_ && K_ == o.K_; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  int n_;
  double L_;
  int K_;
  std::size_t size_;
};

enum class Domain { space, frequency };

// Matrix-valued samples on a grid. Each point holds an m x m column-major block
// in one contiguous buffer.
class GridField {
 public:
  GridField(GridSpec spec, int m, Domain domain = Domain::space);

  static GridField sample(const GridSpec& spec, int m, const std::function<CMatrix(const Point&)>& f,
                          Domain domain = Domain::space);

  const GridSpec& spec() const { return spec_; }
  int m() const { return m_; }
  Domain domain() const { return domain_; }
  std::size_t size() const { return spec_.size(); }
  Point location(std::size_t i) const;

  Eigen::Map<CMatrix> at(std::size_t i) { return {data_.data() + i * block(), m_, m_}; }
  Eigen::Map<const CMatrix> at(std::size_t i) const { return {data_.data() + i * block(), m_, m_}; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t block() const { return static_cast<std::size_t>(m_) * m_; }

  GridField& operator+=(const GridField& o);
  GridField& operator-=(const GridField& o);
  GridField& operator*=(cplx s);
  // Pointwise A * f(x) and f(x) * A.
  GridField left_multiplied(const CMatrix& A) const;
  GridField right_multiplied(const CMatrix& A) const;

 private:
  void require_same_shape(const GridField& o) const;

  GridSpec spec_;
  int m_;
  Domain domain_;
  std::vector<cplx> data_;
};

// Forward (L/K)^n (2 pi)^{-n/2} sum e^{-i xi x} f(x), and its exact inverse.
GridField dft(const GridField& f);
GridField idft(const GridField& g);

// Norms with the grid cell volume of the field's domain as quadrature weight.
double hs_norm(const GridField& f);          // (sum_x ||f(x)||_hs^2 dv)^{1/2}
double triple_norm_1(const GridField& f);    // sum_{jk} sum_x |f_jk(x)| dv
double triple_norm_2(const GridField& f);    // sum_{jk} (sum_x |f_jk(x)|^2 dv)^{1/2}
double sup_norm(const GridField& f, NormKind kind);
double max_abs_difference(const GridField& a, const GridField& b);
cplx hs_inner(const GridField& a, const GridField& b);  // sum_x tr(a(x)* b(x)) dv

// Binary format: "MPSDGF1\0", int32 n, int32 m, float64 L, int32 K, int32 domain,
// int32 scalar bytes (8 or 16), then the payload point by point (last axis fastest),
// each matrix row-major as (re, im) pairs. Little-endian.
void write_field(std::ostream& os, const GridField& f, bool single_precision = false);
GridField read_field(std::istream& is);
void write_field_file(const std::string& path, const GridField& f, bool single_precision = false);
GridField read_field_file(const std::string& path);

}  // namespace mpsd
