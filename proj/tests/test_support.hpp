#pragma once

#include <algorithm>
#include <cstdint>
#include <random>

#include "mpsd/grid.hpp"
#include "mpsd/matcore.hpp"
#include "mpsd/measures.hpp"

namespace mpsd::test_support {

// Seeded generators for property tests. Every test constructs its own Gen so a
// failure reproduces from the seed printed in the assertion message.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::uint64_t raw() { return rng_(); }

  CMatrix complex_matrix(int rows, int cols) {
    CMatrix C(rows, cols);
    for (int j = 0; j < rows; ++j)
      for (int k = 0; k < cols; ++k) C(j, k) = cplx(normal(), normal());
    return C;
  }
  CMatrix complex_matrix(int m) { return complex_matrix(m, m); }

  CVector complex_vector(int m) { return complex_matrix(m, 1).col(0); }

  CMatrix hermitian(int m) {
    const CMatrix C = complex_matrix(m);
    return (C + C.adjoint()) / 2.0;
  }

  // G G^* with rank at most rank (full rank by default).
  CMatrix psd(int m, int rank = -1) {
    const CMatrix G = complex_matrix(m, rank < 0 ? m : rank);
    return G * G.adjoint();
  }

  // P + a 1^T + 1 a^*: Hermitian and nonnegative on sum-zero vectors.
  CMatrix cpsd(int m) {
    const CVector a = complex_vector(m);
    const CVector one = CVector::Ones(m);
    return psd(m) + a * one.transpose() + one * a.adjoint();
  }

  Eigen::VectorXd point(int n, double R) {
    Eigen::VectorXd x(n);
    for (int a = 0; a < n; ++a) x(a) = uniform(-R, R);
    return x;
  }

  GridField noise_field(const GridSpec& spec, int m) {
    GridField f(spec, m);
    for (std::size_t i = 0; i < f.size() * f.block(); ++i) f.data()[i] = cplx(normal(), normal());
    return f;
  }

  // Atoms on distinct grid nodes inside half the torus.
  MatrixMeasure grid_measure(const GridSpec& spec, int m, int atoms) {
    std::vector<Atom> out;
    std::vector<std::size_t> used;
    while (static_cast<int>(out.size()) < atoms) {
      const auto i = static_cast<std::size_t>(integer(0, static_cast<int>(spec.size()) - 1));
      const Eigen::VectorXd x = spec.coord(i);
      if (x.lpNorm<Eigen::Infinity>() >= spec.L() / 4) continue;
      if (std::find(used.begin(), used.end(), i) != used.end()) continue;
      used.push_back(i);
      out.push_back({x, complex_matrix(m)});
    }
    return MatrixMeasure(spec.n(), m, std::move(out));
  }

 private:
  std::mt19937_64 rng_;
};

// Smallest eigenvalue by the general (non-Hermitian) eigensolver, independent of
// the self-adjoint path used by the library.
inline double oracle_min_eigenvalue(const CMatrix& A) {
  Eigen::ComplexEigenSolver<CMatrix> es(A);
  return es.eigenvalues().real().minCoeff();
}

}  // namespace mpsd::test_support
