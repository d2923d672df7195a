#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "mpsd/report.hpp"

namespace mpsd {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class NormKind { op, hs, trace, max, entry_sum };

struct PsdVerdict {
  bool verdict = false;
  double min_eigenvalue = 0.0;
  double hermiticity_defect = 0.0;
  CVector witness;
  double tol = 0.0;
};

struct HermitianParts {
  CMatrix re, im;
  CMatrix re_pos, re_neg;
  CMatrix im_pos, im_neg;
};

// Throws InputError unless A is square with finite entries.
void require_valid(const CMatrix& A, const char* what = "matrix");

// 1e-9 * max(1, ||A||_op).
double default_tol(const CMatrix& A);

double matrix_norm(const CMatrix& A, NormKind kind);
double hermiticity_defect(const CMatrix& A);
CMatrix hermitian_part(const CMatrix& A);

PsdVerdict psd_check(const CMatrix& A, std::optional<double> tol = std::nullopt);
PsdVerdict cpsd_check(const CMatrix& A, std::optional<double> tol = std::nullopt);

// m x (m-1) Helmert basis: orthonormal columns spanning the sum-zero subspace.
CMatrix sum_zero_basis(int m);

CMatrix hadamard_product(const CMatrix& A, const CMatrix& B);
CMatrix hadamard_exp(const CMatrix& A, double t = 1.0);
CMatrix all_ones(int m);

HermitianParts hermitian_split(const CMatrix& A);

// Spectral functions of a Hermitian matrix; eigenvalues below cutoff are treated as zero.
CMatrix psd_sqrt(const CMatrix& A);
CMatrix pseudo_inverse_sqrt(const CMatrix& A, double cutoff);

Report contraction_factor_check(const CMatrix& M1, const CMatrix& X, const CMatrix& M2,
                                std::optional<double> tol = std::nullopt);

// Quadratic form (c, A c) = c* A c.
cplx quadratic_form(const CMatrix& A, const CVector& c);

}  // namespace mpsd
