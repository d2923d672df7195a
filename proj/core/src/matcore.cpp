#include "mpsd/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mpsd/errors.hpp"

namespace mpsd {

void require_valid(const CMatrix& A, const char* what) {
  if (A.rows() == 0 || A.rows() != A.cols()) {
    throw InputError(std::string(what) + " must be square and non-empty, got " +
                     std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  if (!A.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

namespace {

Eigen::VectorXd singular_values(const CMatrix& A) {
  return Eigen::JacobiSVD<CMatrix>(A).singularValues();
}

double resolve_tol(const CMatrix& A, std::optional<double> tol) {
  const double t = tol ? *tol : default_tol(A);
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("tolerance must be positive and finite");
  return t;
}

}  // namespace

double default_tol(const CMatrix& A) { return 1e-9 * std::max(1.0, matrix_norm(A, NormKind::op)); }

double matrix_norm(const CMatrix& A, NormKind kind) {
  if (A.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::op: return singular_values(A)(0);
    case NormKind::hs: return A.norm();
    case NormKind::trace: return singular_values(A).sum();
    case NormKind::max: return A.cwiseAbs().maxCoeff();
    case NormKind::entry_sum: return A.cwiseAbs().sum();
  }
  throw InputError("unknown norm kind");
}

CMatrix hermitian_part(const CMatrix& A) { return (A + A.adjoint()) / 2.0; }

double hermiticity_defect(const CMatrix& A) {
  return matrix_norm((A - A.adjoint()) / 2.0, NormKind::op);
}

PsdVerdict psd_check(const CMatrix& A, std::optional<double> tol) {
  require_valid(A);
  PsdVerdict v;
  v.tol = resolve_tol(A, tol);
  v.hermiticity_defect = hermiticity_defect(A);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
  v.min_eigenvalue = es.eigenvalues()(0);
  v.witness = es.eigenvectors().col(0).normalized();
  v.verdict = v.min_eigenvalue >= -v.tol && v.hermiticity_defect <= v.tol;
  return v;
}

CMatrix sum_zero_basis(int m) {
  if (m < 1) throw InputError("dimension must be positive");
  CMatrix B = CMatrix::Zero(m, m - 1);
  for (int j = 1; j < m; ++j) {
    const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int k = 0; k < j; ++k) B(k, j - 1) = s;
    B(j, j - 1) = -j * s;
  }
  return B;
}

PsdVerdict cpsd_check(const CMatrix& A, std::optional<double> tol) {
  require_valid(A);
  PsdVerdict v;
  v.tol = resolve_tol(A, tol);
  v.hermiticity_defect = hermiticity_defect(A);
  if (v.hermiticity_defect > v.tol) {
    throw PreconditionError("conditional positivity requires a Hermitian matrix; defect " +
                            std::to_string(v.hermiticity_defect));
  }
  const int m = static_cast<int>(A.rows());
  if (m == 1) {
    // The sum-zero subspace of C^1 is trivial.
    v.min_eigenvalue = 0.0;
    v.witness = CVector::Ones(1);
    v.verdict = true;
    return v;
  }
  const CMatrix B = sum_zero_basis(m);
  const CMatrix R = B.adjoint() * hermitian_part(A) * B;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(R));
  v.min_eigenvalue = es.eigenvalues()(0);
  v.witness = (B * es.eigenvectors().col(0)).normalized();
  v.verdict = v.min_eigenvalue >= -v.tol;
  return v;
}

CMatrix hadamard_product(const CMatrix& A, const CMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw InputError("hadamard product needs equal shapes");
  }
  return A.cwiseProduct(B);
}

CMatrix hadamard_exp(const CMatrix& A, double t) {
  if (!std::isfinite(t)) throw InputError("hadamard exponent parameter must be finite");
  CMatrix out(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.rows(); ++j) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      const cplx z = std::exp(t * A(j, k));
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw RangeError("hadamard exponential overflow", static_cast<std::size_t>(j),
                         static_cast<std::size_t>(k));
      }
      out(j, k) = z;
    }
  }
  return out;
}

CMatrix all_ones(int m) { return CMatrix::Ones(m, m); }

HermitianParts hermitian_split(const CMatrix& A) {
  require_valid(A);
  HermitianParts p;
  p.re = (A + A.adjoint()) / 2.0;
  p.im = (A - A.adjoint()) / cplx(0.0, 2.0);
  auto split = [](const CMatrix& H, CMatrix& pos, CMatrix& neg) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(H));
    const Eigen::VectorXd lam = es.eigenvalues();
    const CMatrix& V = es.eigenvectors();
    pos = V * lam.cwiseMax(0.0).cast<cplx>().asDiagonal() * V.adjoint();
    neg = V * (-lam).cwiseMax(0.0).cast<cplx>().asDiagonal() * V.adjoint();
  };
  split(p.re, p.re_pos, p.re_neg);
  split(p.im, p.im_pos, p.im_neg);
  return p;
}

CMatrix psd_sqrt(const CMatrix& A) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix pseudo_inverse_sqrt(const CMatrix& A, double cutoff) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
  Eigen::VectorXd inv = es.eigenvalues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv(i) = inv(i) > cutoff ? 1.0 / std::sqrt(inv(i)) : 0.0;
  }
  return es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Report contraction_factor_check(const CMatrix& M1, const CMatrix& X, const CMatrix& M2,
                                std::optional<double> tol) {
  require_valid(M1, "M1");
  require_valid(M2, "M2");
  if (X.rows() != M1.rows() || X.cols() != M2.rows() || !X.allFinite()) {
    throw InputError("X must be finite with shape rows(M1) x rows(M2)");
  }
  const Eigen::Index p = M1.rows(), q = M2.rows();
  CMatrix block(p + q, p + q);
  block << M1, X, X.adjoint(), M2;
  const double t = resolve_tol(block, tol);

  const PsdVerdict v1 = psd_check(M1, t), v2 = psd_check(M2, t);
  if (!v1.verdict || !v2.verdict) {
    throw PreconditionError("diagonal blocks must be positive semidefinite");
  }
  const double n1 = matrix_norm(M1, NormKind::op), n2 = matrix_norm(M2, NormKind::op);
  const CMatrix C = pseudo_inverse_sqrt(M1, t * n1) * X * pseudo_inverse_sqrt(M2, t * n2);
  const double c_norm = matrix_norm(C, NormKind::op);
  const double recon = matrix_norm(psd_sqrt(M1) * C * psd_sqrt(M2) - X, NormKind::op);
  const double recon_bound = t * std::max(1.0, matrix_norm(X, NormKind::op));
  const PsdVerdict vb = psd_check(block, t);

  Report r("contraction_factor");
  r.data["block_psd"] = vb.verdict;
  r.data["block_min_eigenvalue"] = vb.min_eigenvalue;
  r.data["contraction_norm"] = c_norm;
  r.data["reconstruction_error"] = recon;
  r.data["tol"] = t;
  const bool factor_ok = c_norm <= 1.0 + t && recon <= recon_bound;
  r.add("factorization_matches_block", factor_ok == vb.verdict);
  if (vb.verdict) {
    r.add("contraction_norm", c_norm <= 1.0 + t, c_norm, 1.0 + t);
    r.add("reconstruction", recon <= recon_bound, recon, recon_bound);
  }
  return r;
}

cplx quadratic_form(const CMatrix& A, const CVector& c) { return c.dot(A * c); }

}  // namespace mpsd
