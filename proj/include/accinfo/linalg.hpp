#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace accinfo {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

HermitianEigen eigh(const CMatrix& a);

/// Apply f to the spectrum of a Hermitian matrix.
CMatrix spectral_map(const CMatrix& a, const std::function<double(double)>& f);

CMatrix sqrtm_psd(const CMatrix& a);

/// Pseudo-inverse square root; eigenvalues at or below rel_cutoff * max are
/// treated as zero and excluded.
CMatrix pinv_sqrtm(const CMatrix& a, double rel_cutoff = 1e-12);
CMatrix pinv_psd(const CMatrix& a, double rel_cutoff = 1e-12);

/// Orthonormal basis (columns) of the range of a PSD matrix.
CMatrix support_basis(const CMatrix& a, double rel_cutoff = 1e-12);

CMatrix hermitian_part(const CMatrix& a);
CMatrix anti_hermitian_part(const CMatrix& a);

/// Largest singular value.
double operator_norm(const CMatrix& a);
double max_abs_entry(const CMatrix& a);

/// Polar factor Y (Y^dagger Y)^{-1/2} of a full-column-rank matrix.
CMatrix polar_isometry(const CMatrix& y);

}  // namespace accinfo
