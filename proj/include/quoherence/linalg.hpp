#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace quoherence {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

struct HermitianDefect {
    bool ok = true;
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    double deviation = 0.0;
};

/// Largest |m(i,j) - conj(m(j,i))| and where it occurs.
HermitianDefect hermitian_defect(const CMatrix& m, double tol = kHermitianTolerance);

/// Eigenvalues of the Hermitian part of m, ascending.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);

/// Returns B with m = B^dagger B, negative eigenvalues clamped to zero.
/// Row r of B is sqrt(lambda_r) * v_r^dagger.
CMatrix psd_factor(const CMatrix& m);

bool exactly_equal(const CMatrix& a, const CMatrix& b);

}  // namespace quoherence
