#include "quoherence/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace quoherence {

HermitianDefect hermitian_defect(const CMatrix& m, double tol) {
    HermitianDefect worst;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
            if (dev > worst.deviation) {
                worst.deviation = dev;
                worst.row = i;
                worst.col = j;
            }
        }
    }
    worst.ok = worst.deviation <= tol;
    return worst;
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

CMatrix psd_factor(const CMatrix& m) {
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
    const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return root.asDiagonal() * solver.eigenvectors().adjoint();
}

bool exactly_equal(const CMatrix& a, const CMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace quoherence
