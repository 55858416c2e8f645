#include "quoherence/coherence.hpp"

#include "quoherence/error.hpp"

#include <cmath>
#include <sstream>

namespace quoherence {

namespace {

void require_same_size(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": sizes " << a << " and " << b << " differ";
        throw Error{ErrorCode::dimension_mismatch, os.str()};
    }
}

double offdiagonal_l1(const CMatrix& m) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            if (j != k) sum += std::abs(m(j, k));
        }
    }
    return sum;
}

}  // namespace

ReducedDensity reduced_density(const QuantonPureState& state, const DetectorGram& det) {
    require_same_size(state.size(), det.size(), "reduced_density");
    const int n = state.size();
    CMatrix rho(n, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            rho(k, j) = state.amplitude(k) * std::conj(state.amplitude(j)) * det(j, k);
        }
    }
    return ReducedDensity::from_matrix(rho);
}

CMatrix quanton_density(const QuantonState& state, const DetectorGram& det) {
    if (const auto* pure = std::get_if<QuantonPureState>(&state)) {
        return reduced_density(*pure, det).matrix();
    }
    const auto& q = std::get<QuantonMixedState>(state).coeffs();
    require_same_size(static_cast<int>(q.rows()), det.size(), "quanton_density");
    return q.cwiseProduct(det.matrix().transpose());
}

double coherence_of_density(const ReducedDensity& rho) {
    return offdiagonal_l1(rho.matrix()) / (rho.size() - 1);
}

double coherence_pure(const QuantonPureState& state, const DetectorGram& det) {
    require_same_size(state.size(), det.size(), "coherence_pure");
    const int n = state.size();
    const auto& c = state.moduli();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j != k) sum += c[k] * c[j] * std::abs(det(j, k));
        }
    }
    return sum / (n - 1);
}

double coherence_mixed(const QuantonMixedState& state, const DetectorGram& det) {
    require_same_size(state.size(), det.size(), "coherence_mixed");
    const int n = state.size();
    const auto& q = state.coeffs();
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j != k) sum += std::abs(q(j, k)) * std::abs(det(k, j));
        }
    }
    return sum / (n - 1);
}

double coherence(const QuantonState& state, const DetectorGram& det) {
    if (const auto* pure = std::get_if<QuantonPureState>(&state)) return coherence_pure(*pure, det);
    return coherence_mixed(std::get<QuantonMixedState>(state), det);
}

double distinguishability(std::span<const double> priors, const DetectorGram& det) {
    require_same_size(static_cast<int>(priors.size()), det.size(), "distinguishability");
    double total = 0.0;
    for (double p : priors) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw Error{ErrorCode::priors_not_normalized, "priors must be finite and nonnegative"};
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        std::ostringstream os;
        os << "priors sum to " << total << ", expected 1";
        throw Error{ErrorCode::priors_not_normalized, os.str()};
    }
    const int n = det.size();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) sum += std::sqrt(priors[i] * priors[j]) * std::abs(det(i, j));
        }
    }
    return 1.0 - sum / (n - 1);
}

double distinguishability(const QuantonState& state, const DetectorGram& det) {
    const auto priors = state_priors(state);
    return distinguishability(std::span<const double>{priors}, det);
}

double uqsd_bound(std::span<const double> priors, const DetectorGram& det) {
    return distinguishability(priors, det);
}

double duality_gap(double coherence, double distinguishability) noexcept {
    return 1.0 - (coherence + distinguishability);
}

}  // namespace quoherence
