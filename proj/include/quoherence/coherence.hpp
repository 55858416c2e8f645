#pragma once

#include "quoherence/states.hpp"

#include <span>

namespace quoherence {

/// rho_kj = c_k conj(c_j) <d_j|d_k>: the quanton state with the detector traced out.
ReducedDensity reduced_density(const QuantonPureState& state, const DetectorGram& det);

/// Quanton density matrix for either state kind. For a mixed state this is
/// rho_jk = q_jk <d_k|d_j>.
CMatrix quanton_density(const QuantonState& state, const DetectorGram& det);

/// Normalized l1 coherence (1/(n-1)) sum_{i != j} |rho_ij| over ordered pairs.
double coherence_of_density(const ReducedDensity& rho);

double coherence_pure(const QuantonPureState& state, const DetectorGram& det);
double coherence_mixed(const QuantonMixedState& state, const DetectorGram& det);
double coherence(const QuantonState& state, const DetectorGram& det);

/// UQSD path distinguishability 1 - (1/(n-1)) sum_{i != j} sqrt(p_i p_j) |gamma_ij|.
/// Priors must be nonnegative and sum to one (Error::priors_not_normalized).
double distinguishability(std::span<const double> priors, const DetectorGram& det);
/// Pure state: p_j = |c_j|^2. Mixed state: p_j = q_jj.
double distinguishability(const QuantonState& state, const DetectorGram& det);

/// Upper bound on the UQSD success probability; same value as distinguishability.
double uqsd_bound(std::span<const double> priors, const DetectorGram& det);

/// 1 - (C + D_Q). Nonnegative for every physical input.
double duality_gap(double coherence, double distinguishability) noexcept;

}  // namespace quoherence
