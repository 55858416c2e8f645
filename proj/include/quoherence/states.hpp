#pragma once

#include "quoherence/linalg.hpp"

#include <span>
#include <variant>
#include <vector>

namespace quoherence {

/// Pure quanton state after the slits: c_j = |c_j| e^{i theta_j}, one per slit.
class QuantonPureState {
public:
    /// Phases default to zero. Phases are wrapped into [0, 2 pi).
    explicit QuantonPureState(std::vector<double> moduli, std::vector<double> phases = {});

    static QuantonPureState from_amplitudes(std::span<const cplx> amplitudes);
    static QuantonPureState equal(int n);

    int size() const noexcept { return static_cast<int>(moduli_.size()); }
    const std::vector<double>& moduli() const noexcept { return moduli_; }
    const std::vector<double>& phases() const noexcept { return phases_; }
    cplx amplitude(int j) const;
    CVector amplitudes() const;
    std::vector<double> priors() const;

    friend bool operator==(const QuantonPureState&, const QuantonPureState&) = default;

private:
    std::vector<double> moduli_;
    std::vector<double> phases_;
};

/// Gram matrix gamma_jk = <d_j|d_k> of the which-path detector states.
/// Only obtainable through validate_gram or the named factories.
class DetectorGram {
public:
    static DetectorGram identity(int n);   // orthogonal detectors
    static DetectorGram identical(int n);  // all detectors in the same state
    static DetectorGram uniform(int n, double overlap);

    int size() const noexcept { return static_cast<int>(gram_.rows()); }
    const CMatrix& matrix() const noexcept { return gram_; }
    cplx operator()(int j, int k) const { return gram_(j, k); }
    /// gamma = factor^dagger * factor
    const CMatrix& factor() const noexcept { return factor_; }

    friend bool operator==(const DetectorGram& a, const DetectorGram& b) {
        return exactly_equal(a.gram_, b.gram_);
    }

private:
    explicit DetectorGram(CMatrix gram);
    friend DetectorGram validate_gram(const CMatrix& gram);

    CMatrix gram_;
    CMatrix factor_;
};

/// Throws Error{not_hermitian | diagonal_not_unit | not_psd | dimension_mismatch}.
DetectorGram validate_gram(const CMatrix& gram);

/// Mixed quanton-detector state sum_jk q_jk |psi_j><psi_k| (x) |d_j><d_k|.
class QuantonMixedState {
public:
    explicit QuantonMixedState(CMatrix coeffs);
    static QuantonMixedState from_pure(const QuantonPureState& state);

    int size() const noexcept { return static_cast<int>(coeffs_.rows()); }
    const CMatrix& coeffs() const noexcept { return coeffs_; }
    std::vector<double> priors() const;

    friend bool operator==(const QuantonMixedState& a, const QuantonMixedState& b) {
        return exactly_equal(a.coeffs_, b.coeffs_);
    }

private:
    CMatrix coeffs_;
};

/// Quanton density matrix in the slit basis.
class ReducedDensity {
public:
    static ReducedDensity from_matrix(const CMatrix& rho);

    int size() const noexcept { return static_cast<int>(rho_.rows()); }
    const CMatrix& matrix() const noexcept { return rho_; }
    cplx operator()(int j, int k) const { return rho_(j, k); }

private:
    explicit ReducedDensity(CMatrix rho) : rho_{std::move(rho)} {}
    CMatrix rho_;
};

using QuantonState = std::variant<QuantonPureState, QuantonMixedState>;

int state_size(const QuantonState& state);
std::vector<double> state_priors(const QuantonState& state);

/// Checks Hermitian, unit trace and PSD; `what` prefixes the error message.
void check_density_matrix(const CMatrix& m, const char* what);

}  // namespace quoherence
