#include "quoherence/states.hpp"

#include "quoherence/error.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

namespace quoherence {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

std::string entry_name(Eigen::Index i, Eigen::Index j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
}

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw Error{ErrorCode::dimension_mismatch, std::string{what} + " must be square"};
    }
    if (m.rows() < 2) {
        throw Error{ErrorCode::dimension_mismatch, std::string{what} + " needs n >= 2"};
    }
    if (!m.allFinite()) {
        throw Error{ErrorCode::invalid_state, std::string{what} + " has non-finite entries"};
    }
}

void require_hermitian(const CMatrix& m, const char* what) {
    const auto defect = hermitian_defect(m);
    if (!defect.ok) {
        std::ostringstream os;
        os << what << " is not Hermitian at entry " << entry_name(defect.row, defect.col)
           << " (deviation " << defect.deviation << ")";
        throw Error{ErrorCode::not_hermitian, os.str()};
    }
}

void require_psd(const CMatrix& m, const char* what) {
    const double lowest = hermitian_eigenvalues(m).minCoeff();
    if (lowest < -kPsdTolerance) {
        std::ostringstream os;
        os << what << " is not positive semidefinite: eigenvalue " << lowest;
        throw Error{ErrorCode::not_psd, os.str()};
    }
}

}  // namespace

QuantonPureState::QuantonPureState(std::vector<double> moduli, std::vector<double> phases)
    : moduli_{std::move(moduli)}, phases_{std::move(phases)} {
    if (moduli_.size() < 2) {
        throw Error{ErrorCode::invalid_state, "pure state needs at least two slit amplitudes"};
    }
    if (phases_.empty()) phases_.assign(moduli_.size(), 0.0);
    if (phases_.size() != moduli_.size()) {
        throw Error{ErrorCode::dimension_mismatch, "moduli and phases differ in length"};
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
        if (!std::isfinite(moduli_[j]) || moduli_[j] < 0.0 || !std::isfinite(phases_[j])) {
            throw Error{ErrorCode::invalid_state,
                        "slit amplitude " + std::to_string(j) + " must have finite modulus >= 0"};
        }
        phases_[j] = wrap_phase(phases_[j]);
        norm += moduli_[j] * moduli_[j];
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
        std::ostringstream os;
        os << "slit probabilities sum to " << norm << ", expected 1";
        throw Error{ErrorCode::invalid_state, os.str()};
    }
}

QuantonPureState QuantonPureState::from_amplitudes(std::span<const cplx> amplitudes) {
    std::vector<double> moduli, phases;
    moduli.reserve(amplitudes.size());
    phases.reserve(amplitudes.size());
    for (const cplx& c : amplitudes) {
        moduli.push_back(std::abs(c));
        phases.push_back(std::arg(c));
    }
    return QuantonPureState{std::move(moduli), std::move(phases)};
}

QuantonPureState QuantonPureState::equal(int n) {
    return QuantonPureState{std::vector<double>(static_cast<std::size_t>(std::max(n, 0)),
                                                1.0 / std::sqrt(static_cast<double>(n)))};
}

cplx QuantonPureState::amplitude(int j) const {
    return std::polar(moduli_.at(static_cast<std::size_t>(j)), phases_[static_cast<std::size_t>(j)]);
}

CVector QuantonPureState::amplitudes() const {
    CVector c(size());
    for (int j = 0; j < size(); ++j) c(j) = amplitude(j);
    return c;
}

std::vector<double> QuantonPureState::priors() const {
    std::vector<double> p(moduli_.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = moduli_[j] * moduli_[j];
    return p;
}

DetectorGram::DetectorGram(CMatrix gram) : gram_{std::move(gram)}, factor_{psd_factor(gram_)} {}

DetectorGram DetectorGram::identity(int n) {
    return validate_gram(CMatrix::Identity(n, n));
}

DetectorGram DetectorGram::identical(int n) {
    return validate_gram(CMatrix::Ones(n, n));
}

DetectorGram DetectorGram::uniform(int n, double overlap) {
    CMatrix g = CMatrix::Constant(n, n, cplx{overlap, 0.0});
    g.diagonal().setOnes();
    return validate_gram(g);
}

DetectorGram validate_gram(const CMatrix& gram) {
    require_square(gram, "detector Gram matrix");
    require_hermitian(gram, "detector Gram matrix");
    for (Eigen::Index j = 0; j < gram.rows(); ++j) {
        if (std::abs(gram(j, j) - cplx{1.0, 0.0}) > kNormTolerance) {
            std::ostringstream os;
            os << "detector Gram diagonal entry " << entry_name(j, j) << " is " << gram(j, j)
               << ", expected 1";
            throw Error{ErrorCode::diagonal_not_unit, os.str()};
        }
    }
    require_psd(gram, "detector Gram matrix");
    return DetectorGram{gram};
}

void check_density_matrix(const CMatrix& m, const char* what) {
    require_square(m, what);
    require_hermitian(m, what);
    const cplx trace = m.trace();
    if (std::abs(trace - cplx{1.0, 0.0}) > kNormTolerance) {
        std::ostringstream os;
        os << what << " has trace " << trace << ", expected 1";
        throw Error{ErrorCode::invalid_state, os.str()};
    }
    require_psd(m, what);
}

QuantonMixedState::QuantonMixedState(CMatrix coeffs) : coeffs_{std::move(coeffs)} {
    check_density_matrix(coeffs_, "mixed-state coefficient matrix");
}

QuantonMixedState QuantonMixedState::from_pure(const QuantonPureState& state) {
    const CVector c = state.amplitudes();
    return QuantonMixedState{c * c.adjoint()};
}

std::vector<double> QuantonMixedState::priors() const {
    std::vector<double> p(static_cast<std::size_t>(size()));
    for (int j = 0; j < size(); ++j) p[static_cast<std::size_t>(j)] = coeffs_(j, j).real();
    return p;
}

ReducedDensity ReducedDensity::from_matrix(const CMatrix& rho) {
    check_density_matrix(rho, "reduced density matrix");
    return ReducedDensity{rho};
}

int state_size(const QuantonState& state) {
    return std::visit([](const auto& s) { return s.size(); }, state);
}

std::vector<double> state_priors(const QuantonState& state) {
    return std::visit([](const auto& s) { return s.priors(); }, state);
}

}  // namespace quoherence
