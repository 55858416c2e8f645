#include "quoherence/error.hpp"

namespace quoherence {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::not_hermitian: return "NotHermitian";
        case ErrorCode::diagonal_not_unit: return "DiagonalNotUnit";
        case ErrorCode::not_psd: return "NotPSD";
        case ErrorCode::dimension_mismatch: return "DimensionMismatch";
        case ErrorCode::priors_not_normalized: return "PriorsNotNormalized";
        case ErrorCode::invalid_state: return "InvalidState";
        case ErrorCode::invalid_geometry: return "InvalidGeometry";
        case ErrorCode::invalid_config: return "InvalidConfig";
        case ErrorCode::empty_window: return "EmptyWindow";
        case ErrorCode::zero_intensity: return "ZeroIntensity";
        case ErrorCode::zero_mass: return "ZeroMass";
        case ErrorCode::empty_bin: return "EmptyBin";
        case ErrorCode::invalid_maximum_index: return "InvalidMaximumIndex";
        case ErrorCode::schema_error: return "SchemaError";
        case ErrorCode::validation_error: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace quoherence
