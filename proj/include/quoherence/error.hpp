#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quoherence {

enum class ErrorCode {
    not_hermitian,
    diagonal_not_unit,
    not_psd,
    dimension_mismatch,
    priors_not_normalized,
    invalid_state,
    invalid_geometry,
    invalid_config,
    empty_window,
    zero_intensity,
    zero_mass,
    empty_bin,
    invalid_maximum_index,
    schema_error,
    validation_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
/// Scenario errors also carry the dotted field path that triggered them.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::string path = {})
        : std::runtime_error{what}, code_{code}, path_{std::move(path)} {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }

private:
    ErrorCode code_;
    std::string path_;
};

}  // namespace quoherence
