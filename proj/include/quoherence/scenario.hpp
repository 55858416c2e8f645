#pragma once

#include "quoherence/geometry.hpp"
#include "quoherence/protocols.hpp"
#include "quoherence/states.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quoherence {

/// How the scenario document described the detector. Resolution:
/// orthogonal -> identity, identical -> all ones, uniform_overlap g -> ones on
/// the diagonal and g elsewhere, gram -> the matrix as given.
struct DetectorSpec {
    enum class Kind { orthogonal, identical, uniform_overlap, gram };
    Kind kind = Kind::identical;
    double overlap = 0.0;
    CMatrix gram;

    DetectorGram resolve(int n) const;

    friend bool operator==(const DetectorSpec& a, const DetectorSpec& b) {
        return a.kind == b.kind && a.overlap == b.overlap && exactly_equal(a.gram, b.gram);
    }
};

struct SweepSpec {
    std::string parameter;  // dotted path, e.g. detector.uniform_overlap
    double start = 0.0;
    double stop = 1.0;
    int steps = 11;
    std::vector<std::string> quantities{"C_theory", "C_expt", "D_Q", "V", "gap"};

    void validate() const;
    double value(int i) const noexcept { return start + (stop - start) * i / (steps - 1); }

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Scenario {
    SlitGeometry geometry;
    QuantonState state;
    DetectorSpec detector_spec;
    DetectorGram detector;
    std::optional<ScreenGrid> grid_override;
    std::optional<CountingConfig> counting;
    int m_index = 1;
    Method method = Method::analytic;
    double bin_width = 0.0;
    std::optional<SweepSpec> sweep;

    ScreenGrid grid() const { return grid_override.value_or(ScreenGrid::default_for(geometry)); }
    MeasureOptions measure_options(Exec exec = Exec::parallel) const;

    friend bool operator==(const Scenario& a, const Scenario& b);
};

/// Validates the document against the scenario schema and every component
/// invariant. Throws Error{schema_error | validation_error} with the field path.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);

/// Canonical document; parse_scenario(serialize_scenario(s)) == s.
nlohmann::json serialize_scenario(const Scenario& scenario);

/// FNV-1a 64 of the canonical serialization, 16 lowercase hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Equal-amplitude state, identical detectors, default geometry with n slits.
Scenario default_scenario(int n = 3);

/// Copy of `scenario` with the numeric field at the dotted path replaced.
Scenario with_parameter(const Scenario& scenario, const std::string& path, double value);

struct Diagnostic {
    enum class Level { pass, warn, fail };
    std::string check;
    Level level = Level::pass;
    std::string message;
};

/// Checks every component independently; never throws.
std::vector<Diagnostic> diagnose_scenario(const nlohmann::json& doc);

}  // namespace quoherence
