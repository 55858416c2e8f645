#include "quoherence/commands.hpp"

#include "quoherence/coherence.hpp"
#include "quoherence/error.hpp"

#include <charconv>
#include <exception>
#include <ostream>

namespace quoherence {

using nlohmann::json;

std::string format_double(double value) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, end) : std::string{"nan"};
}

void cmd_pattern(const Scenario& s, std::ostream& out, Exec exec) {
    const ScreenGrid grid = s.grid();
    const auto exact = evaluate_pattern(PatternKind::exact, s.geometry, s.state, s.detector, grid, exec);
    const bool mixed = std::holds_alternative<QuantonMixedState>(s.state);
    const auto far = evaluate_pattern(mixed ? PatternKind::mixed : PatternKind::farfield, s.geometry, s.state,
                                      s.detector, grid, exec);
    const auto inc = evaluate_pattern(PatternKind::incoherent, s.geometry, s.state, s.detector, grid, exec);

    out << "# scenario_hash: " << scenario_hash(s) << '\n';
    out << "x_m,intensity_exact,intensity_farfield,intensity_incoherent\n";
    for (int i = 0; i < grid.num_points; ++i) {
        out << format_double(grid.x(i)) << ',' << format_double(exact.values[i]) << ','
            << format_double(far.values[i]) << ',' << format_double(inc.values[i]) << '\n';
    }
}

namespace {

double input_coherence_theory(const QuantonState& state) {
    const CMatrix rho = detector_mode_density(state, PatternKind::parallel);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < rho.rows(); ++j) {
        for (Eigen::Index k = 0; k < rho.cols(); ++k) {
            if (j != k) sum += std::abs(rho(j, k));
        }
    }
    return sum / static_cast<double>(rho.rows() - 1);
}

json estimate_json(const CoherenceEstimate& e) {
    return {{"value", e.c_value},
            {"std_error", e.std_error},
            {"method", std::string{to_string(e.method)}},
            {"protocol", std::string{to_string(e.protocol)}},
            {"n", e.n_used},
            {"x", e.x_used}};
}

}  // namespace

int cmd_measure(const Scenario& s, std::ostream& out) {
    const MeasureOptions options = s.measure_options();
    const DualityReport report = duality_report(s.state, s.detector, s.geometry, options);
    const CoherenceEstimate input = measure_input_coherence(s.state, s.geometry, options);

    json doc;
    doc["scenario_hash"] = scenario_hash(s);
    doc["C_theory"] = report.c_theory;
    doc["C_expt"] = estimate_json(report.c_measured);
    doc["C_input_theory"] = input_coherence_theory(s.state);
    doc["C_input"] = estimate_json(input);
    doc["C_unnormalized"] = unnormalized_coherence(report.c_measured);
    doc["D_Q"] = report.d_q;
    doc["duality_gap"] = report.gap;
    doc["duality_satisfied"] = report.satisfied;
    doc["parameters"] = serialize_scenario(s);
    out << doc.dump(2) << '\n';
    return report.satisfied ? 0 : 1;
}

void cmd_sweep(const Scenario& s, const SweepSpec& sweep, std::ostream& out) {
    sweep.validate();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(sweep.steps));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(sweep.steps));

#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < sweep.steps; ++i) {
        try {
            const double value = sweep.value(i);
            const Scenario point = with_parameter(s, sweep.parameter, value);
            const DualityReport report =
                duality_report(point.state, point.detector, point.geometry, point.measure_options(Exec::serial));
            std::vector<double> row{value};
            for (const auto& q : sweep.quantities) {
                if (q == "C_theory") {
                    row.push_back(report.c_theory);
                } else if (q == "C_expt") {
                    row.push_back(report.c_measured.c_value);
                } else if (q == "D_Q") {
                    row.push_back(report.d_q);
                } else if (q == "gap") {
                    row.push_back(report.gap);
                } else if (q == "V") {
                    const auto pattern = evaluate_pattern(PatternKind::farfield, point.geometry, point.state,
                                                          point.detector, point.grid(), Exec::serial);
                    const double w = point.geometry.fringe_width();
                    const double x = report.c_measured.x_used;
                    row.push_back(visibility(pattern, {x - 0.5 * w, x + 0.5 * w}));
                }
            }
            rows[i] = std::move(row);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    out << "# scenario_hash: " << scenario_hash(s) << '\n';
    out << sweep.parameter;
    for (const auto& q : sweep.quantities) out << ',' << q;
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

int cmd_validate(const json& doc, std::ostream& out) {
    int failures = 0;
    for (const auto& d : diagnose_scenario(doc)) {
        switch (d.level) {
            case Diagnostic::Level::pass: out << "PASS "; break;
            case Diagnostic::Level::warn: out << "WARN "; break;
            case Diagnostic::Level::fail: out << "FAIL "; ++failures; break;
        }
        out << d.check << ": " << d.message << '\n';
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace quoherence
