// quoherence: n-slit coherence simulator front end.
//
//   quoherence pattern  --scenario s.json --out pattern.csv
//   quoherence measure  --scenario s.json --method mc --photons 1000000 --seed 7
//   quoherence sweep    --scenario s.json --param detector.uniform_overlap --start 0 --stop 1 --steps 11
//   quoherence validate --scenario s.json

#include "quoherence/commands.hpp"
#include "quoherence/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;
using namespace quoherence;

json load_document(const std::string& path) {
    std::string source = path;
    if (source.empty()) {
        if (const char* env = std::getenv("QUOHERENCE_DEFAULT_SCENARIO"); env && *env) source = env;
    }
    if (source.empty()) return json{{"n", 3}};
    std::ifstream in{source, std::ios::binary};
    if (!in) throw Error{ErrorCode::schema_error, "cannot read scenario file " + source, "<document>"};
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return json::parse(text.str());
    } catch (const json::parse_error& e) {
        throw Error{ErrorCode::schema_error, std::string{"SchemaError at <document>: "} + e.what(), "<document>"};
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-slit interference coherence simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> photons;
    std::optional<std::string> method;
    std::optional<int> m_index;
    app.add_option("--scenario", scenario_path, "Scenario document (JSON)");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--photons", photons, "Photons per Monte Carlo arm")->check(CLI::PositiveNumber);
    app.add_option("--method", method, "analytic or mc")->check(CLI::IsMember({"analytic", "mc"}));
    app.add_option("--m-index", m_index, "Primary maximum used by the protocols")->check(CLI::NonNegativeNumber);

    auto* pattern = app.add_subcommand("pattern", "Screen intensity CSV (exact, far-field, incoherent)");
    auto* measure = app.add_subcommand("measure", "Coherence protocols and duality report");
    auto* sweep = app.add_subcommand("sweep", "Sweep one scenario parameter");
    auto* validate = app.add_subcommand("validate", "Check scenario invariants without simulating");

    std::optional<std::string> param;
    std::optional<double> start, stop;
    std::optional<int> steps;
    std::vector<std::string> quantities;
    sweep->add_option("--param", param, "Dotted parameter path, e.g. detector.uniform_overlap");
    sweep->add_option("--start", start);
    sweep->add_option("--stop", stop);
    sweep->add_option("--steps", steps);
    sweep->add_option("--quantities", quantities, "Subset of C_theory,C_expt,D_Q,V,gap")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 2;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    try {
        json doc = load_document(scenario_path);
        if (*validate) return cmd_validate(doc, out);

        Scenario s = parse_scenario(doc);
        if (seed || photons) {
            CountingConfig cfg = s.counting.value_or(CountingConfig{});
            if (seed) cfg.seed = *seed;
            if (photons) cfg.num_photons = *photons;
            cfg.validate();
            s.counting = cfg;
        }
        if (method) s.method = *method == "mc" ? Method::monte_carlo : Method::analytic;
        if (m_index) s.m_index = *m_index;

        if (*pattern) {
            cmd_pattern(s, out);
            return 0;
        }
        if (*measure) return cmd_measure(s, out);
        if (*sweep) {
            SweepSpec spec = s.sweep.value_or(SweepSpec{});
            if (param) spec.parameter = *param;
            if (start) spec.start = *start;
            if (stop) spec.stop = *stop;
            if (steps) spec.steps = *steps;
            if (!quantities.empty()) spec.quantities = quantities;
            cmd_sweep(s, spec, out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}
