#include "quoherence/scenario.hpp"

#include "quoherence/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quoherence {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
    throw Error{ErrorCode::schema_error, "SchemaError at " + path + ": " + message, path};
}

[[noreturn]] void validation_fail(const std::string& path, std::string_view invariant, const std::string& message) {
    throw Error{ErrorCode::validation_error,
                "ValidationError at " + path + " (" + std::string{invariant} + "): " + message, path};
}

/// Runs f, turning component errors into ValidationError at `path`.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::schema_error || e.code() == ErrorCode::validation_error) throw;
        validation_fail(path, to_string(e.code()), e.what());
    }
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
    if (!obj.is_object()) schema_fail(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) schema_fail(join(path, item.key()), "unknown field");
    }
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) schema_fail(path, "expected a number");
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_fail(path, "expected an integer");
    return j.get<long long>();
}

std::uint64_t get_unsigned(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
    schema_fail(path, "expected a nonnegative integer");
}

cplx get_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    schema_fail(path, "expected a complex number [re, im]");
}

std::vector<double> get_vector(const json& j, const std::string& path) {
    if (!j.is_array()) schema_fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

CMatrix get_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) schema_fail(path, "expected a nonempty array of rows");
    const auto rows = j.size();
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != rows) schema_fail(row_path, "expected a square matrix row");
        for (std::size_t c = 0; c < rows; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                get_complex(j[r][c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

// -- components --------------------------------------------------------------

std::optional<int> state_dimension(const json& doc) {
    if (!doc.contains("state") || !doc["state"].is_object()) return std::nullopt;
    const json& s = doc["state"];
    if (s.contains("pure") && s["pure"].is_object() && s["pure"].contains("moduli") && s["pure"]["moduli"].is_array()) {
        return static_cast<int>(s["pure"]["moduli"].size());
    }
    if (s.contains("mixed") && s["mixed"].is_object() && s["mixed"].contains("q") && s["mixed"]["q"].is_array()) {
        return static_cast<int>(s["mixed"]["q"].size());
    }
    return std::nullopt;
}

SlitGeometry parse_geometry(const json& doc) {
    SlitGeometry geom;
    std::optional<long long> n;
    if (doc.contains("n")) n = get_integer(doc["n"], "n");
    if (doc.contains("geometry")) {
        const json& g = doc["geometry"];
        check_keys(g, {"n", "ell", "eps", "lambda", "dist"}, "geometry");
        if (g.contains("n")) {
            const long long gn = get_integer(g["n"], "geometry.n");
            if (n && *n != gn) validation_fail("geometry.n", "Consistency", "conflicts with top-level n");
            n = gn;
        }
        if (g.contains("ell")) geom.ell = get_number(g["ell"], "geometry.ell");
        if (g.contains("eps")) geom.eps = get_number(g["eps"], "geometry.eps");
        if (g.contains("lambda")) geom.lambda = get_number(g["lambda"], "geometry.lambda");
        if (g.contains("dist")) geom.dist = get_number(g["dist"], "geometry.dist");
    }
    if (!n) {
        if (const auto dim = state_dimension(doc)) n = *dim;
    }
    geom.n = static_cast<int>(n.value_or(3));
    at_path("geometry", [&] { geom.validate(); });
    return geom;
}

QuantonState parse_state(const json& doc, int n) {
    if (!doc.contains("state")) return at_path("state", [&] { return QuantonState{QuantonPureState::equal(n)}; });
    const json& s = doc["state"];
    check_keys(s, {"pure", "mixed"}, "state");
    if (s.size() != 1) schema_fail("state", "expected exactly one of pure or mixed");
    if (s.contains("pure")) {
        const json& p = s["pure"];
        check_keys(p, {"moduli", "phases"}, "state.pure");
        if (!p.contains("moduli")) schema_fail("state.pure.moduli", "missing field");
        auto moduli = get_vector(p["moduli"], "state.pure.moduli");
        std::vector<double> phases;
        if (p.contains("phases")) phases = get_vector(p["phases"], "state.pure.phases");
        if (static_cast<int>(moduli.size()) != n) {
            validation_fail("state.pure.moduli", "DimensionMismatch", "expected " + std::to_string(n) + " moduli");
        }
        return at_path("state.pure", [&] { return QuantonState{QuantonPureState{moduli, phases}}; });
    }
    const json& m = s["mixed"];
    check_keys(m, {"q"}, "state.mixed");
    if (!m.contains("q")) schema_fail("state.mixed.q", "missing field");
    CMatrix q = get_matrix(m["q"], "state.mixed.q");
    if (q.rows() != n) validation_fail("state.mixed.q", "DimensionMismatch", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    return at_path("state.mixed.q", [&] { return QuantonState{QuantonMixedState{q}}; });
}

DetectorSpec parse_detector_spec(const json& doc) {
    DetectorSpec spec;
    if (!doc.contains("detector")) return spec;
    const json& d = doc["detector"];
    if (d.is_string()) {
        const auto name = d.get<std::string>();
        if (name == "orthogonal") {
            spec.kind = DetectorSpec::Kind::orthogonal;
        } else if (name == "identical") {
            spec.kind = DetectorSpec::Kind::identical;
        } else {
            schema_fail("detector", "expected orthogonal, identical or an object");
        }
        return spec;
    }
    check_keys(d, {"uniform_overlap", "gram"}, "detector");
    if (d.size() != 1) schema_fail("detector", "expected exactly one of uniform_overlap or gram");
    if (d.contains("uniform_overlap")) {
        spec.kind = DetectorSpec::Kind::uniform_overlap;
        spec.overlap = get_number(d["uniform_overlap"], "detector.uniform_overlap");
        if (!(spec.overlap >= 0.0 && spec.overlap <= 1.0)) {
            validation_fail("detector.uniform_overlap", "OverlapRange", "uniform overlap must lie in [0, 1]");
        }
        return spec;
    }
    spec.kind = DetectorSpec::Kind::gram;
    spec.gram = get_matrix(d["gram"], "detector.gram");
    return spec;
}

DetectorGram parse_detector(const json& doc, int n, DetectorSpec& spec) {
    spec = parse_detector_spec(doc);
    const std::string path = spec.kind == DetectorSpec::Kind::gram ? "detector.gram" : "detector";
    if (spec.kind == DetectorSpec::Kind::gram && spec.gram.rows() != n) {
        validation_fail(path, "DimensionMismatch", "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    }
    return at_path(path, [&] { return spec.resolve(n); });
}

std::optional<ScreenGrid> parse_grid(const json& doc) {
    if (!doc.contains("grid")) return std::nullopt;
    const json& g = doc["grid"];
    check_keys(g, {"x_min", "x_max", "num_points"}, "grid");
    for (const char* key : {"x_min", "x_max", "num_points"}) {
        if (!g.contains(key)) schema_fail(join("grid", key), "missing field");
    }
    ScreenGrid grid{get_number(g["x_min"], "grid.x_min"), get_number(g["x_max"], "grid.x_max"),
                    static_cast<int>(get_integer(g["num_points"], "grid.num_points"))};
    at_path("grid", [&] { grid.validate(); });
    return grid;
}

std::optional<CountingConfig> parse_counting(const json& doc) {
    if (!doc.contains("counting")) return std::nullopt;
    const json& c = doc["counting"];
    check_keys(c, {"num_photons", "seed", "window", "num_bins", "shards"}, "counting");
    CountingConfig cfg;
    if (c.contains("num_photons")) cfg.num_photons = get_unsigned(c["num_photons"], "counting.num_photons");
    if (c.contains("seed")) cfg.seed = get_unsigned(c["seed"], "counting.seed");
    if (c.contains("num_bins")) cfg.num_bins = static_cast<int>(get_integer(c["num_bins"], "counting.num_bins"));
    if (c.contains("shards")) cfg.shards = static_cast<int>(get_integer(c["shards"], "counting.shards"));
    if (c.contains("window")) {
        const auto w = get_vector(c["window"], "counting.window");
        if (w.size() != 2) schema_fail("counting.window", "expected [lo, hi]");
        cfg.window = Interval{w[0], w[1]};
    }
    at_path("counting", [&] { cfg.validate(); });
    return cfg;
}

void parse_protocol(const json& doc, Scenario& s) {
    if (!doc.contains("protocol")) return;
    const json& p = doc["protocol"];
    check_keys(p, {"m_index", "method", "bin_width"}, "protocol");
    if (p.contains("m_index")) {
        const long long m = get_integer(p["m_index"], "protocol.m_index");
        if (m < 0) validation_fail("protocol.m_index", "InvalidMaximumIndex", "must be >= 0");
        s.m_index = static_cast<int>(m);
    }
    if (p.contains("method")) {
        if (!p["method"].is_string()) schema_fail("protocol.method", "expected analytic or mc");
        const auto name = p["method"].get<std::string>();
        if (name == "analytic") {
            s.method = Method::analytic;
        } else if (name == "mc" || name == "monte_carlo") {
            s.method = Method::monte_carlo;
        } else {
            schema_fail("protocol.method", "expected analytic or mc");
        }
    }
    if (p.contains("bin_width")) {
        s.bin_width = get_number(p["bin_width"], "protocol.bin_width");
        if (!(s.bin_width > 0.0)) validation_fail("protocol.bin_width", "Positive", "must be > 0");
    }
}

std::optional<SweepSpec> parse_sweep(const json& doc) {
    if (!doc.contains("sweep")) return std::nullopt;
    const json& w = doc["sweep"];
    check_keys(w, {"parameter", "start", "stop", "steps", "quantities"}, "sweep");
    SweepSpec spec;
    if (!w.contains("parameter") || !w["parameter"].is_string()) schema_fail("sweep.parameter", "expected a dotted path");
    spec.parameter = w["parameter"].get<std::string>();
    if (w.contains("start")) spec.start = get_number(w["start"], "sweep.start");
    if (w.contains("stop")) spec.stop = get_number(w["stop"], "sweep.stop");
    if (w.contains("steps")) spec.steps = static_cast<int>(get_integer(w["steps"], "sweep.steps"));
    if (w.contains("quantities")) {
        const json& q = w["quantities"];
        if (!q.is_array()) schema_fail("sweep.quantities", "expected an array of names");
        spec.quantities.clear();
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!q[i].is_string()) schema_fail("sweep.quantities[" + std::to_string(i) + "]", "expected a name");
            spec.quantities.push_back(q[i].get<std::string>());
        }
    }
    at_path("sweep", [&] { spec.validate(); });
    return spec;
}

void check_root(const json& doc) {
    check_keys(doc, {"n", "geometry", "state", "detector", "grid", "counting", "protocol", "sweep"}, "");
}

}  // namespace

// ---------------------------------------------------------------------------

DetectorGram DetectorSpec::resolve(int n) const {
    switch (kind) {
        case Kind::orthogonal: return DetectorGram::identity(n);
        case Kind::identical: return DetectorGram::identical(n);
        case Kind::uniform_overlap: return DetectorGram::uniform(n, overlap);
        case Kind::gram: return validate_gram(gram);
    }
    throw Error{ErrorCode::invalid_config, "unknown detector kind"};
}

void SweepSpec::validate() const {
    if (parameter.empty()) throw Error{ErrorCode::invalid_config, "sweep parameter path is empty"};
    if (steps < 2) throw Error{ErrorCode::invalid_config, "sweep needs steps >= 2"};
    if (start == stop) throw Error{ErrorCode::invalid_config, "sweep needs start != stop"};
    static const std::vector<std::string> known{"C_theory", "C_expt", "D_Q", "V", "gap"};
    for (const auto& q : quantities) {
        if (std::find(known.begin(), known.end(), q) == known.end()) {
            throw Error{ErrorCode::invalid_config, "unknown sweep quantity " + q};
        }
    }
}

MeasureOptions Scenario::measure_options(Exec exec) const {
    MeasureOptions options;
    options.m_index = m_index;
    options.method = method;
    options.grid = grid();
    if (counting) options.counting = *counting;
    options.bin_width = bin_width;
    options.exec = exec;
    return options;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.geometry == b.geometry && a.state == b.state && a.detector_spec == b.detector_spec &&
           a.detector == b.detector && a.grid_override == b.grid_override && a.counting == b.counting &&
           a.m_index == b.m_index && a.method == b.method && a.bin_width == b.bin_width && a.sweep == b.sweep;
}

Scenario parse_scenario(const json& doc) {
    check_root(doc);
    const SlitGeometry geom = parse_geometry(doc);
    QuantonState state = parse_state(doc, geom.n);
    DetectorSpec spec;
    DetectorGram det = parse_detector(doc, geom.n, spec);
    Scenario s{geom,          std::move(state), std::move(spec),   std::move(det), parse_grid(doc),
               parse_counting(doc), 1,          Method::analytic, 0.0,            std::nullopt};
    parse_protocol(doc, s);
    s.sweep = parse_sweep(doc);
    return s;
}

Scenario parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_fail("<document>", e.what());
    }
    return parse_scenario(doc);
}

json serialize_scenario(const Scenario& s) {
    json doc;
    doc["geometry"] = {{"n", s.geometry.n},
                       {"ell", s.geometry.ell},
                       {"eps", s.geometry.eps},
                       {"lambda", s.geometry.lambda},
                       {"dist", s.geometry.dist}};
    if (const auto* pure = std::get_if<QuantonPureState>(&s.state)) {
        doc["state"] = {{"pure", {{"moduli", pure->moduli()}, {"phases", pure->phases()}}}};
    } else {
        doc["state"] = {{"mixed", {{"q", matrix_json(std::get<QuantonMixedState>(s.state).coeffs())}}}};
    }
    switch (s.detector_spec.kind) {
        case DetectorSpec::Kind::orthogonal: doc["detector"] = "orthogonal"; break;
        case DetectorSpec::Kind::identical: doc["detector"] = "identical"; break;
        case DetectorSpec::Kind::uniform_overlap: doc["detector"] = {{"uniform_overlap", s.detector_spec.overlap}}; break;
        case DetectorSpec::Kind::gram: doc["detector"] = {{"gram", matrix_json(s.detector_spec.gram)}}; break;
    }
    if (s.grid_override) {
        doc["grid"] = {{"x_min", s.grid_override->x_min},
                       {"x_max", s.grid_override->x_max},
                       {"num_points", s.grid_override->num_points}};
    }
    if (s.counting) {
        json c = {{"num_photons", s.counting->num_photons},
                  {"seed", s.counting->seed},
                  {"num_bins", s.counting->num_bins},
                  {"shards", s.counting->shards}};
        if (s.counting->window) c["window"] = {s.counting->window->lo, s.counting->window->hi};
        doc["counting"] = c;
    }
    doc["protocol"] = {{"m_index", s.m_index}, {"method", std::string{to_string(s.method)}}};
    if (s.bin_width > 0.0) doc["protocol"]["bin_width"] = s.bin_width;
    if (s.sweep) {
        doc["sweep"] = {{"parameter", s.sweep->parameter},
                        {"start", s.sweep->start},
                        {"stop", s.sweep->stop},
                        {"steps", s.sweep->steps},
                        {"quantities", s.sweep->quantities}};
    }
    return doc;
}

std::string scenario_hash(const Scenario& scenario) {
    const std::string canonical = serialize_scenario(scenario).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario default_scenario(int n) {
    return parse_scenario(json{{"n", n}});
}

Scenario with_parameter(const Scenario& scenario, const std::string& path, double value) {
    json doc = serialize_scenario(scenario);
    doc.erase("sweep");
    std::vector<std::string> tokens;
    std::stringstream ss{path};
    for (std::string tok; std::getline(ss, tok, '.');) tokens.push_back(tok);
    if (tokens.empty()) schema_fail("sweep.parameter", "empty path");
    if (tokens.front() == "detector") doc["detector"] = json::object();
    json* node = &doc;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        json& next = (*node)[tokens[i]];
        if (!next.is_object()) next = json::object();
        node = &next;
    }
    if (value == std::floor(value) && std::abs(value) < 0x1.0p53) {
        (*node)[tokens.back()] = static_cast<long long>(value);
    } else {
        (*node)[tokens.back()] = value;
    }
    return parse_scenario(doc);
}

std::vector<Diagnostic> diagnose_scenario(const json& doc) {
    std::vector<Diagnostic> out;
    const auto run = [&](const std::string& check, auto&& f) {
        try {
            f();
            out.push_back({check, Diagnostic::Level::pass, "ok"});
            return true;
        } catch (const std::exception& e) {
            out.push_back({check, Diagnostic::Level::fail, e.what()});
            return false;
        }
    };
    if (!run("schema", [&] { check_root(doc); })) return out;

    SlitGeometry geom;
    const bool geometry_ok = run("geometry", [&] { geom = parse_geometry(doc); });
    if (geometry_ok) {
        if (geom.far_field_valid()) {
            out.push_back({"far_field", Diagnostic::Level::pass, "eps^2 <= 1e-3 lambda D / pi"});
        } else {
            std::ostringstream os;
            os << "eps^2 = " << geom.eps * geom.eps << " m^2 exceeds 1e-3 lambda D / pi = " << 1e-3 * geom.spread()
               << " m^2; far-field expressions are unreliable";
            out.push_back({"far_field", Diagnostic::Level::warn, os.str()});
        }
    } else {
        geom.n = state_dimension(doc).value_or(3);
    }
    run("state.normalization", [&] { parse_state(doc, geom.n); });
    run("detector.psd", [&] {
        DetectorSpec spec;
        parse_detector(doc, geom.n, spec);
    });
    run("grid", [&] { parse_grid(doc); });
    run("counting", [&] { parse_counting(doc); });
    run("protocol", [&] {
        Scenario s = default_scenario(2);
        parse_protocol(doc, s);
    });
    run("sweep", [&] { parse_sweep(doc); });
    return out;
}

}  // namespace quoherence
