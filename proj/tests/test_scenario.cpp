#include "quoherence/error.hpp"
#include "quoherence/scenario.hpp"
#include "support/random_instances.hpp"

#include <gtest/gtest.h>

using namespace quoherence;
using nlohmann::json;
using quoherence::test_support::InstanceGenerator;

namespace {

Error error_of(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const Error& e) {
        return e;
    }
    ADD_FAILURE() << "no error for " << doc.dump();
    return Error{ErrorCode::invalid_config, ""};
}

json complex_matrix(const CMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(ParseScenario, MinimalDocumentGetsDefaults) {
    const auto s = parse_scenario(json{{"n", 3}, {"detector", "identical"}});
    EXPECT_EQ(s.geometry, SlitGeometry{});
    EXPECT_EQ(std::get<QuantonPureState>(s.state), QuantonPureState::equal(3));
    EXPECT_EQ(s.detector, DetectorGram::identical(3));
    EXPECT_EQ(s.grid(), ScreenGrid::default_for(s.geometry));
    EXPECT_FALSE(s.counting);
    EXPECT_EQ(s.m_index, 1);
    EXPECT_EQ(s.method, Method::analytic);
    EXPECT_EQ(parse_scenario(json::object()).geometry.n, 3);
}

TEST(ParseScenario, OverlapOutOfRange) {
    for (double g : {1.2, -0.1}) {
        const auto e = error_of(json{{"detector", {{"uniform_overlap", g}}}});
        EXPECT_EQ(e.code(), ErrorCode::validation_error);
        EXPECT_EQ(e.path(), "detector.uniform_overlap");
        EXPECT_NE(std::string{e.what()}.find("OverlapRange"), std::string::npos);
    }
}

TEST(ParseScenario, TwoSlitModuli) {
    const auto s = parse_scenario(json{{"state", {{"pure", {{"moduli", {0.6, 0.8}}}}}}});
    EXPECT_EQ(s.geometry.n, 2);
    EXPECT_EQ(std::get<QuantonPureState>(s.state).moduli(), (std::vector<double>{0.6, 0.8}));
}

TEST(ParseScenario, DetectorShorthands) {
    const auto at = [](json det) { return parse_scenario(json{{"n", 4}, {"detector", det}}).detector; };
    EXPECT_EQ(at("orthogonal"), DetectorGram::identity(4));
    EXPECT_EQ(at("identical"), DetectorGram::identical(4));
    EXPECT_EQ(at(json{{"uniform_overlap", 0.25}}), DetectorGram::uniform(4, 0.25));
    CMatrix g = CMatrix::Identity(2, 2);
    g(0, 1) = cplx{0.3, 0.4};
    g(1, 0) = cplx{0.3, -0.4};
    const auto s = parse_scenario(json{{"n", 2}, {"detector", {{"gram", complex_matrix(g)}}}});
    EXPECT_EQ(s.detector.matrix(), g);
}

TEST(ParseScenario, SchemaErrorsCarryPaths) {
    const std::vector<std::pair<json, std::string>> cases{
        {json{{"bogus", 1}}, "bogus"},
        {json{{"geometry", {{"ell", "wide"}}}}, "geometry.ell"},
        {json{{"geometry", {{"width", 1.0}}}}, "geometry.width"},
        {json{{"state", {{"pure", {{"moduli", {0.6, "x"}}}}}}}, "state.pure.moduli[1]"},
        {json{{"state", {{"pure", {{"phases", {0.0}}}}}}}, "state.pure.moduli"},
        {json{{"state", {{"mixed", {{"q", {{1.0, 0.0}, {0.0}}}}}}}}, "state.mixed.q[1]"},
        {json{{"detector", "mirror"}}, "detector"},
        {json{{"grid", {{"x_min", 0.0}, {"x_max", 1.0}}}}, "grid.num_points"},
        {json{{"counting", {{"seed", -1}}}}, "counting.seed"},
        {json{{"protocol", {{"method", "guess"}}}}, "protocol.method"},
        {json{{"sweep", {{"start", 0.0}}}}, "sweep.parameter"},
        {json{{"sweep", {{"parameter", "n"}, {"quantities", {1}}}}}, "sweep.quantities[0]"},
    };
    for (const auto& [doc, path] : cases) {
        const auto e = error_of(doc);
        EXPECT_EQ(e.code(), ErrorCode::schema_error) << doc.dump();
        EXPECT_EQ(e.path(), path) << doc.dump();
    }
    try {
        parse_scenario_text("{\"n\": 3,");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::schema_error);
    }
}

TEST(ParseScenario, ValidationErrorsCarryPathsAndInvariants) {
    CMatrix bad = CMatrix::Ones(3, 3);
    bad(0, 1) = bad(1, 0) = 1.5;
    const std::vector<std::tuple<json, std::string, std::string>> cases{
        {json{{"n", 1}}, "geometry", "InvalidGeometry"},
        {json{{"geometry", {{"eps", -1.0}}}}, "geometry", "InvalidGeometry"},
        {json{{"n", 3}, {"geometry", {{"n", 4}}}}, "geometry.n", "Consistency"},
        {json{{"state", {{"pure", {{"moduli", {0.6, 0.7}}}}}}}, "state.pure", "InvalidState"},
        {json{{"n", 3}, {"state", {{"pure", {{"moduli", {0.6, 0.8}}}}}}}, "state.pure.moduli", "DimensionMismatch"},
        {json{{"state", {{"mixed", {{"q", {{0.5, 0.6}, {0.6, 0.5}}}}}}}}, "state.mixed.q", "NotPSD"},
        {json{{"n", 3}, {"detector", {{"gram", complex_matrix(bad)}}}}, "detector.gram", "NotPSD"},
        {json{{"grid", {{"x_min", 1.0}, {"x_max", 0.0}, {"num_points", 10}}}}, "grid", "InvalidConfig"},
        {json{{"counting", {{"num_bins", 3}}}}, "counting", "InvalidConfig"},
        {json{{"protocol", {{"m_index", -2}}}}, "protocol.m_index", "InvalidMaximumIndex"},
        {json{{"sweep", {{"parameter", "geometry.eps"}, {"steps", 1}}}}, "sweep", "InvalidConfig"},
        {json{{"sweep", {{"parameter", "geometry.eps"}, {"start", 1.0}, {"stop", 1.0}}}}, "sweep", "InvalidConfig"},
    };
    for (const auto& [doc, path, invariant] : cases) {
        const auto e = error_of(doc);
        EXPECT_EQ(e.code(), ErrorCode::validation_error) << doc.dump();
        EXPECT_EQ(e.path(), path) << doc.dump();
        EXPECT_NE(std::string{e.what()}.find(invariant), std::string::npos) << e.what();
    }
}

TEST(ScenarioProperties, RoundTrip) {
    InstanceGenerator gen{41};
    for (int i = 0; i < 300; ++i) {
        const int n = gen.size();
        json doc{{"n", n}};
        doc["geometry"] = {{"ell", gen.uniform(1e-5, 1e-4)}, {"eps", gen.uniform(1e-7, 1e-5)},
                           {"lambda", gen.uniform(3e-7, 9e-7)}, {"dist", gen.uniform(0.1, 3.0)}};
        if (i % 2) {
            const auto s = gen.pure(n);
            doc["state"] = {{"pure", {{"moduli", s.moduli()}, {"phases", s.phases()}}}};
        } else {
            doc["state"] = {{"mixed", {{"q", complex_matrix(gen.mixed(n).coeffs())}}}};
        }
        switch (i % 4) {
            case 0: doc["detector"] = "orthogonal"; break;
            case 1: doc["detector"] = {{"uniform_overlap", gen.uniform()}}; break;
            case 2: doc["detector"] = {{"gram", complex_matrix(gen.gram(n).matrix())}}; break;
            default: break;
        }
        if (i % 3 == 0) doc["grid"] = {{"x_min", -gen.uniform(0.01, 0.1)}, {"x_max", gen.uniform(0.01, 0.1)},
                                       {"num_points", gen.size(100, 5000)}};
        if (i % 5 == 0) {
            doc["counting"] = {{"num_photons", gen.size(1000, 100000)},
                               {"seed", gen.engine()()},
                               {"window", {-0.01, 0.02}},
                               {"num_bins", gen.size(10, 200)}};
        }
        if (i % 7 == 0) doc["protocol"] = {{"m_index", gen.size(0, 4)}, {"method", "mc"}, {"bin_width", 1e-4}};
        if (i % 11 == 0) doc["sweep"] = {{"parameter", "geometry.eps"}, {"start", 1e-6}, {"stop", 2e-6}, {"steps", 5}};

        const Scenario s = parse_scenario(doc);
        const json canonical = serialize_scenario(s);
        const Scenario again = parse_scenario(canonical);
        ASSERT_TRUE(again == s) << doc.dump();
        EXPECT_EQ(serialize_scenario(again), canonical);
        EXPECT_EQ(parse_scenario_text(canonical.dump(2)), s);
        EXPECT_EQ(scenario_hash(again), scenario_hash(s));
    }
}

TEST(ScenarioHash, StableAndSensitive) {
    const auto s = default_scenario(3);
    const auto h = scenario_hash(s);
    EXPECT_EQ(h.size(), 16u);
    EXPECT_EQ(h.find_first_not_of("0123456789abcdef"), std::string::npos);
    EXPECT_EQ(h, scenario_hash(default_scenario(3)));
    EXPECT_NE(h, scenario_hash(default_scenario(4)));
    EXPECT_NE(h, scenario_hash(with_parameter(s, "geometry.eps", 4e-6)));
    // Pinned: output headers from earlier runs must stay comparable.
    EXPECT_EQ(h, "0ea92c31191806d6");
}

TEST(WithParameter, ReplacesOneField) {
    const auto s = default_scenario(3);
    const auto eps = with_parameter(s, "geometry.eps", 2e-6);
    EXPECT_EQ(eps.geometry.eps, 2e-6);
    EXPECT_EQ(eps.geometry.ell, s.geometry.ell);
    EXPECT_EQ(eps.detector, s.detector);

    const auto half = with_parameter(s, "detector.uniform_overlap", 0.5);
    EXPECT_EQ(half.detector_spec.kind, DetectorSpec::Kind::uniform_overlap);
    EXPECT_EQ(half.detector, DetectorGram::uniform(3, 0.5));
    EXPECT_EQ(with_parameter(s, "detector.uniform_overlap", 1.0).detector, DetectorGram::identical(3));

    const auto m = with_parameter(s, "protocol.m_index", 2.0);
    EXPECT_EQ(m.m_index, 2);
    const auto seed = with_parameter(s, "counting.seed", 12.0);
    ASSERT_TRUE(seed.counting);
    EXPECT_EQ(seed.counting->seed, 12u);

    try {
        with_parameter(s, "detector.uniform_overlap", 1.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.path(), "detector.uniform_overlap");
    }
    try {
        with_parameter(s, "geometry.width", 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::schema_error);
    }
}

TEST(DiagnoseScenario, Levels) {
    const auto level_of = [](const std::vector<Diagnostic>& d, const std::string& check) {
        for (const auto& x : d) {
            if (x.check == check) return x.level;
        }
        ADD_FAILURE() << "missing check " << check;
        return Diagnostic::Level::fail;
    };
    const auto ok = diagnose_scenario(json{{"n", 3}});
    for (const auto& d : ok) EXPECT_EQ(d.level, Diagnostic::Level::pass) << d.check;
    EXPECT_EQ(level_of(diagnose_scenario(json{{"geometry", {{"eps", 1e-3}}}}), "far_field"), Diagnostic::Level::warn);

    CMatrix bad = CMatrix::Ones(3, 3);
    bad(0, 1) = bad(1, 0) = 1.5;
    const auto d = diagnose_scenario(json{{"n", 3}, {"detector", {{"gram", complex_matrix(bad)}}}});
    EXPECT_EQ(level_of(d, "detector.psd"), Diagnostic::Level::fail);
    EXPECT_EQ(level_of(d, "state.normalization"), Diagnostic::Level::pass);
    for (const auto& x : d) {
        if (x.check == "detector.psd") EXPECT_NE(x.message.find("NotPSD"), std::string::npos) << x.message;
    }
    const auto schema = diagnose_scenario(json{{"colour", "red"}});
    ASSERT_EQ(schema.size(), 1u);
    EXPECT_EQ(schema[0].level, Diagnostic::Level::fail);
    // A broken geometry still lets the other checks run.
    const auto geo = diagnose_scenario(json{{"geometry", {{"ell", -1.0}}}, {"state", {{"pure", {{"moduli", {0.6, 0.8}}}}}}});
    EXPECT_EQ(level_of(geo, "geometry"), Diagnostic::Level::fail);
    EXPECT_EQ(level_of(geo, "state.normalization"), Diagnostic::Level::pass);
}
