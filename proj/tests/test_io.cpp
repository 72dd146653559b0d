#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "darboux/errors.hpp"
#include "darboux/io.hpp"

using namespace darboux;

namespace {

std::string config_error_field(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Config, Defaults) {
    const RunConfig c = parse_config_text(R"({"preset": "equator"})");
    EXPECT_EQ(c.samples, 256);
    EXPECT_EQ(c.tol, 1e-8);
    EXPECT_EQ(c.kinds.size(), 4u);
    EXPECT_EQ(c.format, "csv");
    EXPECT_FALSE(c.flip_normal);
}

TEST(Config, FullDocument) {
    const RunConfig c = parse_config_text(R"({
        "surface": {"name": "cylinder", "params": {"radius": 2}},
        "curve": {"u": "t", "v": "t/2", "t": [0, 3]},
        "kinds": ["Tn", "Tgn"], "samples": 32, "tol": 1e-6, "flip_normal": true, "phi_star": 0.5,
        "output": {"format": "json", "path": "x.json"}})");
    ASSERT_TRUE(c.surface);
    EXPECT_EQ(c.surface->params.at("radius"), 2.0);
    EXPECT_EQ(c.kinds, (std::vector<SmarandacheKind>{SmarandacheKind::Tn, SmarandacheKind::Tgn}));
    EXPECT_EQ(*c.phi_star, 0.5);
    EXPECT_EQ(c.out_path, "x.json");
    const SurfaceCurve curve = build_curve(c);
    EXPECT_NEAR(norm(curve.surface().position(0.0, 0.0)), 2.0, 1e-15);
    EXPECT_TRUE(curve.surface().flipped());
}

TEST(Config, CustomSurface) {
    const RunConfig c = parse_config_text(R"({
        "surface": {"x": "u", "y": "v", "z": "u*u - v*v", "u": [-2, 2], "v": [null, null]},
        "curve": {"u": "t", "v": "0.5", "t": [-1, 1]}})");
    const SurfaceCurve curve = build_curve(c);
    EXPECT_EQ(curve.surface().name(), "custom");
    EXPECT_GT(curve.total_length(), 2.0);
}

TEST(Config, ErrorsNameTheField) {
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "samples": 8})"), "samples");
    EXPECT_EQ(config_error_field(R"({"surface": "sphere", "curve": {"u": "t +", "v": "0", "t": [0, 1]}})"),
              "curve.u");
    EXPECT_EQ(config_error_field(R"({"surface": "blob", "curve": {"u": "t", "v": "0", "t": [0, 1]}})"), "surface");
    EXPECT_EQ(config_error_field(R"({"surface": {"x": "u", "y": "w", "z": "0"}, "curve": {"u": "t", "v": "0", "t": [0, 1]}})"),
              "surface.y");
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "tol": 0})"), "tol");
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "kinds": ["Tg", "XY"]})"), "kinds[1]");
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "output": {"format": "xml"}})"), "output.format");
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "colour": 1})"), "colour");
    EXPECT_EQ(config_error_field(R"({"preset": "nowhere"})"), "preset");
    EXPECT_EQ(config_error_field(R"({"surface": "sphere"})"), "curve");
    EXPECT_EQ(config_error_field(R"({"preset": "equator", "samples": "many"})"), "samples");
    EXPECT_EQ(config_error_field("{\"preset\": \n"), "<document>");
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Flags, CurveAndKinds) {
    const CurveSpec c = parse_curve_flag("t;pi/4;0;2*pi");
    EXPECT_EQ(c.u, "t");
    EXPECT_EQ(c.v, "pi/4");
    EXPECT_NEAR(c.t_hi, 2 * std::numbers::pi, 1e-15);
    EXPECT_THROW(parse_curve_flag("t;0;1"), ConfigError);
    EXPECT_THROW(parse_curve_flag("t;0;a;1"), ConfigError);
    EXPECT_EQ(parse_kinds_flag("Tg,gn").size(), 2u);
    EXPECT_THROW(parse_kinds_flag("Tg,Q"), ConfigError);
}

TEST(Table, ColumnsAndRows) {
    EXPECT_EQ(table_columns({}).size(), kBaseColumns);
    EXPECT_EQ(table_columns({SmarandacheKind::Tg, SmarandacheKind::Tn}).size(), kBaseColumns + 2 * kColumnsPerKind);
    const EvalTable t = evaluate_table(make_preset("equator"), {SmarandacheKind::Tg}, 64);
    EXPECT_EQ(t.rows.size(), 64u);
    const std::string csv = to_csv(t);
    EXPECT_EQ(count_lines(csv), 65u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    const std::string header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1, kBaseColumns + kColumnsPerKind);
    EXPECT_EQ(header.substr(0, 9), "s,s_star,");
    // s_star of the Tg curve is s / sqrt 2.
    const auto& last = t.rows.back();
    EXPECT_NEAR(*last[1], *last[0] / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(*last[kBaseColumns + 7], std::sqrt(2.0), 1e-9);
}

TEST(Table, EmptyCellsForUndefinedValues) {
    const EvalTable t = evaluate_table(make_preset("ruling"), {SmarandacheKind::Tn}, 16);
    for (const auto& row : t.rows) {
        EXPECT_FALSE(row[18]);  // tau
        EXPECT_FALSE(row[19]);  // phi
        EXPECT_TRUE(row[kBaseColumns]);
        EXPECT_FALSE(row[kBaseColumns + 7]);
    }
    const std::string csv = to_csv(t);
    EXPECT_NE(csv.find(",,"), std::string::npos);
}

TEST(Table, Deterministic) {
    const auto a = to_csv(evaluate_table(make_preset("helix"), {SmarandacheKind::Tgn}, 40));
    const auto b = to_csv(evaluate_table(make_preset("helix"), {SmarandacheKind::Tgn}, 40));
    EXPECT_EQ(a, b);
}

TEST(Table, JsonRoundTrip) {
    const EvalTable t = evaluate_table(make_preset("latitude"), {SmarandacheKind::Tg, SmarandacheKind::gn}, 20);
    const EvalTable back = table_from_json(nlohmann::json::parse(dump(to_json(t))));
    ASSERT_EQ(back.rows.size(), t.rows.size());
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.kinds, t.kinds);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.columns.size(); ++j) EXPECT_EQ(back.rows[i][j], t.rows[i][j]) << t.columns[j];
    EXPECT_EQ(to_csv(back), to_csv(t));
}

TEST(Numbers, ShortestRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 1.0}) EXPECT_EQ(std::stod(format_number(x)), x);
    EXPECT_EQ(format_number(0.5), "0.5");
}

TEST(Verify, Report) {
    RunConfig cfg = parse_config_text(R"({"preset": "equator", "kinds": ["Tg"], "samples": 32})");
    const VerifyRun run = run_verify(build_curve(cfg), cfg);
    const nlohmann::json j = to_json(run);
    ASSERT_EQ(j["reports"].size(), 1u);
    bool found = false;
    for (const auto& f : j["reports"][0]["formulas"]) {
        if (f["id"] == "rate-Tg") {
            EXPECT_EQ(f["verdict"], "CONFIRMED");
            EXPECT_EQ(f["samples"]["rel"].size(), 32u);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(j["reports"][0]["formulas"].size(), formula_ids(SmarandacheKind::Tg).size());
    EXPECT_EQ(dump(j), dump(to_json(run_verify(build_curve(cfg), cfg))));

    cfg.kinds = {SmarandacheKind::Tg, SmarandacheKind::Tn, SmarandacheKind::gn, SmarandacheKind::Tgn};
    EXPECT_EQ(to_json(run_verify(build_curve(cfg), cfg))["reports"].size(), 4u);
}
