#include "darboux/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/numeric.hpp"

namespace darboux {

using nlohmann::json;

namespace {

const std::set<std::string> kCurveVars{"t"};
const std::set<std::string> kSurfaceVars{"u", "v"};

double number_at(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    return j.get<double>();
}

std::string string_at(const json& j, const std::string& field) {
    if (!j.is_string()) throw ConfigError(field, "expected a string");
    return j.get<std::string>();
}

void check_keys(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(prefix + it.key(), "unknown key");
    }
}

// [lo, hi]; null ends are unbounded.
Interval interval_at(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(field, "expected [lo, hi]");
    Interval r;
    if (!j[0].is_null()) r.lo = number_at(j[0], field + "[0]");
    if (!j[1].is_null()) r.hi = number_at(j[1], field + "[1]");
    if (!(r.lo < r.hi)) throw ConfigError(field, "needs lo < hi");
    return r;
}

SurfaceSpec surface_at(const json& j) {
    SurfaceSpec s;
    if (j.is_string()) {
        s.name = j.get<std::string>();
        return s;
    }
    if (!j.is_object()) throw ConfigError("surface", "expected a builtin name or an object");
    check_keys(j, "surface.", {"name", "params", "x", "y", "z", "u", "v"});
    if (j.contains("x") || j.contains("y") || j.contains("z")) {
        s.name = j.contains("name") ? string_at(j["name"], "surface.name") : "custom";
        for (const char* c : {"x", "y", "z"})
            if (!j.contains(c)) throw ConfigError(std::string("surface.") + c, "missing coordinate expression");
        s.x = string_at(j["x"], "surface.x");
        s.y = string_at(j["y"], "surface.y");
        s.z = string_at(j["z"], "surface.z");
        if (j.contains("u")) s.u = interval_at(j["u"], "surface.u");
        if (j.contains("v")) s.v = interval_at(j["v"], "surface.v");
        return s;
    }
    if (!j.contains("name")) throw ConfigError("surface.name", "missing");
    s.name = string_at(j["name"], "surface.name");
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("surface.params", "expected an object");
        for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
            s.params[it.key()] = number_at(it.value(), "surface.params." + it.key());
    }
    return s;
}

CurveSpec curve_at(const json& j) {
    if (!j.is_object()) throw ConfigError("curve", "expected an object");
    check_keys(j, "curve.", {"u", "v", "t"});
    CurveSpec c;
    for (const char* k : {"u", "v", "t"})
        if (!j.contains(k)) throw ConfigError(std::string("curve.") + k, "missing");
    c.u = string_at(j["u"], "curve.u");
    c.v = string_at(j["v"], "curve.v");
    const json& t = j["t"];
    if (!t.is_array() || t.size() != 2) throw ConfigError("curve.t", "expected [t_lo, t_hi]");
    c.t_lo = number_at(t[0], "curve.t[0]");
    c.t_hi = number_at(t[1], "curve.t[1]");
    return c;
}

void check_expr(const std::string& text, const std::set<std::string>& vars, const std::string& field) {
    try {
        (void)parse(text, vars);
    } catch (const ParseError& e) {
        throw ConfigError(field, e.what());
    }
}

std::string verdict_key(Verdict v) { return to_string(v); }

}  // namespace

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
    check_keys(doc, "", {"preset", "surface", "curve", "kinds", "samples", "tol", "flip_normal", "phi_star", "output"});
    RunConfig cfg;
    if (doc.contains("preset")) cfg.preset = string_at(doc["preset"], "preset");
    if (doc.contains("surface")) cfg.surface = surface_at(doc["surface"]);
    if (doc.contains("curve")) cfg.curve = curve_at(doc["curve"]);
    if (doc.contains("kinds")) {
        const json& k = doc["kinds"];
        if (!k.is_array()) throw ConfigError("kinds", "expected an array");
        cfg.kinds.clear();
        for (std::size_t i = 0; i < k.size(); ++i) {
            const std::string field = "kinds[" + std::to_string(i) + "]";
            try {
                cfg.kinds.push_back(parse_kind(string_at(k[i], field)));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(field, e.what());
            }
        }
    }
    if (doc.contains("samples")) {
        if (!doc["samples"].is_number_integer()) throw ConfigError("samples", "expected an integer");
        cfg.samples = doc["samples"].get<int>();
    }
    if (doc.contains("tol")) cfg.tol = number_at(doc["tol"], "tol");
    if (doc.contains("flip_normal")) {
        if (!doc["flip_normal"].is_boolean()) throw ConfigError("flip_normal", "expected true or false");
        cfg.flip_normal = doc["flip_normal"].get<bool>();
    }
    if (doc.contains("phi_star") && !doc["phi_star"].is_null()) cfg.phi_star = number_at(doc["phi_star"], "phi_star");
    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (!o.is_object()) throw ConfigError("output", "expected an object");
        check_keys(o, "output.", {"format", "path"});
        if (o.contains("format")) cfg.format = string_at(o["format"], "output.format");
        if (o.contains("path")) cfg.out_path = string_at(o["path"], "output.path");
    }
    validate(cfg);
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<document>", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate(const RunConfig& cfg) {
    if (cfg.samples < kMinSamples)
        throw ConfigError("samples", "must be at least " + std::to_string(kMinSamples) + ", got " +
                                         std::to_string(cfg.samples));
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw ConfigError("tol", "must be positive");
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("output.format", "must be csv or json");
    if (cfg.phi_star && !std::isfinite(*cfg.phi_star)) throw ConfigError("phi_star", "must be finite");

    if (cfg.preset) {
        if (cfg.surface || cfg.curve) throw ConfigError("preset", "cannot be combined with surface or curve");
        bool known = false;
        for (const auto& p : preset_catalog()) known = known || p.name == *cfg.preset;
        if (!known) throw ConfigError("preset", "unknown preset '" + *cfg.preset + "'");
        return;
    }
    if (!cfg.surface) throw ConfigError("surface", "missing (or give a preset)");
    if (!cfg.curve) throw ConfigError("curve", "missing (or give a preset)");

    const SurfaceSpec& s = *cfg.surface;
    if (s.x.empty()) {
        const auto names = builtin_surface_names();
        if (std::find(names.begin(), names.end(), s.name) == names.end())
            throw ConfigError("surface", "unknown builtin surface '" + s.name + "'");
    } else {
        check_expr(s.x, kSurfaceVars, "surface.x");
        check_expr(s.y, kSurfaceVars, "surface.y");
        check_expr(s.z, kSurfaceVars, "surface.z");
    }
    check_expr(cfg.curve->u, kCurveVars, "curve.u");
    check_expr(cfg.curve->v, kCurveVars, "curve.v");
    if (!(cfg.curve->t_lo < cfg.curve->t_hi)) throw ConfigError("curve.t", "needs t_lo < t_hi");
}

CurveSpec parse_curve_flag(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw ConfigError("curve", "expected \"u(t);v(t);t_lo;t_hi\"");
    CurveSpec c;
    c.u = parts[0];
    c.v = parts[1];
    // The bounds may be expressions such as 2*pi.
    for (int i = 0; i < 2; ++i) {
        const std::string field = i == 0 ? "curve.t_lo" : "curve.t_hi";
        try {
            (i == 0 ? c.t_lo : c.t_hi) = evaluate(parse(parts[2 + i], {}), {});
        } catch (const Error& e) {
            throw ConfigError(field, e.what());
        }
    }
    return c;
}

std::vector<SmarandacheKind> parse_kinds_flag(const std::string& text) {
    std::vector<SmarandacheKind> kinds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            kinds.push_back(parse_kind(item));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("kinds", e.what());
        }
    }
    return kinds;
}

Surface build_surface(const SurfaceSpec& spec) {
    if (spec.x.empty()) {
        try {
            return builtin_surface(spec.name, spec.params);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("surface", e.what());
        }
    }
    try {
        return Surface::from_strings(spec.name, spec.x, spec.y, spec.z, spec.u, spec.v);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("surface", e.what());
    }
}

SurfaceCurve build_curve(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.preset) return make_preset(*cfg.preset, cfg.flip_normal);
    const Surface surface = build_surface(*cfg.surface).with_flipped_normal(cfg.flip_normal);
    return SurfaceCurve::from_strings(surface, cfg.curve->u, cfg.curve->v, cfg.curve->t_lo, cfg.curve->t_hi,
                                      surface.name() + ":" + cfg.curve->u + ";" + cfg.curve->v);
}

std::vector<std::string> table_columns(const std::vector<SmarandacheKind>& kinds) {
    std::vector<std::string> c = {"s",   "s_star", "x",   "y",   "z",   "T_x",   "T_y",   "T_z", "g_x", "g_y",
                                  "g_z", "n_x",    "n_y", "n_z", "k_g", "k_n", "tau_g", "kappa", "tau", "phi"};
    for (SmarandacheKind k : kinds) {
        const std::string p = std::string(to_string(k)) + "_";
        for (const char* q : {"beta_x", "beta_y", "beta_z", "Tstar_x", "Tstar_y", "Tstar_z", "rate", "kappa_star",
                              "tau_star", "k_g_star", "k_n_star", "tau_g_star", "phi_star"})
            c.push_back(p + q);
    }
    return c;
}

EvalTable evaluate_table(const SurfaceCurve& curve, const std::vector<SmarandacheKind>& kinds, int samples) {
    EvalTable t;
    t.curve = curve.name();
    t.kinds = kinds;
    t.columns = table_columns(kinds);
    const std::vector<double> grid = curve.uniform_grid(samples);
    const std::size_t width = t.columns.size();

    std::vector<SmarandacheCurve> betas;
    for (SmarandacheKind k : kinds) betas.emplace_back(k, curve);

    std::optional<double> prev_phi;
    std::vector<std::optional<double>> prev_phi_star(kinds.size());
    double s_star = 0.0;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::optional<double>> row(width);
        const double s = grid[i];
        row[0] = s;
        if (!betas.empty() && i > 0) {
            const SmarandacheCurve& b = betas.front();
            s_star += integrate([&](double x) { return b.speed(x); }, grid[i - 1], s, 1e-11);
        }
        LocalExpansion e;
        try {
            e = curve.expand(s);
        } catch (const Error& err) {
            t.errors.push_back("row " + std::to_string(i) + ": " + err.what());
            t.rows.push_back(std::move(row));
            continue;
        }
        if (!betas.empty()) row[1] = s_star;

        const FrameSample f = sample(e);
        const double base[] = {f.position.x, f.position.y, f.position.z, f.T.x, f.T.y, f.T.z, f.g.x, f.g.y, f.g.z,
                               f.n.x,        f.n.y,        f.n.z,        f.k_g, f.k_n, f.tau_g, f.kappa};
        for (std::size_t j = 0; j < std::size(base); ++j) row[2 + j] = base[j];
        if (f.tau) row[18] = *f.tau;
        if (f.phi) {
            const double phi = prev_phi ? nearest_branch(*f.phi, *prev_phi) : *f.phi;
            row[19] = phi;
            prev_phi = phi;
        }

        for (std::size_t k = 0; k < betas.size(); ++k) {
            const std::size_t c0 = kBaseColumns + k * kColumnsPerKind;
            const JetVec bs = betas[k].beta_series(e);
            const Vec3 b = value_of(bs);
            row[c0] = b.x;
            row[c0 + 1] = b.y;
            row[c0 + 2] = b.z;
            row[c0 + 6] = norm(derivative_of(bs, 1));
            try {
                const OracleInvariants o = oracle_sphere_darboux(betas[k], e);
                row[c0 + 3] = o.T.x;
                row[c0 + 4] = o.T.y;
                row[c0 + 5] = o.T.z;
                row[c0 + 7] = o.kappa;
                row[c0 + 8] = o.tau;
                row[c0 + 9] = o.k_g;
                row[c0 + 10] = o.k_n;
                row[c0 + 11] = o.tau_g;
                const double ps = prev_phi_star[k] ? nearest_branch(o.phi_star, *prev_phi_star[k]) : o.phi_star;
                row[c0 + 12] = ps;
                prev_phi_star[k] = ps;
            } catch (const Error&) {
                // Singular beta: the starred columns stay empty.
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_csv(const EvalTable& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (row[i] && std::isfinite(*row[i])) out += format_number(*row[i]);
        }
        out += '\n';
    }
    return out;
}

json to_json(const EvalTable& t) {
    json doc;
    doc["curve"] = t.curve;
    doc["kinds"] = json::array();
    for (SmarandacheKind k : t.kinds) doc["kinds"].push_back(std::string(to_string(k)));
    doc["columns"] = t.columns;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v && std::isfinite(*v) ? json(*v) : json(nullptr));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["errors"] = t.errors;
    return doc;
}

EvalTable table_from_json(const json& doc) {
    EvalTable t;
    try {
        t.curve = doc.at("curve").get<std::string>();
        for (const auto& k : doc.at("kinds")) t.kinds.push_back(parse_kind(k.get<std::string>()));
        t.columns = doc.at("columns").get<std::vector<std::string>>();
        for (const auto& r : doc.at("rows")) {
            std::vector<std::optional<double>> row;
            for (const auto& v : r) row.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
            if (row.size() != t.columns.size()) throw ConfigError("rows", "row width differs from the header");
            t.rows.push_back(std::move(row));
        }
        if (doc.contains("errors")) t.errors = doc.at("errors").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ConfigError("<document>", e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("kinds", e.what());
    }
    return t;
}

json to_json(const FormulaResult& f) {
    json j;
    j["id"] = f.id;
    j["verdict"] = to_string(f.verdict);
    j["tol"] = f.tol;
    j["max_abs"] = f.max_abs;
    j["max_rel"] = f.max_rel;
    j["max_rel_sign_free"] = f.max_rel_sign_free;
    j["compared"] = f.compared;
    j["failed"] = f.failed;
    j["note"] = f.note;

    auto values = [](const std::vector<double>& v) -> json {
        if (v.empty()) return nullptr;
        bool finite = true;
        for (double x : v) finite = finite && std::isfinite(x);
        if (!finite) return nullptr;
        return v.size() == 1 ? json(v[0]) : json(v);
    };
    json closed = json::array(), oracle = json::array(), abs = json::array(), rel = json::array(),
         sign = json::array(), errors = json::array();
    // Consecutive samples with the same error collapse into one range.
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const FormulaSample& s = f.samples[i];
        closed.push_back(values(s.closed));
        oracle.push_back(values(s.oracle));
        abs.push_back(s.compared ? json(s.abs_residual) : json(nullptr));
        rel.push_back(s.compared ? json(s.rel_residual) : json(nullptr));
        sign.push_back(s.compared ? json(s.sign_agrees) : json(nullptr));
        if (!s.error.empty()) {
            if (!errors.empty() && errors.back()["message"] == s.error && errors.back()["last"] == i - 1)
                errors.back()["last"] = i;
            else
                errors.push_back({{"first", i}, {"last", i}, {"message", s.error}});
        }
    }
    j["samples"] = {{"closed", closed}, {"oracle", oracle}, {"abs", abs},
                    {"rel", rel},       {"sign_agrees", sign}, {"errors", errors}};
    return j;
}

json to_json(const VerificationReport& r) {
    json j;
    j["base"] = r.base;
    j["kind"] = r.kind ? json(std::string(to_string(*r.kind))) : json(nullptr);
    j["tol"] = r.tol;
    j["phi_star_override"] = r.phi_star_override ? json(*r.phi_star_override) : json(nullptr);
    json summary = {{"CONFIRMED", 0}, {"SIGN_ONLY", 0}, {"DISCREPANT", 0}, {"UNDEFINED", 0}};
    json formulas = json::array();
    for (const auto& f : r.formulas) {
        summary[verdict_key(f.verdict)] = summary[verdict_key(f.verdict)].get<int>() + 1;
        formulas.push_back(to_json(f));
    }
    j["summary"] = summary;
    j["grid"] = r.grid;
    j["formulas"] = formulas;
    return j;
}

VerifyRun run_verify(const SurfaceCurve& curve, const RunConfig& cfg) {
    VerifyRun run;
    run.curve = curve.name();
    run.config = cfg;
    const auto grid = audit_grid(curve, cfg.samples);
    std::vector<LocalExpansion> local;
    local.reserve(grid.size());
    for (double s : grid) local.push_back(curve.expand(s));
    AuditOptions opts;
    opts.tol = cfg.tol;
    opts.phi_star = cfg.phi_star;
    run.base = audit_base(curve, local, opts);
    for (SmarandacheKind k : cfg.kinds) run.reports.push_back(audit(k, curve, local, opts));
    return run;
}

json to_json(const VerifyRun& run) {
    json j;
    j["curve"] = run.curve;
    j["samples"] = run.config.samples;
    j["tol"] = run.config.tol;
    j["flip_normal"] = run.config.flip_normal;
    j["phi_star"] = run.config.phi_star ? json(*run.config.phi_star) : json(nullptr);
    j["kinds"] = json::array();
    for (SmarandacheKind k : run.config.kinds) j["kinds"].push_back(std::string(to_string(k)));
    j["base_relations"] = to_json(run.base);
    j["reports"] = json::array();
    for (const auto& r : run.reports) j["reports"].push_back(to_json(r));
    return j;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace darboux
