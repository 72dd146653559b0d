#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "darboux/errors.hpp"
#include "darboux/io.hpp"

using namespace darboux;

namespace {

struct Flags {
    std::string config, surface, curve, preset, kinds, format, out;
    std::optional<int> samples;
    std::optional<double> tol, phi_star;
    bool flip_normal = false;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file");
    cmd->add_option("--preset", f.preset, "Bundled geometry (see `list presets`)");
    cmd->add_option("--surface", f.surface, "Builtin surface name");
    cmd->add_option("--curve", f.curve, "\"u(t);v(t);t_lo;t_hi\"");
    cmd->add_option("--kinds", f.kinds, "Comma-separated kinds, e.g. Tg,Tn");
    cmd->add_option("--samples", f.samples, "Sample count (>= 16)");
    cmd->add_option("--tol", f.tol, "Verdict tolerance");
    cmd->add_flag("--flip-normal", f.flip_normal, "Use -n as the surface normal");
    cmd->add_option("--phi-star", f.phi_star, "Fixed phi* for the closed forms");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_option("--out", f.out, "Output path (default stdout)");
}

// Flags override the config file.
RunConfig resolve(const Flags& f, const std::string& default_format) {
    RunConfig cfg;
    cfg.format = default_format;
    bool from_file = false;
    if (!f.config.empty()) {
        cfg = load_config(f.config);
        from_file = true;
    }
    if (!f.preset.empty()) {
        cfg.preset = f.preset;
        cfg.surface.reset();
        cfg.curve.reset();
    }
    if (!f.surface.empty()) {
        cfg.preset.reset();
        SurfaceSpec s;
        s.name = f.surface;
        cfg.surface = s;
    }
    if (!f.curve.empty()) {
        cfg.preset.reset();
        cfg.curve = parse_curve_flag(f.curve);
    }
    if (!f.kinds.empty()) cfg.kinds = parse_kinds_flag(f.kinds);
    if (f.samples) cfg.samples = *f.samples;
    if (f.tol) cfg.tol = *f.tol;
    if (f.flip_normal) cfg.flip_normal = true;
    if (f.phi_star) cfg.phi_star = f.phi_star;
    if (!f.format.empty()) cfg.format = f.format;
    else if (!from_file) cfg.format = default_format;
    if (!f.out.empty()) cfg.out_path = f.out;
    validate(cfg);
    return cfg;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output.path", "cannot write '" + path + "'");
    out << text;
}

void list(const std::string& what) {
    const bool all = what.empty();
    if (all || what == "surfaces") {
        if (all) std::cout << "surfaces:\n";
        for (const auto& n : builtin_surface_names()) std::cout << (all ? "  " : "") << n << "\n";
    }
    if (all || what == "presets") {
        if (all) std::cout << "presets:\n";
        for (const auto& p : preset_catalog())
            std::cout << (all ? "  " : "") << p.name << "\t" << p.description << "\n";
    }
    if (all || what == "kinds") {
        if (all) std::cout << "kinds:\n";
        for (SmarandacheKind k : all_kinds()) std::cout << (all ? "  " : "") << to_string(k) << "\n";
    }
    if (all || what == "formulas") {
        if (all) std::cout << "formulas:\n";
        for (const auto& id : formula_registry()) std::cout << (all ? "  " : "") << id << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darboux frames and Smarandache curves on parametric surfaces"};
    app.require_subcommand(1);

    Flags eval_flags, verify_flags;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Sample the frame and Smarandache invariants");
    add_run_flags(eval_cmd, eval_flags);
    CLI::App* verify_cmd = app.add_subcommand("verify", "Audit the closed-form invariants");
    add_run_flags(verify_cmd, verify_flags);
    std::string section;
    CLI::App* list_cmd = app.add_subcommand("list", "List surfaces, presets, kinds or formula ids");
    list_cmd->add_option("section", section, "surfaces | presets | kinds | formulas")
        ->check(CLI::IsMember({"surfaces", "presets", "kinds", "formulas"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            list(section);
            return 0;
        }
        if (eval_cmd->parsed()) {
            const RunConfig cfg = resolve(eval_flags, "csv");
            const EvalTable table = evaluate_table(build_curve(cfg), cfg.kinds, cfg.samples);
            emit(cfg.format == "csv" ? to_csv(table) : dump(to_json(table)), cfg.out_path);
            for (const auto& e : table.errors) std::cerr << e << "\n";
            return 0;
        }
        const RunConfig cfg = resolve(verify_flags, "json");
        if (cfg.format != "json") throw ConfigError("output.format", "verify writes json only");
        emit(dump(to_json(run_verify(build_curve(cfg), cfg))), cfg.out_path);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
