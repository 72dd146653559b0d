#pragma once

// Run configuration, sample tables and report serialisation.
//
// Config file (JSON):
//   {
//     "preset": "equator",                      // or surface + curve
//     "surface": "sphere"
//              | {"name": "cylinder", "params": {"radius": 1}}
//              | {"x": "...", "y": "...", "z": "...", "u": [lo, hi], "v": [lo, hi]},
//     "curve": {"u": "t", "v": "pi/2", "t": [0, 6.28]},
//     "kinds": ["Tg", "Tn", "gn", "Tgn"],
//     "samples": 256, "tol": 1e-8, "flip_normal": false, "phi_star": null,
//     "output": {"format": "csv" | "json", "path": "out.csv"}
//   }

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "darboux/frame.hpp"
#include "darboux/smarandache.hpp"
#include "darboux/verify.hpp"

namespace darboux {

inline constexpr int kMinSamples = 16;

struct SurfaceSpec {
    /// Builtin name, or "custom" when x, y, z are given.
    std::string name;
    std::map<std::string, double> params;
    std::string x, y, z;
    Interval u, v;
};

struct CurveSpec {
    std::string u, v;
    double t_lo = 0.0, t_hi = 1.0;
};

struct RunConfig {
    std::optional<std::string> preset;
    std::optional<SurfaceSpec> surface;
    std::optional<CurveSpec> curve;
    std::vector<SmarandacheKind> kinds{SmarandacheKind::Tg, SmarandacheKind::Tn, SmarandacheKind::gn,
                                       SmarandacheKind::Tgn};
    int samples = 256;
    double tol = 1e-8;
    bool flip_normal = false;
    std::optional<double> phi_star;
    std::string format = "csv";
    /// Empty writes to stdout.
    std::string out_path;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Checks ranges, names and that every expression parses. Throws ConfigError.
void validate(const RunConfig& cfg);

/// Parses "u;v;t_lo;t_hi". Throws ConfigError on field "curve".
CurveSpec parse_curve_flag(const std::string& text);
/// Parses "Tg,Tn". Throws ConfigError on field "kinds".
std::vector<SmarandacheKind> parse_kinds_flag(const std::string& text);

/// Throws ConfigError for invalid specs; geometry errors propagate.
Surface build_surface(const SurfaceSpec& spec);
SurfaceCurve build_curve(const RunConfig& cfg);

/// Per-sample values; empty cells are undefined quantities.
struct EvalTable {
    std::string curve;
    std::vector<SmarandacheKind> kinds;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    /// Geometry errors that emptied a row, as "row i: message".
    std::vector<std::string> errors;
};

inline constexpr std::size_t kBaseColumns = 20;
inline constexpr std::size_t kColumnsPerKind = 13;

std::vector<std::string> table_columns(const std::vector<SmarandacheKind>& kinds);

/// `samples` points over [0, L]. Smarandache columns hold oracle values;
/// s_star is the arc length of the first requested kind.
EvalTable evaluate_table(const SurfaceCurve& curve, const std::vector<SmarandacheKind>& kinds, int samples);

/// Shortest representation that reads back to the same double.
std::string format_number(double x);

/// ',' delimiter, '.' decimals, LF line endings, header first.
std::string to_csv(const EvalTable& table);
nlohmann::json to_json(const EvalTable& table);
/// Throws ConfigError on malformed documents.
EvalTable table_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const FormulaResult& f);
nlohmann::json to_json(const VerificationReport& report);

struct VerifyRun {
    std::string curve;
    RunConfig config;
    VerificationReport base;
    std::vector<VerificationReport> reports;
};

VerifyRun run_verify(const SurfaceCurve& curve, const RunConfig& cfg);
nlohmann::json to_json(const VerifyRun& run);

/// Stable text rendering: two-space indent, trailing LF.
std::string dump(const nlohmann::json& doc);

}  // namespace darboux
