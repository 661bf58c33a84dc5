#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circgeo/fields.hpp"
#include "circgeo/report.hpp"

namespace circgeo {

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;  // number of nodes; 1 means the single value `min`
};

struct GridSpec {
    std::array<GridAxis, 3> axes{};

    /// Nodes in x1-fastest order. Throws ConfigError if any axis has < 1 node.
    std::vector<Vec3> expand() const;
};

enum class OutputFormat { json, csv };

/// Everything a command needs. Mirrors the JSON config file.
struct RunConfig {
    std::string fields = "paper-example";
    std::vector<Vec3> points;
    std::optional<GridSpec> grid;
    GradMode grad_mode = GradMode::analytic;
    double grad_step = 1e-6;
    double fd_step = 1e-5;
    std::map<std::string, double> tolerances = default_tolerances();
    std::uint64_t seed = 0;
    std::vector<Vec3> vectors;  // section seeds for eval sectional / scan / verify
    int random_tuples = 100;    // vector 4-tuples per point for curvature identities
    int random_seeds = 100;     // random section seeds per point for equal-curvature checks
    std::string output;         // empty: standard output
    OutputFormat format = OutputFormat::json;

    static std::map<std::string, double> default_tolerances();

    /// Throws ConfigError on unknown tolerance keys, non-positive values,
    /// bad counts, or an empty grid.
    void validate() const;

    double tolerance(const std::string& key) const;

    /// Every node to evaluate: explicit points first, then the grid.
    std::vector<Vec3> all_points() const;

    Json to_json() const;
    /// Applies the keys present in `j` on top of the current values.
    void merge_json(const Json& j);
};

/// Resolves `config.fields` ("@path" reads the spec from a file) and applies
/// the gradient settings. Throws IoError, ParseError or UnknownBuiltin.
FieldPair load_fields(const RunConfig& config);

enum class EvalTarget { metric, christoffel, nabla_q, curvature, sectional };

/// "metric", "christoffel", "nabla-q", "curvature", "sectional".
EvalTarget parse_eval_target(std::string_view name);
const char* to_string(EvalTarget target);

VerificationReport cmd_eval(const RunConfig& config, EvalTarget what);
VerificationReport cmd_verify(const RunConfig& config);
VerificationReport cmd_scan(const RunConfig& config);

/// Serialized report in the configured format.
std::string render_report(const VerificationReport& report, OutputFormat format);

/// Scan output as a table: index, coordinates, A, B, D, flags, mu_E1.
std::string scan_csv(const VerificationReport& report);

/// Writes to config.output, or returns the text for standard output when the
/// path is empty. Throws IoError.
void write_report(const VerificationReport& report, const RunConfig& config, std::ostream& stdout_stream);

}  // namespace circgeo
