#include "circgeo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "circgeo/circulant.hpp"
#include "circgeo/connection.hpp"
#include "circgeo/curvature.hpp"
#include "circgeo/errors.hpp"

namespace circgeo {

// ---------------------------------------------------------------- config

std::vector<Vec3> GridSpec::expand() const {
    for (const auto& axis : axes) {
        if (axis.steps < 1) throw ConfigError("grid axis needs at least one node");
        if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) throw ConfigError("grid bounds must be finite");
    }
    auto node = [](const GridAxis& axis, int n) {
        if (axis.steps == 1) return axis.min;
        return axis.min + (axis.max - axis.min) * n / (axis.steps - 1);
    };
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(axes[0].steps) * axes[1].steps * axes[2].steps);
    for (int k = 0; k < axes[2].steps; ++k)
        for (int j = 0; j < axes[1].steps; ++j)
            for (int i = 0; i < axes[0].steps; ++i)
                out.push_back({node(axes[0], i), node(axes[1], j), node(axes[2], k)});
    return out;
}

std::map<std::string, double> RunConfig::default_tolerances() {
    return {
        {"metric_inverse", 1e-12},       // g g^-1 = E, relative to cond(g)
        {"q_isometry_ulps", 4},          // g(qx,qy) vs g(x,y)
        {"dual_path", 1e-9},             // closed vs general Christoffel
        {"metric_compat", 1e-9},         // Levi-Civita compatibility
        {"parallel_zero", 1e-9},         // defect counted as zero
        {"nabla_q_zero", 1e-10},         // forward direction
        {"nabla_q_nonzero", 1e-6},       // converse direction
        {"converse_defect", 0.1},        // defect size that triggers the converse check
        {"reduced_christoffel", 1e-10},  // six-way groups
        {"curvature_symmetry", 1e-8},    // antisymmetry / pair symmetry
        {"fd_convergence", 1e-6},        // R(h) vs R(h/2)
        {"q_identities", 1e-7},           // q-identities, relative to scale
        {"orbit_spread_rel", 1e-6},       // spread vs max|mu|
        {"orbit_spread_abs", 1e-9},
        {"independence_min", 0.1},       // |cubic| > this * |x|^3 for random seeds
        {"flat_christoffel", 1e-14},
        {"flat_curvature", 1e-10},
    };
}

void RunConfig::validate() const {
    const auto defaults = default_tolerances();
    for (const auto& [key, value] : tolerances) {
        if (!defaults.count(key)) throw ConfigError("unknown tolerance key '" + key + "'");
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw ConfigError("tolerance '" + key + "' must be positive");
        }
    }
    if (!(grad_step > 0.0)) throw ConfigError("gradient step must be positive");
    if (!(fd_step > 0.0)) throw ConfigError("curvature step must be positive");
    if (random_tuples < 1 || random_seeds < 1) throw ConfigError("random counts must be positive");
    if (grid) grid->expand();
    for (const auto& p : points)
        for (double c : p)
            if (!std::isfinite(c)) throw ConfigError("points must be finite");
}

double RunConfig::tolerance(const std::string& key) const {
    if (const auto it = tolerances.find(key); it != tolerances.end()) return it->second;
    const auto defaults = default_tolerances();
    if (const auto it = defaults.find(key); it != defaults.end()) return it->second;
    throw ConfigError("unknown tolerance key '" + key + "'");
}

std::vector<Vec3> RunConfig::all_points() const {
    std::vector<Vec3> out = points;
    if (grid) {
        const auto nodes = grid->expand();
        out.insert(out.end(), nodes.begin(), nodes.end());
    }
    if (out.empty()) throw ConfigError("no points: give --point or --grid");
    return out;
}

namespace {

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Vec3 json_vec(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be a list of 3 numbers");
    Vec3 v{};
    for (int k = 0; k < 3; ++k) {
        if (!j[k].is_number()) throw ConfigError(std::string(what) + " must be a list of 3 numbers");
        v[k] = j[k].get<double>();
    }
    return v;
}

}  // namespace

Json RunConfig::to_json() const {
    Json j;
    j["fields"] = fields;
    Json pts = Json::array();
    for (const auto& p : points) pts.push_back(vec_json(p));
    j["points"] = std::move(pts);
    if (grid) {
        Json g;
        Json mins = Json::array(), maxs = Json::array(), steps = Json::array();
        for (const auto& axis : grid->axes) {
            mins.push_back(axis.min);
            maxs.push_back(axis.max);
            steps.push_back(axis.steps);
        }
        g["min"] = std::move(mins);
        g["max"] = std::move(maxs);
        g["steps"] = std::move(steps);
        j["grid"] = std::move(g);
    } else {
        j["grid"] = nullptr;
    }
    j["grad_mode"] = grad_mode == GradMode::analytic ? "analytic" : "fd";
    j["grad_step"] = grad_step;
    j["fd_step"] = fd_step;
    Json tol;
    for (const auto& [key, value] : tolerances) tol[key] = value;
    j["tolerances"] = std::move(tol);
    j["seed"] = seed;
    Json vecs = Json::array();
    for (const auto& v : vectors) vecs.push_back(vec_json(v));
    j["vectors"] = std::move(vecs);
    j["random_tuples"] = random_tuples;
    j["random_seeds"] = random_seeds;
    j["format"] = format == OutputFormat::json ? "json" : "csv";
    return j;
}

void RunConfig::merge_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "fields") fields = value.get<std::string>();
            else if (key == "points") {
                points.clear();
                for (const auto& p : value) points.push_back(json_vec(p, "point"));
            } else if (key == "grid") {
                if (value.is_null()) {
                    grid.reset();
                    continue;
                }
                GridSpec g;
                const auto mins = json_vec(value.at("min"), "grid.min");
                const auto maxs = json_vec(value.at("max"), "grid.max");
                const auto& steps = value.at("steps");
                if (!steps.is_array() || steps.size() != 3) throw ConfigError("grid.steps must be 3 integers");
                for (int k = 0; k < 3; ++k) g.axes[k] = {mins[k], maxs[k], steps[k].get<int>()};
                grid = g;
            } else if (key == "grad_mode") {
                const auto mode = value.get<std::string>();
                if (mode == "analytic") grad_mode = GradMode::analytic;
                else if (mode == "fd") grad_mode = GradMode::central_difference;
                else throw ConfigError("grad_mode must be 'analytic' or 'fd'");
            } else if (key == "grad_step") grad_step = value.get<double>();
            else if (key == "fd_step") fd_step = value.get<double>();
            else if (key == "tolerances") {
                for (const auto& [name, tol] : value.items()) tolerances[name] = tol.get<double>();
            } else if (key == "seed") seed = value.get<std::uint64_t>();
            else if (key == "vectors") {
                vectors.clear();
                for (const auto& v : value) vectors.push_back(json_vec(v, "vector"));
            } else if (key == "random_tuples") random_tuples = value.get<int>();
            else if (key == "random_seeds") random_seeds = value.get<int>();
            else if (key == "output") output = value.get<std::string>();
            else if (key == "format") {
                const auto f = value.get<std::string>();
                if (f == "json") format = OutputFormat::json;
                else if (f == "csv") format = OutputFormat::csv;
                else throw ConfigError("format must be 'json' or 'csv'");
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
}

FieldPair load_fields(const RunConfig& config) {
    std::string text = config.fields;
    if (!text.empty() && text.front() == '@') {
        const std::string path = text.substr(1);
        std::ifstream in(path);
        if (!in) throw IoError("cannot read field spec file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    auto f = parse_field_spec(text);
    f.gradient.mode = config.grad_mode;
    f.gradient.step = config.grad_step;
    return f;
}

EvalTarget parse_eval_target(std::string_view name) {
    if (name == "metric") return EvalTarget::metric;
    if (name == "christoffel") return EvalTarget::christoffel;
    if (name == "nabla-q") return EvalTarget::nabla_q;
    if (name == "curvature") return EvalTarget::curvature;
    if (name == "sectional") return EvalTarget::sectional;
    throw ConfigError("unknown eval target '" + std::string(name) + "'");
}

const char* to_string(EvalTarget target) {
    switch (target) {
        case EvalTarget::metric: return "metric";
        case EvalTarget::christoffel: return "christoffel";
        case EvalTarget::nabla_q: return "nabla-q";
        case EvalTarget::curvature: return "curvature";
        case EvalTarget::sectional: return "sectional";
    }
    return "unknown";
}

// ---------------------------------------------------------------- helpers

namespace {

// Portable uniform doubles from a seeded 64-bit engine; the stream for a point
// depends only on (seed, point index).
class PointRng {
public:
    PointRng(std::uint64_t seed, std::size_t index) : engine_(mix(seed, index)) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
    }
    Vec3 vec() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::mt19937_64 engine_;
};

Json tensor3_json(const Tensor3& t) {
    Json out = Json::array();
    for (const auto& m : t) {
        Json rows = Json::array();
        for (const auto& r : m) rows.push_back(vec_json(r));
        out.push_back(std::move(rows));
    }
    return out;
}

Json tensor4_json(const Tensor4& t) {
    Json out = Json::array();
    for (const auto& t3 : t) out.push_back(tensor3_json(t3));
    return out;
}

Json circulant_json(const CirculantMatrix& m) { return Json::array({m.a, m.b, m.c}); }

std::string degenerate_reason(const DomainStatus& s) {
    return "D=0 (|D| = " + format_double(std::abs(s.d)) + ")";
}

double max_diff(const Tensor3& x, const Tensor3& y) {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(x[s][i][j] - y[s][i][j]));
    return worst;
}

// Ratio residual/scale that is 0 when both vanish.
double ratio(double residual, double scale) {
    if (residual == 0.0) return 0.0;
    return residual / scale;
}

std::vector<Vec3> section_seeds(const RunConfig& config) {
    if (!config.vectors.empty()) return config.vectors;
    return {Vec3{1, 2, 3}};
}

VerificationReport start_report(const char* command, const RunConfig& config) {
    config.validate();
    VerificationReport report;
    report.command = command;
    report.config = config.to_json();
    report.errata = closed_form_errata();
    return report;
}

}  // namespace

// ---------------------------------------------------------------- eval

VerificationReport cmd_eval(const RunConfig& config, EvalTarget what) {
    auto report = start_report("eval", config);
    report.config["target"] = to_string(what);
    const auto fields = load_fields(config);
    const auto points = config.all_points();
    const std::string check = std::string("eval.") + to_string(what);

    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const Vec3& p = points[idx];
        const auto status = domain_check(fields, p);
        if (!status.nondegenerate) {
            auto r = make_skipped(idx, p, check, degenerate_reason(status));
            r.value = {{"A", status.a}, {"B", status.b}, {"D", status.d}};
            report.records.push_back(std::move(r));
            continue;
        }
        CheckRecord rec;
        rec.point_index = idx;
        rec.point = p;
        rec.check = check;
        rec.status = CheckStatus::pass;
        try {
            switch (what) {
                case EvalTarget::metric: {
                    const auto m = metric_at(fields, p);
                    rec.value = {{"A", status.a},
                                 {"B", status.b},
                                 {"D", m.d},
                                 {"definite", m.definite},
                                 {"g", circulant_json(m.g)},
                                 {"g_inv", circulant_json(m.g_inv)}};
                    break;
                }
                case EvalTarget::christoffel: {
                    const auto jet = field_jet(fields, p);
                    const auto general = christoffel_general(jet);
                    const auto closed = christoffel_closed(jet);
                    rec.value = {{"general", tensor3_json(general.gamma)},
                                 {"closed", tensor3_json(closed.gamma)},
                                 {"max_difference", max_diff(general.gamma, closed.gamma)}};
                    break;
                }
                case EvalTarget::nabla_q: {
                    const auto jet = field_jet(fields, p);
                    const auto nq = nabla_q(christoffel_general(jet));
                    rec.value = {{"defect", vec_json(parallel_defect(jet))},
                                 {"components", tensor3_json(nq.components)},
                                 {"max_norm", nq.max_norm()}};
                    break;
                }
                case EvalTarget::curvature: {
                    const auto c = curvature_at(fields, p, config.fd_step);
                    rec.value = {{"r_up", tensor4_json(c.r_up)},
                                 {"r_down", tensor4_json(c.r_down)},
                                 {"fd_step", vec_json(c.fd_step)},
                                 {"half_step_difference", half_step_difference(fields, p, config.fd_step)}};
                    break;
                }
                case EvalTarget::sectional: {
                    const auto c = curvature_at(fields, p, config.fd_step);
                    const Theorem3Tolerance tol{config.tolerance("orbit_spread_rel"),
                                                config.tolerance("orbit_spread_abs")};
                    for (const auto& x : section_seeds(config)) {
                        CheckRecord sub = rec;
                        try {
                            const auto s = theorem3_check(c, x, tol);
                            sub.value = {{"x", vec_json(x)},
                                         {"independence", s.independence},
                                         {"mu", Json::array({s.mu[0], s.mu[1], s.mu[2]})},
                                         {"spread", s.spread},
                                         {"equal_within_tolerance", s.passed}};
                        } catch (const Error& e) {
                            sub = make_skipped(idx, p, check, e.kind());
                            sub.value = {{"x", vec_json(x)}, {"message", e.what()}};
                        }
                        report.records.push_back(std::move(sub));
                    }
                    continue;
                }
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            rec = make_skipped(idx, p, check, e.kind());
            rec.value = {{"message", e.what()}};
        }
        report.records.push_back(std::move(rec));
    }
    report.sort_records();
    return report;
}

// ---------------------------------------------------------------- verify

namespace {

void verify_point(const FieldPair& fields, const RunConfig& config, std::size_t idx, const Vec3& p,
                  std::vector<CheckRecord>& out) {
    const auto status = domain_check(fields, p);
    if (!status.nondegenerate) {
        out.push_back(make_skipped(idx, p, "domain", degenerate_reason(status)));
        return;
    }
    PointRng rng(config.seed, idx);
    const auto metric = metric_at(fields, p);
    const auto jet = field_jet(fields, p);

    {
        const Mat3 g = metric.g.dense();
        const Mat3 gi = metric.g_inv.dense();
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double v = 0.0;
                for (int s = 0; s < 3; ++s) v += g[i][s] * gi[j][s];
                worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
            }
        const double cond = std::max(1.0, metric.g.max_abs_entry() * metric.g_inv.max_abs_entry());
        out.push_back(make_check(idx, p, "metric.inverse", worst, config.tolerance("metric_inverse") * cond));
    }
    {
        double worst_ulps = 0.0;
        for (int n = 0; n < 10; ++n) {
            const Vec3 x = rng.vec(), y = rng.vec();
            const double base = metric_product(metric.g, x, y);
            const double moved = metric_product(metric.g, apply(structural::q, x), apply(structural::q, y));
            const double ulp = std::max(std::abs(std::nextafter(base, INFINITY) - base),
                                        std::numeric_limits<double>::denorm_min());
            worst_ulps = std::max(worst_ulps, std::abs(moved - base) / ulp);
        }
        out.push_back(make_check(idx, p, "metric.q_isometry", worst_ulps, config.tolerance("q_isometry_ulps")));
    }

    const auto general = christoffel_general(jet);
    const auto closed = christoffel_closed(jet);
    const double gamma_scale = std::max(1.0, general.max_abs());
    out.push_back(make_check(idx, p, "christoffel.dual_path", max_diff(general.gamma, closed.gamma),
                             config.tolerance("dual_path") * gamma_scale));
    out.push_back(make_check(idx, p, "connection.metric_compat", metric_compatibility_residual(jet, general),
                             config.tolerance("metric_compat") * gamma_scale *
                                 std::max(1.0, metric.g.max_abs_entry())));

    const bool flat = max_abs(jet.grad_a) == 0.0 && max_abs(jet.grad_b) == 0.0;
    if (flat) {
        out.push_back(make_check(idx, p, "flat.christoffel", general.max_abs(), config.tolerance("flat_christoffel")));
    }

    const Vec3 defect = parallel_defect(jet);
    const bool parallel = is_parallel(jet, config.tolerance("parallel_zero"));
    const double nq = nabla_q(general).max_norm();
    if (parallel) {
        auto r = make_check(idx, p, "parallel_q.forward", nq, config.tolerance("nabla_q_zero") * gamma_scale);
        r.value = {{"defect", vec_json(defect)}};
        out.push_back(std::move(r));
        try {
            const auto red = reduced_christoffel(jet, config.tolerance("reduced_christoffel"));
            const std::array<double, 3> values{red.g1, red.g2, red.g3};
            double worst = 0.0;
            for (int group = 0; group < 3; ++group)
                for (const auto& [s, i, j] : reduced_christoffel_groups()[group])
                    worst = std::max(worst, std::abs(general(s, i, j) - values[group]));
            auto rr = make_check(idx, p, "parallel_q.reduced", worst,
                                 config.tolerance("reduced_christoffel") * gamma_scale);
            rr.value = {{"G", Json::array({red.g1, red.g2, red.g3})}};
            out.push_back(std::move(rr));
        } catch (const ParallelismViolated& e) {
            auto rr = make_check(idx, p, "parallel_q.reduced", INFINITY, config.tolerance("reduced_christoffel"));
            rr.reason = e.what();
            out.push_back(std::move(rr));
        }
    } else if (max_abs(defect) >= config.tolerance("converse_defect")) {
        // passes when nabla q exceeds the threshold
        const double threshold = config.tolerance("nabla_q_nonzero");
        auto r = make_check(idx, p, "parallel_q.converse", nq, threshold);
        r.status = nq > threshold ? CheckStatus::pass : CheckStatus::fail;
        r.value = {{"defect", vec_json(defect)}, {"comparison", "residual > tolerance"}};
        out.push_back(std::move(r));
    } else {
        out.push_back(make_skipped(idx, p, "parallel_q", "defect between zero and converse threshold"));
    }

    const char* curvature_checks[] = {"curvature.antisymmetry", "curvature.fd_convergence",
                                      "curvature.pair_symmetry"};
    CurvatureAtPoint curv;
    try {
        curv = curvature_at(fields, p, config.fd_step);
    } catch (const Error& e) {
        for (const char* name : curvature_checks) out.push_back(make_skipped(idx, p, name, e.kind()));
        return;
    }
    const double r_scale = std::max(1.0, curv.max_abs());
    out.push_back(make_check(idx, p, "curvature.antisymmetry", antisymmetry_residual(curv),
                             config.tolerance("curvature_symmetry") * r_scale));
    out.push_back(make_check(idx, p, "curvature.pair_symmetry", pair_symmetry_residual(curv),
                             config.tolerance("curvature_symmetry") * r_scale));
    try {
        out.push_back(make_check(idx, p, "curvature.fd_convergence", half_step_difference(fields, p, config.fd_step),
                                 config.tolerance("fd_convergence") * std::max(1.0, curv.max_abs_up())));
    } catch (const Error& e) {
        out.push_back(make_skipped(idx, p, "curvature.fd_convergence", e.kind()));
    }
    if (flat) {
        out.push_back(make_check(idx, p, "flat.curvature", curv.max_abs_up(), config.tolerance("flat_curvature")));
    }

    if (!parallel) {
        for (const char* name : {"curvature.q_identity", "curvature.q_commutation", "curvature.q_invariance",
                                 "sections.orbit_spread"}) {
            out.push_back(make_skipped(idx, p, name, "q not parallel at point"));
        }
        return;
    }

    const double t2 = config.tolerance("q_identities");
    {
        double worst31 = 0.0, worst36 = 0.0;
        for (int n = 0; n < config.random_tuples; ++n) {
            const Vec3 x = rng.vec(), y = rng.vec(), z = rng.vec(), u = rng.vec();
            const double scale = residual_scale(curv, x, y, z, u);
            worst31 = std::max(worst31, ratio(identity_31_residual(curv, x, y, z, u), scale));
            const auto [r1, r2] = q_invariance_residuals(curv, x, y, z, u);
            worst36 = std::max({worst36, ratio(r1, scale), ratio(r2, scale)});
        }
        auto r31 = make_check(idx, p, "curvature.q_identity", worst31, t2);
        r31.value = {{"tuples", config.random_tuples}, {"measure", "residual / scale"}};
        out.push_back(std::move(r31));
        auto r36 = make_check(idx, p, "curvature.q_invariance", worst36, t2);
        r36.value = {{"tuples", config.random_tuples}, {"measure", "residual / scale"}};
        out.push_back(std::move(r36));
        out.push_back(make_check(idx, p, "curvature.q_commutation", ratio(commutation_residual(curv), curv.max_abs_up()), t2));
    }

    if (!metric.definite) {
        out.push_back(make_skipped(idx, p, "sections.orbit_spread", "IndefiniteMetric"));
        return;
    }
    const Theorem3Tolerance tol{config.tolerance("orbit_spread_rel"),
                                config.tolerance("orbit_spread_abs")};
    const double min_independence = config.tolerance("independence_min");
    std::vector<Vec3> seeds = config.vectors;
    while (seeds.size() < config.vectors.size() + static_cast<std::size_t>(config.random_seeds)) {
        const Vec3 x = rng.vec();
        const double nx = norm(x);
        if (std::abs(orbit_independence(x)) > min_independence * nx * nx * nx) seeds.push_back(x);
    }
    double worst = 0.0;
    double worst_spread = 0.0;
    std::size_t used = 0;
    std::size_t dependent = 0;
    for (const auto& x : seeds) {
        try {
            const auto s = theorem3_check(curv, x, tol);
            worst = std::max(worst, s.spread / s.tolerance);
            worst_spread = std::max(worst_spread, s.spread);
            ++used;
        } catch (const DependentOrbit&) {
            ++dependent;
        } catch (const DegenerateSection&) {
            ++dependent;
        }
    }
    auto r3 = make_check(idx, p, "sections.orbit_spread", worst, 1.0);
    r3.value = {{"seeds", used},
                {"dependent_seeds", dependent},
                {"max_spread", worst_spread},
                {"measure", "spread / (rel * max|mu| + abs)"}};
    out.push_back(std::move(r3));
}

}  // namespace

VerificationReport cmd_verify(const RunConfig& config) {
    auto report = start_report("verify", config);
    const auto fields = load_fields(config);
    const auto points = config.all_points();
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        verify_point(fields, config, idx, points[idx], report.records);
    }
    report.sort_records();
    return report;
}

// ---------------------------------------------------------------- scan

VerificationReport cmd_scan(const RunConfig& config) {
    if (!config.grid) throw ConfigError("scan needs a grid (--grid)");
    auto report = start_report("scan", config);
    const auto fields = load_fields(config);
    const auto nodes = config.all_points();
    const Vec3 seed = section_seeds(config).front();

    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
        const Vec3& p = nodes[idx];
        const auto s = domain_check(fields, p);
        CheckRecord rec;
        rec.point_index = idx;
        rec.point = p;
        rec.check = "scan";
        rec.value = {{"A", s.a}, {"B", s.b}, {"D", s.d}, {"nondegenerate", s.nondegenerate}, {"definite", s.definite}};
        if (!s.nondegenerate) {
            rec.status = CheckStatus::skipped;
            rec.reason = degenerate_reason(s);
            rec.value["mu_E1"] = nullptr;
        } else {
            rec.status = CheckStatus::pass;
            try {
                const auto sections = sections_of(metric_at(fields, p), seed);
                const auto c = curvature_at(fields, p, config.fd_step);
                rec.value["mu_E1"] = sectional_curvature(c, sections.sections[0].first, sections.sections[0].second);
            } catch (const ConfigError&) {
                throw;
            } catch (const Error& e) {
                rec.value["mu_E1"] = nullptr;
                rec.reason = e.kind();
            }
        }
        report.records.push_back(std::move(rec));
    }
    report.sort_records();
    return report;
}

// ---------------------------------------------------------------- output

std::string scan_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "index,x1,x2,x3,A,B,D,nondegenerate,definite,mu_E1\n";
    for (const auto& r : report.records) {
        const auto& v = r.value;
        out << r.point_index << ',' << format_double(r.point[0]) << ',' << format_double(r.point[1]) << ','
            << format_double(r.point[2]) << ',' << format_double(v.at("A").get<double>()) << ','
            << format_double(v.at("B").get<double>()) << ',' << format_double(v.at("D").get<double>()) << ','
            << (v.at("nondegenerate").get<bool>() ? 1 : 0) << ',' << (v.at("definite").get<bool>() ? 1 : 0) << ',';
        if (!v.at("mu_E1").is_null()) out << format_double(v.at("mu_E1").get<double>());
        out << '\n';
    }
    return out.str();
}

std::string render_report(const VerificationReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        return report.command == "scan" ? scan_csv(report) : report.to_csv();
    }
    return report.to_json().dump(2) + "\n";
}

void write_report(const VerificationReport& report, const RunConfig& config, std::ostream& stdout_stream) {
    const std::string text = render_report(report, config.format);
    if (config.output.empty()) {
        stdout_stream << text;
        return;
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + config.output + "'");
    out << text;
    if (!out) throw IoError("failed writing output file '" + config.output + "'");
}

}  // namespace circgeo
