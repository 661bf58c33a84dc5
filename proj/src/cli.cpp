#include "circgeo/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "circgeo/commands.hpp"
#include "circgeo/errors.hpp"

namespace circgeo {

namespace {

std::vector<double> parse_numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string("malformed ") + what + " '" + text + "'");
        }
    }
    return out;
}

Vec3 parse_vec(const std::string& text, const char* what) {
    const auto v = parse_numbers(text, what);
    if (v.size() != 3) throw ConfigError(std::string(what) + " needs 3 comma-separated numbers");
    return {v[0], v[1], v[2]};
}

GridSpec parse_grid(const std::string& text) {
    const auto v = parse_numbers(text, "grid");
    auto steps = [](double s) {
        if (s != std::floor(s) || s < 0 || s > 1e6) throw ConfigError("grid steps must be a non-negative integer");
        return static_cast<int>(s);
    };
    GridSpec g;
    if (v.size() == 3) {
        for (auto& axis : g.axes) axis = {v[0], v[1], steps(v[2])};
    } else if (v.size() == 9) {
        for (int k = 0; k < 3; ++k) g.axes[k] = {v[3 * k], v[3 * k + 1], steps(v[3 * k + 2])};
    } else {
        throw ConfigError("grid is min,max,steps or nine values (per axis min,max,steps)");
    }
    return g;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Circulant-metric geometry: evaluate and verify connection and curvature identities", "circgeo"};
    app.require_subcommand(1);

    std::string fields, config_path, grid, grad = "analytic", format, output;
    std::vector<std::string> points, vectors, tols;
    std::optional<double> step, grad_step;
    std::optional<std::uint64_t> seed;
    std::optional<int> tuples, seeds;
    std::string target;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fields", fields, "Field spec 'A: <poly>; B: <poly>', builtin name, or @file");
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
        sub->add_option("--point", points, "Point x1,x2,x3 (repeatable)");
        sub->add_option("--grid", grid, "Grid min,max,steps (all axes) or 9 values per axis");
        sub->add_option("--vector", vectors, "Section seed vector x1,x2,x3 (repeatable)");
        sub->add_option("--grad", grad, "Gradient mode")->check(CLI::IsMember({"analytic", "fd"}));
        sub->add_option("--grad-step", grad_step, "Relative step for finite-difference gradients");
        sub->add_option("--step", step, "Relative step for curvature finite differences");
        sub->add_option("--seed", seed, "Seed for randomized checks");
        sub->add_option("--tuples", tuples, "Random vector 4-tuples per point");
        sub->add_option("--seeds", seeds, "Random section seeds per point");
        sub->add_option("--out", output, "Output path (default: standard output)");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--tol", tols, "Tolerance override KEY=VAL (repeatable)");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a quantity at points");
    eval->add_option("what", target, "metric | christoffel | nabla-q | curvature | sectional")->required();
    add_common(eval);
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    add_common(verify);
    auto* scan = app.add_subcommand("scan", "Tabulate D, definiteness and mu(E1) over a grid");
    add_common(scan);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw IoError("cannot read config file '" + config_path + "'");
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::exception& e) {
                throw ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            config.merge_json(j);
        }
        if (!fields.empty()) config.fields = fields;
        if (!points.empty()) {
            config.points.clear();
            for (const auto& p : points) config.points.push_back(parse_vec(p, "point"));
        }
        if (!grid.empty()) config.grid = parse_grid(grid);
        if (!vectors.empty()) {
            config.vectors.clear();
            for (const auto& v : vectors) config.vectors.push_back(parse_vec(v, "vector"));
        }
        if (grad == "fd") config.grad_mode = GradMode::central_difference;
        if (grad_step) config.grad_step = *grad_step;
        if (step) config.fd_step = *step;
        if (seed) config.seed = *seed;
        if (tuples) config.random_tuples = *tuples;
        if (seeds) config.random_seeds = *seeds;
        if (!output.empty()) config.output = output;
        if (format == "csv") config.format = OutputFormat::csv;
        else if (format == "json") config.format = OutputFormat::json;
        for (const auto& t : tols) {
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw ConfigError("--tol expects KEY=VAL, got '" + t + "'");
            const auto v = parse_numbers(t.substr(eq + 1), "tolerance");
            if (v.size() != 1) throw ConfigError("--tol expects one value, got '" + t + "'");
            config.tolerances[t.substr(0, eq)] = v[0];
        }

        VerificationReport report;
        if (eval->parsed()) report = cmd_eval(config, parse_eval_target(target));
        else if (verify->parsed()) report = cmd_verify(config);
        else report = cmd_scan(config);

        write_report(report, config, out);
        const auto s = report.summary();
        err << report.command << ": " << s.pass_count << " pass, " << s.fail_count << " fail, "
            << s.skipped_count << " skipped\n";
        return report.exit_code();
    } catch (const Error& e) {
        err << "error (" << e.kind() << "): " << e.what() << "\n";
        return 2;
    }
}

}  // namespace circgeo
