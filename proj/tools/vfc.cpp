#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vfc/errors.hpp"
#include "vfc/parallel.hpp"
#include "vfc/reproduce.hpp"
#include "vfc/run.hpp"

namespace {

std::vector<double> parse_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw vfc::ParseError(std::string(flag) + ": not a number list: '" + s + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unit vector field volume and curvature toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    std::string out_path, table_path, format = "json";
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--out", out_path, "Write the report here instead of standard output");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--table", table_path, "Also write the per-node table as CSV");

    std::string scenario_path;
    const auto scenario_opt = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--scenario", scenario_path, "Scenario file (JSON)");
        if (required) o->required();
    };

    auto* verify = app.add_subcommand("verify", "Geometry identities and cross-checks at random points");
    auto* residual = app.add_subcommand("residual", "Minimal-unit residual on the quadrature grid");
    auto* functionals = app.add_subcommand("functionals", "Total curvature functionals of a section graph");
    scenario_opt(verify, true);
    scenario_opt(residual, true);
    scenario_opt(functionals, true);

    auto* futaki = app.add_subcommand("futaki", "Sasaki-Futaki character on a weighted sphere");
    scenario_opt(futaki, false);
    std::string w_list, b_list;
    int futaki_nodes = 0;
    futaki->add_option("--w", w_list, "Weights, comma separated");
    futaki->add_option("--b", b_list, "Potential coefficients, comma separated");
    futaki->add_option("--nodes", futaki_nodes, "Quadrature nodes per axis for the integral form");

    auto* optimize = app.add_subcommand("optimize", "Projected gradient descent on the volume functional");
    scenario_opt(optimize, false);
    int grid = 0, iters = -1;
    double tol = 0, eps = -1;
    long long seed = -1;
    optimize->add_option("--grid", grid, "Nodes per axis");
    optimize->add_option("--iters", iters, "Maximum iterations");
    optimize->add_option("--tol", tol, "Gradient sup-norm tolerance");
    optimize->add_option("--eps", eps, "Perturbation size of the start field");
    optimize->add_option("--seed", seed, "Perturbation seed");

    auto* reproduce = app.add_subcommand("reproduce", "Run a reproduction suite");
    scenario_opt(reproduce, false);
    std::string suite;
    bool list = false;
    reproduce->add_option("--suite", suite, "Suite name (see --list)");
    reproduce->add_flag("--list", list, "List suite names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    vfc::set_thread_count(threads);

    if (reproduce->parsed() && list) {
        for (const auto& n : vfc::suite_names()) std::cout << n << "\n";
        return 0;
    }

    const std::string task = app.get_subcommands().front()->get_name();
    vfc::Scenario sc;
    try {
        if (!scenario_path.empty()) {
            sc = vfc::load_scenario(scenario_path);
            if (sc.task != task)
                throw vfc::ParseError("/task: scenario is for '" + sc.task + "', not '" + task + "'");
        } else {
            sc.task = task;
            sc.tolerance = vfc::default_tolerance();
        }
        if (!w_list.empty()) sc.futaki.w = parse_list(w_list, "--w");
        if (!b_list.empty()) sc.futaki.b = parse_list(b_list, "--b");
        if (futaki_nodes > 0) sc.futaki.nodes = futaki_nodes;
        if (grid > 0) sc.optimizer.shape.assign(sc.optimizer.shape.size(), grid);
        if (iters >= 0) sc.optimizer.max_iters = iters;
        if (tol > 0) sc.optimizer.tol = tol;
        if (eps >= 0) sc.optimizer.perturbation = eps;
        if (seed >= 0) sc.optimizer.seed = static_cast<std::uint64_t>(seed);
        if (!suite.empty()) sc.suite = suite;
    } catch (const vfc::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const vfc::IoError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        vfc::RunOptions ro;
        ro.table = format == "csv" || !table_path.empty();
        const vfc::Report rep = vfc::run_scenario(sc, ro);
        std::string text;
        if (format == "csv") {
            std::ostringstream ss;
            vfc::write_csv(ss, rep.table);
            text = ss.str();
        } else {
            nlohmann::json j = vfc::to_json(rep);
            j["scenario"] = vfc::to_json(sc);
            text = j.dump(2) + "\n";
        }
        if (out_path.empty())
            std::cout << text;
        else
            vfc::emit_text(text, out_path);
        if (!table_path.empty()) vfc::emit_csv(rep.table, table_path);
        if (!rep.error.empty()) std::cerr << rep.error << "\n";
        return vfc::exit_code(rep);
    } catch (const vfc::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
