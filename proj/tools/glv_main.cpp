// Command-line frontend: analyze | balance | realize | simulate | scaling.
// Exit codes: 0 success, 2 parse error, 3 validation error, 4 infeasible,
// 5 numeric failure (overflow / step underflow).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glv/serialize.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitNumeric = 5;

int exit_code_for(glv::errc code) {
    switch (code) {
    case glv::errc::parse_error: return kExitParse;
    case glv::errc::overflow:
    case glv::errc::step_underflow: return kExitNumeric;
    default: return kExitValidation;
    }
}

Eigen::VectorXd parse_vector(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            glv::fail(glv::errc::parse_error, "bad number '" + item + "'");
        }
    }
    if (values.empty()) glv::fail(glv::errc::parse_error, "empty vector");
    Eigen::VectorXd v(static_cast<int>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<int>(i)) = values[i];
    return v;
}

void emit_json(const glv::json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << glv::dump_json(j);
    else
        glv::save_json_file(out_path, j);
}

void write_csv_file(const std::string& path, const glv::Trajectory& traj) {
    std::ofstream os(path);
    if (!os) glv::fail(glv::errc::parse_error, "cannot open " + path + " for writing");
    glv::write_trajectory_csv(os, traj);
}

std::string indexed_path(const std::string& path, int index) {
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_%03d", index);
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

struct SimulateArgs {
    std::string graph_path;
    std::string system_path;
    std::string x0_text;
    std::string d_text;
    double t_end = 50.0;
    double rel_tol = 1e-9;
    int samples = 0;
    int ensemble = 0;
    std::uint64_t seed = 0;
    std::string out_csv;
    std::string summary_path;
    bool no_lyapunov = false;
};

int run_simulate(const SimulateArgs& args) {
    glv::IntegrateOptions opts;
    opts.t_end = args.t_end;
    opts.rel_tol = args.rel_tol;

    std::optional<glv::EGraph> graph;
    std::optional<glv::GlvSystem> system;
    if (!args.graph_path.empty())
        graph = glv::load_graph(args.graph_path);
    else if (!args.system_path.empty())
        system = glv::load_system(args.system_path);
    else
        glv::fail(glv::errc::parse_error, "need a graph file or --system");

    const int n = graph ? graph->dimension() : system->dimension;
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
    if (!args.d_text.empty()) d = parse_vector(args.d_text);

    std::optional<glv::ScaledSystem> scaled;
    std::optional<glv::BalanceCertificate> cert;
    std::optional<glv::SubspaceBasis> basis;
    if (graph) {
        scaled.emplace(*graph, d);
        basis = glv::stoichiometric_basis(*graph);
        if (!args.no_lyapunov) cert = glv::find_balanced_state(*graph);
    }

    auto run_one = [&](const Eigen::VectorXd& x0) {
        glv::Trajectory traj =
            graph ? glv::integrate(*scaled, x0, opts, cert ? &*cert : nullptr, &*basis)
                  : glv::integrate_system(*system, x0, opts);
        if (args.samples >= 2) traj = glv::with_uniform_samples(traj, args.samples);
        return traj;
    };

    if (args.ensemble > 0) {
        std::mt19937_64 rng(args.seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        glv::json summaries = glv::json::array();
        bool failed = false;
        for (int k = 0; k < args.ensemble; ++k) {
            Eigen::VectorXd xi0(n);
            for (int i = 0; i < n; ++i) xi0(i) = dist(rng);
            const Eigen::VectorXd x0 = xi0.array().exp().matrix();
            const glv::Trajectory traj = run_one(x0);
            glv::json s = glv::trajectory_summary_to_json(traj);
            s["member"] = k;
            s["x0"] = glv::json::array();
            for (int i = 0; i < n; ++i) s["x0"].push_back(x0(i));
            summaries.push_back(std::move(s));
            if (!args.out_csv.empty()) write_csv_file(indexed_path(args.out_csv, k), traj);
            failed = failed || traj.failure.has_value();
        }
        emit_json(summaries, args.summary_path);
        return failed ? kExitNumeric : 0;
    }

    if (args.x0_text.empty()) glv::fail(glv::errc::parse_error, "--x0 required");
    const glv::Trajectory traj = run_one(parse_vector(args.x0_text));
    if (args.out_csv.empty())
        glv::write_trajectory_csv(std::cout, traj);
    else
        write_csv_file(args.out_csv, traj);
    if (!args.summary_path.empty())
        glv::save_json_file(args.summary_path, glv::trajectory_summary_to_json(traj));
    return traj.failure ? kExitNumeric : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Lotka-Volterra analysis via Euclidean embedded graphs"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Structural report for a graph file");
    std::string analyze_graph, analyze_out;
    double rank_tol = 1e-10;
    analyze->add_option("graph", analyze_graph, "graph JSON file")->required();
    analyze->add_option("-o,--out", analyze_out, "output JSON path (default stdout)");
    analyze->add_option("--rank-tol", rank_tol, "relative singular-value cutoff");

    // balance
    auto* balance = app.add_subcommand("balance", "Complex-balance / Stiemke decision");
    std::string balance_graph, balance_out;
    double balance_tol = 1e-8;
    balance->add_option("graph", balance_graph, "graph JSON file")->required();
    balance->add_option("-o,--out", balance_out, "output JSON path (default stdout)");
    balance->add_option("--tol", balance_tol, "balance residual tolerance");

    // realize
    auto* realize = app.add_subcommand("realize", "Find an E-graph generating a system");
    std::string rz_system, rz_vertices, rz_xstar, rz_d, rz_graph_out, rz_report;
    bool rz_search = false;
    bool rz_default_candidates = false;
    double rz_zero_tol = 1e-10;
    realize->add_option("--system", rz_system, "system JSON file")->required();
    realize->add_option("--vertices", rz_vertices, "candidate vertex JSON file");
    realize->add_flag("--default-vertices", rz_default_candidates,
                      "derive candidate vertices from the system");
    realize->add_option("--x-star", rz_xstar, "enforce complex balance at this state (comma-separated)");
    realize->add_option("--d", rz_d, "fixed diagonal scaling (comma-separated)");
    realize->add_flag("--scaling-search", rz_search, "search a cooperative-LV scaling");
    realize->add_option("-o,--out", rz_graph_out, "realized graph JSON path");
    realize->add_option("--report", rz_report, "feasibility report JSON path (default stdout)");
    realize->add_option("--zero-tol", rz_zero_tol, "edge weight drop threshold");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory in log coordinates");
    SimulateArgs sim;
    simulate->add_option("graph", sim.graph_path, "graph JSON file");
    simulate->add_option("--system", sim.system_path, "GLV system JSON file (instead of a graph)");
    simulate->add_option("--x0", sim.x0_text, "initial state, comma-separated positives");
    simulate->add_option("--d", sim.d_text, "diagonal scaling (comma-separated)");
    simulate->add_option("--t-end", sim.t_end, "integration horizon");
    simulate->add_option("--rel-tol", sim.rel_tol, "relative step tolerance in [1e-12, 1e-3]");
    simulate->add_option("--samples", sim.samples, "add a uniform sample grid of this size");
    simulate->add_option("--ensemble", sim.ensemble, "number of random initial conditions");
    simulate->add_option("--seed", sim.seed, "ensemble RNG seed (xi0 uniform in [-2,2]^n)");
    simulate->add_option("-o,--out", sim.out_csv, "trajectory CSV path (default stdout)");
    simulate->add_option("--summary", sim.summary_path, "summary JSON path");
    simulate->add_flag("--no-lyapunov", sim.no_lyapunov, "skip the balance certificate lookup");

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Diagonal scaling for a cooperative LV system");
    std::string sc_input, sc_out;
    scaling->add_option("input", sc_input, "JSON file with fields \"r\" and \"A\"")->required();
    scaling->add_option("-o,--out", sc_out, "output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (*analyze) {
            const glv::EGraph g = glv::load_graph(analyze_graph);
            emit_json(glv::structural_report_to_json(glv::structural_report(g, rank_tol)),
                      analyze_out);
            return 0;
        }
        if (*balance) {
            const glv::EGraph g = glv::load_graph(balance_graph);
            emit_json(glv::balance_outcome_to_json(g, balance_tol), balance_out);
            return 0;
        }
        if (*realize) {
            glv::RealizationProblem problem;
            problem.system = glv::load_system(rz_system);
            if (rz_default_candidates)
                problem.candidate_vertices = glv::default_candidates(problem.system);
            else if (!rz_vertices.empty())
                problem.candidate_vertices = glv::vertices_from_json(
                    glv::load_json_file(rz_vertices), problem.system.dimension);
            else
                glv::fail(glv::errc::parse_error, "need --vertices or --default-vertices");
            if (!rz_xstar.empty()) problem.x_star = parse_vector(rz_xstar);
            if (!rz_d.empty()) problem.d = parse_vector(rz_d);
            problem.search_scaling = rz_search;

            const glv::RealizeOutcome outcome = glv::realize(problem, rz_zero_tol);
            if (std::holds_alternative<glv::Infeasibility>(outcome)) {
                emit_json(glv::infeasibility_to_json(std::get<glv::Infeasibility>(outcome)),
                          rz_report);
                return kExitInfeasible;
            }
            const auto& result = std::get<glv::RealizationResult>(outcome);
            if (!rz_graph_out.empty())
                glv::save_json_file(rz_graph_out, glv::graph_to_json(result.graph));
            glv::json report = glv::realization_report_to_json(result);
            if (rz_graph_out.empty()) report["graph"] = glv::graph_to_json(result.graph);
            emit_json(report, rz_report);
            return 0;
        }
        if (*simulate) return run_simulate(sim);
        if (*scaling) {
            const glv::json j = glv::load_json_file(sc_input);
            if (!j.contains("r") || !j.contains("A"))
                glv::fail(glv::errc::parse_error, "need fields \"r\" and \"A\"");
            const Eigen::VectorXd r = [&] {
                std::vector<double> v = j.at("r").get<std::vector<double>>();
                return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<int>(v.size())).eval();
            }();
            const int n = static_cast<int>(r.size());
            Eigen::MatrixXd A(n, n);
            const auto& ja = j.at("A");
            if (!ja.is_array() || static_cast<int>(ja.size()) != n)
                glv::fail(glv::errc::parse_error, "\"A\" must be an n x n array");
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) A(i, k) = ja.at(i).at(k).get<double>();

            const auto outcome = glv::find_scaling(r, A);
            if (std::holds_alternative<glv::Infeasibility>(outcome)) {
                emit_json(glv::infeasibility_to_json(std::get<glv::Infeasibility>(outcome)),
                          sc_out);
                return kExitInfeasible;
            }
            glv::json out;
            out["feasible"] = true;
            out["d"] = glv::json::array();
            const Eigen::VectorXd& d = std::get<Eigen::VectorXd>(outcome);
            for (int i = 0; i < d.size(); ++i) out["d"].push_back(d(i));
            emit_json(out, sc_out);
            return 0;
        }
    } catch (const glv::Error& err) {
        std::cerr << err.what() << "\n";
        return exit_code_for(err.code());
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
