#include "glv/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace glv {

namespace {

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) fail(errc::parse_error, std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(errc::parse_error, std::string(what) + " must be finite");
    return v;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) fail(errc::parse_error, std::string(what) + " must be an array");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = finite_number(j[i], what);
    return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

const json& require_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(errc::parse_error, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

EGraph graph_from_json(const json& j) {
    const int n = static_cast<int>(finite_number(require_field(j, "dimension"), "dimension"));
    const json& jv = require_field(j, "vertices");
    if (!jv.is_array()) fail(errc::parse_error, "\"vertices\" must be an array");
    Eigen::MatrixXd V(n, static_cast<int>(jv.size()));
    for (std::size_t i = 0; i < jv.size(); ++i) {
        const Eigen::VectorXd p = vector_from_json(jv[i], "vertex");
        if (p.size() != n) fail(errc::parse_error, "vertex " + std::to_string(i) + " size");
        V.col(static_cast<int>(i)) = p;
    }
    const json& je = require_field(j, "edges");
    if (!je.is_array()) fail(errc::parse_error, "\"edges\" must be an array");
    std::vector<Edge> edges;
    edges.reserve(je.size());
    for (const json& e : je) {
        Edge ed;
        ed.src = static_cast<int>(finite_number(require_field(e, "src"), "src"));
        ed.dst = static_cast<int>(finite_number(require_field(e, "dst"), "dst"));
        ed.weight = finite_number(require_field(e, "weight"), "weight");
        edges.push_back(ed);
    }
    return EGraph(n, std::move(V), std::move(edges));
}

json graph_to_json(const EGraph& g) {
    json j;
    j["dimension"] = g.dimension();
    json verts = json::array();
    for (int i = 0; i < g.num_vertices(); ++i) verts.push_back(vector_to_json(g.vertex(i)));
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back(json{{"src", e.src}, {"dst", e.dst}, {"weight", e.weight}});
    j["edges"] = std::move(edges);
    return j;
}

GlvSystem system_from_json(const json& j) {
    GlvSystem sys;
    sys.dimension = static_cast<int>(finite_number(require_field(j, "dimension"), "dimension"));
    const json& jt = require_field(j, "terms");
    if (!jt.is_array()) fail(errc::parse_error, "\"terms\" must be an array");
    for (const json& t : jt) {
        GlvTerm term;
        term.exponent = vector_from_json(require_field(t, "exponent"), "exponent");
        term.coeffs = vector_from_json(require_field(t, "coeffs"), "coeffs");
        sys.terms.push_back(std::move(term));
    }
    validate_system(sys);
    return sys;
}

json system_to_json(const GlvSystem& sys) {
    json j;
    j["dimension"] = sys.dimension;
    json terms = json::array();
    for (const GlvTerm& t : sys.terms)
        terms.push_back(
            json{{"exponent", vector_to_json(t.exponent)}, {"coeffs", vector_to_json(t.coeffs)}});
    j["terms"] = std::move(terms);
    return j;
}

json structural_report_to_json(const StructuralReport& rep) {
    json j;
    j["num_vertices"] = rep.num_vertices;
    j["num_linkage_classes"] = rep.num_linkage_classes;
    j["dim_stoichiometric_subspace"] = rep.dim_stoichiometric;
    j["deficiency"] = rep.deficiency;
    j["weakly_reversible"] = rep.weakly_reversible;
    j["linkage_class"] = rep.linkage_class;
    j["strong_component"] = rep.strong_component;
    return j;
}

json balance_certificate_to_json(const BalanceCertificate& cert) {
    json j;
    j["type"] = "complex_balanced";
    j["xi_star"] = vector_to_json(cert.xi_star);
    j["x_star"] = vector_to_json(cert.x_star);
    j["kernel_vector"] = vector_to_json(cert.kernel_vector);
    j["per_class_scalars"] = vector_to_json(cert.per_class_scalars);
    j["max_residual"] = cert.max_residual;
    return j;
}

json stiemke_certificate_to_json(const StiemkeCertificate& cert) {
    json j;
    j["type"] = "stiemke";
    j["p"] = vector_to_json(cert.p);
    j["slack"] = vector_to_json(cert.slack);
    j["strict_edge"] = cert.strict_edge;
    return j;
}

json balance_outcome_to_json(const EGraph& g, double tol) {
    const BalanceAnalysis analysis = analyze_balance(g, tol);
    if (analysis.certificate) return balance_certificate_to_json(*analysis.certificate);
    const auto stiemke = stiemke_vector(g);
    if (stiemke) return stiemke_certificate_to_json(*stiemke);
    json j;
    j["type"] = "undetermined";
    j["weakly_reversible"] = analysis.weakly_reversible;
    if (std::isnan(analysis.least_squares_residual))
        j["balance_residual"] = nullptr;
    else
        j["balance_residual"] = analysis.least_squares_residual;
    j["stiemke_feasible"] = false;
    return j;
}

json realization_report_to_json(const RealizationResult& result) {
    json j;
    j["feasible"] = true;
    j["d"] = vector_to_json(result.d);
    j["match_residual"] = result.match_residual;
    if (result.balanced_at)
        j["balanced_at"] = vector_to_json(*result.balanced_at);
    else
        j["balanced_at"] = nullptr;
    j["num_vertices"] = result.graph.num_vertices();
    j["num_edges"] = result.graph.num_edges();
    return j;
}

json infeasibility_to_json(const Infeasibility& inf) {
    json j;
    j["feasible"] = false;
    j["phase1_gap"] = inf.phase1_gap;
    j["infeasibility_direction"] =
        inf.farkas.size() ? vector_to_json(inf.farkas) : json(nullptr);
    j["detail"] = inf.detail;
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const int n = traj.size() ? static_cast<int>(traj.states[0].size()) : 0;
    const int k = static_cast<int>(traj.invariant_basis.cols());
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    for (int i = 1; i <= n; ++i) os << ",xi" << i;
    os << ",lyapunov";
    for (int i = 1; i <= k; ++i) os << ",cons_" << i;
    os << "\n";
    for (std::size_t row = 0; row < traj.size(); ++row) {
        os << format_double(traj.times[row]);
        for (int i = 0; i < n; ++i) os << "," << format_double(traj.states[row](i));
        for (int i = 0; i < n; ++i) os << "," << format_double(traj.states_log[row](i));
        os << "," << format_double(traj.lyapunov[row]);
        for (int i = 0; i < k; ++i) os << "," << format_double(traj.conservation[row](i));
        os << "\n";
    }
}

json trajectory_summary_to_json(const Trajectory& traj) {
    json j;
    j["steps"] = traj.size();
    j["final_time"] = traj.size() ? traj.times.back() : 0.0;
    if (traj.size()) j["final_state"] = vector_to_json(traj.states.back());
    if (traj.converged_to)
        j["converged_to"] = vector_to_json(traj.converged_to->array().exp().matrix());
    else
        j["converged_to"] = nullptr;
    double max_cons = 0.0;
    for (const Eigen::VectorXd& c : traj.conservation)
        if (c.size()) max_cons = std::max(max_cons, c.lpNorm<Eigen::Infinity>());
    j["max_conservation_residual"] = max_cons;
    if (!traj.lyapunov.empty() && !std::isnan(traj.lyapunov.front())) {
        j["lyapunov_initial"] = traj.lyapunov.front();
        j["lyapunov_final"] = traj.lyapunov.back();
    }
    if (traj.failure) {
        j["failure"] = errc_name(*traj.failure);
        j["failure_detail"] = traj.failure_detail;
    } else {
        j["failure"] = nullptr;
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& err) { // parse errors and number overflow
        fail(errc::parse_error, err.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

EGraph load_graph(const std::string& path) { return graph_from_json(load_json_file(path)); }

GlvSystem load_system(const std::string& path) { return system_from_json(load_json_file(path)); }

Eigen::MatrixXd vertices_from_json(const json& j, int expected_dim) {
    const json* arr = &j;
    if (j.is_object() && j.contains("vertices")) arr = &j.at("vertices");
    if (!arr->is_array()) fail(errc::parse_error, "vertex list must be an array");
    Eigen::MatrixXd V(expected_dim, static_cast<int>(arr->size()));
    for (std::size_t i = 0; i < arr->size(); ++i) {
        const Eigen::VectorXd p = vector_from_json((*arr)[i], "vertex");
        if (p.size() != expected_dim)
            fail(errc::parse_error, "vertex " + std::to_string(i) + " size");
        V.col(static_cast<int>(i)) = p;
    }
    return V;
}

} // namespace glv
