#include "glv/dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace glv {

namespace {

constexpr double kExpGuard = 700.0; // exp overflows just above 709

void require_positive(const Eigen::VectorXd& x, int n) {
    if (x.size() != n)
        fail(errc::dimension_mismatch, "state has size " + std::to_string(x.size()) +
                                           ", expected " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (!(x(i) > 0.0) || !std::isfinite(x(i)))
            fail(errc::non_positive_state, "component " + std::to_string(i));
}

double guarded_exp(double a) {
    if (a > kExpGuard)
        fail(errc::overflow, "exponent argument " + std::to_string(a));
    return std::exp(a);
}

} // namespace

void validate_system(const GlvSystem& sys) {
    if (sys.dimension < 1)
        fail(errc::dimension_mismatch, "system dimension must be >= 1");
    if (sys.terms.empty())
        fail(errc::empty_system, "system has no terms");
    for (std::size_t t = 0; t < sys.terms.size(); ++t) {
        const GlvTerm& term = sys.terms[t];
        if (term.exponent.size() != sys.dimension || term.coeffs.size() != sys.dimension)
            fail(errc::dimension_mismatch, "term " + std::to_string(t));
        if (!term.exponent.allFinite() || !term.coeffs.allFinite())
            fail(errc::dimension_mismatch, "term " + std::to_string(t) + " has non-finite entries");
        if (term.coeffs.lpNorm<Eigen::Infinity>() <= 1e-14)
            fail(errc::empty_system, "term " + std::to_string(t) + " has all-zero coefficients");
        for (std::size_t s = 0; s < t; ++s)
            if ((term.exponent - sys.terms[s].exponent).lpNorm<Eigen::Infinity>() <= 1e-12)
                fail(errc::duplicate_vertex,
                     "terms " + std::to_string(s) + " and " + std::to_string(t) +
                         " share an exponent");
    }
}

ScaledSystem::ScaledSystem(EGraph g)
    : graph(std::move(g)), d(Eigen::VectorXd::Ones(graph.dimension())) {}

ScaledSystem::ScaledSystem(EGraph g, Eigen::VectorXd d_diag)
    : graph(std::move(g)), d(std::move(d_diag)) {
    if (d.size() != graph.dimension())
        fail(errc::dimension_mismatch, "scaling vector size");
    for (int i = 0; i < d.size(); ++i)
        if (!(d(i) > 0.0) || !std::isfinite(d(i)))
            fail(errc::non_positive_state, "scaling component " + std::to_string(i));
}

Eigen::VectorXd mass_action_rhs(const EGraph& g, const Eigen::VectorXd& x) {
    require_positive(x, g.dimension());
    const Eigen::VectorXd xi = x.array().log().matrix();
    Eigen::VectorXd f = Eigen::VectorXd::Zero(g.dimension());
    for (const Edge& e : g.edges()) {
        const double mono = std::exp(xi.dot(g.vertex_matrix().col(e.src)));
        f.noalias() +=
            (e.weight * mono) * (g.vertex_matrix().col(e.dst) - g.vertex_matrix().col(e.src));
    }
    return f;
}

Eigen::VectorXd glv_rhs(const ScaledSystem& sys, const Eigen::VectorXd& x) {
    Eigen::VectorXd f = mass_action_rhs(sys.graph, x);
    return (sys.d.array() * x.array() * f.array()).matrix();
}

Eigen::VectorXd polyexp_rhs(const ScaledSystem& sys, const Eigen::VectorXd& xi) {
    const EGraph& g = sys.graph;
    if (xi.size() != g.dimension())
        fail(errc::dimension_mismatch, "log-state size");
    Eigen::VectorXd f = Eigen::VectorXd::Zero(g.dimension());
    for (const Edge& e : g.edges()) {
        const double mono = guarded_exp(xi.dot(g.vertex_matrix().col(e.src)));
        f.noalias() +=
            (e.weight * mono) * (g.vertex_matrix().col(e.dst) - g.vertex_matrix().col(e.src));
    }
    return (sys.d.array() * f.array()).matrix();
}

GlvSystem glv_from_graph(const EGraph& g, double drop_tol) {
    GlvSystem sys;
    sys.dimension = g.dimension();
    std::vector<Eigen::VectorXd> coeffs(g.num_vertices(),
                                        Eigen::VectorXd::Zero(g.dimension()));
    std::vector<bool> is_source(g.num_vertices(), false);
    for (const Edge& e : g.edges()) {
        coeffs[e.src] += e.weight * (g.vertex_matrix().col(e.dst) - g.vertex_matrix().col(e.src));
        is_source[e.src] = true;
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!is_source[v]) continue;
        if (coeffs[v].lpNorm<Eigen::Infinity>() < drop_tol) continue; // exact cancellation
        sys.terms.push_back({g.vertex(v), coeffs[v]});
    }
    if (sys.terms.empty())
        fail(errc::empty_system, "graph generates the zero field");
    return sys;
}

Eigen::VectorXd eval_glv(const GlvSystem& sys, const Eigen::VectorXd& x) {
    require_positive(x, sys.dimension);
    const Eigen::VectorXd xi = x.array().log().matrix();
    Eigen::VectorXd rate = Eigen::VectorXd::Zero(sys.dimension);
    for (const GlvTerm& term : sys.terms)
        rate.noalias() += std::exp(xi.dot(term.exponent)) * term.coeffs;
    return (x.array() * rate.array()).matrix();
}

Eigen::VectorXd glv_log_rhs(const GlvSystem& sys, const Eigen::VectorXd& xi) {
    if (xi.size() != sys.dimension)
        fail(errc::dimension_mismatch, "log-state size");
    Eigen::VectorXd rate = Eigen::VectorXd::Zero(sys.dimension);
    for (const GlvTerm& term : sys.terms)
        rate.noalias() += guarded_exp(xi.dot(term.exponent)) * term.coeffs;
    return rate;
}

Eigen::VectorXd vertex_monomials(const EGraph& g, const Eigen::VectorXd& x) {
    require_positive(x, g.dimension());
    const Eigen::VectorXd xi = x.array().log().matrix();
    return (g.vertex_matrix().transpose() * xi).array().exp().matrix();
}

} // namespace glv
