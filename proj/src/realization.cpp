#include "glv/realization.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "glv/simplex.hpp"

namespace glv {

namespace {

constexpr double kMatchTol = 1e-9; // exponent-to-candidate matching

int find_candidate(const Eigen::MatrixXd& candidates, const Eigen::VectorXd& point) {
    for (int c = 0; c < candidates.cols(); ++c)
        if ((candidates.col(c) - point).lpNorm<Eigen::Infinity>() <= kMatchTol) return c;
    return -1;
}

// Cooperative quadratic structure (r, A) of dx/dt = diag(x)(r + A x).
// Throws errc::invalid_structure if the system is not of this shape.
void extract_cooperative(const GlvSystem& sys, Eigen::VectorXd& r, Eigen::MatrixXd& A) {
    const int n = sys.dimension;
    r = Eigen::VectorXd::Zero(n);
    A = Eigen::MatrixXd::Zero(n, n);
    bool saw_constant = false;
    for (const GlvTerm& term : sys.terms) {
        if (term.exponent.lpNorm<Eigen::Infinity>() <= kMatchTol) {
            r = term.coeffs;
            saw_constant = true;
            continue;
        }
        int axis = -1;
        for (int i = 0; i < n; ++i) {
            const double e = term.exponent(i);
            if (std::abs(e - 1.0) <= kMatchTol) {
                if (axis >= 0) fail(errc::invalid_structure, "non-quadratic term");
                axis = i;
            } else if (std::abs(e) > kMatchTol) {
                fail(errc::invalid_structure, "exponent is neither 0 nor a unit vector");
            }
        }
        if (axis < 0) fail(errc::invalid_structure, "exponent is neither 0 nor a unit vector");
        A.col(axis) = term.coeffs;
    }
    if (!saw_constant) fail(errc::invalid_structure, "missing constant (growth-rate) term");
}

} // namespace

GlvSystem cooperative_system(const Eigen::VectorXd& r, const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(r.size());
    GlvSystem sys;
    sys.dimension = n;
    if (r.lpNorm<Eigen::Infinity>() > 0)
        sys.terms.push_back({Eigen::VectorXd::Zero(n), r});
    for (int j = 0; j < n; ++j) {
        if (A.col(j).lpNorm<Eigen::Infinity>() == 0) continue;
        sys.terms.push_back({Eigen::VectorXd::Unit(n, j), A.col(j)});
    }
    validate_system(sys);
    return sys;
}

GlvSystem hoi_system(const Eigen::Vector2d& r, const Eigen::Matrix2d& a,
                     const Eigen::Vector2d& b) {
    GlvSystem sys;
    sys.dimension = 2;
    auto push = [&sys](double e1, double e2, double c1, double c2) {
        if (c1 == 0.0 && c2 == 0.0) return;
        sys.terms.push_back({Eigen::Vector2d(e1, e2), Eigen::Vector2d(c1, c2)});
    };
    push(0, 0, r(0), r(1));
    push(1, 0, -a(0, 0), a(1, 0));
    push(0, 1, a(0, 1), -a(1, 1));
    push(1, 1, -b(0), -b(1));
    validate_system(sys);
    return sys;
}

Eigen::MatrixXd cooperative_candidates(int n) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n + 1);
    C.rightCols(n).setIdentity();
    return C;
}

Eigen::MatrixXd square_candidates() {
    Eigen::MatrixXd C(2, 4);
    C << 0, 1, 1, 0,
         0, 0, 1, 1;
    return C;
}

Eigen::MatrixXd default_candidates(const GlvSystem& sys) {
    const int n = sys.dimension;
    std::vector<Eigen::VectorXd> points;
    auto push_unique = [&points](const Eigen::VectorXd& p) {
        for (const auto& q : points)
            if ((q - p).lpNorm<Eigen::Infinity>() <= kMatchTol) return;
        points.push_back(p);
    };
    for (const GlvTerm& term : sys.terms) push_unique(term.exponent);
    push_unique(Eigen::VectorXd::Zero(n));
    for (const GlvTerm& term : sys.terms)
        for (int i = 0; i < n; ++i) {
            if (term.coeffs(i) > 0) push_unique(term.exponent + Eigen::VectorXd::Unit(n, i));
            if (term.coeffs(i) < 0) push_unique(term.exponent - Eigen::VectorXd::Unit(n, i));
        }
    Eigen::MatrixXd C(n, static_cast<int>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k) C.col(static_cast<int>(k)) = points[k];
    return C;
}

std::variant<Eigen::VectorXd, Infeasibility> find_scaling(const Eigen::VectorXd& r,
                                                          const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(r.size());
    if (A.rows() != n || A.cols() != n) fail(errc::dimension_mismatch, "A must be n x n");
    for (int i = 0; i < n; ++i) {
        if (!(r(i) > 0)) fail(errc::invalid_structure, "growth rates must be positive");
        if (!(A(i, i) < 0)) fail(errc::invalid_structure, "diagonal entries must be negative");
        for (int j = 0; j < n; ++j)
            if (i != j && A(i, j) < 0)
                fail(errc::invalid_structure, "off-diagonal entries must be nonnegative");
    }

    // d = 1 + u with u >= 0; column condition sum_i d_i a_ij <= 0.
    lp::Problem prob(n);
    for (int j = 0; j < n; ++j)
        prob.add_constraint(A.col(j), lp::Rel::le, -A.col(j).sum());
    const lp::Result sol = lp::solve(prob, Eigen::VectorXd::Ones(n));
    if (sol.status != lp::Status::optimal)
        return Infeasibility{sol.phase1_gap, sol.farkas, "no positive diagonal scaling exists"};
    return Eigen::VectorXd(Eigen::VectorXd::Ones(n) + sol.x);
}

HoiWitness hoi_condition(const Eigen::Vector2d& r, const Eigen::Matrix2d& a,
                         const Eigen::Vector2d& b, const Eigen::Vector2d& x_star,
                         double steady_tol, double sign_tol) {
    for (int i = 0; i < 2; ++i)
        if (!(x_star(i) > 0)) fail(errc::non_positive_state, "x_star");
    const double x1 = x_star(0), x2 = x_star(1);
    const double g1 = r(0) - a(0, 0) * x1 + a(0, 1) * x2 - b(0) * x1 * x2;
    const double g2 = r(1) + a(1, 0) * x1 - a(1, 1) * x2 - b(1) * x1 * x2;
    const double scale1 = 1.0 + std::abs(r(0)) + std::abs(a(0, 0) * x1) + std::abs(a(0, 1) * x2) +
                          std::abs(b(0) * x1 * x2);
    const double scale2 = 1.0 + std::abs(r(1)) + std::abs(a(1, 0) * x1) + std::abs(a(1, 1) * x2) +
                          std::abs(b(1) * x1 * x2);
    if (std::abs(g1) > steady_tol * scale1 || std::abs(g2) > steady_tol * scale2)
        fail(errc::not_a_steady_state, "x_star does not solve the model");

    HoiWitness w;
    w.lhs = r(0) - a(0, 0) * x1;
    w.rhs = a(1, 1) * x2 - r(1);
    const auto sign_of = [sign_tol](double z) { return std::abs(z) <= sign_tol ? 0 : (z > 0 ? 1 : -1); };
    const int s1 = sign_of(w.lhs), s2 = sign_of(w.rhs);
    w.holds = (s1 == s2);
    if (w.holds && s1 != 0) w.d = Eigen::Vector2d(w.rhs / w.lhs, 1.0);
    return w;
}

RealizeOutcome realize(const RealizationProblem& p, double zero_tol) {
    validate_system(p.system);
    const int n = p.system.dimension;
    const Eigen::MatrixXd& C = p.candidate_vertices;
    if (C.rows() != n) fail(errc::dimension_mismatch, "candidate vertices");
    const int M = static_cast<int>(C.cols());

    // Per-candidate target coefficient vectors (zero when not a term exponent).
    std::vector<Eigen::VectorXd> target(M, Eigen::VectorXd::Zero(n));
    for (const GlvTerm& term : p.system.terms) {
        const int c = find_candidate(C, term.exponent);
        if (c < 0)
            fail(errc::missing_vertex, "term exponent not among candidate vertices");
        target[c] = term.coeffs;
    }

    Eigen::VectorXd d_eff;
    if (p.search_scaling) {
        Eigen::VectorXd r;
        Eigen::MatrixXd A;
        extract_cooperative(p.system, r, A);
        auto scaling = find_scaling(r, A);
        if (std::holds_alternative<Infeasibility>(scaling))
            return std::get<Infeasibility>(scaling);
        d_eff = std::get<Eigen::VectorXd>(scaling).cwiseInverse();
    } else {
        d_eff = p.d.value_or(Eigen::VectorXd::Ones(n));
        if (d_eff.size() != n) fail(errc::dimension_mismatch, "scaling vector");
        for (int i = 0; i < n; ++i)
            if (!(d_eff(i) > 0)) fail(errc::non_positive_state, "scaling must be positive");
    }

    // One unknown kappa per ordered candidate pair.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(M) * (M - 1));
    for (int u = 0; u < M; ++u)
        for (int v = 0; v < M; ++v)
            if (u != v) pairs.emplace_back(u, v);
    const int nk = static_cast<int>(pairs.size());

    lp::Problem prob(nk);
    // Coefficient match per source vertex and species.
    for (int u = 0; u < M; ++u)
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nk);
            for (int k = 0; k < nk; ++k)
                if (pairs[k].first == u) row(k) = C(i, pairs[k].second) - C(i, u);
            prob.add_constraint(row, lp::Rel::eq, target[u](i) / d_eff(i));
        }

    // Complex balance at x_star: outflow equals inflow at every vertex.
    if (p.x_star) {
        const Eigen::VectorXd& xs = *p.x_star;
        if (xs.size() != n) fail(errc::dimension_mismatch, "x_star size");
        for (int i = 0; i < n; ++i)
            if (!(xs(i) > 0)) fail(errc::non_positive_state, "x_star");
        const Eigen::VectorXd logx = xs.array().log().matrix();
        Eigen::VectorXd mono(M);
        for (int c = 0; c < M; ++c) mono(c) = std::exp(logx.dot(C.col(c)));
        for (int u = 0; u < M; ++u) {
            Eigen::VectorXd row = Eigen::VectorXd::Zero(nk);
            for (int k = 0; k < nk; ++k) {
                if (pairs[k].first == u) row(k) += mono(u);
                if (pairs[k].second == u) row(k) -= mono(pairs[k].first);
            }
            prob.add_constraint(row, lp::Rel::eq, 0.0);
        }
    }

    const lp::Result sol = lp::solve(prob, Eigen::VectorXd::Ones(nk));
    if (sol.status != lp::Status::optimal)
        return Infeasibility{sol.phase1_gap, sol.farkas, "realization constraints infeasible"};

    // Assemble the subgraph; candidates untouched by any surviving edge drop out.
    std::vector<bool> used(M, false);
    std::vector<std::pair<std::pair<int, int>, double>> kept;
    for (int k = 0; k < nk; ++k)
        if (sol.x(k) > zero_tol) {
            kept.push_back({pairs[k], sol.x(k)});
            used[pairs[k].first] = used[pairs[k].second] = true;
        }
    if (kept.empty()) return Infeasibility{0.0, {}, "no edges survive thresholding"};

    std::vector<int> vertex_id(M, -1);
    int mv = 0;
    for (int c = 0; c < M; ++c)
        if (used[c]) vertex_id[c] = mv++;
    Eigen::MatrixXd V(n, mv);
    for (int c = 0; c < M; ++c)
        if (used[c]) V.col(vertex_id[c]) = C.col(c);
    std::vector<Edge> edges;
    edges.reserve(kept.size());
    for (const auto& [uv, w] : kept)
        edges.push_back({vertex_id[uv.first], vertex_id[uv.second], w});

    RealizationResult result{EGraph(n, std::move(V), std::move(edges)), d_eff, std::nullopt, 0.0};

    // Round trip: diag(d) * generated coefficients must reproduce the target.
    const GlvSystem generated = glv_from_graph(result.graph);
    std::vector<Eigen::VectorXd> got(M, Eigen::VectorXd::Zero(n));
    for (const GlvTerm& term : generated.terms) {
        const int c = find_candidate(C, term.exponent);
        if (c < 0) fail(errc::missing_vertex, "generated exponent escaped candidate set");
        got[c] = term.coeffs;
    }
    double residual = 0.0;
    for (int c = 0; c < M; ++c)
        residual = std::max(
            residual,
            (d_eff.asDiagonal() * got[c] - target[c]).lpNorm<Eigen::Infinity>());
    result.match_residual = residual;

    if (p.x_star) {
        const BalanceReport rep = check_balance_at(result.graph, *p.x_star);
        if (!rep.balanced)
            return Infeasibility{rep.max_residual, {},
                                 "complex balance verification failed after thresholding"};
        result.balanced_at = *p.x_star;
    }
    return result;
}

} // namespace glv
