#include "glv/balance.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "glv/dynamics.hpp"
#include "glv/simplex.hpp"

namespace glv {

BalanceReport check_balance_at(const EGraph& g, const Eigen::VectorXd& x, double tol) {
    const Eigen::VectorXd mono = vertex_monomials(g, x);
    const int m = g.num_vertices();
    Eigen::VectorXd outflow = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd inflow = Eigen::VectorXd::Zero(m);
    for (const Edge& e : g.edges()) {
        outflow(e.src) += e.weight * mono(e.src);
        inflow(e.dst) += e.weight * mono(e.src);
    }
    BalanceReport rep;
    rep.residuals.resize(m);
    const double floor = std::numeric_limits<double>::min();
    for (int i = 0; i < m; ++i)
        rep.residuals(i) =
            std::abs(outflow(i) - inflow(i)) / std::max({outflow(i), inflow(i), floor});
    rep.max_residual = m > 0 ? rep.residuals.maxCoeff() : 0.0;
    rep.balanced = rep.max_residual <= tol;
    return rep;
}

std::optional<Eigen::VectorXd> positive_kernel(const EGraph& g) {
    int num_scc = 0;
    const std::vector<int> scc = strong_components(g, &num_scc);
    for (const Edge& e : g.edges())
        if (scc[e.src] != scc[e.dst]) return std::nullopt; // not weakly reversible

    int num_classes = 0;
    const std::vector<int> cls = linkage_classes(g, &num_classes);
    const Eigen::MatrixXd A = kirchhoff_matrix(g);
    const int m = g.num_vertices();

    Eigen::VectorXd c(m);
    for (int l = 0; l < num_classes; ++l) {
        std::vector<int> members;
        for (int v = 0; v < m; ++v)
            if (cls[v] == l) members.push_back(v);
        const int sz = static_cast<int>(members.size());
        if (sz == 1) { // isolated vertex: 1x1 zero block
            c(members[0]) = 1.0;
            continue;
        }
        Eigen::MatrixXd block(sz, sz);
        for (int i = 0; i < sz; ++i)
            for (int j = 0; j < sz; ++j) block(i, j) = A(members[i], members[j]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeFullV);
        Eigen::VectorXd v = svd.matrixV().col(sz - 1);
        v /= v(0);
        // Strong connectivity makes the kernel one-dimensional and positive;
        // verify rather than trust the decomposition.
        if ((v.array() <= 1e-12).any()) return std::nullopt;
        if ((block * v).lpNorm<Eigen::Infinity>() >
            1e-10 * std::max(1.0, block.lpNorm<Eigen::Infinity>()) * v.lpNorm<Eigen::Infinity>())
            return std::nullopt;
        for (int i = 0; i < sz; ++i) c(members[i]) = v(i);
    }
    return c;
}

BalanceAnalysis analyze_balance(const EGraph& g, double tol) {
    BalanceAnalysis analysis;
    analysis.least_squares_residual = std::numeric_limits<double>::quiet_NaN();

    int num_scc = 0;
    const std::vector<int> scc = strong_components(g, &num_scc);
    analysis.weakly_reversible = true;
    for (const Edge& e : g.edges())
        if (scc[e.src] != scc[e.dst]) analysis.weakly_reversible = false;

    const auto kernel = positive_kernel(g);
    if (!kernel) return analysis;

    int num_classes = 0;
    const std::vector<int> cls = linkage_classes(g, &num_classes);
    const int m = g.num_vertices();
    const int n = g.dimension();

    // Rows: <y_i, xi> + mu_{class(i)} = log c_i.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, n + num_classes);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        M.row(i).head(n) = g.vertex_matrix().col(i).transpose();
        M(i, n + cls[i]) = 1.0;
        b(i) = std::log((*kernel)(i));
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd z = svd.solve(b); // minimum-norm least squares
    const double residual = (M * z - b).lpNorm<Eigen::Infinity>();
    analysis.least_squares_residual = residual;
    if (residual > tol * (1.0 + b.lpNorm<Eigen::Infinity>())) return analysis;

    BalanceCertificate cert;
    cert.xi_star = z.head(n);
    cert.x_star = cert.xi_star.array().exp().matrix();
    cert.kernel_vector = *kernel;
    cert.per_class_scalars = z.tail(num_classes);
    const BalanceReport rep = check_balance_at(g, cert.x_star, tol);
    cert.max_residual = rep.max_residual;
    if (!rep.balanced) return analysis;
    analysis.certificate = std::move(cert);
    return analysis;
}

std::optional<BalanceCertificate> find_balanced_state(const EGraph& g, double tol) {
    return analyze_balance(g, tol).certificate;
}

SteadyStateSet steady_state_set(const BalanceCertificate& cert, const SubspaceBasis& basis) {
    if (cert.xi_star.size() != basis.dimension)
        fail(errc::dimension_mismatch, "certificate/basis dimension");
    return SteadyStateSet{cert.xi_star, basis.basis_Sperp};
}

Eigen::VectorXd state_in_class(const BalanceCertificate& cert, const SubspaceBasis& basis,
                               const Eigen::VectorXd& d, const Eigen::VectorXd& xi0,
                               double residual_tol) {
    const int n = basis.dimension;
    if (cert.xi_star.size() != n || d.size() != n || xi0.size() != n)
        fail(errc::dimension_mismatch, "state_in_class inputs");
    for (int i = 0; i < n; ++i)
        if (!(d(i) > 0.0)) fail(errc::non_positive_state, "scaling component " + std::to_string(i));

    const int k = static_cast<int>(basis.basis_Sperp.cols());
    const int s = static_cast<int>(basis.basis_S.cols());

    // xi_star + Sperp a = xi0 + D S b  =>  [Sperp | -D S] [a; b] = xi0 - xi_star.
    Eigen::MatrixXd sys(n, k + s);
    sys.leftCols(k) = basis.basis_Sperp;
    sys.rightCols(s) = -(d.asDiagonal() * basis.basis_S);
    const Eigen::VectorXd rhs = xi0 - cert.xi_star;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (!lu.isInvertible())
        fail(errc::degenerate_intersection, "affine subspaces do not meet transversally");
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd zeta = cert.xi_star + basis.basis_Sperp * sol.head(k);

    // Membership residuals in both affine sets.
    const double scale = std::max(1.0, rhs.lpNorm<Eigen::Infinity>());
    const double r_perp = (basis.basis_S.transpose() * (zeta - cert.xi_star))
                              .lpNorm<Eigen::Infinity>();
    Eigen::VectorXd in_class = zeta - xi0;
    if (s > 0) {
        const Eigen::MatrixXd ds = d.asDiagonal() * basis.basis_S;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ds);
        const Eigen::MatrixXd q =
            qr.householderQ() * Eigen::MatrixXd::Identity(n, s);
        in_class -= q * (q.transpose() * in_class);
    }
    if (r_perp > residual_tol * scale || in_class.lpNorm<Eigen::Infinity>() > residual_tol * scale)
        fail(errc::degenerate_intersection, "intersection residual above tolerance");
    return zeta;
}

std::optional<StiemkeCertificate> stiemke_vector(const EGraph& g) {
    const int n = g.dimension();
    const int ne = g.num_edges();
    if (ne == 0) return std::nullopt;

    lp::Problem prob(n, /*all_free=*/true);
    Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
    for (int e = 0; e < ne; ++e) {
        const Eigen::VectorXd dir = g.edge_direction(e);
        prob.add_constraint(dir, lp::Rel::ge, 0.0);
        total += dir;
    }
    prob.add_constraint(total, lp::Rel::ge, 1.0); // forces a strict inequality
    const lp::Result sol = lp::solve(prob, Eigen::VectorXd::Zero(n));
    if (sol.status != lp::Status::optimal) return std::nullopt;

    StiemkeCertificate cert;
    cert.p = sol.x;
    cert.slack.resize(ne);
    for (int e = 0; e < ne; ++e) cert.slack(e) = cert.p.dot(g.edge_direction(e));
    // Verify by direct evaluation, independent of solver internals.
    int strict = -1;
    for (int e = 0; e < ne; ++e) {
        if (cert.slack(e) < -1e-10) return std::nullopt;
        if (cert.slack(e) >= 1e-8 && (strict < 0 || cert.slack(e) > cert.slack(strict)))
            strict = e;
    }
    if (strict < 0) return std::nullopt;
    cert.strict_edge = strict;
    return cert;
}

} // namespace glv
