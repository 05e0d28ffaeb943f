#ifndef GLV_DYNAMICS_HPP
#define GLV_DYNAMICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "glv/egraph.hpp"

namespace glv {

/// One generalized-polynomial term: the vector field contributes
/// coeffs[i] * x^exponent to dx_i/dt / x_i.
struct GlvTerm {
    Eigen::VectorXd exponent;
    Eigen::VectorXd coeffs;
};

/// dx_i/dt = x_i * sum_t coeffs_t[i] * x^{exponent_t}; exponents are real
/// vectors (negative and fractional powers allowed).
struct GlvSystem {
    int dimension = 0;
    std::vector<GlvTerm> terms;
};

/// Throws unless: >= 1 term, consistent sizes, finite entries, exponents
/// pairwise distinct, no all-zero coefficient vector.
void validate_system(const GlvSystem& sys);

/// Graph-generated field with a positive diagonal time rescaling:
/// dx/dt = diag(d) diag(x) f_{(G,kappa)}(x).  d = ones means unscaled.
struct ScaledSystem {
    EGraph graph;
    Eigen::VectorXd d;

    explicit ScaledSystem(EGraph g);
    ScaledSystem(EGraph g, Eigen::VectorXd d_diag);
};

/// f_{(G,kappa)}(x) = sum_{(i,j) in E} kappa_ij x^{y_i} (y_j - y_i), x > 0.
Eigen::VectorXd mass_action_rhs(const EGraph& g, const Eigen::VectorXd& x);

/// diag(d) diag(x) f_{(G,kappa)}(x).
Eigen::VectorXd glv_rhs(const ScaledSystem& sys, const Eigen::VectorXd& x);

/// diag(d) phi(xi) with phi(xi) = sum kappa_ij e^{<xi,y_i>} (y_j - y_i).
/// Throws errc::overflow when any exponent argument exceeds 700.
Eigen::VectorXd polyexp_rhs(const ScaledSystem& sys, const Eigen::VectorXd& xi);

/// Expand the graph field into distinct-exponent terms (one per source
/// vertex, coefficient vectors summed over outgoing edges).  Terms whose
/// coefficients are all below drop_tol in magnitude are removed.
GlvSystem glv_from_graph(const EGraph& g, double drop_tol = 1e-14);

/// x_i * sum_t coeffs_t[i] * x^{exponent_t}, x > 0.
Eigen::VectorXd eval_glv(const GlvSystem& sys, const Eigen::VectorXd& x);

/// Per-capita rates evaluated in log coordinates: sum_t coeffs_t e^{<exponent_t, xi>}.
/// This is d(xi)/dt for the system in log coordinates.  Guarded like polyexp_rhs.
Eigen::VectorXd glv_log_rhs(const GlvSystem& sys, const Eigen::VectorXd& xi);

/// x^{y_i} for every vertex, i.e. exp(Y^T log x).
Eigen::VectorXd vertex_monomials(const EGraph& g, const Eigen::VectorXd& x);

} // namespace glv

#endif
