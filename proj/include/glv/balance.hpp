#ifndef GLV_BALANCE_HPP
#define GLV_BALANCE_HPP

#include <optional>

#include <Eigen/Dense>

#include "glv/egraph.hpp"

namespace glv {

/// Per-vertex relative imbalance |outflow - inflow| / max(outflow, inflow, eps)
/// of the weighted flows at a state x > 0.
struct BalanceReport {
    Eigen::VectorXd residuals;
    double max_residual = 0.0;
    bool balanced = false;
};

BalanceReport check_balance_at(const EGraph& g, const Eigen::VectorXd& x, double tol = 1e-8);

/// Strictly positive c with A_kappa c = 0, assembled per linkage class and
/// normalized so the first vertex of each class carries 1.  Exists exactly
/// when the graph is weakly reversible; otherwise nullopt.
std::optional<Eigen::VectorXd> positive_kernel(const EGraph& g);

/// Complex balanced steady state in log coordinates plus the data proving it.
struct BalanceCertificate {
    Eigen::VectorXd xi_star;           // log-space steady state
    Eigen::VectorXd x_star;            // exp(xi_star)
    Eigen::VectorXd kernel_vector;     // positive kernel of A_kappa
    Eigen::VectorXd per_class_scalars; // mu, one per linkage class
    double max_residual = 0.0;         // worst relative vertex imbalance at x_star
};

/// Everything the balance decision produced, including the least-squares
/// residual when no certificate exists (NaN when there is no positive kernel).
struct BalanceAnalysis {
    std::optional<BalanceCertificate> certificate;
    double least_squares_residual = 0.0;
    bool weakly_reversible = false;
};

/// Solves Y^T xi + sum_l mu_l 1_{class l} = log c in the least-squares sense;
/// a certificate is produced when the residual and the direct balance check
/// both pass tol.
BalanceAnalysis analyze_balance(const EGraph& g, double tol = 1e-8);
std::optional<BalanceCertificate> find_balanced_state(const EGraph& g, double tol = 1e-8);

/// Affine parametrization of the steady-state set {xi_star + S_perp}.
struct SteadyStateSet {
    Eigen::VectorXd xi_star;
    Eigen::MatrixXd sperp; // orthonormal columns
};

SteadyStateSet steady_state_set(const BalanceCertificate& cert, const SubspaceBasis& basis);

/// Unique point of (xi_star + S_perp) intersected with (xi0 + D S), the
/// steady state in the compatibility class of xi0 under scaling d > 0.
Eigen::VectorXd state_in_class(const BalanceCertificate& cert, const SubspaceBasis& basis,
                               const Eigen::VectorXd& d, const Eigen::VectorXd& xi0,
                               double residual_tol = 1e-10);

/// Vector p with <p, y_j - y_i> >= 0 on every edge and strictly positive on
/// at least one; certifies that no steady state or periodic orbit exists.
struct StiemkeCertificate {
    Eigen::VectorXd p;
    Eigen::VectorXd slack; // per-edge <p, y_j - y_i>
    int strict_edge = -1;
};

std::optional<StiemkeCertificate> stiemke_vector(const EGraph& g);

} // namespace glv

#endif
