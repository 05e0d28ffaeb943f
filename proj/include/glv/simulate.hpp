#ifndef GLV_SIMULATE_HPP
#define GLV_SIMULATE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "glv/balance.hpp"
#include "glv/dynamics.hpp"

namespace glv {

struct IntegrateOptions {
    double t_end = 50.0;
    double rel_tol = 1e-9;            // accepted step: local error <= rel_tol * (1 + |xi|_inf)
    double convergence_factor = 1e-9; // stop when |rhs|_inf <= factor * (1 + |rhs(xi0)|_inf)
    double min_step = 1e-14;
    std::size_t max_steps = 2'000'000;
};

/// Accepted integration steps in log coordinates with diagnostics attached.
/// `failure` is set (instead of throwing) when the run stops on overflow or
/// step underflow, so the partial trajectory stays available.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states_log; // xi(t)
    std::vector<Eigen::VectorXd> states;     // exp(xi(t))
    std::vector<Eigen::VectorXd> derivs;     // dxi/dt at accepted steps
    std::vector<double> lyapunov;            // NaN when no reference supplied
    std::vector<Eigen::VectorXd> conservation; // <w_k, xi - xi0> per invariant
    std::optional<Eigen::VectorXd> converged_to;

    Eigen::MatrixXd invariant_basis;            // orthonormal basis of (D S)^perp
    std::optional<Eigen::VectorXd> lyapunov_ref; // zeta used for L
    Eigen::VectorXd d_weights;                   // weights 1/d_i of L

    std::optional<errc> failure;
    std::string failure_detail;

    std::size_t size() const { return times.size(); }
};

/// Integrate d(xi)/dt = diag(d) phi(xi) from xi0 = log(x0) with an embedded
/// Dormand-Prince 5(4) pair and PI step control.  Records, per accepted step,
/// the conservation residuals along (D S)^perp and, when a certificate is
/// supplied, the scaled Lyapunov value against the in-class steady state.
Trajectory integrate(const ScaledSystem& sys, const Eigen::VectorXd& x0,
                     const IntegrateOptions& opts = {},
                     const BalanceCertificate* cert = nullptr,
                     const SubspaceBasis* basis = nullptr);

/// Same integrator for a bare GLV system in log coordinates (no graph, hence
/// no conservation or Lyapunov bookkeeping).
Trajectory integrate_system(const GlvSystem& sys, const Eigen::VectorXd& x0,
                            const IntegrateOptions& opts = {});

/// sum_i (1/d_i) (log x_i - log x*_i)^2.
double lyapunov_value(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star,
                      const Eigen::VectorXd& d);

/// True iff -<p, xi(t)> is non-increasing along the trajectory, allowing a
/// per-step slack of 1e-9 * (1 + |V(t_k)|).
bool linear_lyapunov_check(const EGraph& g, const StiemkeCertificate& cert,
                           const Trajectory& traj);

/// Trajectory rows at the accepted steps merged with `count` uniformly spaced
/// samples obtained by cubic Hermite interpolation; diagnostics recomputed at
/// the sample points.
Trajectory with_uniform_samples(const Trajectory& traj, int count);

} // namespace glv

#endif
