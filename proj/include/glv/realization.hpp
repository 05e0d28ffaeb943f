#ifndef GLV_REALIZATION_HPP
#define GLV_REALIZATION_HPP

#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "glv/balance.hpp"
#include "glv/dynamics.hpp"
#include "glv/egraph.hpp"

namespace glv {

/// Search for an E-graph with nonnegative weights whose generated field,
/// rescaled by diag(d), equals the target system.
struct RealizationProblem {
    GlvSystem system;
    Eigen::MatrixXd candidate_vertices;    // n x M, every term exponent must appear
    std::optional<Eigen::VectorXd> x_star; // enforce complex balance here
    std::optional<Eigen::VectorXd> d;      // fixed positive scaling (default ones)
    bool search_scaling = false;           // cooperative-LV scaling search instead
};

struct RealizationResult {
    EGraph graph;
    Eigen::VectorXd d;
    std::optional<Eigen::VectorXd> balanced_at;
    double match_residual = 0.0;
};

struct Infeasibility {
    double phase1_gap = 0.0;
    Eigen::VectorXd farkas;
    std::string detail;
};

using RealizeOutcome = std::variant<RealizationResult, Infeasibility>;

/// Linear feasibility over edge weights kappa >= 0 on the complete candidate
/// graph; equality constraints match the d-rescaled coefficients per source
/// vertex, plus complex-balance equalities at x_star when given.  Weights at
/// or below zero_tol are dropped from the result graph.
RealizeOutcome realize(const RealizationProblem& p, double zero_tol = 1e-10);

/// Positive d with d >= 1 and sum_i d_i a_ij <= 0 for every column j, for a
/// cooperative quadratic system (r > 0, off-diagonal a_ij >= 0, a_ii < 0).
std::variant<Eigen::VectorXd, Infeasibility> find_scaling(const Eigen::VectorXd& r,
                                                          const Eigen::MatrixXd& A);

/// Sign test for the two-species higher-order-interaction model:
/// holds iff sign(r1 - a11 x1*) == sign(a22 x2* - r2), with the witnessing
/// (d1, d2) solving d1 (r1 - a11 x1*) = d2 (a22 x2* - r2).
struct HoiWitness {
    bool holds = false;
    Eigen::Vector2d d{1.0, 1.0};
    double lhs = 0.0; // r1 - a11 x1*
    double rhs = 0.0; // a22 x2* - r2
};

/// Model: dx1/dt = x1 (r1 - a11 x1 + a12 x2 - b1 x1 x2),
///        dx2/dt = x2 (r2 + a21 x1 - a22 x2 - b2 x1 x2).
/// Throws errc::not_a_steady_state unless x_star solves it to steady_tol.
HoiWitness hoi_condition(const Eigen::Vector2d& r, const Eigen::Matrix2d& a,
                         const Eigen::Vector2d& b, const Eigen::Vector2d& x_star,
                         double steady_tol = 1e-8, double sign_tol = 1e-10);

/// The two-species HOI model above as a GlvSystem.
GlvSystem hoi_system(const Eigen::Vector2d& r, const Eigen::Matrix2d& a, const Eigen::Vector2d& b);

/// Cooperative quadratic system dx/dt = diag(x)(r + A x) as a GlvSystem.
GlvSystem cooperative_system(const Eigen::VectorXd& r, const Eigen::MatrixXd& A);

/// Candidate vertices {0, e_1, ..., e_n} used for cooperative realizations.
Eigen::MatrixXd cooperative_candidates(int n);

/// Unit-square candidate vertices (0,0), (1,0), (1,1), (0,1) for the HOI model.
Eigen::MatrixXd square_candidates();

/// Default candidate set: term exponents, the origin, and exponent +/- e_i
/// for every coordinate whose coefficient sign requires an outward edge.
Eigen::MatrixXd default_candidates(const GlvSystem& sys);

} // namespace glv

#endif
