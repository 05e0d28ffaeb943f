#ifndef GLV_SIMPLEX_HPP
#define GLV_SIMPLEX_HPP

#include <vector>

#include <Eigen/Dense>

namespace glv::lp {

enum class Rel { le, ge, eq };
enum class Status { optimal, infeasible, unbounded };

/// Dense linear program: min c^T x subject to the listed constraints, with
/// each variable either nonnegative (default) or free.
struct Problem {
    explicit Problem(int nvars, bool all_free = false)
        : num_vars(nvars), free_var(static_cast<std::size_t>(nvars), all_free) {}

    void add_constraint(const Eigen::VectorXd& coeffs, Rel rel, double value) {
        rows.push_back(coeffs);
        rels.push_back(rel);
        rhs.push_back(value);
    }

    int num_vars;
    std::vector<bool> free_var;
    std::vector<Eigen::VectorXd> rows;
    std::vector<Rel> rels;
    std::vector<double> rhs;
};

struct Result {
    Status status = Status::infeasible;
    Eigen::VectorXd x;       // primal point when optimal
    double objective = 0.0;
    double phase1_gap = 0.0; // residual infeasibility left by phase 1
    Eigen::VectorXd farkas;  // per-constraint multipliers when infeasible
};

/// Two-phase tableau simplex with Bland's rule (deterministic, cycle-free).
/// Rows are normalized to unit max-norm internally; feas_tol bounds the
/// acceptable phase-1 objective on the normalized system.
Result solve(const Problem& p, const Eigen::VectorXd& cost, double pivot_eps = 1e-9,
             double feas_tol = 1e-9);

} // namespace glv::lp

#endif
