#include "glv/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace glv::lp {

namespace {

struct Tableau {
    Eigen::MatrixXd T;       // constraint rows, rhs in last column
    std::vector<int> basis;  // basic column per row
    int num_cols = 0;        // structural + artificial columns (excludes rhs)

    int rows() const { return static_cast<int>(T.rows()); }

    void pivot(int r, int s) {
        T.row(r) /= T(r, s);
        for (int i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double factor = T(i, s);
            if (factor != 0.0) T.row(i) -= factor * T.row(r);
        }
        basis[r] = s;
    }
};

// Bland: entering column = lowest index with reduced cost < -eps among
// allowed columns; leaving row = min ratio, ties broken by lowest basic index.
// Returns false at optimum, throws on unbounded.
bool simplex_iterate(Tableau& tab, Eigen::RowVectorXd& red, double& objective, int allowed_cols,
                     double eps) {
    int entering = -1;
    for (int j = 0; j < allowed_cols; ++j)
        if (red(j) < -eps) {
            entering = j;
            break;
        }
    if (entering < 0) return false;

    int leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.rows(); ++i) {
        const double a = tab.T(i, entering);
        if (a <= eps) continue;
        const double ratio = tab.T(i, tab.num_cols) / a;
        if (ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 &&
             (leaving < 0 || tab.basis[i] < tab.basis[leaving]))) {
            best_ratio = ratio;
            leaving = i;
        }
    }
    if (leaving < 0) throw std::runtime_error("unbounded");

    tab.pivot(leaving, entering);
    // Update reduced costs and objective by the same elimination.
    const double rc = red(entering);
    red -= rc * tab.T.row(leaving).head(tab.num_cols);
    objective += rc * tab.T(leaving, tab.num_cols);
    return true;
}

Eigen::RowVectorXd reduced_costs(const Tableau& tab, const Eigen::VectorXd& costs,
                                 double& objective) {
    Eigen::RowVectorXd red = costs.transpose();
    objective = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
        const double cb = costs(tab.basis[i]);
        if (cb != 0.0) {
            red -= cb * tab.T.row(i).head(tab.num_cols);
            objective += cb * tab.T(i, tab.num_cols);
        }
    }
    return red;
}

} // namespace

Result solve(const Problem& p, const Eigen::VectorXd& cost, double pivot_eps, double feas_tol) {
    const int nv = p.num_vars;
    const int nrows_in = static_cast<int>(p.rows.size());
    if (cost.size() != nv) throw std::invalid_argument("cost size mismatch");

    // Column layout: split free variables, then one slack per inequality.
    std::vector<int> pos_col(nv), neg_col(nv, -1);
    int ncols = 0;
    for (int v = 0; v < nv; ++v) {
        pos_col[v] = ncols++;
        if (p.free_var[v]) neg_col[v] = ncols++;
    }
    std::vector<int> slack_col(nrows_in, -1);
    for (int r = 0; r < nrows_in; ++r)
        if (p.rels[r] != Rel::eq) slack_col[r] = ncols++;

    // Normalize rows, orient rhs >= 0, detect trivial rows.
    std::vector<double> row_scale(nrows_in, 1.0);
    std::vector<double> row_sign(nrows_in, 1.0);
    std::vector<bool> keep(nrows_in, true);
    Result result;
    for (int r = 0; r < nrows_in; ++r) {
        if (p.rows[r].size() != nv) throw std::invalid_argument("constraint size mismatch");
        const double mag = p.rows[r].lpNorm<Eigen::Infinity>();
        if (mag <= pivot_eps * 1e-3) {
            const double b = p.rhs[r];
            const bool ok = (p.rels[r] == Rel::eq && std::abs(b) <= feas_tol) ||
                            (p.rels[r] == Rel::le && b >= -feas_tol) ||
                            (p.rels[r] == Rel::ge && b <= feas_tol);
            if (!ok) {
                result.status = Status::infeasible;
                result.phase1_gap = std::abs(b);
                result.farkas = Eigen::VectorXd::Zero(nrows_in);
                result.farkas(r) = 1.0;
                return result;
            }
            keep[r] = false;
        } else {
            row_scale[r] = mag;
        }
    }

    std::vector<int> orig_row; // tableau row -> input row
    for (int r = 0; r < nrows_in; ++r)
        if (keep[r]) orig_row.push_back(r);
    const int m = static_cast<int>(orig_row.size());

    Tableau tab;
    const int total_cols = ncols + m; // artificials appended
    tab.num_cols = total_cols;
    tab.T = Eigen::MatrixXd::Zero(m, total_cols + 1);
    tab.basis.resize(m);

    for (int i = 0; i < m; ++i) {
        const int r = orig_row[i];
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(total_cols);
        for (int v = 0; v < nv; ++v) {
            const double a = p.rows[r](v) / row_scale[r];
            row(pos_col[v]) = a;
            if (neg_col[v] >= 0) row(neg_col[v]) = -a;
        }
        if (slack_col[r] >= 0) row(slack_col[r]) = (p.rels[r] == Rel::le) ? 1.0 : -1.0;
        double b = p.rhs[r] / row_scale[r];
        if (b < 0) {
            row = -row;
            b = -b;
            row_sign[r] = -1.0;
        }
        row(ncols + i) = 1.0; // artificial
        tab.T.row(i).head(total_cols) = row;
        tab.T(i, total_cols) = b;
        tab.basis[i] = ncols + i;
    }

    // Phase 1: minimize the sum of artificials.
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(total_cols);
    phase1_cost.tail(m).setOnes();
    double objective = 0.0;
    Eigen::RowVectorXd red = reduced_costs(tab, phase1_cost, objective);
    try {
        while (simplex_iterate(tab, red, objective, total_cols, pivot_eps)) {
        }
    } catch (const std::runtime_error&) {
        throw std::logic_error("phase-1 objective cannot be unbounded");
    }

    if (objective > feas_tol) {
        result.status = Status::infeasible;
        result.phase1_gap = objective;
        // Dual multipliers live in the artificial reduced costs: y_i = 1 - r_i.
        result.farkas = Eigen::VectorXd::Zero(nrows_in);
        for (int i = 0; i < m; ++i) {
            const int r = orig_row[i];
            result.farkas(r) = row_sign[r] * (1.0 - red(ncols + i)) / row_scale[r];
        }
        return result;
    }

    // Drive basic artificials out; drop rows that prove redundant.
    std::vector<int> live;
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < ncols) {
            live.push_back(i);
            continue;
        }
        int s = -1;
        for (int j = 0; j < ncols; ++j)
            if (std::abs(tab.T(i, j)) > pivot_eps) {
                s = j;
                break;
            }
        if (s >= 0) {
            tab.pivot(i, s);
            live.push_back(i);
        }
        // else: redundant row, dropped below
    }
    if (static_cast<int>(live.size()) != m) {
        Eigen::MatrixXd T2(static_cast<int>(live.size()), total_cols + 1);
        std::vector<int> basis2;
        std::vector<int> orig2;
        for (std::size_t k = 0; k < live.size(); ++k) {
            T2.row(static_cast<int>(k)) = tab.T.row(live[k]);
            basis2.push_back(tab.basis[live[k]]);
            orig2.push_back(orig_row[live[k]]);
        }
        tab.T = std::move(T2);
        tab.basis = std::move(basis2);
        orig_row = std::move(orig2);
    }

    // Phase 2 over structural columns only.
    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(total_cols);
    for (int v = 0; v < nv; ++v) {
        phase2_cost(pos_col[v]) = cost(v);
        if (neg_col[v] >= 0) phase2_cost(neg_col[v]) = -cost(v);
    }
    red = reduced_costs(tab, phase2_cost, objective);
    try {
        while (simplex_iterate(tab, red, objective, ncols, pivot_eps)) {
        }
    } catch (const std::runtime_error&) {
        result.status = Status::unbounded;
        return result;
    }

    Eigen::VectorXd xs = Eigen::VectorXd::Zero(total_cols);
    for (int i = 0; i < tab.rows(); ++i)
        if (tab.basis[i] < total_cols) xs(tab.basis[i]) = tab.T(i, tab.num_cols);

    result.status = Status::optimal;
    result.objective = objective;
    result.x = Eigen::VectorXd::Zero(nv);
    for (int v = 0; v < nv; ++v) {
        result.x(v) = xs(pos_col[v]);
        if (neg_col[v] >= 0) result.x(v) -= xs(neg_col[v]);
    }
    return result;
}

} // namespace glv::lp
