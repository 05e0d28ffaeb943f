#include "glv/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace glv {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b (order 5) minus b-hat (order 4); the weighted stage sum estimates the error.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

void record(Trajectory& traj, double t, const Eigen::VectorXd& xi, const Eigen::VectorXd& f,
            const Eigen::VectorXd& xi0) {
    traj.times.push_back(t);
    traj.states_log.push_back(xi);
    traj.states.push_back(xi.array().exp().matrix());
    traj.derivs.push_back(f);
    if (traj.lyapunov_ref) {
        const Eigen::VectorXd diff = xi - *traj.lyapunov_ref;
        traj.lyapunov.push_back((diff.array().square() / traj.d_weights.array()).sum());
    } else {
        traj.lyapunov.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    traj.conservation.push_back(traj.invariant_basis.transpose() * (xi - xi0));
}

Trajectory run_integrator(const Rhs& rhs, const Eigen::VectorXd& xi0,
                          const IntegrateOptions& opts, Trajectory traj) {
    if (!(opts.t_end > 0)) fail(errc::dimension_mismatch, "t_end must be positive");
    if (opts.rel_tol < 1e-12 || opts.rel_tol > 1e-3)
        fail(errc::dimension_mismatch, "rel_tol outside [1e-12, 1e-3]");

    Eigen::VectorXd xi = xi0;
    double t = 0.0;

    Eigen::VectorXd k1;
    try {
        k1 = rhs(xi);
    } catch (const Error& err) {
        traj.failure = err.code();
        traj.failure_detail = err.what();
        record(traj, t, xi,
               Eigen::VectorXd::Constant(xi.size(), std::numeric_limits<double>::quiet_NaN()),
               xi0);
        return traj;
    }
    const double f0_norm = k1.lpNorm<Eigen::Infinity>();
    const double conv_threshold = opts.convergence_factor * (1.0 + f0_norm);

    record(traj, t, xi, k1, xi0);
    if (f0_norm <= conv_threshold) {
        traj.converged_to = xi;
        return traj;
    }

    double h = std::min(0.01 * (1.0 + xi.lpNorm<Eigen::Infinity>()) / (1.0 + f0_norm), opts.t_end);
    double err_prev = 1.0;
    Eigen::VectorXd k2, k3, k4, k5, k6, k7, xi_new;

    for (std::size_t step = 0; step < opts.max_steps; ++step) {
        if (t >= opts.t_end) return traj;
        bool last = false;
        if (t + h >= opts.t_end) {
            h = opts.t_end - t;
            last = true;
        }

        try {
            k2 = rhs(xi + h * (a21 * k1));
            k3 = rhs(xi + h * (a31 * k1 + a32 * k2));
            k4 = rhs(xi + h * (a41 * k1 + a42 * k2 + a43 * k3));
            k5 = rhs(xi + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            k6 = rhs(xi + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            xi_new = xi + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            k7 = rhs(xi_new);
        } catch (const Error& err) {
            if (err.code() != errc::overflow) throw;
            // Shrink and retry; a persistent overflow ends in step underflow.
            h *= 0.2;
            if (h < opts.min_step) {
                traj.failure = errc::overflow;
                traj.failure_detail = err.what();
                return traj;
            }
            continue;
        }

        const Eigen::VectorXd err_vec =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double tol = opts.rel_tol * (1.0 + xi.lpNorm<Eigen::Infinity>());
        const double err = err_vec.lpNorm<Eigen::Infinity>() / tol;

        if (err <= 1.0) {
            t += h;
            xi.swap(xi_new);
            k1.swap(k7); // FSAL
            record(traj, t, xi, k1, xi0);

            if (k1.lpNorm<Eigen::Infinity>() <= conv_threshold) {
                traj.converged_to = xi;
                return traj;
            }
            if (last) return traj;

            const double e_clip = std::max(err, 1e-10);
            double fac = 0.9 * std::pow(e_clip, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            err_prev = e_clip;
        } else {
            const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9);
            h *= fac;
            if (h < opts.min_step) {
                traj.failure = errc::step_underflow;
                traj.failure_detail = "step size " + std::to_string(h) + " at t = " +
                                      std::to_string(t);
                return traj;
            }
        }
    }
    traj.failure = errc::step_underflow;
    traj.failure_detail = "step budget exhausted at t = " + std::to_string(t);
    return traj;
}

Eigen::VectorXd log_state(const Eigen::VectorXd& x0) {
    for (int i = 0; i < x0.size(); ++i)
        if (!(x0(i) > 0) || !std::isfinite(x0(i)))
            fail(errc::non_positive_state, "initial state component " + std::to_string(i));
    return x0.array().log().matrix();
}

} // namespace

Trajectory integrate(const ScaledSystem& sys, const Eigen::VectorXd& x0,
                     const IntegrateOptions& opts, const BalanceCertificate* cert,
                     const SubspaceBasis* basis) {
    const int n = sys.graph.dimension();
    if (x0.size() != n) fail(errc::dimension_mismatch, "initial state size");
    const Eigen::VectorXd xi0 = log_state(x0);

    SubspaceBasis local;
    if (!basis) {
        local = stoichiometric_basis(sys.graph);
        basis = &local;
    }

    Trajectory traj;
    traj.d_weights = sys.d;
    // Orthonormal basis of (D S)^perp: the orthogonal complement of diag(d) S.
    const int s = basis->rank();
    if (s == 0) {
        traj.invariant_basis = Eigen::MatrixXd::Identity(n, n);
    } else if (s == n) {
        traj.invariant_basis = Eigen::MatrixXd(n, 0);
    } else {
        const Eigen::MatrixXd ds = sys.d.asDiagonal() * basis->basis_S;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(ds);
        const Eigen::MatrixXd q = qr.householderQ();
        traj.invariant_basis = q.rightCols(n - s);
    }
    if (cert) traj.lyapunov_ref = state_in_class(*cert, *basis, sys.d, xi0);

    return run_integrator([&sys](const Eigen::VectorXd& xi) { return polyexp_rhs(sys, xi); }, xi0,
                          opts, std::move(traj));
}

Trajectory integrate_system(const GlvSystem& sys, const Eigen::VectorXd& x0,
                            const IntegrateOptions& opts) {
    validate_system(sys);
    if (x0.size() != sys.dimension) fail(errc::dimension_mismatch, "initial state size");
    const Eigen::VectorXd xi0 = log_state(x0);
    Trajectory traj;
    traj.invariant_basis = Eigen::MatrixXd(sys.dimension, 0);
    traj.d_weights = Eigen::VectorXd::Ones(sys.dimension);
    return run_integrator([&sys](const Eigen::VectorXd& xi) { return glv_log_rhs(sys, xi); }, xi0,
                          opts, std::move(traj));
}

double lyapunov_value(const Eigen::VectorXd& x, const Eigen::VectorXd& x_star,
                      const Eigen::VectorXd& d) {
    if (x.size() != x_star.size() || x.size() != d.size())
        fail(errc::dimension_mismatch, "lyapunov_value inputs");
    for (int i = 0; i < x.size(); ++i)
        if (!(x(i) > 0) || !(x_star(i) > 0) || !(d(i) > 0))
            fail(errc::non_positive_state, "component " + std::to_string(i));
    const Eigen::ArrayXd diff = x.array().log() - x_star.array().log();
    return (diff.square() / d.array()).sum();
}

bool linear_lyapunov_check(const EGraph& g, const StiemkeCertificate& cert,
                           const Trajectory& traj) {
    if (cert.p.size() != g.dimension())
        fail(errc::dimension_mismatch, "certificate dimension");
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        const double v0 = -cert.p.dot(traj.states_log[k]);
        const double v1 = -cert.p.dot(traj.states_log[k + 1]);
        if (v1 > v0 + 1e-9 * (1.0 + std::abs(v0))) return false;
    }
    return true;
}

Trajectory with_uniform_samples(const Trajectory& traj, int count) {
    if (traj.size() < 2 || count < 2 || traj.failure) return traj;
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();

    Trajectory out;
    out.invariant_basis = traj.invariant_basis;
    out.lyapunov_ref = traj.lyapunov_ref;
    out.d_weights = traj.d_weights;
    out.converged_to = traj.converged_to;
    out.failure = traj.failure;
    out.failure_detail = traj.failure_detail;

    const Eigen::VectorXd& xi0 = traj.states_log.front();
    std::size_t seg = 0;
    auto emit = [&out, &xi0](double t, const Eigen::VectorXd& xi, const Eigen::VectorXd& f) {
        record(out, t, xi, f, xi0);
    };

    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (count - 1);

    // Merge accepted times with the uniform grid, interpolating grid points.
    std::size_t gi = 0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double tk = traj.times[k];
        while (gi < grid.size() && grid[gi] < tk - 1e-12) {
            const double tg = grid[gi];
            while (seg + 2 < traj.size() && traj.times[seg + 1] <= tg) ++seg;
            const double ta = traj.times[seg], tb = traj.times[seg + 1];
            const double hseg = tb - ta;
            const double th = (tg - ta) / hseg;
            const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
            const double h10 = th * (1 - th) * (1 - th);
            const double h01 = th * th * (3 - 2 * th);
            const double h11 = th * th * (th - 1);
            const Eigen::VectorXd xi = h00 * traj.states_log[seg] + h10 * hseg * traj.derivs[seg] +
                                       h01 * traj.states_log[seg + 1] +
                                       h11 * hseg * traj.derivs[seg + 1];
            const double d00 = (6 * th * th - 6 * th) / hseg;
            const double d10 = 3 * th * th - 4 * th + 1;
            const double d01 = (6 * th - 6 * th * th) / hseg;
            const double d11 = 3 * th * th - 2 * th;
            const Eigen::VectorXd f = d00 * traj.states_log[seg] + d10 * traj.derivs[seg] +
                                      d01 * traj.states_log[seg + 1] + d11 * traj.derivs[seg + 1];
            emit(tg, xi, f);
            ++gi;
        }
        while (gi < grid.size() && std::abs(grid[gi] - tk) <= 1e-12) ++gi; // collides with a step
        emit(tk, traj.states_log[k], traj.derivs[k]);
    }
    return out;
}

} // namespace glv
