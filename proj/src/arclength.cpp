#include "arcpath/arclength.hpp"

#include "arcpath/element.hpp"

#include <cmath>
#include <string>

namespace arcpath {

namespace {

void check_config(const SolverConfig& config) {
    if (config.psi < 0.0) {
        throw std::invalid_argument("psi must be non-negative");
    }
    if (config.dlambda_init == 0.0) {
        throw std::invalid_argument("dlambda_init must be nonzero");
    }
    if (!(config.epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (config.k_max < 1 || config.n_max < 1) {
        throw std::invalid_argument("k_max and n_max must be at least 1");
    }
}

} // namespace

double constraint(const Eigen::VectorXd& du, double dlambda,
                  const Eigen::VectorXd& f_ext, double psi, double ds) {
    return du.squaredNorm() + psi * dlambda * dlambda * f_ext.squaredNorm() - ds * ds;
}

Prediction predict(const StepState& state) {
    Prediction p;
    p.alpha = state.ds / state.ds_n;
    const Eigen::VectorXd du_n = state.u_n - state.u_prev;
    const double dlambda_n = state.lambda_n - state.lambda_prev;
    p.du = p.alpha * du_n;
    p.dlambda = p.alpha * dlambda_n;
    p.u = state.u_n + p.du;
    p.lambda = state.lambda_n + p.dlambda;
    return p;
}

SchurSolution schur_solve(const Factorization& k_fac, const Eigen::VectorXd& f_ext,
                          const Eigen::VectorXd& residual, const Eigen::VectorXd& a,
                          double b, double constraint_value) {
    const auto sols = k_fac.solve_multi({f_ext, residual});
    const Eigen::VectorXd& du_one = sols[0];
    const Eigen::VectorXd& du_two = sols[1];

    const double denom = b + a.dot(du_one);
    const double scale = std::abs(b) + a.norm() * du_one.norm() + 1e-300;
    if (std::abs(denom) <= 1e-14 * scale) {
        throw ZeroDenominatorError("arc-length constraint row is degenerate");
    }
    SchurSolution s;
    s.dlambda = (a.dot(du_two) - constraint_value) / denom;
    s.du = -du_two + s.dlambda * du_one;
    return s;
}

SchurSolution schur_solve(const Eigen::MatrixXd& k, const Eigen::VectorXd& f_ext,
                          const Eigen::VectorXd& residual, const Eigen::VectorXd& a,
                          double b, double constraint_value) {
    const Factorization f(k);
    if (f.singular()) {
        throw SingularMatrixError("schur_solve: tangent matrix is singular");
    }
    return schur_solve(f, f_ext, residual, a, b, constraint_value);
}

double adapt_step(bool converged, bool converged_prev, double ds,
                  double ds_min, double ds_max, const SolverConfig& config) {
    if (converged) {
        if (!converged_prev) {
            return ds;
        }
        return std::min(std::max(config.ds_growth * ds, ds_min), ds_max);
    }
    const double cut = converged_prev ? config.ds_cut : config.ds_cut_repeat;
    return std::max(ds / cut, ds_min);
}

CorrectorResult correct(const StructuralSystem& system, const Prediction& start,
                        double ds, const SolverConfig& config, bool load_control) {
    CorrectorResult res;
    res.u = start.u;
    res.du = start.du;
    res.lambda = start.lambda;
    res.dlambda = start.dlambda;

    const Eigen::VectorXd& f = system.external_force();
    const double ff = f.squaredNorm();
    const int n = system.dof_count();
    int evals = 0;

    for (int k = 1; k <= config.k_max; ++k) {
        GlobalResponse resp;
        try {
            resp = system.evaluate(res.u);
        } catch (const ElementError&) {
            res.iterations = evals;
            return res;
        }
        const Eigen::VectorXd r = resp.f_int - res.lambda * f;
        ++evals;
        if (r.norm() <= config.epsilon) {
            res.converged = true;
            res.iterations = evals;
            return res;
        }

        Eigen::VectorXd a;
        double b = 0.0;
        double acons = 0.0;
        if (load_control) {
            a = Eigen::VectorXd::Zero(n);
            b = 1.0;
        } else {
            a = 2.0 * res.du;
            b = 2.0 * config.psi * res.dlambda * ff;
            acons = constraint(res.du, res.dlambda, f, config.psi, ds);
        }

        const Factorization k_fac(resp.stiffness);
        if (k_fac.singular()) {
            res.iterations = evals;
            return res;
        }
        SchurSolution sol;
        try {
            sol = schur_solve(k_fac, f, r, a, b, acons);
        } catch (const ZeroDenominatorError&) {
            res.iterations = evals;
            return res;
        }
        res.du += sol.du;
        res.dlambda += sol.dlambda;
        res.u += sol.du;
        res.lambda += sol.dlambda;
    }
    res.iterations = evals;
    return res;
}

FirstStepResult first_step(const StructuralSystem& system, const SolverConfig& config) {
    check_config(config);
    const int n = system.dof_count();

    Prediction start;
    start.u = Eigen::VectorXd::Zero(n);
    start.du = Eigen::VectorXd::Zero(n);
    start.lambda = config.dlambda_init;
    start.dlambda = config.dlambda_init;

    const CorrectorResult cr = correct(system, start, 0.0, config, true);
    if (!cr.converged) {
        throw NonConvergenceError(
            "first load step did not converge at dlambda_init = " +
            std::to_string(config.dlambda_init) + "; pick a different increment");
    }
    FirstStepResult out;
    out.u = cr.u;
    out.lambda = cr.lambda;
    out.iterations = cr.iterations;
    out.ds = std::sqrt(cr.du.squaredNorm() +
                       config.psi * cr.dlambda * cr.dlambda *
                           system.external_force().squaredNorm());
    return out;
}

EquilibriumPath run(const StructuralSystem& system, const SolverConfig& config,
                    StepObserver* observer) {
    check_config(config);
    EquilibriumPath path;

    const FirstStepResult fs = first_step(system, config);
    path.ds_first = fs.ds;
    path.total_iterations += fs.iterations;
    path.records.push_back({1, fs.lambda, fs.ds, fs.iterations, 0, fs.u});

    StepState state;
    state.u_prev = Eigen::VectorXd::Zero(system.dof_count());
    state.lambda_prev = 0.0;
    state.u_n = fs.u;
    state.lambda_n = fs.lambda;
    state.ds = fs.ds;
    state.ds_n = fs.ds;
    state.ds_max = fs.ds;
    state.ds_min = fs.ds / config.ds_min_divisor;
    state.converged_prev = true;

    int steps_done = 1;
    int failures_at_floor = 0;

    while (steps_done < config.n_max) {
        const Prediction pred = predict(state);
        if (observer) {
            observer->on_prediction(steps_done + 1, pred, state.u_n - state.u_prev,
                                    state.lambda_n - state.lambda_prev);
        }
        const CorrectorResult cr = correct(system, pred, state.ds, config, false);
        path.total_iterations += cr.iterations;

        if (cr.converged) {
            ++steps_done;
            if (observer) {
                const double acons = constraint(cr.du, cr.dlambda, system.external_force(),
                                                config.psi, state.ds);
                observer->on_converged(steps_done, cr.du, cr.dlambda, state.ds, acons);
            }
            path.records.push_back(
                {steps_done, cr.lambda, state.ds, cr.iterations, path.restarts, cr.u});

            state.u_prev = std::move(state.u_n);
            state.lambda_prev = state.lambda_n;
            state.u_n = cr.u;
            state.lambda_n = cr.lambda;
            state.ds_n = state.ds;
            state.ds = adapt_step(true, state.converged_prev, state.ds,
                                  state.ds_min, state.ds_max, config);
            state.converged_prev = true;
            failures_at_floor = 0;
        } else {
            ++path.restarts;
            failures_at_floor = (state.ds <= state.ds_min) ? failures_at_floor + 1 : 0;
            if (failures_at_floor >= config.stall_limit) {
                path.status = RunStatus::Stalled;
                break;
            }
            state.ds = adapt_step(false, state.converged_prev, state.ds,
                                  state.ds_min, state.ds_max, config);
            state.converged_prev = false;
        }
    }
    return path;
}

} // namespace arcpath
