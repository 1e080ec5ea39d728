#pragma once

#include "arcpath/linsolve.hpp"
#include "arcpath/system.hpp"

#include <stdexcept>
#include <vector>

namespace arcpath {

struct NonConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroDenominatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double psi = 1.0;           // constraint shape: 0 cylindrical, 1 spherical, >1 elliptical
    double dlambda_init = 0.0;  // load increment of the load-controlled first step
    double epsilon = 1e-6;      // residual 2-norm tolerance
    int k_max = 10;             // corrector iteration cap
    int n_max = 100;            // converged load steps to compute

    // Step adaptation constants (doubling on repeated success, halving on a
    // first failure, quartering on repeated failure, floor at ds/1024).
    double ds_growth = 2.0;
    double ds_cut = 2.0;
    double ds_cut_repeat = 4.0;
    double ds_min_divisor = 1024.0;
    int stall_limit = 10;  // consecutive failures at ds_min before giving up
};

// Continuation memory between steps: the two most recent converged states
// and the arc-length increments driving the extrapolated predictor.
struct StepState {
    Eigen::VectorXd u_n;     // last converged displacement
    Eigen::VectorXd u_prev;  // one before
    double lambda_n = 0.0;
    double lambda_prev = 0.0;
    double ds = 0.0;      // increment for the upcoming step
    double ds_n = 0.0;    // increment used by the last converged step
    double ds_min = 0.0;
    double ds_max = 0.0;
    bool converged_prev = false;
};

// Extrapolated predictor: u = (1+alpha) u_n - alpha u_prev with
// alpha = ds / ds_n > 0. The increments are exact multiples of the previous
// converged increments, which is what keeps the march pointed forward.
struct Prediction {
    Eigen::VectorXd u;
    Eigen::VectorXd du;
    double lambda = 0.0;
    double dlambda = 0.0;
    double alpha = 0.0;
};

Prediction predict(const StepState& state);

// Arc-length constraint residual: du'du + psi dlambda^2 F'F - ds^2.
double constraint(const Eigen::VectorXd& du, double dlambda,
                  const Eigen::VectorXd& f_ext, double psi, double ds);

// Solves the augmented Newton system through the Schur complement of K:
//   dlambda = (a' du_II - A) / (b + a' du_I),  du = -du_II + dlambda du_I
// with du_I = K^-1 F and du_II = K^-1 R from one factorization.
struct SchurSolution {
    double dlambda = 0.0;
    Eigen::VectorXd du;
};

SchurSolution schur_solve(const Factorization& k_fac, const Eigen::VectorXd& f_ext,
                          const Eigen::VectorXd& residual, const Eigen::VectorXd& a,
                          double b, double constraint_value);

SchurSolution schur_solve(const Eigen::MatrixXd& k, const Eigen::VectorXd& f_ext,
                          const Eigen::VectorXd& residual, const Eigen::VectorXd& a,
                          double b, double constraint_value);

// New increment after a step outcome. Doubling requires two successes in a
// row; a failure halves, repeated failures quarter, all clamped to
// [ds_min, ds_max].
double adapt_step(bool converged, bool converged_prev, double ds,
                  double ds_min, double ds_max, const SolverConfig& config = {});

struct CorrectorResult {
    bool converged = false;
    Eigen::VectorXd u;
    Eigen::VectorXd du;
    double lambda = 0.0;
    double dlambda = 0.0;
    int iterations = 0;      // residual evaluations before exit
};

// Newton loop on the augmented system, starting from the predictor state.
// Convergence is tested before each solve, so a predictor that already
// satisfies |R| <= epsilon costs a single assembly. In load-control mode the
// constraint row is frozen to a = 0, b = 1, A = 0, which pins dlambda = 0.
CorrectorResult correct(const StructuralSystem& system, const Prediction& start,
                        double ds, const SolverConfig& config, bool load_control = false);

struct FirstStepResult {
    Eigen::VectorXd u;
    double lambda = 0.0;
    double ds = 0.0;     // sqrt(du'du + psi dlambda^2 F'F) of the converged step
    int iterations = 0;
};

// Load-controlled bootstrap at lambda = dlambda_init. Failure here is fatal:
// there is no arc length to cut yet.
FirstStepResult first_step(const StructuralSystem& system, const SolverConfig& config);

enum class RunStatus { Completed, Stalled };

struct StepRecord {
    int step = 0;
    double lambda = 0.0;
    double ds = 0.0;     // increment the step converged with
    int iterations = 0;
    int restarts_total = 0;
    Eigen::VectorXd u;
};

struct EquilibriumPath {
    std::vector<StepRecord> records;
    long long total_iterations = 0;  // residual evaluations, failed attempts included
    int restarts = 0;                // failed corrector attempts
    double ds_first = 0.0;
    RunStatus status = RunStatus::Completed;

    double average_iterations() const {
        return records.empty() ? 0.0
                               : static_cast<double>(total_iterations) /
                                     static_cast<double>(records.size());
    }
};

// Test/diagnostic hook into the driver; no-op by default.
class StepObserver {
public:
    virtual ~StepObserver() = default;
    virtual void on_prediction(int step, const Prediction& prediction,
                               const Eigen::VectorXd& du_n, double dlambda_n) {
        (void)step; (void)prediction; (void)du_n; (void)dlambda_n;
    }
    virtual void on_converged(int step, const Eigen::VectorXd& du, double dlambda,
                              double ds, double constraint_residual) {
        (void)step; (void)du; (void)dlambda; (void)ds; (void)constraint_residual;
    }
};

// Algorithm: load-controlled first step, then predict / correct / adapt until
// n_max steps converge or the increment is pinned at ds_min and keeps
// failing. Failed steps are retried from the same state with the cut ds and
// a freshly extrapolated predictor.
EquilibriumPath run(const StructuralSystem& system, const SolverConfig& config,
                    StepObserver* observer = nullptr);

} // namespace arcpath
