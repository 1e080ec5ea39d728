#include "arcpath/arclength.hpp"

#include "arcpath/element.hpp"
#include "arcpath/model.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace arcpath;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Linear system K u = lambda f with a constant stiffness.
class LinearSystem : public StructuralSystem {
public:
    LinearSystem(MatrixXd k, VectorXd f) : k_(std::move(k)), f_(std::move(f)) {}
    int dof_count() const override { return static_cast<int>(f_.size()); }
    const VectorXd& external_force() const override { return f_; }
    GlobalResponse evaluate(const VectorXd& u) const override {
        return {k_ * u, k_};
    }

private:
    MatrixXd k_;
    VectorXd f_;
};

// Scalar cubic spring with internal force u^3 - u: two limit points.
class CubicSpring : public StructuralSystem {
public:
    CubicSpring() : f_(VectorXd::Ones(1)) {}
    int dof_count() const override { return 1; }
    const VectorXd& external_force() const override { return f_; }
    GlobalResponse evaluate(const VectorXd& u) const override {
        GlobalResponse r;
        r.f_int = VectorXd::Constant(1, u[0] * u[0] * u[0] - u[0]);
        r.stiffness = MatrixXd::Constant(1, 1, 3.0 * u[0] * u[0] - 1.0);
        return r;
    }

private:
    VectorXd f_;
};

// Brute-force reference for the augmented (n+1) system assembled explicitly.
std::pair<double, VectorXd> augmented_oracle(const MatrixXd& k, const VectorXd& f,
                                             const VectorXd& r, const VectorXd& a,
                                             double b, double acons) {
    const int n = static_cast<int>(f.size());
    MatrixXd big(n + 1, n + 1);
    big.topLeftCorner(n, n) = k;
    big.topRightCorner(n, 1) = -f;
    big.bottomLeftCorner(1, n) = a.transpose();
    big(n, n) = b;
    VectorXd rhs(n + 1);
    rhs.head(n) = -r;
    rhs[n] = -acons;
    const VectorXd sol = big.fullPivLu().solve(rhs);
    return {sol[n], sol.head(n)};
}

} // namespace

TEST_CASE("constraint residual") {
    VectorXd f1 = VectorXd::Ones(1);
    CHECK(constraint(VectorXd::Zero(2), 0.0, VectorXd::Ones(2), 1.0, 0.0) == 0.0);

    VectorXd du(2);
    du << 3.0, 4.0;
    CHECK(constraint(du, 0.0, VectorXd::Ones(2), 0.0, 5.0) == 0.0);

    VectorXd du1(1);
    du1 << 1.0;
    CHECK(constraint(du1, 2.0, f1, 1.0, 0.0) == doctest::Approx(5.0));
}

TEST_CASE("schur solve reproduces the first-step load-control values") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const int n = 4;
    MatrixXd m(n, n);
    VectorXd f(n), r(n);
    for (int i = 0; i < n; ++i) {
        f[i] = dist(rng);
        r[i] = dist(rng);
        for (int j = 0; j < n; ++j) {
            m(i, j) = dist(rng);
        }
    }
    const MatrixXd k = m.transpose() * m + n * MatrixXd::Identity(n, n);

    const SchurSolution s = schur_solve(k, f, r, VectorXd::Zero(n), 1.0, 0.0);
    CHECK(s.dlambda == 0.0);
    const VectorXd expected = -factor(k).solve(r);
    CHECK((s.du - expected).norm() <= 1e-14 * std::max(1.0, expected.norm()));
}

TEST_CASE("schur solve on the hand-worked 1-DOF example") {
    MatrixXd k(1, 1);
    k << 2.0;
    VectorXd f(1), r(1), a(1);
    f << 1.0;
    r << 0.0;
    a << 1.0;
    const SchurSolution s = schur_solve(k, f, r, a, 0.0, 0.5);
    CHECK(s.dlambda == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(s.du[0] == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("schur solve equals the brute-force augmented system") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        MatrixXd m(n, n);
        VectorXd f(n), r(n), a(n);
        for (int i = 0; i < n; ++i) {
            f[i] = dist(rng);
            r[i] = dist(rng);
            a[i] = dist(rng);
            for (int j = 0; j < n; ++j) {
                m(i, j) = dist(rng);
            }
        }
        MatrixXd k = m.transpose() * m + n * MatrixXd::Identity(n, n);
        if (trial % 2 == 1) {
            k(0, 0) -= 2.5 * n;  // indefinite variant
        }
        const double b = dist(rng);
        const double acons = dist(rng);
        const auto [dl_ref, du_ref] = augmented_oracle(k, f, r, a, b, acons);
        const SchurSolution s = schur_solve(k, f, r, a, b, acons);
        CHECK(std::abs(s.dlambda - dl_ref) <= 1e-9 * std::max(1.0, std::abs(dl_ref)));
        CHECK((s.du - du_ref).norm() <= 1e-9 * std::max(1.0, du_ref.norm()));
    }
}

TEST_CASE("degenerate constraint row raises ZeroDenominatorError") {
    MatrixXd k = MatrixXd::Identity(2, 2);
    VectorXd f(2), r(2);
    f << 1.0, 0.0;
    r << 0.5, 0.5;
    CHECK_THROWS_AS((void)schur_solve(k, f, r, VectorXd::Zero(2), 0.0, 1.0),
                    ZeroDenominatorError);
}

TEST_CASE("extrapolated predictor") {
    StepState st;
    st.u_n = VectorXd::Constant(1, 2.0);
    st.u_prev = VectorXd::Constant(1, 1.0);
    st.lambda_n = 0.2;
    st.lambda_prev = 0.1;
    st.ds = 1.0;
    st.ds_n = 1.0;

    Prediction p = predict(st);
    CHECK(p.alpha == 1.0);
    CHECK(p.u[0] == doctest::Approx(3.0));
    CHECK(p.lambda == doctest::Approx(0.3));

    st.ds = 0.5;
    p = predict(st);
    CHECK(p.alpha == 0.5);
    CHECK(p.u[0] == doctest::Approx(2.5));
    CHECK(p.lambda == doctest::Approx(0.25));

    // stationary history extrapolates to zero increments
    st.u_prev = st.u_n;
    st.lambda_prev = st.lambda_n;
    p = predict(st);
    CHECK(p.du.norm() == 0.0);
    CHECK(p.dlambda == 0.0);
}

TEST_CASE("step adaptation follows the doubling and cutting rules") {
    const SolverConfig cfg;
    CHECK(adapt_step(true, true, 0.1, 0.0001, 0.15, cfg) == doctest::Approx(0.15));
    CHECK(adapt_step(true, true, 0.05, 0.0001, 0.15, cfg) == doctest::Approx(0.1));
    CHECK(adapt_step(false, true, 0.1, 0.001, 0.15, cfg) == doctest::Approx(0.05));
    CHECK(adapt_step(false, false, 0.002, 0.001, 0.15, cfg) == doctest::Approx(0.001));
    // a success right after a failure keeps the increment
    CHECK(adapt_step(true, false, 0.025, 0.001, 0.15, cfg) == doctest::Approx(0.025));
}

TEST_CASE("first step is plain Newton load control, bit for bit") {
    MatrixXd k(2, 2);
    k << 4.0, 1.0, 1.0, 3.0;
    VectorXd f(2);
    f << 1.0, 2.0;
    const LinearSystem sys(k, f);

    SolverConfig config;
    config.dlambda_init = 0.5;
    const FirstStepResult fs = first_step(sys, config);

    // iteration count: the predictor evaluation plus one corrected residual
    CHECK(fs.iterations == 2);
    CHECK(fs.lambda == 0.5);
    const VectorXd expected = 0.5 * factor(k).solve(f);
    CHECK((fs.u - expected).norm() <= 1e-14);

    // hand-rolled load-control Newton must visit identical iterates
    VectorXd u = VectorXd::Zero(2);
    for (int it = 0; it < 10; ++it) {
        const VectorXd r = k * u - config.dlambda_init * f;
        if (r.norm() <= config.epsilon) {
            break;
        }
        u += -factor(k).solve(r);
    }
    for (int i = 0; i < 2; ++i) {
        CHECK(fs.u[i] == u[i]);
    }

    // ds from the converged increment
    const double ds_ref = std::sqrt(fs.u.squaredNorm() +
                                    config.psi * 0.25 * f.squaredNorm());
    CHECK(fs.ds == doctest::Approx(ds_ref).epsilon(1e-15));
}

TEST_CASE("first step failure is fatal") {
    const CubicSpring sys;
    SolverConfig config;
    config.dlambda_init = 50.0;  // far outside the basin with k_max = 2
    config.k_max = 2;
    CHECK_THROWS_AS((void)first_step(sys, config), NonConvergenceError);
}

TEST_CASE("corrector converges on a linear model in at most two iterations") {
    MatrixXd k(2, 2);
    k << 2.0, 0.5, 0.5, 1.0;
    VectorXd f(2);
    f << 1.0, -1.0;
    const LinearSystem sys(k, f);

    SolverConfig config;
    config.dlambda_init = 0.1;

    StepState st;
    st.u_prev = VectorXd::Zero(2);
    st.lambda_prev = 0.0;
    st.u_n = 0.1 * factor(k).solve(f);
    st.lambda_n = 0.1;
    st.ds = std::sqrt(st.u_n.squaredNorm() + 0.01 * f.squaredNorm());
    st.ds_n = st.ds;

    const Prediction pred = predict(st);
    const CorrectorResult cr = correct(sys, pred, st.ds, config);
    CHECK(cr.converged);
    CHECK(cr.iterations <= 2);
    // converged onto the equilibrium manifold
    CHECK((k * cr.u - cr.lambda * f).norm() <= config.epsilon);
}

TEST_CASE("corrector lands on the oracle root of the augmented system") {
    const CubicSpring sys;

    SolverConfig config;
    config.dlambda_init = 0.1;
    config.epsilon = 1e-13;
    config.k_max = 50;

    // two consecutive converged states on lambda = u^3 - u
    const double u_prev = 1.1, u_n = 1.2;
    StepState st;
    st.u_prev = VectorXd::Constant(1, u_prev);
    st.lambda_prev = u_prev * u_prev * u_prev - u_prev;
    st.u_n = VectorXd::Constant(1, u_n);
    st.lambda_n = u_n * u_n * u_n - u_n;
    const double dl = st.lambda_n - st.lambda_prev;
    st.ds_n = std::sqrt(0.01 + dl * dl);
    st.ds = st.ds_n;

    const Prediction pred = predict(st);
    const CorrectorResult cr = correct(sys, pred, st.ds, config);
    REQUIRE(cr.converged);

    // oracle: walk u forward until the constraint vanishes on the curve
    // lambda(u) = u^3 - u, then bisect
    auto g = [&](double u) {
        const double lam = u * u * u - u;
        const double dlam = lam - st.lambda_n;
        const double du = u - u_n;
        return du * du + dlam * dlam - st.ds * st.ds;
    };
    double lo = u_n, hi = u_n;
    while (g(hi) < 0.0) {
        hi += 1e-3;
    }
    lo = hi - 1e-3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    const double u_star = 0.5 * (lo + hi);
    const double lambda_star = u_star * u_star * u_star - u_star;

    CHECK(std::abs(cr.u[0] - u_star) <= 1e-10);
    CHECK(std::abs(cr.lambda - lambda_star) <= 1e-10);
}

TEST_CASE("linear model runs produce a collinear path with uniform increments") {
    MatrixXd k(3, 3);
    k << 5.0, 1.0, 0.0,
         1.0, 4.0, 0.5,
         0.0, 0.5, 3.0;
    VectorXd f(3);
    f << 1.0, 0.0, -2.0;
    const LinearSystem sys(k, f);

    SolverConfig config;
    config.dlambda_init = 0.2;
    config.n_max = 3;
    const EquilibriumPath path = run(sys, config);

    REQUIRE(path.records.size() == 3);
    CHECK(path.status == RunStatus::Completed);
    CHECK(path.restarts == 0);
    const double dl1 = path.records[0].lambda;
    CHECK(path.records[1].lambda == doctest::Approx(2.0 * dl1).epsilon(1e-9));
    CHECK(path.records[2].lambda == doctest::Approx(3.0 * dl1).epsilon(1e-9));
    const VectorXd dir = factor(k).solve(f);
    for (const auto& rec : path.records) {
        CHECK((rec.u - rec.lambda * dir).norm() <= 1e-9 * dir.norm());
    }
}

TEST_CASE("cubic spring path rounds the limit point and keeps tracking forward") {
    // From u = 0 the branch under increasing load runs into negative u,
    // over the load limit at u = -1/sqrt(3), then down the descending side.
    const CubicSpring sys;
    SolverConfig config;
    config.dlambda_init = 0.05;
    config.n_max = 120;
    const EquilibriumPath path = run(sys, config);

    REQUIRE(path.records.size() == 120);
    CHECK(path.status == RunStatus::Completed);

    int sign_changes = 0;
    double prev_dl = path.records[0].lambda;
    for (size_t i = 1; i < path.records.size(); ++i) {
        const double dl = path.records[i].lambda - path.records[i - 1].lambda;
        if (dl * prev_dl < 0.0) {
            ++sign_changes;
        }
        prev_dl = dl;
    }
    CHECK(sign_changes == 1);
    CHECK(path.records.back().lambda < 0.0);
    // every converged point stays on the equilibrium curve
    for (const auto& rec : path.records) {
        const double u = rec.u[0];
        CHECK(std::abs(u * u * u - u - rec.lambda) <= config.epsilon);
    }
    // forward march: u never reverses on this monotone-u curve
    for (size_t i = 1; i < path.records.size(); ++i) {
        CHECK(path.records[i].u[0] < path.records[i - 1].u[0]);
    }
}

TEST_CASE("runs are bit-for-bit deterministic") {
    const CubicSpring sys;
    SolverConfig config;
    config.dlambda_init = 0.05;
    config.n_max = 40;
    const EquilibriumPath a = run(sys, config);
    const EquilibriumPath b = run(sys, config);
    REQUIRE(a.records.size() == b.records.size());
    CHECK(a.total_iterations == b.total_iterations);
    for (size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].lambda == b.records[i].lambda);
        CHECK(a.records[i].u[0] == b.records[i].u[0]);
    }
}

TEST_CASE("predictor increments are exact multiples of the previous step") {
    class Recorder : public StepObserver {
    public:
        int checked = 0;
        void on_prediction(int, const Prediction& p, const VectorXd& du_n,
                           double dlambda_n) override {
            for (int i = 0; i < du_n.size(); ++i) {
                // bitwise: the engine computes du as alpha * du_n
                CHECK(p.du[i] == p.alpha * du_n[i]);
            }
            CHECK(p.dlambda == p.alpha * dlambda_n);
            CHECK(p.alpha > 0.0);
            ++checked;
        }
    };

    const CubicSpring sys;
    SolverConfig config;
    config.dlambda_init = 0.05;
    config.n_max = 60;
    Recorder rec;
    const EquilibriumPath path = run(sys, config, &rec);
    CHECK(path.records.size() == 60);
    CHECK(rec.checked >= 59);
}

TEST_CASE("invalid configurations are rejected") {
    const CubicSpring sys;
    SolverConfig config;  // dlambda_init left at zero
    CHECK_THROWS_AS((void)run(sys, config), std::invalid_argument);
    config.dlambda_init = 0.1;
    config.epsilon = -1.0;
    CHECK_THROWS_AS((void)run(sys, config), std::invalid_argument);
    config.epsilon = 1e-6;
    config.k_max = 0;
    CHECK_THROWS_AS((void)run(sys, config), std::invalid_argument);
}
