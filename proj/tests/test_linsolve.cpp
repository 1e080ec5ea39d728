#include "arcpath/linsolve.hpp"

#include <doctest.h>

#include <random>

using arcpath::Factorization;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Independent elimination oracle: dense Gauss elimination with partial
// pivoting on the augmented matrix, written without reference to the
// library implementation.
VectorXd gauss_oracle(MatrixXd a, VectorXd b) {
    const int n = static_cast<int>(a.rows());
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        a.row(k).swap(a.row(p));
        std::swap(b[k], b[p]);
        for (int i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            a.row(i).tail(n - k) -= m * a.row(k).tail(n - k);
            b[i] -= m * b[k];
        }
    }
    VectorXd x(n);
    for (int k = n - 1; k >= 0; --k) {
        double s = b[k];
        for (int j = k + 1; j < n; ++j) {
            s -= a(k, j) * x[j];
        }
        x[k] = s / a(k, k);
    }
    return x;
}

} // namespace

TEST_CASE("factor and solve a 1x1 system") {
    MatrixXd a(1, 1);
    a << 2.0;
    const Factorization f = arcpath::factor(a);
    CHECK_FALSE(f.singular());
    VectorXd b(1);
    b << 1.0;
    CHECK(f.solve(b)[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("identity maps any right-hand side to itself") {
    for (const int n : {1, 3, 7}) {
        const Factorization f = arcpath::factor(MatrixXd::Identity(n, n));
        VectorXd b = VectorXd::LinSpaced(n, 1.0, n);
        CHECK((f.solve(b) - b).norm() == 0.0);
    }
}

TEST_CASE("hand-eliminated 2x2 system") {
    MatrixXd a(2, 2);
    a << 4.0, 1.0, 1.0, 3.0;
    const Factorization f = arcpath::factor(a);
    VectorXd b(2);
    b << 1.0, 2.0;
    const VectorXd x = f.solve(b);
    CHECK(x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("solve_multi handles several right-hand sides") {
    MatrixXd diag(2, 2);
    diag << 2.0, 0.0, 0.0, 4.0;
    VectorXd b(2);
    b << 2.0, 4.0;
    const auto xs = arcpath::solve_multi(arcpath::factor(diag), {b});
    CHECK(xs[0][0] == 1.0);
    CHECK(xs[0][1] == 1.0);

    MatrixXd a(2, 2);
    a << 4.0, 1.0, 1.0, 3.0;
    VectorXd b1(2), b2(2);
    b1 << 1.0, 2.0;
    b2 << 0.0, 1.0;
    const auto sols = arcpath::solve_multi(arcpath::factor(a), {b1, b2});
    CHECK(sols[0][0] == doctest::Approx(1.0 / 11.0));
    CHECK(sols[0][1] == doctest::Approx(7.0 / 11.0));
    CHECK(sols[1][0] == doctest::Approx(-1.0 / 11.0));
    CHECK(sols[1][1] == doctest::Approx(4.0 / 11.0));
}

TEST_CASE("solve_multi with one vector matches solve bit for bit") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + trial % 12;
        MatrixXd a(n, n);
        VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            b[i] = dist(rng);
            for (int j = 0; j < n; ++j) {
                a(i, j) = dist(rng);
            }
        }
        a += n * MatrixXd::Identity(n, n);
        const Factorization f = arcpath::factor(a);
        const VectorXd single = f.solve(b);
        const auto multi = f.solve_multi({b});
        REQUIRE(multi.size() == 1);
        for (int i = 0; i < n; ++i) {
            CHECK(multi[0][i] == single[i]);
        }
    }
}

TEST_CASE("random SPD systems round-trip against the elimination oracle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 50);
        MatrixXd m(n, n);
        VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            b[i] = dist(rng);
            for (int j = 0; j < n; ++j) {
                m(i, j) = dist(rng);
            }
        }
        const MatrixXd a = m.transpose() * m + n * MatrixXd::Identity(n, n);
        const VectorXd x = arcpath::factor(a).solve(b);
        const VectorXd x_ref = gauss_oracle(a, b);
        CHECK((x - x_ref).norm() <= 1e-10 * std::max(1.0, x_ref.norm()));
        // residual contract
        CHECK((a * x - b).norm() <= 1e-10 * (a.norm() * x.norm() + b.norm()));
    }
}

TEST_CASE("matrices that force row interchanges solve correctly") {
    // No diagonal dominance anywhere, so partial pivoting reorders rows at
    // nearly every elimination step.
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 40);
        MatrixXd a(n, n);
        VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            b[i] = dist(rng);
            for (int j = 0; j < n; ++j) {
                a(i, j) = dist(rng);
            }
            a(i, i) = 0.01 * dist(rng);
        }
        const Factorization f = arcpath::factor(a);
        if (f.singular()) {
            continue;
        }
        const VectorXd x = f.solve(b);
        const VectorXd x_ref = gauss_oracle(a, b);
        CHECK((a * x - b).norm() <= 1e-9 * (a.norm() * x.norm() + b.norm()));
        CHECK((x - x_ref).norm() <= 1e-8 * std::max(1.0, x_ref.norm()));
    }
}

TEST_CASE("indefinite but well-conditioned systems still solve") {
    MatrixXd a(3, 3);
    a << 0.0, 2.0, 1.0,
         2.0, -3.0, 0.5,
         1.0, 0.5, -1.0;
    VectorXd b(3);
    b << 1.0, -2.0, 0.25;
    const Factorization f = arcpath::factor(a);
    REQUIRE_FALSE(f.singular());
    const VectorXd x = f.solve(b);
    CHECK((a * x - b).norm() <= 1e-12 * (a.norm() * x.norm() + b.norm()));
}

TEST_CASE("singular matrices are reported, solving them throws") {
    MatrixXd zero = MatrixXd::Zero(2, 2);
    CHECK(arcpath::factor(zero).singular());

    MatrixXd rank1(2, 2);
    rank1 << 1.0, 1.0, 1.0, 1.0;
    const Factorization f = arcpath::factor(rank1);
    CHECK(f.singular());
    VectorXd b(2);
    b << 1.0, 1.0;
    CHECK_THROWS_AS((void)f.solve(b), arcpath::SingularMatrixError);
}

TEST_CASE("near-singular pivot relative to the diagonal scale") {
    MatrixXd a(2, 2);
    a << 1e20, 1e20, 1e20, 1e20 + 1.0;
    // pivots: 1e20 and ~1, second one below 1e-14 * 1e20
    CHECK(arcpath::factor(a).singular());
}

TEST_CASE("shape errors throw invalid_argument") {
    CHECK_THROWS_AS((void)arcpath::factor(MatrixXd::Zero(2, 3)), std::invalid_argument);
    const Factorization f = arcpath::factor(MatrixXd::Identity(3, 3));
    CHECK_THROWS_AS((void)f.solve(VectorXd::Zero(2)), std::invalid_argument);
}
