#include "arcpath/linsolve.hpp"

#include <cmath>

namespace arcpath {

Factorization::Factorization(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("factor: matrix must be square");
    }
    n_ = static_cast<int>(a.rows());
    lu_ = a;
    perm_.resize(n_);

    // Pivot threshold relative to the largest diagonal entry of the input.
    double max_diag = 0.0;
    for (int i = 0; i < n_; ++i) {
        max_diag = std::max(max_diag, std::abs(a(i, i)));
    }
    const double pivot_tol = 1e-14 * max_diag;

    for (int k = 0; k < n_; ++k) {
        int p = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n_; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        perm_[k] = p;
        if (!(best > pivot_tol)) {
            singular_ = true;
            return;
        }
        if (p != k) {
            lu_.row(k).swap(lu_.row(p));
        }
        const double inv_pivot = 1.0 / lu_(k, k);
        for (int i = k + 1; i < n_; ++i) {
            const double m = lu_(i, k) * inv_pivot;
            lu_(i, k) = m;
            for (int j = k + 1; j < n_; ++j) {
                lu_(i, j) -= m * lu_(k, j);
            }
        }
    }
}

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& b) const {
    if (singular_) {
        throw SingularMatrixError("solve: factorization is singular");
    }
    if (b.size() != n_) {
        throw std::invalid_argument("solve: right-hand side has wrong length");
    }
    Eigen::VectorXd x = b;
    // P A = L U with the factors stored in the final row order, so the
    // interchanges are applied to the right-hand side before substitution.
    for (int k = 0; k < n_; ++k) {
        if (perm_[k] != k) {
            std::swap(x[k], x[perm_[k]]);
        }
    }
    for (int k = 0; k < n_; ++k) {
        for (int i = k + 1; i < n_; ++i) {
            x[i] -= lu_(i, k) * x[k];
        }
    }
    for (int k = n_ - 1; k >= 0; --k) {
        for (int j = k + 1; j < n_; ++j) {
            x[k] -= lu_(k, j) * x[j];
        }
        x[k] /= lu_(k, k);
    }
    return x;
}

std::vector<Eigen::VectorXd> Factorization::solve_multi(
    const std::vector<Eigen::VectorXd>& rhs) const {
    std::vector<Eigen::VectorXd> out;
    out.reserve(rhs.size());
    for (const auto& b : rhs) {
        out.push_back(solve(b));
    }
    return out;
}

Factorization factor(const Eigen::MatrixXd& a) {
    return Factorization(a);
}

} // namespace arcpath
