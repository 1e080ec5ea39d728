#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace arcpath {

// Thrown when solving against a factorization whose pivoting hit a
// (near-)zero pivot. The continuation driver treats this as step failure,
// not as a fatal error.
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// LU factors of a square matrix with partial pivoting, packed in place.
/// Factor once, then solve for as many right-hand sides as needed.
/// Immutable after construction and safe to share across threads.
class Factorization {
public:
    explicit Factorization(const Eigen::MatrixXd& a);

    int size() const { return n_; }

    // True if elimination met a pivot below 1e-14 * max|A_ii| of the
    // original matrix (zero stiffness mode, or a limit point hit exactly).
    bool singular() const { return singular_; }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    std::vector<Eigen::VectorXd> solve_multi(const std::vector<Eigen::VectorXd>& rhs) const;

private:
    int n_ = 0;
    Eigen::MatrixXd lu_;
    std::vector<int> perm_;
    bool singular_ = false;
};

Factorization factor(const Eigen::MatrixXd& a);

inline Eigen::VectorXd solve(const Factorization& f, const Eigen::VectorXd& b) {
    return f.solve(b);
}

inline std::vector<Eigen::VectorXd> solve_multi(const Factorization& f,
                                                const std::vector<Eigen::VectorXd>& rhs) {
    return f.solve_multi(rhs);
}

} // namespace arcpath
