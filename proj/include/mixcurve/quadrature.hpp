#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mixcurve {

template <typename Scalar>
struct GaussRule {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;    // ascending, on [-1, 1]
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule by Golub-Welsch: eigenvalues of the Jacobi matrix are the
/// nodes, and twice the squared first eigenvector components are the weights.
template <typename Scalar = double>
GaussRule<Scalar> gauss_legendre(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre needs n >= 1");
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix J = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const Scalar kk = static_cast<Scalar>(k);
        const Scalar off = kk / std::sqrt(Scalar(4) * kk * kk - Scalar(1));
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(J);
    GaussRule<Scalar> rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = Scalar(2) * solver.eigenvectors().row(0).transpose().array().square().matrix();
    // Symmetrize to suppress eigen-solver jitter.
    for (int k = 0; k < n / 2; ++k) {
        const Scalar x = (rule.nodes(n - 1 - k) - rule.nodes(k)) / Scalar(2);
        const Scalar w = (rule.weights(k) + rule.weights(n - 1 - k)) / Scalar(2);
        rule.nodes(k) = -x;
        rule.nodes(n - 1 - k) = x;
        rule.weights(k) = rule.weights(n - 1 - k) = w;
    }
    if (n % 2 == 1)
        rule.nodes(n / 2) = Scalar(0);
    return rule;
}

}  // namespace mixcurve
