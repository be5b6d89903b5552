#include "igatwo/quadrature.hpp"

#include <cmath>

namespace igatwo {

GaussRule gauss_legendre(int n)
{
    require(n >= 1, "gauss_legendre: need at least one point");
    Matrix J = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(J);
    GaussRule rule;
    rule.points = eig.eigenvalues();
    rule.weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square();
    // symmetrize to remove eigensolver round-off
    for (int k = 0; k < n / 2; ++k) {
        const double x = 0.5 * (rule.points[n - 1 - k] - rule.points[k]);
        const double w = 0.5 * (rule.weights[n - 1 - k] + rule.weights[k]);
        rule.points[k] = -x;
        rule.points[n - 1 - k] = x;
        rule.weights[k] = rule.weights[n - 1 - k] = w;
    }
    if (n % 2 == 1) rule.points[n / 2] = 0.0;
    return rule;
}

GaussRule gauss_legendre(int n, double a, double b)
{
    GaussRule rule = gauss_legendre(n);
    const double half = 0.5 * (b - a);
    rule.points = (rule.points.array() + 1.0) * half + a;
    rule.weights *= half;
    return rule;
}

} // namespace igatwo
