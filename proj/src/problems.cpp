#include "igatwo/problems.hpp"

#include <cmath>
#include <numbers>

namespace igatwo {

PoissonProblem square_problem()
{
    constexpr double pi = std::numbers::pi;
    PoissonProblem prob;
    prob.name = "square";
    prob.geom = identity_square();
    prob.exact = [](const Point2& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    prob.rhs = [](const Point2& x) { return 2.0 * pi * pi * std::sin(pi * x.x()) * std::sin(pi * x.y()); };
    prob.p_low = 1;
    return prob;
}

PoissonProblem annulus_problem(double r, double R)
{
    constexpr double pi = std::numbers::pi;
    PoissonProblem prob;
    prob.name = "annulus";
    prob.geom = preset_quarter_annulus(r, R);
    const double r2 = r * r, R2 = R * R;
    prob.exact = [r2, R2](const Point2& x) {
        const double s = x.squaredNorm();
        return std::sin(pi * x.x()) * std::sin(pi * x.y()) * (s - r2) * (s - R2);
    };
    // -lap(g q) = -(q lap g + 2 grad g . grad q + g lap q)
    prob.rhs = [r2, R2](const Point2& x) {
        const double sx = std::sin(pi * x.x()), cx = std::cos(pi * x.x());
        const double sy = std::sin(pi * x.y()), cy = std::cos(pi * x.y());
        const double s = x.squaredNorm();
        const double g = sx * sy;
        const double q = (s - r2) * (s - R2);
        const double dq = 2.0 * s - (r2 + R2);  // grad q = dq * (2x, 2y)
        const double grad_dot = pi * (cx * sy * 2.0 * x.x() + sx * cy * 2.0 * x.y()) * dq;
        const double lap_q = 16.0 * s - 4.0 * (r2 + R2);
        return -(q * (-2.0 * pi * pi * g) + 2.0 * grad_dot + g * lap_q);
    };
    prob.p_low = 2;
    return prob;
}

} // namespace igatwo
