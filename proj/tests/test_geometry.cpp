#include "doctest.h"

#include "igatwo/geometry.hpp"

#include <cmath>
#include <random>

using namespace igatwo;

TEST_CASE("identity square")
{
    const GeometryMap g = identity_square();
    const GeometryPoint pt = geometry_point(g, 0.3, 0.7);
    CHECK(pt.x.x() == doctest::Approx(0.3));
    CHECK(pt.x.y() == doctest::Approx(0.7));
    CHECK((pt.jacobian - Jacobian2::Identity()).norm() <= 1e-14);
}

TEST_CASE("quarter annulus lies on circles")
{
    const double r = 0.3, R = 0.5;
    const GeometryMap g = preset_quarter_annulus(r, R);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
            const double xi = i / 49.0, eta = j / 49.0;
            const double radius = r + (R - r) * eta;
            worst = std::max(worst, std::abs(geometry_eval(g, xi, eta).norm() - radius));
        }
    CHECK(worst <= 1e-12);

    CHECK((geometry_eval(g, 0, 0) - Point2(0, r)).norm() <= 1e-14);
    CHECK((geometry_eval(g, 1, 0) - Point2(r, 0)).norm() <= 1e-14);
    CHECK((geometry_eval(g, 0, 1) - Point2(0, R)).norm() <= 1e-14);
    CHECK((geometry_eval(g, 1, 1) - Point2(R, 0)).norm() <= 1e-14);
    CHECK_THROWS_AS(preset_quarter_annulus(0.5, 0.3), ParameterError);
}

TEST_CASE("rational basis")
{
    const GeometryMap g = preset_quarter_annulus(0.3, 0.5);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < 10; ++s) {
        const double xi = u(gen), eta = u(gen);
        double sum = 0.0;
        for (int j = 0; j < g.num_eta(); ++j)
            for (int i = 0; i < g.num_xi(); ++i) sum += eval_nurbs_basis_2d(g, i, j, xi, eta);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(eval_nurbs_basis_2d(g, 0, 0, 0.0, 0.0) == doctest::Approx(1.0));

    GeometryMap flat = g;
    for (double& w : flat.weights) w = 2.5;
    CHECK(eval_nurbs_basis_2d(flat, 1, 1, 0.4, 0.6) ==
          doctest::Approx(eval_basis(flat.xi_knots, 1, 2, 0.4) * eval_basis(flat.eta_knots, 1, 2, 0.6)));

    flat.weights[0] = -1.0;
    CHECK_THROWS_AS(geometry_eval(flat, 0.0, 0.0), GeometryError);
}

TEST_CASE("Jacobian against central differences")
{
    const GeometryMap g = preset_quarter_annulus(0.3, 0.5);
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const double step = 1e-6;
    for (int s = 0; s < 5; ++s) {
        const double xi = u(gen), eta = u(gen);
        Jacobian2 fd;
        fd.col(0) = (geometry_eval(g, xi + step, eta) - geometry_eval(g, xi - step, eta)) / (2 * step);
        fd.col(1) = (geometry_eval(g, xi, eta + step) - geometry_eval(g, xi, eta - step)) / (2 * step);
        const Jacobian2 J = geometry_jacobian(g, xi, eta);
        CHECK((J - fd).norm() <= 1e-6 * J.norm());
        CHECK(J.determinant() != 0.0);
    }
}

TEST_CASE("refined geometry is the same map")
{
    const GeometryMap g = preset_quarter_annulus(0.3, 0.5);
    const GeometryMap f = refine_geometry(g, 8);
    CHECK(f.num_xi() == 10);
    for (const double xi : {0.0, 0.17, 0.5, 0.83, 1.0})
        for (const double eta : {0.0, 0.31, 0.66, 1.0}) {
            CHECK((geometry_eval(f, xi, eta) - geometry_eval(g, xi, eta)).norm() <= 1e-13);
            CHECK((geometry_jacobian(f, xi, eta) - geometry_jacobian(g, xi, eta)).norm() <= 1e-12);
        }
}
