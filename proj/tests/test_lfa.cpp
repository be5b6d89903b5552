#include "doctest.h"

#include "igatwo/lfa.hpp"
#include "igatwo/solver.hpp"

#include <cmath>
#include <complex>

using namespace igatwo;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

namespace {

const double pi = std::acos(-1.0);

/// exp(i (tx * ix + ty * iy)) on the n x n grid.
CVector mode(int n, double tx, double ty)
{
    CVector v(Index(n) * n);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) v[iy * n + ix] = std::polar(1.0, tx * ix + ty * iy);
    return v;
}

CVector apply_real(const SparseOperator& op, const CVector& v)
{
    const Vector re = op * v.real(), im = op * v.imag();
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

CVector apply_real(const TorusProblem& tp, const CVector& v)
{
    const Vector re = tp.apply(v.real()), im = tp.apply(v.imag());
    return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

} // namespace

TEST_CASE("bilinear stencil")
{
    const Stencil s = interior_stencil(1, 16);
    REQUIRE(s.radius() == 1);
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
            CHECK(s(dx, dy) == doctest::Approx(dx == 0 && dy == 0 ? 8.0 / 3 : -1.0 / 3));
    CHECK_THROWS_AS(interior_stencil(3, 6), ParameterError);
}

TEST_CASE("stencils are symmetric, annihilate constants and do not depend on m")
{
    for (int p = 1; p <= 8; ++p) {
        const Stencil s = interior_stencil(p);
        CHECK(s.radius() == p);
        CHECK(std::abs(s.values.sum()) <= 1e-12);
        CHECK((s.values - s.values.reverse()).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((s.values - s.values.transpose()).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((s.values - interior_stencil(p, 64).values).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(std::abs(stencil_symbol(s, 0.0, 0.0)) <= 1e-12);
        CHECK(stencil_symbol(s, 0.7, -1.1).real() > 0.0);
    }
}

TEST_CASE("transfer taps")
{
    CHECK(degree_restriction_taps(3, 3).size() == 1);
    for (int p = 2; p <= 8; ++p) {
        double sum = 0.0;
        for (const Tap& t : degree_restriction_taps(p, 1)) sum += t.value;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        double msum = 0.0;
        for (const Tap& t : mesh_prolongation_taps(p)) msum += t.value;
        CHECK(msum == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("torus transfers are circulant")
{
    const int n = 24;
    const TorusProblem tp = build_torus_problem(4, 1, 9, LfaVariant::two_grid_aggressive, {n});
    const std::vector<Tap> taps = degree_restriction_taps(4, 1);
    const std::vector<Tap> mesh = mesh_prolongation_taps(1);
    const TorusProblem deg = build_torus_problem(4, 1, 9, LfaVariant::two_grid, {n});
    for (const auto& k : {std::pair{1, 0}, std::pair{3, 5}, std::pair{-4, 2}}) {
        const double tx = 2 * pi * k.first / n, ty = 2 * pi * k.second / n;
        const CVector v = mode(n, tx, ty);
        CHECK((apply_real(deg.fine_operator(), v) -
               stencil_symbol(interior_stencil(4), tx, ty) * v).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((apply_real(deg.restriction(), v) - taps_symbol(taps, tx, ty) * v).cwiseAbs().maxCoeff() <= 1e-10);

        // mesh restriction couples theta to the coarse frequency 2 theta
        const Complex rm = 0.25 * taps_symbol(mesh, tx, ty) * taps_symbol(taps, tx, ty);
        const CVector coarse = mode(n / 2, 2 * tx, 2 * ty);
        CHECK((apply_real(tp.restriction(), v) - rm * coarse).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("prolongation stays in the span of the harmonics")
{
    const int n = 24;
    const TorusProblem tp = build_torus_problem(3, 1, 9, LfaVariant::two_grid_aggressive, {n});
    const double tx = 2 * pi * 2 / n, ty = 2 * pi * 3 / n;
    const CVector fine = apply_real(tp.mesh_prolongation_operator(), mode(n / 2, 2 * tx, 2 * ty));
    Eigen::MatrixXcd H(fine.size(), 4);
    H.col(0) = mode(n, tx, ty);
    H.col(1) = mode(n, tx + pi, ty + pi);
    H.col(2) = mode(n, tx + pi, ty);
    H.col(3) = mode(n, tx, ty + pi);
    const Eigen::Vector4cd c = H.colPivHouseholderQr().solve(fine);
    CHECK((H * c - fine).cwiseAbs().maxCoeff() <= 1e-10);
    const Complex want = 0.25 * std::conj(taps_symbol(mesh_prolongation_taps(1), tx, ty));
    CHECK(std::abs(c[0] - want) <= 1e-10);
}

TEST_CASE("coarse-grid correction symbols match the torus")
{
    const int n = 24;
    TorusOptions opts{n};
    opts.fine_pre = 0;
    const double tx = 2 * pi * 2 / n, ty = -2 * pi * 3 / n;
    const double hx[4] = {tx, tx + pi, tx + pi, tx};
    const double hy[4] = {ty, ty + pi, ty, ty + pi};
    for (const LfaVariant v : {LfaVariant::two_grid, LfaVariant::two_grid_aggressive})
        for (int p = 2; p <= 4; ++p) {
            const TorusProblem tp = build_torus_problem(p, 1, 9, v, opts);
            const Eigen::Matrix4cd K = tp.error_symbol(tx, ty);
            for (int k = 0; k < 4; ++k) {
                const CVector out = apply_real(tp, mode(n, hx[k], hy[k]));
                CVector want = CVector::Zero(out.size());
                for (int j = 0; j < 4; ++j) want += K(j, k) * mode(n, hx[j], hy[j]);
                CHECK((out - want).cwiseAbs().maxCoeff() <= 1e-9);
            }
        }
}

TEST_CASE("exact coarse solve annihilates the error")
{
    for (int p = 2; p <= 4; ++p) {
        const TorusProblem tp = build_torus_problem(p, p, 9, LfaVariant::two_grid, {24});
        CHECK(tp.apply(random_vector(tp.dim(), 5)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(spectral_factor(tp).radius <= 1e-10);
    }
    const TorusProblem tp = build_torus_problem(2, 1, 9, LfaVariant::two_grid, {24});
    CHECK(tp.apply(Vector::Ones(tp.dim())).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("torus parameters")
{
    CHECK_THROWS_AS(build_torus_problem(2, 1, 9, LfaVariant::two_grid, {50}), ParameterError);
    CHECK_THROWS_AS(build_torus_problem(8, 1, 9, LfaVariant::two_grid, {18}), ParameterError);
    CHECK_THROWS_AS(build_torus_problem(2, 3, 9, LfaVariant::two_grid, {24}), ParameterError);
    TorusOptions colour{24};
    colour.ordering = BlockOrdering::three_colour;
    CHECK_THROWS_AS(build_torus_problem(2, 1, 9, LfaVariant::two_grid, colour).error_symbol(0.1, 0.2),
                    ParameterError);
}

TEST_CASE("convergence factors")
{
    const LfaReport two = spectral_factor(build_torus_problem(2, 1, 9, LfaVariant::two_grid));
    CHECK(two.from_symbols);
    CHECK(two.n == 48);
    CHECK(std::abs(two.radius - 0.1234) <= 0.05);
    CHECK(std::abs(spectral_factor(build_torus_problem(4, 1, 9, LfaVariant::three_grid)).radius - 0.4566) <= 0.05);
    CHECK(std::abs(spectral_factor(build_torus_problem(2, 1, 9, LfaVariant::two_grid_aggressive)).radius - 0.1723) <=
          0.05);

    double prev = 0.0;
    for (const LfaReport& r : sweep_table(LfaVariant::two_grid, 2, 8, {9}, 1)) {
        CHECK(r.radius >= prev);
        prev = r.radius;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("torus extent barely moves the factor")
{
    for (int p = 2; p <= 4; ++p) {
        const double a = spectral_factor(build_torus_problem(p, 1, 9, LfaVariant::two_grid, {48})).radius;
        const double b = spectral_factor(build_torus_problem(p, 1, 9, LfaVariant::two_grid, {96})).radius;
        CHECK(std::abs(a - b) <= 0.01);
    }
}

TEST_CASE("coloured sweeps by Arnoldi")
{
    TorusOptions opts{24};
    opts.ordering = BlockOrdering::three_colour;
    const LfaReport r = spectral_factor(build_torus_problem(2, 1, 9, LfaVariant::two_grid, opts));
    CHECK_FALSE(r.from_symbols);
    CHECK(r.converged);
    CHECK(r.radius > 0.0);
    CHECK(r.radius < spectral_factor(build_torus_problem(2, 1, 9, LfaVariant::two_grid)).radius);
}
