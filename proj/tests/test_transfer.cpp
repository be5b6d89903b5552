#include "doctest.h"

#include "igatwo/geometry.hpp"
#include "igatwo/sparse.hpp"
#include "igatwo/transfer.hpp"

#include <cmath>

using namespace igatwo;

namespace {

Vector greville_samples(const SplineSpace2D& s)
{
    auto greville = [](const SplineSpace1D& sp, int dof) {
        const int i = sp.basis_of(dof), p = sp.degree();
        double g = 0.0;
        for (int k = 1; k <= p; ++k) g += sp.knots.knots[i + k];
        return g / p;
    };
    Vector c(s.dim());
    for (int iy = 0; iy < s.ny(); ++iy)
        for (int ix = 0; ix < s.nx(); ++ix)
            c[s.dof(ix, iy)] = std::exp(greville(s.x, ix)) * std::cos(greville(s.y, iy));
    return c;
}

} // namespace

TEST_CASE("degree restriction preserves constants")
{
    for (const auto& geom : {identity_square(), preset_quarter_annulus(0.3, 0.5)})
        for (int p = 3; p <= 6; ++p)
            for (const int pl : {1, 2}) {
                if (!geom.is_identity() && pl < 2) continue;
                const TransferPair t =
                    degree_restriction(make_space_2d(p, 6, false), make_space_2d(pl, 6, false), geom);
                const Vector r = t.restriction * Vector::Ones(t.fine_dim());
                CHECK((r - Vector::Ones(t.coarse_dim())).cwiseAbs().maxCoeff() <= 1e-12);
                CHECK(max_abs_difference(t.prolongation, SparseOperator(t.restriction.transpose())) <= 1e-15);
            }
}

TEST_CASE("degree restriction shapes and errors")
{
    const GeometryMap g = identity_square();
    const TransferPair t = degree_restriction(make_space_2d(3, 8), make_space_2d(1, 8), g);
    CHECK(t.restriction.rows() == 49);
    CHECK(t.restriction.cols() == 81);
    CHECK(t.kind == TransferPair::Kind::degree);
    CHECK(t.coarse_scale == 1.0);
    CHECK_THROWS_AS(degree_restriction(make_space_2d(1, 8), make_space_2d(3, 8), g), ParameterError);
    CHECK_THROWS_AS(degree_restriction(make_space_2d(3, 8), make_space_2d(1, 4), g), ParameterError);

    const TransferPair same = degree_restriction(make_space_2d(2, 8), make_space_2d(2, 8), g);
    CHECK(max_abs_difference(same.restriction, identity_operator(64)) <= 1e-14);
    CHECK(max_abs_difference(same.prolongation, identity_operator(64)) <= 1e-14);
}

TEST_CASE("degree round trip is second order away from the boundary")
{
    double err[2];
    for (int k = 0; k < 2; ++k) {
        const SplineSpace2D fine = make_space_2d(3, 8 << k, false);
        const TransferPair t = degree_restriction(fine, make_space_2d(1, 8 << k, false), identity_square());
        const Vector c = greville_samples(fine);
        const Vector d = t.prolongation * (t.restriction * c) - c;
        err[k] = 0.0;
        for (int iy = 4; iy < fine.ny() - 4; ++iy)
            for (int ix = 4; ix < fine.nx() - 4; ++ix) err[k] = std::max(err[k], std::abs(d[fine.dof(ix, iy)]));
    }
    CHECK(err[0] / err[1] >= 3.0);
}

TEST_CASE("mesh transfer")
{
    for (int p = 1; p <= 6; ++p) {
        const int mc = 8;
        const TransferPair t = mesh_prolongation(p, mc);
        const int nc = p + mc - 2, nf = p + 2 * mc - 2;
        REQUIRE(t.coarse_dim() == Index(nc) * nc);
        REQUIRE(t.fine_dim() == Index(nf) * nf);
        CHECK(t.coarse_scale == 0.25);
        CHECK(max_abs_difference(t.restriction, SparseOperator(0.25 * t.prolongation.transpose())) <= 1e-15);

        const Vector r = t.restriction * Vector::Ones(t.fine_dim());
        for (int iy = p; iy < nc - p; ++iy)
            for (int ix = p; ix < nc - p; ++ix) CHECK(std::abs(r[iy * nc + ix] - 1.0) <= 1e-12);

        const Matrix T = refinement_matrix(p, mc);
        const SparseOperator Tc = to_sparse(T.block(1, 1, nf, nc));
        CHECK(max_abs_difference(t.prolongation, kron(Tc, Tc)) <= 1e-15);
    }
    CHECK_THROWS_AS(mesh_prolongation(2, 0), ParameterError);
}

TEST_CASE("aggressive composition")
{
    const GeometryMap g = identity_square();
    const TransferPair mesh = mesh_prolongation(1, 4);
    const TransferPair id = degree_restriction(make_space_2d(1, 8), make_space_2d(1, 8), g);
    const TransferPair same = compose_aggressive(id, mesh);
    CHECK(max_abs_difference(same.restriction, mesh.restriction) <= 1e-15);
    CHECK(max_abs_difference(same.prolongation, mesh.prolongation) <= 1e-15);
    CHECK(same.coarse_scale == 0.25);

    const TransferPair deg = degree_restriction(make_space_2d(3, 8), make_space_2d(1, 8), g);
    const TransferPair agg = compose_aggressive(deg, mesh);
    CHECK(agg.kind == TransferPair::Kind::composed);
    CHECK(agg.coarse_dim() == 9);
    CHECK(agg.fine_dim() == 81);
    CHECK(max_abs_difference(agg.restriction, SparseOperator(mesh.restriction * deg.restriction)) <= 1e-15);
    CHECK_THROWS_AS(compose_aggressive(deg, mesh_prolongation(1, 8)), ParameterError);
}
