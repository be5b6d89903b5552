#include "igatwo/transfer.hpp"
#include "igatwo/assembly.hpp"
#include "igatwo/sparse.hpp"

namespace igatwo {

TransferPair degree_restriction(const SplineSpace2D& fine, const SplineSpace2D& coarse,
                                const GeometryMap& geom)
{
    require(fine.cells() == coarse.cells(), "degree_restriction: spaces must share the mesh");
    require(coarse.degree() <= fine.degree(), "degree_restriction: coarse degree exceeds fine degree");
    TransferPair pair;
    pair.kind = TransferPair::Kind::degree;
    if (coarse.degree() == fine.degree()) {
        pair.restriction = identity_operator(fine.dim());
        pair.prolongation = identity_operator(fine.dim());
        return pair;
    }
    const SparseOperator M = assemble_mass(coarse, fine, geom);
    // row sums of the unconstrained coarse mass = integral of each coarse function,
    // on the quadrature of M so that constants are reproduced exactly
    AssemblyOptions quad;
    quad.extra_points = fine.degree() - coarse.degree();
    const Vector lumped = assemble_load(coarse, geom, [](const Point2&) { return 1.0; }, quad);
    const Vector inv = lumped.cwiseInverse();
    pair.restriction = inv.asDiagonal() * M;
    pair.prolongation = SparseOperator(M.transpose()) * inv.asDiagonal();
    return pair;
}

TransferPair mesh_prolongation(int p, int coarse_cells)
{
    require(p >= 1, "mesh_prolongation: degree must be >= 1");
    require(coarse_cells >= 1, "mesh_prolongation: need at least one coarse subinterval");
    const Matrix full = refinement_matrix(p, coarse_cells);
    const SplineSpace1D cs = make_space_1d(p, coarse_cells);
    const SplineSpace1D fs = make_space_1d(p, 2 * coarse_cells);
    const Matrix P1 = full.block(fs.first_basis(), cs.first_basis(), fs.dim(), cs.dim());
    const SparseOperator P1s = to_sparse(P1, 1e-15);

    TransferPair pair;
    pair.kind = TransferPair::Kind::mesh;
    pair.prolongation = kron(P1s, P1s);
    pair.restriction = 0.25 * SparseOperator(pair.prolongation.transpose());
    pair.coarse_scale = 0.25;
    return pair;
}

TransferPair compose_aggressive(const TransferPair& degree, const TransferPair& mesh)
{
    require(degree.coarse_dim() == mesh.fine_dim(), "compose_aggressive: inner dimensions differ");
    TransferPair pair;
    pair.kind = TransferPair::Kind::composed;
    pair.restriction = mesh.restriction * degree.restriction;
    pair.prolongation = degree.prolongation * mesh.prolongation;
    pair.coarse_scale = degree.coarse_scale * mesh.coarse_scale;
    return pair;
}

} // namespace igatwo
