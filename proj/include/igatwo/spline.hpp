#ifndef IGATWO_SPLINE_HPP
#define IGATWO_SPLINE_HPP

#include "igatwo/common.hpp"

#include <vector>

namespace igatwo {

/// Open uniform knot vector of degree p on [0,1] with m subintervals.
/// Holds 2p+m+1 knots: p+1 zeros, the interior breakpoints i/m, p+1 ones.
struct KnotVector {
    int degree = 0;
    int cells = 1;
    std::vector<double> knots;

    /// Number of degree-p basis functions, m+p.
    int num_basis() const { return cells + degree; }
    double h() const { return 1.0 / cells; }
};

KnotVector make_open_uniform_knots(int p, int m);

/// Cox-de Boor evaluation of N_i^k (0-based i, 0 <= i < m+2p-k). The last
/// nonempty span is closed on the right so that the basis covers [0,1].
double eval_basis(const KnotVector& kv, int i, int k, double xi);

/// d/dxi N_i^p for the full degree of the knot vector (p >= 1).
double eval_basis_derivative(const KnotVector& kv, int i, double xi);

/// Knot index s with knots[s] <= xi < knots[s+1], s in [p, p+m-1].
int find_span(const KnotVector& kv, double xi);

struct NonzeroSpan {
    int span = 0;
    std::vector<int> indices;  ///< the p+1 basis indices span-p .. span
};

NonzeroSpan nonzero_span(const KnotVector& kv, double xi);

/// Values and derivatives of the p+1 functions nonzero on `span`.
/// Row k holds the k-th derivative, column j belongs to basis span-p+j.
Matrix basis_derivatives(const KnotVector& kv, int span, double xi, int nderiv);

/// Univariate spline space; the constrained variant drops the first and
/// last basis function (homogeneous Dirichlet trace).
struct SplineSpace1D {
    KnotVector knots;
    bool constrained = true;

    int degree() const { return knots.degree; }
    int cells() const { return knots.cells; }
    int first_basis() const { return constrained ? 1 : 0; }
    int dim() const { return constrained ? knots.num_basis() - 2 : knots.num_basis(); }
    /// Local dof index -> full basis index.
    int basis_of(int dof) const { return dof + first_basis(); }
    /// Full basis index -> local dof index, or -1 when the function is dropped.
    int dof_of(int basis) const
    {
        const int d = basis - first_basis();
        return (d >= 0 && d < dim()) ? d : -1;
    }
};

/// Tensor-product space with equal degree and mesh in both directions.
/// Dofs are numbered lexicographically with x fastest: iy * nx + ix.
struct SplineSpace2D {
    SplineSpace1D x;
    SplineSpace1D y;

    int degree() const { return x.degree(); }
    int cells() const { return x.cells(); }
    int nx() const { return x.dim(); }
    int ny() const { return y.dim(); }
    Index dim() const { return Index(nx()) * ny(); }
    Index dof(int ix, int iy) const { return Index(iy) * nx() + ix; }
};

SplineSpace1D make_space_1d(int p, int m, bool constrained = true);
SplineSpace2D make_space_2d(int p, int m, bool constrained = true);

/// Value of sum_i c_i N_i at xi; c is indexed by the space's dofs.
double eval_spline(const SplineSpace1D& space, const Vector& coeffs, double xi);
double eval_spline(const SplineSpace2D& space, const Vector& coeffs, double xi, double eta);

/// Boehm insertion of a single knot u. `ctrl` has one row per basis function
/// (any number of columns); returns the refined knots and control rows.
void insert_knot(std::vector<double>& knots, int p, Matrix& ctrl, double u);

/// Dense (2m+p) x (m+p) matrix embedding the full degree-p space on m cells
/// into the one on 2m cells, obtained by inserting every midpoint knot.
Matrix refinement_matrix(int p, int coarse_cells);

} // namespace igatwo

#endif // IGATWO_SPLINE_HPP
