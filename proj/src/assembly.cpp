#include "igatwo/assembly.hpp"
#include "igatwo/quadrature.hpp"
#include "igatwo/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace igatwo {

namespace {

/// Basis values/derivatives of one 1D space at the Gauss points of every span.
struct SpanTable {
    int degree = 0;
    std::vector<Matrix> val;  // (p+1) x nq per span
    std::vector<Matrix> der;
    std::vector<Vector> pts;
    std::vector<Vector> wts;
};

SpanTable span_table(const KnotVector& kv, int nq)
{
    SpanTable t;
    t.degree = kv.degree;
    const int p = kv.degree;
    for (int e = 0; e < kv.cells; ++e) {
        const GaussRule rule = gauss_legendre(nq, double(e) / kv.cells, double(e + 1) / kv.cells);
        Matrix v(p + 1, nq), d(p + 1, nq);
        for (int q = 0; q < nq; ++q) {
            const Matrix nd = basis_derivatives(kv, e + p, rule.points[q], 1);
            v.col(q) = nd.row(0).transpose();
            d.col(q) = nd.row(1).transpose();
        }
        t.val.push_back(std::move(v));
        t.der.push_back(std::move(d));
        t.pts.push_back(rule.points);
        t.wts.push_back(rule.weights);
    }
    return t;
}

/// Geometry map evaluated at tensor Gauss points; separable 1D factors of
/// the NURBS basis are cached per span.
class GeometrySampler {
public:
    GeometrySampler(const GeometryMap& g, const SpanTable& tx, const SpanTable& ty) : g_(g)
    {
        if (g.is_identity()) return;
        cache(g.xi_knots, tx, xs_);
        cache(g.eta_knots, ty, ys_);
    }

    /// x, J at Gauss point (qx, qy) of element (ex, ey).
    GeometryPoint at(const SpanTable& tx, const SpanTable& ty, int ex, int qx, int ey, int qy) const
    {
        if (g_.is_identity())
            return {Point2(tx.pts[ex][qx], ty.pts[ey][qy]), Jacobian2::Identity()};
        const Sample& a = xs_[ex][qx];
        const Sample& b = ys_[ey][qy];
        const int px = g_.xi_knots.degree, py = g_.eta_knots.degree;
        double W = 0.0, Wxi = 0.0, Weta = 0.0;
        Point2 S = Point2::Zero(), Sxi = Point2::Zero(), Seta = Point2::Zero();
        for (int c = 0; c <= py; ++c)
            for (int k = 0; k <= px; ++k) {
                const int idx = (a.span - px + k) + (b.span - py + c) * g_.num_xi();
                const double w = g_.weights[idx];
                const double v = w * a.n(0, k) * b.n(0, c);
                const double dxi = w * a.n(1, k) * b.n(0, c);
                const double deta = w * a.n(0, k) * b.n(1, c);
                W += v;
                Wxi += dxi;
                Weta += deta;
                S += v * g_.control[idx];
                Sxi += dxi * g_.control[idx];
                Seta += deta * g_.control[idx];
            }
        GeometryPoint out;
        out.x = S / W;
        out.jacobian.col(0) = (Sxi - out.x * Wxi) / W;
        out.jacobian.col(1) = (Seta - out.x * Weta) / W;
        if (!(W > 0.0) || !(out.jacobian.determinant() > 0.0)) {
            std::ostringstream os;
            os << "singular Jacobian in span (" << ex << ", " << ey << ") at (xi, eta) = ("
               << tx.pts[ex][qx] << ", " << ty.pts[ey][qy] << ")";
            throw GeometryError(os.str());
        }
        return out;
    }

private:
    struct Sample {
        int span;
        Matrix n;
    };

    static void cache(const KnotVector& kv, const SpanTable& t, std::vector<std::vector<Sample>>& out)
    {
        out.resize(t.pts.size());
        for (std::size_t e = 0; e < t.pts.size(); ++e)
            for (Index q = 0; q < t.pts[e].size(); ++q) {
                const double s = t.pts[e][q];
                const int span = find_span(kv, s);
                out[e].push_back({span, basis_derivatives(kv, span, s, 1)});
            }
    }

    const GeometryMap& g_;
    std::vector<std::vector<Sample>> xs_, ys_;
};

/// Column dof range coupled to each row dof of a 1D pair of spaces.
struct Pattern1D {
    std::vector<int> lo, hi;
};

Pattern1D pattern_1d(const SplineSpace1D& row, const SplineSpace1D& col)
{
    Pattern1D pat;
    const int m = row.cells();
    for (int i = 0; i < row.dim(); ++i) {
        const int b = row.basis_of(i);
        const int e0 = std::max(0, b - row.degree());
        const int e1 = std::min(m - 1, b);
        const int j0 = std::max(e0, col.first_basis());
        const int j1 = std::min(e1 + col.degree(), col.first_basis() + col.dim() - 1);
        pat.lo.push_back(col.dof_of(j0));
        pat.hi.push_back(col.dof_of(j1));
    }
    return pat;
}

/// Tensor-product sparsity with direct offsets into the value array.
class TensorPattern {
public:
    TensorPattern(const SplineSpace2D& row, const SplineSpace2D& col)
        : px_(pattern_1d(row.x, col.x)), py_(pattern_1d(row.y, col.y)), nrx_(row.nx()),
          ncx_(col.nx())
    {
        op_.resize(row.dim(), col.dim());
        Index nnz = 0;
        for (int iy = 0; iy < row.ny(); ++iy)
            for (int ix = 0; ix < row.nx(); ++ix)
                nnz += Index(py_.hi[iy] - py_.lo[iy] + 1) * (px_.hi[ix] - px_.lo[ix] + 1);
        op_.reserve(nnz);
        for (int iy = 0; iy < row.ny(); ++iy)
            for (int ix = 0; ix < row.nx(); ++ix) {
                const Index r = Index(iy) * nrx_ + ix;
                op_.startVec(r);
                for (int jy = py_.lo[iy]; jy <= py_.hi[iy]; ++jy)
                    for (int jx = px_.lo[ix]; jx <= px_.hi[ix]; ++jx)
                        op_.insertBack(r, Index(jy) * ncx_ + jx) = 0.0;
            }
        op_.finalize();
    }

    double& at(int ix, int iy, int jx, int jy)
    {
        const Index r = Index(iy) * nrx_ + ix;
        const Index width = px_.hi[ix] - px_.lo[ix] + 1;
        return op_.valuePtr()[op_.outerIndexPtr()[r] + (jy - py_.lo[iy]) * width + (jx - px_.lo[ix])];
    }

    SparseOperator take() { return std::move(op_); }

private:
    Pattern1D px_, py_;
    Index nrx_, ncx_;
    SparseOperator op_;
};

void require_same_mesh(const SplineSpace2D& a, const SplineSpace2D& b)
{
    require(a.cells() == b.cells(), "assembly: spaces must share the mesh");
}

/// Generic element loop for mass (stiffness = false) or stiffness forms.
SparseOperator assemble_generic(const SplineSpace2D& row, const SplineSpace2D& col,
                                const GeometryMap& geom, int nq, bool stiffness)
{
    const int pr = row.degree(), pc = col.degree();
    const int m = row.cells();
    const SpanTable rx = span_table(row.x.knots, nq), ry = span_table(row.y.knots, nq);
    const SpanTable cx = span_table(col.x.knots, nq), cy = span_table(col.y.knots, nq);
    const GeometrySampler sampler(geom, rx, ry);
    TensorPattern pattern(row, col);

    const int nr = pr + 1, nc = pc + 1;
    const int nterms = stiffness ? 4 : 1;
    std::vector<Matrix> X(nterms, Matrix(nr * nc, nq)), Y(nterms, Matrix(nq, nr * nc));
    std::vector<Matrix> coef(stiffness ? 3 : 1, Matrix(nq, nq));
    Matrix E(nr * nc, nr * nc), T(nr, nc);

    auto vec_into = [](const Matrix& M, Matrix& dst, int c) {
        dst.col(c) = Eigen::Map<const Vector>(M.data(), M.size());
    };

    for (int ey = 0; ey < m; ++ey) {
        for (int ex = 0; ex < m; ++ex) {
            for (int qy = 0; qy < nq; ++qy)
                for (int qx = 0; qx < nq; ++qx) {
                    const GeometryPoint gp = sampler.at(rx, ry, ex, qx, ey, qy);
                    const double det = gp.jacobian.determinant();
                    const double w = rx.wts[ex][qx] * ry.wts[ey][qy] * det;
                    if (stiffness) {
                        const Jacobian2 Ji = gp.jacobian.inverse();
                        const Jacobian2 K = w * Ji * Ji.transpose();
                        coef[0](qx, qy) = K(0, 0);
                        coef[1](qx, qy) = K(0, 1);
                        coef[2](qx, qy) = K(1, 1);
                    } else {
                        coef[0](qx, qy) = w;
                    }
                }

            const Matrix& Rx0 = rx.val[ex];
            const Matrix& Rx1 = rx.der[ex];
            const Matrix& Cx0 = cx.val[ex];
            const Matrix& Cx1 = cx.der[ex];
            const Matrix& Ry0 = ry.val[ey];
            const Matrix& Ry1 = ry.der[ey];
            const Matrix& Cy0 = cy.val[ey];
            const Matrix& Cy1 = cy.der[ey];

            for (int qy = 0; qy < nq; ++qy) {
                if (stiffness) {
                    T.noalias() = Rx1 * coef[0].col(qy).asDiagonal() * Cx1.transpose();
                    vec_into(T, X[0], qy);
                    T.noalias() = Rx1 * coef[1].col(qy).asDiagonal() * Cx0.transpose();
                    vec_into(T, X[1], qy);
                    T.noalias() = Rx0 * coef[1].col(qy).asDiagonal() * Cx1.transpose();
                    vec_into(T, X[2], qy);
                    T.noalias() = Rx0 * coef[2].col(qy).asDiagonal() * Cx0.transpose();
                    vec_into(T, X[3], qy);
                } else {
                    T.noalias() = Rx0 * coef[0].col(qy).asDiagonal() * Cx0.transpose();
                    vec_into(T, X[0], qy);
                }
                const Matrix* ys[4][2] = {{&Ry0, &Cy0}, {&Ry0, &Cy1}, {&Ry1, &Cy0}, {&Ry1, &Cy1}};
                for (int k = 0; k < nterms; ++k) {
                    T.noalias() = ys[k][0]->col(qy) * ys[k][1]->col(qy).transpose();
                    Y[k].row(qy) = Eigen::Map<const Vector>(T.data(), T.size()).transpose();
                }
            }
            E.noalias() = X[0] * Y[0];
            for (int k = 1; k < nterms; ++k) E.noalias() += X[k] * Y[k];

            for (int ay = 0; ay < nr; ++ay) {
                const int iy = row.y.dof_of(ey + ay);
                if (iy < 0) continue;
                for (int ax = 0; ax < nr; ++ax) {
                    const int ix = row.x.dof_of(ex + ax);
                    if (ix < 0) continue;
                    for (int by = 0; by < nc; ++by) {
                        const int jy = col.y.dof_of(ey + by);
                        if (jy < 0) continue;
                        for (int bx = 0; bx < nc; ++bx) {
                            const int jx = col.x.dof_of(ex + bx);
                            if (jx < 0) continue;
                            pattern.at(ix, iy, jx, jy) += E(ax + bx * nr, ay + by * nr);
                        }
                    }
                }
            }
        }
    }
    return pattern.take();
}

} // namespace

Matrix assemble_stiffness_1d(const SplineSpace1D& space)
{
    const int p = space.degree();
    require(p >= 1, "assemble_stiffness_1d: degree must be >= 1");
    const SpanTable t = span_table(space.knots, p + 1);
    Matrix A = Matrix::Zero(space.dim(), space.dim());
    for (int e = 0; e < space.cells(); ++e) {
        const Matrix local = t.der[e] * t.wts[e].asDiagonal() * t.der[e].transpose();
        for (int a = 0; a <= p; ++a) {
            const int i = space.dof_of(e + a);
            if (i < 0) continue;
            for (int b = 0; b <= p; ++b) {
                const int j = space.dof_of(e + b);
                if (j >= 0) A(i, j) += local(a, b);
            }
        }
    }
    return A;
}

Matrix assemble_mass_1d(const SplineSpace1D& row, const SplineSpace1D& col)
{
    require(row.cells() == col.cells(), "assemble_mass_1d: spaces must share the mesh");
    const int nq = std::max(row.degree(), col.degree()) + 1;
    const SpanTable r = span_table(row.knots, nq), c = span_table(col.knots, nq);
    Matrix M = Matrix::Zero(row.dim(), col.dim());
    for (int e = 0; e < row.cells(); ++e) {
        const Matrix local = r.val[e] * r.wts[e].asDiagonal() * c.val[e].transpose();
        for (int a = 0; a <= row.degree(); ++a) {
            const int i = row.dof_of(e + a);
            if (i < 0) continue;
            for (int b = 0; b <= col.degree(); ++b) {
                const int j = col.dof_of(e + b);
                if (j >= 0) M(i, j) += local(a, b);
            }
        }
    }
    return M;
}

namespace {

int gauss_points(int degree, const GeometryMap& geom, const AssemblyOptions& opts)
{
    return degree + 1 + (geom.is_identity() ? 0 : 2) + opts.extra_points;
}

} // namespace

SparseOperator assemble_stiffness(const SplineSpace2D& space, const GeometryMap& geom,
                                  const AssemblyOptions& opts)
{
    if (geom.is_identity() && opts.tensor_fast_path && opts.extra_points == 0) {
        const SparseOperator K = to_sparse(assemble_stiffness_1d(space.x));
        const SparseOperator M = to_sparse(assemble_mass_1d(space.x, space.x));
        SparseOperator A = kron(M, K);
        A += kron(K, M);
        return A;
    }
    return assemble_generic(space, space, geom, gauss_points(space.degree(), geom, opts), true);
}

SparseOperator assemble_mass(const SplineSpace2D& row, const SplineSpace2D& col,
                             const GeometryMap& geom, const AssemblyOptions& opts)
{
    require_same_mesh(row, col);
    if (geom.is_identity() && opts.tensor_fast_path && opts.extra_points == 0) {
        const SparseOperator M = to_sparse(assemble_mass_1d(row.x, col.x));
        return kron(M, M);
    }
    const int nq = gauss_points(std::max(row.degree(), col.degree()), geom, opts);
    return assemble_generic(row, col, geom, nq, false);
}

Vector assemble_load(const SplineSpace2D& space, const GeometryMap& geom, const ScalarField& f,
                     const AssemblyOptions& opts)
{
    const int p = space.degree();
    const int nq = gauss_points(p, geom, opts);
    const SpanTable tx = span_table(space.x.knots, nq), ty = span_table(space.y.knots, nq);
    const GeometrySampler sampler(geom, tx, ty);
    Vector b = Vector::Zero(space.dim());
    Matrix V(nq, nq);
    for (int ey = 0; ey < space.cells(); ++ey)
        for (int ex = 0; ex < space.cells(); ++ex) {
            for (int qy = 0; qy < nq; ++qy)
                for (int qx = 0; qx < nq; ++qx) {
                    const GeometryPoint gp = sampler.at(tx, ty, ex, qx, ey, qy);
                    V(qx, qy) = tx.wts[ex][qx] * ty.wts[ey][qy] * gp.jacobian.determinant() * f(gp.x);
                }
            const Matrix local = tx.val[ex] * V * ty.val[ey].transpose();
            for (int ay = 0; ay <= p; ++ay) {
                const int iy = space.y.dof_of(ey + ay);
                if (iy < 0) continue;
                for (int ax = 0; ax <= p; ++ax) {
                    const int ix = space.x.dof_of(ex + ax);
                    if (ix >= 0) b[space.dof(ix, iy)] += local(ax, ay);
                }
            }
        }
    return b;
}

double l2_error(const SplineSpace2D& space, const GeometryMap& geom, const Vector& coeffs,
                const ScalarField& exact)
{
    require(coeffs.size() == space.dim(), "l2_error: coefficient size mismatch");
    const int p = space.degree();
    const int nq = p + 3;
    const SpanTable tx = span_table(space.x.knots, nq), ty = span_table(space.y.knots, nq);
    const GeometrySampler sampler(geom, tx, ty);
    double sum = 0.0;
    Matrix C(p + 1, p + 1);
    for (int ey = 0; ey < space.cells(); ++ey)
        for (int ex = 0; ex < space.cells(); ++ex) {
            for (int ay = 0; ay <= p; ++ay)
                for (int ax = 0; ax <= p; ++ax) {
                    const int ix = space.x.dof_of(ex + ax), iy = space.y.dof_of(ey + ay);
                    C(ax, ay) = (ix < 0 || iy < 0) ? 0.0 : coeffs[space.dof(ix, iy)];
                }
            const Matrix uh = tx.val[ex].transpose() * C * ty.val[ey];
            for (int qy = 0; qy < nq; ++qy)
                for (int qx = 0; qx < nq; ++qx) {
                    const GeometryPoint gp = sampler.at(tx, ty, ex, qx, ey, qy);
                    const double d = uh(qx, qy) - exact(gp.x);
                    sum += tx.wts[ex][qx] * ty.wts[ey][qy] * gp.jacobian.determinant() * d * d;
                }
        }
    return std::sqrt(sum);
}

} // namespace igatwo
