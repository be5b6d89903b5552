#include "igatwo/spline.hpp"

#include <algorithm>
#include <cmath>

namespace igatwo {

KnotVector make_open_uniform_knots(int p, int m)
{
    require(p >= 0, "knot vector: degree must be >= 0");
    require(m >= 1, "knot vector: subinterval count must be >= 1");
    KnotVector kv;
    kv.degree = p;
    kv.cells = m;
    kv.knots.reserve(2 * p + m + 1);
    kv.knots.insert(kv.knots.end(), p + 1, 0.0);
    for (int i = 1; i < m; ++i) kv.knots.push_back(double(i) / m);
    kv.knots.insert(kv.knots.end(), p + 1, 1.0);
    return kv;
}

namespace {

double cox_de_boor(const std::vector<double>& U, int i, int k, double xi)
{
    if (k == 0) {
        if (U[i] <= xi && xi < U[i + 1]) return 1.0;
        // closed right end of the last nonempty span
        return (xi == U.back() && U[i] < U[i + 1] && U[i + 1] == U.back()) ? 1.0 : 0.0;
    }
    double value = 0.0;
    const double dl = U[i + k] - U[i];
    if (dl != 0.0) value += (xi - U[i]) / dl * cox_de_boor(U, i, k - 1, xi);
    const double dr = U[i + k + 1] - U[i + 1];
    if (dr != 0.0) value += (U[i + k + 1] - xi) / dr * cox_de_boor(U, i + 1, k - 1, xi);
    return value;
}

} // namespace

double eval_basis(const KnotVector& kv, int i, int k, double xi)
{
    require(k >= 0 && k <= kv.degree, "eval_basis: degree out of range");
    require(i >= 0 && i < kv.cells + 2 * kv.degree - k, "eval_basis: basis index out of range");
    return cox_de_boor(kv.knots, i, k, xi);
}

double eval_basis_derivative(const KnotVector& kv, int i, double xi)
{
    const int p = kv.degree;
    require(p >= 1, "eval_basis_derivative: degree 0 has no derivative");
    require(i >= 0 && i < kv.num_basis(), "eval_basis_derivative: basis index out of range");
    const auto& U = kv.knots;
    double d = 0.0;
    const double dl = U[i + p] - U[i];
    if (dl != 0.0) d += p / dl * cox_de_boor(U, i, p - 1, xi);
    const double dr = U[i + p + 1] - U[i + 1];
    if (dr != 0.0) d -= p / dr * cox_de_boor(U, i + 1, p - 1, xi);
    return d;
}

int find_span(const KnotVector& kv, double xi)
{
    const int p = kv.degree;
    const int last = p + kv.cells - 1;
    if (xi >= 1.0) return last;
    if (xi <= 0.0) return p;
    int s = p + std::clamp(int(std::floor(xi * kv.cells)), 0, kv.cells - 1);
    while (s > p && kv.knots[s] > xi) --s;
    while (s < last && kv.knots[s + 1] <= xi) ++s;
    return s;
}

NonzeroSpan nonzero_span(const KnotVector& kv, double xi)
{
    NonzeroSpan out;
    out.span = find_span(kv, xi);
    for (int j = out.span - kv.degree; j <= out.span; ++j) out.indices.push_back(j);
    return out;
}

Matrix basis_derivatives(const KnotVector& kv, int span, double xi, int nderiv)
{
    const int p = kv.degree;
    const auto& U = kv.knots;
    const int n = std::min(nderiv, p);
    Matrix ders = Matrix::Zero(nderiv + 1, p + 1);

    Matrix ndu(p + 1, p + 1);
    std::vector<double> left(p + 1), right(p + 1);
    ndu(0, 0) = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = xi - U[span + 1 - j];
        right[j] = U[span + j] - xi;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r];
            const double temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }
    for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

    Matrix a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a.setZero();
        a(0, 0) = 1.0;
        for (int k = 1; k <= n; ++k) {
            double d = 0.0;
            const int rk = r - k;
            const int pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    double factor = p;
    for (int k = 1; k <= n; ++k) {
        ders.row(k) *= factor;
        factor *= (p - k);
    }
    return ders;
}

SplineSpace1D make_space_1d(int p, int m, bool constrained)
{
    SplineSpace1D s{make_open_uniform_knots(p, m), constrained};
    require(s.dim() >= 1, "spline space: no degrees of freedom left after constraints");
    return s;
}

SplineSpace2D make_space_2d(int p, int m, bool constrained)
{
    return {make_space_1d(p, m, constrained), make_space_1d(p, m, constrained)};
}

double eval_spline(const SplineSpace1D& space, const Vector& coeffs, double xi)
{
    require(coeffs.size() == space.dim(), "eval_spline: coefficient size mismatch");
    const int span = find_span(space.knots, xi);
    const Matrix N = basis_derivatives(space.knots, span, xi, 0);
    double v = 0.0;
    for (int j = 0; j <= space.degree(); ++j) {
        const int dof = space.dof_of(span - space.degree() + j);
        if (dof >= 0) v += coeffs[dof] * N(0, j);
    }
    return v;
}

double eval_spline(const SplineSpace2D& space, const Vector& coeffs, double xi, double eta)
{
    require(coeffs.size() == space.dim(), "eval_spline: coefficient size mismatch");
    const int p = space.degree();
    const int sx = find_span(space.x.knots, xi);
    const int sy = find_span(space.y.knots, eta);
    const Matrix Nx = basis_derivatives(space.x.knots, sx, xi, 0);
    const Matrix Ny = basis_derivatives(space.y.knots, sy, eta, 0);
    double v = 0.0;
    for (int b = 0; b <= p; ++b) {
        const int iy = space.y.dof_of(sy - p + b);
        if (iy < 0) continue;
        for (int a = 0; a <= p; ++a) {
            const int ix = space.x.dof_of(sx - p + a);
            if (ix < 0) continue;
            v += coeffs[space.dof(ix, iy)] * Nx(0, a) * Ny(0, b);
        }
    }
    return v;
}

void insert_knot(std::vector<double>& U, int p, Matrix& ctrl, double u)
{
    const int n = int(ctrl.rows());
    require(int(U.size()) == n + p + 1, "insert_knot: knot/control size mismatch");
    require(u > U.front() && u < U.back(), "insert_knot: knot must be interior");
    const int k = int(std::upper_bound(U.begin(), U.end(), u) - U.begin()) - 1;

    Matrix Q(n + 1, ctrl.cols());
    for (int i = 0; i <= k - p; ++i) Q.row(i) = ctrl.row(i);
    for (int i = std::max(k - p + 1, 0); i <= k; ++i) {
        const double alpha = (u - U[i]) / (U[i + p] - U[i]);
        Q.row(i) = alpha * ctrl.row(i) + (1.0 - alpha) * ctrl.row(i - 1);
    }
    for (int i = k + 1; i <= n; ++i) Q.row(i) = ctrl.row(i - 1);

    U.insert(U.begin() + k + 1, u);
    ctrl = std::move(Q);
}

Matrix refinement_matrix(int p, int coarse_cells)
{
    KnotVector kv = make_open_uniform_knots(p, coarse_cells);
    Matrix ctrl = Matrix::Identity(kv.num_basis(), kv.num_basis());
    for (int i = 0; i < coarse_cells; ++i)
        insert_knot(kv.knots, p, ctrl, (i + 0.5) / coarse_cells);
    return ctrl;
}

} // namespace igatwo
