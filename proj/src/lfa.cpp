#include "igatwo/lfa.hpp"
#include "igatwo/assembly.hpp"
#include "igatwo/spline.hpp"
#include "igatwo/solver.hpp"
#include "igatwo/sparse.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

namespace igatwo {

Stencil interior_stencil(int p, int m)
{
    require(p >= 1, "interior_stencil: degree must be >= 1");
    if (m == 0) m = 4 * p + 4;
    require(m >= 4 * p + 4, "interior_stencil: mesh too coarse for a full-support central row");
    const SplineSpace2D space = make_space_2d(p, m);
    const SparseOperator A = assemble_stiffness(space, identity_square());
    const int c = space.nx() / 2;
    Stencil s;
    s.degree = p;
    s.values = Matrix::Zero(2 * p + 1, 2 * p + 1);
    for (SparseOperator::InnerIterator it(A, space.dof(c, c)); it; ++it) {
        const int dx = int(it.col() % space.nx()) - c;
        const int dy = int(it.col() / space.nx()) - c;
        s.values(dy + p, dx + p) = it.value();
    }
    return s;
}

std::string to_string(LfaVariant v)
{
    switch (v) {
    case LfaVariant::smoother: return "smoother";
    case LfaVariant::two_grid: return "two-grid";
    case LfaVariant::three_grid: return "three-grid";
    case LfaVariant::two_grid_aggressive: return "two-grid-aggressive";
    }
    return "?";
}

namespace {

/// Periodic operator from rows on an nr x nr torus to columns on an nc x nc
/// torus; row (a, b) couples to column (stride a + dx, stride b + dy) mod nc.
SparseOperator periodic_operator(int nr, int nc, int stride, const std::vector<Tap>& tx,
                                 const std::vector<Tap>& ty)
{
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(std::size_t(nr) * nr * tx.size() * ty.size());
    auto wrap = [nc](int v) { return ((v % nc) + nc) % nc; };
    for (int b = 0; b < nr; ++b)
        for (int a = 0; a < nr; ++a)
            for (const Tap& y : ty)
                for (const Tap& x : tx) {
                    const int col = wrap(stride * b + y.offset) * nc + wrap(stride * a + x.offset);
                    trips.emplace_back(b * nr + a, col, x.value * y.value);
                }
    SparseOperator op(Index(nr) * nr, Index(nc) * nc);
    op.setFromTriplets(trips.begin(), trips.end());
    op.prune(0.0);
    return op;
}

SparseOperator periodic_stencil(int n, const Stencil& s)
{
    std::vector<Eigen::Triplet<double>> trips;
    const int r = s.radius();
    auto wrap = [n](int v) { return ((v % n) + n) % n; };
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a)
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    if (s(dx, dy) != 0.0)
                        trips.emplace_back(b * n + a, wrap(b + dy) * n + wrap(a + dx), s(dx, dy));
    SparseOperator op(Index(n) * n, Index(n) * n);
    op.setFromTriplets(trips.begin(), trips.end());
    return op;
}

Vector remove_mean(Vector v)
{
    v.array() -= v.mean();
    return v;
}

using Complex = std::complex<double>;

/// exp(i theta k) for k in [-r, r], stored at k + r.
std::vector<Complex> phases(double theta, int r)
{
    std::vector<Complex> e(2 * r + 1);
    for (int k = -r; k <= r; ++k) e[k + r] = std::polar(1.0, theta * k);
    return e;
}

bool precedes_origin(int dx, int dy) { return dy < 0 || (dy == 0 && dx < 0); }

} // namespace

Complex stencil_symbol(const Stencil& s, double tx, double ty)
{
    const int r = s.radius();
    const auto ex = phases(tx, r), ey = phases(ty, r);
    Complex sum = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) sum += s(dx, dy) * ex[dx + r] * ey[dy + r];
    return sum;
}

Complex taps_symbol(const std::vector<Tap>& taps, double tx, double ty)
{
    Complex sx = 0.0, sy = 0.0;
    for (const Tap& t : taps) {
        sx += t.value * std::polar(1.0, tx * t.offset);
        sy += t.value * std::polar(1.0, ty * t.offset);
    }
    return sx * sy;
}

Complex schwarz_lex_symbol(const Stencil& a, int block_size, double tx, double ty)
{
    const int w = half_width_for_block_size(block_size);
    const int p = a.radius();
    const int side = 2 * w + 1, nb = side * side;
    const int reach = 2 * w + p;
    const auto ex = phases(tx, reach), ey = phases(ty, reach);
    auto stencil_at = [&](int dx, int dy) {
        return std::abs(dx) <= p && std::abs(dy) <= p ? a(dx, dy) : 0.0;
    };

    // coupling of block members at offset d through blocks already swept:
    // G(d) = sum over earlier centres delta of a(delta + d) exp(i theta . delta)
    const int span = 2 * w;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(2 * span + 1, 2 * span + 1);
    for (int dy = -span; dy <= span; ++dy)
        for (int dx = -span; dx <= span; ++dx) {
            Complex g = 0.0;
            for (int sy = -p; sy <= p; ++sy)
                for (int sx = -p; sx <= p; ++sx) {
                    const int ddx = sx - dx, ddy = sy - dy;
                    if (precedes_origin(ddx, ddy)) g += a(sx, sy) * ex[ddx + reach] * ey[ddy + reach];
                }
            G(dy + span, dx + span) = g;
        }

    const Complex symbol = stencil_symbol(a, tx, ty);
    Eigen::MatrixXcd L(nb, nb);
    Eigen::VectorXcd rhs(nb);
    for (int i = 0; i < nb; ++i) {
        const int ix = i % side - w, iy = i / side - w;
        rhs[i] = -symbol * ex[ix + reach] * ey[iy + reach];
        for (int k = 0; k < nb; ++k) {
            const int dx = k % side - w - ix, dy = k / side - w - iy;
            L(i, k) = stencil_at(dx, dy) + G(dy + span, dx + span);
        }
    }
    const Eigen::VectorXcd c = L.partialPivLu().solve(rhs);
    Complex s = 1.0;
    for (int k = 0; k < nb; ++k) s += c[k] * std::conj(ex[k % side - w + reach] * ey[k / side - w + reach]);
    return s;
}

Eigen::Matrix2cd rb_gs_symbol(const Stencil& a, double tx, double ty)
{
    const int r = a.radius();
    const auto ex = phases(tx, r), ey = phases(ty, r);
    Complex before = 0.0, after = 0.0, other = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const Complex v = a(dx, dy) * ex[dx + r] * ey[dy + r];
            if ((dx + dy) % 2 != 0) other += v;
            else if (precedes_origin(dx, dy)) before += v;
            else after += v;
        }
    // amplitudes (alpha, beta) on the red and black sublattices
    const Complex denom = a(0, 0) + before;
    const Complex c1 = -after / denom, c2 = -other / denom;
    Eigen::Matrix2cd sweep;
    sweep << c1, c2, c2 * c1, c1 + c2 * c2;
    Eigen::Matrix2cd U;
    U << 1.0, 1.0, 1.0, -1.0;
    return U.inverse() * sweep * U;
}

std::vector<Tap> degree_restriction_taps(int p, int p_low)
{
    if (p == p_low) return {{0, 1.0}};
    const int m = 4 * p + 8;
    const Matrix M = assemble_mass_1d(make_space_1d(p_low, m), make_space_1d(p, m));
    const int ic = int(M.rows() / 2);
    std::vector<Tap> taps;
    for (Index j = 0; j < M.cols(); ++j)
        if (M(ic, j) != 0.0) taps.push_back({int(j) - ic, M(ic, j) * m});
    return taps;
}

std::vector<Tap> mesh_prolongation_taps(int p)
{
    const int mc = 4 * p + 8;
    const Matrix full = refinement_matrix(p, mc);
    const int ic = (mc + p) / 2;
    std::vector<Tap> taps;
    for (Index j = 0; j < full.rows(); ++j)
        if (std::abs(full(j, ic)) > 1e-15) taps.push_back({int(j) - 2 * ic, full(j, ic)});
    return taps;
}


/// Pseudo-inverse of a periodic Laplacian-type matrix whose kernel is the
/// constants: ground the last unknown, solve, then remove the mean.
struct TorusProblem::PseudoInverse {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    Index n = 0;

    explicit PseudoInverse(const SparseOperator& A) : n(A.rows())
    {
        const Eigen::SparseMatrix<double> full(A);
        ldlt.compute(full.topLeftCorner(n - 1, n - 1));
        if (ldlt.info() != Eigen::Success)
            throw NumericalError("torus coarse operator: grounded factorization failed");
    }

    Vector solve(const Vector& rhs) const
    {
        const Vector r = remove_mean(rhs);
        Vector x = Vector::Zero(n);
        x.head(n - 1) = ldlt.solve(r.head(n - 1));
        return remove_mean(std::move(x));
    }
};

TorusProblem::TorusProblem(int p, int p_low, int block_size, LfaVariant variant,
                           const TorusOptions& opts)
    : p_(p), p_low_(p_low), block_size_(block_size), variant_(variant), opts_(opts)
{
    const int n = opts.n;
    require(p >= 1 && p_low >= 1 && p_low <= p, "torus problem: need 1 <= p_low <= p");
    require(n % 6 == 0, "torus problem: extent must be divisible by 6");
    require(n >= 2 * (2 * p + 1), "torus problem: extent too small for the degree-p stencil");

    fine_stencil_ = interior_stencil(p);
    low_stencil_ = interior_stencil(p_low);
    degree_taps_ = degree_restriction_taps(p, p_low);
    mesh_taps_ = mesh_prolongation_taps(p_low);

    A_ = periodic_stencil(n, fine_stencil_);
    plan_ = build_block_plan(A_, n, n, block_size, opts.ordering, BlockBoundary::wrap, true);
    if (variant == LfaVariant::smoother) return;

    SparseOperator Rd, Pd;
    if (p_low == p) {
        Rd = identity_operator(A_.rows());
        Pd = Rd;
    } else {
        Rd = periodic_operator(n, n, 1, degree_taps_, degree_taps_);
        Pd = Rd.transpose();  // lumped diagonal is h^2 I on the torus
    }
    const Stencil& low = low_stencil_;

    if (variant == LfaVariant::two_grid) {
        R_ = Rd;
        P_ = Pd;
        Ac_ = periodic_stencil(n, low);
        inverse_ = std::make_shared<PseudoInverse>(Ac_);
        return;
    }

    const SparseOperator Pt = periodic_operator(n / 2, n, 2, mesh_taps_, mesh_taps_);
    Pm_ = Pt.transpose();
    Rm_ = 0.25 * Pt;
    const SparseOperator A2 = 0.25 * periodic_stencil(n / 2, low);

    if (variant == LfaVariant::two_grid_aggressive) {
        R_ = Rm_ * Rd;
        P_ = Pd * Pm_;
        Ac_ = A2;
        inverse_ = std::make_shared<PseudoInverse>(Ac_);
        return;
    }

    // three-grid: coarse level (p_low, h) approximated by one two-grid cycle to (p_low, 2h)
    R_ = Rd;
    P_ = Pd;
    Ac_ = periodic_stencil(n, low);
    A2_ = A2;
    inverse_ = std::make_shared<PseudoInverse>(A2_);
}

TorusProblem build_torus_problem(int p, int p_low, int block_size, LfaVariant variant,
                                 const TorusOptions& opts)
{
    return TorusProblem(p, p_low, block_size, variant, opts);
}

Vector TorusProblem::coarse_solve(const Vector& d) const
{
    if (variant_ != LfaVariant::three_grid) return inverse_->solve(d);
    const int n = opts_.n;
    Vector e = Vector::Zero(d.size());
    for (int s = 0; s < opts_.inner_pre; ++s) rb_gs_sweep(Ac_, n, n, e, d);
    const Vector rc = Rm_ * (d - Ac_ * e);
    e += Pm_ * inverse_->solve(rc);
    for (int s = 0; s < opts_.inner_post; ++s) rb_gs_sweep(Ac_, n, n, e, d);
    return e;
}

Vector TorusProblem::apply(const Vector& error) const
{
    // error propagation = iteration on A e = 0 starting from e
    const Vector zero = Vector::Zero(error.size());
    Vector e = error;
    for (int s = 0; s < opts_.fine_pre; ++s) schwarz_sweep(plan_, A_, e, zero);
    if (variant_ != LfaVariant::smoother) {
        const Vector d = -(A_ * e);
        e += P_ * coarse_solve(R_ * d);
        for (int s = 0; s < opts_.fine_post; ++s) schwarz_sweep(plan_, A_, e, zero);
    }
    return remove_mean(std::move(e));
}

Eigen::Matrix4cd TorusProblem::error_symbol(double tx, double ty) const
{
    require(opts_.ordering == BlockOrdering::lexicographic,
            "error_symbol: symbols are defined for the lexicographic sweep");
    using C4 = Eigen::Matrix4cd;
    const double pi = std::acos(-1.0);
    const double hx[4] = {tx, tx + pi, tx + pi, tx};
    const double hy[4] = {ty, ty + pi, ty, ty + pi};

    Eigen::Vector4cd a, s, low, rd, rm;
    for (int k = 0; k < 4; ++k) {
        a[k] = stencil_symbol(fine_stencil_, hx[k], hy[k]);
        s[k] = schwarz_lex_symbol(fine_stencil_, block_size_, hx[k], hy[k]);
        low[k] = stencil_symbol(low_stencil_, hx[k], hy[k]);
        rd[k] = taps_symbol(degree_taps_, hx[k], hy[k]);
        // mesh restriction P^T / 4; prolongation symbol is its conjugate
        rm[k] = 0.25 * taps_symbol(mesh_taps_, hx[k], hy[k]);
    }
    const Complex coarse = 0.25 * stencil_symbol(low_stencil_, 2 * tx, 2 * ty);

    auto power = [](const C4& m, int k) {
        C4 out = C4::Identity();
        for (int i = 0; i < k; ++i) out = m * out;
        return out;
    };
    const C4 S = s.asDiagonal();
    const C4 I = C4::Identity();
    C4 K = I;
    switch (variant_) {
    case LfaVariant::smoother:
        return power(S, opts_.fine_pre);
    case LfaVariant::two_grid:
        K = I - (rd.conjugate().cwiseProduct(rd).cwiseProduct(a).cwiseQuotient(low)).asDiagonal().toDenseMatrix();
        break;
    case LfaVariant::two_grid_aggressive: {
        const Eigen::Vector4cd r = rm.cwiseProduct(rd);
        K = I - r.conjugate() * (r.transpose() * a.asDiagonal()) / coarse;
        break;
    }
    case LfaVariant::three_grid: {
        C4 G = C4::Zero();
        const Eigen::Matrix2cd g0 = rb_gs_symbol(low_stencil_, hx[0], hy[0]);
        const Eigen::Matrix2cd g1 = rb_gs_symbol(low_stencil_, hx[2], hy[2]);
        G.topLeftCorner<2, 2>() = g0;
        G.bottomRightCorner<2, 2>() = g1;
        const C4 inner_cgc = I - rm.conjugate() * (rm.transpose() * low.asDiagonal()) / coarse;
        const C4 M = power(G, opts_.inner_post) * inner_cgc * power(G, opts_.inner_pre);
        const C4 low_inverse = low.cwiseInverse().asDiagonal();
        K = I - rd.conjugate().asDiagonal() * (I - M) * low_inverse * rd.asDiagonal() * a.asDiagonal();
        break;
    }
    }
    return power(S, opts_.fine_post) * K * power(S, opts_.fine_pre);
}

namespace {

LfaReport symbol_factor(const TorusProblem& tp)
{
    LfaReport rep;
    rep.variant = tp.variant();
    rep.p = tp.p();
    rep.p_low = tp.p_low();
    rep.block_size = tp.block_size();
    rep.n = tp.n();
    rep.from_symbols = true;

    const int n = tp.n();
    const double pi = std::acos(-1.0);
    double radius = 0.0;
    for (int ky = 0; ky < n; ++ky)
        for (int kx = 0; kx < n; ++kx) {
            double tx = 2 * pi * kx / n, ty = 2 * pi * ky / n;
            if (tx > pi) tx -= 2 * pi;
            if (ty > pi) ty -= 2 * pi;
            if (std::abs(tx) > pi / 2 + 1e-12 || std::abs(ty) > pi / 2 + 1e-12) continue;
            if (tx <= -pi / 2 + 1e-12 || ty <= -pi / 2 + 1e-12) continue;
            if (kx == 0 && ky == 0) continue;
            const Eigen::Matrix4cd T = tp.error_symbol(tx, ty);
            const Eigen::Vector4cd ev = Eigen::ComplexEigenSolver<Eigen::Matrix4cd>(T, false).eigenvalues();
            radius = std::max(radius, ev.cwiseAbs().maxCoeff());
        }
    rep.radius = radius;
    rep.converged = true;
    return rep;
}

} // namespace

LfaReport spectral_factor(const TorusProblem& tp, double tol, int krylov_dim, int max_restarts)
{
    if (tp.options().ordering == BlockOrdering::lexicographic) return symbol_factor(tp);

    const Index N = tp.dim();
    const int k = int(std::min<Index>(krylov_dim, N - 2));

    LfaReport rep;
    rep.variant = tp.variant();
    rep.p = tp.p();
    rep.p_low = tp.p_low();
    rep.block_size = tp.block_size();
    rep.n = tp.n();

    Vector v = remove_mean(random_vector(N, 12345).array() - 0.5);
    v.normalize();
    double previous = -1.0;
    for (int restart = 0; restart < max_restarts; ++restart) {
        rep.restarts = restart + 1;
        Matrix V(N, k + 1);
        Matrix H = Matrix::Zero(k + 1, k);
        V.col(0) = v;
        int built = k;
        bool invariant = false;
        for (int j = 0; j < k; ++j) {
            Vector w = tp.apply(V.col(j));
            for (int pass = 0; pass < 2; ++pass) {
                const Vector c = V.leftCols(j + 1).transpose() * w;
                w -= V.leftCols(j + 1) * c;
                H.col(j).head(j + 1) += c;
            }
            const double beta = w.norm();
            H(j + 1, j) = beta;
            if (beta <= 1e-14 * std::max(1.0, H.col(j).head(j + 1).norm())) {
                built = j + 1;
                invariant = true;
                break;
            }
            V.col(j + 1) = w / beta;
        }

        Eigen::EigenSolver<Matrix> eig(H.topLeftCorner(built, built));
        const auto& lambda = eig.eigenvalues();
        Index top = 0;
        for (Index i = 1; i < lambda.size(); ++i)
            if (std::abs(lambda[i]) > std::abs(lambda[top])) top = i;
        const double radius = std::abs(lambda[top]);
        Eigen::VectorXcd y = eig.eigenvectors().col(top);
        y.normalize();
        const double beta = invariant ? 0.0 : H(built, built - 1);
        rep.residual = beta * std::abs(y[built - 1]) / std::max(radius, 1e-300);
        rep.radius = radius;

        if (invariant || (previous >= 0.0 && std::abs(radius - previous) < tol && rep.residual < 10 * tol)) {
            rep.converged = true;
            break;
        }
        previous = radius;

        const Eigen::VectorXcd u = V.leftCols(built).cast<Complex>() * y;
        v = remove_mean(u.real() + u.imag());
        const double nv = v.norm();
        if (!(nv > 0.0)) break;
        v /= nv;
    }
    return rep;
}

std::vector<LfaReport> sweep_table(LfaVariant variant, int p_min, int p_max,
                                   const std::vector<int>& block_sizes, int p_low,
                                   const TorusOptions& opts, double tol)
{
    std::vector<LfaReport> out;
    for (int p = p_min; p <= p_max; ++p)
        for (const int bs : block_sizes) {
            LfaReport rep;
            try {
                rep = spectral_factor(build_torus_problem(p, p_low, bs, variant, opts), tol);
            } catch (const std::exception&) {
                rep.variant = variant;
                rep.p = p;
                rep.p_low = p_low;
                rep.block_size = bs;
                rep.n = opts.n;
                rep.radius = NAN;
                rep.converged = false;
            }
            out.push_back(rep);
        }
    return out;
}

} // namespace igatwo
