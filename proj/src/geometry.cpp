#include "igatwo/geometry.hpp"

#include <cmath>
#include <sstream>

namespace igatwo {

GeometryMap identity_square()
{
    return {};
}

GeometryMap preset_quarter_annulus(double r, double R)
{
    require(r > 0.0 && r < R, "quarter annulus: need 0 < r < R");
    GeometryMap g;
    g.kind = GeometryMap::Kind::nurbs;
    g.xi_knots = make_open_uniform_knots(2, 1);
    g.eta_knots = make_open_uniform_knots(2, 1);

    const double arc_w[3] = {1.0, std::sqrt(0.5), 1.0};
    // clockwise arc so that det(dF) > 0 with eta pointing outwards
    const Point2 arc_dir[3] = {{0.0, 1.0}, {1.0, 1.0}, {1.0, 0.0}};
    const double radius[3] = {r, 0.5 * (r + R), R};
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            g.control.push_back(radius[j] * arc_dir[i]);
            g.weights.push_back(arc_w[i]);
        }
    }
    return g;
}

GeometryMap refine_geometry(const GeometryMap& geom, int cells)
{
    if (geom.is_identity()) return geom;
    require(cells >= geom.xi_knots.cells && cells % geom.xi_knots.cells == 0
                && cells % geom.eta_knots.cells == 0,
            "refine_geometry: target cells must be a multiple of the current ones");

    const int nxi = geom.num_xi();
    const int neta = geom.num_eta();
    // homogeneous coordinates (w x, w y, w)
    std::vector<Matrix> hom(neta, Matrix(nxi, 3));
    for (int j = 0; j < neta; ++j)
        for (int i = 0; i < nxi; ++i) {
            const int k = i + j * nxi;
            const double w = geom.weights[k];
            hom[j].row(i) << w * geom.control[k].x(), w * geom.control[k].y(), w;
        }

    auto insert_all = [cells](std::vector<double>& U, int p, Matrix& ctrl, int old_cells) {
        for (int i = 1; i < cells; ++i) {
            if ((i * old_cells) % cells == 0) continue;  // already a knot
            insert_knot(U, p, ctrl, double(i) / cells);
        }
    };

    GeometryMap out = geom;
    out.xi_knots = make_open_uniform_knots(geom.xi_knots.degree, cells);
    out.eta_knots = make_open_uniform_knots(geom.eta_knots.degree, cells);
    for (int j = 0; j < neta; ++j) {
        std::vector<double> U = geom.xi_knots.knots;
        insert_all(U, geom.xi_knots.degree, hom[j], geom.xi_knots.cells);
    }
    const int nxi_new = int(hom[0].rows());
    // eta direction: one column of control rows per xi index
    Matrix col(neta, 3);
    std::vector<Matrix> by_xi(nxi_new);
    for (int i = 0; i < nxi_new; ++i) {
        for (int j = 0; j < neta; ++j) col.row(j) = hom[j].row(i);
        std::vector<double> U = geom.eta_knots.knots;
        insert_all(U, geom.eta_knots.degree, col, geom.eta_knots.cells);
        by_xi[i] = col;
        col.resize(neta, 3);
    }
    const int neta_new = int(by_xi[0].rows());
    out.control.assign(std::size_t(nxi_new) * neta_new, Point2::Zero());
    out.weights.assign(std::size_t(nxi_new) * neta_new, 0.0);
    for (int j = 0; j < neta_new; ++j)
        for (int i = 0; i < nxi_new; ++i) {
            const auto h = by_xi[i].row(j);
            const int k = i + j * nxi_new;
            out.weights[k] = h(2);
            out.control[k] = Point2(h(0) / h(2), h(1) / h(2));
        }
    return out;
}

namespace {

struct LocalBasis {
    int sx, sy;
    Matrix nx, ny;  // rows: value, derivative
};

LocalBasis local_basis(const GeometryMap& g, double xi, double eta)
{
    LocalBasis b;
    b.sx = find_span(g.xi_knots, xi);
    b.sy = find_span(g.eta_knots, eta);
    b.nx = basis_derivatives(g.xi_knots, b.sx, xi, 1);
    b.ny = basis_derivatives(g.eta_knots, b.sy, eta, 1);
    return b;
}

std::string where(double xi, double eta)
{
    std::ostringstream os;
    os << "(xi, eta) = (" << xi << ", " << eta << ")";
    return os.str();
}

} // namespace

double eval_nurbs_basis_2d(const GeometryMap& g, int i, int j, double xi, double eta)
{
    require(!g.is_identity(), "eval_nurbs_basis_2d: geometry is not NURBS");
    require(i >= 0 && i < g.num_xi() && j >= 0 && j < g.num_eta(),
            "eval_nurbs_basis_2d: index out of range");
    const LocalBasis b = local_basis(g, xi, eta);
    const int px = g.xi_knots.degree, py = g.eta_knots.degree;
    double denom = 0.0, numer = 0.0;
    for (int c = 0; c <= py; ++c)
        for (int a = 0; a <= px; ++a) {
            const int gi = b.sx - px + a, gj = b.sy - py + c;
            const double v = g.weights[gi + gj * g.num_xi()] * b.nx(0, a) * b.ny(0, c);
            denom += v;
            if (gi == i && gj == j) numer = v;
        }
    if (!(denom > 0.0)) throw GeometryError("NURBS denominator not positive at " + where(xi, eta));
    return numer / denom;
}

GeometryPoint geometry_point(const GeometryMap& g, double xi, double eta)
{
    if (g.is_identity()) return {Point2(xi, eta), Jacobian2::Identity()};

    const LocalBasis b = local_basis(g, xi, eta);
    const int px = g.xi_knots.degree, py = g.eta_knots.degree;
    double W = 0.0, Wxi = 0.0, Weta = 0.0;
    Point2 S = Point2::Zero(), Sxi = Point2::Zero(), Seta = Point2::Zero();
    for (int c = 0; c <= py; ++c)
        for (int a = 0; a <= px; ++a) {
            const int k = (b.sx - px + a) + (b.sy - py + c) * g.num_xi();
            const double w = g.weights[k];
            const double v = w * b.nx(0, a) * b.ny(0, c);
            const double dxi = w * b.nx(1, a) * b.ny(0, c);
            const double deta = w * b.nx(0, a) * b.ny(1, c);
            W += v;
            Wxi += dxi;
            Weta += deta;
            S += v * g.control[k];
            Sxi += dxi * g.control[k];
            Seta += deta * g.control[k];
        }
    if (!(W > 0.0)) throw GeometryError("NURBS denominator not positive at " + where(xi, eta));
    GeometryPoint out;
    out.x = S / W;
    out.jacobian.col(0) = (Sxi - out.x * Wxi) / W;
    out.jacobian.col(1) = (Seta - out.x * Weta) / W;
    if (!(out.jacobian.determinant() > 0.0))
        throw GeometryError("singular or inverted Jacobian at " + where(xi, eta));
    return out;
}

Point2 geometry_eval(const GeometryMap& g, double xi, double eta)
{
    return geometry_point(g, xi, eta).x;
}

Jacobian2 geometry_jacobian(const GeometryMap& g, double xi, double eta)
{
    return geometry_point(g, xi, eta).jacobian;
}

} // namespace igatwo
