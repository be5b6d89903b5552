#include "igatwo/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace igatwo {

SparseOperator kron(const SparseOperator& Y, const SparseOperator& X)
{
    SparseOperator out(Y.rows() * X.rows(), Y.cols() * X.cols());
    out.reserve(Y.nonZeros() * X.nonZeros());
    for (Index iy = 0; iy < Y.outerSize(); ++iy) {
        for (Index ix = 0; ix < X.outerSize(); ++ix) {
            out.startVec(iy * X.rows() + ix);
            for (SparseOperator::InnerIterator ey(Y, iy); ey; ++ey)
                for (SparseOperator::InnerIterator ex(X, ix); ex; ++ex)
                    out.insertBack(iy * X.rows() + ix, ey.col() * X.cols() + ex.col())
                        = ey.value() * ex.value();
        }
    }
    out.finalize();
    return out;
}

SparseOperator to_sparse(const Matrix& A, double drop)
{
    SparseOperator out(A.rows(), A.cols());
    out.reserve(Index(std::count_if(A.data(), A.data() + A.size(),
                                    [drop](double v) { return std::abs(v) > drop; })));
    for (Index i = 0; i < A.rows(); ++i) {
        out.startVec(i);
        for (Index j = 0; j < A.cols(); ++j)
            if (std::abs(A(i, j)) > drop) out.insertBack(i, j) = A(i, j);
    }
    out.finalize();
    return out;
}

SparseOperator identity_operator(Index n)
{
    SparseOperator I(n, n);
    I.setIdentity();
    return I;
}

Vector row_sums(const SparseOperator& A)
{
    return A * Vector::Ones(A.cols());
}

double max_asymmetry(const SparseOperator& A)
{
    if (A.rows() != A.cols()) return INFINITY;
    const SparseOperator At = A.transpose();
    return max_abs_difference(A, At);
}

double max_abs_difference(const SparseOperator& A, const SparseOperator& B)
{
    require(A.rows() == B.rows() && A.cols() == B.cols(), "max_abs_difference: shape mismatch");
    const SparseOperator D = A - B;
    double m = 0.0;
    for (Index k = 0; k < D.nonZeros(); ++k) m = std::max(m, std::abs(D.valuePtr()[k]));
    return m;
}

double residual_norm(const SparseOperator& A, const Vector& x, const Vector& b)
{
    return (b - A * x).norm();
}

void write_matrix_market(const std::string& path, const SparseOperator& A)
{
    std::ofstream os(path);
    if (!os) throw ParameterError("cannot open " + path + " for writing");
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
    os << std::setprecision(17);
    for (Index i = 0; i < A.outerSize(); ++i)
        for (SparseOperator::InnerIterator it(A, i); it; ++it)
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

} // namespace igatwo
