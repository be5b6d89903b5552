#ifndef IGATWO_COMMON_HPP
#define IGATWO_COMMON_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace igatwo {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Row-major compressed sparse operator (rows sorted, no duplicate columns).
using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

/// Invalid sizes, degrees, indices or incompatible spaces.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Degenerate geometry: non-positive weights or a singular Jacobian.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Breakdown in a factorization or iteration.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what)
{
    if (!cond) throw ParameterError(what);
}

} // namespace igatwo

#endif // IGATWO_COMMON_HPP
