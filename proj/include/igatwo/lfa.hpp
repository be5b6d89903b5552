#ifndef IGATWO_LFA_HPP
#define IGATWO_LFA_HPP

#include "igatwo/smoothers.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace igatwo {

/// Translation-invariant interior row of the degree-p stiffness matrix on
/// the uniform unit square: values(dy + p, dx + p), |dx|, |dy| <= p.
struct Stencil {
    int degree = 0;
    Matrix values;

    int radius() const { return int(values.rows() / 2); }
    double operator()(int dx, int dy) const { return values(dy + radius(), dx + radius()); }
};

/// Reads the central row of the assembled operator on m subintervals
/// (m = 0 picks 4p + 4, the smallest mesh with a full-support central row).
Stencil interior_stencil(int p, int m = 0);

/// Fourier symbol sum_d s(d) exp(i theta . d).
std::complex<double> stencil_symbol(const Stencil& s, double tx, double ty);

/// One 1D coefficient of an interior transfer row or column.
struct Tap {
    int offset;
    double value;
};

/// Interior row of the lumped degree restriction D^-1 M_p^{p_low} in 1D.
std::vector<Tap> degree_restriction_taps(int p, int p_low);

/// Interior column of the 1D knot-insertion prolongation: fine = 2 coarse + offset.
std::vector<Tap> mesh_prolongation_taps(int p);

/// Symbol of the tensor transfer built from 1D taps: sum_o t(o) exp(i theta . o).
std::complex<double> taps_symbol(const std::vector<Tap>& taps, double tx, double ty);

/// Symbol of one lexicographic multiplicative Schwarz sweep on the infinite grid.
std::complex<double> schwarz_lex_symbol(const Stencil& a, int block_size, double tx, double ty);

/// Red-black Gauss-Seidel sweep on the harmonics {theta, theta + (pi, pi)},
/// lexicographic within each colour.
Eigen::Matrix2cd rb_gs_symbol(const Stencil& a, double tx, double ty);

enum class LfaVariant {
    smoother,             ///< S_p alone
    two_grid,             ///< degree p -> p_low, same mesh, exact coarse solve
    three_grid,           ///< as two_grid, coarse solve replaced by one V(1,1) RB-GS two-grid cycle
    two_grid_aggressive,  ///< degree p -> p_low and h -> 2h, exact coarse solve
};

std::string to_string(LfaVariant v);

struct TorusOptions {
    int n = 48;  ///< points (and sampled frequencies) per direction, divisible by 6
    BlockOrdering ordering = BlockOrdering::lexicographic;
    int fine_pre = 1;
    int fine_post = 0;
    int inner_pre = 1;   ///< red-black Gauss-Seidel steps of the three-grid inner cycle
    int inner_post = 1;
};

/// Error propagation operator of one method variant on the doubly periodic
/// n x n grid. Coarse inverses act on the complement of the constants;
/// apply() returns the error after one cycle with the constant mode removed.
/// error_symbol() gives the same operator on the four 2h-harmonics of a
/// frequency, with lexicographic sweeps taken on the infinite grid.
class TorusProblem {
public:
    TorusProblem(int p, int p_low, int block_size, LfaVariant variant, const TorusOptions& opts = {});

    Vector apply(const Vector& error) const;

    /// 4 x 4 symbol on (theta, theta + (pi,pi), theta + (pi,0), theta + (0,pi)),
    /// theta in (-pi/2, pi/2]^2 \ {0}. Lexicographic ordering only.
    Eigen::Matrix4cd error_symbol(double tx, double ty) const;

    Index dim() const { return A_.rows(); }
    int p() const { return p_; }
    int p_low() const { return p_low_; }
    int block_size() const { return block_size_; }
    int n() const { return opts_.n; }
    const TorusOptions& options() const { return opts_; }
    LfaVariant variant() const { return variant_; }

    const SparseOperator& fine_operator() const { return A_; }
    const SparseOperator& restriction() const { return R_; }
    const SparseOperator& prolongation() const { return P_; }
    const SparseOperator& coarse_operator() const { return Ac_; }
    /// Periodic mesh transfer used by the aggressive and three-grid variants.
    const SparseOperator& mesh_prolongation_operator() const { return Pm_; }

private:
    struct PseudoInverse;

    Vector coarse_solve(const Vector& d) const;

    int p_, p_low_, block_size_;
    LfaVariant variant_;
    TorusOptions opts_;
    SparseOperator A_;
    BlockPlan plan_;
    SparseOperator R_, P_, Ac_;
    // three-grid inner level: Ac_ smoothed by RB-GS, mesh transfer to A2_
    SparseOperator Rm_, Pm_, A2_;
    std::shared_ptr<const PseudoInverse> inverse_;
    Stencil fine_stencil_, low_stencil_;
    std::vector<Tap> degree_taps_, mesh_taps_;
};

TorusProblem build_torus_problem(int p, int p_low, int block_size, LfaVariant variant,
                                 const TorusOptions& opts = {});

struct LfaReport {
    LfaVariant variant = LfaVariant::two_grid;
    int p = 0;
    int p_low = 0;
    int block_size = 0;
    int n = 0;
    double radius = 0.0;
    double residual = 0.0;  ///< Ritz residual of the dominant pair, relative
    int restarts = 0;
    bool converged = false;
    bool from_symbols = false;
};

/// Lexicographic ordering: max over the sampled frequencies of the symbol's
/// spectral radius. Coloured ordering: dominant |eigenvalue| of
/// TorusProblem::apply by restarted Arnoldi, stopping when successive
/// restarts agree to `tol`.
LfaReport spectral_factor(const TorusProblem& tp, double tol = 1e-4, int krylov_dim = 40,
                          int max_restarts = 60);

/// One report per (p, block size), degrees outer, block sizes inner.
std::vector<LfaReport> sweep_table(LfaVariant variant, int p_min, int p_max,
                                   const std::vector<int>& block_sizes, int p_low,
                                   const TorusOptions& opts = {}, double tol = 1e-4);

} // namespace igatwo

#endif // IGATWO_LFA_HPP
