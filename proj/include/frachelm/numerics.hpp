#pragma once

#include <complex>
#include <functional>
#include <memory>

#include <Eigen/Dense>

namespace frachelm {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// A = U diag(S) V^T (plain transpose). S is descending.
struct SvdTriple {
    DenseMatrix U;
    Eigen::VectorXd S;
    DenseMatrix V;
};

/// LU with partial pivoting, factored once and reused for any number of
/// right-hand sides.
class LuSolver {
public:
    using Apply = std::function<DenseMatrix(const DenseMatrix&)>;

    /// Throws SingularSystemError when the 1-norm condition estimate exceeds max_cond.
    explicit LuSolver(const DenseMatrix& A, double max_cond = 1e12);
    /// Factors A in place (no copy is kept); `apply` must compute A X for
    /// residual checks and outlive the solver.
    LuSolver(DenseMatrix&& A, Apply apply, double max_cond = 1e12);

    /// Solves A X = B; every column must reach relative residual <= max_residual.
    DenseMatrix solve(const DenseMatrix& B, double max_residual = 1e-10) const;

    double rcond() const { return rcond_; }
    Eigen::Index size() const { return n_; }

private:
    void factor(double max_cond);

    Eigen::Index n_ = 0;
    std::unique_ptr<DenseMatrix> storage_;
    std::unique_ptr<Eigen::PartialPivLU<Eigen::Ref<DenseMatrix>>> lu_;
    Apply apply_;
    double rcond_ = 0.0;
};

DenseMatrix lu_solve(const DenseMatrix& A, const DenseMatrix& B);

SvdTriple svd(const DenseMatrix& A);

/// Largest singular value.
double spectral_norm(const DenseMatrix& A);

}  // namespace frachelm
