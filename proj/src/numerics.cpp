#include "frachelm/numerics.hpp"

#include <cmath>
#include <string>

#include "frachelm/errors.hpp"

namespace frachelm {

LuSolver::LuSolver(const DenseMatrix& A, double max_cond)
    : LuSolver(DenseMatrix(A), [A](const DenseMatrix& X) -> DenseMatrix { return A * X; }, max_cond) {}

LuSolver::LuSolver(DenseMatrix&& A, Apply apply, double max_cond) : apply_(std::move(apply)) {
    if (A.rows() != A.cols()) throw DomainError("LuSolver: matrix is not square");
    if (!A.allFinite()) throw DomainError("LuSolver: matrix has non-finite entries");
    n_ = A.rows();
    storage_ = std::make_unique<DenseMatrix>(std::move(A));
    factor(max_cond);
}

void LuSolver::factor(double max_cond) {
    if (n_ == 0) {
        rcond_ = 1.0;
        return;
    }
    lu_ = std::make_unique<Eigen::PartialPivLU<Eigen::Ref<DenseMatrix>>>(*storage_);
    rcond_ = lu_->rcond();
    if (!(rcond_ > 0.0) || 1.0 / rcond_ > max_cond)
        throw SingularSystemError("matrix is singular to working precision (condition estimate " +
                                  std::to_string(rcond_ > 0.0 ? 1.0 / rcond_ : INFINITY) +
                                  "); k is likely close to a scattering pole");
}

DenseMatrix LuSolver::solve(const DenseMatrix& B, double max_residual) const {
    if (B.rows() != n_) throw DomainError("LuSolver::solve: dimension mismatch");
    if (n_ == 0) return B;
    DenseMatrix X = lu_->solve(B);
    // One step of iterative refinement is cheap next to the factorization.
    DenseMatrix R = B - apply_(X);
    X += lu_->solve(R);
    R = B - apply_(X);
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
        const double bn = B.col(j).norm();
        const double rn = R.col(j).norm();
        if (!std::isfinite(rn) || (bn > 0.0 ? rn / bn : rn) > max_residual)
            throw SingularSystemError("linear solve residual " + std::to_string(bn > 0.0 ? rn / bn : rn) +
                                      " exceeds tolerance in column " + std::to_string(j));
    }
    return X;
}

DenseMatrix lu_solve(const DenseMatrix& A, const DenseMatrix& B) { return LuSolver(A).solve(B); }

SvdTriple svd(const DenseMatrix& A) {
    if (!A.allFinite()) throw DomainError("svd: matrix has non-finite entries");
    SvdTriple out;
    if (A.size() == 0) return out;
    Eigen::BDCSVD<DenseMatrix> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success) throw ConvergenceError("svd: iteration did not converge");
    out.U = dec.matrixU();
    out.S = dec.singularValues();
    // A = U S V_e^H, so the transpose convention needs V = conj(V_e).
    out.V = dec.matrixV().conjugate();
    return out;
}

double spectral_norm(const DenseMatrix& A) {
    if (A.size() == 0) return 0.0;
    Eigen::BDCSVD<DenseMatrix> dec(A);
    return dec.singularValues()(0);
}

}  // namespace frachelm
