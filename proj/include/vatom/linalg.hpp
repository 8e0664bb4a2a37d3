#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace vatom {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
/// Operator on the atomic space {|0>, |1>, |2>}.
using AtomOperator = Eigen::Matrix3cd;

/// Throws InvalidArgument when any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

struct SolveOptions {
    double rtol = 1e-10;
    /// Condition estimates above this mark the result ill-conditioned.
    double condition_cap = 1e12;
    bool estimate_condition = true;
};

struct SolveResult {
    ComplexVector x;
    double residual = 0.0;   ///< ||Ax - b|| / ||b||
    double condition = 0.0;  ///< 0 when not estimated
    bool ill_conditioned = false;
};

/// Dense LU solve with singularity detection, one step of iterative
/// refinement when the relative residual misses `rtol`, and an optional
/// power-iteration condition estimate.
SolveResult solve_linear(const ComplexMatrix& a, const ComplexVector& b,
                         const SolveOptions& options = {});

/// 2-norm condition estimate from 50 power iterations on A^H A and on its
/// inverse (applied through an LU factorisation).
double condition_estimate(const ComplexMatrix& a, int iterations = 50);

struct KernelOptions {
    /// Singular values below `relative_threshold * sigma_max` count as zero.
    double relative_threshold = 1e-8;
};

struct KernelResult {
    ComplexVector vector;
    double smallest_singular = 0.0;
    double second_singular = 0.0;
    double largest_singular = 0.0;
};

/// Unit-norm basis vector of a one-dimensional numerical kernel. The first
/// entry of largest modulus is rotated to be real and positive.
KernelResult null_space_1d_detail(const ComplexMatrix& a, const KernelOptions& options = {});

inline ComplexVector null_space_1d(const ComplexMatrix& a, const KernelOptions& options = {})
{
    return null_space_1d_detail(a, options).vector;
}

/// Fixes the global phase of `v` so its first largest-modulus entry is real
/// and positive.
void normalize_phase(ComplexVector& v);

struct HermitianCheckReport {
    double max_asymmetry = 0.0;
    double min_eigenvalue = 0.0;
    double trace_deviation = 0.0;
};

HermitianCheckReport hermitian_report(const ComplexMatrix& m);

/// Matrix exponential (Pade scaling and squaring).
ComplexMatrix expm(const ComplexMatrix& a);

using MatrixFunction = std::function<ComplexMatrix(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    /// Hard cap on the number of accepted panels.
    long max_panels = 1L << 20;
};

struct QuadratureResult {
    ComplexMatrix value;
    double error_estimate = 0.0;
    double tail_bound = 0.0;
    double tau_max = 0.0;
    long panels = 0;
};

/// Adaptive composite Gauss-Legendre evaluation of
///   int_0^inf exp(-decay * tau) f(tau) dtau
/// truncated at tau_max = 40 / Re(decay). `f_bound` is a bound on ||f||
/// used for the analytic tail estimate.
QuadratureResult integrate_exp_kernel(const MatrixFunction& f, cplx decay,
                                      const QuadratureOptions& options = {},
                                      double f_bound = 1.0);

}  // namespace vatom
