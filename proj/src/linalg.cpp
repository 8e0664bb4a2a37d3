#include <vatom/error.hpp>
#include <vatom/linalg.hpp>
#include <vatom/superop.hpp>

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace vatom {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NoKernel: return "NoKernel";
    case ErrorKind::DegenerateKernel: return "DegenerateKernel";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::DegenerateDressing: return "DegenerateDressing";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::SingularRateMatrix: return "SingularRateMatrix";
    case ErrorKind::ResolventSingular: return "ResolventSingular";
    case ErrorKind::Config: return "ConfigError";
    }
    return "Unknown";
}

void require_finite(const ComplexMatrix& m, const char* what)
{
    if (!m.allFinite())
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
}

namespace {

void require_square(const ComplexMatrix& a, const char* what)
{
    if (a.rows() != a.cols() || a.rows() == 0)
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be square and non-empty");
}

bool lu_is_singular(const Eigen::PartialPivLU<ComplexMatrix>& lu, double scale)
{
    const auto& m = lu.matrixLU();
    const double n = static_cast<double>(m.rows());
    const double tiny = n * std::numeric_limits<double>::epsilon() * scale;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (!(std::abs(m(i, i)) > tiny))
            return true;
    return false;
}

}  // namespace

double condition_estimate(const ComplexMatrix& a, int iterations)
{
    require_square(a, "condition_estimate: matrix");
    const Eigen::Index n = a.rows();
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    Eigen::PartialPivLU<ComplexMatrix> lu_adj(a.adjoint());
    if (lu_is_singular(lu, a.cwiseAbs().maxCoeff()))
        return std::numeric_limits<double>::infinity();

    ComplexVector v = ComplexVector::Ones(n).normalized();
    ComplexVector w = v;
    double sigma_max_sq = 0.0;
    double inv_sigma_min_sq = 0.0;
    for (int it = 0; it < iterations; ++it) {
        ComplexVector av = a.adjoint() * (a * v);
        sigma_max_sq = av.norm();
        if (sigma_max_sq == 0.0)
            return std::numeric_limits<double>::infinity();
        v = av / sigma_max_sq;

        ComplexVector iw = lu.solve(lu_adj.solve(w));
        inv_sigma_min_sq = iw.norm();
        w = iw / inv_sigma_min_sq;
    }
    return std::sqrt(sigma_max_sq * inv_sigma_min_sq);
}

SolveResult solve_linear(const ComplexMatrix& a, const ComplexVector& b, const SolveOptions& options)
{
    require_square(a, "solve_linear: A");
    if (b.size() != a.rows())
        throw Error(ErrorKind::InvalidArgument, "solve_linear: dimension mismatch");
    require_finite(a, "solve_linear: A");
    require_finite(b, "solve_linear: b");

    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    if (lu_is_singular(lu, a.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::SingularMatrix, "solve_linear: matrix is rank deficient");

    SolveResult out;
    out.x = lu.solve(b);
    const double bnorm = b.norm();
    auto relative_residual = [&](const ComplexVector& x) {
        const double r = (a * x - b).norm();
        return bnorm > 0.0 ? r / bnorm : r;
    };
    out.residual = relative_residual(out.x);
    if (out.residual > options.rtol) {
        out.x += lu.solve(b - a * out.x);
        out.residual = relative_residual(out.x);
    }
    if (options.estimate_condition) {
        out.condition = condition_estimate(a);
        out.ill_conditioned = !(out.condition <= options.condition_cap);
    }
    if (!out.x.allFinite())
        throw Error(ErrorKind::SingularMatrix, "solve_linear: non-finite solution");
    return out;
}

void normalize_phase(ComplexVector& v)
{
    if (v.size() == 0)
        return;
    const double biggest = v.cwiseAbs().maxCoeff();
    if (biggest == 0.0)
        return;
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) >= biggest * (1.0 - 1e-9)) {
            pivot = i;
            break;
        }
    }
    const cplx phase = std::conj(v[pivot]) / std::abs(v[pivot]);
    v *= phase;
    v[pivot] = cplx(v[pivot].real(), 0.0);
}

KernelResult null_space_1d_detail(const ComplexMatrix& a, const KernelOptions& options)
{
    require_square(a, "null_space_1d: A");
    require_finite(a, "null_space_1d: A");
    const Eigen::Index n = a.rows();

    ComplexMatrix v;
    Eigen::VectorXd s;
    if (n <= 16) {
        Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
        v = svd.matrixV();
        s = svd.singularValues();
    } else {
        Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
        v = svd.matrixV();
        s = svd.singularValues();
    }

    KernelResult out;
    out.largest_singular = s[0];
    out.smallest_singular = s[n - 1];
    out.second_singular = n > 1 ? s[n - 2] : s[0];
    const double threshold = options.relative_threshold * s[0];
    if (!(out.smallest_singular < threshold))
        throw Error(ErrorKind::NoKernel, "null_space_1d: smallest singular value " +
                                             std::to_string(out.smallest_singular) +
                                             " above threshold " + std::to_string(threshold));
    if (n > 1 && out.second_singular < threshold)
        throw Error(ErrorKind::DegenerateKernel, "null_space_1d: kernel dimension exceeds one");

    out.vector = v.col(n - 1);
    out.vector.normalize();
    normalize_phase(out.vector);
    return out;
}

HermitianCheckReport hermitian_report(const ComplexMatrix& m)
{
    require_square(m, "hermitian_report: M");
    HermitianCheckReport r;
    r.max_asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.trace_deviation = std::abs(m.trace() - cplx(1.0, 0.0));
    return r;
}

ComplexMatrix expm(const ComplexMatrix& a)
{
    require_square(a, "expm: A");
    return a.exp();
}

namespace superop {

ComplexVector vec(const ComplexMatrix& rho)
{
    const Eigen::Index n = rho.rows();
    ComplexVector v(n * rho.cols());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            v[i * rho.cols() + j] = rho(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n)
{
    if (v.size() != n * n)
        throw Error(ErrorKind::InvalidArgument, "unvec: size mismatch");
    ComplexMatrix rho(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            rho(i, j) = v[i * n + j];
    return rho;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return kron(a, b.transpose());
}

ComplexMatrix left(const ComplexMatrix& a)
{
    return kron(a, ComplexMatrix::Identity(a.cols(), a.cols()));
}

ComplexMatrix right(const ComplexMatrix& b)
{
    return kron(ComplexMatrix::Identity(b.rows(), b.rows()), b.transpose());
}

ComplexMatrix hamiltonian(const ComplexMatrix& h)
{
    return cplx(0.0, -1.0) * (left(h) - right(h));
}

ComplexMatrix dissipator(const ComplexMatrix& jump, double rate)
{
    const ComplexMatrix jd = jump.adjoint();
    const ComplexMatrix jdj = jd * jump;
    return 0.5 * rate * (2.0 * sandwich(jump, jd) - left(jdj) - right(jdj));
}

ComplexVector trace_functional(Eigen::Index n)
{
    return vec(ComplexMatrix::Identity(n, n));
}

}  // namespace superop

}  // namespace vatom
