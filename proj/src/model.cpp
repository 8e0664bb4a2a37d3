#include <vatom/error.hpp>
#include <vatom/model.hpp>
#include <vatom/superop.hpp>

#include <cmath>
#include <string>

namespace vatom {

namespace {

constexpr cplx kI{0.0, 1.0};

AtomOperator dyad(int l, int k)
{
    AtomOperator m = AtomOperator::Zero();
    m(l, k) = 1.0;
    return m;
}

}  // namespace

void SystemParams::validate() const
{
    const bool finite = std::isfinite(gamma) && std::isfinite(g) && std::isfinite(kappa) &&
                        std::isfinite(omega21) && std::isfinite(rabi) && std::isfinite(delta);
    if (!finite)
        throw Error(ErrorKind::InvalidArgument, "SystemParams: non-finite value");
    if (!(gamma > 0.0))
        throw Error(ErrorKind::InvalidArgument, "SystemParams: gamma must be positive");
    if (!(g >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "SystemParams: g must be non-negative");
    if (!(kappa > 0.0))
        throw Error(ErrorKind::InvalidArgument, "SystemParams: kappa must be positive");
    if (!(rabi >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "SystemParams: rabi must be non-negative");
}

DressedScalars dressed_scalars(const SystemParams& p)
{
    DressedScalars s;
    s.omega_r = 0.5 * std::sqrt(p.omega21 * p.omega21 + 8.0 * p.rabi * p.rabi);
    if (!(s.omega_r > 0.0))
        throw Error(ErrorKind::DegenerateDressing, "omega21 = Omega = 0 leaves the dressed levels degenerate");
    s.eta = p.rabi / (2.0 * s.omega_r);
    s.epsilon = p.omega21 / (2.0 * s.omega_r);
    return s;
}

std::string_view to_string(BetaVariant v) noexcept
{
    return v == BetaVariant::Corrected ? "corrected" : "paper-exact";
}

BetaVariant parse_beta_variant(std::string_view text)
{
    if (text == "corrected")
        return BetaVariant::Corrected;
    if (text == "paper-exact" || text == "paper_exact")
        return BetaVariant::PaperExact;
    throw Error(ErrorKind::Config, "unknown variant '" + std::string(text) +
                                       "' (expected corrected or paper-exact)");
}

BetaTable beta_table(const DressedScalars& s, BetaVariant variant)
{
    const double e = s.epsilon;
    const double n = s.eta;
    const double e2 = e * e;
    const double n2 = n * n;
    const double n3 = n2 * n;

    BetaTable t;
    // clang-format off
    t << 0.0,          2*n*e2,          -2*n*e2,          8*n3,               -8*n3,
         -2*n*e,       n*e*(1-e),       n*e*(1+e),        -n*(1-e2)/2,        n*(1-e2)/2,
         2*n*e,        -n*e*(1+e),      -n*e*(1-e),       -n*(1-e2)/2,        n*(1-e2)/2,
         4*n2,         4*n2*e,          -4*n2*e,          -2*n2*(1+e),        -2*n2*(1-e),
         4*n2,         e2*(1-e)/2,      e2*(1+e)/2,       2*n2*(1-e),         2*n2*(1+e),
         4*n2,         -4*n2*e,         4*n2*e,           -2*n2*(1-e),        -2*n2*(1+e),
         4*n2,         e*(1+e)/2,       e*(1-e)/2,        2*n2*(1+e),         2*n2*(1-e),
         0.0,          -n*e*(1-e),      -n*e*(1+e),       -n*(1-e)*(1-e)/2,   n*(1+e)*(1+e)/2,
         0.0,          n*e*(1+e),       n*e*(1-e),        -n*(1+e)*(1+e)/2,   n*(1-e)*(1-e)/2;
    // clang-format on
    if (variant == BetaVariant::Corrected) {
        // mirror image (epsilon -> -epsilon) of the |0><1| row
        t(6, 1) = e2 * (1 + e) / 2;
        t(6, 2) = e2 * (1 - e) / 2;
    }
    return t;
}

Eigen::Matrix<cplx, 5, 1> cavity_response_factors(const SystemParams& p)
{
    const double wr = dressed_scalars(p).omega_r;
    const double k = p.kappa;
    const double d = p.delta;
    Eigen::Matrix<cplx, 5, 1> f;
    f << k / (k + kI * d), k / (k + kI * (d - wr)), k / (k + kI * (d + wr)),
        k / (k + kI * (d - 2 * wr)), k / (k + kI * (d + 2 * wr));
    return f;
}

BetaSet beta_closed_form(const SystemParams& p, BetaVariant variant)
{
    p.validate();
    const Eigen::Matrix<cplx, 9, 1> b =
        beta_table(dressed_scalars(p), variant).cast<cplx>() * cavity_response_factors(p);
    BetaSet out;
    for (int i = 0; i < 9; ++i)
        out.beta[i] = b[i];
    out.source = variant == BetaVariant::Corrected ? BetaSource::ClosedFormCorrected
                                                   : BetaSource::ClosedFormPaperExact;
    return out;
}

BetaSet beta_from_operator(const AtomOperator& s, BetaSource source)
{
    BetaSet out;
    for (int i = 0; i < 9; ++i)
        out.beta[i] = s(kBetaDyads[i].first, kBetaDyads[i].second);
    out.source = source;
    return out;
}

AtomOperator lowering_operator()
{
    return dyad(0, 1) + dyad(0, 2);
}

AtomOperator atom_hamiltonian(const SystemParams& p)
{
    const double big_delta = p.laser_detuning();
    return (big_delta - p.omega21) * dyad(1, 1) + big_delta * dyad(2, 2) +
           p.rabi * (dyad(0, 2) + dyad(2, 0)) + p.rabi * (dyad(0, 1) + dyad(1, 0));
}

AtomOperator build_S_closed(const BetaSet& beta)
{
    AtomOperator s = AtomOperator::Zero();
    for (int i = 0; i < 9; ++i)
        s(kBetaDyads[i].first, kBetaDyads[i].second) += beta.beta[i];
    return s;
}

AtomOperator build_S_oracle(const SystemParams& p, double abs_tol)
{
    p.validate();
    Eigen::SelfAdjointEigenSolver<AtomOperator> es(atom_hamiltonian(p));
    const AtomOperator v = es.eigenvectors();
    const Eigen::Vector3d lambda = es.eigenvalues();
    const AtomOperator d_dressed = v.adjoint() * lowering_operator() * v;

    // D(-tau) = exp(-i H tau) D exp(i H tau)
    MatrixFunction integrand = [&](double tau) -> ComplexMatrix {
        AtomOperator m;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                m(a, b) = d_dressed(a, b) * std::exp(-kI * (lambda[a] - lambda[b]) * tau);
        return v * m * v.adjoint();
    };

    QuadratureOptions qo;
    qo.abs_tol = abs_tol / p.kappa;
    const auto r = integrate_exp_kernel(integrand, cplx(p.kappa, p.delta), qo, std::sqrt(2.0));
    return p.kappa * AtomOperator(r.value);
}

ReducedLiouvillian build_reduced_liouvillian(const SystemParams& p, const AtomOperator& s)
{
    p.validate();
    using namespace superop;
    const ComplexMatrix h = atom_hamiltonian(p);
    const ComplexMatrix d = lowering_operator();
    const ComplexMatrix dd = d.adjoint();
    const ComplexMatrix sm = s;
    const ComplexMatrix sd = sm.adjoint();

    ComplexMatrix l = hamiltonian(h);
    l += 0.5 * p.gamma_c() * (sandwich(d, sd) + sandwich(sm, dd) - left(dd * sm) - right(sd * d));
    l += dissipator(ComplexMatrix(dyad(0, 1)), p.gamma);
    l += dissipator(ComplexMatrix(dyad(0, 2)), p.gamma);
    return {std::move(l), p};
}

ReducedLiouvillian build_reduced_liouvillian(const SystemParams& p, const ModelOptions& options)
{
    const AtomOperator s = options.s_source == SOperatorSource::Oracle
                               ? build_S_oracle(p)
                               : build_S_closed(beta_closed_form(p, options.beta_variant));
    return build_reduced_liouvillian(p, s);
}

FullLiouvillian build_full_liouvillian(const SystemParams& p, int n_max)
{
    p.validate();
    if (n_max < 0)
        throw Error(ErrorKind::InvalidArgument, "photon cutoff must be non-negative");
    if (n_max > kMaxPhotonCutoff)
        throw Error(ErrorKind::DimensionTooLarge,
                    "photon cutoff " + std::to_string(n_max) + " exceeds " + std::to_string(kMaxPhotonCutoff));
    using namespace superop;

    const Eigen::Index nc = n_max + 1;
    ComplexMatrix a = ComplexMatrix::Zero(nc, nc);
    for (Eigen::Index n = 1; n < nc; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix ic = ComplexMatrix::Identity(nc, nc);
    const ComplexMatrix ia = ComplexMatrix::Identity(3, 3);
    const ComplexMatrix d = lowering_operator();

    const ComplexMatrix h = kron(atom_hamiltonian(p), ic) + p.delta * kron(ia, ad * a) +
                            p.g * (kron(d, ad) + kron(d.adjoint(), a));

    ComplexMatrix l = hamiltonian(h);
    l += dissipator(kron(ia, a), 2.0 * p.kappa);
    l += dissipator(kron(dyad(0, 1), ic), p.gamma);
    l += dissipator(kron(dyad(0, 2), ic), p.gamma);
    return {std::move(l), n_max, p};
}

AtomOperator atomic_marginal(const ComplexMatrix& rho_full, int n_max)
{
    const Eigen::Index nc = n_max + 1;
    if (rho_full.rows() != 3 * nc || rho_full.cols() != 3 * nc)
        throw Error(ErrorKind::InvalidArgument, "atomic_marginal: dimension mismatch");
    AtomOperator out = AtomOperator::Zero();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (Eigen::Index n = 0; n < nc; ++n)
                out(i, j) += rho_full(i * nc + n, j * nc + n);
    return out;
}

double photon_number(const ComplexMatrix& rho_full, int n_max)
{
    const Eigen::Index nc = n_max + 1;
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
        for (Eigen::Index n = 0; n < nc; ++n)
            total += static_cast<double>(n) * rho_full(i * nc + n, i * nc + n).real();
    return total;
}

double trace_preservation_error(const ComplexMatrix& liouvillian)
{
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(liouvillian.rows()))));
    const ComplexVector t = superop::trace_functional(n);
    return (t.transpose() * liouvillian).cwiseAbs().maxCoeff();
}

}  // namespace vatom
