#include <vatom/dressed.hpp>
#include <vatom/error.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace vatom {

DressedBasis dressed_basis(const SystemParams& p)
{
    const DressedScalars s = dressed_scalars(p);
    const double e = s.epsilon;
    const double n = s.eta;

    DressedBasis basis;
    basis.vectors.col(0) << 2.0 * n, -0.5 * (1.0 + e), -0.5 * (1.0 - e);
    basis.vectors.col(1) << e, 2.0 * n, -2.0 * n;
    basis.vectors.col(2) << 2.0 * n, 0.5 * (1.0 - e), 0.5 * (1.0 + e);
    basis.eigenvalues = {-s.omega_r, 0.0, s.omega_r};

    // Independent check against the eigensolver: eigen-relation, unitarity and
    // the eigenvalue set itself.
    const AtomOperator h = atom_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<AtomOperator> es(h, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, s.omega_r);
    double mismatch = (basis.vectors.adjoint() * basis.vectors - AtomOperator::Identity()).cwiseAbs().maxCoeff();
    for (int k = 0; k < 3; ++k) {
        const Eigen::Vector3cd v = basis.vectors.col(k);
        mismatch = std::max(mismatch, (h * v - basis.eigenvalues[k] * v).norm() / scale);
        mismatch = std::max(mismatch, std::abs(es.eigenvalues()[k] - basis.eigenvalues[k]) / scale);
    }
    if (mismatch > 1e-8)
        throw Error(ErrorKind::BasisMismatch, "dressed_basis: closed form disagrees with eigensolve by " +
                                                  std::to_string(mismatch));
    return basis;
}

double cavity_lorentzian(const SystemParams& p, double x)
{
    const double k2 = p.kappa * p.kappa;
    const double d = p.delta + x;
    return k2 / (k2 + d * d);
}

double cavity_dispersion(const SystemParams& p, double x)
{
    const double d = p.delta + x;
    return p.kappa * d / (p.kappa * p.kappa + d * d);
}

bool secular_advisory(const SystemParams& p)
{
    return dressed_scalars(p).omega_r < 10.0 * std::max(p.gamma, p.gamma_c());
}

TransitionRates transition_rates(const SystemParams& p)
{
    p.validate();
    const DressedScalars s = dressed_scalars(p);
    const double gam = p.gamma;
    const double gc = p.gamma_c();
    const double e2 = s.epsilon * s.epsilon;
    const double n2x4 = 4.0 * s.eta * s.eta;
    const double wr = s.omega_r;
    auto R = [&](double x) { return cavity_lorentzian(p, x); };

    TransitionRates r;
    r.ba = 0.5 * gam * (1.0 - e2) * (1.0 - e2);
    r.bc = r.ba;
    r.ab = 0.5 * gam * (1.0 + e2) * e2 + gc * e2 * R(wr);
    r.cb = 0.5 * gam * (1.0 + e2) * e2 + gc * e2 * R(-wr);
    r.ac = 0.25 * gam * (1.0 - e2 * e2) + gc * n2x4 * R(2.0 * wr);
    r.ca = 0.25 * gam * (1.0 - e2 * e2) + gc * n2x4 * R(-2.0 * wr);
    r.advisory = secular_advisory(p);
    return r;
}

Eigen::Matrix3d rate_matrix(const TransitionRates& r)
{
    Eigen::Matrix3d m;
    // clang-format off
    m << -(r.ab + r.ac), r.ba,            r.ca,
         r.ab,           -(r.bc + r.ba),  r.cb,
         r.ac,           r.bc,            -(r.ca + r.cb);
    // clang-format on
    return m;
}

DressedPopulations dressed_populations_rate_eq(const TransitionRates& r)
{
    const double den = (r.ab + r.ac + r.ba) * (r.ca + r.cb + r.bc) - (r.ca - r.ba) * (r.ac - r.bc);
    if (!(std::abs(den) >= 1e-14))
        throw Error(ErrorKind::SingularRateMatrix, "rate equations have no unique steady state");
    DressedPopulations out;
    out.aa = (r.ba * (r.ca + r.cb + r.bc) + r.bc * (r.ca - r.ba)) / den;
    out.cc = (r.ba * (r.ac - r.bc) + r.bc * (r.ab + r.ac + r.ba)) / den;
    out.bb = 1.0 - out.aa - out.cc;
    out.source = PopulationSource::RateEquation;
    return out;
}

DressedPopulations dressed_populations_exact(const SteadyState& ss, const DressedBasis& basis)
{
    auto pop = [&](int k) {
        const Eigen::Vector3cd v = basis.vectors.col(k);
        return (v.adjoint() * ss.rho * v)(0, 0).real();
    };
    DressedPopulations out;
    out.aa = pop(0);
    out.bb = pop(1);
    out.cc = pop(2);
    out.source = PopulationSource::ExactTransform;
    return out;
}

std::string_view to_string(SecularVariant v) noexcept
{
    return v == SecularVariant::Corrected ? "corrected" : "paper-exact";
}

SecularVariant parse_secular_variant(std::string_view text)
{
    return parse_beta_variant(text) == BetaVariant::Corrected ? SecularVariant::Corrected
                                                              : SecularVariant::PaperExact;
}

SecularRates secular_rates(const SystemParams& p, SecularVariant variant)
{
    p.validate();
    const DressedScalars s = dressed_scalars(p);
    const double gam = p.gamma;
    const double gc = p.gamma_c();
    const double e2 = s.epsilon * s.epsilon;
    const double e4 = e2 * e2;
    const double h = 4.0 * s.eta * s.eta;
    const double wr = s.omega_r;
    auto R = [&](double x) { return cavity_lorentzian(p, x); };
    auto I = [&](double x) { return cavity_dispersion(p, x); };

    SecularRates r;
    r.gamma_1a = 0.25 * gam * (3.0 - 2.0 * e2 + 3.0 * e4) + gc * (e2 * R(wr) + h * R(2 * wr));
    r.gamma_1b = 0.25 * gam * (3.0 - 2.0 * e2 + 3.0 * e4) + gc * (e2 * R(-wr) + h * R(-2 * wr));
    r.gamma_2a = 0.5 * gam * (1.0 - e2) * (3.0 * e2 - 1.0) + gc * h * R(-2 * wr);
    r.gamma_2b = 0.5 * gam * (1.0 - e2) * (3.0 * e2 - 1.0) + gc * h * R(2 * wr);
    r.gamma_3a = 0.25 * gam * (3.0 + e2 - 2.0 * e4) + 0.5 * gc * (h * R(0) + e2 * R(wr) + h * R(2 * wr));
    r.gamma_3b = 0.25 * gam * (3.0 + e2 - 2.0 * e4) + 0.5 * gc * (h * R(0) + e2 * R(-wr) + h * R(-2 * wr));
    r.gamma_4 = -0.5 * gam * e2 * (1.0 - e2);
    const double outer = variant == SecularVariant::Corrected ? R(2 * wr) + R(-2 * wr)
                                                             : R(2 * wr) + h * R(-2 * wr);
    r.gamma_5 = 0.25 * gam * (3.0 + e4) + 0.5 * gc * (4.0 * h * R(0) + e2 * (R(wr) + R(-wr)) + h * outer);
    r.omega_3 = wr + 0.5 * gc * (h * I(0) + e2 * I(wr) + h * I(2 * wr));
    // The printed Omega_4 carries the shift with a plus sign; the exact
    // generator's eigenfrequencies and the sum rule Omega_5 - 2 Omega_R =
    // (Omega_3 - Omega_R) + (Omega_4 - Omega_R) both need a minus.
    const double shift_4 = 0.5 * gc * (h * I(0) + e2 * I(-wr) + h * I(-2 * wr));
    r.omega_4 = variant == SecularVariant::Corrected ? wr - shift_4 : wr + shift_4;
    r.omega_5 = 2 * wr + 0.5 * gc * (e2 * (I(wr) - I(-wr)) + h * (I(2 * wr) - I(-2 * wr)));
    return r;
}

}  // namespace vatom
