#pragma once

#include <array>
#include <string_view>

#include <vatom/model.hpp>
#include <vatom/steady.hpp>

namespace vatom {

/// Columns are |a>, |b>, |c> in the bare basis, with energies
/// -Omega_R, 0, +Omega_R. Coefficients are the real closed-form ones.
struct DressedBasis {
    AtomOperator vectors;
    std::array<double, 3> eigenvalues{};
};

/// Closed-form dressed states, cross-checked against a numerical eigensolve
/// of H_A. Throws BasisMismatch if the two disagree by more than 1e-8
/// (relative to Omega_R) and DegenerateDressing when Omega_R = 0.
DressedBasis dressed_basis(const SystemParams& p);

/// Cavity Lorentzian kappa^2 / (kappa^2 + (delta + x)^2).
double cavity_lorentzian(const SystemParams& p, double x);
/// Dispersive partner kappa (delta + x) / (kappa^2 + (delta + x)^2).
double cavity_dispersion(const SystemParams& p, double x);

/// Secular approximation needs Omega_R >> gamma, gamma_c; we flag anything
/// below 10 * max(gamma, gamma_c).
bool secular_advisory(const SystemParams& p);

/// Dressed-state transition rates R_xy (x -> y between adjacent triplets).
struct TransitionRates {
    double ab = 0.0, ba = 0.0, ac = 0.0, ca = 0.0, bc = 0.0, cb = 0.0;
    bool advisory = false;  ///< secular validity in doubt
};

TransitionRates transition_rates(const SystemParams& p);

/// Rate matrix M of d/dt (p_a, p_b, p_c) = M (p_a, p_b, p_c).
Eigen::Matrix3d rate_matrix(const TransitionRates& r);

enum class PopulationSource { RateEquation, ExactTransform };

struct DressedPopulations {
    double aa = 0.0, bb = 0.0, cc = 0.0;
    PopulationSource source = PopulationSource::RateEquation;
};

/// Closed-form steady state of the rate equations. Throws
/// SingularRateMatrix when the determinant-like denominator vanishes.
DressedPopulations dressed_populations_rate_eq(const TransitionRates& r);

/// <alpha| rho |alpha> for the exact reduced-model steady state.
DressedPopulations dressed_populations_exact(const SteadyState& ss, const DressedBasis& basis);

/// PaperExact keeps the printed Gamma_5 (R(-2 Omega_R) weighted by 4 eta^2)
/// and the printed sign of the Omega_4 shift; Corrected fixes both.
enum class SecularVariant { Corrected, PaperExact };
std::string_view to_string(SecularVariant v) noexcept;
SecularVariant parse_secular_variant(std::string_view text);

/// Decay constants and shifted oscillation frequencies of the secular
/// dressed-state equations of motion.
struct SecularRates {
    double gamma_1a = 0.0, gamma_1b = 0.0;
    double gamma_2a = 0.0, gamma_2b = 0.0;
    double gamma_3a = 0.0, gamma_3b = 0.0;
    double gamma_4 = 0.0, gamma_5 = 0.0;
    double omega_3 = 0.0, omega_4 = 0.0, omega_5 = 0.0;
};

SecularRates secular_rates(const SystemParams& p, SecularVariant variant = SecularVariant::Corrected);

}  // namespace vatom
