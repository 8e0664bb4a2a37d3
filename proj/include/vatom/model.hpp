#pragma once

#include <array>
#include <string_view>

#include <vatom/linalg.hpp>

namespace vatom {

/// Physical configuration. All rates and frequencies are in units of the
/// spontaneous decay rate; frequencies are measured in the frame rotating at
/// the laser frequency. Equal couplings, Rabi frequencies and decay rates on
/// both transitions are assumed, and the laser sits at the mean Bohr
/// frequency of the excited doublet.
struct SystemParams {
    double gamma = 1.0;
    double g = 20.0;
    double kappa = 100.0;
    double omega21 = 10.0;
    double rabi = 10.0;
    double delta = 0.0;  ///< cavity-laser detuning

    /// Cavity-enhanced emission rate 2 g^2 / kappa.
    double gamma_c() const { return 2.0 * g * g / kappa; }
    /// Laser detuning from |2>, fixed to omega21 / 2.
    double laser_detuning() const { return 0.5 * omega21; }
    /// True when kappa >= 3 g and g >= 3 gamma, i.e. adiabatic elimination
    /// of the cavity mode is expected to hold.
    bool bad_cavity() const { return kappa >= 3.0 * g && g >= 3.0 * gamma; }

    /// Throws InvalidArgument on gamma <= 0, g < 0, kappa <= 0, rabi < 0 or
    /// non-finite values.
    void validate() const;
};

struct DressedScalars {
    double omega_r = 0.0;  ///< generalised Rabi frequency
    double eta = 0.0;
    double epsilon = 0.0;
};

/// Omega_R = sqrt(omega21^2 + 8 Omega^2) / 2, eta = Omega / (2 Omega_R),
/// epsilon = omega21 / (2 Omega_R). Throws DegenerateDressing when both the
/// splitting and the drive vanish.
DressedScalars dressed_scalars(const SystemParams& p);

enum class BetaVariant { Corrected, PaperExact };
enum class BetaSource { ClosedFormCorrected, ClosedFormPaperExact, Oracle };

std::string_view to_string(BetaVariant v) noexcept;
BetaVariant parse_beta_variant(std::string_view text);

/// Coefficients of S on the dyads |0><0|, |1><1|, |2><2|, |1><0|, |0><1|,
/// |2><0|, |0><2|, |2><1|, |1><2| (in that order).
struct BetaSet {
    std::array<cplx, 9> beta{};
    BetaSource source = BetaSource::ClosedFormCorrected;
};

/// Position of each beta coefficient inside the 3x3 operator S.
constexpr std::array<std::pair<int, int>, 9> kBetaDyads{{
    {0, 0}, {1, 1}, {2, 2}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2},
}};

using BetaTable = Eigen::Matrix<double, 9, 5>;

/// The 9x5 real coefficient table multiplying the cavity response factors.
BetaTable beta_table(const DressedScalars& s, BetaVariant variant);

/// kappa / (kappa + i (delta + k Omega_R)) for k = 0, -1, +1, -2, +2.
Eigen::Matrix<cplx, 5, 1> cavity_response_factors(const SystemParams& p);

BetaSet beta_closed_form(const SystemParams& p, BetaVariant variant = BetaVariant::Corrected);

/// Reads the nine dyad coefficients back out of an operator.
BetaSet beta_from_operator(const AtomOperator& s, BetaSource source);

/// D = |0><1| + |0><2|.
AtomOperator lowering_operator();

/// H_A in the laser frame with the symmetric-drive restriction.
AtomOperator atom_hamiltonian(const SystemParams& p);

AtomOperator build_S_closed(const BetaSet& beta);

/// kappa * int_0^inf exp(-(kappa + i delta) tau) D(-tau) dtau, with
/// D(-tau) = exp(-i H_A tau) D exp(i H_A tau), by adaptive quadrature.
AtomOperator build_S_oracle(const SystemParams& p, double abs_tol = 1e-10);

enum class SOperatorSource { ClosedForm, Oracle };

struct ModelOptions {
    BetaVariant beta_variant = BetaVariant::Corrected;
    SOperatorSource s_source = SOperatorSource::ClosedForm;
};

/// Generator of the cavity-eliminated atomic master equation, acting on
/// row-major vectorised 3x3 density matrices (see superop.hpp).
struct ReducedLiouvillian {
    ComplexMatrix matrix;  // 9 x 9
    SystemParams params;
};

ReducedLiouvillian build_reduced_liouvillian(const SystemParams& p, const ModelOptions& options = {});
ReducedLiouvillian build_reduced_liouvillian(const SystemParams& p, const AtomOperator& s);

/// Atom + single cavity mode truncated at n_max photons; basis ordering is
/// atom-major: index = 3-level index * (n_max + 1) + photon number.
struct FullLiouvillian {
    ComplexMatrix matrix;
    int n_max = 0;
    SystemParams params;

    Eigen::Index hilbert_dim() const { return 3 * (n_max + 1); }
};

constexpr int kMaxPhotonCutoff = 20;

FullLiouvillian build_full_liouvillian(const SystemParams& p, int n_max);

/// Partial trace over the cavity of a full-model density matrix.
AtomOperator atomic_marginal(const ComplexMatrix& rho_full, int n_max);
double photon_number(const ComplexMatrix& rho_full, int n_max);

/// Largest |column sum| of the generator, i.e. the deviation from trace
/// preservation in the row-major convention.
double trace_preservation_error(const ComplexMatrix& liouvillian);

}  // namespace vatom
