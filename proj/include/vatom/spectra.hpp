#pragma once

#include <string_view>
#include <vector>

#include <vatom/dressed.hpp>
#include <vatom/model.hpp>
#include <vatom/steady.hpp>

namespace vatom {

enum class SpectrumKind { FluorescenceQRT, FluorescenceSecular, FluorescenceOracle, Absorption };

std::string_view to_string(SpectrumKind k) noexcept;

/// Frequencies are offsets from the laser frequency in units of gamma.
struct SpectrumSeries {
    std::vector<double> freqs;
    std::vector<double> values;
    SpectrumKind kind = SpectrumKind::FluorescenceQRT;
    SystemParams params;
    /// min(values) / max(values); slightly negative values are possible since
    /// the cavity-eliminated generator is not of Lindblad form.
    double min_relative = 0.0;

    std::size_t size() const { return freqs.size(); }
};

/// 2001 points over [-2.5 Omega_R, 2.5 Omega_R].
std::vector<double> default_spectral_grid(const SystemParams& p);

struct SpectrumOptions {
    ModelOptions model;
    unsigned threads = 0;
    /// Adds the <A_10 A_02> and <A_20 A_01> cross terms. Orthogonal dipoles
    /// make them invisible to the detector, so this is a diagnostic only.
    bool include_cross_terms = false;
};

/// Inelastic fluorescence spectrum from the quantum regression theorem:
/// Re[x_F(0,1) + x_G(0,2)] with x solving (i omega - L) x = F(0) - F(inf).
/// The stationary part is removed before the solve, so omega = 0 is regular.
SpectrumSeries fluorescence_qrt(const SystemParams& p, const std::vector<double>& grid,
                                const SpectrumOptions& options = {});

/// rho_11 + rho_22 - |rho_01|^2 - |rho_02|^2: the subtracted correlation at
/// tau = 0, equal to (1/pi) times the integral of the inelastic spectrum.
double stationary_correlation(const SteadyState& ss);

/// <A_10(tau) A_01> + <A_20(tau) A_02> minus the stationary part, obtained by
/// propagating F(0), G(0) with exp(L dt). Any tau grid in [0, 40] is accepted;
/// steps of equal length reuse one exponential.
std::vector<cplx> correlation_oracle(const SystemParams& p, const std::vector<double>& tau_grid,
                                     const ModelOptions& options = {});

struct FourierOracleOptions {
    double tau_max = 40.0;
    /// Largest phase advance per step at the highest frequency in play.
    double max_phase_step = 0.2;
    ModelOptions model;
    unsigned threads = 0;
};

struct FourierOracleResult {
    SpectrumSeries spectrum;
    double step = 0.0;
    std::size_t samples = 0;
    double tail_magnitude = 0.0;  ///< |C(tau_max)|
};

/// Spectrum from the propagated correlation by direct Fourier quadrature
/// (trapezoid with Euler-Maclaurin endpoint corrections from exact
/// derivatives of C at tau = 0). Independent of the resolvent path.
FourierOracleResult fluorescence_fourier_oracle(const SystemParams& p, const std::vector<double>& grid,
                                                const FourierOracleOptions& options = {});

struct SecularComponents {
    SpectrumSeries central, inner_low, inner_high, outer_low, outer_high, total;
    /// Half-widths; the printed full widths are twice these.
    double gamma0_plus = 0.0, gamma0_minus = 0.0;
    double gamma1_plus = 0.0, gamma1_minus = 0.0;
    double gamma5 = 0.0;
    bool real_discriminants = true;
    bool advisory = false;
    SecularRates rates;
    DressedPopulations populations;
};

/// Five-line secular decomposition evaluated on `grid`, using rate-equation
/// dressed populations.
SecularComponents fluorescence_secular(const SystemParams& p, const std::vector<double>& grid,
                                       SecularVariant variant = SecularVariant::Corrected);

struct AbsorptionOptions {
    ModelOptions model;
    unsigned threads = 0;
};

/// Probe absorption Re[F_01 + G_02 - F'_10 - G'_20] at z = i nu, where
/// F'(0) = rho |1><0| and G'(0) = rho |2><0|. Positive values are absorption.
SpectrumSeries absorption_spectrum(const SystemParams& p, const std::vector<double>& grid,
                                   const AbsorptionOptions& options = {});

/// Rate-equation absorption weights of the lines at -2, -1, +1, +2 Omega_R.
struct LineWeights {
    double w_minus2 = 0.0, w_minus1 = 0.0, w_plus1 = 0.0, w_plus2 = 0.0;
};

LineWeights line_weights(const SystemParams& p);

struct Peak {
    double freq = 0.0;
    double value = 0.0;
};

/// Largest value within |freq - center| <= half_width. Throws
/// InvalidArgument when the window holds no grid point.
Peak peak_in_window(const SpectrumSeries& s, double center, double half_width);

/// Trapezoid integral over the grid points inside [lo, hi].
double window_integral(const SpectrumSeries& s, double lo, double hi);

/// Trapezoid over the whole grid plus a 1/omega^2 tail estimate beyond each
/// edge (value * |edge|).
double spectral_integral(const SpectrumSeries& s);

/// max |s(x) - s(-x)| / max |s| for a grid symmetric about zero.
double asymmetry(const SpectrumSeries& s);

}  // namespace vatom
