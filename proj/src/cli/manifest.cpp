#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace vatom::cli {

namespace {

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CheckOutcome outcome(std::string name, double measured, std::string bound, bool pass, std::string detail = {})
{
    return {std::move(name), measured, std::move(bound), pass, false, std::move(detail)};
}

double omega_r(const RunConfig& cfg)
{
    return dressed_scalars(cfg.params).omega_r;
}

const PopulationSweep& sweep_of(const ManifestContext& c)
{
    if (!c.output.sweep)
        throw Error(ErrorKind::InvalidArgument, c.manifest.id + ": check needs a population sweep");
    return *c.output.sweep;
}

const SpectrumSeries& spectrum_of(const ManifestContext& c)
{
    if (!c.output.spectrum)
        throw Error(ErrorKind::InvalidArgument, c.manifest.id + ": check needs a spectrum");
    return *c.output.spectrum;
}

std::size_t nearest_index(const std::vector<double>& grid, double x)
{
    const auto it = std::min_element(grid.begin(), grid.end(),
                                     [x](double a, double b) { return std::abs(a - x) < std::abs(b - x); });
    return static_cast<std::size_t>(it - grid.begin());
}

std::size_t column(const Table& t, const std::string& name)
{
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end())
        throw Error(ErrorKind::InvalidArgument, "no column " + name);
    return static_cast<std::size_t>(it - t.header.begin());
}

double peak_at(const SpectrumSeries& s, double center, double wr)
{
    return peak_in_window(s, center, 0.15 * wr).value;
}

// ---- populations -----------------------------------------------------------

CheckOutcome steady_sanity(const ManifestContext& c)
{
    const auto grid = c.config.sweep_points();
    double worst_trace = 0, worst_herm = 0, worst_resid = 0, min_eig = 1;
    for (double d : grid) {
        const SystemParams p = with_variable(c.config.params, c.config.sweep_variable(), d);
        const SteadyState ss = steady_state(build_reduced_liouvillian(p, c.config.model_options()));
        const auto r = hermitian_report(ss.rho);
        worst_trace = std::max(worst_trace, std::abs(ss.rho.trace() - 1.0));
        worst_herm = std::max(worst_herm, r.max_asymmetry);
        worst_resid = std::max(worst_resid, ss.residual);
        min_eig = std::min(min_eig, r.min_eigenvalue);
    }
    const bool pass = worst_trace <= 1e-12 && worst_herm <= 1e-12 && worst_resid <= 1e-10 && min_eig >= -1e-10;
    return outcome("steady_sanity", std::max({worst_trace, worst_herm, worst_resid}),
                   "trace,herm<=1e-12;resid<=1e-10;eig>=-1e-10", pass, "min eigenvalue " + fmt(min_eig));
}

CheckOutcome no_failed_points(const ManifestContext& c)
{
    return outcome("no_failed_points", static_cast<double>(c.output.failed_points), "0",
                   c.output.failed_points == 0);
}

CheckOutcome ground_max_at_resonance(const ManifestContext& c)
{
    const auto& s = sweep_of(c);
    const std::size_t i = nearest_index(s.grid, 0.0);
    const double centre = s.rho00[i];
    const double side = std::max(s.rho00[i - 20], s.rho00[i + 20]);
    return outcome("ground_max_at_resonance", centre - side, "> 0", centre > s.rho00[i - 1] && centre > s.rho00[i + 1] &&
                                                                        centre > side);
}

CheckOutcome ground_dip_at_resonance(const ManifestContext& c)
{
    const auto& s = sweep_of(c);
    const std::size_t i = nearest_index(s.grid, 0.0);
    const double centre = s.rho00[i];
    const double edge = std::min(s.rho00.front(), s.rho00.back());
    return outcome("ground_dip_at_resonance", edge - centre, "> 0",
                   centre < s.rho00[i - 1] && centre < s.rho00[i + 1] && centre < edge);
}

CheckOutcome ground_tends_to_half(const ManifestContext& c)
{
    const auto& s = sweep_of(c);
    const double dev = std::max({std::abs(s.rho00.front() - 0.5), std::abs(s.rho00.back() - 0.5),
                                 std::abs(s.rho11.front() - 0.25), std::abs(s.rho22.back() - 0.25)});
    return outcome("ground_tends_to_half", dev, "<= 0.02", dev <= 0.02);
}

double max_inversion(const PopulationSweep& s, double* where = nullptr)
{
    double best = -1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = s.rho22[i] - s.rho00[i];
        if (v > best) {
            best = v;
            if (where)
                *where = s.grid[i];
        }
    }
    return best;
}

CheckOutcome population_inversion(const ManifestContext& c)
{
    double where = 0.0;
    const double best = max_inversion(sweep_of(c), &where);
    return outcome("population_inversion", best, "> 0", best > 0.0, "at delta = " + fmt(where));
}

CheckOutcome no_population_inversion(const ManifestContext& c)
{
    const double best = max_inversion(sweep_of(c));
    return outcome("no_population_inversion", best, "<= 0", best <= 0.0);
}

CheckOutcome excited_extrema_near_two_omega_r(const ManifestContext& c)
{
    const auto& s = sweep_of(c);
    const double wr = omega_r(c.config);
    double worst = 0.0;
    for (double sign : {-1.0, 1.0}) {
        // Largest |rho11 - edge level| in a window around +-2 Omega_R.
        double best = -1.0, at = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s.grid[i] - sign * 2.0 * wr) > 0.5 * wr)
                continue;
            const double dev = std::abs(s.rho11[i] - s.rho11.front());
            if (dev > best) {
                best = dev;
                at = s.grid[i];
            }
        }
        worst = std::max(worst, std::abs(at - sign * 2.0 * wr));
    }
    return outcome("excited_extrema_near_two_omega_r", worst / wr, "<= 0.15 (units of Omega_R)", worst <= 0.15 * wr);
}

// ---- dressed ---------------------------------------------------------------

CheckOutcome rate_mirror_symmetry(const ManifestContext& c)
{
    const Table& t = c.output.table;
    const std::size_t a = column(t, "p_aa_rate"), cc = column(t, "p_cc_rate");
    const std::size_t n = t.rows.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(t.rows[i][0] + t.rows[n - 1 - i][0]) > 1e-9 * std::max(1.0, std::abs(t.rows[i][0])))
            return outcome("rate_mirror_symmetry", NAN, "grid symmetric", false, "sweep grid not symmetric");
        worst = std::max(worst, std::abs(t.rows[i][a] - t.rows[n - 1 - i][cc]));
    }
    return outcome("rate_mirror_symmetry", worst, "<= 1e-9", worst <= 1e-9);
}

CheckOutcome rate_equal_at_resonance(const ManifestContext& c)
{
    const RunConfig& cfg = c.config;
    SystemParams p = cfg.params;
    p.delta = 0.0;
    const DressedPopulations d = dressed_populations_rate_eq(transition_rates(p));
    const double diff = std::abs(d.aa - d.cc);
    return outcome("rate_equal_at_resonance", diff, "<= 1e-12", diff <= 1e-12);
}

CheckOutcome accumulation_in_c_below(const ManifestContext& c)
{
    const double wr = omega_r(c.config);
    SystemParams lo = c.config.params, hi = c.config.params;
    lo.delta = -2.0 * wr;
    hi.delta = 2.0 * wr;
    const auto below = dressed_populations_rate_eq(transition_rates(lo));
    const auto above = dressed_populations_rate_eq(transition_rates(hi));
    const double margin = std::min(below.cc - below.aa, above.aa - above.cc);
    return outcome("accumulation_in_c_below", margin, "> 0", margin > 0.0,
                   "p_cc-p_aa at -2 Omega_R " + fmt(below.cc - below.aa));
}

CheckOutcome middle_state_empty(const ManifestContext& c)
{
    const Table& t = c.output.table;
    const std::size_t b = column(t, "p_bb_rate");
    double worst = 0.0;
    for (const auto& row : t.rows)
        worst = std::max(worst, row[b]);
    return outcome("middle_state_empty", worst, "<= 0.05", worst <= 0.05);
}

CheckOutcome middle_state_dominant_at_resonance(const ManifestContext& c)
{
    const Table& t = c.output.table;
    const std::size_t i = nearest_index([&] {
        std::vector<double> g;
        for (const auto& r : t.rows)
            g.push_back(r[0]);
        return g;
    }(), 0.0);
    const auto& row = t.rows[i];
    const double margin = row[column(t, "p_bb")] - std::max(row[column(t, "p_aa")], row[column(t, "p_cc")]);
    return outcome("middle_state_dominant_at_resonance", margin, "> 0", margin > 0.0);
}

CheckOutcome upper_state_dominant_at_two_omega_r(const ManifestContext& c)
{
    SystemParams p = c.config.params;
    p.delta = 2.0 * omega_r(c.config);
    const auto exact = dressed_populations_exact(steady_state(build_reduced_liouvillian(p, c.config.model_options())),
                                                 dressed_basis(p));
    const double margin = exact.aa - std::max(exact.bb, exact.cc);
    return outcome("upper_state_dominant_at_two_omega_r", margin, "> 0", margin > 0.0);
}

CheckOutcome rate_vs_exact_at_two_omega_r(const ManifestContext& c)
{
    SystemParams p = c.config.params;
    p.delta = 2.0 * omega_r(c.config);
    const auto exact = dressed_populations_exact(steady_state(build_reduced_liouvillian(p, c.config.model_options())),
                                                 dressed_basis(p));
    const auto rate = dressed_populations_rate_eq(transition_rates(p));
    const double dev =
        std::max({std::abs(exact.aa - rate.aa), std::abs(exact.bb - rate.bb), std::abs(exact.cc - rate.cc)});
    return outcome("rate_vs_exact_at_two_omega_r", dev, "<= 0.05", dev <= 0.05);
}

// ---- fluorescence ----------------------------------------------------------

CheckOutcome symmetric_spectrum(const ManifestContext& c)
{
    const double a = asymmetry(spectrum_of(c));
    return outcome("symmetric_spectrum", a, "<= 0.05", a <= 0.05);
}

CheckOutcome asymmetric_spectrum(const ManifestContext& c)
{
    const double a = asymmetry(spectrum_of(c));
    return outcome("asymmetric_spectrum", a, "> 0.05", a > 0.05);
}

CheckOutcome sum_rule(const ManifestContext& c)
{
    const double wr = omega_r(c.config);
    SpectrumOptions options;
    options.model = c.config.model_options();
    options.threads = c.config.threads;
    const auto wide = fluorescence_qrt(c.config.params, uniform_grid(-6.0 * wr, 6.0 * wr, 24001), options);
    const double expected =
        std::numbers::pi * stationary_correlation(steady_state(build_reduced_liouvillian(c.config.params, options.model)));
    const double rel = std::abs(spectral_integral(wide) / expected - 1.0);
    return outcome("sum_rule", rel, "<= 0.01", rel <= 0.01);
}

CheckOutcome inner_sidebands_hardly_visible(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double inner = std::max(peak_at(s, -wr, wr), peak_at(s, wr, wr));
    const double outer = std::min(peak_at(s, -2 * wr, wr), peak_at(s, 2 * wr, wr));
    return outcome("inner_sidebands_hardly_visible", inner / outer, "< 0.1", inner < 0.1 * outer);
}

CheckOutcome lower_outer_sideband_enhanced(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double lo = peak_at(s, -2 * wr, wr), hi = peak_at(s, 2 * wr, wr);
    return outcome("lower_outer_sideband_enhanced", lo / hi, "> 1", lo > hi);
}

CheckOutcome lower_peaks_higher(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double outer = peak_at(s, -2 * wr, wr) / peak_at(s, 2 * wr, wr);
    const double inner = peak_at(s, -wr, wr) / peak_at(s, wr, wr);
    return outcome("lower_peaks_higher", std::min(outer, inner), "> 1", outer > 1.0 && inner > 1.0);
}

CheckOutcome higher_inner_sideband_enhanced(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double ratio = peak_at(s, wr, wr) / peak_at(s, -wr, wr);
    return outcome("higher_inner_sideband_enhanced", ratio, "> 1", ratio > 1.0);
}

CheckOutcome lower_inner_sideband_enhanced(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double ratio = peak_at(s, -wr, wr) / peak_at(s, wr, wr);
    return outcome("lower_inner_sideband_enhanced", ratio, "> 1", ratio > 1.0);
}

CheckOutcome outer_sidebands_invisible(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double inner = std::min(peak_at(s, -wr, wr), peak_at(s, wr, wr));
    const double outer = std::max(peak_at(s, -2 * wr, wr), peak_at(s, 2 * wr, wr));
    return outcome("outer_sidebands_invisible", inner / outer, "> 10", inner > 10.0 * outer);
}

CheckOutcome outer_sidebands_weak(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const double inner = std::min(peak_at(s, -wr, wr), peak_at(s, wr, wr));
    const double outer = std::max(peak_at(s, -2 * wr, wr), peak_at(s, 2 * wr, wr));
    return outcome("outer_sidebands_weak", inner / outer, "> 1", inner > outer);
}

CheckOutcome dual_path(const ManifestContext& c)
{
    const auto& q = spectrum_of(c);
    FourierOracleOptions options;
    options.model = c.config.model_options();
    options.threads = c.config.threads;
    const auto o = fluorescence_fourier_oracle(c.config.params, q.freqs, options);
    double scale = 0.0;
    for (double v : q.values)
        scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        worst = std::max(worst, std::abs(o.spectrum.values[i] - q.values[i]) / std::max(std::abs(q.values[i]), 1e-9 * scale));
    return outcome("dual_path", worst, "<= 0.02", worst <= 0.02);
}

CheckOutcome secular_matches_exact_peaks(const ManifestContext& c)
{
    const auto& q = spectrum_of(c);
    const double wr = omega_r(c.config);
    const auto sec = fluorescence_secular(c.config.params, q.freqs, c.config.secular_variant);
    const double step = q.freqs[1] - q.freqs[0];
    double worst_pos = 0.0, worst_height = 0.0;
    for (int k = -2; k <= 2; ++k) {
        const Peak a = peak_in_window(q, k * wr, 0.25 * wr);
        const Peak b = peak_in_window(sec.total, k * wr, 0.25 * wr);
        worst_pos = std::max(worst_pos, std::abs(a.freq - b.freq) / step);
        worst_height = std::max(worst_height, std::abs(b.value - a.value) / a.value);
    }
    return outcome("secular_matches_exact_peaks", worst_height, "height <= 0.2; position <= 1 step",
                   worst_height <= 0.2 && worst_pos <= 1.0 + 1e-9, "position offset " + fmt(worst_pos) + " steps");
}

CheckOutcome secular_anchor(const ManifestContext& c, const char* name, bool gamma_3a, double target)
{
    const SecularRates r = secular_rates(c.config.params, c.config.secular_variant);
    const double v = gamma_3a ? r.gamma_3a : r.gamma_3b;
    const double rel = std::abs(v / target - 1.0);
    return outcome(name, v, fmt(target) + " within 2%", rel <= 0.02);
}

// ---- absorption ------------------------------------------------------------

double abs_max(const SpectrumSeries& s)
{
    double m = 0.0;
    for (double v : s.values)
        m = std::max(m, std::abs(v));
    return m;
}

CheckOutcome absorption_vanishes_at_resonance(const ManifestContext& c)
{
    const double m = abs_max(spectrum_of(c));
    return outcome("absorption_vanishes_at_resonance", m, "<= 1e-10", m <= 1e-10);
}

CheckOutcome absorption_decays_far_out(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    AbsorptionOptions options;
    options.model = c.config.model_options();
    const auto far = absorption_spectrum(c.config.params, {-40.0 * wr, -30.0 * wr, 30.0 * wr, 40.0 * wr}, options);
    const double scale = abs_max(s);
    if (scale <= 1e-10)  // resonant case: the whole spectrum is rounding noise
        return outcome("absorption_decays_far_out", abs_max(far), "<= 1e-10", abs_max(far) <= 1e-10);
    const double rel = abs_max(far) / scale;
    return outcome("absorption_decays_far_out", rel, "<= 1e-6", rel <= 1e-6);
}

CheckOutcome weights_antisymmetric(const ManifestContext& c)
{
    const LineWeights w = line_weights(c.config.params);
    const double d = std::abs(w.w_plus2 + w.w_minus2);
    return outcome("weights_antisymmetric", d, "<= 1e-15", d <= 1e-15);
}

CheckOutcome window_signs_match_weights(const ManifestContext& c)
{
    const auto& s = spectrum_of(c);
    const double wr = omega_r(c.config);
    const LineWeights w = line_weights(c.config.params);
    const std::pair<double, double> lines[] = {
        {-2.0, w.w_minus2}, {-1.0, w.w_minus1}, {1.0, w.w_plus1}, {2.0, w.w_plus2}};
    int matched = 0;
    for (const auto& [k, weight] : lines) {
        const double area = window_integral(s, k * wr - 5.0, k * wr + 5.0);
        matched += (area > 0) == (weight > 0) ? 1 : 0;
    }
    return outcome("window_signs_match_weights", matched, "4 of 4", matched == 4);
}

CheckOutcome exceeds_resonant_case(const ManifestContext& c)
{
    SystemParams p = c.config.params;
    p.delta = 0.0;
    AbsorptionOptions options;
    options.model = c.config.model_options();
    options.threads = c.config.threads;
    const double ref = abs_max(absorption_spectrum(p, spectrum_of(c).freqs, options));
    const double here = abs_max(spectrum_of(c));
    return outcome("exceeds_resonant_case", here, "> " + fmt(ref), here > ref);
}

// ---- manifest table --------------------------------------------------------

RunConfig base_config(double omega21, double rabi, double delta_in_omega_r)
{
    RunConfig cfg;
    cfg.params.omega21 = omega21;
    cfg.params.rabi = rabi;
    cfg.params.delta = delta_in_omega_r * dressed_scalars(cfg.params).omega_r;
    return cfg;
}

std::vector<ManifestAssertion> plain(std::initializer_list<const char*> names)
{
    std::vector<ManifestAssertion> out;
    for (const char* n : names)
        out.push_back({n, false, {}});
    return out;
}

std::vector<FigureManifest> build_manifests()
{
    std::vector<FigureManifest> out;
    const char letters[] = "abcdef";

    // Bare and dressed populations: omega21 = 10 for a-c, 200 for d-f
    // (caption variants with 100 for d-f are kept under their own ids).
    const double rabi[] = {4, 10, 100, 100, 200, 300};
    const std::vector<std::vector<ManifestAssertion>> fig2_checks{
        plain({"steady_sanity", "no_failed_points", "ground_max_at_resonance"}),
        plain({"steady_sanity", "no_failed_points", "ground_dip_at_resonance"}),
        plain({"steady_sanity", "no_failed_points", "ground_tends_to_half"}),
        plain({"steady_sanity", "no_failed_points", "population_inversion", "excited_extrema_near_two_omega_r"}),
        plain({"steady_sanity", "no_failed_points", "population_inversion"}),
        plain({"steady_sanity", "no_failed_points", "no_population_inversion"}),
    };
    const std::vector<std::vector<ManifestAssertion>> fig4_checks{
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance"}),
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance"}),
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance", "accumulation_in_c_below", "middle_state_empty"}),
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance", "middle_state_dominant_at_resonance"}),
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance", "upper_state_dominant_at_two_omega_r",
               "rate_vs_exact_at_two_omega_r"}),
        plain({"rate_mirror_symmetry", "rate_equal_at_resonance"}),
    };
    for (int i = 0; i < 6; ++i) {
        const double w21 = i < 3 ? 10.0 : 200.0;
        FigureManifest f2{std::string("fig2") + letters[i], "bare populations", base_config(w21, rabi[i], 0),
                          ManifestCommand::Populations, fig2_checks[i]};
        FigureManifest f4{std::string("fig4") + letters[i], "dressed populations", base_config(w21, rabi[i], 0),
                          ManifestCommand::Dressed, fig4_checks[i]};
        out.push_back(f2);
        out.push_back(f4);
        if (i >= 3) {
            for (auto* f : {&f2, &f4}) {
                FigureManifest v = *f;
                v.id += "-caption";
                v.title += " (caption splitting 100)";
                v.config = base_config(100.0, rabi[i], 0);
                for (auto& a : v.assertions) {
                    a.known_discrepancy = true;
                    a.note = "caption and text disagree on the splitting";
                }
                out.push_back(std::move(v));
            }
        }
    }

    // Fluorescence spectra at delta = 0, Omega_R, 2 Omega_R, 10 Omega_R.
    struct SpectrumFigure {
        int number;
        double omega21, rabi;
        std::vector<std::vector<ManifestAssertion>> checks;
    };
    const ManifestAssertion g3b_slip{"gamma_3b_anchor_one_omega_r", true,
                                     "printed 4.40; direct evaluation of the printed rates gives about 3.89"};
    const ManifestAssertion g3a_slip_1{"gamma_3a_anchor_one_omega_r", true,
                                       "printed 1.33; direct evaluation gives about 1.39"};
    const ManifestAssertion g3a_slip_2{"gamma_3a_anchor_two_omega_r", true,
                                       "printed 0.93; direct evaluation gives about 1.00"};
    auto with = [](std::vector<ManifestAssertion> v, std::initializer_list<ManifestAssertion> extra) {
        v.insert(v.end(), extra);
        return v;
    };
    const std::vector<SpectrumFigure> spectra{
        {5, 10, 100,
         {plain({"sum_rule", "dual_path", "symmetric_spectrum", "inner_sidebands_hardly_visible"}),
          plain({"sum_rule", "dual_path", "lower_outer_sideband_enhanced"}),
          plain({"sum_rule", "dual_path", "lower_outer_sideband_enhanced"}),
          plain({"sum_rule", "dual_path", "symmetric_spectrum"})}},
        {6, 200, 50,
         {plain({"sum_rule", "symmetric_spectrum", "outer_sidebands_invisible", "gamma_3a_anchor_resonance"}),
          with(plain({"sum_rule", "higher_inner_sideband_enhanced"}), {g3a_slip_1, g3b_slip}),
          with(plain({"sum_rule", "higher_inner_sideband_enhanced", "gamma_3b_anchor_two_omega_r"}), {g3a_slip_2}),
          plain({"sum_rule"})}},
        {7, 200, 100,
         {plain({"sum_rule", "symmetric_spectrum", "outer_sidebands_weak"}),
          plain({"sum_rule", "higher_inner_sideband_enhanced"}),
          plain({"sum_rule", "lower_inner_sideband_enhanced", "lower_outer_sideband_enhanced"}),
          plain({"sum_rule"})}},
        {8, 200, 200,
         {plain({"sum_rule", "symmetric_spectrum", "secular_matches_exact_peaks"}),
          plain({"sum_rule", "asymmetric_spectrum"}),
          plain({"sum_rule", "lower_peaks_higher"}),
          plain({"sum_rule"})}},
    };
    const double detunings[] = {0.0, 1.0, 2.0, 10.0};
    for (const auto& fig : spectra)
        for (int k = 0; k < 4; ++k)
            out.push_back({"fig" + std::to_string(fig.number) + letters[k], "fluorescence spectrum",
                           base_config(fig.omega21, fig.rabi, detunings[k]), ManifestCommand::Fluorescence,
                           fig.checks[k]});

    // Absorption: two parameter sets per figure, delta = 0, Omega_R, 2 Omega_R.
    const double absorption_sets[2][2][2] = {{{10, 100}, {200, 50}}, {{200, 100}, {200, 200}}};
    for (int f = 0; f < 2; ++f)
        for (int half = 0; half < 2; ++half)
            for (int k = 0; k < 3; ++k) {
                const int frame = 3 * half + k;
                std::vector<ManifestAssertion> checks = plain({"weights_antisymmetric", "absorption_decays_far_out"});
                if (k == 0)
                    checks.push_back({"absorption_vanishes_at_resonance", false, {}});
                else
                    checks.push_back({"exceeds_resonant_case", false, {}});
                if (k == 1 && f == 0)
                    checks.push_back({"window_signs_match_weights", false, {}});
                out.push_back({"fig" + std::to_string(9 + f) + letters[frame], "probe absorption spectrum",
                               base_config(absorption_sets[f][half][0], absorption_sets[f][half][1], k),
                               ManifestCommand::Absorption, checks});
            }
    return out;
}

}  // namespace

const std::vector<FigureManifest>& figure_manifests()
{
    static const std::vector<FigureManifest> all = build_manifests();
    return all;
}

const FigureManifest& find_manifest(const std::string& id)
{
    for (const auto& m : figure_manifests())
        if (m.id == id)
            return m;
    throw Error(ErrorKind::Config, "unknown figure id '" + id + "'");
}

const std::map<std::string, PropertyCheck>& property_checks()
{
    static const std::map<std::string, PropertyCheck> checks{
        {"steady_sanity", steady_sanity},
        {"no_failed_points", no_failed_points},
        {"ground_max_at_resonance", ground_max_at_resonance},
        {"ground_dip_at_resonance", ground_dip_at_resonance},
        {"ground_tends_to_half", ground_tends_to_half},
        {"population_inversion", population_inversion},
        {"no_population_inversion", no_population_inversion},
        {"excited_extrema_near_two_omega_r", excited_extrema_near_two_omega_r},
        {"rate_mirror_symmetry", rate_mirror_symmetry},
        {"rate_equal_at_resonance", rate_equal_at_resonance},
        {"accumulation_in_c_below", accumulation_in_c_below},
        {"middle_state_empty", middle_state_empty},
        {"middle_state_dominant_at_resonance", middle_state_dominant_at_resonance},
        {"upper_state_dominant_at_two_omega_r", upper_state_dominant_at_two_omega_r},
        {"rate_vs_exact_at_two_omega_r", rate_vs_exact_at_two_omega_r},
        {"symmetric_spectrum", symmetric_spectrum},
        {"asymmetric_spectrum", asymmetric_spectrum},
        {"sum_rule", sum_rule},
        {"inner_sidebands_hardly_visible", inner_sidebands_hardly_visible},
        {"lower_outer_sideband_enhanced", lower_outer_sideband_enhanced},
        {"lower_peaks_higher", lower_peaks_higher},
        {"higher_inner_sideband_enhanced", higher_inner_sideband_enhanced},
        {"lower_inner_sideband_enhanced", lower_inner_sideband_enhanced},
        {"outer_sidebands_invisible", outer_sidebands_invisible},
        {"outer_sidebands_weak", outer_sidebands_weak},
        {"dual_path", dual_path},
        {"secular_matches_exact_peaks", secular_matches_exact_peaks},
        {"gamma_3a_anchor_resonance",
         [](const ManifestContext& c) { return secular_anchor(c, "gamma_3a_anchor_resonance", true, 2.51); }},
        {"gamma_3a_anchor_one_omega_r",
         [](const ManifestContext& c) { return secular_anchor(c, "gamma_3a_anchor_one_omega_r", true, 1.33); }},
        {"gamma_3b_anchor_one_omega_r",
         [](const ManifestContext& c) { return secular_anchor(c, "gamma_3b_anchor_one_omega_r", false, 4.40); }},
        {"gamma_3a_anchor_two_omega_r",
         [](const ManifestContext& c) { return secular_anchor(c, "gamma_3a_anchor_two_omega_r", true, 0.93); }},
        {"gamma_3b_anchor_two_omega_r",
         [](const ManifestContext& c) { return secular_anchor(c, "gamma_3b_anchor_two_omega_r", false, 2.50); }},
        {"absorption_vanishes_at_resonance", absorption_vanishes_at_resonance},
        {"absorption_decays_far_out", absorption_decays_far_out},
        {"weights_antisymmetric", weights_antisymmetric},
        {"window_signs_match_weights", window_signs_match_weights},
        {"exceeds_resonant_case", exceeds_resonant_case},
    };
    return checks;
}

ManifestRun run_manifest(const FigureManifest& m, const std::filesystem::path& out_dir, unsigned threads, bool svg)
{
    RunConfig cfg = m.config;
    cfg.output = out_dir / m.id;
    cfg.threads = threads;

    ManifestRun run;
    switch (m.command) {
    case ManifestCommand::Populations: run.output = cmd_populations(cfg, svg); break;
    case ManifestCommand::Dressed: run.output = cmd_dressed(cfg, svg); break;
    case ManifestCommand::Fluorescence: run.output = cmd_spectrum(cfg, SpectrumCommandKind::Fluorescence, svg); break;
    case ManifestCommand::Absorption: run.output = cmd_absorption(cfg, svg); break;
    }

    const ManifestContext ctx{m, cfg, run.output};
    const auto& registry = property_checks();
    for (const auto& a : m.assertions) {
        const auto it = registry.find(a.check);
        if (it == registry.end())
            throw Error(ErrorKind::InvalidArgument, m.id + ": unknown property check " + a.check);
        CheckOutcome c;
        try {
            c = it->second(ctx);
        } catch (const Error& e) {
            c = outcome(a.check, NAN, "evaluable", false, e.what());
        }
        c.name = m.id + "." + a.check;
        c.known_discrepancy = a.known_discrepancy;
        if (!a.note.empty())
            c.detail = c.detail.empty() ? a.note : c.detail + "; " + a.note;
        if (!c.pass && !c.known_discrepancy)
            run.ok = false;
        run.checks.push_back(std::move(c));
    }
    return run;
}

}  // namespace vatom::cli
