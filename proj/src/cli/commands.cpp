#include <vatom/cli.hpp>
#include <vatom/error.hpp>
#include <vatom/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace vatom::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void emit(CommandOutput& out, const RunConfig& cfg, const std::string& stem, bool svg, const std::string& title,
          const std::vector<std::string>& plotted)
{
    out.csv_path = cfg.output / (stem + ".csv");
    write_csv(out.csv_path, out.table);
    if (!svg)
        return;
    std::vector<double> x;
    std::vector<PlotSeries> series(plotted.size());
    for (std::size_t k = 0; k < plotted.size(); ++k)
        series[k].label = plotted[k];
    const auto& h = out.table.header;
    for (const auto& row : out.table.rows) {
        x.push_back(row[0]);
        for (std::size_t k = 0; k < plotted.size(); ++k) {
            const auto col = std::find(h.begin(), h.end(), plotted[k]) - h.begin();
            series[k].y.push_back(row[static_cast<std::size_t>(col)]);
        }
    }
    write_text_atomic(cfg.output / (stem + ".svg"), render_svg(title, h.front(), x, series));
}

}  // namespace

ExitCode CommandOutput::status() const
{
    if (total_points > 0 && static_cast<double>(failed_points) > 0.01 * static_cast<double>(total_points))
        return kSolverError;
    return kOk;
}

SpectrumCommandKind parse_spectrum_kind(std::string_view text)
{
    if (text == "fluorescence")
        return SpectrumCommandKind::Fluorescence;
    if (text == "fluorescence-secular")
        return SpectrumCommandKind::FluorescenceSecular;
    throw Error(ErrorKind::Config, "unknown spectrum kind '" + std::string(text) + "'");
}

CommandOutput cmd_populations(const RunConfig& cfg, bool svg)
{
    const auto grid = cfg.sweep_points();
    PopulationSweep sweep = sweep_populations(cfg.params, grid, cfg.sweep_variable(), cfg.model_options(), cfg.threads);

    CommandOutput out;
    out.table.header = {std::string(to_string(sweep.variable)), "rho00", "rho11", "rho22", "re_rho10", "im_rho10",
                        "re_rho20", "im_rho20", "re_rho21", "im_rho21", "residual"};
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        out.table.rows.push_back({sweep.grid[i], sweep.rho00[i], sweep.rho11[i], sweep.rho22[i], sweep.rho10[i].real(),
                                  sweep.rho10[i].imag(), sweep.rho20[i].real(), sweep.rho20[i].imag(),
                                  sweep.rho21[i].real(), sweep.rho21[i].imag(), sweep.residual[i]});
    }
    out.total_points = sweep.size();
    out.failed_points = sweep.failures.size();
    for (const auto& f : sweep.failures)
        out.notes.push_back("point " + std::to_string(f.index) + " failed: " + f.message);
    out.sweep = std::move(sweep);
    emit(out, cfg, "populations", svg, "bare populations", {"rho00", "rho11", "rho22"});
    return out;
}

CommandOutput cmd_dressed(const RunConfig& cfg, bool svg)
{
    const auto grid = cfg.sweep_points();
    const SweepVariable var = cfg.sweep_variable();
    const ModelOptions model = cfg.model_options();

    struct Row {
        std::vector<double> values;
        bool ok = false;
        std::string message;
    };
    auto rows = parallel_map<Row>(grid.size(), cfg.threads, [&](std::size_t i) {
        Row row;
        const SystemParams p = with_variable(cfg.params, var, grid[i]);
        try {
            const SteadyState ss = steady_state(build_reduced_liouvillian(p, model));
            const DressedPopulations exact = dressed_populations_exact(ss, dressed_basis(p));
            const TransitionRates r = transition_rates(p);
            const DressedPopulations rate = dressed_populations_rate_eq(r);
            row.values = {grid[i], exact.aa, exact.bb, exact.cc, rate.aa, rate.bb, rate.cc,
                          r.ab,    r.ba,     r.ac,     r.ca,     r.bc,    r.cb};
            row.ok = true;
        } catch (const Error& e) {
            row.values.assign(13, kNaN);
            row.values[0] = grid[i];
            row.message = e.what();
        }
        return row;
    });

    CommandOutput out;
    out.table.header = {std::string(to_string(var)), "p_aa", "p_bb", "p_cc", "p_aa_rate", "p_bb_rate", "p_cc_rate",
                        "R_ab", "R_ba", "R_ac", "R_ca", "R_bc", "R_cb"};
    out.total_points = grid.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.table.rows.push_back(std::move(rows[i].values));
        if (!rows[i].ok) {
            ++out.failed_points;
            out.notes.push_back("point " + std::to_string(i) + " failed: " + rows[i].message);
        }
    }
    emit(out, cfg, "dressed", svg, "dressed-state populations", {"p_aa", "p_bb", "p_cc"});
    return out;
}

CommandOutput cmd_rates(const RunConfig& cfg, bool svg)
{
    const auto grid = cfg.sweep_points();
    const SweepVariable var = cfg.sweep_variable();
    CommandOutput out;
    out.table.header = {std::string(to_string(var)), "R_ab", "R_ba", "R_ac", "R_ca", "R_bc", "R_cb",
                        "Gamma_1a", "Gamma_1b", "Gamma_2a", "Gamma_2b", "Gamma_3a", "Gamma_3b", "Gamma_4",
                        "Gamma_5", "Omega_3", "Omega_4", "Omega_5", "advisory"};
    out.total_points = grid.size();
    bool advisory = false;
    for (double v : grid) {
        const SystemParams p = with_variable(cfg.params, var, v);
        try {
            const TransitionRates r = transition_rates(p);
            const SecularRates s = secular_rates(p, cfg.secular_variant);
            advisory = advisory || r.advisory;
            out.table.rows.push_back({v, r.ab, r.ba, r.ac, r.ca, r.bc, r.cb, s.gamma_1a, s.gamma_1b, s.gamma_2a,
                                      s.gamma_2b, s.gamma_3a, s.gamma_3b, s.gamma_4, s.gamma_5, s.omega_3,
                                      s.omega_4, s.omega_5, r.advisory ? 1.0 : 0.0});
        } catch (const Error& e) {
            std::vector<double> row(out.table.header.size(), kNaN);
            row[0] = v;
            out.table.rows.push_back(std::move(row));
            ++out.failed_points;
            out.notes.push_back(e.what());
        }
    }
    if (advisory)
        out.notes.push_back("secular approximation questionable (Omega_R < 10 max(gamma, gamma_c)) at some points");
    emit(out, cfg, "rates", svg, "dressed-state transition rates", {"R_ab", "R_ac", "R_ca", "R_cb"});
    return out;
}

CommandOutput cmd_spectrum(const RunConfig& cfg, SpectrumCommandKind kind, bool svg)
{
    const auto grid = cfg.spectrum_points();
    CommandOutput out;
    out.total_points = grid.size();
    if (kind == SpectrumCommandKind::Fluorescence) {
        SpectrumOptions options;
        options.model = cfg.model_options();
        options.threads = cfg.threads;
        SpectrumSeries s = fluorescence_qrt(cfg.params, grid, options);
        out.table.header = {"freq", "value"};
        for (std::size_t i = 0; i < s.size(); ++i)
            out.table.rows.push_back({s.freqs[i], s.values[i]});
        if (s.min_relative < -1e-8)
            out.notes.push_back("spectrum dips to " + std::to_string(s.min_relative) + " of its maximum");
        out.spectrum = std::move(s);
        emit(out, cfg, "fluorescence", svg, "fluorescence spectrum", {"value"});
        return out;
    }

    SecularComponents c = fluorescence_secular(cfg.params, grid, cfg.secular_variant);
    out.table.header = {"freq", "value", "central", "inner_low", "inner_high", "outer_low", "outer_high"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        out.table.rows.push_back({grid[i], c.total.values[i], c.central.values[i], c.inner_low.values[i],
                                  c.inner_high.values[i], c.outer_low.values[i], c.outer_high.values[i]});
    if (c.advisory)
        out.notes.push_back("secular approximation questionable (Omega_R < 10 max(gamma, gamma_c))");
    out.spectrum = c.total;
    out.secular = std::move(c);
    emit(out, cfg, "fluorescence-secular", svg, "secular fluorescence spectrum",
         {"value", "central", "inner_low", "inner_high", "outer_low", "outer_high"});
    return out;
}

CommandOutput cmd_absorption(const RunConfig& cfg, bool svg)
{
    const auto grid = cfg.spectrum_points();
    AbsorptionOptions options;
    options.model = cfg.model_options();
    options.threads = cfg.threads;
    SpectrumSeries s = absorption_spectrum(cfg.params, grid, options);
    CommandOutput out;
    out.total_points = grid.size();
    out.table.header = {"freq", "value"};
    for (std::size_t i = 0; i < s.size(); ++i)
        out.table.rows.push_back({s.freqs[i], s.values[i]});
    out.spectrum = std::move(s);
    emit(out, cfg, "absorption", svg, "probe absorption spectrum", {"value"});
    return out;
}

std::string format_check(const CheckOutcome& c)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", c.measured);
    const char* status = c.pass ? "PASS" : (c.known_discrepancy ? "KNOWN" : "FAIL");
    return c.name + "," + buf + "," + c.bound + "," + status;
}

}  // namespace vatom::cli
