#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vatom::cli {

namespace {

std::string fmt(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

CheckOutcome check(std::string name, double measured, std::string bound, bool pass, std::string detail = {})
{
    return {std::move(name), measured, std::move(bound), pass, false, std::move(detail)};
}

SystemParams params(double omega21, double rabi, double delta_in_omega_r = 0.0, double g = 20.0)
{
    SystemParams p;
    p.omega21 = omega21;
    p.rabi = rabi;
    p.g = g;
    p.delta = delta_in_omega_r * dressed_scalars(p).omega_r;
    return p;
}

void omega_r_anchors(std::vector<CheckOutcome>& out)
{
    const double cases[][3] = {{10, 100, 141.5}, {200, 50, 122.5}, {200, 100, 173.2}, {200, 200, 300.0}};
    for (const auto& c : cases) {
        const double wr = dressed_scalars(params(c[0], c[1])).omega_r;
        out.push_back(check("omega_r_" + fmt(c[0]) + "_" + fmt(c[1]), wr, fmt(c[2]) + " +- 0.1",
                            std::abs(wr - c[2]) <= 0.1));
    }
}

void secular_anchor(std::vector<CheckOutcome>& out)
{
    const double v = secular_rates(params(200, 50)).gamma_3a;
    out.push_back(check("gamma_3a_anchor", v, "2.51 within 2%", std::abs(v / 2.51 - 1.0) <= 0.02));
}

void beta_oracle(std::vector<CheckOutcome>& out, BetaVariant variant)
{
    const double deltas[] = {-300, -120, 0, 80, 250};
    const double rabis[] = {4, 10, 50, 100, 200};
    const double splittings[] = {0, 10, 50, 100, 200};
    double worst = 0.0;
    for (double d : deltas)
        for (double r : rabis)
            for (double w : splittings) {
                SystemParams p;
                p.delta = d;
                p.rabi = r;
                p.omega21 = w;
                const AtomOperator closed = build_S_closed(beta_closed_form(p, variant));
                const AtomOperator oracle = build_S_oracle(p);
                worst = std::max(worst, (closed - oracle).cwiseAbs().maxCoeff());
            }
    out.push_back(check("beta_vs_quadrature_oracle", worst, "<= 1e-8", worst <= 1e-8,
                        "variant " + std::string(to_string(variant)) + ", 125 points"));

    // Flat cavity: every response factor tends to one and S must tend to D.
    SystemParams flat = params(200, 50);
    flat.kappa = 1e9;
    const BetaSet b = beta_closed_form(flat, variant);
    const double b6 = b.beta[6].real();
    const DressedScalars s = dressed_scalars(flat);
    out.push_back(check("beta_flat_limit", b6, "1 +- 1e-6", std::abs(b6 - 1.0) <= 1e-6,
                        "8 eta^2 + eps = " + fmt(8 * s.eta * s.eta + s.epsilon)));
}

void liouvillian_structure(std::vector<CheckOutcome>& out)
{
    double worst_trace = 0.0, worst_gap = -1e300;
    for (const auto& m : figure_manifests()) {
        if (m.command != ManifestCommand::Populations || m.id.find("caption") != std::string::npos)
            continue;
        for (double d : m.config.sweep_points()) {
            const SystemParams p = with_variable(m.config.params, SweepVariable::Delta, d);
            const auto l = build_reduced_liouvillian(p);
            worst_trace = std::max(worst_trace, trace_preservation_error(l.matrix));
            Eigen::ComplexEigenSolver<ComplexMatrix> es(l.matrix, false);
            std::vector<double> re;
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                re.push_back(es.eigenvalues()[i].real());
            std::sort(re.begin(), re.end(), std::greater<>());
            worst_gap = std::max(worst_gap, re[1]);
        }
    }
    out.push_back(check("trace_preservation", worst_trace, "<= 1e-12", worst_trace <= 1e-12));
    out.push_back(check("spectral_gap", worst_gap, "< -0.01", worst_gap < -0.01));
}

void manifest_checks(std::vector<CheckOutcome>& out, const std::string& figure_prefix, const std::string& check_name,
                     unsigned threads)
{
    const auto& registry = property_checks();
    for (const auto& m : figure_manifests()) {
        if (m.id.rfind(figure_prefix, 0) != 0 || m.id.find("caption") != std::string::npos)
            continue;
        RunConfig cfg = m.config;
        cfg.threads = threads;
        CommandOutput output;
        if (m.command == ManifestCommand::Fluorescence) {
            SpectrumOptions options;
            options.threads = threads;
            output.spectrum = fluorescence_qrt(cfg.params, cfg.spectrum_points(), options);
        }
        const ManifestContext ctx{m, cfg, output};
        CheckOutcome c = registry.at(check_name)(ctx);
        c.name = check_name + "_" + m.id;
        out.push_back(std::move(c));
    }
}

void dressed_agreement(std::vector<CheckOutcome>& out)
{
    const SystemParams p = params(200, 200, 2.0);
    const auto exact = dressed_populations_exact(steady_state(build_reduced_liouvillian(p)), dressed_basis(p));
    const auto rate = dressed_populations_rate_eq(transition_rates(p));
    const double dev = std::max({std::abs(exact.aa - rate.aa), std::abs(exact.bb - rate.bb), std::abs(exact.cc - rate.cc)});
    out.push_back(check("rate_vs_exact_dressed", dev, "<= 0.05", dev <= 0.05));

    SystemParams mid = params(10, 100);
    const auto sym = dressed_populations_rate_eq(transition_rates(mid));
    out.push_back(check("rate_symmetric_at_resonance", std::abs(sym.aa - sym.cc), "<= 1e-12",
                        std::abs(sym.aa - sym.cc) <= 1e-12));
}

void sum_rules(std::vector<CheckOutcome>& out, unsigned threads)
{
    for (const char* id : {"fig5a", "fig8a"}) {
        const FigureManifest& m = find_manifest(id);
        RunConfig cfg = m.config;
        cfg.threads = threads;
        CommandOutput empty;
        CheckOutcome c = property_checks().at("sum_rule")(ManifestContext{m, cfg, empty});
        c.name = std::string("sum_rule_") + id;
        out.push_back(std::move(c));
    }
}

void weights(std::vector<CheckOutcome>& out)
{
    double worst = 0.0;
    for (double w21 : {10.0, 200.0})
        for (double rabi : {50.0, 100.0, 200.0})
            for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                const LineWeights w = line_weights(params(w21, rabi, k));
                worst = std::max(worst, std::abs(w.w_plus2 + w.w_minus2));
            }
    out.push_back(check("weights_antisymmetric", worst, "<= 1e-15", worst <= 1e-15));
}

void full_model(std::vector<CheckOutcome>& out)
{
    const SystemParams p = params(10, 10, 0.0, 5.0);
    const AtomOperator reduced = steady_state(build_reduced_liouvillian(p)).rho;
    const AtomOperator n4 = atomic_marginal(steady_state_full(build_full_liouvillian(p, 4)).rho, 4);
    const AtomOperator n6 = atomic_marginal(steady_state_full(build_full_liouvillian(p, 6)).rho, 6);
    double conv = 0.0, dev = 0.0;
    for (int i = 0; i < 3; ++i) {
        conv = std::max(conv, std::abs(n4(i, i).real() - n6(i, i).real()));
        dev = std::max(dev, std::abs(n4(i, i).real() - reduced(i, i).real()));
    }
    out.push_back(check("full_model_cutoff_convergence", conv, "<= 1e-4", conv <= 1e-4));
    out.push_back(check("reduced_vs_full_model", dev, "<= 0.02", dev <= 0.02));
}

}  // namespace

ValidateLevel parse_validate_level(std::string_view text)
{
    if (text == "fast")
        return ValidateLevel::Fast;
    if (text == "full")
        return ValidateLevel::Full;
    throw Error(ErrorKind::Config, "unknown validation level '" + std::string(text) + "'");
}

std::vector<CheckOutcome> run_validation(ValidateLevel level, BetaVariant variant, unsigned threads)
{
    std::vector<CheckOutcome> out;
    omega_r_anchors(out);
    secular_anchor(out);
    beta_oracle(out, variant);
    liouvillian_structure(out);
    manifest_checks(out, "fig2", "steady_sanity", threads);
    dressed_agreement(out);
    manifest_checks(out, "fig5", "dual_path", threads);
    sum_rules(out, threads);
    weights(out);
    if (level == ValidateLevel::Full)
        full_model(out);
    return out;
}

}  // namespace vatom::cli
