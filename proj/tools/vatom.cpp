// Command-line front end: vatom <subcommand> [options]

#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace vatom;
using namespace vatom::cli;

struct Globals {
    std::string config_path;
    std::vector<std::string> settings;
    std::string out_dir;
    std::string beta_variant;
    unsigned threads = 0;
    bool svg = false;
};

RunConfig load(const Globals& g)
{
    ConfigBuilder builder;
    if (!g.config_path.empty())
        builder.load_file(g.config_path);
    for (const auto& s : g.settings)
        builder.set(s);
    if (!g.beta_variant.empty())
        builder.set("beta_variant", g.beta_variant);
    if (!g.out_dir.empty())
        builder.set("output", g.out_dir);
    RunConfig cfg = builder.resolve();
    cfg.threads = g.threads;
    return cfg;
}

int report(const CommandOutput& out)
{
    std::cout << out.csv_path.string() << "\n";
    for (const auto& n : out.notes)
        std::cerr << "note: " << n << "\n";
    if (out.status() == kSolverError)
        std::cerr << "error: " << out.failed_points << " of " << out.total_points << " points failed\n";
    return out.status();
}

int print_checks(const std::vector<CheckOutcome>& checks)
{
    bool ok = true;
    std::cout << "check,measured,bound,status\n";
    for (const auto& c : checks) {
        std::cout << format_check(c) << "\n";
        if (!c.detail.empty())
            std::cerr << "  " << c.name << ": " << c.detail << "\n";
        ok = ok && (c.pass || c.known_discrepancy);
    }
    return ok ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"V-type three-level atom in a bad cavity: populations, dressed states, spectra"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "flat key=value configuration file");
    app.add_option("--set", g.settings, "override a configuration key (key=value), repeatable");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--beta-variant", g.beta_variant, "corrected | paper-exact");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_flag("--svg", g.svg, "also write an SVG quick-look plot");

    auto* populations = app.add_subcommand("populations", "bare-state steady populations over a sweep");
    auto* dressed = app.add_subcommand("dressed", "dressed-state populations, exact and rate-equation");
    auto* rates = app.add_subcommand("rates", "dressed-state transition and secular decay rates");
    auto* spectrum = app.add_subcommand("spectrum", "fluorescence spectrum");
    std::string kind = "fluorescence";
    spectrum->add_option("--kind", kind, "fluorescence | fluorescence-secular");
    auto* absorption = app.add_subcommand("absorption", "probe absorption spectrum");
    auto* validate = app.add_subcommand("validate", "run the oracle suite");
    std::string level = "fast";
    validate->add_option("--level", level, "fast | full");
    auto* manifest = app.add_subcommand("manifest", "reproduce one figure frame and check its assertions");
    std::string figure;
    bool list = false;
    manifest->add_option("figure", figure, "figure id, e.g. fig5a, or 'all'");
    manifest->add_flag("--list", list, "list figure ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const RunConfig cfg = load(g);
            return print_checks(run_validation(parse_validate_level(level), cfg.beta_variant, cfg.threads));
        }
        if (manifest->parsed()) {
            if (list) {
                for (const auto& m : figure_manifests())
                    std::cout << m.id << "  " << m.title << "\n";
                return kOk;
            }
            if (figure.empty())
                throw Error(ErrorKind::Config, "manifest needs a figure id (or --list)");
            if (figure != "all")
                find_manifest(figure);
            const RunConfig cfg = load(g);
            std::vector<CheckOutcome> checks;
            int status = kOk;
            for (const auto& m : figure_manifests()) {
                if (figure != "all" && m.id != figure)
                    continue;
                ManifestRun run = run_manifest(m, cfg.output, cfg.threads, g.svg);
                std::cerr << m.id << ": " << run.output.csv_path.string() << "\n";
                if (run.output.status() != kOk)
                    status = kSolverError;
                checks.insert(checks.end(), run.checks.begin(), run.checks.end());
            }
            const int check_status = print_checks(checks);
            return status != kOk ? status : check_status;
        }

        const RunConfig cfg = load(g);
        if (populations->parsed())
            return report(cmd_populations(cfg, g.svg));
        if (dressed->parsed())
            return report(cmd_dressed(cfg, g.svg));
        if (rates->parsed())
            return report(cmd_rates(cfg, g.svg));
        if (spectrum->parsed())
            return report(cmd_spectrum(cfg, parse_spectrum_kind(kind), g.svg));
        if (absorption->parsed())
            return report(cmd_absorption(cfg, g.svg));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Config ? kConfigError : kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSolverError;
    }
    return kOk;
}
