#pragma once

// Library side of the command-line tool: configuration, output writers,
// subcommands, figure manifests and the validation runner.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <vatom/dressed.hpp>
#include <vatom/model.hpp>
#include <vatom/spectra.hpp>
#include <vatom/steady.hpp>

namespace vatom::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kSolverError = 3 };

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    std::vector<double> points() const { return uniform_grid(start, stop, count); }
};

struct SweepSpec {
    GridSpec grid;
    SweepVariable variable = SweepVariable::Delta;
};

struct RunConfig {
    SystemParams params;
    std::optional<SweepSpec> sweep;
    std::optional<GridSpec> spectrum;
    BetaVariant beta_variant = BetaVariant::Corrected;
    SecularVariant secular_variant = SecularVariant::Corrected;
    std::filesystem::path output = ".";
    unsigned threads = 0;

    ModelOptions model_options() const { return {beta_variant, SOperatorSource::ClosedForm}; }
    std::vector<double> sweep_points() const;
    SweepVariable sweep_variable() const { return sweep ? sweep->variable : SweepVariable::Delta; }
    std::vector<double> spectrum_points() const;
};

/// Collects key=value settings and resolves them into a RunConfig. Values of
/// delta and of grid bounds may be written as multiples of the generalised
/// Rabi frequency, e.g. "2*omega_r" or "-omega_r", which are resolved after
/// all physical parameters are known. Later settings override earlier ones.
class ConfigBuilder {
public:
    ConfigBuilder() = default;
    explicit ConfigBuilder(const RunConfig& base);

    /// Parses a flat file: one key=value per line, '#' starts a comment.
    void load_file(const std::filesystem::path& path);
    void load_text(const std::string& text, const std::string& origin = "<text>");
    /// Accepts "key=value".
    void set(const std::string& assignment);
    void set(const std::string& key, const std::string& value);

    /// Throws Error(Config) on unknown keys, malformed numbers or bad grids.
    RunConfig resolve() const;

    static const std::vector<std::string>& known_keys();

private:
    RunConfig base_;
    std::map<std::string, std::string> values_;
};

/// Parses "x", "x*omega_r", "omega_r" or "-omega_r".
double parse_scaled(const std::string& text, double omega_r);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Header row, %.17g values, LF endings; written to a temporary file in the
/// same directory and renamed into place.
void write_csv(const std::filesystem::path& path, const Table& table);
std::string format_csv(const Table& table);
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

/// Minimal line plot; a quick look only.
std::string render_svg(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                       const std::vector<PlotSeries>& series);

/// Result of one subcommand. `table` is what went into the CSV.
struct CommandOutput {
    Table table;
    std::filesystem::path csv_path;
    std::size_t failed_points = 0;
    std::size_t total_points = 0;
    std::vector<std::string> notes;
    /// Populated for sweep-type commands so manifests can inspect them.
    std::optional<PopulationSweep> sweep;
    std::optional<SpectrumSeries> spectrum;
    std::optional<SecularComponents> secular;

    /// kSolverError when more than 1% of points failed.
    ExitCode status() const;
};

enum class SpectrumCommandKind { Fluorescence, FluorescenceSecular };
SpectrumCommandKind parse_spectrum_kind(std::string_view text);

CommandOutput cmd_populations(const RunConfig& cfg, bool svg = false);
CommandOutput cmd_dressed(const RunConfig& cfg, bool svg = false);
CommandOutput cmd_rates(const RunConfig& cfg, bool svg = false);
CommandOutput cmd_spectrum(const RunConfig& cfg, SpectrumCommandKind kind, bool svg = false);
CommandOutput cmd_absorption(const RunConfig& cfg, bool svg = false);

/// One line of a validation or manifest report.
struct CheckOutcome {
    std::string name;
    double measured = 0.0;
    std::string bound;
    bool pass = false;
    bool known_discrepancy = false;
    std::string detail;
};

/// "name,measured,bound,status" with status PASS, FAIL or KNOWN.
std::string format_check(const CheckOutcome& c);

enum class ManifestCommand { Populations, Dressed, Fluorescence, Absorption };

struct ManifestAssertion {
    std::string check;  ///< key into the property-check registry
    bool known_discrepancy = false;
    std::string note;
};

struct FigureManifest {
    std::string id;
    std::string title;
    RunConfig config;
    ManifestCommand command = ManifestCommand::Populations;
    std::vector<ManifestAssertion> assertions;
};

const std::vector<FigureManifest>& figure_manifests();
const FigureManifest& find_manifest(const std::string& id);

/// Everything a property check may look at.
struct ManifestContext {
    const FigureManifest& manifest;
    const RunConfig& config;
    const CommandOutput& output;
};

using PropertyCheck = std::function<CheckOutcome(const ManifestContext&)>;
const std::map<std::string, PropertyCheck>& property_checks();

struct ManifestRun {
    CommandOutput output;
    std::vector<CheckOutcome> checks;
    /// True when every assertion not marked known-discrepancy passed.
    bool ok = true;
};

/// Runs the bound command (writing its CSV under `out_dir`) and evaluates
/// the manifest's assertions.
ManifestRun run_manifest(const FigureManifest& m, const std::filesystem::path& out_dir, unsigned threads,
                         bool svg = false);

enum class ValidateLevel { Fast, Full };
ValidateLevel parse_validate_level(std::string_view text);

/// Oracle suite. Fast skips the atom+cavity model. `variant` selects the beta
/// table under test.
std::vector<CheckOutcome> run_validation(ValidateLevel level, BetaVariant variant, unsigned threads);

}  // namespace vatom::cli
