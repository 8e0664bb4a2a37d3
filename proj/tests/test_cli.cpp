#include <doctest.h>

#include <vatom/cli.hpp>
#include <vatom/error.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace vatom;
using namespace vatom::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("vatom-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no vatom::Error thrown");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("config text with comments, overrides and omega_r multiples")
{
    ConfigBuilder b;
    b.load_text("# demo\nomega21 = 200\nrabi=100  # strong\n\ndelta = -omega_r\n"
                "sweep.start = -4*omega_r\nsweep.stop = 4*omega_r\nsweep.count = 11\n");
    b.set("kappa=50");
    const RunConfig c = b.resolve();
    const double wr = dressed_scalars(c.params).omega_r;
    CHECK(c.params.kappa == 50.0);
    CHECK(c.params.delta == doctest::Approx(-wr));
    const auto pts = c.sweep_points();
    REQUIRE(pts.size() == 11);
    CHECK(pts.front() == doctest::Approx(-4 * wr));
    CHECK(c.sweep_variable() == SweepVariable::Delta);
}

TEST_CASE("config errors are reported as configuration errors")
{
    const auto bad = [](const std::string& text) {
        return kind_of([&] {
            ConfigBuilder b;
            b.load_text(text);
            b.resolve();
        });
    };
    CHECK(bad("kappa_typo = 3") == ErrorKind::Config);
    CHECK(bad("gamma = fast") == ErrorKind::Config);
    CHECK(bad("sweep.count = 0") == ErrorKind::Config);
    CHECK(bad("sweep.count = 2000000") == ErrorKind::Config);
    CHECK(bad("no equals sign") == ErrorKind::Config);
    CHECK(bad("kappa = -1") == ErrorKind::Config);
    CHECK(bad("beta_variant = maybe") == ErrorKind::Config);
    CHECK(kind_of([] { ConfigBuilder().load_file("/nonexistent/vatom.cfg"); }) == ErrorKind::Config);
}

TEST_CASE("parse_scaled")
{
    CHECK(parse_scaled("2.5", 100) == 2.5);
    CHECK(parse_scaled("2*omega_r", 100) == 200.0);
    CHECK(parse_scaled("-omega_r", 100) == -100.0);
    CHECK(parse_scaled("omega_r", 7) == 7.0);
}

TEST_CASE("csv format: header, full precision, LF endings")
{
    Table t;
    t.header = {"x", "y"};
    t.rows = {{0.1, 1.0 / 3.0}, {-2.0, 1e-300}};
    const std::string s = format_csv(t);
    CHECK(s == "x,y\n0.10000000000000001,0.33333333333333331\n-2,1e-300\n");
    CHECK(s.find('\r') == std::string::npos);

    const fs::path dir = scratch("csv");
    write_csv(dir / "t.csv", t);
    CHECK(slurp(dir / "t.csv") == s);
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 1);
}

TEST_CASE("populations command: full sweep, deterministic bytes")
{
    RunConfig cfg = find_manifest("fig2c").config;
    cfg.output = scratch("pop-a");
    cfg.threads = 1;
    const CommandOutput a = cmd_populations(cfg);
    CHECK(a.status() == kOk);
    CHECK(a.table.rows.size() == 801);
    CHECK(a.table.header.front() == "delta");
    // Far from resonance the drive saturates the ground and one excited state.
    CHECK(a.table.rows.front()[1] == doctest::Approx(0.5).epsilon(0.1));

    cfg.output = scratch("pop-b");
    cfg.threads = 4;
    const CommandOutput b = cmd_populations(cfg);
    CHECK(slurp(a.csv_path) == slurp(b.csv_path));
}

TEST_CASE("single-point sweeps are allowed")
{
    ConfigBuilder builder;
    builder.load_text("omega21=10\nrabi=100\nsweep.start=0\nsweep.stop=0\nsweep.count=1\n");
    RunConfig cfg = builder.resolve();
    cfg.output = scratch("single");
    const CommandOutput out = cmd_populations(cfg);
    CHECK(out.table.rows.size() == 1);
}

TEST_CASE("dressed and rates commands")
{
    RunConfig cfg = find_manifest("fig4c").config;
    cfg.output = scratch("dressed");
    const CommandOutput d = cmd_dressed(cfg, true);
    CHECK(d.status() == kOk);
    CHECK(fs::exists(cfg.output / "dressed.svg"));
    // Mirror symmetry of the rate-equation populations across resonance.
    const auto& rows = d.table.rows;
    for (std::size_t i = 0; i < rows.size(); i += 50)
        CHECK(rows[i][4] == doctest::Approx(rows[rows.size() - 1 - i][6]).epsilon(1e-9));

    const CommandOutput r = cmd_rates(cfg);
    CHECK(r.table.header.size() == 19);
    CHECK(r.table.rows.size() == rows.size());
}

TEST_CASE("spectrum commands write their components")
{
    RunConfig cfg = find_manifest("fig5a").config;
    cfg.output = scratch("spectrum");
    cfg.spectrum = GridSpec{-300, 300, 121};
    const CommandOutput q = cmd_spectrum(cfg, SpectrumCommandKind::Fluorescence);
    CHECK(q.csv_path.filename() == "fluorescence.csv");
    const CommandOutput s = cmd_spectrum(cfg, parse_spectrum_kind("fluorescence-secular"));
    CHECK(s.table.header.size() == 7);
    CHECK(s.secular.has_value());
    const CommandOutput a = cmd_absorption(cfg);
    CHECK(a.table.rows.size() == 121);
    CHECK_THROWS_AS(parse_spectrum_kind("raman"), Error);
}

TEST_CASE("failure accounting maps onto the exit code")
{
    CommandOutput out;
    out.total_points = 200;
    out.failed_points = 2;
    CHECK(out.status() == kOk);
    out.failed_points = 3;
    CHECK(out.status() == kSolverError);
}

TEST_CASE("manifests cover every frame and reference known checks")
{
    std::set<std::string> ids;
    for (const auto& m : figure_manifests()) {
        ids.insert(m.id);
        for (const auto& a : m.assertions)
            CHECK_MESSAGE(property_checks().count(a.check) == 1, m.id << ": " << a.check);
    }
    for (int fig : {2, 4, 9, 10})
        for (char c : std::string("abcdef"))
            CHECK(ids.count("fig" + std::to_string(fig) + c) == 1);
    for (int fig : {5, 6, 7, 8})
        for (char c : std::string("abcd"))
            CHECK(ids.count("fig" + std::to_string(fig) + c) == 1);
    CHECK_THROWS_AS(find_manifest("fig3z"), Error);
}

TEST_CASE("manifest run: checks pass and output lands under the figure id")
{
    const fs::path dir = scratch("manifest");
    const ManifestRun run = run_manifest(find_manifest("fig6a"), dir, 0, false);
    CHECK(fs::exists(dir / "fig6a" / "fluorescence.csv"));
    for (const auto& c : run.checks)
        CHECK_MESSAGE((c.pass || c.known_discrepancy), format_check(c));
}

TEST_CASE("check formatting")
{
    CheckOutcome c{"x", 0.5, "<= 1", true, false, {}};
    CHECK(format_check(c) == "x,0.5,<= 1,PASS");
    c.pass = false;
    CHECK(format_check(c) == "x,0.5,<= 1,FAIL");
    c.known_discrepancy = true;
    CHECK(format_check(c) == "x,0.5,<= 1,KNOWN");
}

TEST_CASE("validation with the printed beta table fails the flat-cavity check")
{
    const auto checks = run_validation(ValidateLevel::Fast, BetaVariant::PaperExact, 0);
    for (const auto& c : checks) {
        if (c.name == "beta_flat_limit") {
            SystemParams flat;
            flat.omega21 = 200;
            flat.rabi = 50;
            const DressedScalars s = dressed_scalars(flat);
            CHECK_FALSE(c.pass);
            CHECK(c.measured == doctest::Approx(8 * s.eta * s.eta + s.epsilon).epsilon(1e-6));
        }
    }
}

TEST_CASE("svg quick look")
{
    const std::string svg = render_svg("t", "x", {0, 1, 2}, {{"y", {1, 3, 2}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
}
