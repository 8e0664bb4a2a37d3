#include <doctest.h>

#include "oracles.hpp"

#include <vatom/error.hpp>
#include <vatom/steady.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

using namespace vatom;

namespace {

SystemParams make(double omega21, double rabi, double delta = 0.0, double g = 20.0)
{
    SystemParams p;
    p.omega21 = omega21;
    p.rabi = rabi;
    p.delta = delta;
    p.g = g;
    return p;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("undriven atom relaxes to the ground state")
{
    const SteadyState ss = steady_state(build_reduced_liouvillian(make(10, 0)));
    AtomOperator ground = AtomOperator::Zero();
    ground(0, 0) = 1.0;
    CHECK(max_abs(ss.rho - ground) < 1e-12);
}

TEST_CASE("steady state agrees with a trace-row linear solve")
{
    for (const SystemParams& p : {make(10, 4, -20), make(200, 100, 90), make(200, 300, 0)}) {
        const ReducedLiouvillian l = build_reduced_liouvillian(p);
        const SteadyState ss = steady_state(l);
        CHECK(max_abs(ss.rho - oracle::steady_by_trace_row(l.matrix)) < 1e-10);
        CHECK(ss.residual < 1e-10);
    }
}

TEST_CASE("steady state invariants on the population figure grids")
{
    for (auto [w21, rabi] : {std::pair{10.0, 4.0}, {10.0, 100.0}, {200.0, 100.0}, {200.0, 300.0}}) {
        SystemParams p = make(w21, rabi);
        for (double delta : uniform_grid(-4, 4, 41)) {
            p.delta = delta * dressed_scalars(p).omega_r;
            const SteadyState ss = steady_state(build_reduced_liouvillian(p));
            const HermitianCheckReport h = hermitian_report(ss.rho);
            CHECK(std::abs(ss.rho.trace() - 1.0) < 1e-12);
            CHECK(h.max_asymmetry < 1e-12);
            CHECK(h.min_eigenvalue >= -1e-10);
            CHECK(ss.residual < 1e-10);
        }
    }
}

TEST_CASE("weak coupling approaches the free-space steady state")
{
    const SystemParams weak = make(10, 10, 5, 1e-3);
    SystemParams free = weak;
    free.g = 0.0;
    const AtomOperator ref = oracle::steady_by_trace_row(oracle::generator_by_probing(free, AtomOperator::Zero()));
    const AtomOperator rho = steady_state(build_reduced_liouvillian(weak)).rho;
    CHECK(max_abs(rho - ref) < 1e-6);
}

TEST_CASE("resonant driving at omega21 = 10: ground population peaks at zero detuning for weak drive")
{
    const SystemParams p = make(10, 4);
    const double wr = dressed_scalars(p).omega_r;
    const PopulationSweep s = sweep_populations(p, uniform_grid(-4 * wr, 4 * wr, 801));
    const auto it = std::max_element(s.rho00.begin(), s.rho00.end());
    CHECK(std::abs(s.grid[it - s.rho00.begin()]) < 0.05 * wr);
}

TEST_CASE("strong drive and large splitting: inversion and excited-state extrema")
{
    const SystemParams p = make(200, 100);
    const double wr = dressed_scalars(p).omega_r;
    const PopulationSweep s = sweep_populations(p, uniform_grid(-4 * wr, 4 * wr, 801));
    double best = -1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        best = std::max(best, s.rho22[i] - s.rho00[i]);
    CHECK(best > 0.0);
    // The other-side extremum of rho11 sits near one of the dressed resonances.
    const auto hi = std::max_element(s.rho11.begin(), s.rho11.end()) - s.rho11.begin();
    CHECK(std::abs(std::abs(s.grid[hi]) / wr - 2.0) < 0.3);
}

TEST_CASE("a single-point sweep reproduces the direct solve")
{
    const SystemParams p = make(200, 50, 33);
    const PopulationSweep s = sweep_populations(p, {33.0});
    const SteadyState ss = steady_state(build_reduced_liouvillian(p));
    REQUIRE(s.size() == 1);
    CHECK(s.rho00[0] == ss.rho(0, 0).real());
    CHECK(s.rho21[0] == ss.rho(2, 1));
}

TEST_CASE("sweeps are deterministic across thread counts")
{
    const SystemParams p = make(10, 100);
    const auto grid = uniform_grid(-500, 500, 97);
    const PopulationSweep a = sweep_populations(p, grid, SweepVariable::Delta, {}, 1);
    const PopulationSweep b = sweep_populations(p, grid, SweepVariable::Delta, {}, 4);
    CHECK(a.rho00 == b.rho00);
    CHECK(a.rho10 == b.rho10);
    CHECK(a.residual == b.residual);
}

TEST_CASE("failed sweep points are recorded, not fatal")
{
    // Omega = omega21 = 0 has no dressing at all.
    const PopulationSweep s = sweep_populations(make(0, 5), {0.0, 5.0}, SweepVariable::Rabi);
    REQUIRE(s.failures.size() == 1);
    CHECK(s.failures[0].index == 0);
    CHECK(std::isnan(s.rho00[0]));
    CHECK(std::isfinite(s.rho00[1]));
}

TEST_CASE("with_variable and grid helpers")
{
    const SystemParams p = with_variable(make(1, 2, 3), SweepVariable::Omega21, 9.0);
    CHECK(p.omega21 == 9.0);
    CHECK(parse_sweep_variable("rabi") == SweepVariable::Rabi);
    CHECK_THROWS_AS(parse_sweep_variable("kappa"), Error);
    CHECK(uniform_grid(2, 2, 1) == std::vector<double>{2.0});
    const auto g = uniform_grid(-1, 1, 5);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 1.0);
    CHECK(g[2] == 0.0);
    CHECK(default_detuning_grid(make(200, 200)).size() == 801);
}
