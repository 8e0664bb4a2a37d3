#include <vatom/error.hpp>
#include <vatom/parallel.hpp>
#include <vatom/steady.hpp>
#include <vatom/superop.hpp>

#include <cmath>
#include <limits>

namespace vatom {

SteadyState steady_state(const ReducedLiouvillian& l)
{
    const ComplexVector k = null_space_1d(l.matrix);
    AtomOperator rho = superop::unvec(k, 3);
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-300)
        throw Error(ErrorKind::NonPositive, "steady_state: kernel vector is traceless");
    rho /= tr;

    SteadyState ss;
    ss.rho = rho;
    ss.residual = (l.matrix * superop::vec(rho)).norm();
    ss.params = l.params;
    const auto report = hermitian_report(rho);
    if (report.min_eigenvalue < -1e-8)
        throw Error(ErrorKind::NonPositive,
                    "steady_state: density matrix eigenvalue " + std::to_string(report.min_eigenvalue));
    return ss;
}

FullSteadyState steady_state_full(const FullLiouvillian& l)
{
    const Eigen::Index n = l.hilbert_dim();
    const ComplexVector k = null_space_1d(l.matrix);
    ComplexMatrix rho = superop::unvec(k, n);
    rho /= rho.trace();
    FullSteadyState out;
    out.residual = (l.matrix * superop::vec(rho)).norm();
    out.rho = std::move(rho);
    out.n_max = l.n_max;
    return out;
}

std::string_view to_string(SweepVariable v) noexcept
{
    switch (v) {
    case SweepVariable::Delta: return "delta";
    case SweepVariable::Rabi: return "rabi";
    case SweepVariable::Omega21: return "omega21";
    }
    return "delta";
}

SweepVariable parse_sweep_variable(std::string_view text)
{
    if (text == "delta")
        return SweepVariable::Delta;
    if (text == "rabi")
        return SweepVariable::Rabi;
    if (text == "omega21")
        return SweepVariable::Omega21;
    throw Error(ErrorKind::Config, "unknown sweep variable '" + std::string(text) + "'");
}

SystemParams with_variable(SystemParams p, SweepVariable v, double value)
{
    switch (v) {
    case SweepVariable::Delta: p.delta = value; break;
    case SweepVariable::Rabi: p.rabi = value; break;
    case SweepVariable::Omega21: p.omega21 = value; break;
    }
    return p;
}

std::vector<double> uniform_grid(double start, double stop, std::size_t count)
{
    if (count == 0)
        throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
    if (count == 1)
        return {start};
    if (!(start < stop))
        throw Error(ErrorKind::InvalidArgument, "grid requires start < stop");
    std::vector<double> g(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = start + step * static_cast<double>(i);
    g.back() = stop;
    return g;
}

std::vector<double> default_detuning_grid(const SystemParams& p)
{
    const double wr = dressed_scalars(p).omega_r;
    return uniform_grid(-4.0 * wr, 4.0 * wr, 801);
}

PopulationSweep sweep_populations(const SystemParams& p, const std::vector<double>& grid,
                                  SweepVariable variable, const ModelOptions& options, unsigned threads)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw Error(ErrorKind::InvalidArgument, "sweep grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw Error(ErrorKind::InvalidArgument, "sweep grid must be strictly increasing");
    }

    struct Point {
        bool ok = false;
        SteadyState ss;
        std::string message;
    };
    auto points = parallel_map<Point>(grid.size(), threads, [&](std::size_t i) {
        Point pt;
        try {
            pt.ss = steady_state(build_reduced_liouvillian(with_variable(p, variable, grid[i]), options));
            pt.ok = true;
        } catch (const Error& e) {
            pt.message = e.what();
        }
        return pt;
    });

    PopulationSweep out;
    out.variable = variable;
    out.grid = grid;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const cplx cnan(nan, nan);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        if (!pt.ok) {
            out.failures.push_back({i, grid[i], pt.message});
            out.rho00.push_back(nan);
            out.rho11.push_back(nan);
            out.rho22.push_back(nan);
            out.rho10.push_back(cnan);
            out.rho20.push_back(cnan);
            out.rho21.push_back(cnan);
            out.residual.push_back(nan);
            continue;
        }
        const AtomOperator& r = pt.ss.rho;
        out.rho00.push_back(r(0, 0).real());
        out.rho11.push_back(r(1, 1).real());
        out.rho22.push_back(r(2, 2).real());
        out.rho10.push_back(r(1, 0));
        out.rho20.push_back(r(2, 0));
        out.rho21.push_back(r(2, 1));
        out.residual.push_back(pt.ss.residual);
    }
    return out;
}

}  // namespace vatom
