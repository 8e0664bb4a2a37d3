// Time-domain route to the fluorescence spectrum. Kept free of any resolvent
// solve so that it can serve as an independent check of fluorescence_qrt.

#include <vatom/error.hpp>
#include <vatom/parallel.hpp>
#include <vatom/spectra.hpp>
#include <vatom/superop.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace vatom {

namespace {

struct Propagation {
    ComplexMatrix generator;
    ComplexVector f, g;  // stationary-subtracted F(0), G(0)
};

Propagation prepare(const SystemParams& p, const ModelOptions& options)
{
    const ReducedLiouvillian l = build_reduced_liouvillian(p, options);
    const SteadyState ss = steady_state(l);
    AtomOperator a01 = AtomOperator::Zero(), a02 = AtomOperator::Zero();
    a01(0, 1) = 1.0;
    a02(0, 2) = 1.0;
    const AtomOperator f = a01 * ss.rho;
    const AtomOperator g = a02 * ss.rho;
    return {l.matrix, superop::vec(f - f.trace() * ss.rho), superop::vec(g - g.trace() * ss.rho)};
}

// Correlation read-out: element (0,1) of the F branch plus (0,2) of the G branch.
cplx readout(const ComplexVector& f, const ComplexVector& g)
{
    return f[1] + g[2];
}

}  // namespace

std::vector<cplx> correlation_oracle(const SystemParams& p, const std::vector<double>& tau_grid,
                                     const ModelOptions& options)
{
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        const double t = tau_grid[i];
        if (!(t >= 0.0 && t <= 40.0))
            throw Error(ErrorKind::InvalidArgument, "correlation_oracle: tau outside [0, 40]");
        if (i > 0 && t < tau_grid[i - 1])
            throw Error(ErrorKind::InvalidArgument, "correlation_oracle: tau grid must be non-decreasing");
    }
    const Propagation prop = prepare(p, options);

    std::vector<cplx> out;
    out.reserve(tau_grid.size());
    ComplexVector f = prop.f, g = prop.g;
    double now = 0.0, cached_step = -1.0;
    ComplexMatrix step_map;
    for (double t : tau_grid) {
        const double dt = t - now;
        if (dt > 0.0) {
            if (std::abs(dt - cached_step) > 1e-14 * std::max(1.0, dt)) {
                step_map = expm(prop.generator * dt);
                cached_step = dt;
            }
            f = step_map * f;
            g = step_map * g;
            now = t;
        }
        out.push_back(readout(f, g));
    }
    return out;
}

FourierOracleResult fluorescence_fourier_oracle(const SystemParams& p, const std::vector<double>& grid,
                                                const FourierOracleOptions& options)
{
    if (grid.empty())
        throw Error(ErrorKind::InvalidArgument, "fluorescence_fourier_oracle: empty grid");
    if (!(options.tau_max > 0.0 && options.tau_max <= 40.0) || !(options.max_phase_step > 0.0))
        throw Error(ErrorKind::InvalidArgument, "fluorescence_fourier_oracle: bad options");

    const Propagation prop = prepare(p, options.model);
    const double wr = dressed_scalars(p).omega_r;
    double w_abs = 0.0;
    for (double w : grid)
        w_abs = std::max(w_abs, std::abs(w));
    // The correlation oscillates at up to about 2 Omega_R; add margin for shifts.
    const double top = w_abs + 2.5 * wr + 1.0;
    const auto steps = static_cast<std::size_t>(std::ceil(options.tau_max * top / options.max_phase_step));
    const double h = options.tau_max / static_cast<double>(steps);

    std::vector<cplx> c(steps + 1);
    {
        const ComplexMatrix step_map = expm(prop.generator * h);
        ComplexVector f = prop.f, g = prop.g;
        c[0] = readout(f, g);
        for (std::size_t k = 1; k <= steps; ++k) {
            f = step_map * f;
            g = step_map * g;
            c[k] = readout(f, g);
        }
    }

    // Exact derivatives C^(m)(0) = read-out of L^m applied to the initial data.
    std::array<cplx, 4> d{};
    {
        ComplexVector f = prop.f, g = prop.g;
        d[0] = readout(f, g);
        for (int m = 1; m < 4; ++m) {
            f = prop.generator * f;
            g = prop.generator * g;
            d[m] = readout(f, g);
        }
    }

    const cplx i1(0.0, 1.0);
    auto values = parallel_map<double>(grid.size(), options.threads, [&](std::size_t j) {
        const double w = grid[j];
        // Trapezoid sum with the phase factor rebuilt exactly every block to
        // stop the rotation recurrence from drifting.
        constexpr std::size_t block = 512;
        const cplx rot = std::polar(1.0, -w * h);
        cplx sum = 0.5 * (c[0] + c[steps] * std::polar(1.0, -w * h * static_cast<double>(steps)));
        cplx phase;
        for (std::size_t k = 1; k < steps; ++k) {
            if ((k - 1) % block == 0)
                phase = std::polar(1.0, -w * h * static_cast<double>(k));
            else
                phase *= rot;
            sum += c[k] * phase;
        }
        // f = C exp(-i w tau); Euler-Maclaurin corrections at tau = 0.
        const cplx f1 = d[1] - i1 * w * d[0];
        const cplx f3 = d[3] - 3.0 * i1 * w * d[2] - 3.0 * w * w * d[1] + i1 * w * w * w * d[0];
        const cplx integral = h * sum + h * h / 12.0 * f1 - std::pow(h, 4) / 720.0 * f3;
        return integral.real();
    });

    FourierOracleResult out;
    out.spectrum.freqs = grid;
    out.spectrum.values = std::move(values);
    out.spectrum.kind = SpectrumKind::FluorescenceOracle;
    out.spectrum.params = p;
    const auto [lo, hi] = std::minmax_element(out.spectrum.values.begin(), out.spectrum.values.end());
    out.spectrum.min_relative = *hi > 0.0 ? *lo / *hi : 0.0;
    out.step = h;
    out.samples = steps + 1;
    out.tail_magnitude = std::abs(c[steps]);
    return out;
}

}  // namespace vatom
