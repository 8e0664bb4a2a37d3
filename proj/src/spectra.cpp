#include <vatom/error.hpp>
#include <vatom/parallel.hpp>
#include <vatom/spectra.hpp>
#include <vatom/superop.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace vatom {

namespace {

constexpr cplx I1(0.0, 1.0);

// Row-major positions of the elements read out of the resolvent solutions.
constexpr Eigen::Index k01 = 1, k02 = 2, k10 = 3, k20 = 6;

void require_increasing(const std::vector<double>& grid, const char* what)
{
    if (grid.empty())
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw Error(ErrorKind::InvalidArgument, std::string(what) + ": non-finite grid value");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw Error(ErrorKind::InvalidArgument, std::string(what) + ": grid must be strictly increasing");
    }
}

double relative_minimum(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi > 0.0 ? *lo / *hi : 0.0;
}

// Operator form of the stationary-subtracted initial condition X - Tr(X) rho.
ComplexVector subtracted(const AtomOperator& x, const AtomOperator& rho)
{
    return superop::vec(x - x.trace() * rho);
}

AtomOperator dyad(int l, int k)
{
    AtomOperator a = AtomOperator::Zero();
    a(l, k) = 1.0;
    return a;
}

/// Solves (i omega - L + |rho><1|) X = B for several right-hand sides. The
/// rank-one term only shifts the kernel eigenvalue, so for trace-free columns
/// of B the result is the plain resolvent applied to B.
class DeflatedResolvent {
public:
    DeflatedResolvent(const ComplexMatrix& l, const AtomOperator& rho)
        : shifted_(-l + superop::vec(rho) * superop::trace_functional(3).transpose())
    {
    }

    ComplexMatrix solve(double omega, const ComplexMatrix& rhs) const
    {
        try {
            return solve_once(omega, rhs);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ResolventSingular)
                throw;
            return solve_once(omega + 1e-9, rhs);
        }
    }

private:
    ComplexMatrix solve_once(double omega, const ComplexMatrix& rhs) const
    {
        ComplexMatrix m = shifted_;
        m.diagonal().array() += I1 * omega;
        Eigen::PartialPivLU<ComplexMatrix> lu(m);
        const auto& u = lu.matrixLU();
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        if (u.diagonal().cwiseAbs().minCoeff() <= 1e-12 * scale)
            throw Error(ErrorKind::ResolventSingular,
                        "resolvent singular at omega = " + std::to_string(omega));
        return lu.solve(rhs);
    }

    ComplexMatrix shifted_;
};

SpectrumSeries make_series(const SystemParams& p, const std::vector<double>& grid, std::vector<double> values,
                           SpectrumKind kind)
{
    SpectrumSeries s;
    s.freqs = grid;
    s.values = std::move(values);
    s.kind = kind;
    s.params = p;
    s.min_relative = relative_minimum(s.values);
    return s;
}

}  // namespace

std::string_view to_string(SpectrumKind k) noexcept
{
    switch (k) {
    case SpectrumKind::FluorescenceQRT: return "fluorescence";
    case SpectrumKind::FluorescenceSecular: return "fluorescence-secular";
    case SpectrumKind::FluorescenceOracle: return "fluorescence-oracle";
    case SpectrumKind::Absorption: return "absorption";
    }
    return "fluorescence";
}

std::vector<double> default_spectral_grid(const SystemParams& p)
{
    const double wr = dressed_scalars(p).omega_r;
    return uniform_grid(-2.5 * wr, 2.5 * wr, 2001);
}

double stationary_correlation(const SteadyState& ss)
{
    const AtomOperator& r = ss.rho;
    return (r(1, 1) + r(2, 2)).real() - std::norm(r(0, 1)) - std::norm(r(0, 2));
}

SpectrumSeries fluorescence_qrt(const SystemParams& p, const std::vector<double>& grid,
                                const SpectrumOptions& options)
{
    require_increasing(grid, "fluorescence_qrt");
    const ReducedLiouvillian l = build_reduced_liouvillian(p, options.model);
    const SteadyState ss = steady_state(l);

    ComplexMatrix rhs(9, 2);
    rhs.col(0) = subtracted(dyad(0, 1) * ss.rho, ss.rho);
    rhs.col(1) = subtracted(dyad(0, 2) * ss.rho, ss.rho);
    const DeflatedResolvent resolvent(l.matrix, ss.rho);

    auto values = parallel_map<double>(grid.size(), options.threads, [&](std::size_t i) {
        const ComplexMatrix x = resolvent.solve(grid[i], rhs);
        cplx v = x(k01, 0) + x(k02, 1);
        if (options.include_cross_terms)
            v += x(k02, 0) + x(k01, 1);
        return v.real();
    });
    return make_series(p, grid, std::move(values), SpectrumKind::FluorescenceQRT);
}

SecularComponents fluorescence_secular(const SystemParams& p, const std::vector<double>& grid,
                                       SecularVariant variant)
{
    require_increasing(grid, "fluorescence_secular");
    const DressedScalars ds = dressed_scalars(p);
    const double e2 = ds.epsilon * ds.epsilon;
    const double n2 = ds.eta * ds.eta;

    SecularComponents out;
    out.rates = secular_rates(p, variant);
    out.populations = dressed_populations_rate_eq(transition_rates(p));
    out.advisory = secular_advisory(p);
    const SecularRates& s = out.rates;
    const double pa = out.populations.aa, pb = out.populations.bb, pc = out.populations.cc;

    const double disc0 = (s.gamma_1a - s.gamma_1b) * (s.gamma_1a - s.gamma_1b) + 4.0 * s.gamma_2a * s.gamma_2b;
    const double disc1 = (s.gamma_3a - s.gamma_3b) * (s.gamma_3a - s.gamma_3b) + 4.0 * s.gamma_4 * s.gamma_4;
    out.real_discriminants = disc0 >= 0.0 && disc1 >= 0.0;
    out.gamma0_plus = 0.5 * (s.gamma_1a + s.gamma_1b + std::sqrt(std::max(disc0, 0.0)));
    out.gamma0_minus = 0.5 * (s.gamma_1a + s.gamma_1b - std::sqrt(std::max(disc0, 0.0)));
    out.gamma1_plus = 0.5 * (s.gamma_3a + s.gamma_3b + std::sqrt(disc1));
    out.gamma1_minus = 0.5 * (s.gamma_3a + s.gamma_3b - std::sqrt(disc1));
    out.gamma5 = s.gamma_5;

    const std::size_t n = grid.size();
    std::vector<double> l0(n), l1(n), l2(n), l3(n), l4(n), total(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = I1 * grid[i];
        const cplx n0 = 4.0 * n2 * (2.0 * z + s.gamma_1a + s.gamma_1b - s.gamma_2a - s.gamma_2b) * pa * pc -
                        2.0 * n2 * (1.0 - 9.0 * e2) * (s.gamma_2a * pc + s.gamma_2b * pa) * pb +
                        2.0 * n2 * (1.0 + 9.0 * e2) * ((z + s.gamma_1a) * pc + (z + s.gamma_1b) * pa) * pb;
        l0[i] = (n0 / ((z + s.gamma_1a) * (z + s.gamma_1b) - s.gamma_2a * s.gamma_2b)).real();

        const cplx a3 = z + s.gamma_3a + I1 * s.omega_3;
        const cplx b4 = z + s.gamma_3b + I1 * s.omega_4;
        l1[i] = ((4.0 * n2 * (8.0 * n2 * a3 - e2 * s.gamma_4) * pb +
                  0.5 * e2 * ((1.0 + e2) * b4 - 8.0 * n2 * s.gamma_4) * pa) /
                 (a3 * b4 - s.gamma_4 * s.gamma_4))
                    .real();

        const cplx a3m = z + s.gamma_3a - I1 * s.omega_3;
        const cplx b4m = z + s.gamma_3b - I1 * s.omega_4;
        l2[i] = ((4.0 * n2 * (8.0 * n2 * b4m - e2 * s.gamma_4) * pb +
                  0.5 * e2 * ((1.0 + e2) * a3m - 8.0 * n2 * s.gamma_4) * pc) /
                 (a3m * b4m - s.gamma_4 * s.gamma_4))
                    .real();

        l3[i] = (2.0 * n2 * (1.0 + e2) * pa / (z + s.gamma_5 + I1 * s.omega_5)).real();
        l4[i] = (2.0 * n2 * (1.0 + e2) * pc / (z + s.gamma_5 - I1 * s.omega_5)).real();
        total[i] = l0[i] + l1[i] + l2[i] + l3[i] + l4[i];
    }
    constexpr auto kind = SpectrumKind::FluorescenceSecular;
    out.central = make_series(p, grid, std::move(l0), kind);
    out.inner_low = make_series(p, grid, std::move(l1), kind);
    out.inner_high = make_series(p, grid, std::move(l2), kind);
    out.outer_low = make_series(p, grid, std::move(l3), kind);
    out.outer_high = make_series(p, grid, std::move(l4), kind);
    out.total = make_series(p, grid, std::move(total), kind);
    return out;
}

SpectrumSeries absorption_spectrum(const SystemParams& p, const std::vector<double>& grid,
                                   const AbsorptionOptions& options)
{
    require_increasing(grid, "absorption_spectrum");
    const ReducedLiouvillian l = build_reduced_liouvillian(p, options.model);
    const SteadyState ss = steady_state(l);
    const AtomOperator& rho = ss.rho;

    const AtomOperator f = dyad(0, 1) * rho;
    const AtomOperator g = dyad(0, 2) * rho;
    const AtomOperator fp = rho * dyad(1, 0);
    const AtomOperator gp = rho * dyad(2, 0);

    // Elastic parts of the four correlations cancel in the commutator form.
    const cplx elastic = f.trace() * rho(0, 1) + g.trace() * rho(0, 2) - fp.trace() * rho(1, 0) -
                         gp.trace() * rho(2, 0);
    if (std::abs(elastic) >= 1e-10)
        throw Error(ErrorKind::ToleranceNotMet,
                    "absorption_spectrum: stationary parts do not cancel (" + std::to_string(std::abs(elastic)) + ")");

    ComplexMatrix rhs(9, 4);
    rhs.col(0) = subtracted(f, rho);
    rhs.col(1) = subtracted(g, rho);
    rhs.col(2) = subtracted(fp, rho);
    rhs.col(3) = subtracted(gp, rho);
    const DeflatedResolvent resolvent(l.matrix, rho);

    auto values = parallel_map<double>(grid.size(), options.threads, [&](std::size_t i) {
        const ComplexMatrix x = resolvent.solve(grid[i], rhs);
        return (x(k01, 0) + x(k02, 1) - x(k10, 2) - x(k20, 3)).real();
    });
    SpectrumSeries s = make_series(p, grid, std::move(values), SpectrumKind::Absorption);
    s.min_relative = 0.0;  // signed quantity
    return s;
}

LineWeights line_weights(const SystemParams& p)
{
    const TransitionRates r = transition_rates(p);
    const DressedPopulations pop = dressed_populations_rate_eq(r);
    LineWeights w;
    w.w_minus2 = pop.aa * r.ac - pop.cc * r.ca;
    w.w_plus2 = pop.cc * r.ca - pop.aa * r.ac;
    w.w_minus1 = pop.cc * r.cb - pop.aa * r.ab;
    w.w_plus1 = pop.aa * r.ab - pop.cc * r.cb;
    return w;
}

Peak peak_in_window(const SpectrumSeries& s, double center, double half_width)
{
    Peak best;
    bool found = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s.freqs[i] - center) > half_width)
            continue;
        if (!found || s.values[i] > best.value) {
            best = {s.freqs[i], s.values[i]};
            found = true;
        }
    }
    if (!found)
        throw Error(ErrorKind::InvalidArgument, "peak_in_window: no grid point inside window");
    return best;
}

double window_integral(const SpectrumSeries& s, double lo, double hi)
{
    double sum = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s.freqs[i - 1] < lo || s.freqs[i] > hi)
            continue;
        sum += 0.5 * (s.values[i] + s.values[i - 1]) * (s.freqs[i] - s.freqs[i - 1]);
    }
    return sum;
}

double spectral_integral(const SpectrumSeries& s)
{
    if (s.size() < 2)
        throw Error(ErrorKind::InvalidArgument, "spectral_integral: need at least two points");
    double sum = window_integral(s, s.freqs.front(), s.freqs.back());
    sum += s.values.front() * std::abs(s.freqs.front());
    sum += s.values.back() * std::abs(s.freqs.back());
    return sum;
}

double asymmetry(const SpectrumSeries& s)
{
    const std::size_t n = s.size();
    double scale = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        if (std::abs(s.freqs[i] + s.freqs[j]) > 1e-9 * std::max(1.0, std::abs(s.freqs[i])))
            throw Error(ErrorKind::InvalidArgument, "asymmetry: grid is not symmetric about zero");
        scale = std::max(scale, std::abs(s.values[i]));
        worst = std::max(worst, std::abs(s.values[i] - s.values[j]));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace vatom
