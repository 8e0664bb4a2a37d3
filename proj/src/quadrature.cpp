#include <vatom/error.hpp>
#include <vatom/linalg.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace vatom {

namespace {

constexpr int kOrder = 16;

struct GaussLegendre {
    std::array<double, kOrder> nodes{};
    std::array<double, kOrder> weights{};

    GaussLegendre()
    {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        for (int i = 0; i < kOrder; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= kOrder; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& rule()
{
    static const GaussLegendre gl;
    return gl;
}

struct Panel {
    double a;
    double b;
    ComplexMatrix estimate;
};

ComplexMatrix panel_sum(const MatrixFunction& f, cplx decay, double a, double b)
{
    const auto& gl = rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    ComplexMatrix acc;
    for (int i = 0; i < kOrder; ++i) {
        const double t = mid + half * gl.nodes[i];
        ComplexMatrix term = (gl.weights[i] * half * std::exp(-decay * t)) * f(t);
        if (i == 0)
            acc = std::move(term);
        else
            acc += term;
    }
    return acc;
}

}  // namespace

QuadratureResult integrate_exp_kernel(const MatrixFunction& f, cplx decay,
                                      const QuadratureOptions& options, double f_bound)
{
    if (!(decay.real() > 0.0))
        throw Error(ErrorKind::InvalidArgument, "integrate_exp_kernel: Re(decay) must be positive");

    QuadratureResult out;
    out.tau_max = 40.0 / decay.real();
    out.tail_bound = f_bound * std::exp(-decay.real() * out.tau_max) / decay.real();

    constexpr int kInitialPanels = 16;
    std::vector<Panel> stack;
    const double width = out.tau_max / kInitialPanels;
    for (int i = kInitialPanels - 1; i >= 0; --i) {
        const double a = i * width;
        const double b = (i + 1) * width;
        stack.push_back({a, b, panel_sum(f, decay, a, b)});
    }

    long visited = 0;
    while (!stack.empty()) {
        Panel p = std::move(stack.back());
        stack.pop_back();
        if (++visited > options.max_panels)
            throw Error(ErrorKind::ToleranceNotMet,
                        "integrate_exp_kernel: panel limit reached before tolerance");
        const double mid = 0.5 * (p.a + p.b);
        ComplexMatrix left = panel_sum(f, decay, p.a, mid);
        ComplexMatrix right = panel_sum(f, decay, mid, p.b);
        ComplexMatrix refined = left + right;
        const double err = (refined - p.estimate).cwiseAbs().maxCoeff();
        const double budget = options.abs_tol * (p.b - p.a) / out.tau_max;
        if (err <= budget) {
            if (out.value.size() == 0)
                out.value = refined;
            else
                out.value += refined;
            out.error_estimate += err;
            ++out.panels;
        } else {
            stack.push_back({mid, p.b, std::move(right)});
            stack.push_back({p.a, mid, std::move(left)});
        }
    }
    out.error_estimate += out.tail_bound;
    return out;
}

}  // namespace vatom
