#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <vatom/model.hpp>

namespace vatom {

struct SteadyState {
    AtomOperator rho;
    double residual = 0.0;  ///< ||L vec(rho)||
    SystemParams params;
};

/// Fixed point of the reduced generator: kernel vector reshaped and scaled to
/// unit trace. Throws NonPositive when the result has an eigenvalue below
/// -1e-8 (an assembly bug rather than physics).
SteadyState steady_state(const ReducedLiouvillian& l);

struct FullSteadyState {
    ComplexMatrix rho;
    int n_max = 0;
    double residual = 0.0;
};

FullSteadyState steady_state_full(const FullLiouvillian& l);

enum class SweepVariable { Delta, Rabi, Omega21 };

std::string_view to_string(SweepVariable v) noexcept;
SweepVariable parse_sweep_variable(std::string_view text);

/// Copy of `p` with the swept variable set to `value`.
SystemParams with_variable(SystemParams p, SweepVariable v, double value);

struct SweepFailure {
    std::size_t index = 0;
    double value = 0.0;
    std::string message;
};

/// One steady state per grid value. Failed points hold NaN and a record in
/// `failures`; they never abort the sweep.
struct PopulationSweep {
    SweepVariable variable = SweepVariable::Delta;
    std::vector<double> grid;
    std::vector<double> rho00, rho11, rho22;
    std::vector<cplx> rho10, rho20, rho21;
    std::vector<double> residual;
    std::vector<SweepFailure> failures;

    std::size_t size() const { return grid.size(); }
};

PopulationSweep sweep_populations(const SystemParams& p, const std::vector<double>& grid,
                                  SweepVariable variable = SweepVariable::Delta,
                                  const ModelOptions& options = {}, unsigned threads = 0);

/// `count` uniformly spaced points on [start, stop] (count >= 2), or the single
/// point `start` when count == 1.
std::vector<double> uniform_grid(double start, double stop, std::size_t count);

/// Default detuning grid: 801 points over [-4 Omega_R, 4 Omega_R].
std::vector<double> default_detuning_grid(const SystemParams& p);

}  // namespace vatom
