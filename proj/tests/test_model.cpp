#include <doctest.h>

#include "oracles.hpp"

#include <vatom/error.hpp>
#include <vatom/model.hpp>
#include <vatom/superop.hpp>

#include <random>

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

TEST_CASE("dressed scalars: normalisation identity on random draws")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> split(-300.0, 300.0), drive(0.0, 300.0);
    for (int i = 0; i < 1000; ++i) {
        const DressedScalars s = dressed_scalars(make(split(rng), drive(rng)));
        REQUIRE(s.epsilon * s.epsilon + 8.0 * s.eta * s.eta == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("generalised Rabi frequency anchors")
{
    CHECK(dressed_scalars(make(10, 100)).omega_r == doctest::Approx(141.5).epsilon(0.1 / 141.5));
    CHECK(dressed_scalars(make(200, 50)).omega_r == doctest::Approx(122.474487).epsilon(1e-8));
    CHECK(dressed_scalars(make(200, 200)).omega_r == doctest::Approx(300.0));
    CHECK_THROWS_AS(dressed_scalars(make(0, 0)), Error);
}

TEST_CASE("parameter validation")
{
    SystemParams p;
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = SystemParams{};
    p.rabi = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = SystemParams{};
    CHECK_NOTHROW(p.validate());
    CHECK(p.gamma_c() == 8.0);
    CHECK(p.bad_cavity());
}

TEST_CASE("closed-form S matches the analytic eigenbasis integral")
{
    for (double delta : {-250.0, -30.0, 0.0, 45.0, 300.0})
        for (double rabi : {0.5, 10.0, 120.0})
            for (double w21 : {0.0, 10.0, 200.0}) {
                const SystemParams p = make(w21, rabi, delta);
                const AtomOperator closed = build_S_closed(beta_closed_form(p));
                CHECK(max_abs(closed - oracle::s_operator_exact(p)) < 1e-11);
            }
}

TEST_CASE("quadrature S oracle matches the analytic eigenbasis integral")
{
    const SystemParams p = make(200, 50, -80);
    CHECK(max_abs(build_S_oracle(p) - oracle::s_operator_exact(p)) < 1e-9);
}

TEST_CASE("flat cavity: S tends to D for the corrected table only")
{
    SystemParams p = make(10, 100);
    p.kappa = 1e9;
    const AtomOperator d = lowering_operator();
    CHECK(max_abs(build_S_closed(beta_closed_form(p)) - d) < 1e-6);

    const BetaSet exact = beta_closed_form(p, BetaVariant::PaperExact);
    const DressedScalars s = dressed_scalars(p);
    CHECK(exact.beta[6].real() == doctest::Approx(8 * s.eta * s.eta + s.epsilon).epsilon(1e-6));
    CHECK(std::abs(exact.beta[6].real() - 1.0) > 1e-3);
}

TEST_CASE("beta_from_operator inverts build_S_closed")
{
    const BetaSet b = beta_closed_form(make(50, 30, 12));
    const BetaSet back = beta_from_operator(build_S_closed(b), BetaSource::Oracle);
    for (int k = 0; k < 9; ++k)
        CHECK(std::abs(back.beta[k] - b.beta[k]) == 0.0);
}

TEST_CASE("reduced generator equals an operator-product construction probed on basis matrices")
{
    for (const SystemParams& p : {make(10, 4, 3), make(200, 100, -150), make(0, 30, 0, 0.0)}) {
        const AtomOperator s = oracle::s_operator_exact(p);
        const ComplexMatrix probed = oracle::generator_by_probing(p, s);
        CHECK(max_abs(build_reduced_liouvillian(p).matrix - probed) < 1e-10);
        CHECK(max_abs(build_reduced_liouvillian(p, s).matrix - probed) < 1e-12);
    }
}

TEST_CASE("reduced generator preserves trace")
{
    for (double delta : {-400.0, 0.0, 17.0})
        CHECK(trace_preservation_error(build_reduced_liouvillian(make(200, 100, delta)).matrix) < 1e-12);
}

TEST_CASE("full model: dimensions, trace preservation and cutoff bound")
{
    const SystemParams p = make(10, 10, 0, 5);
    const FullLiouvillian l = build_full_liouvillian(p, 3);
    CHECK(l.hilbert_dim() == 12);
    CHECK(l.matrix.rows() == 144);
    CHECK(trace_preservation_error(l.matrix) < 1e-12);
    CHECK_THROWS_AS(build_full_liouvillian(p, kMaxPhotonCutoff + 1), Error);
    CHECK_THROWS_AS(build_full_liouvillian(p, -1), Error);
}

TEST_CASE("full model with the coupling off reduces to the free atom")
{
    SystemParams p = make(10, 10, 0, 0.0);
    const FullLiouvillian l = build_full_liouvillian(p, 2);
    const ComplexVector k = null_space_1d(l.matrix);
    ComplexMatrix rho = superop::unvec(k, l.hilbert_dim());
    rho /= rho.trace();
    CHECK(photon_number(rho, 2) < 1e-12);
    const AtomOperator atom = atomic_marginal(rho, 2);
    const AtomOperator free = oracle::steady_by_trace_row(oracle::generator_by_probing(p, AtomOperator::Zero()));
    CHECK(max_abs(atom - free) < 1e-10);
}
