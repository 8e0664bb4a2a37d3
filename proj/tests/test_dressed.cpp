#include <doctest.h>

#include <vatom/dressed.hpp>
#include <vatom/error.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <random>

using namespace vatom;

namespace {

SystemParams make(double omega21, double rabi, double delta_in_omega_r = 0.0)
{
    SystemParams p;
    p.omega21 = omega21;
    p.rabi = rabi;
    p.delta = delta_in_omega_r * dressed_scalars(p).omega_r;
    return p;
}

}  // namespace

TEST_CASE("dressed basis diagonalises the atomic Hamiltonian")
{
    for (auto [w21, rabi] : {std::pair{10.0, 100.0}, {200.0, 50.0}, {0.0, 3.0}, {50.0, 0.0}}) {
        SystemParams p;
        p.omega21 = w21;
        p.rabi = rabi;
        const DressedBasis b = dressed_basis(p);
        const AtomOperator h = atom_hamiltonian(p);
        const double wr = dressed_scalars(p).omega_r;
        CHECK((b.vectors.adjoint() * b.vectors - AtomOperator::Identity()).norm() < 1e-12);
        for (int k = 0; k < 3; ++k) {
            CHECK(b.eigenvalues[k] == doctest::Approx((k - 1) * wr));
            CHECK((h * b.vectors.col(k) - b.eigenvalues[k] * b.vectors.col(k)).norm() < 1e-10 * std::max(1.0, wr));
        }
    }
}

TEST_CASE("hand-computed rate at omega21 = 200, Omega = 50, delta = -2 Omega_R")
{
    // gamma (1 - eps^4) / 4 + 4 gamma_c eta^2 with eps^2 = 2/3, eta^2 = 1/24.
    const TransitionRates r = transition_rates(make(200, 50, -2.0));
    CHECK(r.ac == doctest::Approx(0.25 * (1.0 - 4.0 / 9.0) + 4.0 * 8.0 / 24.0).epsilon(1e-12));
    CHECK(r.ac == doctest::Approx(1.472).epsilon(1e-3));
}

TEST_CASE("transition rates: limiting cases and symmetries")
{
    // epsilon = 0: transitions touching |b> from |a>, |c> vanish.
    const TransitionRates z = transition_rates(make(0, 30, 0.7));
    CHECK(z.ab == 0.0);
    CHECK(z.cb == 0.0);
    CHECK(z.ba == doctest::Approx(0.5));
    CHECK(z.bc == doctest::Approx(0.5));

    const TransitionRates r0 = transition_rates(make(10, 100));
    CHECK(r0.ab == doctest::Approx(r0.cb));
    CHECK(r0.ac == doctest::Approx(r0.ca));

    // Mirror: delta -> -delta swaps the roles of a and c.
    const TransitionRates rp = transition_rates(make(10, 100, 1.3)), rm = transition_rates(make(10, 100, -1.3));
    CHECK(rp.ab == doctest::Approx(rm.cb));
    CHECK(rp.ac == doctest::Approx(rm.ca));

    // R_ba and R_bc never see the cavity.
    SystemParams p = make(200, 50, 1.0);
    const double before = transition_rates(p).ba;
    p.g = 0.0;
    CHECK(transition_rates(p).ba == before);
}

TEST_CASE("rate-equation populations equal the kernel of the rate matrix")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int i = 0; i < 1000; ++i) {
        TransitionRates r;
        r.ab = u(rng), r.ba = u(rng), r.ac = u(rng), r.ca = u(rng), r.bc = u(rng), r.cb = u(rng);
        const DressedPopulations d = dressed_populations_rate_eq(r);
        const Eigen::Matrix3d m = rate_matrix(r);
        Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
        REQUIRE(lu.dimensionOfKernel() == 1);
        Eigen::Vector3d k = lu.kernel().col(0);
        k /= k.sum();
        REQUIRE(d.aa == doctest::Approx(k[0]).epsilon(1e-10));
        REQUIRE(d.bb == doctest::Approx(k[1]).epsilon(1e-10));
        REQUIRE(d.cc == doctest::Approx(k[2]).epsilon(1e-10));
    }
}

TEST_CASE("rate matrix columns sum to zero; equal rates give equal populations")
{
    TransitionRates r;
    r.ab = r.ba = r.ac = r.ca = r.bc = r.cb = 2.0;
    CHECK(rate_matrix(r).colwise().sum().norm() == 0.0);
    const DressedPopulations d = dressed_populations_rate_eq(r);
    CHECK(d.aa == doctest::Approx(1.0 / 3));
    CHECK(d.bb == doctest::Approx(1.0 / 3));

    TransitionRates dead;
    CHECK_THROWS_AS(dressed_populations_rate_eq(dead), Error);
}

TEST_CASE("dressed populations: resonance symmetry and accumulation")
{
    const DressedPopulations s = dressed_populations_rate_eq(transition_rates(make(10, 100)));
    CHECK(std::abs(s.aa - s.cc) <= 1e-12);
    const DressedPopulations lo = dressed_populations_rate_eq(transition_rates(make(10, 100, -2.0)));
    const DressedPopulations hi = dressed_populations_rate_eq(transition_rates(make(10, 100, 2.0)));
    CHECK(lo.cc > lo.aa);
    CHECK(hi.aa > hi.cc);
    CHECK(lo.aa == doctest::Approx(hi.cc).epsilon(1e-12));
}

TEST_CASE("dressed populations: middle state dominance and emptiness")
{
    // Large splitting, moderate drive: |b> is mostly the ground state.
    for (double k = -4.0; k <= 4.0; k += 0.5) {
        const DressedPopulations d = dressed_populations_rate_eq(transition_rates(make(200, 50, k)));
        CHECK(d.bb > d.aa);
        CHECK(d.bb > d.cc);
    }
    // Small splitting, strong drive: |b> is almost decoupled and empty.
    CHECK(dressed_populations_rate_eq(transition_rates(make(10, 100))).bb < 0.01);
    // Vanishing drive: |b> tends to |0>.
    CHECK(dressed_populations_rate_eq(transition_rates(make(10, 0.01))).bb > 0.99);
}

TEST_CASE("secular populations track the exact transform at strong drive")
{
    const SystemParams p = make(200, 200, 2.0);
    const DressedPopulations exact = dressed_populations_exact(steady_state(build_reduced_liouvillian(p)), dressed_basis(p));
    const DressedPopulations rate = dressed_populations_rate_eq(transition_rates(p));
    CHECK(exact.aa + exact.bb + exact.cc == doctest::Approx(1.0));
    CHECK(std::abs(exact.aa - rate.aa) <= 0.05);
    CHECK(std::abs(exact.bb - rate.bb) <= 0.05);
    CHECK(std::abs(exact.cc - rate.cc) <= 0.05);
}

TEST_CASE("secular decay constants")
{
    const SecularRates s = secular_rates(make(200, 50));
    CHECK(s.gamma_3a == doctest::Approx(2.523).epsilon(1e-3));
    CHECK(std::abs(s.gamma_3a / 2.51 - 1.0) <= 0.02);
    CHECK(s.omega_3 == doctest::Approx(s.omega_4).epsilon(1e-12));
    const SecularRates printed = secular_rates(make(200, 50), SecularVariant::PaperExact);
    CHECK(printed.omega_3 - printed.omega_4 > 1.0);

    // The corrected Gamma_5 is mirror symmetric; the printed one is not.
    const double c_plus = secular_rates(make(200, 100, 1.0)).gamma_5;
    const double c_minus = secular_rates(make(200, 100, -1.0)).gamma_5;
    CHECK(c_plus == doctest::Approx(c_minus).epsilon(1e-12));
    const double e_plus = secular_rates(make(200, 100, 1.0), SecularVariant::PaperExact).gamma_5;
    const double e_minus = secular_rates(make(200, 100, -1.0), SecularVariant::PaperExact).gamma_5;
    CHECK(std::abs(e_plus - e_minus) > 1e-3);
    CHECK(parse_secular_variant("paper-exact") == SecularVariant::PaperExact);
}

TEST_CASE("secular frequencies and widths match the generator's eigenvalues")
{
    // The coherences rho_ab and rho_bc form a 2x2 block with diagonal
    // -Gamma_3a + i Omega_3, -Gamma_3b + i Omega_4 and off-diagonal Gamma_4.
    for (double k : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
        const SystemParams p = make(200, 50, k);
        const SecularRates s = secular_rates(p);
        Eigen::ComplexEigenSolver<ComplexMatrix> es(build_reduced_liouvillian(p).matrix);
        const auto nearest = [&](cplx target) {
            double best = 1e300;
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                best = std::min(best, std::abs(es.eigenvalues()[i] - target));
            return best;
        };
        Eigen::Matrix2cd block;
        block << cplx(-s.gamma_3a, s.omega_3), s.gamma_4, s.gamma_4, cplx(-s.gamma_3b, s.omega_4);
        const Eigen::Vector2cd modes = block.eigenvalues();
        CHECK(nearest(modes[0]) < 0.05);
        CHECK(nearest(modes[1]) < 0.05);
        CHECK(nearest(cplx(-s.gamma_5, s.omega_5)) < 0.05);
    }
}

TEST_CASE("secular advisory flag follows Omega_R against the decay rates")
{
    CHECK(secular_advisory(make(10, 4)));
    CHECK_FALSE(secular_advisory(make(200, 100)));
    CHECK(transition_rates(make(10, 4)).advisory);
}
