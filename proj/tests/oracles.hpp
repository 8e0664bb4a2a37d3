#pragma once

// Test-side reference computations. Each one takes a route that the library
// does not use, so agreement is evidence rather than tautology.

#include <vatom/model.hpp>

#include <Eigen/Eigenvalues>

#include <complex>
#include <functional>

namespace oracle {

using vatom::AtomOperator;
using vatom::ComplexMatrix;
using vatom::ComplexVector;
using vatom::cplx;

inline AtomOperator dyad(int l, int k)
{
    AtomOperator a = AtomOperator::Zero();
    a(l, k) = 1.0;
    return a;
}

/// Matrix of a linear map on 3x3 operators, found by applying it to each
/// basis matrix E_ij and reading off the image (row-major vectorisation).
inline ComplexMatrix probe(const std::function<AtomOperator(const AtomOperator&)>& map)
{
    ComplexMatrix m(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const AtomOperator image = map(dyad(i, j));
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    m(3 * k + l, 3 * i + j) = image(k, l);
        }
    return m;
}

/// Cavity-eliminated generator written out with plain operator products.
inline ComplexMatrix generator_by_probing(const vatom::SystemParams& p, const AtomOperator& s)
{
    const AtomOperator h = vatom::atom_hamiltonian(p);
    const AtomOperator d = dyad(0, 1) + dyad(0, 2);
    const AtomOperator dd = d.adjoint();
    const AtomOperator sd = s.adjoint();
    const double gc = p.gamma_c();
    const cplx i1(0, 1);
    return probe([&](const AtomOperator& r) {
        AtomOperator out = -i1 * (h * r - r * h);
        out += 0.5 * gc * (d * r * sd + s * r * dd - dd * s * r - r * sd * d);
        for (int k = 1; k <= 2; ++k) {
            const AtomOperator a = dyad(0, k);
            const AtomOperator ad = a.adjoint();
            out += 0.5 * p.gamma * (2.0 * a * r * ad - ad * a * r - r * ad * a);
        }
        return out;
    });
}

/// S = kappa * int exp(-(kappa + i delta) tau) exp(-i H tau) D exp(i H tau) dtau,
/// done analytically in the eigenbasis of H.
inline AtomOperator s_operator_exact(const vatom::SystemParams& p)
{
    Eigen::SelfAdjointEigenSolver<AtomOperator> es(vatom::atom_hamiltonian(p));
    const AtomOperator v = es.eigenvectors();
    const AtomOperator d = v.adjoint() * (dyad(0, 1) + dyad(0, 2)) * v;
    AtomOperator m;
    const cplx i1(0, 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            m(a, b) = d(a, b) * p.kappa /
                      (p.kappa + i1 * p.delta + i1 * (es.eigenvalues()[a] - es.eigenvalues()[b]));
    return v * m * v.adjoint();
}

/// Steady state from the trace-replaced linear system (one row of L swapped
/// for the trace condition), without any SVD.
inline AtomOperator steady_by_trace_row(const ComplexMatrix& l)
{
    ComplexMatrix a = l;
    ComplexVector b = ComplexVector::Zero(9);
    for (int j = 0; j < 9; ++j)
        a(0, j) = (j % 4 == 0) ? 1.0 : 0.0;
    b[0] = 1.0;
    const ComplexVector x = a.fullPivLu().solve(b);
    AtomOperator rho;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rho(i, j) = x[3 * i + j];
    return rho;
}

/// exp(L t) applied to x via the eigendecomposition of L.
class EigenPropagator {
public:
    explicit EigenPropagator(const ComplexMatrix& l) : es_(l)
    {
        inverse_ = es_.eigenvectors().inverse();
    }

    ComplexVector apply(const ComplexVector& x, double t) const
    {
        const ComplexVector c = inverse_ * x;
        ComplexVector scaled(c.size());
        for (Eigen::Index k = 0; k < c.size(); ++k)
            scaled[k] = std::exp(es_.eigenvalues()[k] * t) * c[k];
        return es_.eigenvectors() * scaled;
    }

private:
    Eigen::ComplexEigenSolver<ComplexMatrix> es_;
    ComplexMatrix inverse_;
};

}  // namespace oracle
