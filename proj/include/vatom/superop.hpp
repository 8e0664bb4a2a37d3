#pragma once

// Vectorisation convention shared by every module.
//
// A density matrix rho (n x n) is stacked row-major:
//     vec(rho)[i * n + j] = rho(i, j)
// so that vec(A rho B) = kron(A, B^T) vec(rho). All superoperators in this
// library act on vectors built with `vec` and are read back with `unvec`.

#include <vatom/linalg.hpp>

namespace vatom::superop {

ComplexVector vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// rho -> A rho B
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);
/// rho -> A rho
ComplexMatrix left(const ComplexMatrix& a);
/// rho -> rho B
ComplexMatrix right(const ComplexMatrix& b);

/// rho -> -i [H, rho]
ComplexMatrix hamiltonian(const ComplexMatrix& h);

/// rho -> (rate / 2) (2 J rho J^+ - J^+ J rho - rho J^+ J)
ComplexMatrix dissipator(const ComplexMatrix& jump, double rate);

/// Row functional t with t . vec(rho) = tr(rho).
ComplexVector trace_functional(Eigen::Index n);

}  // namespace vatom::superop
