#pragma once

#include <Eigen/Dense>

#include "wbench/pauli.hpp"
#include "wbench/statevector.hpp"

namespace wbench {

// Three-site spinless ring after Jordan-Wigner: six strings, coefficient -1/2
// each, in the order Y1Z2Y3, X1Z2X3, Y1Y2, X1X2, Y2Y3, X2X3. Energies in
// units of the hopping t.
PauliHamiltonian fermionic_triangle();

// n-site ring: Y1 Z~ Yn, X1 Z~ Xn with Z~ = Z2...Z(n-1), then YY and XX on
// each nearest-neighbour pair. 2n terms. ConfigError for n < 3.
PauliHamiltonian hubbard_ring(int n_sites);

// Rotation angle 2 arccos(1/sqrt 3) that puts 1/3 of the weight on |0>.
double w_state_angle();

// RotY on q1, CH(1->2), CNOT(2->3), CNOT(1->2), X on q1. Measures all qubits.
Circuit w_state_circuit();

// (|001> + |010> + |100>)/sqrt 3 built directly from amplitudes.
StateVector w_state();

// Basis change so a Z-basis readout of the support measures `term`:
// Y -> S^dagger then H, X -> H, Z and I -> nothing. Measures support(term).
Circuit premeasurement_circuit(const PauliTerm& term);

// Dense 2^n x 2^n matrix of the Hamiltonian (Kronecker products, qubit 1
// leftmost).
Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& hamiltonian);
Eigen::MatrixXcd dense_matrix(const PauliTerm& term);

}  // namespace wbench
