#include "wbench/hamiltonian.hpp"

#include <cmath>
#include <complex>

#include "wbench/errors.hpp"

namespace wbench {

PauliHamiltonian fermionic_triangle() {
  PauliHamiltonian h{3, {}};
  for (const char* letters : {"YZY", "XZX", "YYI", "XXI", "IYY", "IXX"}) {
    h.terms.push_back(PauliTerm::from_letters(letters, -0.5));
  }
  return h;
}

PauliHamiltonian hubbard_ring(int n_sites) {
  if (n_sites < 3) {
    throw ConfigError("ring needs at least 3 sites, got " + std::to_string(n_sites));
  }
  if (n_sites > kMaxQubits) {
    throw ConfigError("ring larger than the " + std::to_string(kMaxQubits) + "-qubit limit");
  }
  const auto n = static_cast<std::size_t>(n_sites);
  PauliHamiltonian h{n_sites, {}};
  for (char p : {'Y', 'X'}) {
    std::string letters(n, 'Z');
    letters.front() = p;
    letters.back() = p;
    h.terms.push_back(PauliTerm{-0.5, letters});
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (char p : {'Y', 'X'}) {
      std::string letters(n, 'I');
      letters[j] = p;
      letters[j + 1] = p;
      h.terms.push_back(PauliTerm{-0.5, letters});
    }
  }
  return h;
}

double w_state_angle() { return 2.0 * std::acos(1.0 / std::sqrt(3.0)); }

Circuit w_state_circuit() {
  return Circuit{3,
                 {Gate::rot_y(1, w_state_angle()), Gate::controlled_hadamard(1, 2),
                  Gate::cnot(2, 3), Gate::cnot(1, 2), Gate::x(1)},
                 {1, 2, 3}};
}

StateVector w_state() {
  const double a = 1.0 / std::sqrt(3.0);
  std::vector<Amplitude> amps(8, 0.0);
  amps[0b001] = a;
  amps[0b010] = a;
  amps[0b100] = a;
  return StateVector(3, std::move(amps));
}

Circuit premeasurement_circuit(const PauliTerm& term) {
  Circuit circuit{term.n_qubits(), {}, term.support()};
  for (int q = 1; q <= term.n_qubits(); ++q) {
    switch (term.letter(q)) {
      case 'Y':
        circuit.gates.push_back(Gate::s_dagger(q));
        circuit.gates.push_back(Gate::hadamard(q));
        break;
      case 'X':
        circuit.gates.push_back(Gate::hadamard(q));
        break;
      default:
        break;
    }
  }
  return circuit;
}

Eigen::MatrixXcd dense_matrix(const PauliTerm& term) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd x;
  x << 0.0, 1.0, 1.0, 0.0;
  Eigen::Matrix2cd y;
  y << 0.0, -1i, 1i, 0.0;
  Eigen::Matrix2cd z;
  z << 1.0, 0.0, 0.0, -1.0;

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Constant(1, 1, term.coefficient);
  for (char c : term.letters) {
    const Eigen::Matrix2cd& p = c == 'X' ? x : c == 'Y' ? y : c == 'Z' ? z : id;
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index col = 0; col < out.cols(); ++col) {
        next.block<2, 2>(2 * r, 2 * col) = out(r, col) * p;
      }
    }
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const PauliHamiltonian& hamiltonian) {
  hamiltonian.validate();
  const Eigen::Index dim = Eigen::Index{1} << hamiltonian.n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : hamiltonian.terms) out += dense_matrix(term);
  return out;
}

}  // namespace wbench
