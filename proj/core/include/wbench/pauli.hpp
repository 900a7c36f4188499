#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wbench {

/// Weighted Pauli string. `letters[k]` acts on qubit k+1; qubit 1 is the
/// leftmost letter and the leftmost bit of every bit string.
struct PauliTerm {
  double coefficient = 1.0;
  std::string letters;

  // Throws ConfigError on letters outside {I,X,Y,Z} or an empty string.
  static PauliTerm from_letters(std::string_view letters, double coefficient = 1.0);
  // Parses the compact label form, e.g. "Y1Z2Y3" over `n_qubits` qubits.
  static PauliTerm from_label(std::string_view label, int n_qubits,
                              double coefficient = 1.0);

  int n_qubits() const { return static_cast<int>(letters.size()); }
  char letter(int qubit) const { return letters.at(qubit - 1); }
  // 1-based indices of qubits with a non-identity letter, ascending.
  std::vector<int> support() const;
  // Compact label with identities omitted, e.g. "Y1Z2Y3" or "Y2Y3".
  std::string label() const;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

struct PauliHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;

  // Every term spans n_qubits and has non-empty support.
  void validate() const;
};

}  // namespace wbench
