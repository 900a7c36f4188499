#include "wbench/pauli.hpp"

#include <cctype>

#include "wbench/errors.hpp"

namespace wbench {
namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

}  // namespace

PauliTerm PauliTerm::from_letters(std::string_view letters, double coefficient) {
  if (letters.empty()) throw ConfigError("Pauli string is empty");
  for (char c : letters) {
    if (!valid_letter(c)) {
      throw ConfigError("invalid Pauli letter '" + std::string(1, c) + "' in \"" +
                        std::string(letters) + "\"");
    }
  }
  return PauliTerm{coefficient, std::string(letters)};
}

PauliTerm PauliTerm::from_label(std::string_view label, int n_qubits, double coefficient) {
  if (n_qubits < 1) throw ConfigError("Pauli label needs at least one qubit");
  std::string letters(static_cast<std::size_t>(n_qubits), 'I');
  std::size_t i = 0;
  if (label.empty()) throw ConfigError("empty Pauli label");
  while (i < label.size()) {
    const char letter = label[i++];
    if (!valid_letter(letter) || letter == 'I') {
      throw ConfigError("malformed Pauli label \"" + std::string(label) + "\"");
    }
    int qubit = 0;
    const std::size_t digits_start = i;
    while (i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]))) {
      qubit = qubit * 10 + (label[i++] - '0');
    }
    if (i == digits_start || qubit < 1 || qubit > n_qubits) {
      throw ConfigError("malformed Pauli label \"" + std::string(label) + "\"");
    }
    if (letters[qubit - 1] != 'I') {
      throw ConfigError("qubit repeated in Pauli label \"" + std::string(label) + "\"");
    }
    letters[qubit - 1] = letter;
  }
  return PauliTerm{coefficient, letters};
}

std::vector<int> PauliTerm::support() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (letters[k] != 'I') out.push_back(static_cast<int>(k) + 1);
  }
  return out;
}

std::string PauliTerm::label() const {
  std::string out;
  for (std::size_t k = 0; k < letters.size(); ++k) {
    if (letters[k] == 'I') continue;
    out += letters[k];
    out += std::to_string(k + 1);
  }
  return out.empty() ? "I" : out;
}

void PauliHamiltonian::validate() const {
  if (n_qubits < 1) throw ConfigError("Hamiltonian needs at least one qubit");
  for (const auto& term : terms) {
    if (term.n_qubits() != n_qubits) {
      throw ConfigError("term " + term.letters + " does not span " +
                        std::to_string(n_qubits) + " qubits");
    }
    for (char c : term.letters) {
      if (!valid_letter(c)) throw ConfigError("invalid Pauli letter in " + term.letters);
    }
    if (term.support().empty()) {
      throw ConfigError("Hamiltonian term has empty support");
    }
  }
}

}  // namespace wbench
