#include "fixtures.hpp"

#include <random>

namespace pvqc::testing {

Statement mirror_statement(std::uint32_t n_qubits, std::uint32_t depth, std::uint64_t seed,
                           bool accepting) {
  const std::uint32_t half = (depth + 1) / 2;
  auto forward = qsim::random_circuit(n_qubits, half, seed);
  auto backward = qsim::inverse(forward);
  Statement s;
  s.label = "mirror(n=" + std::to_string(n_qubits) + ",d=" + std::to_string(2 * half) + ")";
  s.circuit = forward;
  s.circuit.gates.insert(s.circuit.gates.end(), backward.gates.begin(), backward.gates.end());
  s.circuit.input_width = n_qubits;
  s.circuit.output_qubit = n_qubits - 1;
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  s.input.resize(n_qubits);
  for (auto& bit : s.input) bit = static_cast<std::uint8_t>(gen() & 1);
  s.input[n_qubits - 1] = accepting ? 1 : 0;
  return s;
}

std::vector<Statement> accepting_corpus() {
  std::vector<Statement> out;
  std::uint64_t seed = 100;
  for (std::uint32_t n : {5u, 10u, 15u}) {
    for (std::uint32_t d : {10u, 20u, 50u, 100u, 200u, 300u}) out.push_back(mirror_statement(n, d, seed++, true));
  }
  out.push_back(mirror_statement(7, 150, seed++, true));
  out.push_back(mirror_statement(12, 80, seed++, true));
  return out;
}

Statement rejecting_statement() { return mirror_statement(5, 10, 7, false); }

}  // namespace pvqc::testing
