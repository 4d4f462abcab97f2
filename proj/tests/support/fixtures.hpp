#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pvqc/qsim.hpp"

namespace pvqc::testing {

struct Statement {
  std::string label;
  qsim::Circuit circuit;
  qsim::InputBits input;
};

// U followed by U^dagger, with every qubit an input qubit. The output qubit
// ends in state x[n-1], so C(x) = x[n-1] exactly. Depth is 2 * ceil(depth/2).
Statement mirror_statement(std::uint32_t n_qubits, std::uint32_t depth, std::uint64_t seed,
                           bool accepting);

// Twenty accepting statements spanning 5-15 qubits and depth 10-300.
std::vector<Statement> accepting_corpus();

// Small rejecting statement (5 qubits, depth 10).
Statement rejecting_statement();

}  // namespace pvqc::testing
