#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pvqc/bytes.hpp"

// Dense statevector simulation of small circuits.
//
// Qubit q corresponds to bit q of the amplitude index (little-endian). For a
// DENSE_UNITARY on targets t_0..t_{k-1}, bit j of the local matrix index is
// qubit t_j. Controlled gates list the control first.
namespace pvqc::qsim {

using Complex = std::complex<double>;
using Matrix = std::vector<Complex>;  // row-major, dim x dim

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr double kAcceptThreshold = 2.0 / 3.0;
inline constexpr double kUnitaryTolerance = 1e-9;

enum class GateKind : std::uint8_t {
  X, Y, Z, H, S, T, RX, RY, RZ, PHASE, CNOT, CZ, SWAP, CPHASE, DENSE_UNITARY,
};

std::string_view name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
std::size_t arity(GateKind kind);  // 0 for DENSE_UNITARY (variable)
bool has_angle(GateKind kind);

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<std::uint32_t> targets;
  double angle = 0.0;
  Matrix matrix;  // DENSE_UNITARY only

  bool operator==(const Gate&) const = default;

  static Gate single(GateKind kind, std::uint32_t q, double angle = 0.0);
  static Gate pair(GateKind kind, std::uint32_t a, std::uint32_t b, double angle = 0.0);
  static Gate dense(std::vector<std::uint32_t> targets, Matrix matrix);
};

struct Circuit {
  std::uint32_t n_qubits = 1;
  std::uint32_t output_qubit = 0;
  // Input bits x_i are loaded by X on qubit i, for i < input_width.
  std::uint32_t input_width = 0;
  std::vector<Gate> gates;

  bool operator==(const Circuit&) const = default;
};

using InputBits = std::vector<std::uint8_t>;

struct State {
  std::uint32_t n_qubits = 0;
  std::vector<Complex> amplitudes;

  static State zero(std::uint32_t n_qubits);
  double norm_squared() const;
};

// Structural checks (sizes, targets, duplicates, unitarity). Throws ValidationError.
void validate(const Circuit& c);
void validate(const Gate& g, std::uint32_t n_qubits);

// The matrix a gate applies on its own targets (dimension 2^k).
Matrix gate_matrix(const Gate& g);
Gate inverse(const Gate& g);
Circuit inverse(const Circuit& c);

void apply(State& state, const Gate& g);

// Applies the gates in order to |0...0>.
State run(const Circuit& c);
// Loads x, then runs. Width mismatch throws ParameterError.
State run(const Circuit& c, const InputBits& x);

double prob_one(const State& state, std::uint32_t qubit);
// Exact Pr[output qubit measures 1].
double accept_prob(const Circuit& c, const InputBits& x);
inline bool accepts(const Circuit& c, const InputBits& x) {
  return accept_prob(c, x) >= kAcceptThreshold;
}

// Seeded layered circuit over the standard gate set. Every layer covers all
// qubits, so circuit_depth() equals `depth`.
Circuit random_circuit(std::uint32_t n_qubits, std::uint32_t depth, std::uint64_t seed);

// ASAP layering; a dense unitary on k qubits weighs 4^k layers.
std::uint64_t circuit_depth(const Circuit& c);

// Stable binary encoding, the basis of circuit digests.
Bytes canonical_encoding(const Circuit& c);
Digest circuit_digest(const Circuit& c);
Digest input_digest(const InputBits& x);

// Text format:
//   qubits N output K [inputs W]
//   KIND t[,t...] [angle]
//   DENSE_UNITARY t[,t...]   followed by 2^k rows of 2^k "re,im" tokens
// Blank lines and '#' comments are ignored.
Circuit parse_circuit(std::string_view text);
std::string format_circuit(const Circuit& c);

// A string of '0'/'1' characters; whitespace is ignored.
InputBits parse_input(std::string_view text);
std::string format_input(const InputBits& x);

bool is_unitary(const Matrix& m, std::size_t dim, double tol = kUnitaryTolerance);

}  // namespace pvqc::qsim
