#pragma once

#include <string>
#include <string_view>

#include "pvqc/qsim.hpp"

// Textbook HHL with exact controlled evolutions.
//
// Register layout: system qubits [0, s), clock qubits [s, s+m), ancilla s+m,
// where N = 2^s. The circuit prepares |b>, runs phase estimation with
// controlled e^{iAt 2^k} (computed exactly from A's eigendecomposition),
// rotates the ancilla by C/lambda for each clock value, and uncomputes the
// phase estimation. Clock values j > 2^(m-1) are read as negative phases.
namespace pvqc::hhl {

using qsim::Complex;
using qsim::Matrix;

struct Instance {
  std::size_t n = 2;           // N in {2, 4, 8, 16}
  Matrix a;                    // N x N Hermitian, row-major
  std::vector<Complex> b;      // normalized
  std::uint32_t clock_qubits = 6;
  double evolution_time = 0.0;

  void validate() const;
};

struct Layout {
  std::uint32_t system_qubits;
  std::uint32_t clock_qubits;
  std::uint32_t ancilla;
  std::uint32_t total;
};
Layout layout(const Instance& inst);

// Places lambda_max at a quarter turn: t = pi / (2 * max|lambda|).
double default_evolution_time(const Matrix& a, std::size_t n);

// QFT on qubits first..first+m-1, register value read little-endian, from
// H, CPHASE and SWAP gates.
std::vector<qsim::Gate> qft(std::uint32_t first, std::uint32_t m);

qsim::Circuit build(const Instance& inst);

struct Result {
  std::vector<Complex> solution;  // post-selected system state, normalized
  double success_probability = 0.0;
  double fidelity = 0.0;
};

// Post-selects ancilla = 1 with the clock returned to |0>, and compares the
// system register against the classical solution. Throws ParameterError if the
// post-selection probability is zero.
Result solve(const Instance& inst);
inline double fidelity(const Instance& inst) { return solve(inst).fidelity; }

// Gaussian elimination with partial pivoting. Throws ParameterError on a
// singular matrix.
std::vector<Complex> classical_solve(const Matrix& a, const std::vector<Complex>& b,
                                     std::size_t n);
double residual_norm(const Matrix& a, const std::vector<Complex>& x,
                     const std::vector<Complex>& b, std::size_t n);

// A = Q diag(lambda) Q^dagger with Haar-ish random Q and integer multiples of
// the clock's phase quantum as eigenvalues, so the spectrum is exactly
// representable on the clock register. Seeded.
Instance representable_instance(std::size_t n, std::uint32_t clock_qubits, std::uint64_t seed);

// Plain text: "N", then N rows of "re,im" entries of A, then one row of b.
// Optional trailing lines "clock m" and "time t".
Instance parse_instance(std::string_view text);
std::string format_instance(const Instance& inst);

}  // namespace pvqc::hhl
