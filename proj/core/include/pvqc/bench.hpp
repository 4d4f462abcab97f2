#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Wall-clock measurement of the puzzle and circuit workloads. All timing
// columns are machine-dependent; everything else is determined by the seeds.
namespace pvqc::bench {

struct TlpRow {
  std::uint64_t mu = 0;
  double solve_ms = 0;
  double genpuzzle_ms = 0;
  double setup_ms = 0;
  double amortized_setup_ms = 0;
  std::uint64_t metered_steps = 0;
};

struct CircuitRow {
  std::uint32_t n_qubits = 0;
  std::uint32_t depth = 0;
  double t_ms = 0;
  std::uint64_t mu = 0;
  double solve_ms = 0;
  double genpuzzle_ms = 0;
  double setup_ms = 0;
  double amortized_setup_ms = 0;
};

struct HhlRow {
  std::size_t n = 0;
  std::uint64_t depth_estimate = 0;
  double time_s = 0;
  std::uint64_t mu = 0;
  double fidelity = 0;
};

double median(std::vector<double> values);
// Least-squares line fit; returns the coefficient of determination.
double r_squared(const std::vector<double>& x, const std::vector<double>& y);

// Chain steps per millisecond, measured by timing a solve of `probe_mu` steps.
double hash_rate_per_ms(std::uint64_t probe_mu = 1 << 15);

// Medians over `repetitions`; amortized setup = setup / repetitions.
std::vector<TlpRow> bench_tlp(const std::vector<std::uint64_t>& mus, unsigned repetitions);

// Median simulator time per (qubits, depth) cell over `trials` random
// circuits, and the mu that CalibrateMu picks for it (milliseconds, eps).
// T below 1 ms is floored to 1 ms for calibration.
std::vector<CircuitRow> bench_circuits(const std::vector<std::uint32_t>& qubits,
                                       const std::vector<std::uint32_t>& depths, unsigned trials,
                                       double epsilon, std::uint64_t seed,
                                       unsigned solve_repetitions = 3);

// Calibration time unit used by bench_circuits and bench_hhl.
double calibration_time_ms(double measured_ms);

std::vector<HhlRow> bench_hhl(const std::vector<std::size_t>& sizes,
                              std::uint32_t clock_qubits, unsigned trials, double epsilon,
                              std::uint64_t seed);

std::string format(const std::vector<TlpRow>& rows);
std::string format(const std::vector<CircuitRow>& rows);
std::string format(const std::vector<HhlRow>& rows);

}  // namespace pvqc::bench
