#include "pvqc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pvqc/crypto.hpp"
#include "pvqc/error.hpp"
#include "pvqc/hhl.hpp"
#include "pvqc/qsim.hpp"
#include "pvqc/tlp.hpp"

namespace pvqc::bench {
namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct PuzzleTimings {
  double setup_ms = 0;
  double genpuzzle_ms = 0;
  double solve_ms = 0;
  std::uint64_t metered = 0;
};

PuzzleTimings time_puzzle(std::uint64_t mu, unsigned reps, crypto::Rng& rng) {
  PuzzleTimings t;
  std::pair<tlp::PublicParams, tlp::SecretParams> params;
  t.setup_ms = time_ms([&] { params = tlp::setup(128, mu, rng); });
  const auto& [tpk, tsk] = params;
  const Bytes message(64, 0x5a);
  std::vector<double> gen, solve;
  for (unsigned i = 0; i < reps; ++i) {
    tlp::Puzzle o;
    gen.push_back(time_ms([&] { o = tlp::gen_puzzle(message, tpk, tsk, rng); }));
    MeteredClock meter;
    solve.push_back(time_ms([&] { (void)tlp::solve(tpk, o, &meter); }));
    t.metered = meter.now();
  }
  t.genpuzzle_ms = median(gen);
  t.solve_ms = median(solve);
  return t;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("r_squared: need two or more paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy * sxy / (sxx * syy);
}

double hash_rate_per_ms(std::uint64_t probe_mu) {
  crypto::SystemRng rng;
  auto [tpk, tsk] = tlp::setup(128, probe_mu, rng);
  auto o = tlp::gen_puzzle(Bytes(64, 0), tpk, tsk, rng);
  double best = 0;
  for (int i = 0; i < 3; ++i) {
    const double ms = time_ms([&] { (void)tlp::solve(tpk, o); });
    if (ms > 0) best = std::max(best, static_cast<double>(probe_mu) / ms);
  }
  return best;
}

double calibration_time_ms(double measured_ms) { return std::max(measured_ms, 1.0); }

std::vector<TlpRow> bench_tlp(const std::vector<std::uint64_t>& mus, unsigned repetitions) {
  if (repetitions == 0) throw ParameterError("bench tlp: repetitions must be positive");
  crypto::SystemRng rng;
  const Bytes message(64, 0x5a);
  std::vector<std::pair<tlp::PublicParams, tlp::SecretParams>> params(mus.size());
  std::vector<TlpRow> rows(mus.size());
  for (std::size_t i = 0; i < mus.size(); ++i) {
    rows[i].mu = mus[i];
    rows[i].setup_ms = time_ms([&] { params[i] = tlp::setup(128, mus[i], rng); });
    rows[i].amortized_setup_ms = rows[i].setup_ms / repetitions;
  }
  // Rounds visit every mu once, so slow drift in machine speed lands on all
  // rows alike instead of bending the curve.
  std::vector<std::vector<double>> gen(mus.size()), solve(mus.size());
  for (unsigned rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < mus.size(); ++i) {
      const auto& [tpk, tsk] = params[i];
      tlp::Puzzle o;
      gen[i].push_back(time_ms([&] { o = tlp::gen_puzzle(message, tpk, tsk, rng); }));
      MeteredClock meter;
      solve[i].push_back(time_ms([&] { (void)tlp::solve(tpk, o, &meter); }));
      rows[i].metered_steps = meter.now();
    }
  }
  for (std::size_t i = 0; i < mus.size(); ++i) {
    rows[i].genpuzzle_ms = median(gen[i]);
    rows[i].solve_ms = median(solve[i]);
  }
  return rows;
}

std::vector<CircuitRow> bench_circuits(const std::vector<std::uint32_t>& qubits,
                                       const std::vector<std::uint32_t>& depths, unsigned trials,
                                       double epsilon, std::uint64_t seed,
                                       unsigned solve_repetitions) {
  if (trials == 0 || solve_repetitions == 0) throw ParameterError("bench circuits: trials must be positive");
  crypto::SystemRng rng;
  const double rate = hash_rate_per_ms();
  std::vector<CircuitRow> rows;
  for (auto n : qubits) {
    for (auto d : depths) {
      std::vector<double> times;
      for (unsigned i = 0; i < trials; ++i) {
        auto c = qsim::random_circuit(n, d, seed + 1000003ull * n + 1009ull * d + i);
        times.push_back(time_ms([&] { (void)qsim::run(c); }));
      }
      CircuitRow row;
      row.n_qubits = n;
      row.depth = d;
      row.t_ms = median(times);
      row.mu = tlp::calibrate_mu(calibration_time_ms(row.t_ms), epsilon, rate);
      auto t = time_puzzle(row.mu, solve_repetitions, rng);
      row.solve_ms = t.solve_ms;
      row.genpuzzle_ms = t.genpuzzle_ms;
      row.setup_ms = t.setup_ms;
      row.amortized_setup_ms = t.setup_ms / trials;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<HhlRow> bench_hhl(const std::vector<std::size_t>& sizes, std::uint32_t clock_qubits,
                              unsigned trials, double epsilon, std::uint64_t seed) {
  if (trials == 0) throw ParameterError("bench hhl: trials must be positive");
  const double rate = hash_rate_per_ms();
  std::vector<HhlRow> rows;
  for (auto n : sizes) {
    std::vector<double> times, fids;
    std::uint64_t depth = 0;
    for (unsigned i = 0; i < trials; ++i) {
      auto inst = hhl::representable_instance(n, clock_qubits, seed + 7919ull * n + i);
      double fid = 0;
      times.push_back(time_ms([&] {
        depth = qsim::circuit_depth(hhl::build(inst));
        fid = hhl::fidelity(inst);
      }));
      fids.push_back(fid);
    }
    HhlRow row;
    row.n = n;
    row.depth_estimate = depth;
    const double t_ms = median(times);
    row.time_s = t_ms / 1000.0;
    row.mu = tlp::calibrate_mu(calibration_time_ms(t_ms), epsilon, rate);
    double sum = 0;
    for (double f : fids) sum += f;
    row.fidelity = sum / static_cast<double>(fids.size());
    rows.push_back(row);
  }
  return rows;
}

std::string format(const std::vector<TlpRow>& rows) {
  std::ostringstream out;
  out << "# bench tlp; *_ms columns are wall-clock and machine-dependent\n";
  for (const auto& r : rows) {
    out << "mu=" << r.mu << " solve_ms=" << fixed(r.solve_ms) << " genpuzzle_ms=" << fixed(r.genpuzzle_ms)
        << " setup_ms=" << fixed(r.setup_ms) << " amortized_setup_ms=" << fixed(r.amortized_setup_ms)
        << " metered_steps=" << r.metered_steps << '\n';
  }
  return out.str();
}

std::string format(const std::vector<CircuitRow>& rows) {
  std::ostringstream out;
  out << "# bench circuits; *_ms columns are wall-clock and machine-dependent; mu calibrated in ms\n";
  for (const auto& r : rows) {
    out << "n_qubits=" << r.n_qubits << " depth=" << r.depth << " t_ms=" << fixed(r.t_ms)
        << " solve_ms=" << fixed(r.solve_ms) << " genpuzzle_ms=" << fixed(r.genpuzzle_ms)
        << " setup_ms=" << fixed(r.setup_ms) << " amortized_setup_ms=" << fixed(r.amortized_setup_ms)
        << " mu=" << r.mu << '\n';
  }
  return out.str();
}

std::string format(const std::vector<HhlRow>& rows) {
  std::ostringstream out;
  out << "# bench hhl; time_s is wall-clock and machine-dependent; mu calibrated in ms\n";
  for (const auto& r : rows) {
    out << "n=" << r.n << " depth_estimate=" << r.depth_estimate << " time_s=" << fixed(r.time_s, 6)
        << " mu=" << r.mu << " fidelity=" << fixed(r.fidelity, 6) << '\n';
  }
  return out.str();
}

}  // namespace pvqc::bench
