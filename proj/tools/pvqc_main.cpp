// pvqc: protocol phases, soundness experiments and benchmarks.
//
// Exit status: 0 accept/success, 1 reject, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pvqc/bench.hpp"
#include "pvqc/compiler.hpp"
#include "pvqc/error.hpp"
#include "pvqc/harness.hpp"

namespace {

using namespace pvqc;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUsage = 2;

std::string read_text(const std::string& path) {
  auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

qsim::Circuit load_circuit(const std::string& path) { return qsim::parse_circuit(read_text(path)); }
qsim::InputBits load_input(const std::string& path) { return qsim::parse_input(read_text(path)); }

timestamp::ServiceState load_state(const std::string& ledger) {
  return timestamp::parse_service_state(read_file(timestamp::service_state_path(ledger)));
}

void save_state(const std::string& ledger, const timestamp::ServiceState& st) {
  write_file(timestamp::service_state_path(ledger), timestamp::serialize(st));
}

struct Paths {
  std::string crs, circuit, input, proof, opening, ledger, oracle;
};

struct SetupArgs {
  double epsilon = compiler::kDefaultEpsilon;
  unsigned lambda = compiler::kDefaultLambda;
};

int cmd_setup(const Paths& p, const SetupArgs& a) {
  auto rng = crypto::default_rng();
  const auto c = load_circuit(p.circuit);
  const auto x = load_input(p.input);
  const auto cost = compiler::CostModel::for_circuit(c, a.epsilon);
  auto out = compiler::setup(a.lambda, c, x, cost, *rng);
  write_file(p.crs, compiler::serialize(out.crs));
  write_file(p.oracle, dvproof::serialize(out.token));

  timestamp::ServiceState st{rng->bytes<32>(), 0};
  (void)timestamp::Ledger::create_file(p.ledger, st.mac_key);
  save_state(p.ledger, st);

  std::cout << "t_units=" << cost.t_units << "\ndelta=" << out.crs.delta << "\nmu=" << out.crs.tpk.mu
            << '\n';
  return kAccept;
}

int cmd_prove(const Paths& p) {
  const auto crs = compiler::parse_crs(read_file(p.crs));
  const auto c = load_circuit(p.circuit);
  const auto x = load_input(p.input);
  const auto token = dvproof::parse_token(read_file(p.oracle));
  auto st = load_state(p.ledger);
  auto ledger = timestamp::Ledger::open_file(p.ledger, st.mac_key);
  MeteredClock clock(st.clock);
  try {
    auto pi = compiler::prove(crs, c, x, token, ledger, clock, compiler::CostModel::for_circuit(c));
    st.clock = clock.now();
    save_state(p.ledger, st);
    write_file(p.proof, compiler::serialize(pi));
    std::cout << "tau=" << pi.tau() << "\ndelta=" << crs.delta << '\n';
    return kAccept;
  } catch (const ProofRefused& e) {
    std::cerr << "pvqc: " << e.what() << '\n';
    return kReject;
  }
}

int cmd_reveal(const Paths& p, bool quiet) {
  const auto crs = compiler::parse_crs(read_file(p.crs));
  std::optional<timestamp::ServiceState> st;
  if (!p.ledger.empty()) st = load_state(p.ledger);
  MeteredClock clock(st ? st->clock : 0);
  const auto start = clock.now();
  tlp::ChainWalker::Progress progress;
  if (!quiet) {
    progress = [](std::uint64_t done, std::uint64_t total) {
      std::cerr << "\rsolving " << done << '/' << total << std::flush;
    };
  }
  auto y = compiler::reveal(crs, clock, progress);
  if (!quiet && crs.tpk.mu >= tlp::ChainWalker::kProgressInterval) std::cerr << '\n';
  write_file(p.opening, commit::serialize(y));
  if (st) {
    st->clock = clock.now();
    save_state(p.ledger, *st);
  }
  std::cout << "steps=" << clock.now() - start << '\n';
  return kAccept;
}

int cmd_verify(const Paths& p) {
  const auto crs = compiler::parse_crs(read_file(p.crs));
  const auto c = load_circuit(p.circuit);
  const auto x = load_input(p.input);
  const auto pi = compiler::parse_timestamped_proof(read_file(p.proof));
  const auto y = commit::parse_opening(read_file(p.opening));
  const auto st = load_state(p.ledger);
  const auto ledger = timestamp::Ledger::open_file(p.ledger, st.mac_key);
  const auto v = compiler::verify(crs, c, x, pi, y, ledger);
  if (v.accept) {
    std::cout << "accept\n";
    return kAccept;
  }
  std::cout << "reject site=" << compiler::name(v.site) << '\n';
  return kReject;
}

struct ExperimentArgs {
  std::string strategy;
  std::uint64_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  double epsilon = compiler::kDefaultEpsilon;
  unsigned lambda = compiler::kDefaultLambda;
  bool per_trial = false;
};

int cmd_experiment(const Paths& p, const ExperimentArgs& a) {
  harness::ExperimentConfig cfg;
  cfg.adversary = {harness::strategy_from_name(a.strategy), a.budget};
  cfg.trials = a.trials;
  cfg.epsilon = a.epsilon;
  cfg.lambda = a.lambda;
  cfg.keep_trials = a.per_trial;
  if (a.seed) {
    cfg.seed = *a.seed;
  } else if (const char* env = std::getenv("PVQC_SEED"); env != nullptr && *env != '\0') {
    cfg.seed = std::stoull(env, nullptr, 0);
  } else {
    cfg.seed = crypto::SystemRng().next_u64();
  }
  const auto res = harness::run_experiment(cfg, load_circuit(p.circuit), load_input(p.input));
  std::cout << "seed=" << cfg.seed << '\n' << harness::summary(res.aggregate);
  for (std::size_t i = 0; i < res.trials.size(); ++i) {
    const auto& t = res.trials[i];
    std::cout << "trial=" << i << " b1=" << t.b1 << " b2=" << t.b2 << " win=" << t.win
              << " bottom=" << t.bottom << " late=" << t.late << " tau=" << t.tau
              << " steps=" << t.steps_used << " site1=" << compiler::name(t.site1)
              << " site2=" << compiler::name(t.site2) << '\n';
  }
  return kAccept;
}

int run(int argc, char** argv) {
  CLI::App app{"Time-delayed publicly verifiable delegation of quantum circuits"};
  app.require_subcommand(1);
  Paths p;

  auto* setup = app.add_subcommand("setup", "generate a CRS, oracle token and fresh ledger");
  SetupArgs sa;
  setup->add_option("--circuit", p.circuit)->required();
  setup->add_option("--input", p.input)->required();
  setup->add_option("--crs", p.crs, "output CRS file")->required();
  setup->add_option("--oracle", p.oracle, "output oracle token (honest prover only)")->required();
  setup->add_option("--ledger", p.ledger, "ledger file to create")->required();
  setup->add_option("--epsilon", sa.epsilon)->capture_default_str()->check(CLI::PositiveNumber);
  setup->add_option("--lambda", sa.lambda)->capture_default_str();

  auto* prove = app.add_subcommand("prove", "prove C(x) = 1 and timestamp the proof");
  prove->add_option("--crs", p.crs)->required();
  prove->add_option("--circuit", p.circuit)->required();
  prove->add_option("--input", p.input)->required();
  prove->add_option("--oracle", p.oracle)->required();
  prove->add_option("--ledger", p.ledger)->required();
  prove->add_option("--proof", p.proof, "output proof file")->required();

  auto* reveal = app.add_subcommand("reveal", "solve the CRS puzzle and write the opening");
  bool quiet = false;
  reveal->add_option("--crs", p.crs)->required();
  reveal->add_option("--opening", p.opening, "output opening file")->required();
  reveal->add_option("--ledger", p.ledger, "advance this ledger's clock by the solve");
  reveal->add_flag("--quiet,-q", quiet, "no progress output");

  auto* verify = app.add_subcommand("verify", "publicly verify a timestamped proof");
  verify->add_option("--crs", p.crs)->required();
  verify->add_option("--circuit", p.circuit)->required();
  verify->add_option("--input", p.input)->required();
  verify->add_option("--proof", p.proof)->required();
  verify->add_option("--opening", p.opening)->required();
  verify->add_option("--ledger", p.ledger)->required();

  auto* experiment = app.add_subcommand("experiment", "run the soundness experiment");
  ExperimentArgs ea;
  experiment->add_option("--strategy", ea.strategy, "honest, a1, a2, a3 or a4")
      ->required()
      ->check(CLI::IsMember({"honest", "a1", "a2", "a3", "a4"}));
  experiment->add_option("--circuit", p.circuit)->required();
  experiment->add_option("--input", p.input)->required();
  experiment->add_option("--trials", ea.trials)->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--seed", ea.seed, "defaults to PVQC_SEED, else random");
  experiment->add_option("--budget", ea.budget, "adversary step budget (default Delta - 1)");
  experiment->add_option("--epsilon", ea.epsilon)->capture_default_str()->check(CLI::PositiveNumber);
  experiment->add_option("--lambda", ea.lambda)->capture_default_str();
  experiment->add_flag("--per-trial", ea.per_trial, "also print one line per trial");

  auto* bench = app.add_subcommand("bench", "wall-clock benchmarks");
  bench->require_subcommand(1);

  std::vector<std::uint64_t> mus;
  for (int k = 10; k <= 16; ++k) mus.push_back(std::uint64_t{1} << k);
  unsigned repetitions = 20;
  auto* btlp = bench->add_subcommand("tlp", "puzzle setup, generation and solve times");
  btlp->add_option("--mu", mus, "chain lengths")->capture_default_str()->delimiter(',');
  btlp->add_option("--repetitions", repetitions)->capture_default_str()->check(CLI::PositiveNumber);

  std::vector<std::uint32_t> qubits{5, 10, 15};
  std::vector<std::uint32_t> depths{10, 20, 50, 100, 200, 300};
  unsigned trials = 20;
  double epsilon = compiler::kDefaultEpsilon;
  std::uint64_t seed = 1;
  auto* bcirc = bench->add_subcommand("circuits", "simulator time and calibrated mu per cell");
  bcirc->add_option("--qubits", qubits)->capture_default_str()->delimiter(',')->check(CLI::Range(1, 20));
  bcirc->add_option("--depths", depths)->capture_default_str()->delimiter(',');
  bcirc->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
  bcirc->add_option("--epsilon", epsilon)->capture_default_str()->check(CLI::PositiveNumber);
  bcirc->add_option("--seed", seed)->capture_default_str();

  std::vector<std::size_t> sizes{2, 4, 8, 16};
  std::uint32_t clock_qubits = 6;
  unsigned hhl_trials = 3;
  auto* bhhl = bench->add_subcommand("hhl", "HHL depth, time and fidelity per system size");
  bhhl->add_option("--sizes", sizes)->capture_default_str()->delimiter(',');
  bhhl->add_option("--clock", clock_qubits)->capture_default_str()->check(CLI::Range(2, 10));
  bhhl->add_option("--trials", hhl_trials)->capture_default_str()->check(CLI::PositiveNumber);
  bhhl->add_option("--epsilon", epsilon)->capture_default_str()->check(CLI::PositiveNumber);
  bhhl->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*setup) return cmd_setup(p, sa);
    if (*prove) return cmd_prove(p);
    if (*reveal) return cmd_reveal(p, quiet);
    if (*verify) return cmd_verify(p);
    if (*experiment) return cmd_experiment(p, ea);
    if (*btlp) {
      std::cout << bench::format(bench::bench_tlp(mus, repetitions));
    } else if (*bcirc) {
      std::cout << bench::format(bench::bench_circuits(qubits, depths, trials, epsilon, seed));
    } else if (*bhhl) {
      std::cout << bench::format(bench::bench_hhl(sizes, clock_qubits, hhl_trials, epsilon, seed));
    }
    return kAccept;
  } catch (const pvqc::Error& e) {
    std::cerr << "pvqc: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "pvqc: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
