#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pvqc/clock.hpp"
#include "pvqc/error.hpp"
#include "pvqc/hhl.hpp"
#include "pvqc/qsim.hpp"

namespace pvqc::qsim {
namespace {

using std::numbers::pi;

constexpr GateKind kAllKinds[] = {
    GateKind::X,  GateKind::Y,  GateKind::Z,     GateKind::H,    GateKind::S,
    GateKind::T,  GateKind::RX, GateKind::RY,    GateKind::RZ,   GateKind::PHASE,
    GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::CPHASE,
};

Gate sample_gate(GateKind k, double angle = 0.7) {
  return arity(k) == 1 ? Gate::single(k, 0, angle) : Gate::pair(k, 0, 1, angle);
}

double overlap_sq(const State& a, const State& b) {
  Complex acc = 0;
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return std::norm(acc);
}

TEST(Gates, EveryMatrixIsUnitary) {
  for (auto k : kAllKinds) {
    const auto m = gate_matrix(sample_gate(k));
    EXPECT_TRUE(is_unitary(m, std::size_t{1} << arity(k), 1e-12)) << name(k);
  }
}

TEST(Gates, InverseComposesToIdentity) {
  for (auto k : kAllKinds) {
    const auto g = sample_gate(k);
    Circuit c{2, 0, 0, {Gate::single(GateKind::H, 0), Gate::single(GateKind::RY, 1, 0.3), g, inverse(g)}};
    Circuit ref{2, 0, 0, {Gate::single(GateKind::H, 0), Gate::single(GateKind::RY, 1, 0.3)}};
    EXPECT_NEAR(overlap_sq(run(c), run(ref)), 1.0, 1e-12) << name(k);
  }
}

TEST(Gates, NamesRoundTrip) {
  for (auto k : kAllKinds) EXPECT_EQ(gate_kind_from_name(name(k)), k);
  EXPECT_EQ(gate_kind_from_name("DENSE_UNITARY"), GateKind::DENSE_UNITARY);
  EXPECT_THROW(gate_kind_from_name("TOFFOLI"), FormatError);
}

TEST(Simulator, BasisStatesAndBell) {
  auto x = run(Circuit{1, 0, 0, {Gate::single(GateKind::X, 0)}});
  EXPECT_NEAR(prob_one(x, 0), 1.0, 1e-15);

  auto bell = run(Circuit{2, 1, 0, {Gate::single(GateKind::H, 0), Gate::pair(GateKind::CNOT, 0, 1)}});
  EXPECT_NEAR(std::norm(bell.amplitudes[0]), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(bell.amplitudes[3]), 0.5, 1e-15);
  EXPECT_NEAR(std::norm(bell.amplitudes[1]), 0.0, 1e-15);
}

TEST(Simulator, LittleEndianOrdering) {
  // X on qubit 1 of 3 sets amplitude index 0b010.
  auto st = run(Circuit{3, 0, 0, {Gate::single(GateKind::X, 1)}});
  EXPECT_NEAR(std::abs(st.amplitudes[2]), 1.0, 1e-15);
}

TEST(Simulator, ControlIsFirstTarget) {
  auto st = run(Circuit{2, 0, 0, {Gate::single(GateKind::X, 1), Gate::pair(GateKind::CNOT, 1, 0)}});
  EXPECT_NEAR(std::abs(st.amplitudes[3]), 1.0, 1e-15);
  auto idle = run(Circuit{2, 0, 0, {Gate::single(GateKind::X, 1), Gate::pair(GateKind::CNOT, 0, 1)}});
  EXPECT_NEAR(std::abs(idle.amplitudes[2]), 1.0, 1e-15);
}

TEST(Simulator, DenseMatchesNativeGates) {
  for (auto k : kAllKinds) {
    const auto g = arity(k) == 1 ? Gate::single(k, 2, 1.1) : Gate::pair(k, 2, 0, 1.1);
    Gate d = Gate::dense(g.targets, gate_matrix(g));
    const auto prefix = random_circuit(3, 4, 99);
    auto a = prefix;
    a.gates.push_back(g);
    auto b = prefix;
    b.gates.push_back(d);
    auto sa = run(a);
    auto sb = run(b);
    for (std::size_t i = 0; i < sa.amplitudes.size(); ++i) {
      EXPECT_NEAR(std::abs(sa.amplitudes[i] - sb.amplitudes[i]), 0.0, 1e-12) << name(k);
    }
  }
}

TEST(Simulator, RandomCircuitsPreserveNorm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = random_circuit(8, 40, seed);
    EXPECT_NEAR(run(c).norm_squared(), 1.0, 1e-12);
  }
}

TEST(Simulator, CircuitThenInverseIsIdentity) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = random_circuit(6, 30, seed);
    auto inv = inverse(c);
    c.gates.insert(c.gates.end(), inv.gates.begin(), inv.gates.end());
    EXPECT_NEAR(std::norm(run(c).amplitudes[0]), 1.0, 1e-12);
  }
}

TEST(Simulator, InputLoading) {
  Circuit c{3, 2, 3, {}};
  EXPECT_NEAR(accept_prob(c, {0, 0, 1}), 1.0, 1e-15);
  EXPECT_TRUE(accepts(c, {1, 0, 1}));
  EXPECT_FALSE(accepts(c, {1, 1, 0}));
  EXPECT_THROW(run(c, {1, 0}), ParameterError);
}

TEST(Simulator, RunsAreCounted) {
  instrument::Probe probe;
  (void)run(Circuit{2, 0, 0, {}});
  (void)accept_prob(Circuit{2, 0, 2, {}}, {0, 1});
  EXPECT_EQ(probe.simulator_runs(), 2u);
}

TEST(Qft, MatchesDiscreteFourierTransform) {
  for (std::uint32_t m = 1; m <= 5; ++m) {
    const std::size_t dim = std::size_t{1} << m;
    const auto gates = hhl::qft(0, m);
    for (std::size_t k = 0; k < dim; ++k) {
      Circuit c{m, 0, 0, {}};
      for (std::uint32_t q = 0; q < m; ++q) {
        if ((k >> q) & 1) c.gates.push_back(Gate::single(GateKind::X, q));
      }
      c.gates.insert(c.gates.end(), gates.begin(), gates.end());
      const auto st = run(c);
      for (std::size_t j = 0; j < dim; ++j) {
        const Complex expect = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                          2 * pi * static_cast<double>(j * k) / static_cast<double>(dim));
        EXPECT_NEAR(std::abs(st.amplitudes[j] - expect), 0.0, 1e-12) << "m=" << m << " k=" << k;
      }
    }
  }
}

TEST(Depth, RandomCircuitHasRequestedDepth) {
  for (std::uint32_t d : {1u, 5u, 37u}) EXPECT_EQ(circuit_depth(random_circuit(5, d, d)), d);
}

TEST(Depth, AsapLayering) {
  Circuit c{3, 0, 0,
            {Gate::single(GateKind::H, 0), Gate::single(GateKind::H, 1), Gate::pair(GateKind::CNOT, 0, 1),
             Gate::single(GateKind::X, 2)}};
  EXPECT_EQ(circuit_depth(c), 2u);
  c.gates.push_back(Gate::dense({1, 2}, gate_matrix(Gate::pair(GateKind::SWAP, 0, 1))));
  EXPECT_EQ(circuit_depth(c), 2u + 16u);
}

TEST(Validate, RejectsMalformedCircuits) {
  EXPECT_THROW(validate(Circuit{2, 0, 0, {Gate::single(GateKind::X, 2)}}), ValidationError);
  EXPECT_THROW(validate(Circuit{2, 0, 0, {Gate::pair(GateKind::CNOT, 1, 1)}}), ValidationError);
  EXPECT_THROW(validate(Circuit{2, 5, 0, {}}), ValidationError);
  EXPECT_THROW(validate(Circuit{2, 0, 3, {}}), ValidationError);
  Matrix not_unitary{1, 1, 0, 1};
  EXPECT_THROW(validate(Circuit{2, 0, 0, {Gate::dense({0}, not_unitary)}}), ValidationError);
  Matrix wrong_size{1, 0, 0, 1};
  EXPECT_THROW(validate(Circuit{2, 0, 0, {Gate::dense({0, 1}, wrong_size)}}), ValidationError);
}

TEST(TextFormat, RoundTrip) {
  auto c = random_circuit(4, 12, 5);
  c.input_width = 2;
  c.gates.push_back(Gate::dense({3, 1}, gate_matrix(Gate::pair(GateKind::CPHASE, 0, 1, 0.123456789012345))));
  const auto text = format_circuit(c);
  const auto back = parse_circuit(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(format_circuit(back), text);
  EXPECT_EQ(circuit_digest(back), circuit_digest(c));
}

TEST(TextFormat, CommentsAndDefaults) {
  auto c = parse_circuit("# bell\nqubits 2 output 1\n\nH 0   # first\nCNOT 0,1\n");
  EXPECT_EQ(c.n_qubits, 2u);
  EXPECT_EQ(c.input_width, 0u);
  ASSERT_EQ(c.gates.size(), 2u);
  EXPECT_EQ(c.gates[1].targets, (std::vector<std::uint32_t>{0, 1}));
}

TEST(TextFormat, Errors) {
  EXPECT_THROW(parse_circuit(""), FormatError);
  EXPECT_THROW(parse_circuit("qubits 2 output 0\nFOO 0\n"), FormatError);
  EXPECT_THROW(parse_circuit("qubits 2 output 0\nRX 0\n"), FormatError);
  EXPECT_THROW(parse_circuit("qubits 2 output 0\nCNOT 0\n"), ValidationError);
  EXPECT_THROW(parse_circuit("qubits 2 output 0\nDENSE_UNITARY 0\n1,0 0,0\n"), FormatError);
  EXPECT_THROW(parse_input("01x"), FormatError);
  EXPECT_EQ(parse_input(" 0 1\n1 "), (InputBits{0, 1, 1}));
  EXPECT_EQ(format_input({1, 0, 1}), "101\n");
}

TEST(Digest, SensitiveToEveryField) {
  auto c = random_circuit(3, 5, 1);
  const auto base = circuit_digest(c);
  auto angle = c;
  for (auto& g : angle.gates) {
    if (has_angle(g.kind)) {
      g.angle = std::nextafter(g.angle, 10.0);
      break;
    }
  }
  EXPECT_NE(circuit_digest(angle), base);
  auto out = c;
  out.output_qubit = 0;
  EXPECT_NE(circuit_digest(out), base);
  auto width = c;
  width.input_width = 1;
  EXPECT_NE(circuit_digest(width), base);
  EXPECT_NE(input_digest({0, 1}), input_digest({1, 0}));
  EXPECT_NE(input_digest({0}), input_digest({0, 0}));
}

}  // namespace
}  // namespace pvqc::qsim
