#include "pvqc/qsim.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pvqc/clock.hpp"
#include "pvqc/crypto.hpp"
#include "pvqc/error.hpp"

namespace pvqc::qsim {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
  bool angle;
};

constexpr std::array<KindInfo, 15> kKinds{{
    {GateKind::X, "X", 1, false},
    {GateKind::Y, "Y", 1, false},
    {GateKind::Z, "Z", 1, false},
    {GateKind::H, "H", 1, false},
    {GateKind::S, "S", 1, false},
    {GateKind::T, "T", 1, false},
    {GateKind::RX, "RX", 1, true},
    {GateKind::RY, "RY", 1, true},
    {GateKind::RZ, "RZ", 1, true},
    {GateKind::PHASE, "PHASE", 1, true},
    {GateKind::CNOT, "CNOT", 2, false},
    {GateKind::CZ, "CZ", 2, false},
    {GateKind::SWAP, "SWAP", 2, false},
    {GateKind::CPHASE, "CPHASE", 2, true},
    {GateKind::DENSE_UNITARY, "DENSE_UNITARY", 0, false},
}};

const KindInfo& info(GateKind kind) { return kKinds[static_cast<std::size_t>(kind)]; }

// Plain complex multiply. std::complex's operator* goes through the
// NaN-recovering library routine, which dominates simulation time.
inline Complex mul(Complex x, Complex y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

void apply_1q(State& st, std::uint32_t q, const Matrix& m) {
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t dim = st.amplitudes.size();
  const Complex m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
  auto* a = st.amplitudes.data();
  for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
    for (std::size_t i = hi; i < hi + bit; ++i) {
      const Complex a0 = a[i];
      const Complex a1 = a[i + bit];
      a[i] = mul(m00, a0) + mul(m01, a1);
      a[i + bit] = mul(m10, a0) + mul(m11, a1);
    }
  }
}

void apply_dense(State& st, const std::vector<std::uint32_t>& targets, const Matrix& m) {
  const std::size_t k = targets.size();
  const std::size_t local = std::size_t{1} << k;
  std::vector<std::size_t> offsets(local, 0);
  std::size_t mask = 0;
  for (std::size_t l = 0; l < local; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      if (l >> j & 1) offsets[l] |= std::size_t{1} << targets[j];
    }
  }
  for (auto t : targets) mask |= std::size_t{1} << t;
  std::vector<Complex> in(local), out(local);
  auto* a = st.amplitudes.data();
  for (std::size_t base = 0; base < st.amplitudes.size(); ++base) {
    if ((base & mask) != 0) continue;
    for (std::size_t l = 0; l < local; ++l) in[l] = a[base | offsets[l]];
    for (std::size_t r = 0; r < local; ++r) {
      Complex acc = 0.0;
      const Complex* row = m.data() + r * local;
      for (std::size_t c = 0; c < local; ++c) acc += mul(row[c], in[c]);
      out[r] = acc;
    }
    for (std::size_t l = 0; l < local; ++l) a[base | offsets[l]] = out[l];
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::string_view what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw FormatError(std::string("circuit: bad ") + std::string(what) + " '" + std::string(tok) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view tok) {
  auto comma = tok.find(',');
  if (comma == std::string_view::npos) throw FormatError("expected complex 're,im', got '" + std::string(tok) + "'");
  return {parse_number<double>(tok.substr(0, comma), "real part"),
          parse_number<double>(tok.substr(comma + 1), "imaginary part")};
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string_view name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view n) {
  std::string upper(n);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& k : kKinds) {
    if (k.name == upper) return k.kind;
  }
  throw FormatError("unknown gate kind '" + std::string(n) + "'");
}

std::size_t arity(GateKind kind) { return info(kind).arity; }
bool has_angle(GateKind kind) { return info(kind).angle; }

Gate Gate::single(GateKind kind, std::uint32_t q, double angle) {
  return Gate{kind, {q}, angle, {}};
}

Gate Gate::pair(GateKind kind, std::uint32_t a, std::uint32_t b, double angle) {
  return Gate{kind, {a, b}, angle, {}};
}

Gate Gate::dense(std::vector<std::uint32_t> targets, Matrix matrix) {
  return Gate{GateKind::DENSE_UNITARY, std::move(targets), 0.0, std::move(matrix)};
}

State State::zero(std::uint32_t n_qubits) {
  if (n_qubits > kMaxQubits) throw ParameterError("state: too many qubits");
  State s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  s.amplitudes[0] = 1.0;
  return s;
}

double State::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum;
}

bool is_unitary(const Matrix& m, std::size_t dim, double tol) {
  if (m.size() != dim * dim) return false;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) acc += m[r * dim + k] * std::conj(m[c * dim + k]);
      const Complex expect = r == c ? 1.0 : 0.0;
      if (std::abs(acc - expect) > tol) return false;
    }
  }
  return true;
}

void validate(const Gate& g, std::uint32_t n_qubits) {
  const auto& ki = info(g.kind);
  if (g.kind == GateKind::DENSE_UNITARY) {
    if (g.targets.empty() || g.targets.size() > n_qubits) {
      throw ValidationError("DENSE_UNITARY: bad target count");
    }
    const std::size_t dim = std::size_t{1} << g.targets.size();
    if (g.matrix.size() != dim * dim) throw ValidationError("DENSE_UNITARY: matrix size mismatch");
    if (!is_unitary(g.matrix, dim)) throw ValidationError("DENSE_UNITARY: matrix is not unitary");
  } else {
    if (g.targets.size() != ki.arity) {
      throw ValidationError(std::string(ki.name) + ": expected " + std::to_string(ki.arity) + " target(s)");
    }
    if (!g.matrix.empty()) throw ValidationError(std::string(ki.name) + ": unexpected matrix");
  }
  if (!std::isfinite(g.angle)) throw ValidationError(std::string(ki.name) + ": angle is not finite");
  for (std::size_t i = 0; i < g.targets.size(); ++i) {
    if (g.targets[i] >= n_qubits) throw ValidationError(std::string(ki.name) + ": target out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (g.targets[i] == g.targets[j]) throw ValidationError(std::string(ki.name) + ": duplicate target");
    }
  }
}

void validate(const Circuit& c) {
  if (c.n_qubits == 0 || c.n_qubits > kMaxQubits) {
    throw ValidationError("circuit: qubit count must be in [1, 20]");
  }
  if (c.output_qubit >= c.n_qubits) throw ValidationError("circuit: output qubit out of range");
  if (c.input_width > c.n_qubits) throw ValidationError("circuit: input width exceeds qubit count");
  for (const auto& g : c.gates) validate(g, c.n_qubits);
}

Matrix gate_matrix(const Gate& g) {
  const double h = 1.0 / std::sqrt(2.0);
  const double half = g.angle / 2.0;
  const double c = std::cos(half), s = std::sin(half);
  switch (g.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Y: return {0, -kI, kI, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: return {h, h, h, -h};
    case GateKind::S: return {1, 0, 0, kI};
    case GateKind::T: return {1, 0, 0, std::polar(1.0, pi / 4)};
    case GateKind::RX: return {c, -kI * s, -kI * s, c};
    case GateKind::RY: return {c, -s, s, c};
    case GateKind::RZ: return {std::polar(1.0, -half), 0, 0, std::polar(1.0, half)};
    case GateKind::PHASE: return {1, 0, 0, std::polar(1.0, g.angle)};
    case GateKind::CNOT:
      // local bit 0 = control, bit 1 = target
      return {1, 0, 0, 0,
              0, 0, 0, 1,
              0, 0, 1, 0,
              0, 1, 0, 0};
    case GateKind::CZ:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
    case GateKind::SWAP:
      return {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    case GateKind::CPHASE:
      return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, std::polar(1.0, g.angle)};
    case GateKind::DENSE_UNITARY: return g.matrix;
  }
  throw ValidationError("unknown gate kind");
}

Gate inverse(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::S:
      out.kind = GateKind::PHASE;
      out.angle = -pi / 2;
      break;
    case GateKind::T:
      out.kind = GateKind::PHASE;
      out.angle = -pi / 4;
      break;
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::PHASE:
    case GateKind::CPHASE:
      out.angle = -g.angle;
      break;
    case GateKind::DENSE_UNITARY: {
      const std::size_t dim = std::size_t{1} << g.targets.size();
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) out.matrix[r * dim + c] = std::conj(g.matrix[c * dim + r]);
      }
      break;
    }
    default:
      break;  // self-inverse
  }
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(inverse(*it));
  return out;
}

void apply(State& st, const Gate& g) {
  auto* a = st.amplitudes.data();
  const std::size_t dim = st.amplitudes.size();
  switch (g.kind) {
    case GateKind::CNOT: {
      const std::size_t cb = std::size_t{1} << g.targets[0];
      const std::size_t tb = std::size_t{1} << g.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cb) && !(i & tb)) std::swap(a[i], a[i | tb]);
      }
      return;
    }
    case GateKind::CZ:
    case GateKind::CPHASE: {
      const std::size_t both = (std::size_t{1} << g.targets[0]) | (std::size_t{1} << g.targets[1]);
      const Complex phase = g.kind == GateKind::CZ ? Complex{-1.0, 0.0} : std::polar(1.0, g.angle);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & both) == both) a[i] = mul(a[i], phase);
      }
      return;
    }
    case GateKind::SWAP: {
      const std::size_t ab = std::size_t{1} << g.targets[0];
      const std::size_t bb = std::size_t{1} << g.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & ab) && !(i & bb)) std::swap(a[i], a[(i ^ ab) | bb]);
      }
      return;
    }
    case GateKind::DENSE_UNITARY:
      apply_dense(st, g.targets, g.matrix);
      return;
    default:
      apply_1q(st, g.targets[0], gate_matrix(g));
      return;
  }
}

State run(const Circuit& c) {
  validate(c);
  ++instrument::counters().simulator_runs;
  auto st = State::zero(c.n_qubits);
  for (const auto& g : c.gates) apply(st, g);
  return st;
}

State run(const Circuit& c, const InputBits& x) {
  if (x.size() != c.input_width) {
    throw ParameterError("input has " + std::to_string(x.size()) + " bits, circuit expects " +
                         std::to_string(c.input_width));
  }
  Circuit loaded;
  loaded.n_qubits = c.n_qubits;
  loaded.output_qubit = c.output_qubit;
  loaded.input_width = c.input_width;
  loaded.gates.reserve(c.gates.size() + x.size());
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) throw ParameterError("input bits must be 0 or 1");
    if (x[i] == 1) loaded.gates.push_back(Gate::single(GateKind::X, i));
  }
  loaded.gates.insert(loaded.gates.end(), c.gates.begin(), c.gates.end());
  return run(loaded);
}

double prob_one(const State& st, std::uint32_t qubit) {
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < st.amplitudes.size(); ++i) {
    if (i & bit) p += std::norm(st.amplitudes[i]);
  }
  return p;
}

double accept_prob(const Circuit& c, const InputBits& x) {
  return prob_one(run(c, x), c.output_qubit);
}

Circuit random_circuit(std::uint32_t n_qubits, std::uint32_t depth, std::uint64_t seed) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) throw ParameterError("random_circuit: 1 <= n <= 20");
  if (depth == 0) throw ParameterError("random_circuit: depth must be at least 1");
  static constexpr std::array<GateKind, 14> kPool{
      GateKind::X,  GateKind::Y,     GateKind::Z,    GateKind::H,  GateKind::S,
      GateKind::T,  GateKind::RX,    GateKind::RY,   GateKind::RZ, GateKind::PHASE,
      GateKind::CNOT, GateKind::CZ,  GateKind::SWAP, GateKind::CPHASE};
  static constexpr std::size_t kSingleKinds = 10;

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  Circuit c;
  c.n_qubits = n_qubits;
  c.output_qubit = n_qubits - 1;
  std::vector<std::uint32_t> order(n_qubits);
  for (std::uint32_t layer = 0; layer < depth; ++layer) {
    for (std::uint32_t q = 0; q < n_qubits; ++q) order[q] = q;
    std::shuffle(order.begin(), order.end(), gen);
    std::size_t pos = 0;
    while (pos < order.size()) {
      const std::size_t free = order.size() - pos;
      const std::size_t pool = free >= 2 ? kPool.size() : kSingleKinds;
      const GateKind kind = kPool[std::uniform_int_distribution<std::size_t>(0, pool - 1)(gen)];
      const double theta = has_angle(kind) ? angle(gen) : 0.0;
      if (arity(kind) == 2) {
        c.gates.push_back(Gate::pair(kind, order[pos], order[pos + 1], theta));
        pos += 2;
      } else {
        c.gates.push_back(Gate::single(kind, order[pos], theta));
        pos += 1;
      }
    }
  }
  return c;
}

std::uint64_t circuit_depth(const Circuit& c) {
  std::vector<std::uint64_t> busy_until(c.n_qubits, 0);
  std::uint64_t depth = 0;
  for (const auto& g : c.gates) {
    std::uint64_t start = 0;
    for (auto t : g.targets) start = std::max(start, busy_until.at(t));
    const std::uint64_t weight =
        g.kind == GateKind::DENSE_UNITARY ? std::uint64_t{1} << (2 * g.targets.size()) : 1;
    for (auto t : g.targets) busy_until[t] = start + weight;
    depth = std::max(depth, start + weight);
  }
  return depth;
}

Bytes canonical_encoding(const Circuit& c) {
  ByteWriter w;
  w.put("CIRCv1").u32(c.n_qubits).u32(c.output_qubit).u32(c.input_width);
  w.u32(static_cast<std::uint32_t>(c.gates.size()));
  for (const auto& g : c.gates) {
    w.u8(static_cast<std::uint8_t>(g.kind)).u32(static_cast<std::uint32_t>(g.targets.size()));
    for (auto t : g.targets) w.u32(t);
    w.f64(g.angle).u32(static_cast<std::uint32_t>(g.matrix.size()));
    for (const auto& z : g.matrix) w.f64(z.real()).f64(z.imag());
  }
  return std::move(w).bytes();
}

Digest circuit_digest(const Circuit& c) { return crypto::sha256(canonical_encoding(c)); }

Digest input_digest(const InputBits& x) {
  return crypto::Sha256()
      .update("INPUTv1")
      .update_u32(static_cast<std::uint32_t>(x.size()))
      .update(x)
      .finish();
}

Circuit parse_circuit(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto line = text.substr(start, end - start);
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (!line.empty()) lines.push_back(line);
      start = end + 1;
    }
  }
  if (lines.empty()) throw FormatError("circuit: missing header");
  Circuit c;
  {
    auto head = split_ws(lines[0]);
    if (head.size() != 4 && head.size() != 6) throw FormatError("circuit: header must be 'qubits N output K [inputs W]'");
    if (head[0] != "qubits" || head[2] != "output" || (head.size() == 6 && head[4] != "inputs")) {
      throw FormatError("circuit: header must be 'qubits N output K [inputs W]'");
    }
    c.n_qubits = parse_number<std::uint32_t>(head[1], "qubit count");
    c.output_qubit = parse_number<std::uint32_t>(head[3], "output qubit");
    if (head.size() == 6) c.input_width = parse_number<std::uint32_t>(head[5], "input width");
  }
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto tok = split_ws(lines[li]);
    if (tok.size() < 2) throw FormatError("circuit: gate line needs kind and targets: '" + std::string(lines[li]) + "'");
    Gate g;
    g.kind = gate_kind_from_name(tok[0]);
    std::string_view targets = tok[1];
    while (!targets.empty()) {
      auto comma = targets.find(',');
      g.targets.push_back(parse_number<std::uint32_t>(targets.substr(0, comma), "target"));
      if (comma == std::string_view::npos) break;
      targets.remove_prefix(comma + 1);
    }
    if (has_angle(g.kind)) {
      if (tok.size() != 3) throw FormatError(std::string(name(g.kind)) + ": expected an angle");
      g.angle = parse_number<double>(tok[2], "angle");
    } else if (tok.size() != 2) {
      throw FormatError(std::string(name(g.kind)) + ": unexpected trailing tokens");
    }
    if (g.kind == GateKind::DENSE_UNITARY) {
      if (g.targets.size() > kMaxQubits) throw FormatError("DENSE_UNITARY: too many targets");
      const std::size_t dim = std::size_t{1} << g.targets.size();
      for (std::size_t r = 0; r < dim; ++r) {
        if (++li >= lines.size()) throw FormatError("DENSE_UNITARY: missing matrix rows");
        auto row = split_ws(lines[li]);
        if (row.size() != dim) throw FormatError("DENSE_UNITARY: row has wrong number of entries");
        for (auto entry : row) g.matrix.push_back(parse_complex(entry));
      }
    }
    c.gates.push_back(std::move(g));
  }
  validate(c);
  return c;
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out << "qubits " << c.n_qubits << " output " << c.output_qubit;
  if (c.input_width != 0) out << " inputs " << c.input_width;
  out << '\n';
  for (const auto& g : c.gates) {
    out << name(g.kind) << ' ';
    for (std::size_t i = 0; i < g.targets.size(); ++i) out << (i ? "," : "") << g.targets[i];
    if (has_angle(g.kind)) out << ' ' << format_double(g.angle);
    out << '\n';
    if (g.kind == GateKind::DENSE_UNITARY) {
      const std::size_t dim = std::size_t{1} << g.targets.size();
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t col = 0; col < dim; ++col) {
          const auto& z = g.matrix[r * dim + col];
          out << (col ? " " : "") << format_double(z.real()) << ',' << format_double(z.imag());
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

InputBits parse_input(std::string_view text) {
  InputBits x;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch != '0' && ch != '1') throw FormatError("input: expected only '0' and '1'");
    x.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return x;
}

std::string format_input(const InputBits& x) {
  std::string out;
  for (auto b : x) out.push_back(b ? '1' : '0');
  out.push_back('\n');
  return out;
}

}  // namespace pvqc::qsim
