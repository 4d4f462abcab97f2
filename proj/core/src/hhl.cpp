#include "pvqc/hhl.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "pvqc/error.hpp"

namespace pvqc::hhl {
namespace {

using std::numbers::pi;
using qsim::Gate;
using qsim::GateKind;

Eigen::MatrixXcd to_eigen(const Matrix& m, std::size_t n) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r * n + c];
  }
  return out;
}

Matrix from_eigen(const Eigen::MatrixXcd& m) {
  Matrix out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

// Unitary whose first column is b.
Matrix state_prep(const std::vector<Complex>& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Identity(n, n);
  Eigen::Index pivot = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (std::abs(b[static_cast<std::size_t>(i)]) > std::abs(b[static_cast<std::size_t>(pivot)])) pivot = i;
  }
  // Put b first, then the standard basis without the vector b leans on most.
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, 0) = b[static_cast<std::size_t>(i)];
  for (Eigen::Index c = 1, e = 0; c < n; ++e) {
    if (e == pivot) continue;
    m.col(c++) = basis.col(e);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  // Q's first column is b up to a phase; rotate it back.
  Complex overlap = q.col(0).dot(m.col(0));
  q.col(0) *= overlap / std::abs(overlap);
  return from_eigen(q);
}

// e^{i A t scale}, as V diag(e^{i lambda t scale}) V^dagger.
Eigen::MatrixXcd evolution(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& eig, double t) {
  const auto& ev = eig.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) phases(i) = std::polar(1.0, ev(i) * t);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

// [[I, 0], [0, U]] with the control on the highest local bit.
Matrix controlled(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n).setIdentity();
  m.bottomRightCorner(n, n) = u;
  return from_eigen(m);
}

}  // namespace

std::vector<Gate> qft(std::uint32_t first, std::uint32_t m) {
  std::vector<Gate> gates;
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t target = first + m - 1 - i;
    gates.push_back(Gate::single(GateKind::H, target));
    for (std::uint32_t j = i + 1; j < m; ++j) {
      const std::uint32_t control = first + m - 1 - j;
      gates.push_back(Gate::pair(GateKind::CPHASE, control, target, pi / std::ldexp(1.0, static_cast<int>(j - i))));
    }
  }
  for (std::uint32_t i = 0; i < m / 2; ++i) {
    gates.push_back(Gate::pair(GateKind::SWAP, first + i, first + m - 1 - i));
  }
  return gates;
}

namespace {

std::vector<Gate> inverse_gates(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.push_back(qsim::inverse(*it));
  return out;
}

// Ancilla rotation by C / lambda_j for every clock value j.
Matrix inversion_rotation(std::uint32_t m) {
  const std::size_t clock_dim = std::size_t{1} << m;
  const std::size_t dim = 2 * clock_dim;
  Matrix u(dim * dim, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < clock_dim; ++j) {
    const auto signed_j = j <= clock_dim / 2 ? static_cast<double>(j)
                                            : static_cast<double>(j) - static_cast<double>(clock_dim);
    const double ratio = j == 0 ? 0.0 : 1.0 / signed_j;
    const double s = ratio;
    const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
    const std::size_t i0 = j;              // ancilla 0
    const std::size_t i1 = j + clock_dim;  // ancilla 1
    u[i0 * dim + i0] = c;
    u[i0 * dim + i1] = -s;
    u[i1 * dim + i0] = s;
    u[i1 * dim + i1] = c;
  }
  return u;
}

std::vector<double> spectrum(const Matrix& a, std::size_t n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(a, n), Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Complex parse_complex_token(std::string_view tok) {
  auto comma = tok.find(',');
  if (comma == std::string_view::npos) throw FormatError("hhl: expected 're,im', got '" + std::string(tok) + "'");
  auto num = [](std::string_view s) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw FormatError("hhl: bad number '" + std::string(s) + "'");
    return v;
  };
  return {num(tok.substr(0, comma)), num(tok.substr(comma + 1))};
}

}  // namespace

void Instance::validate() const {
  if (n < 2 || n > 16 || !std::has_single_bit(n)) throw ValidationError("hhl: N must be 2, 4, 8 or 16");
  if (a.size() != n * n) throw ValidationError("hhl: A has wrong size");
  if (b.size() != n) throw ValidationError("hhl: b has wrong size");
  if (clock_qubits < 2 || clock_qubits > 10) throw ValidationError("hhl: clock qubits must be in [2, 10]");
  if (!(evolution_time > 0) || !std::isfinite(evolution_time)) throw ValidationError("hhl: evolution time must be positive");
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (std::abs(a[r * n + c] - std::conj(a[c * n + r])) > 1e-9) throw ValidationError("hhl: A is not Hermitian");
    }
  }
  double norm = 0;
  for (const auto& z : b) norm += std::norm(z);
  if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) throw ValidationError("hhl: b is not normalized");
}

Layout layout(const Instance& inst) {
  const auto s = static_cast<std::uint32_t>(std::countr_zero(inst.n));
  return {s, inst.clock_qubits, s + inst.clock_qubits, s + inst.clock_qubits + 1};
}

double default_evolution_time(const Matrix& a, std::size_t n) {
  double max_abs = 0;
  for (double l : spectrum(a, n)) max_abs = std::max(max_abs, std::abs(l));
  if (max_abs == 0) throw ParameterError("hhl: A is zero");
  return pi / (2.0 * max_abs);
}

qsim::Circuit build(const Instance& inst) {
  inst.validate();
  const auto lay = layout(inst);
  const auto m = inst.clock_qubits;
  qsim::Circuit c;
  c.n_qubits = lay.total;
  c.output_qubit = lay.ancilla;

  std::vector<std::uint32_t> system(lay.system_qubits);
  for (std::uint32_t q = 0; q < lay.system_qubits; ++q) system[q] = q;

  c.gates.push_back(Gate::dense(system, state_prep(inst.b)));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(inst.a, inst.n));
  std::vector<Gate> qpe;
  for (std::uint32_t k = 0; k < m; ++k) qpe.push_back(Gate::single(GateKind::H, lay.system_qubits + k));
  for (std::uint32_t k = 0; k < m; ++k) {
    auto targets = system;
    targets.push_back(lay.system_qubits + k);
    qpe.push_back(Gate::dense(targets, controlled(evolution(eig, inst.evolution_time * std::ldexp(1.0, static_cast<int>(k))))));
  }
  auto iqft = inverse_gates(qft(lay.system_qubits, m));
  qpe.insert(qpe.end(), iqft.begin(), iqft.end());

  c.gates.insert(c.gates.end(), qpe.begin(), qpe.end());

  std::vector<std::uint32_t> rot_targets;
  for (std::uint32_t k = 0; k < m; ++k) rot_targets.push_back(lay.system_qubits + k);
  rot_targets.push_back(lay.ancilla);
  c.gates.push_back(Gate::dense(rot_targets, inversion_rotation(m)));

  auto unqpe = inverse_gates(qpe);
  c.gates.insert(c.gates.end(), unqpe.begin(), unqpe.end());
  return c;
}

Result solve(const Instance& inst) {
  const auto circuit = build(inst);
  const auto lay = layout(inst);
  const auto state = qsim::run(circuit);
  Result res;
  res.solution.resize(inst.n);
  const std::size_t anc_bit = std::size_t{1} << lay.ancilla;
  double p = 0;
  for (std::size_t i = 0; i < inst.n; ++i) {
    res.solution[i] = state.amplitudes[i | anc_bit];
    p += std::norm(res.solution[i]);
  }
  res.success_probability = p;
  if (!(p > 1e-14)) throw ParameterError("hhl: post-selection probability is zero (degenerate instance)");
  for (auto& z : res.solution) z /= std::sqrt(p);

  auto truth = classical_solve(inst.a, inst.b, inst.n);
  double tn = 0;
  for (const auto& z : truth) tn += std::norm(z);
  Complex overlap = 0;
  for (std::size_t i = 0; i < inst.n; ++i) overlap += std::conj(truth[i]) * res.solution[i];
  res.fidelity = std::norm(overlap) / tn;
  return res;
}

std::vector<Complex> classical_solve(const Matrix& a, const std::vector<Complex>& b, std::size_t n) {
  if (a.size() != n * n || b.size() != n) throw ParameterError("classical_solve: dimension mismatch");
  Matrix m = a;
  std::vector<Complex> x = b;
  double scale = 0;
  for (const auto& z : a) scale = std::max(scale, std::abs(z));
  if (scale == 0) throw ParameterError("classical_solve: singular matrix");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    }
    if (std::abs(m[piv * n + col]) <= 1e-14 * scale) throw ParameterError("classical_solve: singular matrix");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
      std::swap(x[piv], x[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m[r * n + col] / m[col * n + col];
      if (f == Complex{0.0, 0.0}) continue;
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
      x[r] -= f * x[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = x[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i * n + c] * x[c];
    x[i] = acc / m[i * n + i];
  }
  return x;
}

double residual_norm(const Matrix& a, const std::vector<Complex>& x, const std::vector<Complex>& b,
                     std::size_t n) {
  double sum = 0;
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc = -b[r];
    for (std::size_t c = 0; c < n; ++c) acc += a[r * n + c] * x[c];
    sum += std::norm(acc);
  }
  return std::sqrt(sum);
}

Instance representable_instance(std::size_t n, std::uint32_t clock_qubits, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  const auto clock_dim = std::int64_t{1} << clock_qubits;
  // Eigenvalues on the integer grid with the phase quantum set to one:
  // t = 2 pi / 2^m, lambda in [2^m / 8, 2^m / 4] (condition number <= 2).
  std::uniform_int_distribution<std::int64_t> level(std::max<std::int64_t>(1, clock_dim / 8),
                                                    std::max<std::int64_t>(2, clock_dim / 4));
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex{normal(gen), normal(gen)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::VectorXd lambda(dim);
  for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = static_cast<double>(level(gen));
  Eigen::MatrixXcd a = q * lambda.cast<Complex>().asDiagonal() * q.adjoint();
  a = (a + a.adjoint()).eval() * 0.5;

  Instance inst;
  inst.n = n;
  inst.a = from_eigen(a);
  inst.b.resize(n);
  double norm = 0;
  for (auto& z : inst.b) {
    z = Complex{normal(gen), normal(gen)};
    norm += std::norm(z);
  }
  for (auto& z : inst.b) z /= std::sqrt(norm);
  inst.clock_qubits = clock_qubits;
  inst.evolution_time = 2.0 * pi / static_cast<double>(clock_dim);
  return inst;
}

Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  if (lines.empty()) throw FormatError("hhl: empty instance");
  auto tokens = [](const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> out;
    for (std::string t; ls >> t;) out.push_back(t);
    return out;
  };
  Instance inst;
  auto head = tokens(lines[0]);
  if (head.size() != 1) throw FormatError("hhl: first line must be N");
  try {
    inst.n = std::stoul(head[0]);
  } catch (const std::exception&) {
    throw FormatError("hhl: bad N");
  }
  if (inst.n < 2 || inst.n > 16) throw FormatError("hhl: N out of range");
  if (lines.size() < inst.n + 2) throw FormatError("hhl: expected N rows of A and a row of b");
  for (std::size_t r = 0; r < inst.n; ++r) {
    auto row = tokens(lines[1 + r]);
    if (row.size() != inst.n) throw FormatError("hhl: row of A has wrong length");
    for (const auto& t : row) inst.a.push_back(parse_complex_token(t));
  }
  auto brow = tokens(lines[1 + inst.n]);
  if (brow.size() != inst.n) throw FormatError("hhl: b has wrong length");
  double norm = 0;
  for (const auto& t : brow) {
    inst.b.push_back(parse_complex_token(t));
    norm += std::norm(inst.b.back());
  }
  if (norm == 0) throw FormatError("hhl: b is zero");
  for (auto& z : inst.b) z /= std::sqrt(norm);
  bool have_time = false;
  for (std::size_t li = inst.n + 2; li < lines.size(); ++li) {
    auto t = tokens(lines[li]);
    if (t.size() != 2) throw FormatError("hhl: unexpected line '" + lines[li] + "'");
    try {
      if (t[0] == "clock") {
        inst.clock_qubits = static_cast<std::uint32_t>(std::stoul(t[1]));
      } else if (t[0] == "time") {
        inst.evolution_time = std::stod(t[1]);
        have_time = true;
      } else {
        throw FormatError("hhl: unknown key '" + t[0] + "'");
      }
    } catch (const std::invalid_argument&) {
      throw FormatError("hhl: bad value for '" + t[0] + "'");
    }
  }
  if (!have_time) inst.evolution_time = default_evolution_time(inst.a, inst.n);
  inst.validate();
  return inst;
}

std::string format_instance(const Instance& inst) {
  std::ostringstream out;
  out.precision(17);
  out << inst.n << '\n';
  for (std::size_t r = 0; r < inst.n; ++r) {
    for (std::size_t c = 0; c < inst.n; ++c) {
      const auto& z = inst.a[r * inst.n + c];
      out << (c ? " " : "") << z.real() << ',' << z.imag();
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < inst.n; ++i) out << (i ? " " : "") << inst.b[i].real() << ',' << inst.b[i].imag();
  out << "\nclock " << inst.clock_qubits << "\ntime " << inst.evolution_time << '\n';
  return out.str();
}

}  // namespace pvqc::hhl
