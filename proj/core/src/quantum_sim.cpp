#include "qpe/quantum_sim.hpp"

#include "qpe/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

namespace qpe {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw CapacityError("statevector needs " + std::to_string(n) +
                        " qubits, above the simulation cap of " + std::to_string(cap));
  if (n > 62) throw CapacityError("statevector index would overflow 64 bits");
}

Eigen::Index dim_of(std::size_t n) { return Eigen::Index{1} << n; }

}  // namespace

QuantumState::QuantumState(std::size_t num_qubits, std::size_t cap) : n_(num_qubits) {
  check_cap(num_qubits, cap);
  amps_ = Eigen::VectorXcd::Zero(dim_of(num_qubits));
  amps_[0] = 1.0;
}

QuantumState QuantumState::basis(std::size_t num_qubits, std::uint64_t index, std::size_t cap) {
  QuantumState s(num_qubits, cap);
  if (index >= static_cast<std::uint64_t>(s.dimension())) throw_data("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

QuantumState QuantumState::from_amplitudes(Eigen::VectorXcd amplitudes, std::size_t cap) {
  const auto d = static_cast<std::uint64_t>(amplitudes.size());
  if (d == 0 || (d & (d - 1)) != 0) throw_data("amplitude vector length must be a power of two");
  const auto n = static_cast<std::size_t>(std::countr_zero(d));
  check_cap(n, cap);
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw_data("state is not normalized");
  QuantumState s;
  s.n_ = n;
  s.amps_ = std::move(amplitudes);
  return s;
}

std::string_view to_string(Mixer m) { return m == Mixer::sum_y ? "sum_y" : "sum_x"; }
std::string_view to_string(GraphHamiltonian h) {
  return h == GraphHamiltonian::ising ? "ising" : "xy";
}
std::string_view to_string(Occupation o) {
  return o == Occupation::minus_z ? "(I-Z)/2" : "(I+Z)/2";
}

void EvolutionParams::validate() const {
  if (schedule.size() < 3 || schedule.size() % 2 == 0)
    throw_data("evolution schedule must have length 2p+1 with p >= 1, got " +
               std::to_string(schedule.size()));
  for (double x : schedule)
    if (!std::isfinite(x)) throw_data("evolution schedule contains a non-finite value");
  if (!std::isfinite(delta)) throw_data("delta must be finite");
}

void apply_mixer(QuantumState& psi, Mixer mixer, double theta) {
  if (theta == 0.0) return;
  const double c = std::cos(theta), s = std::sin(theta);
  auto& a = psi.amplitudes();
  const auto dim = a.size();
  for (std::size_t q = 0; q < psi.num_qubits(); ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const cplx a0 = a[x], a1 = a[x | bit];
      if (mixer == Mixer::sum_y) {
        // e^{-i theta Y} = [[c, -s], [s, c]]
        a[x] = c * a0 - s * a1;
        a[x | bit] = s * a0 + c * a1;
      } else {
        // e^{-i theta X} = [[c, -is], [-is, c]]
        const cplx mis(0.0, -s);
        a[x] = c * a0 + mis * a1;
        a[x | bit] = mis * a0 + c * a1;
      }
    }
  }
}

Eigen::VectorXd ising_diagonal(const Graph& g, double delta) {
  const auto dim = dim_of(g.num_nodes());
  Eigen::VectorXd e(dim);
  const auto& edges = g.edges();
  const auto& w = g.edge_weights();
  for (Eigen::Index x = 0; x < dim; ++x) {
    double v = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const bool differ = (((x >> edges[k].u) ^ (x >> edges[k].v)) & 1) != 0;
      v += differ ? -w[k] : w[k];
    }
    const int ones = std::popcount(static_cast<std::uint64_t>(x));
    v -= delta * static_cast<double>(static_cast<int>(g.num_nodes()) - 2 * ones);
    e[x] = v;
  }
  return e;
}

void apply_ising(QuantumState& psi, const Graph& g, double t, double delta) {
  if (psi.num_qubits() != g.num_nodes()) throw_data("state and graph sizes differ");
  if (t == 0.0) return;
  const Eigen::VectorXd e = ising_diagonal(g, delta);
  auto& a = psi.amplitudes();
  for (Eigen::Index x = 0; x < a.size(); ++x) a[x] *= std::polar(1.0, -t * e[x]);
}

Eigen::VectorXcd apply_xy_hamiltonian(const Eigen::VectorXcd& x, const Graph& g) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
  const auto& edges = g.edges();
  const auto& w = g.edge_weights();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Eigen::Index bu = Eigen::Index{1} << edges[k].u;
    const Eigen::Index bv = Eigen::Index{1} << edges[k].v;
    const double amp = 2.0 * w[k];
    for (Eigen::Index s = 0; s < x.size(); ++s) {
      if (((s & bu) != 0) != ((s & bv) != 0)) y[s ^ bu ^ bv] += amp * x[s];
    }
  }
  return y;
}

void apply_xy(QuantumState& psi, const Graph& g, double t) {
  if (psi.num_qubits() != g.num_nodes()) throw_data("state and graph sizes differ");
  if (t == 0.0) return;
  double bound = 0.0;
  for (double w : g.edge_weights()) bound += 2.0 * std::abs(w);
  if (bound == 0.0) return;
  const auto steps = static_cast<int>(std::ceil(std::abs(t) * bound));
  const double dt = t / steps;
  auto& a = psi.amplitudes();
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = a;
    Eigen::VectorXcd acc = a;
    for (int m = 1; m < 80; ++m) {
      term = apply_xy_hamiltonian(term, g) * cplx(0.0, -dt / m);
      acc += term;
      if (term.norm() < 1e-18) break;
    }
    a = acc;
  }
}

QuantumState build_graph_state(const Graph& g, const EvolutionParams& params,
                               const QuantumState& psi0) {
  params.validate();
  if (psi0.num_qubits() != g.num_nodes())
    throw_data("initial state has " + std::to_string(psi0.num_qubits()) +
               " qubits but the graph has " + std::to_string(g.num_nodes()) + " nodes");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw_data("initial state is not normalized");
  QuantumState psi = psi0;
  apply_mixer(psi, params.mixer, params.schedule[0]);
  for (std::size_t k = 1; k < params.schedule.size(); k += 2) {
    if (params.hamiltonian == GraphHamiltonian::ising)
      apply_ising(psi, g, params.schedule[k], params.delta);
    else
      apply_xy(psi, g, params.schedule[k]);
    apply_mixer(psi, params.mixer, params.schedule[k + 1]);
  }
  return psi;
}

PauliString parse_pauli_string(std::string_view text) {
  PauliString out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '*' || c == ',') {
      ++i;
      continue;
    }
    if (c != 'X' && c != 'Y' && c != 'Z')
      throw_data("invalid Pauli symbol '" + std::string(1, c) + "' at offset " + std::to_string(i));
    ++i;
    std::size_t q = 0, digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      q = q * 10 + static_cast<std::size_t>(text[i] - '0');
      ++i;
      ++digits;
    }
    if (digits == 0) throw_data("Pauli symbol without qubit index at offset " + std::to_string(i));
    out.emplace_back(q, static_cast<Pauli>(c));
  }
  return out;
}

double pauli_expectation(const QuantumState& psi, const PauliString& p) {
  std::uint64_t flip = 0, zmask = 0, ymask = 0, seen = 0;
  for (auto [q, op] : p) {
    if (q >= psi.num_qubits())
      throw_data("Pauli index " + std::to_string(q) + " out of range for " +
                 std::to_string(psi.num_qubits()) + " qubits");
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw_data("qubit " + std::to_string(q) + " repeated in Pauli string");
    seen |= bit;
    if (op == Pauli::X) flip |= bit;
    if (op == Pauli::Z) zmask |= bit;
    if (op == Pauli::Y) {
      flip |= bit;
      ymask |= bit;
    }
  }
  const auto& a = psi.amplitudes();
  // Y|0> = i|1>, Y|1> = -i|0>: phase i^{#Y} * (-1)^{#Y on ones}.
  static constexpr cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = ipow[std::popcount(ymask) % 4];
  cplx acc = 0.0;
  for (Eigen::Index x = 0; x < a.size(); ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    const int sign_bits = std::popcount(ux & (zmask | ymask));
    const double sign = (sign_bits & 1) ? -1.0 : 1.0;
    acc += std::conj(a[static_cast<Eigen::Index>(ux ^ flip)]) * a[x] * sign;
  }
  return (base * acc).real();
}

CorrelatorVector correlator_vector(const QuantumState& psi, std::size_t i, std::size_t j) {
  if (i == j) throw_data("correlator_vector needs i != j");
  using P = Pauli;
  const std::array<std::pair<P, P>, 9> terms = {{
      {P::Z, P::Z}, {P::X, P::X}, {P::Y, P::Y},
      {P::X, P::Z}, {P::X, P::Y}, {P::Y, P::Z},
  }};
  CorrelatorVector out{};
  for (std::size_t m = 0; m < 6; ++m)
    out[m] = pauli_expectation(psi, {{i, terms[m].first}, {j, terms[m].second}});
  out[6] = pauli_expectation(psi, {{j, P::X}, {i, P::Z}});
  out[7] = pauli_expectation(psi, {{j, P::X}, {i, P::Y}});
  out[8] = pauli_expectation(psi, {{j, P::Y}, {i, P::Z}});
  return out;
}

Eigen::MatrixXd occupation_covariance(const QuantumState& psi, Occupation occ) {
  const auto n = static_cast<Eigen::Index>(psi.num_qubits());
  const auto& a = psi.amplitudes();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> occ_bits(static_cast<std::size_t>(n));
  for (Eigen::Index x = 0; x < a.size(); ++x) {
    const double p = std::norm(a[x]);
    if (p == 0.0) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool one = ((x >> i) & 1) != 0;
      occ_bits[static_cast<std::size_t>(i)] = (occ == Occupation::minus_z) == one ? 1.0 : 0.0;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ni = occ_bits[static_cast<std::size_t>(i)];
      if (ni == 0.0) continue;
      mean[i] += p;
      for (Eigen::Index j = 0; j < n; ++j) second(i, j) += p * occ_bits[static_cast<std::size_t>(j)];
    }
  }
  Eigen::MatrixXd cov = second - mean * mean.transpose();
  return 0.5 * (cov + cov.transpose());
}

Eigen::MatrixXd occupation_covariance_bruteforce(const Graph& g, double theta, double t,
                                                 double delta, const CovarianceConventions& conv) {
  EvolutionParams params;
  params.schedule = {theta, t, -theta};
  params.mixer = conv.mixer;
  params.delta = delta;
  params.occupation = conv.occupation;
  const QuantumState psi = build_graph_state(g, params, QuantumState(g.num_nodes(), conv.qubit_cap));
  return occupation_covariance(psi, conv.occupation);
}

Eigen::VectorXcd permute_amplitudes(const Eigen::VectorXcd& amps, std::span<const NodeId> pi) {
  const auto n = pi.size();
  if (amps.size() != dim_of(n)) throw_data("permutation size does not match the state");
  Eigen::VectorXcd out(amps.size());
  for (Eigen::Index x = 0; x < amps.size(); ++x) {
    Eigen::Index y = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((x >> i) & 1) y |= Eigen::Index{1} << pi[i];
    out[y] = amps[x];
  }
  return out;
}

}  // namespace qpe
