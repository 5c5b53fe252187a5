#pragma once

#include "qpe/graph.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace qpe {

using cplx = std::complex<double>;

inline constexpr std::size_t default_qubit_cap = 20;

/// Statevector over 2^N basis states. Bit i of the index addresses qubit i;
/// |0> has Z = +1 and |1> has Z = -1.
class QuantumState {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit QuantumState(std::size_t num_qubits, std::size_t cap = default_qubit_cap);

  static QuantumState basis(std::size_t num_qubits, std::uint64_t index,
                            std::size_t cap = default_qubit_cap);
  /// Validates length 2^N and unit norm (1e-10).
  static QuantumState from_amplitudes(Eigen::VectorXcd amplitudes,
                                      std::size_t cap = default_qubit_cap);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  QuantumState() = default;
  std::size_t n_ = 0;
  Eigen::VectorXcd amps_;
};

enum class Mixer { sum_y, sum_x };
enum class GraphHamiltonian { ising, xy };
/// n_i = (I - Z_i)/2 or (I + Z_i)/2.
enum class Occupation { minus_z, plus_z };

std::string_view to_string(Mixer m);
std::string_view to_string(GraphHamiltonian h);
std::string_view to_string(Occupation o);

/// Layered schedule (theta_0, t_1, theta_1, ..., t_p, theta_p).
struct EvolutionParams {
  std::vector<double> schedule;
  Mixer mixer = Mixer::sum_y;
  GraphHamiltonian hamiltonian = GraphHamiltonian::ising;
  /// Onsite term -delta * sum Z_i of the Ising Hamiltonian.
  double delta = 0.0;
  Occupation occupation = Occupation::minus_z;

  std::size_t layers() const { return schedule.size() / 2; }
  void validate() const;
};

/// U = e^{-i theta_p H_M} e^{-i t_p H_G} ... e^{-i t_1 H_G} e^{-i theta_0 H_M}
/// applied to psi0 (rightmost factor first), with
///   H_M = sum_i Y_i (or X_i),
///   H_G = sum_{ij} J_ij Z_i Z_j - delta sum_i Z_i   (ising)
///   H_G = sum_{ij} J_ij (X_i X_j + Y_i Y_j)         (xy).
QuantumState build_graph_state(const Graph& g, const EvolutionParams& params,
                               const QuantumState& psi0);

/// In-place layer primitives.
void apply_mixer(QuantumState& psi, Mixer mixer, double theta);
void apply_ising(QuantumState& psi, const Graph& g, double t, double delta);
void apply_xy(QuantumState& psi, const Graph& g, double t);

/// Diagonal of the Ising Hamiltonian over the computational basis.
Eigen::VectorXd ising_diagonal(const Graph& g, double delta);

/// y = H_XY x over the full 2^N space.
Eigen::VectorXcd apply_xy_hamiltonian(const Eigen::VectorXcd& x, const Graph& g);

enum class Pauli : char { X = 'X', Y = 'Y', Z = 'Z' };
using PauliString = std::vector<std::pair<std::size_t, Pauli>>;

/// Parses "Z0 Z1", "X3", "X0Y2" style strings.
PauliString parse_pauli_string(std::string_view text);

/// <psi|P|psi>. Repeated qubits are rejected.
double pauli_expectation(const QuantumState& psi, const PauliString& p);

/// Order: Z_iZ_j, X_iX_j, Y_iY_j, X_iZ_j, X_iY_j, Y_iZ_j, X_jZ_i, X_jY_i, Y_jZ_i.
using CorrelatorVector = std::array<double, 9>;
CorrelatorVector correlator_vector(const QuantumState& psi, std::size_t i, std::size_t j);

/// <n_i n_j> - <n_i><n_j> over the computational-basis distribution of psi.
Eigen::MatrixXd occupation_covariance(const QuantumState& psi, Occupation occ = Occupation::minus_z);

struct CovarianceConventions {
  Occupation occupation = Occupation::minus_z;
  Mixer mixer = Mixer::sum_y;
  std::size_t qubit_cap = default_qubit_cap;
};

/// Occupation covariance of the p = 1 state with schedule (theta, t, -theta)
/// built from |0...0> under the Ising Hamiltonian with onsite delta.
Eigen::MatrixXd occupation_covariance_bruteforce(const Graph& g, double theta, double t,
                                                 double delta,
                                                 const CovarianceConventions& conv = {});

/// Basis-index permutation for qubit relabelling i -> pi[i].
Eigen::VectorXcd permute_amplitudes(const Eigen::VectorXcd& amps, std::span<const NodeId> pi);

}  // namespace qpe
