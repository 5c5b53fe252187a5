#pragma once

#include "qpe/graph.hpp"
#include "qpe/quantum_sim.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qpe {

using Gamma = std::array<double, 9>;

/// Selects the <Z_i Z_j> component.
inline constexpr Gamma gamma_zz = {1, 0, 0, 0, 0, 0, 0, 0, 0};

/// A_ij = gamma . C_ij on the graph state built from |0...0>. The diagonal
/// is gamma_0 + gamma_1 + gamma_2. `softmax` normalises every row.
Eigen::MatrixXd quantum_attention_matrix(const Graph& g, const EvolutionParams& params, const Gamma& gamma,
                                         bool softmax = false, std::size_t qubit_cap = default_qubit_cap);

/// Same matrix from an already built state.
Eigen::MatrixXd attention_from_state(const QuantumState& psi, const Gamma& gamma, bool softmax = false);

using Activation = std::function<double(double)>;
double relu(double x);
double identity_activation(double x);

/// sigma((A H || H) W) with W of shape 2d x d_h.
Eigen::MatrixXd gtqc_layer_forward(const Eigen::MatrixXd& H, const Eigen::MatrixXd& A, const Eigen::MatrixXd& W,
                                   const Activation& activation = relu);

/// Column-wise concatenation of one layer output per (A_h, W_h).
Eigen::MatrixXd gtqc_multihead_forward(const Eigen::MatrixXd& H, std::span<const Eigen::MatrixXd> A,
                                       std::span<const Eigen::MatrixXd> W, const Activation& activation = relu);

/// f(x) = b_0 + sum_{w=1}^{n} a_w sin(w u x) + b_w cos(w u x).
struct TrigPolynomial {
  double u = 1.0;
  Eigen::VectorXd a;  // a[0] unused (0)
  Eigen::VectorXd b;

  double value(double x) const;
  double derivative(double x) const;
};

struct SpectralOptions {
  /// Fundamental frequency; samples cover one period 2 pi / u.
  double u = 1.0;
  /// Number of samples; 0 means the minimum 2 n + 1.
  std::size_t num_points = 0;
};

/// Fits the trigonometric polynomial through equispaced samples of f and
/// returns it; derivative() gives df/dx. Throws NumericError if the system is
/// underdetermined or ill-conditioned.
TrigPolynomial spectral_gradient(const std::function<double(double)>& f, std::size_t n_freq,
                                 const SpectralOptions& options = {});

struct RandomHeadOptions {
  std::size_t layers = 1;
  Gamma gamma = gamma_zz;
  bool softmax = false;
  GraphHamiltonian hamiltonian = GraphHamiltonian::ising;
  double delta = 0.0;
  std::size_t qubit_cap = default_qubit_cap;
};

struct RandomHead {
  EvolutionParams params;
  Eigen::MatrixXd attention;
};

/// Head h draws its schedule uniformly from [0, 2 pi) with stream seed
/// derive_seed(seed, h).
EvolutionParams draw_head_params(std::size_t layers, std::uint64_t seed, std::size_t head,
                                 const RandomHeadOptions& options = {});

std::vector<RandomHead> random_heads(const Graph& g, std::size_t n_heads, std::uint64_t seed,
                                     const RandomHeadOptions& options = {});

}  // namespace qpe
