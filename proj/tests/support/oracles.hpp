#pragma once

#include "qpe/graph.hpp"
#include "qpe/random.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace qpe::testing {

/// G(n, p) with optional uniform weights in [0.5, 1.5].
Graph random_graph(std::size_t n, double p, Rng& rng, bool weighted = false);

/// Random graph with at least one edge.
Graph random_nonempty_graph(std::size_t n, double p, Rng& rng, bool weighted = false);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

/// Dense 2^N operator of a Pauli product (qubit i is bit i of the index).
Eigen::MatrixXcd dense_pauli(std::size_t n, const std::vector<std::pair<std::size_t, char>>& ops);

/// Dense Hamiltonians from Kronecker products.
Eigen::MatrixXcd dense_ising(const Graph& g, double delta);
Eigen::MatrixXcd dense_xy(const Graph& g);
Eigen::MatrixXcd dense_mixer(std::size_t n, char axis);

/// e^{-i t H} through the matrix exponential.
Eigen::MatrixXcd expm_minus_i(const Eigen::MatrixXcd& h, double t);

/// Brute-force maximum independent sets, each as a bitstring over 2^N.
std::vector<std::vector<std::uint8_t>> brute_force_mis(const Graph& g);

std::vector<NodeId> random_permutation_of(std::size_t n, Rng& rng);

std::filesystem::path fixture_dir();

}  // namespace qpe::testing
