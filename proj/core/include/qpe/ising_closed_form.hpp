#pragma once

#include "qpe/graph.hpp"
#include "qpe/pe_tensor.hpp"

#include <Eigen/Dense>

#include <span>

namespace qpe {

/// Mixing angle theta, interaction time t, detuning delta. Couplings J come
/// from the graph's edge weights.
struct IsingPEParams {
  double theta = 0.0;
  double t = 0.0;
  double delta = 0.0;
};

/// Exact occupation covariance <n_i n_j> - <n_i><n_j> of
///   e^{+i theta sum Y} e^{-i t H} e^{-i theta sum Y} |0...0>,
///   H = sum J_ij Z_i Z_j - delta sum Z_i,
/// evaluated in O(sum of pair neighbourhood sizes) per entry. The diagonal
/// holds the variances. Pairs at distance greater than two are exactly zero.
Eigen::MatrixXd closed_form_covariance(const Graph& g, const IsingPEParams& params);

/// One slice per parameter triple.
PETensor closed_form_pe_tensor(const Graph& g, std::span<const IsingPEParams> params);

}  // namespace qpe
