#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qpe {

/// N x N x K real tensor of pair encodings P_{i,j,k} plus a metadata record.
///
/// Values are stored with i outermost and k innermost, which is also the
/// on-disk order of the QPET format.
class PETensor {
 public:
  PETensor() = default;
  PETensor(std::size_t n, std::size_t k, nlohmann::json metadata = nlohmann::json::object());

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_slices() const noexcept { return k_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return values_[(i * n_ + j) * k_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * n_ + j) * k_ + k];
  }

  Eigen::MatrixXd slice(std::size_t k) const;
  void set_slice(std::size_t k, const Eigen::MatrixXd& m);

  /// The length-K vector P_{i,j,:}.
  std::vector<double> fiber(std::size_t i, std::size_t j) const;

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  const nlohmann::json& metadata() const noexcept { return metadata_; }
  nlohmann::json& metadata() noexcept { return metadata_; }

  /// Throws NumericError if any value is NaN or infinite.
  void check_finite() const;

  friend bool operator==(const PETensor& a, const PETensor& b);

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<double> values_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

/// Stores an N x K node-level encoding as a tensor whose diagonal fibers
/// P_{i,i,:} hold row i; off-diagonal entries are zero.
PETensor diagonal_tensor(const Eigen::MatrixXd& node_values, nlohmann::json metadata);

/// QPET binary format:
///   "QPET" | u32 version | u32 N | u32 N | u32 K | N*N*K f64 | u32 len | metadata JSON
/// All integers and floats little-endian.
inline constexpr std::uint32_t qpet_version = 1;

std::string encode_qpet(const PETensor& t);
PETensor decode_qpet(std::string_view bytes);
void save_qpet(const PETensor& t, const std::filesystem::path& path);
PETensor load_qpet(const std::filesystem::path& path);

}  // namespace qpe
