#include "qpe/pe_tensor.hpp"

#include "qpe/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qpe {

static_assert(std::endian::native == std::endian::little,
              "QPET encoding assumes a little-endian host");

PETensor::PETensor(std::size_t n, std::size_t k, nlohmann::json metadata)
    : n_(n), k_(k), values_(n * n * k, 0.0), metadata_(std::move(metadata)) {
  if (k == 0) throw_data("PETensor needs at least one slice");
}

Eigen::MatrixXd PETensor::slice(std::size_t k) const {
  if (k >= k_) throw_data("slice index out of range");
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j, k);
  return m;
}

void PETensor::set_slice(std::size_t k, const Eigen::MatrixXd& m) {
  if (k >= k_) throw_data("slice index out of range");
  if (static_cast<std::size_t>(m.rows()) != n_ || static_cast<std::size_t>(m.cols()) != n_)
    throw_data("slice shape mismatch");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      (*this)(i, j, k) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

std::vector<double> PETensor::fiber(std::size_t i, std::size_t j) const {
  const auto* base = values_.data() + (i * n_ + j) * k_;
  return {base, base + k_};
}

void PETensor::check_finite() const {
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx])) {
      const std::size_t k = idx % k_;
      const std::size_t j = (idx / k_) % n_;
      const std::size_t i = idx / (k_ * n_);
      throw_numeric("non-finite PE value at (" + std::to_string(i) + "," +
                    std::to_string(j) + "," + std::to_string(k) + ")");
    }
  }
}

bool operator==(const PETensor& a, const PETensor& b) {
  return a.n_ == b.n_ && a.k_ == b.k_ && a.metadata_ == b.metadata_ &&
         std::memcmp(a.values_.data(), b.values_.data(), a.values_.size() * sizeof(double)) == 0;
}

PETensor diagonal_tensor(const Eigen::MatrixXd& node_values, nlohmann::json metadata) {
  const auto n = static_cast<std::size_t>(node_values.rows());
  const auto k = static_cast<std::size_t>(node_values.cols());
  metadata["layout"] = "diagonal";
  PETensor t(n, k, std::move(metadata));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < k; ++c)
      t(i, i, c) = node_values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
  return t;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

std::uint32_t get_u32(std::string_view bytes, std::size_t& pos) {
  if (pos + 4 > bytes.size()) throw_data("truncated QPET stream");
  std::uint32_t v;
  std::memcpy(&v, bytes.data() + pos, 4);
  pos += 4;
  return v;
}

}  // namespace

std::string encode_qpet(const PETensor& t) {
  if (t.num_nodes() > UINT32_MAX || t.num_slices() > UINT32_MAX)
    throw_data("tensor dimensions exceed the QPET range");
  const std::string meta = t.metadata().dump();
  std::string out;
  out.reserve(24 + t.values().size() * 8 + meta.size());
  out.append("QPET", 4);
  put_u32(out, qpet_version);
  put_u32(out, static_cast<std::uint32_t>(t.num_nodes()));
  put_u32(out, static_cast<std::uint32_t>(t.num_nodes()));
  put_u32(out, static_cast<std::uint32_t>(t.num_slices()));
  out.append(reinterpret_cast<const char*>(t.values().data()), t.values().size() * sizeof(double));
  put_u32(out, static_cast<std::uint32_t>(meta.size()));
  out.append(meta);
  return out;
}

PETensor decode_qpet(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "QPET") throw_data("not a QPET stream (bad magic)");
  std::size_t pos = 4;
  const auto version = get_u32(bytes, pos);
  if (version != qpet_version)
    throw_data("unsupported QPET version " + std::to_string(version));
  const auto n0 = get_u32(bytes, pos);
  const auto n1 = get_u32(bytes, pos);
  const auto k = get_u32(bytes, pos);
  if (n0 != n1) throw_data("QPET tensor is not square in its node dimensions");
  const std::size_t count = std::size_t{n0} * n0 * k;
  if (pos + count * sizeof(double) > bytes.size()) throw_data("truncated QPET payload");
  PETensor t(n0, k);
  std::memcpy(t.values().data(), bytes.data() + pos, count * sizeof(double));
  pos += count * sizeof(double);
  const auto len = get_u32(bytes, pos);
  if (pos + len != bytes.size()) throw_data("QPET metadata length does not match stream size");
  try {
    t.metadata() = nlohmann::json::parse(bytes.substr(pos, len));
  } catch (const nlohmann::json::parse_error& e) {
    throw_data(std::string("malformed QPET metadata: ") + e.what());
  }
  return t;
}

void save_qpet(const PETensor& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("cannot write " + path.string());
  const std::string bytes = encode_qpet(t);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

PETensor load_qpet(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_qpet(buf.str());
}

}  // namespace qpe
