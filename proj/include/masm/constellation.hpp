#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

namespace masm {

using cplx = std::complex<double>;

/// Finite unit-power alphabet with zero mean and zero pseudo-variance.
class Constellation {
 public:
  /// Validates unit power, zero mean and zero pseudo-variance to 1e-12.
  Constellation(std::string name, std::vector<cplx> points);

  const std::string& name() const noexcept { return name_; }
  const std::vector<cplx>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// E|x|^4.
  double mu4() const noexcept { return mu4_; }
  bool constant_modulus() const noexcept;

 private:
  Constellation(std::string name, std::vector<cplx> points, double mu4);
  friend Constellation make_qam(std::size_t m);

  std::string name_;
  std::vector<cplx> points_;
  double mu4_;
};

Constellation make_psk(std::size_t m);
Constellation make_qam(std::size_t m);

/// Exact fourth moment of square M-QAM.
boost::rational<std::int64_t> qam_mu4_exact(std::size_t m);

/// qpsk, 8psk, psk<M>, 16qam, qam<M>, ... (case-insensitive).
Constellation constellation_by_name(const std::string& name);

Constellation constellation_from_json(const nlohmann::json& j);
Constellation read_constellation_file(const std::filesystem::path& path);

std::vector<cplx> sample_symbols(const Constellation& c, std::size_t count, std::uint64_t seed);

}  // namespace masm
