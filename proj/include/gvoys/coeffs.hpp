#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gvoys/graph.hpp"

namespace gvoys {

class SchemeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The convergence constant's series does not settle under truncation.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SchemeKind { geometric, exponential, custom };

/// Truncated kernel coefficients mu_0..mu_T together with the modulation
/// sequence f satisfying (f * f)_k == mu_k. Only schemes with f >= 0 are
/// representable.
class CoefficientScheme {
 public:
  CoefficientScheme(SchemeKind kind, double lambda, std::vector<double> mu, std::vector<double> f);

  SchemeKind kind() const { return kind_; }
  /// Rate parameter; zero for custom schemes.
  double lambda() const { return lambda_; }
  std::span<const double> mu() const { return mu_; }
  std::span<const double> f() const { return f_; }
  /// sqrt(f_l), the per-step deposit modulation.
  std::span<const double> sqrt_f() const { return sqrt_f_; }
  int truncation() const { return static_cast<int>(mu_.size()) - 1; }

  /// Stable fingerprint of (kind, mu, f), used for provenance checks.
  std::uint64_t fingerprint() const;
  /// geometric:<lambda>, exponential:<lambda> or custom.
  std::string describe() const;

 private:
  SchemeKind kind_;
  double lambda_;
  std::vector<double> mu_;
  std::vector<double> f_;
  std::vector<double> sqrt_f_;
};

inline constexpr int kDefaultTruncation = 40;

/// Discrete deconvolution: the f with f_0 > 0 and sum_p f_p f_{k-p} = mu_k.
/// Throws SchemeError when mu_0 <= 0 or some f_k < -1e-12.
std::vector<double> deconvolve(std::span<const double> mu);

/// (a * b)_k for k < min(|a|, |b|).
std::vector<double> self_convolve(std::span<const double> f);

CoefficientScheme geometric_scheme(double lambda, int truncation = kDefaultTruncation);
CoefficientScheme exponential_scheme(double lambda, int truncation = kDefaultTruncation);
/// mu given explicitly; its length fixes the truncation.
CoefficientScheme custom_scheme(std::vector<double> mu);

/// Parses geometric:<lambda>, exponential:<lambda> or custom:<path>. The
/// custom file holds whitespace-separated mu values; it is truncated or
/// zero-padded to `truncation`.
CoefficientScheme parse_scheme(std::string_view spec, int truncation = kDefaultTruncation);
std::vector<double> read_mu_file(const std::string& path);

/// c(G) = sum_l sqrt|f_l| (max_degree / sqrt(1 - p_halt))^l over the truncated
/// sequence. Heuristic divergence check: if the last five term ratios are
/// all >= 1 the series is declared non-summable and DivergenceError is thrown.
double convergence_constant(const Graph& g, const CoefficientScheme& scheme, double p_halt);

}  // namespace gvoys
