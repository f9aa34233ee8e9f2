#include "gvoys/coeffs.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gvoys/random.hpp"

namespace gvoys {

namespace {

constexpr double kNegativeTolerance = 1e-12;

void check_truncation(int truncation) {
  if (truncation < 1) throw SchemeError("truncation must be >= 1");
}

double parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw SchemeError("not a number: '" + std::string(text) + "'");
  return value;
}

}  // namespace

CoefficientScheme::CoefficientScheme(SchemeKind kind, double lambda, std::vector<double> mu,
                                     std::vector<double> f)
    : kind_(kind), lambda_(lambda), mu_(std::move(mu)), f_(std::move(f)) {
  if (mu_.empty() || mu_.size() != f_.size()) throw SchemeError("mu and f must have equal, nonzero length");
  if (!(mu_[0] > 0.0)) throw SchemeError("mu_0 must be positive");
  sqrt_f_.reserve(f_.size());
  for (double& x : f_) {
    if (x < -kNegativeTolerance)
      throw SchemeError("modulation sequence has a negative entry; not representable with real deposits");
    x = std::max(x, 0.0);
    sqrt_f_.push_back(std::sqrt(x));
  }
}

std::uint64_t CoefficientScheme::fingerprint() const {
  std::uint64_t h = key_hash({static_cast<std::uint64_t>(kind_), std::bit_cast<std::uint64_t>(lambda_)});
  for (double x : mu_) h = key_hash({h, std::bit_cast<std::uint64_t>(x)});
  for (double x : f_) h = key_hash({h, std::bit_cast<std::uint64_t>(x)});
  return h;
}

std::string CoefficientScheme::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
    case SchemeKind::geometric: out << "geometric:" << lambda_; break;
    case SchemeKind::exponential: out << "exponential:" << lambda_; break;
    case SchemeKind::custom: out << "custom"; break;
  }
  return out.str();
}

std::vector<double> deconvolve(std::span<const double> mu) {
  if (mu.empty() || !(mu[0] > 0.0)) throw SchemeError("deconvolution needs mu_0 > 0");
  std::vector<double> f(mu.size(), 0.0);
  f[0] = std::sqrt(mu[0]);
  for (std::size_t k = 1; k < mu.size(); ++k) {
    double cross = 0.0;
    for (std::size_t p = 1; p < k; ++p) cross += f[p] * f[k - p];
    f[k] = (mu[k] - cross) / (2.0 * f[0]);
    if (f[k] < -kNegativeTolerance)
      throw SchemeError("f_" + std::to_string(k) + " = " + std::to_string(f[k]) +
                        " is negative; scheme not representable");
  }
  return f;
}

std::vector<double> self_convolve(std::span<const double> f) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t p = 0; p <= k; ++p) out[k] += f[p] * f[k - p];
  return out;
}

CoefficientScheme geometric_scheme(double lambda, int truncation) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw SchemeError("geometric scheme needs lambda > 0");
  check_truncation(truncation);
  std::vector<double> mu(truncation + 1), f(truncation + 1);
  // f_k = lambda^k C(2k, k) / 4^k, built from the ratio (2k - 1) / (2k).
  double power = 1.0, central = 1.0;
  for (int k = 0; k <= truncation; ++k) {
    if (k > 0) {
      power *= lambda;
      central *= (2.0 * k - 1.0) / (2.0 * k);
    }
    mu[k] = power;
    f[k] = power * central;
  }
  return CoefficientScheme(SchemeKind::geometric, lambda, std::move(mu), std::move(f));
}

CoefficientScheme exponential_scheme(double lambda, int truncation) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw SchemeError("exponential scheme needs lambda > 0");
  check_truncation(truncation);
  std::vector<double> mu(truncation + 1), f(truncation + 1);
  double m = 1.0, h = 1.0;
  for (int k = 0; k <= truncation; ++k) {
    if (k > 0) {
      m *= lambda / k;
      h *= lambda / (2.0 * k);
    }
    mu[k] = m;
    f[k] = h;
  }
  return CoefficientScheme(SchemeKind::exponential, lambda, std::move(mu), std::move(f));
}

CoefficientScheme custom_scheme(std::vector<double> mu) {
  for (double x : mu)
    if (!std::isfinite(x)) throw SchemeError("mu entries must be finite");
  auto f = deconvolve(mu);
  return CoefficientScheme(SchemeKind::custom, 0.0, std::move(mu), std::move(f));
}

std::vector<double> read_mu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemeError("cannot open mu file " + path);
  std::vector<double> mu;
  std::string token;
  while (in >> token) mu.push_back(parse_double(token));
  if (mu.empty()) throw SchemeError("mu file " + path + " is empty");
  return mu;
}

CoefficientScheme parse_scheme(std::string_view spec, int truncation) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw SchemeError("scheme must look like geometric:<lambda>, exponential:<lambda> or custom:<path>");
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  if (kind == "geometric") return geometric_scheme(parse_double(arg), truncation);
  if (kind == "exponential") return exponential_scheme(parse_double(arg), truncation);
  if (kind == "custom") {
    check_truncation(truncation);
    auto mu = read_mu_file(std::string(arg));
    mu.resize(static_cast<std::size_t>(truncation) + 1, 0.0);
    return custom_scheme(std::move(mu));
  }
  throw SchemeError("unknown scheme kind '" + std::string(kind) + "'");
}

double convergence_constant(const Graph& g, const CoefficientScheme& scheme, double p_halt) {
  if (!(p_halt > 0.0 && p_halt < 1.0)) throw std::invalid_argument("p_halt must lie in (0, 1)");
  const double growth = static_cast<double>(g.max_degree()) / std::sqrt(1.0 - p_halt);
  const auto f = scheme.f();
  std::vector<double> terms(f.size());
  double total = 0.0, scale = 1.0;
  for (std::size_t l = 0; l < f.size(); ++l) {
    terms[l] = std::sqrt(std::abs(f[l])) * scale;
    total += terms[l];
    scale *= growth;
  }
  constexpr std::size_t kTail = 5;
  if (terms.size() > kTail) {
    bool growing = true;
    for (std::size_t l = terms.size() - kTail; l < terms.size(); ++l) {
      if (terms[l - 1] == 0.0 || terms[l] / terms[l - 1] < 1.0) {
        growing = false;
        break;
      }
    }
    if (growing)
      throw DivergenceError("c(G) series is not summable: tail term ratios stay >= 1 (max degree " +
                            std::to_string(g.max_degree()) + ", p_halt " + std::to_string(p_halt) + ")");
  }
  if (!std::isfinite(total)) throw DivergenceError("c(G) overflowed");
  return total;
}

}  // namespace gvoys
