#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gvoys/coeffs.hpp"
#include "support.hpp"

using namespace gvoys;
using namespace gvoys::testing;

namespace {

double max_reconvolution_error(const CoefficientScheme& s) {
  const auto conv = self_convolve(s.f());
  double worst = 0.0;
  for (std::size_t k = 0; k < conv.size(); ++k) worst = std::max(worst, std::abs(conv[k] - s.mu()[k]));
  return worst;
}

}  // namespace

TEST_CASE("deconvolve: delta sequence") {
  const std::vector<double> mu{1, 0, 0, 0};
  CHECK(deconvolve(mu) == std::vector<double>{1, 0, 0, 0});
}

TEST_CASE("deconvolve: exponential coefficients") {
  std::vector<double> mu{1.0, 0.4, 0.16 / 2.0, 0.064 / 6.0};
  const auto f = deconvolve(mu);
  CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(f[2] == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(f[3] == doctest::Approx(0.064 / 48.0).epsilon(1e-14));
}

TEST_CASE("deconvolve: all-ones gives central binomials over 4^k") {
  const std::vector<double> mu(6, 1.0);
  const auto f = deconvolve(mu);
  // Hand-unrolled: f1 = 1/2, f2 = (1 - 1/4)/2 = 3/8, f3 = (1 - 2*(1/2)(3/8))/2 = 5/16.
  CHECK(f[1] == doctest::Approx(0.5));
  CHECK(f[2] == doctest::Approx(0.375));
  CHECK(f[3] == doctest::Approx(0.3125));
  const auto back = self_convolve(f);
  for (double x : back) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("deconvolve errors") {
  CHECK_THROWS_AS(deconvolve(std::vector<double>{0.0, 1.0}), SchemeError);
  CHECK_THROWS_AS(deconvolve(std::vector<double>{-1.0}), SchemeError);
  // mu = (1, 0, -1): f2 = -1/2 < 0.
  CHECK_THROWS_AS(deconvolve(std::vector<double>{1.0, 0.0, -1.0}), SchemeError);
  CHECK_THROWS_AS(custom_scheme({1.0, 0.0, -1.0}), SchemeError);
}

TEST_CASE("geometric_scheme") {
  const auto s1 = geometric_scheme(1.0, 3);
  const std::vector<double> ones(4, 1.0);
  const auto oracle = deconvolve(ones);
  for (int k = 0; k <= 3; ++k) CHECK(s1.f()[k] == doctest::Approx(oracle[k]).epsilon(1e-14));
  CHECK(s1.f()[3] == doctest::Approx(0.3125));

  const auto s2 = geometric_scheme(0.1, 2);
  CHECK(s2.mu()[1] == doctest::Approx(0.1));
  CHECK(s2.mu()[2] == doctest::Approx(0.01));
  CHECK(s2.f()[1] == doctest::Approx(0.05));
  CHECK(s2.f()[2] == doctest::Approx(0.00375));
  CHECK(s2.truncation() == 2);

  CHECK_THROWS_AS(geometric_scheme(0.0, 3), SchemeError);
  CHECK_THROWS_AS(geometric_scheme(-0.5, 3), SchemeError);
  CHECK_THROWS_AS(geometric_scheme(0.5, 0), SchemeError);
}

TEST_CASE("exponential_scheme") {
  const auto s = exponential_scheme(2.0, 2);
  CHECK(s.mu()[1] == doctest::Approx(2.0));
  CHECK(s.mu()[2] == doctest::Approx(2.0));
  CHECK(s.f()[0] == 1.0);
  CHECK(s.f()[1] == doctest::Approx(1.0));
  CHECK(s.f()[2] == doctest::Approx(0.5));

  const auto s4 = exponential_scheme(0.4, 3);
  CHECK(s4.f()[3] == doctest::Approx(0.064 / 48.0));
  for (double lambda : {0.01, 0.7, 3.0, 11.0}) CHECK(exponential_scheme(lambda, 5).f()[0] == 1.0);
  CHECK_THROWS_AS(exponential_scheme(0.0, 3), SchemeError);
}

TEST_CASE("property: closed forms reconvolve and match the recurrence") {
  for (double lambda : {0.05, 0.1, 0.5, 1.0}) {
    const auto s = geometric_scheme(lambda, 30);
    CHECK(max_reconvolution_error(s) < 1e-10);
    const auto f = deconvolve(s.mu());
    for (int k = 0; k <= 30; ++k) CHECK(std::abs(f[k] - s.f()[k]) < 1e-12);
  }
  for (double lambda : {0.2, 0.4, 2.0}) {
    const auto s = exponential_scheme(lambda, 30);
    CHECK(max_reconvolution_error(s) < 1e-10);
    const auto f = deconvolve(s.mu());
    for (int k = 0; k <= 30; ++k) CHECK(std::abs(f[k] - s.f()[k]) < 1e-12);
  }
}

TEST_CASE("parse_scheme") {
  CHECK(parse_scheme("geometric:0.25", 7).kind() == SchemeKind::geometric);
  CHECK(parse_scheme("geometric:0.25", 7).truncation() == 7);
  CHECK(parse_scheme("exponential:1.5").lambda() == 1.5);
  CHECK(parse_scheme("exponential:1.5").truncation() == kDefaultTruncation);
  CHECK_THROWS_AS(parse_scheme("geometric"), SchemeError);
  CHECK_THROWS_AS(parse_scheme("cubic:1"), SchemeError);
  CHECK_THROWS_AS(parse_scheme("geometric:abc"), SchemeError);

  const auto path = std::filesystem::temp_directory_path() / "gvoys_mu_test.txt";
  {
    std::ofstream out(path);
    out << "1 0.5\n\t0.0625\n";  // (1 + x/4)^2
  }
  const auto custom = parse_scheme("custom:" + path.string(), 5);
  CHECK(custom.kind() == SchemeKind::custom);
  CHECK(custom.truncation() == 5);
  CHECK(custom.mu()[2] == 0.0625);
  CHECK(custom.f()[1] == doctest::Approx(0.25));
  CHECK(custom.f()[4] == doctest::Approx(0.0));
  CHECK(custom.mu()[5] == 0.0);
  CHECK(max_reconvolution_error(custom) < 1e-12);
  std::filesystem::remove(path);
}

TEST_CASE("convergence_constant") {
  SUBCASE("delta modulation gives 1") {
    const auto delta = custom_scheme({1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    CHECK(convergence_constant(complete_graph(5), delta, 0.3) == doctest::Approx(1.0));
  }
  SUBCASE("K2 with the exponential scheme matches direct summation") {
    // sqrt(f_l) (1 / sqrt(0.5))^l = sqrt(0.2^l / l!) * 2^(l/2).
    double direct = 0.0, factorial = 1.0;
    for (int l = 0; l <= 10; ++l) {
      if (l > 0) factorial *= l;
      direct += std::sqrt(std::pow(0.2, l) / factorial) * std::pow(std::sqrt(2.0), l);
    }
    const auto k2 = complete_graph(2);
    CHECK(convergence_constant(k2, exponential_scheme(0.4, 10), 0.5) == doctest::Approx(direct).epsilon(1e-13));
    const double c30 = convergence_constant(k2, exponential_scheme(0.4, 30), 0.5);
    const double c40 = convergence_constant(k2, exponential_scheme(0.4, 40), 0.5);
    CHECK(std::abs(c30 - c40) < 1e-8);
  }
  SUBCASE("geometric lambda = 1 on max degree 4 diverges") {
    const auto star = Graph(5, std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK_THROWS_AS(convergence_constant(star, geometric_scheme(1.0, 40), 0.1), DivergenceError);
  }
  SUBCASE("monotone in max degree and p_halt") {
    const auto scheme = exponential_scheme(0.3, 40);
    double previous = 0.0;
    for (std::size_t n = 2; n <= 6; ++n) {
      const double c = convergence_constant(complete_graph(n), scheme, 0.4);
      CHECK(c >= previous);
      previous = c;
    }
    previous = 0.0;
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double c = convergence_constant(complete_graph(3), scheme, p);
      CHECK(c >= previous);
      previous = c;
    }
  }
  CHECK_THROWS(convergence_constant(complete_graph(2), exponential_scheme(0.4), 1.0));
}
