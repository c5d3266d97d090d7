#include <cmath>
#include <vector>

#include "topstat/quadrature.hpp"
#include "topstat/rng.hpp"
#include "topstat/special.hpp"
#include "vendor/doctest.h"

using namespace topstat;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("adaptive quadrature hits analytic integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  // Oscillatory integrand forces several bisection levels.
  double osc = integrate(
      [](double x) { return std::cos(10.0 * x) * std::cos(10.0 * x); }, 0.0,
      2.0 * kPi);
  CHECK(osc == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("the two quadrature engines agree on a smooth density mass") {
  auto f = [](double t) { return std::exp(std::cos(t)); };
  double gk = integrate(f, 0.0, 2.0 * kPi, 1e-12);
  double simpson = integrate_simpson(f, 0.0, 2.0 * kPi, 1e-11);
  CHECK(gk == doctest::Approx(simpson).epsilon(1e-10));
  // 2*pi*I_0(1), the circle normalization integral.
  CHECK(gk == doctest::Approx(2.0 * kPi * bessel_i(0.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("Bessel values match reference digits") {
  CHECK(bessel_i(0.0, 1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-14));
  CHECK(bessel_i(1.0, 1.0) == doctest::Approx(0.5651591039924851).epsilon(1e-14));
  CHECK(bessel_i(0.5, 2.0) ==
        doctest::Approx(std::sqrt(2.0 / (kPi * 2.0)) * std::sinh(2.0))
            .epsilon(1e-13));
}

TEST_CASE("log Bessel stays accurate past the overflow range") {
  for (double x : {0.5, 5.0, 50.0, 300.0}) {
    CHECK(log_bessel_i(0.0, x) ==
          doctest::Approx(std::log(bessel_i(0.0, x))).epsilon(1e-12));
  }
  // Large-argument asymptotics: log I_0(x) ~ x - log(2 pi x)/2 + 1/(8x) + ...
  double x = 2000.0;
  double asym = x - 0.5 * std::log(2.0 * kPi * x) +
                std::log1p(1.0 / (8.0 * x) + 9.0 / (128.0 * x * x));
  CHECK(log_bessel_i(0.0, x) == doctest::Approx(asym).epsilon(1e-9));
}

TEST_CASE("sphere surface areas") {
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(sphere_surface(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  for (int p = 2; p <= 8; ++p)
    CHECK(log_sphere_surface(p) ==
          doctest::Approx(std::log(sphere_surface(p))).epsilon(1e-13));
}

TEST_CASE("least squares line fit is exact on affine data") {
  std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> y = {1.0, 3.0, 5.0, 7.0};
  LineFit fit = fit_line(x.data(), y.data(), 4);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rng streams are deterministic in the seed") {
  Rng a(123), b(123), c(124);
  bool same = true, differ = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t va = a.next_u64();
    same = same && (va == b.next_u64());
    differ = differ || (va != c.next_u64());
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("rng split depends only on seed and stream index") {
  Rng fresh(99);
  Rng burned(99);
  for (int i = 0; i < 57; ++i) burned.uniform();  // advance the parent
  Rng child_a = fresh.split(7);
  Rng child_b = burned.split(7);
  for (int i = 0; i < 20; ++i) CHECK(child_a.next_u64() == child_b.next_u64());
  // Distinct streams decorrelate.
  Rng other = fresh.split(8);
  CHECK(other.next_u64() != fresh.split(7).next_u64());
}

TEST_CASE("rng uniforms live in the half-open unit interval") {
  Rng r(5);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // 4 sigma band around 1/2 with sigma = 1/sqrt(12 n).
  CHECK(std::abs(sum / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
  double up = Rng(5).uniform_pos();
  CHECK(up > 0.0);
  CHECK(up <= 1.0);
}

TEST_CASE("rng sampler moments") {
  Rng r(2024);
  const int n = 200000;
  double sn = 0.0, sn2 = 0.0, sg = 0.0, sb = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = r.normal();
    sn += z;
    sn2 += z * z;
    sg += r.gamma(3.5);
    sb += r.beta(2.0, 3.0);
  }
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sg / n == doctest::Approx(3.5).epsilon(0.02));
  CHECK(sb / n == doctest::Approx(0.4).epsilon(0.02));
  CHECK_THROWS_AS(r.gamma(0.0), std::invalid_argument);
}
