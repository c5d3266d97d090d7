#include "topstat/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "topstat/geometry.hpp"
#include "topstat/quadrature.hpp"
#include "topstat/special.hpp"
#include "vendor/doctest.h"

using namespace topstat;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Eigen::VectorXd unit(int p, int axis) { return Eigen::VectorXd::Unit(p, axis); }

// One-sample Kolmogorov-Smirnov statistic against a CDF sampled at the
// sorted data points.
double ks_statistic(std::vector<double> sorted_values,
                    const std::vector<double>& cdf_at_values) {
  const double n = static_cast<double>(sorted_values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    double f = cdf_at_values[i];
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

// CDF values at sorted points by incremental quadrature of an unnormalized
// density on [lo, hi].
std::vector<double> quadrature_cdf(const std::function<double(double)>& pdf,
                                   double lo, double hi,
                                   const std::vector<double>& sorted_points) {
  double total = integrate(pdf, lo, hi, 1e-10);
  std::vector<double> out;
  out.reserve(sorted_points.size());
  double acc = 0.0, prev = lo;
  for (double x : sorted_points) {
    acc += integrate(pdf, prev, x, 1e-10, 1e-13);
    prev = x;
    out.push_back(acc / total);
  }
  return out;
}

// KS bound at roughly the 0.001 level; the seeds are fixed, so this is a
// deterministic regression bound, not a flaky statistical one.
double ks_bound(std::size_t n) { return 1.95 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_CASE("family validation rejects malformed parameters") {
  CHECK_THROWS_AS(validate(DistributionSpec(VonMises{0.0, -1.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      validate(DistributionSpec(VonMisesFisher{3, 2.0 * unit(3, 0), 1.0})),
      std::invalid_argument);
  CHECK_THROWS_AS(validate(DistributionSpec(WatsonDistribution{3, unit(3, 2), 0.0})),
                  std::invalid_argument);

  BinghamDistribution decreasing;
  decreasing.concentrations = Eigen::Vector3d(3.0, 2.0, 1.0);
  decreasing.axes = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(validate(DistributionSpec(decreasing)), std::invalid_argument);

  BinghamDistribution skewed;
  skewed.concentrations = Eigen::Vector3d(1.0, 2.0, 3.0);
  skewed.axes = Eigen::Matrix3d::Identity() * 2.0;
  CHECK_THROWS_AS(validate(DistributionSpec(skewed)), std::invalid_argument);

  MatrixVonMises bad_mode;
  bad_mode.mode = Eigen::Matrix3d::Identity() * 2.0;
  bad_mode.kappa = 1.0;
  CHECK_THROWS_AS(validate(DistributionSpec(bad_mode)), std::invalid_argument);
}

TEST_CASE("family metadata") {
  DistributionSpec vm = VonMises{0.0, 1.0};
  DistributionSpec vmf = VonMisesFisher{4, unit(4, 0), 1.0};
  DistributionSpec mvm = MatrixVonMises{};
  CHECK(space_of(vm) == Space::circle);
  CHECK(space_of(vmf) == Space::sphere);
  CHECK(space_of(mvm) == Space::rotation_group);
  CHECK(ambient_dim_of(vm) == 2);
  CHECK(ambient_dim_of(vmf) == 4);
  CHECK(family_name(vm) == "vm");
  CHECK(family_name(vmf) == "vmf");
  CHECK(family_name(mvm) == "matrixvm");
}

TEST_CASE("normalizer identities against Bessel closed forms") {
  for (double kappa : {0.5, 2.0, 10.0}) {
    CHECK(log_vmf_normalizer(2, kappa) ==
          doctest::Approx(-std::log(bessel_i(0.0, kappa))).epsilon(1e-13));
    CHECK(log_vmf_normalizer(3, kappa) ==
          doctest::Approx(std::log(kappa / std::sinh(kappa))).epsilon(1e-13));
  }
  CHECK(log_vmf_normalizer(2, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log_vmf_normalizer(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(log_watson_normalizer(3, 0.0), std::invalid_argument);
}

TEST_CASE("densities integrate to one against the uniform measure") {
  SUBCASE("circle") {
    DistributionSpec spec = VonMises{0.7, 1.3};
    double mass =
        integrate([&](double u) { return density(spec, &u); }, 0.0, 1.0, 1e-11);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("sphere, rotationally symmetric families") {
    DistributionSpec vmf = VonMisesFisher{3, unit(3, 2), 2.0};
    DistributionSpec watson = WatsonDistribution{3, unit(3, 2), 2.5};
    for (const DistributionSpec* spec : {&vmf, &watson}) {
      double mass = integrate(
          [&](double theta) {
            double point[3] = {std::sin(theta), 0.0, std::cos(theta)};
            return density(*spec, point) * std::sin(theta) / 2.0;
          },
          0.0, kPi, 1e-11);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("anisotropic sphere density, nested quadrature") {
    BinghamDistribution bingham;
    bingham.concentrations = Eigen::Vector3d(0.5, 1.3, 2.4);
    bingham.axes = Eigen::Matrix3d::Identity();
    DistributionSpec spec = bingham;
    double mass = integrate(
        [&](double theta) {
          double inner = integrate(
              [&](double phi) {
                double point[3] = {std::sin(theta) * std::cos(phi),
                                   std::sin(theta) * std::sin(phi),
                                   std::cos(theta)};
                return density(spec, point);
              },
              0.0, 2.0 * kPi, 1e-9);
          return inner * std::sin(theta) / (4.0 * kPi);
        },
        0.0, kPi, 1e-9);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
  }
  SUBCASE("rotation group, via the rotation-angle pushforward") {
    double kappa = 1.2;
    double c = std::exp(log_matrix_vm_normalizer(kappa));
    double mass = integrate(
        [&](double t) {
          return c * std::exp(kappa * (1.0 + 2.0 * std::cos(t))) *
                 (1.0 - std::cos(t)) / kPi;
        },
        0.0, kPi, 1e-11);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("pointwise density accessors are consistent") {
  DistributionSpec spec = VonMisesFisher{3, unit(3, 2), 2.0};
  double point[3] = {0.0, 0.6, 0.8};
  CHECK(density(spec, point) ==
        doctest::Approx(std::exp(log_density(spec, point))).epsilon(1e-14));
  PointCloud cloud = sample(spec, 5, 99);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    CHECK(density_at(spec, cloud, i) ==
          doctest::Approx(density(spec, &cloud.raw()[3 * i])).epsilon(1e-14));
  PointCloud circle = PointCloud::circle_from_positions({0.25});
  CHECK_THROWS_AS(density_at(spec, circle, 0), std::invalid_argument);
}

TEST_CASE("density extremes sit at the advertised modes") {
  SUBCASE("unimodal sphere family") {
    DistributionSpec spec = VonMisesFisher{3, unit(3, 2), 2.0};
    double at_mode[3] = {0.0, 0.0, 1.0};
    double at_antimode[3] = {0.0, 0.0, -1.0};
    CHECK(max_density(spec) == doctest::Approx(density(spec, at_mode)));
    CHECK(min_density(spec) == doctest::Approx(density(spec, at_antimode)));
  }
  SUBCASE("axial family peaks at both poles") {
    DistributionSpec spec = WatsonDistribution{3, unit(3, 2), 2.0};
    double north[3] = {0.0, 0.0, 1.0};
    double south[3] = {0.0, 0.0, -1.0};
    double equator[3] = {1.0, 0.0, 0.0};
    CHECK(density(spec, north) == doctest::Approx(density(spec, south)));
    CHECK(max_density(spec) == doctest::Approx(density(spec, north)));
    CHECK(min_density(spec) == doctest::Approx(density(spec, equator)));
  }
  SUBCASE("anisotropic family orders extremes by concentration") {
    BinghamDistribution bingham;
    bingham.concentrations = Eigen::Vector3d(0.5, 1.3, 2.4);
    bingham.axes = Eigen::Matrix3d::Identity();
    DistributionSpec spec = bingham;
    double d = std::exp(log_bingham_normalizer(bingham.concentrations));
    CHECK(max_density(spec) == doctest::Approx(d * std::exp(2.4)));
    CHECK(min_density(spec) == doctest::Approx(d * std::exp(0.5)));
  }
  SUBCASE("rotation family") {
    double kappa = 1.5;
    DistributionSpec spec = MatrixVonMises{Eigen::Matrix3d::Identity(), kappa};
    double c = std::exp(log_matrix_vm_normalizer(kappa));
    CHECK(max_density(spec) == doctest::Approx(c * std::exp(3.0 * kappa)));
    CHECK(min_density(spec) == doctest::Approx(c * std::exp(-kappa)));
  }
}

TEST_CASE("sampling is deterministic in the seed and rejects Bingham") {
  DistributionSpec spec = VonMisesFisher{3, unit(3, 2), 2.0};
  PointCloud a = sample(spec, 50, 31337);
  PointCloud b = sample(spec, 50, 31337);
  PointCloud c = sample(spec, 50, 31338);
  CHECK(a.raw() == b.raw());
  CHECK(a.raw() != c.raw());
  CHECK_THROWS_AS(sample(spec, 0, 1), std::invalid_argument);

  BinghamDistribution bingham;
  bingham.concentrations = Eigen::Vector3d(0.5, 1.3, 2.4);
  bingham.axes = Eigen::Matrix3d::Identity();
  CHECK_THROWS_AS(sample(DistributionSpec(bingham), 10, 1),
                  std::invalid_argument);
}

TEST_CASE("circle samples follow the stated density") {
  DistributionSpec spec = VonMises{0.7, 1.3};
  const std::size_t n = 2000;
  PointCloud cloud = sample(spec, n, 424242);
  REQUIRE(cloud.space() == Space::circle);
  std::vector<double> positions;
  for (std::size_t i = 0; i < n; ++i) positions.push_back(cloud.circle_position(i));
  std::sort(positions.begin(), positions.end());
  auto cdf = quadrature_cdf([&](double u) { return density(spec, &u); }, 0.0,
                            1.0, positions);
  CHECK(ks_statistic(positions, cdf) < ks_bound(n));
}

TEST_CASE("a zero-concentration circle law is uniform") {
  DistributionSpec spec = VonMises{0.0, 0.0};
  const std::size_t n = 2000;
  PointCloud cloud = sample(spec, n, 7);
  std::vector<double> positions;
  for (std::size_t i = 0; i < n; ++i) positions.push_back(cloud.circle_position(i));
  std::sort(positions.begin(), positions.end());
  std::vector<double> cdf = positions;  // identity CDF on [0, 1)
  CHECK(ks_statistic(positions, cdf) < ks_bound(n));
}

TEST_CASE("sphere samples have the right colatitude law") {
  double kappa = 2.0;
  DistributionSpec spec = VonMisesFisher{3, unit(3, 2), kappa};
  const std::size_t n = 2000;
  PointCloud cloud = sample(spec, n, 1001);
  REQUIRE(cloud.space() == Space::sphere);
  std::vector<double> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(cloud.sphere_point(i)[2]);
  std::sort(t.begin(), t.end());
  // cos(colatitude) has CDF (e^{kt} - e^{-k}) / (e^k - e^{-k}).
  std::vector<double> cdf;
  for (double v : t)
    cdf.push_back((std::exp(kappa * v) - std::exp(-kappa)) /
                  (std::exp(kappa) - std::exp(-kappa)));
  CHECK(ks_statistic(t, cdf) < ks_bound(n));
}

TEST_CASE("axial samples have the right squared-cosine law") {
  double kappa = 2.0;
  DistributionSpec spec = WatsonDistribution{3, unit(3, 2), kappa};
  const std::size_t n = 2000;
  PointCloud cloud = sample(spec, n, 555);
  std::vector<double> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(cloud.sphere_point(i)[2]);
  std::sort(t.begin(), t.end());
  auto cdf = quadrature_cdf(
      [&](double s) { return std::exp(kappa * s * s); }, -1.0, 1.0, t);
  CHECK(ks_statistic(t, cdf) < ks_bound(n));
}

TEST_CASE("rotation samples pull back to the axial law on quaternions") {
  double kappa = 1.5;
  DistributionSpec spec = MatrixVonMises{Eigen::Matrix3d::Identity(), kappa};
  const std::size_t n = 2000;
  PointCloud cloud = sample(spec, n, 2718);
  REQUIRE(cloud.space() == Space::rotation_group);
  // |q . q_mode| = |w| for the identity mode; its density on [0, 1] is
  // proportional to exp(4 kappa t^2) sqrt(1 - t^2).
  std::vector<double> t;
  for (std::size_t i = 0; i < n; ++i)
    t.push_back(std::abs(quaternion_from_rotation(cloud.rotation(i)).w));
  std::sort(t.begin(), t.end());
  auto cdf = quadrature_cdf(
      [&](double s) {
        return std::exp(4.0 * kappa * s * s) * std::sqrt(1.0 - s * s);
      },
      0.0, 1.0, t);
  CHECK(ks_statistic(t, cdf) < ks_bound(n));
}
