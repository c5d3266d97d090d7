#include "topstat/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "topstat/quadrature.hpp"
#include "topstat/rng.hpp"
#include "topstat/special.hpp"

namespace topstat {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_unit(const Eigen::VectorXd& v, const char* what) {
  if (std::fabs(v.norm() - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          require(std::isfinite(s.mu) && s.mu >= -kPi && s.mu < kPi,
                  "von Mises: mu must lie in [-pi, pi)");
          require(std::isfinite(s.kappa) && s.kappa >= 0.0,
                  "von Mises: kappa must be >= 0");
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          require(s.p >= 2, "von Mises-Fisher: p must be >= 2");
          require(s.mu.size() == s.p, "von Mises-Fisher: mu has wrong size");
          check_unit(s.mu, "von Mises-Fisher: mu");
          require(std::isfinite(s.kappa) && s.kappa >= 0.0,
                  "von Mises-Fisher: kappa must be >= 0");
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          require(s.p >= 2, "Watson: p must be >= 2");
          require(s.mu.size() == s.p, "Watson: mu has wrong size");
          check_unit(s.mu, "Watson: mu");
          require(std::isfinite(s.kappa) && s.kappa > 0.0,
                  "Watson: kappa must be > 0");
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          require(p >= 2, "Bingham: need at least two concentrations");
          require(s.axes.rows() == p && s.axes.cols() == p,
                  "Bingham: axes must be p x p");
          require(s.concentrations(0) > 0.0,
                  "Bingham: concentrations must be positive");
          for (int i = 0; i + 1 < p; ++i)
            require(s.concentrations(i) < s.concentrations(i + 1),
                    "Bingham: concentrations must be strictly increasing");
          Eigen::MatrixXd gram = s.axes.transpose() * s.axes;
          require((gram - Eigen::MatrixXd::Identity(p, p)).norm() < 1e-10,
                  "Bingham: axes must be orthonormal");
        } else if constexpr (std::is_same_v<T, MatrixVonMises>) {
          const Eigen::Matrix3d& A = s.mode;
          require((A.transpose() * A - Eigen::Matrix3d::Identity()).norm() <
                          1e-10 &&
                      std::fabs(A.determinant() - 1.0) < 1e-10,
                  "matrix von Mises: mode must be a rotation matrix");
          require(std::isfinite(s.kappa) && s.kappa > 0.0,
                  "matrix von Mises: kappa must be > 0");
        }
      },
      spec);
}

Space space_of(const DistributionSpec& spec) {
  if (std::holds_alternative<VonMises>(spec)) return Space::circle;
  if (std::holds_alternative<MatrixVonMises>(spec))
    return Space::rotation_group;
  return Space::sphere;
}

int ambient_dim_of(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>)
          return 2;
        else if constexpr (std::is_same_v<T, VonMisesFisher>)
          return s.p;
        else if constexpr (std::is_same_v<T, WatsonDistribution>)
          return s.p;
        else if constexpr (std::is_same_v<T, BinghamDistribution>)
          return static_cast<int>(s.concentrations.size());
        else
          return 3;
      },
      spec);
}

std::string family_name(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) return "vm";
        else if constexpr (std::is_same_v<T, VonMisesFisher>) return "vmf";
        else if constexpr (std::is_same_v<T, WatsonDistribution>) return "watson";
        else if constexpr (std::is_same_v<T, BinghamDistribution>) return "bingham";
        else return "matrixvm";
      },
      spec);
}

double log_vmf_normalizer(int p, double kappa) {
  if (p < 2) throw std::invalid_argument("vmf normalizer: p >= 2");
  if (kappa < 0.0) throw std::invalid_argument("vmf normalizer: kappa >= 0");
  if (kappa == 0.0) return 0.0;
  double half = 0.5 * p;
  return (half - 1.0) * std::log(0.5 * kappa) - std::lgamma(half) -
         log_bessel_i(half - 1.0, kappa);
}

double log_watson_normalizer(int p, double kappa) {
  if (p < 2) throw std::invalid_argument("watson normalizer: p >= 2");
  if (!(kappa > 0.0)) throw std::invalid_argument("watson normalizer: kappa > 0");
  // 1/d = s_{p-2}/s_{p-1} * int_0^pi exp(kappa cos^2 t) sin^{p-2} t dt;
  // pull out exp(kappa) so the integrand stays in [0, 1].
  double log_ratio = std::lgamma(0.5 * p) - std::lgamma(0.5 * (p - 1)) -
                     0.5 * std::log(kPi);
  double integral = integrate(
      [&](double t) {
        double s = std::sin(t);
        return std::exp(-kappa * s * s) * std::pow(s, p - 2);
      },
      0.0, kPi, 1e-13);
  return -(log_ratio + kappa + std::log(integral));
}

double log_bingham_normalizer(const Eigen::VectorXd& ks) {
  int p = static_cast<int>(ks.size());
  if (p != 2 && p != 3)
    throw std::invalid_argument("Bingham normalizer implemented for p in {2, 3}");
  if (p == 2) {
    double k1 = ks(0), k2 = ks(1);
    double integral = integrate(
        [&](double phi) {
          double c = std::cos(phi);
          return std::exp(-(k2 - k1) * c * c) / kTwoPi;
        },
        0.0, kTwoPi, 1e-13);
    return -(k2 + std::log(integral));
  }
  double k1 = ks(0), k2 = ks(1), k3 = ks(2);
  auto inner = [&](double theta) {
    double s2 = std::sin(theta) * std::sin(theta);
    double c2 = 1.0 - s2;
    return integrate(
        [&](double phi) {
          double cp = std::cos(phi);
          double q = s2 * (k1 * cp * cp + k2 * (1.0 - cp * cp)) + k3 * c2;
          return std::exp(q - k3) / kTwoPi;
        },
        0.0, kTwoPi, 1e-13);
  };
  double outer = integrate(
      [&](double theta) { return 0.5 * inner(theta) * std::sin(theta); }, 0.0,
      kPi, 1e-11);
  return -(k3 + std::log(outer));
}

double log_matrix_vm_normalizer(double kappa) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("matrix vm normalizer: kappa > 0");
  // Haar measure pushes to the rotation-angle density (1 - cos t)/pi on
  // [0, pi]; tr = 1 + 2 cos t, so 1/c = E_Haar[exp(kappa tr)].
  double integral = integrate(
      [&](double t) {
        double ct = std::cos(t);
        return std::exp(-2.0 * kappa * (1.0 - ct)) * (1.0 - ct) / kPi;
      },
      0.0, kPi, 1e-13);
  return -(3.0 * kappa + std::log(integral));
}

double log_density(const DistributionSpec& spec, const double* point) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          double theta = kTwoPi * point[0] - kPi;
          if (s.kappa == 0.0) return 0.0;
          return s.kappa * std::cos(theta - s.mu) -
                 log_bessel_i(0.0, s.kappa);
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          double dot = 0.0;
          for (int k = 0; k < s.p; ++k) dot += point[k] * s.mu(k);
          return log_vmf_normalizer(s.p, s.kappa) + s.kappa * dot;
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          double dot = 0.0;
          for (int k = 0; k < s.p; ++k) dot += point[k] * s.mu(k);
          return log_watson_normalizer(s.p, s.kappa) + s.kappa * dot * dot;
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          double quad = 0.0;
          for (int i = 0; i < p; ++i) {
            double proj = 0.0;
            for (int k = 0; k < p; ++k) proj += point[k] * s.axes(k, i);
            quad += s.concentrations(i) * proj * proj;
          }
          return log_bingham_normalizer(s.concentrations) + quad;
        } else {
          double tr = 0.0;
          for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) tr += point[3 * r + c] * s.mode(r, c);
          return log_matrix_vm_normalizer(s.kappa) + s.kappa * tr;
        }
      },
      spec);
}

double density(const DistributionSpec& spec, const double* point) {
  return std::exp(log_density(spec, point));
}

double density_at(const DistributionSpec& spec, const PointCloud& cloud,
                  std::size_t i) {
  if (space_of(spec) != cloud.space())
    throw std::invalid_argument("density_at: cloud space does not match family");
  int stride = cloud.space() == Space::circle
                   ? 1
                   : (cloud.space() == Space::sphere ? cloud.ambient_dim() : 9);
  return density(spec, cloud.raw().data() + i * stride);
}

double log_min_density(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          if (s.kappa == 0.0) return 0.0;
          return -s.kappa - log_bessel_i(0.0, s.kappa);
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          return log_vmf_normalizer(s.p, s.kappa) - s.kappa;
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          return log_watson_normalizer(s.p, s.kappa);
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          return log_bingham_normalizer(s.concentrations) + s.concentrations(0);
        } else {
          return log_matrix_vm_normalizer(s.kappa) - s.kappa;
        }
      },
      spec);
}

double log_max_density(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          if (s.kappa == 0.0) return 0.0;
          return s.kappa - log_bessel_i(0.0, s.kappa);
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          return log_vmf_normalizer(s.p, s.kappa) + s.kappa;
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          return log_watson_normalizer(s.p, s.kappa) + s.kappa;
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          return log_bingham_normalizer(s.concentrations) +
                 s.concentrations(p - 1);
        } else {
          return log_matrix_vm_normalizer(s.kappa) + 3.0 * s.kappa;
        }
      },
      spec);
}

double min_density(const DistributionSpec& spec) {
  return std::exp(log_min_density(spec));
}

double max_density(const DistributionSpec& spec) {
  return std::exp(log_max_density(spec));
}

namespace {

double wrap_position(double u) {
  double w = u - std::floor(u);
  return w >= 1.0 ? w - 1.0 : w;
}

std::vector<double> sample_von_mises_positions(const VonMises& s,
                                               std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  if (s.kappa == 0.0) {
    for (auto& u : out) u = rng.uniform();
    return out;
  }
  // Best-Fisher rejection with a wrapped Cauchy envelope.
  double a = 1.0 + std::sqrt(1.0 + 4.0 * s.kappa * s.kappa);
  double b = (a - std::sqrt(2.0 * a)) / (2.0 * s.kappa);
  double r = (1.0 + b * b) / (2.0 * b);
  for (auto& u : out) {
    double f;
    for (;;) {
      double z = std::cos(kPi * rng.uniform());
      f = (1.0 + r * z) / (r + z);
      double c = s.kappa * (r - f);
      double u2 = rng.uniform_pos();
      if (c * (2.0 - c) - u2 > 0.0) break;
      if (std::log(c / u2) + 1.0 - c >= 0.0) break;
    }
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double theta = s.mu + sign * std::acos(f);
    u = wrap_position((theta + kPi) / kTwoPi);
  }
  return out;
}

Eigen::VectorXd uniform_direction(int p, Rng& rng) {
  Eigen::VectorXd z(p);
  for (;;) {
    for (int k = 0; k < p; ++k) z(k) = rng.normal();
    double nrm = z.norm();
    if (nrm > 1e-12) return z / nrm;
  }
}

Eigen::VectorXd uniform_perp_direction(const Eigen::VectorXd& mu, Rng& rng) {
  int p = static_cast<int>(mu.size());
  for (;;) {
    Eigen::VectorXd z(p);
    for (int k = 0; k < p; ++k) z(k) = rng.normal();
    z -= z.dot(mu) * mu;
    double nrm = z.norm();
    if (nrm > 1e-12) return z / nrm;
  }
}

/// Draw from the one-dimensional marginal of x . mu under the spherical
/// model with radial weight exp(kappa t): Wood's rejection scheme.
double sample_vmf_component(int p, double kappa, Rng& rng) {
  double pm1 = p - 1.0;
  double b = pm1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + pm1 * pm1));
  double x0 = (1.0 - b) / (1.0 + b);
  double c = kappa * x0 + pm1 * std::log(1.0 - x0 * x0);
  for (;;) {
    double z = rng.beta(0.5 * pm1, 0.5 * pm1);
    double w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    double u = rng.uniform_pos();
    if (kappa * w + pm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) return w;
  }
}

/// Marginal of t = x . mu under the Watson model: base density of the
/// uniform sphere via t = 2 Beta((p-1)/2, (p-1)/2) - 1, thinned by
/// exp(kappa (t^2 - 1)) <= 1.
double sample_watson_component(int p, double kappa, Rng& rng) {
  double half = 0.5 * (p - 1.0);
  for (;;) {
    double t = 2.0 * rng.beta(half, half) - 1.0;
    if (rng.uniform_pos() <= std::exp(kappa * (t * t - 1.0))) return t;
  }
}

std::vector<double> sample_sphere_packed(const Eigen::VectorXd& mu, int p,
                                         std::size_t n, Rng& rng,
                                         double kappa, bool axial) {
  std::vector<double> packed(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd x;
    if (!axial && kappa == 0.0) {
      x = uniform_direction(p, rng);
    } else {
      double t = axial ? sample_watson_component(p, kappa, rng)
                       : sample_vmf_component(p, kappa, rng);
      Eigen::VectorXd v = uniform_perp_direction(mu, rng);
      x = t * mu + std::sqrt(std::max(0.0, 1.0 - t * t)) * v;
      x.normalize();
    }
    for (int k = 0; k < p; ++k) packed[i * p + k] = x(k);
  }
  return packed;
}

}  // namespace

PointCloud sample(const DistributionSpec& spec, std::size_t n,
                  std::uint64_t seed) {
  validate(spec);
  if (n == 0) throw std::invalid_argument("sample: n must be positive");
  Rng rng(seed);
  return std::visit(
      [&](const auto& s) -> PointCloud {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          return PointCloud::circle_from_positions(
              sample_von_mises_positions(s, n, rng));
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          return PointCloud::on_sphere(
              s.p, sample_sphere_packed(s.mu, s.p, n, rng, s.kappa, false));
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          return PointCloud::on_sphere(
              s.p, sample_sphere_packed(s.mu, s.p, n, rng, s.kappa, true));
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          throw std::invalid_argument("Bingham sampling is not supported");
        } else {
          // Push Watson(4 kappa) samples on S^3 through the double cover.
          Quaternion qa = quaternion_from_rotation(s.mode);
          Eigen::VectorXd axis = qa.vec();
          std::vector<double> packed =
              sample_sphere_packed(axis, 4, n, rng, 4.0 * s.kappa, true);
          std::vector<Eigen::Matrix3d> mats;
          mats.reserve(n);
          for (std::size_t i = 0; i < n; ++i) {
            Quaternion q{packed[4 * i], packed[4 * i + 1], packed[4 * i + 2],
                         packed[4 * i + 3]};
            mats.push_back(cayley_klein(q.normalized()));
          }
          return PointCloud::rotations(mats);
        }
      },
      spec);
}

}  // namespace topstat
