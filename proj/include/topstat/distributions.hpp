#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "topstat/geometry.hpp"

namespace topstat {

// Parametric families of directional densities, all expressed with respect
// to the *uniform probability measure* on their space, so a normalizing
// constant of 1 means the uniform density.

/// Circle density  f(theta) = exp(kappa cos(theta - mu)) / I_0(kappa).
struct VonMises {
  double mu = 0.0;      // mode angle in [-pi, pi)
  double kappa = 0.0;   // >= 0; 0 is the uniform distribution
};

/// Sphere density  f(x) = c(kappa) exp(kappa x . mu)  on S^{p-1}.
struct VonMisesFisher {
  int p = 3;
  Eigen::VectorXd mu;   // unit vector in R^p
  double kappa = 0.0;   // >= 0
};

/// Axial density  f(x) = d(kappa) exp(kappa (x . mu)^2)  on S^{p-1}.
struct WatsonDistribution {
  int p = 3;
  Eigen::VectorXd mu;   // unit axis
  double kappa = 1.0;   // > 0 (bipolar case)
};

/// f(x) = d(K) exp(x^t K x) with K = V diag(k) V^t, 0 < k_1 < ... < k_p.
struct BinghamDistribution {
  Eigen::VectorXd concentrations;  // strictly increasing, positive
  Eigen::MatrixXd axes;            // orthonormal columns v_1 ... v_p
};

/// Rotation-group density  f(X) = c(kappa) exp(kappa tr(X^t A))  on SO(3).
struct MatrixVonMises {
  Eigen::Matrix3d mode = Eigen::Matrix3d::Identity();  // A in SO(3)
  double kappa = 1.0;                                  // > 0
};

using DistributionSpec = std::variant<VonMises, VonMisesFisher,
                                      WatsonDistribution, BinghamDistribution,
                                      MatrixVonMises>;

void validate(const DistributionSpec& spec);
Space space_of(const DistributionSpec& spec);
/// Ambient dimension of the carrying space (2 for the circle as S^1,
/// p for S^{p-1}, irrelevant constant 3 for SO(3)).
int ambient_dim_of(const DistributionSpec& spec);
std::string family_name(const DistributionSpec& spec);

// --- normalizing constants (log scale; stable for kappa up to ~500) ------

double log_vmf_normalizer(int p, double kappa);
double log_watson_normalizer(int p, double kappa);
/// Bingham d(K) from the eigenvalues; supported for p in {2, 3}.
double log_bingham_normalizer(const Eigen::VectorXd& concentrations);
/// Matrix von Mises c(kappa), by quadrature over the rotation-angle
/// distribution of the Haar measure.
double log_matrix_vm_normalizer(double kappa);

// --- pointwise density ----------------------------------------------------

/// log f at a point given in the packed coordinate layout of PointCloud
/// (circle: position in [0,1); sphere: p coordinates; SO(3): 9 row-major).
double log_density(const DistributionSpec& spec, const double* point);
double density(const DistributionSpec& spec, const double* point);
double density_at(const DistributionSpec& spec, const PointCloud& cloud,
                  std::size_t i);

double log_min_density(const DistributionSpec& spec);
double log_max_density(const DistributionSpec& spec);
double min_density(const DistributionSpec& spec);
double max_density(const DistributionSpec& spec);

// --- sampling ---------------------------------------------------------------

/// n independent draws. Deterministic in (spec, n, seed). Bingham sampling
/// is not implemented and is rejected.
PointCloud sample(const DistributionSpec& spec, std::size_t n,
                  std::uint64_t seed);

}  // namespace topstat
