#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace topstat {

enum class Space { circle, sphere, rotation_group };

/// Metric used for pairwise distances on a point cloud.
///   circle_arc         arc length on a circle of circumference 1
///   sphere_geodesic    great-circle angle on S^{p-1}
///   sphere_euclidean   chordal distance in R^p
///   rotation_frobenius Frobenius norm of X - Y (chordal metric on SO(3))
///   rotation_geodesic  rotation angle of X^t Y
/// The SO(3) choices are exposed side by side; which embedding is the right
/// one for rotation data is an open modelling question, so the cloud carries
/// its metric explicitly.
enum class MetricKind {
  circle_arc,
  sphere_geodesic,
  sphere_euclidean,
  rotation_frobenius,
  rotation_geodesic
};

/// Unit quaternion (w, x, y, z).
struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm() const;
  Quaternion normalized() const;
  Eigen::Vector4d vec() const { return {w, x, y, z}; }
};

/// Rotation matrix of a unit quaternion:
///   R = I + 2 w [b]_x + 2 [b]_x^2,  b = (x, y, z),
/// the double cover S^3 -> SO(3); q and -q map to the same rotation.
Eigen::Matrix3d cayley_klein(const Quaternion& q);

/// One of the two unit quaternion preimages of a rotation matrix.
Quaternion quaternion_from_rotation(const Eigen::Matrix3d& R);

/// Finite point set on a circle, a sphere S^{p-1}, or SO(3).
///
/// Circle points are stored as positions u in [0, 1) on the circle of
/// circumference 1 (arc-length parametrization); angles in [-pi, pi) are
/// converted at the I/O boundary. Sphere points are unit vectors in R^p,
/// rotations are 3x3 matrices, both stored packed row-major.
class PointCloud {
 public:
  static PointCloud circle_from_positions(std::vector<double> positions);
  static PointCloud circle_from_angles(const std::vector<double>& angles);
  static PointCloud on_sphere(int p, std::vector<double> packed_coords);
  static PointCloud rotations(const std::vector<Eigen::Matrix3d>& mats);

  Space space() const { return space_; }
  /// Ambient dimension p: 1 for the circle, p for S^{p-1}, 3 for SO(3).
  int ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return count_; }
  MetricKind metric() const { return metric_; }
  void set_metric(MetricKind m);

  double distance(std::size_t i, std::size_t j) const;

  double circle_position(std::size_t i) const;
  double circle_angle(std::size_t i) const;
  Eigen::Map<const Eigen::VectorXd> sphere_point(std::size_t i) const;
  Eigen::Matrix3d rotation(std::size_t i) const;
  const std::vector<double>& raw() const { return data_; }

  /// Coordinates for geometric (Cech) constructions: spheres embed as
  /// themselves, the circle as the unit circle in R^2. SO(3) clouds have no
  /// canonical small embedding here and are rejected.
  std::vector<Eigen::VectorXd> embedded_points() const;

  // CSV: header "space,p", then one row per point (angle, p coordinates,
  // or 9 row-major matrix entries).
  void write_csv(std::ostream& os) const;
  static PointCloud read_csv(std::istream& is);
  void write_csv_file(const std::string& path) const;
  static PointCloud read_csv_file(const std::string& path);

 private:
  PointCloud(Space s, int ambient_dim, std::size_t count,
             std::vector<double> data, MetricKind metric);

  Space space_;
  int ambient_dim_;
  std::size_t count_;
  std::vector<double> data_;
  MetricKind metric_;
};

/// Radius of the smallest ball enclosing the given points in R^d
/// (Welzl's move-to-front recursion, exact support-set circumballs).
double smallest_enclosing_ball_radius(const std::vector<Eigen::VectorXd>& pts);

}  // namespace topstat
