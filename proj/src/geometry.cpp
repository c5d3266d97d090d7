#include "topstat/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace topstat {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

double clamp1(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

double wrap_unit(double u) {
  double w = u - std::floor(u);
  if (w >= 1.0) w -= 1.0;  // floor can round u ever so slightly below itself
  return w;
}

}  // namespace

double Quaternion::norm() const {
  return std::sqrt(w * w + x * x + y * y + z * z);
}

Quaternion Quaternion::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero quaternion");
  return {w / n, x / n, y / n, z / n};
}

Eigen::Matrix3d cayley_klein(const Quaternion& q) {
  if (std::fabs(q.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("cayley_klein: quaternion is not unit length");
  Eigen::Matrix3d B;
  B << 0.0, -q.z, q.y,
       q.z, 0.0, -q.x,
      -q.y, q.x, 0.0;
  return Eigen::Matrix3d::Identity() + 2.0 * q.w * B + 2.0 * B * B;
}

Quaternion quaternion_from_rotation(const Eigen::Matrix3d& R) {
  // Shepperd's method: pick the largest of the four squared components.
  double t = R.trace();
  Quaternion q;
  if (t > R(0, 0) && t > R(1, 1) && t > R(2, 2)) {
    double s = std::sqrt(1.0 + t) * 2.0;
    q.w = 0.25 * s;
    q.x = (R(2, 1) - R(1, 2)) / s;
    q.y = (R(0, 2) - R(2, 0)) / s;
    q.z = (R(1, 0) - R(0, 1)) / s;
  } else if (R(0, 0) >= R(1, 1) && R(0, 0) >= R(2, 2)) {
    double s = std::sqrt(1.0 + R(0, 0) - R(1, 1) - R(2, 2)) * 2.0;
    q.w = (R(2, 1) - R(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (R(0, 1) + R(1, 0)) / s;
    q.z = (R(0, 2) + R(2, 0)) / s;
  } else if (R(1, 1) >= R(2, 2)) {
    double s = std::sqrt(1.0 + R(1, 1) - R(0, 0) - R(2, 2)) * 2.0;
    q.w = (R(0, 2) - R(2, 0)) / s;
    q.x = (R(0, 1) + R(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (R(1, 2) + R(2, 1)) / s;
  } else {
    double s = std::sqrt(1.0 + R(2, 2) - R(0, 0) - R(1, 1)) * 2.0;
    q.w = (R(1, 0) - R(0, 1)) / s;
    q.x = (R(0, 2) + R(2, 0)) / s;
    q.y = (R(1, 2) + R(2, 1)) / s;
    q.z = 0.25 * s;
  }
  return q.normalized();
}

PointCloud::PointCloud(Space s, int ambient_dim, std::size_t count,
                       std::vector<double> data, MetricKind metric)
    : space_(s),
      ambient_dim_(ambient_dim),
      count_(count),
      data_(std::move(data)),
      metric_(metric) {}

PointCloud PointCloud::circle_from_positions(std::vector<double> positions) {
  for (double u : positions)
    if (!(u >= 0.0 && u < 1.0))
      throw std::invalid_argument("circle position outside [0, 1)");
  std::size_t n = positions.size();
  return PointCloud(Space::circle, 1, n, std::move(positions),
                    MetricKind::circle_arc);
}

PointCloud PointCloud::circle_from_angles(const std::vector<double>& angles) {
  std::vector<double> pos(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i)
    pos[i] = wrap_unit((angles[i] + kPi) / kTwoPi);
  return circle_from_positions(std::move(pos));
}

PointCloud PointCloud::on_sphere(int p, std::vector<double> packed) {
  if (p < 2) throw std::invalid_argument("sphere needs ambient dimension >= 2");
  if (packed.size() % p != 0)
    throw std::invalid_argument("sphere coordinate count not divisible by p");
  std::size_t n = packed.size() / p;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < p; ++k) s += packed[i * p + k] * packed[i * p + k];
    if (std::fabs(std::sqrt(s) - 1.0) > 1e-12)
      throw std::invalid_argument("sphere point is not a unit vector");
  }
  return PointCloud(Space::sphere, p, n, std::move(packed),
                    MetricKind::sphere_geodesic);
}

PointCloud PointCloud::rotations(const std::vector<Eigen::Matrix3d>& mats) {
  std::vector<double> packed;
  packed.reserve(9 * mats.size());
  for (const auto& R : mats) {
    if ((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() > 1e-10 ||
        std::fabs(R.determinant() - 1.0) > 1e-10)
      throw std::invalid_argument("matrix is not a rotation");
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) packed.push_back(R(r, c));
  }
  return PointCloud(Space::rotation_group, 3, mats.size(), std::move(packed),
                    MetricKind::rotation_frobenius);
}

void PointCloud::set_metric(MetricKind m) {
  bool ok = false;
  switch (space_) {
    case Space::circle:
      ok = m == MetricKind::circle_arc;
      break;
    case Space::sphere:
      ok = m == MetricKind::sphere_geodesic || m == MetricKind::sphere_euclidean;
      break;
    case Space::rotation_group:
      ok = m == MetricKind::rotation_frobenius ||
           m == MetricKind::rotation_geodesic;
      break;
  }
  if (!ok) throw std::invalid_argument("metric incompatible with this space");
  metric_ = m;
}

double PointCloud::circle_position(std::size_t i) const {
  if (space_ != Space::circle) throw std::invalid_argument("not a circle cloud");
  return data_[i];
}

double PointCloud::circle_angle(std::size_t i) const {
  return kTwoPi * circle_position(i) - kPi;
}

Eigen::Map<const Eigen::VectorXd> PointCloud::sphere_point(std::size_t i) const {
  if (space_ != Space::sphere) throw std::invalid_argument("not a sphere cloud");
  return {data_.data() + i * ambient_dim_, ambient_dim_};
}

Eigen::Matrix3d PointCloud::rotation(std::size_t i) const {
  if (space_ != Space::rotation_group)
    throw std::invalid_argument("not a rotation cloud");
  Eigen::Matrix3d R;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) R(r, c) = data_[i * 9 + 3 * r + c];
  return R;
}

double PointCloud::distance(std::size_t i, std::size_t j) const {
  switch (metric_) {
    case MetricKind::circle_arc: {
      double d = std::fabs(data_[i] - data_[j]);
      return d <= 1.0 - d ? d : 1.0 - d;
    }
    case MetricKind::sphere_geodesic: {
      double dot = 0.0;
      for (int k = 0; k < ambient_dim_; ++k)
        dot += data_[i * ambient_dim_ + k] * data_[j * ambient_dim_ + k];
      return std::acos(clamp1(dot));
    }
    case MetricKind::sphere_euclidean: {
      double s = 0.0;
      for (int k = 0; k < ambient_dim_; ++k) {
        double d = data_[i * ambient_dim_ + k] - data_[j * ambient_dim_ + k];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::rotation_frobenius: {
      double s = 0.0;
      for (int k = 0; k < 9; ++k) {
        double d = data_[i * 9 + k] - data_[j * 9 + k];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case MetricKind::rotation_geodesic: {
      // angle of X^t Y: tr(X^t Y) = 1 + 2 cos(angle)
      double tr = 0.0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          tr += data_[i * 9 + 3 * r + c] * data_[j * 9 + 3 * r + c];
      return std::acos(clamp1(0.5 * (tr - 1.0)));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Eigen::VectorXd> PointCloud::embedded_points() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(count_);
  switch (space_) {
    case Space::circle:
      for (std::size_t i = 0; i < count_; ++i) {
        double a = circle_angle(i);
        Eigen::VectorXd v(2);
        v << std::cos(a), std::sin(a);
        out.push_back(v);
      }
      return out;
    case Space::sphere:
      for (std::size_t i = 0; i < count_; ++i) out.emplace_back(sphere_point(i));
      return out;
    case Space::rotation_group:
      throw std::invalid_argument(
          "SO(3) clouds have no supported embedding for ball constructions");
  }
  throw std::logic_error("unreachable");
}

void PointCloud::write_csv(std::ostream& os) const {
  switch (space_) {
    case Space::circle:
      os << "circle,1\n";
      break;
    case Space::sphere:
      os << "sphere," << ambient_dim_ << "\n";
      break;
    case Space::rotation_group:
      os << "so3,3\n";
      break;
  }
  char buf[32];
  for (std::size_t i = 0; i < count_; ++i) {
    if (space_ == Space::circle) {
      std::snprintf(buf, sizeof buf, "%.17g", circle_angle(i));
      os << buf << "\n";
      continue;
    }
    int stride = space_ == Space::sphere ? ambient_dim_ : 9;
    for (int k = 0; k < stride; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data_[i * stride + k]);
      os << (k ? "," : "") << buf;
    }
    os << "\n";
  }
}

PointCloud PointCloud::read_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::invalid_argument("point cloud CSV: empty input");
  std::istringstream h(header);
  std::string space_name, pstr;
  if (!std::getline(h, space_name, ',') || !std::getline(h, pstr, ','))
    throw std::invalid_argument("point cloud CSV: bad header, want space,p");
  int p = std::stoi(pstr);

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }

  auto expect_width = [&](std::size_t w) {
    for (const auto& r : rows)
      if (r.size() != w)
        throw std::invalid_argument("point cloud CSV: wrong column count");
  };

  if (space_name == "circle") {
    expect_width(1);
    std::vector<double> angles;
    for (const auto& r : rows) angles.push_back(r[0]);
    return circle_from_angles(angles);
  }
  if (space_name == "sphere") {
    expect_width(p);
    std::vector<double> packed;
    for (const auto& r : rows) packed.insert(packed.end(), r.begin(), r.end());
    return on_sphere(p, std::move(packed));
  }
  if (space_name == "so3") {
    expect_width(9);
    std::vector<Eigen::Matrix3d> mats;
    for (const auto& r : rows) {
      Eigen::Matrix3d R;
      for (int k = 0; k < 9; ++k) R(k / 3, k % 3) = r[k];
      mats.push_back(R);
    }
    return rotations(mats);
  }
  throw std::invalid_argument("point cloud CSV: unknown space " + space_name);
}

void PointCloud::write_csv_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_csv(os);
}

PointCloud PointCloud::read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open: " + path);
  return read_csv(is);
}

namespace {

struct Ball {
  Eigen::VectorXd center;
  double radius = -1.0;  // negative: empty ball

  bool contains(const Eigen::VectorXd& p) const {
    if (radius < 0.0) return false;
    return (p - center).norm() <= radius * (1.0 + 1e-12) + 1e-14;
  }
};

/// Ball with every support point on its boundary and center in their affine
/// hull; support sets are affinely independent along Welzl's recursion.
Ball circumball(const std::vector<Eigen::VectorXd>& support) {
  if (support.empty()) return {};
  if (support.size() == 1) return {support[0], 0.0};
  const Eigen::VectorXd& p0 = support[0];
  int k = static_cast<int>(support.size()) - 1;
  Eigen::MatrixXd A(k, k);
  Eigen::VectorXd b(k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd di = support[i + 1] - p0;
    for (int j = 0; j < k; ++j)
      A(i, j) = 2.0 * di.dot(support[j + 1] - p0);
    b(i) = di.squaredNorm();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    // Degenerate support (duplicate or affinely dependent points): retry
    // without the newest point, which changed nothing geometrically.
    std::vector<Eigen::VectorXd> reduced(support.begin(), support.end() - 1);
    return circumball(reduced);
  }
  Eigen::VectorXd lambda = lu.solve(b);
  Eigen::VectorXd center = p0;
  for (int i = 0; i < k; ++i) center += lambda(i) * (support[i + 1] - p0);
  return {center, (support[0] - center).norm()};
}

Ball welzl(std::vector<Eigen::VectorXd>& pts, std::size_t n,
           std::vector<Eigen::VectorXd>& support, std::size_t dim) {
  if (n == 0 || support.size() == dim + 1) return circumball(support);
  Ball d = welzl(pts, n - 1, support, dim);
  if (d.contains(pts[n - 1])) return d;
  support.push_back(pts[n - 1]);
  Ball d2 = welzl(pts, n - 1, support, dim);
  support.pop_back();
  // Move-to-front keeps the expected recursion depth small.
  auto p = pts[n - 1];
  pts.erase(pts.begin() + (n - 1));
  pts.insert(pts.begin(), p);
  return d2;
}

}  // namespace

double smallest_enclosing_ball_radius(const std::vector<Eigen::VectorXd>& pts) {
  if (pts.empty())
    throw std::invalid_argument("smallest enclosing ball of no points");
  std::size_t dim = pts[0].size();
  for (const auto& p : pts)
    if (static_cast<std::size_t>(p.size()) != dim)
      throw std::invalid_argument("points of mixed dimension");
  std::vector<Eigen::VectorXd> work = pts;
  std::vector<Eigen::VectorXd> support;
  Ball b = welzl(work, work.size(), support, dim);
  return b.radius;
}

}  // namespace topstat
