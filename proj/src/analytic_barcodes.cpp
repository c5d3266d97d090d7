#include "topstat/analytic_barcodes.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "topstat/geometry.hpp"
#include "topstat/quadrature.hpp"
#include "topstat/special.hpp"

namespace topstat {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kTableSize = 257;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

/// log of the ratio surface(S^{p-2}) / surface(S^{p-1}), the normalizer of
/// the colatitude marginal sin^{p-2} on [0, pi].
double log_colatitude_ratio(int p) {
  return std::lgamma(0.5 * p) - std::lgamma(0.5 * (p - 1)) -
         0.5 * std::log(kPi);
}

/// Integral of exp(kappa (cos t - 1)) sin^{p-2} t over [a, b]; the exponent
/// is shifted so the integrand stays in [0, 1].
double unimodal_segment(int p, double kappa, double a, double b) {
  if (a >= b) return 0.0;
  return integrate(
      [&](double t) {
        return std::exp(kappa * (std::cos(t) - 1.0)) *
               std::pow(std::sin(t), p - 2);
      },
      a, b, 1e-13);
}

/// Integral of exp(kappa (cos^2 t - 1)) sin^{p-2} t over [a, b].
double axial_segment(int p, double kappa, double a, double b) {
  if (a >= b) return 0.0;
  return integrate(
      [&](double t) {
        double c = std::cos(t);
        return std::exp(kappa * (c * c - 1.0)) *
               std::pow(std::sin(t), p - 2);
      },
      a, b, 1e-13);
}

/// Superlevel mass for a rotationally symmetric density with colatitude
/// profile exp(log_c + kappa cos t). Whichever of the covered cap and its
/// complement is smaller is the one integrated, so the absolute error is
/// relative to min(mass, 1 - mass).
double unimodal_mass(int p, double kappa, double log_c, double r) {
  double u = -(std::log(r) + log_c) / kappa;  // cos of the cap boundary
  if (u >= 1.0) return 0.0;
  if (u <= -1.0) return 1.0;
  double theta = std::acos(u);
  double scale = log_colatitude_ratio(p) + log_c + kappa;
  double head =
      std::exp(scale + std::log(unimodal_segment(p, kappa, 0.0, theta)));
  if (head <= 0.5) return clamp01(head);
  double tail =
      std::exp(scale + std::log(unimodal_segment(p, kappa, theta, kPi)));
  return clamp01(1.0 - tail);
}

/// Superlevel mass for the axially symmetric bimodal density
/// exp(log_d + kappa cos^2 t): two antipodal caps.
double axial_mass(int p, double kappa, double log_d, double r) {
  double u = -(std::log(r) + log_d) / kappa;  // threshold on cos^2
  if (u >= 1.0) return 0.0;
  if (u <= 0.0) return 1.0;
  double alpha = std::acos(std::sqrt(u));  // cap half-angle, in (0, pi/2)
  double scale = std::log(2.0) + log_colatitude_ratio(p) + log_d + kappa;
  double head = std::exp(scale + std::log(axial_segment(p, kappa, 0.0, alpha)));
  if (head <= 0.5) return clamp01(head);
  double band =
      std::exp(scale + std::log(axial_segment(p, kappa, alpha, 0.5 * kPi)));
  return clamp01(1.0 - band);
}

/// Superlevel mass for the anisotropic density exp(log_d + sum k_i x_i^2)
/// on S^1 or S^2, reduced to quadrature over longitude with a per-longitude
/// colatitude cutoff.
double anisotropic_mass(const BinghamDistribution& s, double log_d, double r) {
  int p = static_cast<int>(s.concentrations.size());
  double w = -(std::log(r) + log_d);  // threshold on the quadratic form
  double k1 = s.concentrations(0);
  double kp = s.concentrations(p - 1);
  if (w >= kp) return 0.0;
  if (w <= k1) return 1.0;
  if (p == 2) {
    // x = cos(psi) v1 + sin(psi) v2; superlevel is sin^2 psi >= v.
    double v = (w - k1) / (kp - k1);
    double psi = std::asin(std::min(1.0, std::sqrt(v)));
    double scale = std::log(2.0 / kPi) + log_d + kp;
    auto seg = [&](double a, double b) {
      return integrate(
          [&](double t) {
            double c = std::cos(t);
            return std::exp(-(kp - k1) * c * c);
          },
          a, b, 1e-13);
    };
    double head = std::exp(scale + std::log(seg(psi, 0.5 * kPi)));
    if (head <= 0.5) return clamp01(head);
    return clamp01(1.0 - std::exp(scale + std::log(seg(0.0, psi))));
  }
  if (p != 3)
    throw std::invalid_argument(
        "anisotropic superlevel mass implemented for p in {2, 3}");
  double k2 = s.concentrations(1);
  // t = longitude-frame cosine of colatitude from the dominant axis; for
  // each longitude phi the superlevel set is |t| >= t*(phi).
  auto k_phi = [&](double phi) {
    double c = std::cos(phi);
    return k1 * c * c + k2 * (1.0 - c * c);
  };
  auto t_star = [&](double phi) {
    double v = (kp - w) / (kp - k_phi(phi));
    return v >= 1.0 ? 0.0 : std::sqrt(1.0 - v);
  };
  auto column = [&](double phi, double t_lo, double t_hi) {
    if (t_lo >= t_hi) return 0.0;
    double kd = k_phi(phi) - kp;  // <= 0
    return integrate(
        [&](double t) { return std::exp(kd * (1.0 - t * t)); }, t_lo, t_hi,
        1e-13);
  };
  double scale = log_d + kp;
  double head = std::exp(
      scale +
      std::log(integrate(
          [&](double phi) { return column(phi, t_star(phi), 1.0) / (2.0 * kPi); },
          0.0, 2.0 * kPi, 1e-11)));
  if (head <= 0.5) return clamp01(head);
  double rest = std::exp(
      scale +
      std::log(integrate(
          [&](double phi) { return column(phi, 0.0, t_star(phi)) / (2.0 * kPi); },
          0.0, 2.0 * kPi, 1e-11)));
  return clamp01(1.0 - rest);
}

PersistenceInterval bar(int dim, double birth, ExtendedReal death) {
  return PersistenceInterval(dim, ExtendedReal(birth), death);
}

/// Replaces the rotation-group family by the bimodal sphere family it lifts
/// to on the unit quaternions (concentration quadrupled, axis the quaternion
/// of the mode); the two densities correspond exactly under the double cover.
DistributionSpec lift_rotation_family(const DistributionSpec& spec) {
  if (const auto* m = std::get_if<MatrixVonMises>(&spec)) {
    Quaternion q = quaternion_from_rotation(m->mode);
    return DistributionSpec(WatsonDistribution{4, q.vec(), 4.0 * m->kappa});
  }
  return spec;
}

bool is_uniform(const DistributionSpec& spec) {
  if (const auto* v = std::get_if<VonMises>(&spec)) return v->kappa == 0.0;
  if (const auto* v = std::get_if<VonMisesFisher>(&spec))
    return v->kappa == 0.0;
  return false;
}

}  // namespace

SuperlevelMass::SuperlevelMass(const DistributionSpec& spec)
    : spec_(lift_rotation_family(spec)) {
  validate(spec_);
  if (is_uniform(spec_)) {
    degenerate_ = true;
    r_min_ = r_max_ = 1.0;
    return;
  }
  r_min_ = std::exp(-log_max_density(spec_));
  r_max_ = std::exp(-log_min_density(spec_));
  grid_r_.reserve(kTableSize);
  grid_mass_.reserve(kTableSize);
  double log_span = std::log(r_max_ / r_min_);
  for (int i = 0; i < kTableSize; ++i) {
    double r = r_min_ * std::exp(log_span * i / (kTableSize - 1));
    grid_r_.push_back(r);
    grid_mass_.push_back(evaluate(r));
  }
  for (int i = 1; i < kTableSize; ++i)
    if (grid_mass_[i] + 1e-10 < grid_mass_[i - 1])
      throw std::runtime_error("superlevel mass is not monotone");
}

double SuperlevelMass::evaluate(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("superlevel mass: r >= 0");
  if (r <= r_min_) return 0.0;
  if (r >= r_max_) return 1.0;
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises>) {
          return unimodal_mass(2, s.kappa, -log_bessel_i(0.0, s.kappa), r);
        } else if constexpr (std::is_same_v<T, VonMisesFisher>) {
          return unimodal_mass(s.p, s.kappa, log_vmf_normalizer(s.p, s.kappa),
                               r);
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          return axial_mass(s.p, s.kappa, log_watson_normalizer(s.p, s.kappa),
                            r);
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          return anisotropic_mass(s, log_bingham_normalizer(s.concentrations),
                                  r);
        } else {
          throw std::logic_error("rotation family not lifted");
        }
      },
      spec_);
}

double SuperlevelMass::operator()(double r) const {
  if (degenerate_) return r >= r_max_ ? 1.0 : 0.0;
  return evaluate(r);
}

double SuperlevelMass::invert(double x) const {
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("superlevel mass inversion: x must be in (0, 1]");
  if (degenerate_) return r_max_;
  // Bracket from the table: mass(lo) < x <= mass(hi), with hi = r_max known
  // to carry mass one by construction.
  double lo = r_min_;
  double hi = r_max_;
  for (int i = 1; i < kTableSize; ++i) {
    if (grid_mass_[i] < x) {
      lo = grid_r_[i];
    } else {
      hi = grid_r_[i];
      break;
    }
  }
  while (hi - lo > 1e-12 * hi) {
    double mid = 0.5 * (lo + hi);
    if (evaluate(mid) >= x)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Barcode morse_barcode(const DistributionSpec& spec, const FieldSpec& field) {
  field.validate();
  validate(spec);
  const ExtendedReal inf = ExtendedReal::infinity();
  std::vector<PersistenceInterval> iv;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises> ||
                      std::is_same_v<T, VonMisesFisher>) {
          int p = std::is_same_v<T, VonMises> ? 2 : ambient_dim_of(spec);
          double lo = min_density(spec);
          double hi = max_density(spec);
          iv.push_back(bar(0, lo, inf));
          iv.push_back(bar(p - 1, hi, inf));
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          double lo = min_density(spec);
          double hi = max_density(spec);
          iv.push_back(bar(0, lo, inf));
          iv.push_back(bar(s.p - 2, lo, ExtendedReal(hi)));
          iv.push_back(bar(s.p - 1, hi, inf));
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          double log_d = log_bingham_normalizer(s.concentrations);
          auto level = [&](int i) {
            return std::exp(log_d + s.concentrations(i));
          };
          iv.push_back(bar(0, level(0), inf));
          iv.push_back(bar(0, level(0), ExtendedReal(level(1))));
          for (int i = 1; i <= p - 2; ++i)
            iv.push_back(bar(i, level(i), ExtendedReal(level(i + 1))));
          iv.push_back(bar(p - 1, level(p - 1), inf));
        } else {
          double lo = min_density(spec);
          double hi = max_density(spec);
          iv.push_back(bar(0, lo, inf));
          iv.push_back(bar(3, hi, inf));
          if (field.characteristic == 2) {
            iv.push_back(bar(1, lo, ExtendedReal(hi)));
            iv.push_back(bar(2, lo, ExtendedReal(hi)));
          }
        }
      },
      spec);
  return Barcode(std::move(iv));
}

Barcode cech_barcode(const DistributionSpec& spec) {
  validate(spec);
  const ExtendedReal inf = ExtendedReal::infinity();
  std::vector<PersistenceInterval> iv;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, VonMises> ||
                      std::is_same_v<T, VonMisesFisher>) {
          int p = std::is_same_v<T, VonMises> ? 2 : ambient_dim_of(spec);
          iv.push_back(bar(p - 1, std::exp(-log_min_density(spec)), inf));
        } else if constexpr (std::is_same_v<T, WatsonDistribution>) {
          iv.push_back(bar(s.p - 1, std::exp(-log_min_density(spec)), inf));
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          double log_d = log_bingham_normalizer(s.concentrations);
          // radius(j) = e^{-k_j} / d with j counted from one.
          auto radius = [&](int j) {
            return std::exp(-log_d - s.concentrations(j - 1));
          };
          for (int i = 1; i <= p - 2; ++i)
            iv.push_back(
                bar(i, radius(p - i), ExtendedReal(radius(p - i - 1))));
          iv.push_back(bar(p - 1, radius(1), inf));
        } else {
          iv.push_back(bar(3, std::exp(-log_min_density(spec)), inf));
        }
      },
      spec);
  return Barcode(std::move(iv));
}

std::vector<PersistenceInterval> cech_component_intervals(
    const DistributionSpec& spec) {
  validate(spec);
  const ExtendedReal inf = ExtendedReal::infinity();
  std::vector<PersistenceInterval> iv;
  double first = std::exp(-log_max_density(spec));
  iv.push_back(bar(0, first, inf));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WatsonDistribution>) {
          (void)s;
          // Two antipodal caps merge when the superlevel set reaches the
          // minimum locus.
          iv.push_back(
              bar(0, first, ExtendedReal(std::exp(-log_min_density(spec)))));
        } else if constexpr (std::is_same_v<T, BinghamDistribution>) {
          int p = static_cast<int>(s.concentrations.size());
          double log_d = log_bingham_normalizer(s.concentrations);
          // Caps around the dominant axis connect through the second axis.
          iv.push_back(bar(
              0, first,
              ExtendedReal(std::exp(-log_d - s.concentrations(p - 2)))));
        }
        // Unimodal and rotation-group cases: a single contractible component
        // throughout.
      },
      spec);
  // Hand the list back in canonical interval order, like every barcode.
  return Barcode(std::move(iv)).intervals();
}

double vmf_sphere_betti0_closed_form(double kappa, double x) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("closed form requires kappa > 0");
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("betti0: x must be in (0, 1]");
  // (e^{2k} - 1) / (2k [(1-x) e^{2k} + x]) rewritten overflow-free.
  double em2k = std::exp(-2.0 * kappa);
  return (1.0 - em2k) / (2.0 * kappa * ((1.0 - x) + x * em2k));
}

double vmf_sphere_betti0_kappa_derivative(double kappa, double x) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("derivative requires kappa > 0");
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("betti0: x must be in (0, 1]");
  // (-(1-x) e^{4k} + (1 + 2k - 2x) e^{2k} + x) / (2 k^2 [(1-x) e^{2k} + x]^2),
  // scaled by e^{-4k} in numerator and denominator.
  double em2k = std::exp(-2.0 * kappa);
  double em4k = em2k * em2k;
  double num = -(1.0 - x) + (1.0 + 2.0 * kappa - 2.0 * x) * em2k + x * em4k;
  double den = (1.0 - x) + x * em2k;
  return num / (2.0 * kappa * kappa * den * den);
}

double vmf_sphere_betti0_kappa_derivative_bound(double kappa) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("bound requires kappa > 0");
  double e2k = std::exp(2.0 * kappa);
  return (e2k * e2k + (1.0 + 2.0 * kappa) * e2k + 1.0) /
         (2.0 * kappa * kappa);
}

double betti0_value(const DistributionSpec& spec, double x) {
  validate(spec);
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("betti0: x must be in (0, 1]");
  if (is_uniform(spec)) return 1.0;
  if (const auto* v = std::get_if<VonMisesFisher>(&spec))
    if (v->p == 3) return vmf_sphere_betti0_closed_form(v->kappa, x);
  return SuperlevelMass(spec).invert(x);
}

BettiZeroCurve betti0_curve(const DistributionSpec& spec, int grid) {
  validate(spec);
  if (grid < 1) throw std::invalid_argument("betti0 curve: grid must be >= 1");
  BettiZeroCurve curve;
  curve.xs.reserve(grid);
  curve.values.reserve(grid);
  const auto* v = std::get_if<VonMisesFisher>(&spec);
  bool closed_form = v != nullptr && v->p == 3 && v->kappa > 0.0;
  bool uniform = is_uniform(spec);
  std::optional<SuperlevelMass> mass;
  if (!closed_form && !uniform) mass.emplace(spec);
  for (int i = 1; i <= grid; ++i) {
    double x = static_cast<double>(i) / grid;
    double r;
    if (uniform)
      r = 1.0;
    else if (closed_form)
      r = vmf_sphere_betti0_closed_form(v->kappa, x);
    else
      r = mass->invert(x);
    if (!curve.values.empty()) r = std::max(r, curve.values.back());
    curve.xs.push_back(x);
    curve.values.push_back(r);
  }
  curve.validate();
  return curve;
}

std::pair<double, double> betti0_parametric_point(const DistributionSpec& spec,
                                                  double t) {
  validate(spec);
  if (!(t >= 0.0 && t <= kPi))
    throw std::invalid_argument("parametric point: t must be in [0, pi]");
  int p;
  double kappa;
  double log_c;
  if (const auto* vm = std::get_if<VonMises>(&spec)) {
    p = 2;
    kappa = vm->kappa;
    log_c = kappa > 0.0 ? -log_bessel_i(0.0, kappa) : 0.0;
  } else if (const auto* vmf = std::get_if<VonMisesFisher>(&spec)) {
    p = vmf->p;
    kappa = vmf->kappa;
    log_c = log_vmf_normalizer(p, kappa);
  } else {
    throw std::invalid_argument(
        "parametric form exists for the unimodal families only");
  }
  if (!(kappa > 0.0))
    throw std::invalid_argument("parametric form requires kappa > 0");
  double x = 0.0;
  if (t > 0.0) {
    x = clamp01(std::exp(log_colatitude_ratio(p) + log_c + kappa +
                         std::log(unimodal_segment(p, kappa, 0.0, t))));
  }
  double r = std::exp(-kappa * std::cos(t) - log_c);
  return {x, r};
}

namespace {

/// Bounded intervals of one dimension as sorted (low, high) endpoint pairs.
std::vector<std::pair<double, double>> bounded_pairs(
    const std::vector<PersistenceInterval>& intervals, bool reciprocal) {
  std::vector<std::pair<double, double>> out;
  for (const auto& j : intervals) {
    if (!j.death().is_finite() || !j.birth().is_finite()) continue;
    double a = j.birth().value();
    double b = j.death().value();
    if (reciprocal) {
      a = 1.0 / a;
      b = 1.0 / b;
    }
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool pairs_match(const std::vector<std::pair<double, double>>& a,
                 const std::vector<std::pair<double, double>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s1 = std::max({std::fabs(a[i].first), std::fabs(b[i].first), 1e-300});
    double s2 = std::max({std::fabs(a[i].second), std::fabs(b[i].second), 1e-300});
    if (std::fabs(a[i].first - b[i].first) > 1e-9 * s1) return false;
    if (std::fabs(a[i].second - b[i].second) > 1e-9 * s2) return false;
  }
  return true;
}

}  // namespace

bool duality_check(const DistributionSpec& spec) {
  if (!std::holds_alternative<WatsonDistribution>(spec) &&
      !std::holds_alternative<BinghamDistribution>(spec))
    throw std::invalid_argument(
        "duality check supports the axial and anisotropic sphere families");
  int p = ambient_dim_of(spec);
  Barcode sublevel = morse_barcode(spec, FieldSpec::f2());
  Barcode superlevel = cech_barcode(spec);
  std::vector<PersistenceInterval> components = cech_component_intervals(spec);
  for (int i = 0; i <= p - 2; ++i) {
    int dual = p - 2 - i;
    auto morse_side = bounded_pairs(sublevel.in_dimension(i), true);
    auto cech_side = bounded_pairs(
        dual == 0 ? components : superlevel.in_dimension(dual), false);
    if (!pairs_match(morse_side, cech_side)) return false;
  }
  // Dimensions outside the dual range carry no bounded intervals on either
  // side; confirm rather than assume.
  for (int d : sublevel.dimensions())
    if ((d < 0 || d > p - 2) &&
        !bounded_pairs(sublevel.in_dimension(d), false).empty())
      return false;
  for (int d : superlevel.dimensions())
    if (p - 2 - d < 0 || p - 2 - d > p - 2)
      if (!bounded_pairs(superlevel.in_dimension(d), false).empty())
        return false;
  return true;
}

}  // namespace topstat
