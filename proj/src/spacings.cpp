#include "topstat/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "topstat/complex.hpp"
#include "topstat/persistence.hpp"
#include "topstat/rng.hpp"

namespace topstat {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

constexpr std::size_t kExactLimit = 60;

int128 gcd128(int128 a, int128 b) {
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// lcm(1..n); fits in 128 bits well past n = 60.
int128 lcm_upto(std::size_t n) {
  int128 l = 1;
  for (std::size_t j = 2; j <= n; ++j) {
    int128 g = gcd128(l, static_cast<int128>(j));
    l = l / g * static_cast<int128>(j);
  }
  return l;
}

double kahan_reciprocal_sum(std::size_t from, std::size_t to) {
  double sum = 0.0, carry = 0.0;
  for (std::size_t j = from; j <= to; ++j) {
    double term = 1.0 / static_cast<double>(j) - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum;
}

/// C(n, k) exactly; valid whenever the result fits in 64 bits (all n <= 60).
std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
  if (k > n - k) k = n - k;
  uint128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: the running value is always integral
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

void SpacingSet::validate() const {
  if (n < 2 || gaps.size() != n || sorted.size() != n)
    throw std::invalid_argument("spacing set: need n >= 2 gaps");
  double sum = 0.0, carry = 0.0;
  for (double g : gaps) {
    if (!(g > 0.0)) throw std::invalid_argument("spacing set: gaps must be positive");
    double term = g - carry;
    double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("spacing set: gaps must sum to one");
  if (!std::is_sorted(sorted.begin(), sorted.end()))
    throw std::invalid_argument("spacing set: order statistics not sorted");
}

SpacingSet spacings(const PointCloud& cloud) {
  if (cloud.space() != Space::circle)
    throw std::invalid_argument("spacings: circle clouds only");
  std::size_t n = cloud.size();
  if (n < 2) throw std::invalid_argument("spacings: need at least two points");
  double anchor = cloud.circle_position(0);
  std::vector<double> rel(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = cloud.circle_position(i) - anchor;
    if (d < 0.0) d += 1.0;
    if (d >= 1.0) d = 0.0;
    rel[i] = d;
  }
  std::sort(rel.begin(), rel.end());
  SpacingSet out;
  out.n = n;
  out.gaps.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out.gaps.push_back(rel[i + 1] - rel[i]);
  out.gaps.push_back(1.0 - rel[n - 1]);
  out.sorted = out.gaps;
  std::sort(out.sorted.begin(), out.sorted.end());
  out.validate();
  return out;
}

double expected_spacing(std::size_t n, std::size_t i) {
  if (n < 1 || i < 1 || i > n)
    throw std::invalid_argument("expected spacing: need 1 <= i <= n");
  if (n <= kExactLimit) {
    int128 den = lcm_upto(n);
    int128 num = 0;
    for (std::size_t j = n + 1 - i; j <= n; ++j)
      num += den / static_cast<int128>(j);
    long double value = static_cast<long double>(num) /
                        (static_cast<long double>(den) * static_cast<long double>(n));
    return static_cast<double>(value);
  }
  return kahan_reciprocal_sum(n + 1 - i, n) / static_cast<double>(n);
}

double whitworth_tail(std::size_t n, double x) {
  if (n < 1) throw std::invalid_argument("whitworth tail: n >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("whitworth tail: x > 0");
  if (x >= 1.0) return 0.0;
  double sum = 0.0, carry = 0.0;
  for (std::size_t k = 1; k * x < 1.0 && k <= n; ++k) {
    double base = 1.0 - static_cast<double>(k) * x;
    double term;
    if (n <= kExactLimit) {
      term = static_cast<double>(binomial_u64(n, k)) *
             std::pow(base, static_cast<double>(n - 1));
    } else {
      double log_binom = std::lgamma(static_cast<double>(n + 1)) -
                         std::lgamma(static_cast<double>(k + 1)) -
                         std::lgamma(static_cast<double>(n - k + 1));
      term = std::exp(log_binom +
                      static_cast<double>(n - 1) * std::log(base));
    }
    if (k % 2 == 0) term = -term;
    double t = term - carry;
    double next = sum + t;
    carry = (next - sum) - t;
    sum = next;
  }
  return std::min(1.0, std::max(0.0, sum));
}

Barcode expected_betti0_barcode(std::size_t n) {
  if (n < 2) throw std::invalid_argument("expected barcode: n >= 2");
  std::vector<PersistenceInterval> iv;
  iv.reserve(n);
  for (std::size_t i = 1; i < n; ++i)
    iv.emplace_back(0, ExtendedReal(0.0), ExtendedReal(expected_spacing(n, i)));
  iv.emplace_back(0, ExtendedReal(0.0), ExtendedReal::infinity());
  return Barcode(std::move(iv));
}

Barcode expected_betti1_barcode(std::size_t n) {
  if (n < 2) throw std::invalid_argument("expected barcode: n >= 2");
  std::vector<PersistenceInterval> iv;
  iv.emplace_back(1, ExtendedReal(expected_spacing(n, n)),
                  ExtendedReal::infinity());
  return Barcode(std::move(iv));
}

double empirical_betti0_function(std::size_t n, double x) {
  if (n < 2) throw std::invalid_argument("empirical betti0: n >= 2");
  if (!(x > 0.0 && x <= 1.0))
    throw std::invalid_argument("empirical betti0: x must be in (0, 1]");
  auto m = static_cast<std::size_t>(
      std::ceil(static_cast<double>(n - 1) * x));
  m = std::max<std::size_t>(1, std::min(m, n - 1));
  double cn = static_cast<double>(n - 1) / (1.0 - expected_spacing(n, n));
  return cn * expected_spacing(n, m);
}

UniformCircleReport uniform_circle_persistence_check(std::size_t n,
                                                     std::uint64_t seed) {
  if (n < 3)
    throw std::invalid_argument("uniform circle check: need n >= 3 points");
  Rng rng(seed);
  // Anchor the sample at its first draw so that stored positions, gap
  // arithmetic, and metric distances share one float pipeline.
  std::vector<double> pos(n);
  double anchor = rng.uniform();
  pos[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double d = rng.uniform() - anchor;
    if (d < 0.0) d += 1.0;
    if (d >= 1.0) d = 0.0;
    pos[i] = d;
  }
  PointCloud cloud = PointCloud::circle_from_positions(pos);
  SpacingSet gaps = spacings(cloud);

  UniformCircleReport report;
  report.n = n;
  report.seed = seed;
  report.largest_gap = gaps.sorted.back();

  Barcode barcode = persistence_barcode(
      rips_filtration(cloud, 2, ExtendedReal(0.6)), FieldSpec::f2());

  std::vector<double> deaths;
  for (const auto& j : barcode.in_dimension(0))
    if (j.death().is_finite()) deaths.push_back(j.death().value());
  std::sort(deaths.begin(), deaths.end());
  report.deaths_match_gaps =
      deaths.size() == n - 1 &&
      std::equal(deaths.begin(), deaths.end(), gaps.sorted.begin());

  if (report.largest_gap <= 1.0 / 3.0) {
    report.cycle_tested = true;
    auto cycles = barcode.in_dimension(1);
    report.cycle_ok = cycles.size() == 1 &&
                      cycles[0].birth().value() == report.largest_gap &&
                      cycles[0].death().is_finite() &&
                      cycles[0].death().value() >= 1.0 / 3.0 &&
                      cycles[0].death().value() <= 0.5;
  }
  return report;
}

}  // namespace topstat
