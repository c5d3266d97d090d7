#include "topstat/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <tuple>

namespace topstat {

std::string ExtendedReal::str() const {
  if (is_pos_infinity()) return "inf";
  if (is_neg_infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

ExtendedReal parse_extended_real(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtendedReal::infinity();
  if (s == "-inf") return ExtendedReal::neg_infinity();
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size())
    throw std::invalid_argument("not an extended real: '" + s + "'");
  return ExtendedReal(v);
}

void FieldSpec::validate() const {
  if (characteristic != 0 && characteristic != 2)
    throw std::invalid_argument("field characteristic must be 0 or 2");
}

PersistenceInterval::PersistenceInterval(int dim, ExtendedReal birth,
                                         ExtendedReal death)
    : PersistenceInterval(dim, birth, death,
                          /*birth_closed=*/birth.is_finite(),
                          /*death_closed=*/death.is_pos_infinity()) {}

PersistenceInterval::PersistenceInterval(int dim, ExtendedReal birth,
                                         ExtendedReal death, bool birth_closed,
                                         bool death_closed)
    : dim_(dim),
      birth_(birth),
      death_(death),
      birth_closed_(birth_closed),
      death_closed_(death_closed) {
  if (dim < 0) throw std::invalid_argument("interval dimension must be >= 0");
  if (birth > death) throw std::invalid_argument("interval birth > death");
}

ExtendedReal PersistenceInterval::length() const {
  if (birth_ == death_) return 0.0;  // covers [inf, inf]-style degeneracies
  return death_ - birth_;
}

bool PersistenceInterval::contains(ExtendedReal r) const {
  bool left = birth_ < r || (birth_ == r && birth_closed_);
  bool right = r < death_ || (r == death_ && death_closed_);
  return left && right;
}

bool operator<(const PersistenceInterval& a, const PersistenceInterval& b) {
  return std::make_tuple(a.dim_, a.birth_.value(), a.death_.value(),
                         a.birth_closed_, a.death_closed_) <
         std::make_tuple(b.dim_, b.birth_.value(), b.death_.value(),
                         b.birth_closed_, b.death_closed_);
}

ExtendedReal interval_length(const PersistenceInterval& j) { return j.length(); }

ExtendedReal symmetric_difference(const PersistenceInterval& a,
                                  const PersistenceInterval& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("symmetric_difference: dimension mismatch");
  const ExtendedReal b1 = a.birth(), d1 = a.death();
  const ExtendedReal b2 = b.birth(), d2 = b.death();

  if (d1.is_pos_infinity() && d2.is_pos_infinity()) {
    // Difference is the strip between the two births.
    if (b1.is_neg_infinity() && b2.is_neg_infinity()) return 0.0;
    if (b1.is_neg_infinity() || b2.is_neg_infinity())
      return ExtendedReal::infinity();
    return (b1 - b2).abs();
  }
  if (d1.is_pos_infinity() || d2.is_pos_infinity())
    return ExtendedReal::infinity();

  if (b1.is_neg_infinity() && b2.is_neg_infinity()) return (d1 - d2).abs();
  if (b1.is_neg_infinity() || b2.is_neg_infinity())
    return ExtendedReal::infinity();

  // All endpoints finite.
  double lo = std::max(b1.value(), b2.value());
  double hi = std::min(d1.value(), d2.value());
  double lengths = (d1.value() - b1.value()) + (d2.value() - b2.value());
  if (hi <= lo) return lengths;          // disjoint (or touching): union only
  return lengths - 2.0 * (hi - lo);      // subtract the overlap twice
}

Barcode::Barcode(std::vector<PersistenceInterval> intervals)
    : intervals_(std::move(intervals)) {
  std::erase_if(intervals_, [](const PersistenceInterval& j) {
    return j.length() == ExtendedReal(0.0);
  });
  std::sort(intervals_.begin(), intervals_.end());
}

std::vector<int> Barcode::dimensions() const {
  std::set<int> dims;
  for (const auto& j : intervals_) dims.insert(j.dim());
  return {dims.begin(), dims.end()};
}

std::vector<PersistenceInterval> Barcode::in_dimension(int dim) const {
  std::vector<PersistenceInterval> out;
  for (const auto& j : intervals_)
    if (j.dim() == dim) out.push_back(j);
  return out;
}

std::size_t Barcode::count_containing(int dim, ExtendedReal r) const {
  std::size_t n = 0;
  for (const auto& j : intervals_)
    if (j.dim() == dim && j.contains(r)) ++n;
  return n;
}

Barcode Barcode::merged(const Barcode& a, const Barcode& b) {
  std::vector<PersistenceInterval> all = a.intervals_;
  all.insert(all.end(), b.intervals_.begin(), b.intervals_.end());
  return Barcode(std::move(all));
}

void BettiZeroCurve::validate() const {
  if (xs.size() != values.size())
    throw std::invalid_argument("BettiZeroCurve: size mismatch");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && xs[i] <= 1.0))
      throw std::invalid_argument("BettiZeroCurve: x outside (0, 1]");
    if (!(values[i] >= 0.0))
      throw std::invalid_argument("BettiZeroCurve: negative value");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw std::invalid_argument("BettiZeroCurve: xs not increasing");
    if (i > 0 && values[i] < values[i - 1])
      throw std::invalid_argument("BettiZeroCurve: values not monotone");
  }
}

}  // namespace topstat
