#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace topstat {

/// A point of the extended real line [-inf, +inf].
///
/// Backed by an IEEE double; +/-infinity are first-class values so interval
/// endpoints, lengths and matching costs can be infinite without a tagged
/// union. NaN is rejected at construction, which makes the order total.
/// Indeterminate arithmetic (inf - inf, (-inf) + inf) throws.
class ExtendedReal {
 public:
  ExtendedReal() : v_(0.0) {}
  ExtendedReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN");
  }

  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  static ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_infinity() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_infinity() const { return std::isinf(v_) && v_ < 0; }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtendedReal a, ExtendedReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if ((a.is_pos_infinity() && b.is_neg_infinity()) ||
        (a.is_neg_infinity() && b.is_pos_infinity()))
      throw std::domain_error("ExtendedReal: inf + (-inf)");
    return ExtendedReal(a.v_ + b.v_);
  }
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    if (std::isinf(a.v_) && std::isinf(b.v_) && a.v_ == b.v_)
      throw std::domain_error("ExtendedReal: inf - inf");
    return ExtendedReal(a.v_ - b.v_);
  }
  friend ExtendedReal operator-(ExtendedReal a) { return ExtendedReal(-a.v_); }

  ExtendedReal abs() const { return ExtendedReal(std::fabs(v_)); }

  /// "inf" / "-inf" / shortest round-trip decimal.
  std::string str() const;

 private:
  double v_;
};

ExtendedReal parse_extended_real(const std::string& s);

}  // namespace topstat
