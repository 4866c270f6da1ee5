#pragma once

namespace abq::lab {

/// Nonnegative real that may exceed the double range, held as log X or, once
/// log X itself is too large, as log log X. Sums of two values whose logs are
/// beyond double range keep only the larger (the smaller one cannot change
/// log log X at double precision).
class HugeReal {
 public:
  HugeReal() = default;  // zero
  static HugeReal from_value(double x);
  static HugeReal from_log(double log_x);
  static HugeReal from_loglog(double loglog_x);

  [[nodiscard]] bool is_zero() const { return level_ == 0; }
  /// log X; +inf when it overflows, -inf for zero.
  [[nodiscard]] double log() const;
  /// log log X (requires X > 1 for a finite answer).
  [[nodiscard]] double loglog() const;
  /// X as a double (may be +inf).
  [[nodiscard]] double value() const;

  friend HugeReal operator+(const HugeReal& a, const HugeReal& b);
  /// c X for c > 0.
  [[nodiscard]] HugeReal scaled(double c) const;
  /// X^p for p > 0.
  [[nodiscard]] HugeReal pow(double p) const;

 private:
  HugeReal(int level, double v) : level_(level), v_(v) {}
  static HugeReal normalized(int level, double v);

  int level_ = 0;  // 0: zero, 1: v = log X, 2: v = log log X
  double v_ = 0.0;
};

/// log(a / b); -inf when a = 0 or b overwhelms a, +inf the other way round.
double log_ratio(const HugeReal& a, const HugeReal& b);
bool operator<=(const HugeReal& a, const HugeReal& b);

}  // namespace abq::lab
