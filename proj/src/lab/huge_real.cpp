#include "abq/lab/huge_real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abq/errors.hpp"

namespace abq::lab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log X above this moves to the log log representation
constexpr double kLogCeiling = 1e300;
// log log X below this moves back
constexpr double kLogLogFloor = 690.0;

}  // namespace

HugeReal HugeReal::normalized(int level, double v) {
  if (level == 1 && v > kLogCeiling) return {2, std::log(v)};
  if (level == 2 && v < kLogLogFloor) return {1, std::exp(v)};
  return {level, v};
}

HugeReal HugeReal::from_value(double x) {
  if (!(x >= 0.0)) throw InputError("HugeReal holds nonnegative values");
  if (x == 0.0) return {};
  return normalized(1, std::log(x));
}

HugeReal HugeReal::from_log(double log_x) {
  if (std::isnan(log_x)) throw InputError("HugeReal from NaN");
  if (log_x == -kInf) return {};
  return normalized(1, log_x);
}

HugeReal HugeReal::from_loglog(double loglog_x) {
  if (std::isnan(loglog_x)) throw InputError("HugeReal from NaN");
  return normalized(2, loglog_x);
}

double HugeReal::log() const {
  if (level_ == 0) return -kInf;
  return level_ == 1 ? v_ : std::exp(v_);
}

double HugeReal::loglog() const {
  if (level_ == 2) return v_;
  return std::log(log());
}

double HugeReal::value() const { return level_ == 0 ? 0.0 : std::exp(log()); }

HugeReal operator+(const HugeReal& a, const HugeReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const HugeReal& big = (a.level_ > b.level_ || (a.level_ == b.level_ && a.v_ >= b.v_)) ? a : b;
  const HugeReal& small = &big == &a ? b : a;
  if (big.level_ == 1) {
    return HugeReal::normalized(1, big.v_ + std::log1p(std::exp(small.v_ - big.v_)));
  }
  // log(X + Y) = L + log1p(exp(l - L)), L = log X huge
  const double big_log = std::exp(big.v_);
  double gap;  // log Y - log X <= 0
  if (small.level_ == 2 && small.v_ == big.v_) {
    gap = 0.0;
  } else {
    gap = small.log() - big_log;
    if (std::isnan(gap)) gap = -kInf;
  }
  return HugeReal::normalized(2, big.v_ + std::log1p(std::log1p(std::exp(gap)) / big_log));
}

HugeReal HugeReal::scaled(double c) const {
  if (!(c > 0.0)) throw InputError("HugeReal scale must be positive");
  if (level_ == 0) return *this;
  if (level_ == 1) return normalized(1, v_ + std::log(c));
  return normalized(2, v_ + std::log1p(std::log(c) / std::exp(v_)));
}

HugeReal HugeReal::pow(double p) const {
  if (!(p > 0.0)) throw InputError("HugeReal power must be positive");
  if (level_ == 0) return *this;
  if (level_ == 1) return normalized(1, p * v_);
  return normalized(2, v_ + std::log(p));
}

double log_ratio(const HugeReal& a, const HugeReal& b) {
  if (a.is_zero()) return b.is_zero() ? 0.0 : -kInf;
  if (b.is_zero()) return kInf;
  const double la = a.log();
  const double lb = b.log();
  if (std::isfinite(la) && std::isfinite(lb)) return la - lb;
  // at least one log overflows: compare at the log log level
  const double lla = a.loglog();
  const double llb = b.loglog();
  if (lla == llb) return 0.0;
  const double diff = std::exp(std::max(lla, llb)) * -std::expm1(std::min(lla, llb) - std::max(lla, llb));
  return lla > llb ? diff : -diff;
}

bool operator<=(const HugeReal& a, const HugeReal& b) { return log_ratio(a, b) <= 0.0; }

}  // namespace abq::lab
