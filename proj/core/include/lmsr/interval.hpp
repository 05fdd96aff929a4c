#pragma once

#include <cmath>
#include <limits>

namespace lmsr {

/// Closed interval with outward rounding after every operation. An empty
/// interval means no feasible value exists.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = false;

  static Interval point(double v) { return {v, v, false}; }
  static Interval whole() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false};
  }
  static Interval none() { return {0.0, 0.0, true}; }

  bool contains(double v) const { return !empty && lo <= v && v <= hi; }
};

namespace interval_detail {

inline double down(double v) { return std::isfinite(v) ? std::nextafter(v, -std::numeric_limits<double>::infinity()) : v; }
inline double up(double v) { return std::isfinite(v) ? std::nextafter(v, std::numeric_limits<double>::infinity()) : v; }

inline Interval widen(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) return Interval::whole();
  return {down(lo), up(hi), false};
}

// 0 * inf is taken as 0: the finite factor bounds the product.
inline double mul0(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

}  // namespace interval_detail

inline Interval operator+(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return Interval::none();
  return interval_detail::widen(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
  if (a.empty || b.empty) return Interval::none();
  return interval_detail::widen(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator*(const Interval& a, const Interval& b) {
  using interval_detail::mul0;
  if (a.empty || b.empty) return Interval::none();
  const double c[4] = {mul0(a.lo, b.lo), mul0(a.lo, b.hi), mul0(a.hi, b.lo), mul0(a.hi, b.hi)};
  double lo = c[0];
  double hi = c[0];
  for (double v : c) {
    lo = std::fmin(lo, v);
    hi = std::fmax(hi, v);
  }
  return interval_detail::widen(lo, hi);
}

/// Division restricted to denominators with |b| >= eps; the part of `b`
/// inside (-eps, eps) is infeasible and excluded.
inline Interval divide(const Interval& a, const Interval& b, double eps) {
  if (a.empty || b.empty) return Interval::none();
  if (b.hi < eps && b.lo > -eps) return Interval::none();
  if (b.lo < eps && b.hi > -eps) return Interval::whole();
  const Interval inv = interval_detail::widen(1.0 / b.hi, 1.0 / b.lo);
  return a * inv;
}

inline Interval sqrt(const Interval& a) {
  if (a.empty || a.hi < 0.0) return Interval::none();
  const double lo = a.lo < 0.0 ? 0.0 : std::sqrt(a.lo);
  const Interval r = interval_detail::widen(lo, std::sqrt(a.hi));
  return {std::fmax(r.lo, 0.0), r.hi, false};
}

inline Interval exp(const Interval& a) {
  if (a.empty) return Interval::none();
  const Interval r = interval_detail::widen(std::exp(a.lo), std::exp(a.hi));
  return {std::fmax(r.lo, 0.0), r.hi, false};
}

/// min over r in [y - v.hi, y - v.lo] of r^2; +inf for an empty interval.
inline double min_square_residual(double y, const Interval& v) {
  if (v.empty) return std::numeric_limits<double>::infinity();
  if (v.contains(y)) return 0.0;
  const double gap = y < v.lo ? interval_detail::down(v.lo - y) : interval_detail::down(y - v.hi);
  if (gap <= 0.0) return 0.0;
  return interval_detail::down(gap * gap);
}

}  // namespace lmsr
