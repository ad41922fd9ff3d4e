// Copyright 2026 The connperim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace connperim {

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Errors

/// Input violates a type invariant or an operation precondition.
/// `kind` is a stable machine-readable tag, `detail` names the offending
/// objects (ring indices, parameter values).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(detail) {}
  const std::string& kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
};

/// Computation would exceed a memory or size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Scalars

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  // Every finite double is a dyadic rational, so this is exact.
  static Rational from_double(double v) {
    if (!std::isfinite(v)) throw ValidationError("non_finite", "coordinate is not finite");
    int exp = 0;
    double mant = std::frexp(v, &exp);
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(m);
    if (exp > 0) {
      r *= Rational(boost::multiprecision::cpp_int(1) << exp);
    } else if (exp < 0) {
      r /= Rational(boost::multiprecision::cpp_int(1) << -exp);
    }
    return r;
  }
};

template <class T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

// ---------------------------------------------------------------------------
// Points

template <class T>
struct Vec2 {
  T x{};
  T y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(const Vec2& a, const T& s) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

using Point = Vec2<double>;
using RationalPoint = Vec2<Rational>;

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

inline double norm(const Point& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point& a, const Point& b) { return norm(a - b); }

template <class T>
Point to_double(const Vec2<T>& p) {
  return {ScalarTraits<T>::to_double(p.x), ScalarTraits<T>::to_double(p.y)};
}

template <class T>
Vec2<T> from_double(const Point& p) {
  return {ScalarTraits<T>::from_double(p.x), ScalarTraits<T>::from_double(p.y)};
}

/// Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear).
template <class T>
int orientation(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c) {
  return sign_of(cross(b - a, c - a));
}

/// p lies on the closed segment [a, b].
template <class T>
bool on_segment(const Vec2<T>& p, const Vec2<T>& a, const Vec2<T>& b) {
  if (orientation(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

enum class SegmentContact {
  kNone,
  kTouch,    // meet in a single point that is an endpoint of at least one segment
  kCross,    // interiors cross transversally
  kOverlap,  // collinear with a shared piece of positive length
};

template <class T>
SegmentContact classify_segments(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c,
                                 const Vec2<T>& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 == 0 && o2 == 0) {
    // Collinear: project onto the dominant axis.
    const bool use_x = (a.x != b.x) || (c.x != d.x);
    auto key = [use_x](const Vec2<T>& p) { return use_x ? p.x : p.y; };
    T lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    T lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    T lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    if (lo < hi) return SegmentContact::kOverlap;
    if (lo == hi) return SegmentContact::kTouch;
    return SegmentContact::kNone;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentContact::kCross;
  if ((o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
      (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d))) {
    return SegmentContact::kTouch;
  }
  return SegmentContact::kNone;
}

/// Closest point to p on segment [a, b].
inline Point closest_on_segment(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return a + t * ab;
}

inline double segment_segment_distance(const Point& a, const Point& b, const Point& c,
                                       const Point& d, Point* on_ab = nullptr,
                                       Point* on_cd = nullptr) {
  if (classify_segments(a, b, c, d) == SegmentContact::kCross) {
    // Intersection point.
    const double t = cross(c - a, d - c) / cross(b - a, d - c);
    const Point x = a + t * (b - a);
    if (on_ab) *on_ab = x;
    if (on_cd) *on_cd = x;
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](const Point& p, const Point& q) {
    const double dd = distance(p, q);
    if (dd < best) {
      best = dd;
      if (on_ab) *on_ab = p;
      if (on_cd) *on_cd = q;
    }
  };
  consider(a, closest_on_segment(a, c, d));
  consider(b, closest_on_segment(b, c, d));
  consider(closest_on_segment(c, a, b), c);
  consider(closest_on_segment(d, a, b), d);
  return best;
}

// ---------------------------------------------------------------------------
// Exact lengths

/// Formal sum  sum_i c_i * sqrt(q_i)  with rational c_i, q_i >= 0.
///
/// Square factors of rational q are folded into the coefficient when q is a
/// perfect square, so sums of rational-coordinate segment lengths compare
/// exactly whenever they are equal as formal sums.
class ExactLength {
 public:
  ExactLength() = default;

  static ExactLength sqrt_of(const Rational& q) {
    ExactLength out;
    if (q == 0) return out;
    if (q < 0) throw std::domain_error("ExactLength: negative radicand");
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(q);
    const cpp_int den = boost::multiprecision::denominator(q);
    const cpp_int rn = boost::multiprecision::sqrt(num);
    const cpp_int rd = boost::multiprecision::sqrt(den);
    if (rn * rn == num && rd * rd == den) {
      out.terms_[Rational(1)] = Rational(rn, rd);
    } else {
      out.terms_[q] = Rational(1);
    }
    return out;
  }

  ExactLength& operator+=(const ExactLength& o) {
    for (const auto& [q, c] : o.terms_) {
      auto& slot = terms_[q];
      slot += c;
      if (slot == 0) terms_.erase(q);
    }
    return *this;
  }
  friend ExactLength operator+(ExactLength a, const ExactLength& b) { return a += b; }
  friend bool operator==(const ExactLength& a, const ExactLength& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ExactLength& a, const ExactLength& b) { return !(a == b); }

  double to_double() const {
    double s = 0.0;
    for (const auto& [q, c] : terms_) {
      s += c.convert_to<double>() * std::sqrt(q.convert_to<double>());
    }
    return s;
  }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

 private:
  std::map<Rational, Rational> terms_;
};

/// Length type per scalar: double for floating input, ExactLength for rationals.
template <class T>
struct LengthOf {
  using type = double;
  static double segment(const Vec2<T>& a, const Vec2<T>& b) { return distance(a, b); }
  static double to_double(double v) { return v; }
};

template <>
struct LengthOf<Rational> {
  using type = ExactLength;
  static ExactLength segment(const RationalPoint& a, const RationalPoint& b) {
    const RationalPoint d = b - a;
    return ExactLength::sqrt_of(dot(d, d));
  }
  static double to_double(const ExactLength& v) { return v.to_double(); }
};

template <class T>
using length_t = typename LengthOf<T>::type;

// ---------------------------------------------------------------------------
// Parallelism

/// Worker cap from CONNPERIM_THREADS (default: hardware concurrency).
inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CONNPERIM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

/// Runs body(i) for i in [0, n) on up to thread_cap() threads. Each index is
/// processed exactly once; callers write results into per-index slots so the
/// outcome is independent of scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace connperim
