#pragma once

// Exact rational arithmetic over arbitrary-precision integers, plus the
// small amount of lattice number theory the rest of the library needs.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fuzzyip/errors.hpp"

namespace fuzzyip {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// floor(a / b) for b != 0 (C++ division truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

/**
 * Exact rational number, always stored reduced with a positive denominator.
 *
 * Equality is structural because of the normal form.
 */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(const Integer& n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(long long n) : num_(n), den_(1) {}       // NOLINT(implicit)
  Rational(int n) : num_(n), den_(1) {}             // NOLINT(implicit)
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  Integer floor() const { return floor_div(num_, den_); }
  Integer ceil() const { return ceil_div(num_, den_); }

  Rational operator-() const { return Rational(-num_, den_, Reduced{}); }
  Rational reciprocal() const {
    if (num_ == 0) throw InvalidArgument("reciprocal of zero");
    return num_ < 0 ? Rational(-den_, -num_, Reduced{}) : Rational(den_, num_, Reduced{});
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(a.num_ + b.num_, a.den_);
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Integer lhs = a.num_ * b.den_;
    const Integer rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const {
    return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
  }

  double to_double() const {
    // Scale so the quotient keeps ~60 significant bits even for huge operands.
    using boost::multiprecision::cpp_bin_float_double;
    return static_cast<double>(cpp_bin_float_double(num_) / cpp_bin_float_double(den_));
  }

 private:
  struct Reduced {};
  Rational(Integer n, Integer d, Reduced) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw InvalidArgument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const Integer g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_;
  Integer den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& base, unsigned exponent) {
  Integer n = 1, d = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    n *= base.num();
    d *= base.den();
  }
  return Rational(n, d);
}

/// Parses an integer literal ("-12") or a fraction ("3/4"). Decimals are rejected.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<Integer> {
    if (s.empty()) return std::nullopt;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') return std::nullopt;
    }
    Integer v(std::string(s.substr(i)));
    return s[0] == '-' ? Integer(-v) : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

// ---------------------------------------------------------------------------
// Dense vectors and matrices

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Row-major integer matrix; every row has cols() entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t cols) : cols_(cols) {}
  IntMatrix(std::size_t cols, std::vector<IntVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw InvalidArgument("matrix rows must share one column count");
    }
  }
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    bool first = true;
    for (const auto& r : rows) {
      IntVector row(r.begin(), r.end());
      if (first) cols_ = row.size();
      first = false;
      if (row.size() != cols_) throw InvalidArgument("matrix rows must share one column count");
      rows_.push_back(std::move(row));
    }
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const IntVector& row(std::size_t i) const { return rows_.at(i); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
  const std::vector<IntVector>& data() const { return rows_; }

  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<IntVector> rows_;
};

inline IntVector make_int_vector(std::initializer_list<long long> values) {
  return IntVector(values.begin(), values.end());
}

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

/// Exact inner product of rational coefficients with an integer vector.
template <class IntLike>
Rational rat_dot(std::span<const Rational> coeffs, std::span<const IntLike> x) {
  require_same_length(coeffs.size(), x.size(), "rat_dot");
  Integer den = 1;
  for (const auto& c : coeffs) den = lcm(den, c.den());
  Integer acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += coeffs[i].num() * (den / coeffs[i].den()) * Integer(x[i]);
  }
  return Rational(acc, den);
}

inline Rational rat_dot(const RatVector& coeffs, const IntVector& x) {
  return rat_dot<Integer>(std::span<const Rational>(coeffs), std::span<const Integer>(x));
}

template <class IntLike>
Integer int_dot(std::span<const Integer> a, std::span<const IntLike> x) {
  require_same_length(a.size(), x.size(), "int_dot");
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * Integer(x[i]);
  return acc;
}

/// C * x for every row of C.
template <class IntLike>
IntVector mat_vec(const IntMatrix& m, std::span<const IntLike> x) {
  IntVector out;
  out.reserve(m.rows());
  for (const auto& r : m) out.push_back(int_dot<IntLike>(r, x));
  return out;
}

/// Smallest positive M with M*v integral for every v (1 for the empty list).
inline Integer lcm_denominators(std::span<const Rational> values) {
  Integer m = 1;
  for (const auto& v : values) m = lcm(m, v.den());
  return m;
}

inline Integer lcm_denominators(std::initializer_list<Rational> values) {
  return lcm_denominators(std::span<const Rational>(values.begin(), values.size()));
}

// ---------------------------------------------------------------------------
// Roots

/// Largest integer r >= 0 with r^n <= v (v >= 0, n >= 1).
inline Integer integer_root_floor(const Integer& v, unsigned n) {
  if (v < 0 || n == 0) throw InvalidArgument("integer_root_floor: bad operands");
  if (v < 2 || n == 1) return v;
  Integer lo = 0;
  Integer hi = 1;
  while (boost::multiprecision::pow(hi, n) <= v) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, n) <= v) lo = mid;
    else hi = mid;
  }
  return lo;
}

/// Exact n-th root when both numerator and denominator are perfect powers.
inline std::optional<Rational> exact_root(const Rational& v, unsigned n) {
  if (v.sign() < 0) return std::nullopt;
  Integer rn = integer_root_floor(v.num(), n);
  Integer rd = integer_root_floor(v.den(), n);
  if (boost::multiprecision::pow(rn, n) == v.num() && boost::multiprecision::pow(rd, n) == v.den()) {
    return Rational(rn, rd);
  }
  return std::nullopt;
}

/// Rational bracket [lo, hi] around v^(1/n) for v in [0, 1]; exact (lo == hi) when
/// the root is rational, otherwise hi - lo <= 2^-precision_bits.
inline std::pair<Rational, Rational> root_bracket(const Rational& v, unsigned n,
                                                  unsigned precision_bits = 30) {
  if (v < 0 || v > 1) throw InvalidArgument("root_bracket expects a value in [0,1]");
  if (auto r = exact_root(v, n)) return {*r, *r};
  Rational lo = 0, hi = 1;
  const Rational tol(Integer(1), Integer(1) << precision_bits);
  // Dyadic bisection keeps denominators bounded by 2^precision_bits.
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (pow(mid, n) <= v) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

}  // namespace fuzzyip
