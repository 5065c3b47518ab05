#pragma once
// Exact Laurent polynomials and rational functions in a formal variable q,
// with rational exponents and rational coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "wildmck/errors.hpp"

namespace wildmck {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer floor(const Rational& r) {
  const Integer n = boost::multiprecision::numerator(r);
  const Integer d = boost::multiprecision::denominator(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

inline Integer ceil(const Rational& r) { return -floor(-r); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline std::string to_string(const Rational& r) {
  const Integer d = boost::multiprecision::denominator(r);
  std::string s = boost::multiprecision::numerator(r).str();
  if (d != 1) s += "/" + d.str();
  return s;
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k])))
        throw Error(ErrorCode::ParseError, "bad integer '" + std::string(s) + "'");
    }
    return Integer(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw Error(ErrorCode::ParseError, "non-positive denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

/// Finite sum of c * q^e, e and c rational. Zero coefficients are never stored.
class QLaurent {
 public:
  /// Descending exponent order is the canonical rendering order.
  using Terms = std::map<Rational, Rational, std::greater<>>;

  QLaurent() = default;
  QLaurent(std::int64_t c) { add_term(Rational(0), Rational(c)); }  // NOLINT: constants convert implicitly
  QLaurent(const Rational& c) { add_term(Rational(0), c); }         // NOLINT

  static QLaurent monomial(const Rational& coeff, const Rational& exponent) {
    QLaurent f;
    f.add_term(exponent, coeff);
    return f;
  }

  /// The variable q itself raised to `exponent`.
  static QLaurent q(const Rational& exponent = 1) { return monomial(1, exponent); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Requires a nonzero polynomial.
  const Rational& max_exponent() const { return terms_.begin()->first; }
  const Rational& min_exponent() const { return terms_.rbegin()->first; }

  void add_term(const Rational& exponent, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Multiplication by q^e.
  QLaurent shifted(const Rational& e) const {
    QLaurent out;
    for (const auto& [exp, c] : terms_) out.terms_.emplace(exp + e, c);
    return out;
  }

  QLaurent& operator+=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QLaurent& operator-=(const QLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  QLaurent& operator*=(const QLaurent& o) { return *this = *this * o; }

  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator-(const QLaurent& a) {
    QLaurent out;
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }

  /// Canonical rendering: `q^4 + 2*q^3`, `3*q^(5/2)`, `1/12*q^(-1)`, `0`.
  std::string to_string() const;

  /// Parses the canonical rendering (whitespace between tokens is tolerated).
  static QLaurent parse(std::string_view text);

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const QLaurent& f) { return os << f.to_string(); }

namespace detail {

inline std::string render_monomial(const Rational& e) {
  if (e == 1) return "q";
  if (is_integer(e) && e > 0) return "q^" + wildmck::to_string(e);
  return "q^(" + wildmck::to_string(e) + ")";
}

}  // namespace detail

inline std::string QLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string term;
    if (e == 0) {
      term = wildmck::to_string(mag);
    } else if (mag == 1) {
      term = detail::render_monomial(e);
    } else {
      term = wildmck::to_string(mag) + "*" + detail::render_monomial(e);
    }
    if (first) {
      out = negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

inline QLaurent QLaurent::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::ParseError, why + " in polynomial '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail("empty input");
  if (s == "0") return {};

  QLaurent out;
  std::size_t i = 0;
  auto read_number = [&]() -> std::string {
    const std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    if (start == i) throw fail("expected a number at offset " + std::to_string(start));
    return s.substr(start, i - start);
  };
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-' at offset " + std::to_string(i));
    }
    first = false;
    Rational coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = parse_rational(read_number());
      have_coeff = true;
    }
    Rational exponent = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 'q')) {
      if (s[i] == '*') {
        if (!have_coeff) throw fail("dangling '*'");
        ++i;
      }
      if (i >= s.size() || s[i] != 'q') throw fail("expected 'q' at offset " + std::to_string(i));
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i < s.size() && s[i] == '(') {
          const auto close = s.find(')', i);
          if (close == std::string::npos) throw fail("unbalanced parenthesis");
          exponent = parse_rational(std::string_view(s).substr(i + 1, close - i - 1));
          i = close + 1;
        } else {
          exponent = parse_rational(read_number());
        }
      }
    } else if (!have_coeff) {
      throw fail("expected a term at offset " + std::to_string(i));
    }
    out.add_term(exponent, negative ? Rational(-coeff) : coeff);
  }
  return out;
}

/// S(f) = f(1), the sum of the coefficients.
inline Rational s_value(const QLaurent& f) {
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return s;
}

namespace detail {

inline Integer ipow(const Integer& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

/// Exact integer k-th root of a nonnegative integer, if one exists.
inline bool exact_root(const Integer& x, unsigned k, Integer& root) {
  if (x < 0) return false;
  if (x < 2 || k == 1) {
    root = x;
    return true;
  }
  Integer lo = 0, hi = 1;
  while (ipow(hi, k) < x) hi *= 2;
  while (lo < hi) {
    Integer mid = (lo + hi) / 2;
    if (ipow(mid, k) < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  root = lo;
  return ipow(lo, k) == x;
}

}  // namespace detail

/// Exact value of q0^e for q0 > 0; fails unless the result is rational.
inline Rational rational_power(const Rational& q0, const Rational& e) {
  if (q0 <= 0) throw Error(ErrorCode::Unsupported, "evaluation point must be positive");
  const Integer num = boost::multiprecision::numerator(e);
  const Integer den = boost::multiprecision::denominator(e);
  const unsigned k = den.convert_to<unsigned>();
  Integer rn, rd;
  if (!detail::exact_root(boost::multiprecision::numerator(q0), k, rn) ||
      !detail::exact_root(boost::multiprecision::denominator(q0), k, rd))
    throw Error(ErrorCode::Unsupported, "q0^" + to_string(e) + " is irrational at q0 = " + to_string(q0));
  Rational base(rn, rd);
  const bool invert = num < 0;
  const unsigned mag = static_cast<unsigned>((invert ? Integer(-num) : num).convert_to<std::uint64_t>());
  Rational out = 1;
  for (unsigned i = 0; i < mag; ++i) out *= base;
  return invert ? Rational(1 / out) : out;
}

inline Rational evaluate(const QLaurent& f, const Rational& q0) {
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) s += c * rational_power(q0, e);
  return s;
}

/// numerator / denominator with a nonzero denominator. Normalization is lazy:
/// common factors are only cancelled by simplify_to_polynomial.
class QRatFun {
 public:
  QRatFun() : den_(1) {}
  QRatFun(QLaurent num) : num_(std::move(num)), den_(1) {}  // NOLINT
  QRatFun(QLaurent num, QLaurent den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorCode::Unsupported, "zero denominator");
  }

  const QLaurent& numerator() const { return num_; }
  const QLaurent& denominator() const { return den_; }

  friend QRatFun operator+(const QRatFun& a, const QRatFun& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend QRatFun operator-(const QRatFun& a) { return {-a.num_, a.den_}; }
  friend QRatFun operator-(const QRatFun& a, const QRatFun& b) { return a + (-b); }
  friend QRatFun operator*(const QRatFun& a, const QRatFun& b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend QRatFun operator/(const QRatFun& a, const QRatFun& b) {
    if (b.num_.is_zero()) throw Error(ErrorCode::Unsupported, "division by zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  QRatFun& operator+=(const QRatFun& o) { return *this = *this + o; }
  QRatFun& operator*=(const QRatFun& o) { return *this = *this * o; }

  friend bool operator==(const QRatFun& a, const QRatFun& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

  std::string to_string() const {
    if (den_ == QLaurent(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  QLaurent num_;
  QLaurent den_;
};

inline std::ostream& operator<<(std::ostream& os, const QRatFun& f) { return os << f.to_string(); }

/// coeff * q^e0 / (1 - q^step), the closed form of sum_{a>=0} coeff * q^(e0 + a*step)
/// as a formal series in q^-1.
inline QRatFun geometric_closed_form(const Rational& coeff, const Rational& e0, const Rational& step) {
  if (step >= 0)
    throw Error(ErrorCode::DivergentSeries, "geometric step q^" + to_string(step) + " does not decay");
  return {QLaurent::monomial(coeff, e0), QLaurent(1) - QLaurent::q(step)};
}

struct NotPolynomial {
  QRatFun reduced;
  friend bool operator==(const NotPolynomial&, const NotPolynomial&) = default;
};

using PolynomialVerdict = std::variant<QLaurent, NotPolynomial>;

namespace detail {

/// Dense univariate polynomial over Q, index = degree, no trailing zeros.
using DensePoly = std::vector<Rational>;

inline void trim(DensePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline void divmod(const DensePoly& a, const DensePoly& b, DensePoly& quot, DensePoly& rem) {
  rem = a;
  trim(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const Rational c = rem.back() / lead;
    quot[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
}

inline DensePoly monic_gcd(DensePoly a, DensePoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    DensePoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

/// Writes f = q^(shift/D) * P(q^(1/D)) with P an ordinary polynomial, P(0) != 0.
inline DensePoly to_dense(const QLaurent& f, const Integer& D, Integer& shift) {
  shift = floor(f.min_exponent() * D);
  const Integer top = floor(f.max_exponent() * D) - shift;
  DensePoly out(top.convert_to<std::size_t>() + 1, Rational(0));
  for (const auto& [e, c] : f.terms()) {
    const Integer idx = floor(e * D) - shift;
    out[idx.convert_to<std::size_t>()] = c;
  }
  return out;
}

inline QLaurent from_dense(const DensePoly& a, const Integer& D, const Integer& shift) {
  QLaurent out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) out.add_term(Rational(shift + Integer(i), D), a[i]);
  return out;
}

inline Integer exponent_lcm(const QLaurent& f, Integer acc) {
  for (const auto& [e, c] : f.terms()) {
    const Integer d = boost::multiprecision::denominator(e);
    acc = acc / boost::multiprecision::gcd(acc, d) * d;
  }
  return acc;
}

}  // namespace detail

/// Cancels common factors of a rational function and decides whether it is a
/// Laurent polynomial in q.
inline PolynomialVerdict simplify_to_polynomial(const QRatFun& f) {
  if (f.numerator().is_zero()) return QLaurent{};
  const Integer D = detail::exponent_lcm(f.denominator(), detail::exponent_lcm(f.numerator(), 1));
  Integer num_shift, den_shift;
  const detail::DensePoly num = detail::to_dense(f.numerator(), D, num_shift);
  const detail::DensePoly den = detail::to_dense(f.denominator(), D, den_shift);
  const detail::DensePoly g = detail::monic_gcd(num, den);
  detail::DensePoly num_red, den_red, rem;
  detail::divmod(num, g, num_red, rem);
  detail::divmod(den, g, den_red, rem);
  const Integer shift = num_shift - den_shift;
  if (den_red.size() == 1) {
    for (auto& c : num_red) c /= den_red[0];
    return detail::from_dense(num_red, D, shift);
  }
  return NotPolynomial{QRatFun(detail::from_dense(num_red, D, shift), detail::from_dense(den_red, D, 0))};
}

struct NonIntegralBetti {
  std::string reason;
  friend bool operator==(const NonIntegralBetti&, const NonIntegralBetti&) = default;
};

using BettiVerdict = std::variant<std::vector<Integer>, NonIntegralBetti>;

/// Coefficients of f(T^2) indexed by T-degree; integral data only.
inline BettiVerdict substitute_square(const QLaurent& f) {
  if (f.is_zero()) return std::vector<Integer>{};
  std::vector<Integer> out;
  for (const auto& [e, c] : f.terms()) {
    const Rational degree = 2 * e;
    if (!is_integer(degree) || degree < 0)
      return NonIntegralBetti{"exponent " + to_string(e) + " gives T-degree " + to_string(degree)};
    if (!is_integer(c)) return NonIntegralBetti{"coefficient " + to_string(c) + " is not an integer"};
    const auto idx = boost::multiprecision::numerator(degree).convert_to<std::size_t>();
    if (out.size() <= idx) out.resize(idx + 1, Integer(0));
    out[idx] = boost::multiprecision::numerator(c);
  }
  return out;
}

}  // namespace wildmck
