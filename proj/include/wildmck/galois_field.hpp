#pragma once
// Arithmetic in F_q (q = p^e <= 2^20), dense matrices over F_q, and truncated
// Laurent series over F_q.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wildmck/errors.hpp"
#include "wildmck/moduli_table.hpp"

namespace wildmck {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

namespace detail {

struct FieldTables {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // low coefficients c_0..c_{e-1} of the monic modulus
  std::vector<std::uint32_t> exp;      // exp[k] = g^k, k in [0, q-1)
  std::vector<std::uint32_t> log;      // log[x] for x != 0
  std::uint32_t trace_witness = 0;     // smallest element of nonzero trace
};

inline std::uint64_t smallest_primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto r : factors) {
      std::uint64_t acc = 1, base = g, k = (p - 1) / r;
      while (k) {
        if (k & 1) acc = acc * base % p;
        base = base * base % p;
        k >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 0;
}

}  // namespace detail

/// A finite field F_{p^e}. Elements are encoded as integers whose base-p
/// digits are the coefficients of the polynomial basis 1, x, ..., x^{e-1},
/// where x is a root of a pinned primitive modulus; x is the fixed generator
/// of the multiplicative group. Copies share the immutable lookup tables.
class Fq {
 public:
  using Element = std::uint32_t;

  Fq() = default;

  std::uint32_t p() const { return t_->p; }
  std::uint32_t e() const { return t_->e; }
  std::uint32_t q() const { return t_->q; }
  /// Low coefficients of the monic modulus x^e + c_{e-1} x^{e-1} + ... + c_0.
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element generator() const { return t_->exp[t_->q == 2 ? 0 : 1]; }

  Element add(Element a, Element b) const {
    if (t_->p == 2) return a ^ b;
    Element out = 0, scale = 1;
    for (std::uint32_t i = 0; i < t_->e; ++i) {
      out += ((a % t_->p + b % t_->p) % t_->p) * scale;
      a /= t_->p;
      b /= t_->p;
      scale *= t_->p;
    }
    return out;
  }
  Element neg(Element a) const {
    if (t_->p == 2) return a;
    Element out = 0, scale = 1;
    for (std::uint32_t i = 0; i < t_->e; ++i) {
      out += ((t_->p - a % t_->p) % t_->p) * scale;
      a /= t_->p;
      scale *= t_->p;
    }
    return out;
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t k = t_->log[a] + t_->log[b];
    if (k >= t_->q - 1) k -= t_->q - 1;
    return t_->exp[k];
  }
  Element inv(Element a) const {
    if (a == 0) throw Error(ErrorCode::Unsupported, "inverse of zero in F_" + std::to_string(t_->q));
    const std::uint32_t k = t_->log[a];
    return t_->exp[k == 0 ? 0 : t_->q - 1 - k];
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    return t_->exp[(static_cast<std::uint64_t>(t_->log[a]) * (k % (t_->q - 1))) % (t_->q - 1)];
  }

  /// Discrete logarithm to the base generator(); a != 0.
  std::uint32_t log(Element a) const { return t_->log[a]; }
  Element exp(std::uint64_t k) const { return t_->exp[k % (t_->q - 1)]; }

  Element frobenius(Element a) const { return pow(a, t_->p); }
  /// Inverse Frobenius a^(1/p) = a^(p^(e-1)).
  Element frobenius_inverse(Element a) const {
    Element out = a;
    for (std::uint32_t i = 1; i < t_->e; ++i) out = frobenius(out);
    return out;
  }
  /// wp(a) = a^p - a.
  Element wp(Element a) const { return sub(frobenius(a), a); }

  /// Absolute trace to F_p, returned as an element of the prime field.
  Element trace(Element a) const {
    Element acc = 0, cur = a;
    for (std::uint32_t i = 0; i < t_->e; ++i) {
      acc = add(acc, cur);
      cur = frobenius(cur);
    }
    return acc;
  }

  /// Fixed element c with Tr(c) != 0; F_p * c is a complement of wp(F_q).
  Element trace_witness() const { return t_->trace_witness; }

  /// Primitive m-th root of unity generator()^((q-1)/m); requires m | q-1.
  Element root_of_unity(std::uint64_t m) const {
    if (m == 0 || (t_->q - 1) % m != 0)
      throw Error(ErrorCode::IncompatibleField,
                  "F_" + std::to_string(t_->q) + " has no primitive " + std::to_string(m) + "-th root of unity");
    return exp((t_->q - 1) / m);
  }

  Element from_int(std::int64_t v) const {
    const std::int64_t p = t_->p;
    return static_cast<Element>(((v % p) + p) % p);
  }

  std::vector<Element> elements() const {
    std::vector<Element> out(t_->q);
    for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = i;
    return out;
  }

  friend bool operator==(const Fq& a, const Fq& b) { return a.t_ == b.t_ || (a.p() == b.p() && a.e() == b.e()); }

 private:
  friend Fq make_field(std::uint64_t p, std::uint64_t e);
  std::shared_ptr<const detail::FieldTables> t_;
};

/// Builds F_{p^e} with its pinned modulus. Same (p, e) always yields the same
/// element encodings.
inline Fq make_field(std::uint64_t p, std::uint64_t e) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (e == 0) throw Error(ErrorCode::TooLarge, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw Error(ErrorCode::TooLarge, std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^20");
  }
  auto t = std::make_shared<detail::FieldTables>();
  t->p = static_cast<std::uint32_t>(p);
  t->e = static_cast<std::uint32_t>(e);
  t->q = static_cast<std::uint32_t>(q);
  if (e == 1) {
    // x - g for the smallest primitive root g.
    t->modulus = {static_cast<std::uint32_t>((p - detail::smallest_primitive_root(p)) % p)};
  } else {
    for (const auto& row : detail::kModuli) {
      if (row.p == p && row.e == e) {
        t->modulus.assign(row.low.begin(), row.low.begin() + e);
        break;
      }
    }
    if (t->modulus.empty()) throw Error(ErrorCode::TooLarge, "no pinned modulus for this field");
  }

  // Powers of x via multiply-by-x in the polynomial basis.
  t->exp.resize(q - 1);
  t->log.assign(q, 0);
  std::vector<std::uint32_t> digits(e, 0);
  auto encode = [&] {
    std::uint32_t v = 0;
    for (std::uint64_t i = e; i-- > 0;) v = v * t->p + digits[i];
    return v;
  };
  digits[0] = 1;
  for (std::uint64_t k = 0; k + 1 < q; ++k) {
    const std::uint32_t v = encode();
    if (k > 0 && v == 1) throw Error(ErrorCode::Unsupported, "pinned modulus is not primitive");
    t->exp[k] = v;
    t->log[v] = static_cast<std::uint32_t>(k);
    const std::uint32_t top = digits[e - 1];
    for (std::uint64_t i = e - 1; i > 0; --i) digits[i] = digits[i - 1];
    digits[0] = 0;
    if (top != 0) {
      for (std::uint64_t i = 0; i < e; ++i)
        digits[i] = static_cast<std::uint32_t>((digits[i] + (p - top) * t->modulus[i]) % p);
    }
  }
  if (encode() != 1) throw Error(ErrorCode::Unsupported, "pinned modulus is not primitive");

  Fq f;
  f.t_ = t;
  for (std::uint32_t c = 1; c < q; ++c) {
    if (f.trace(c) != 0) {
      t->trace_witness = c;
      break;
    }
  }
  return f;
}

/// Dense n x n matrix over F_q, row-major.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(Fq field, std::size_t n) : field_(std::move(field)), n_(n), a_(n * n, 0) {}

  static FqMatrix identity(const Fq& field, std::size_t n) {
    FqMatrix m(field, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t n() const { return n_; }
  const Fq& field() const { return field_; }
  Fq::Element& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  Fq::Element operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  /// Row-major entry list; the canonical encoding used for hashing and sorting.
  const std::vector<Fq::Element>& entries() const { return a_; }

  friend FqMatrix operator*(const FqMatrix& x, const FqMatrix& y) {
    const Fq& f = x.field_;
    FqMatrix out(f, x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const auto xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < x.n_; ++j) out(i, j) = f.add(out(i, j), f.mul(xik, y(k, j)));
      }
    return out;
  }
  friend FqMatrix operator-(const FqMatrix& x, const FqMatrix& y) {
    FqMatrix out(x.field_, x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.field_.sub(x.a_[i], y.a_[i]);
    return out;
  }
  friend bool operator==(const FqMatrix& x, const FqMatrix& y) { return x.a_ == y.a_; }
  friend bool operator<(const FqMatrix& x, const FqMatrix& y) { return x.a_ < y.a_; }

  bool is_identity() const { return *this == identity(field_, n_); }

  FqMatrix minus_scalar(Fq::Element lambda) const {
    FqMatrix out = *this;
    for (std::size_t i = 0; i < n_; ++i) out(i, i) = field_.sub(out(i, i), lambda);
    return out;
  }

 private:
  Fq field_;
  std::size_t n_ = 0;
  std::vector<Fq::Element> a_;
};

namespace detail {

/// Row-reduces a rows x cols matrix in place, returns the rank and pivot columns.
inline std::size_t row_reduce(const Fq& f, std::vector<Fq::Element>& a, std::size_t rows, std::size_t cols,
                              std::vector<std::size_t>* pivots = nullptr) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const auto inv = f.inv(a[rank * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r * cols + c] == 0) continue;
      const auto factor = a[r * cols + c];
      for (std::size_t j = 0; j < cols; ++j)
        a[r * cols + j] = f.sub(a[r * cols + j], f.mul(factor, a[rank * cols + j]));
    }
    if (pivots) pivots->push_back(c);
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank of a rows x cols matrix given row-major.
inline std::size_t rank(const Fq& f, std::vector<Fq::Element> a, std::size_t rows, std::size_t cols) {
  return detail::row_reduce(f, a, rows, cols);
}

inline std::size_t rank(const FqMatrix& m) { return rank(m.field(), m.entries(), m.n(), m.n()); }

/// Basis of ker(m) as column vectors, each of length n.
inline std::vector<std::vector<Fq::Element>> kernel_basis(const FqMatrix& m) {
  const Fq& f = m.field();
  const std::size_t n = m.n();
  std::vector<Fq::Element> a = m.entries();
  std::vector<std::size_t> pivots;
  const std::size_t r = detail::row_reduce(f, a, n, n, &pivots);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Fq::Element>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fq::Element> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivots[i]] = f.neg(a[i * n + free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// dim ker(M - I).
inline std::size_t fixed_space_dim(const FqMatrix& m) { return m.n() - rank(m.minus_scalar(1)); }

/// Dimension of the common fixed space of a set of matrices.
inline std::size_t common_fixed_space_dim(std::span<const FqMatrix> ms) {
  if (ms.empty()) return 0;
  const std::size_t n = ms.front().n();
  std::vector<Fq::Element> stacked;
  for (const auto& m : ms) {
    const auto d = m.minus_scalar(1);
    stacked.insert(stacked.end(), d.entries().begin(), d.entries().end());
  }
  return n - rank(ms.front().field(), stacked, ms.size() * n, n);
}

inline Fq::Element determinant(const FqMatrix& m) {
  const Fq& f = m.field();
  const std::size_t n = m.n();
  std::vector<Fq::Element> a = m.entries();
  Fq::Element det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c * n + c]);
    const auto inv = f.inv(a[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0) continue;
      const auto factor = f.mul(a[r * n + c], inv);
      for (std::size_t j = c; j < n; ++j) a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
    }
  }
  return det;
}

/// Rank of M applied to the columns of `basis` (an n x k matrix given as k columns).
inline std::size_t rank_on_columns(const FqMatrix& m, const std::vector<std::vector<Fq::Element>>& basis) {
  const Fq& f = m.field();
  const std::size_t n = m.n();
  if (basis.empty()) return 0;
  std::vector<Fq::Element> image;  // rows = images of basis vectors
  for (const auto& v : basis) {
    for (std::size_t i = 0; i < n; ++i) {
      Fq::Element acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = f.add(acc, f.mul(m(i, j), v[j]));
      image.push_back(acc);
    }
  }
  return rank(f, image, basis.size(), n);
}

inline constexpr std::size_t kDefaultTruncation = 64;

/// Laurent series sum_{i} c_i t^(valuation + i) + O(t^precision) over F_q,
/// storing at most `bound` coefficients.
class TruncLaurent {
 public:
  TruncLaurent(Fq field, std::int64_t valuation, std::vector<Fq::Element> coeffs,
               std::size_t bound = kDefaultTruncation)
      : field_(std::move(field)), val_(valuation), c_(std::move(coeffs)), bound_(bound) {
    if (c_.size() > bound_) c_.resize(bound_);
  }

  /// Single term c * t^k with the given absolute precision.
  static TruncLaurent term(const Fq& field, Fq::Element c, std::int64_t k, std::int64_t precision,
                           std::size_t bound = kDefaultTruncation) {
    if (precision <= k) return TruncLaurent(field, precision, {}, bound);
    std::vector<Fq::Element> cs(static_cast<std::size_t>(precision - k), 0);
    cs[0] = c;
    return TruncLaurent(field, k, std::move(cs), bound);
  }

  const Fq& field() const { return field_; }
  std::int64_t valuation() const { return val_; }
  std::size_t bound() const { return bound_; }
  /// Exponents >= precision are unknown.
  std::int64_t precision() const { return val_ + static_cast<std::int64_t>(c_.size()); }

  Fq::Element coefficient(std::int64_t k) const {
    if (k < val_) return 0;
    if (k >= precision()) throw Error(ErrorCode::TruncationExceeded, "coefficient beyond precision");
    return c_[static_cast<std::size_t>(k - val_)];
  }

  friend TruncLaurent operator+(const TruncLaurent& a, const TruncLaurent& b) {
    const std::int64_t lo = std::min(a.val_, b.val_);
    const std::int64_t hi = std::min(a.precision(), b.precision());
    std::vector<Fq::Element> cs(hi > lo ? static_cast<std::size_t>(hi - lo) : 0, 0);
    for (std::int64_t k = lo; k < hi; ++k) {
      const auto ca = k >= a.val_ ? a.c_[static_cast<std::size_t>(k - a.val_)] : 0;
      const auto cb = k >= b.val_ ? b.c_[static_cast<std::size_t>(k - b.val_)] : 0;
      cs[static_cast<std::size_t>(k - lo)] = a.field_.add(ca, cb);
    }
    return TruncLaurent(a.field_, hi > lo ? lo : hi, std::move(cs), std::min(a.bound_, b.bound_));
  }
  friend TruncLaurent operator-(const TruncLaurent& a) {
    std::vector<Fq::Element> cs(a.c_);
    for (auto& c : cs) c = a.field_.neg(c);
    return TruncLaurent(a.field_, a.val_, std::move(cs), a.bound_);
  }
  friend TruncLaurent operator-(const TruncLaurent& a, const TruncLaurent& b) { return a + (-b); }
  friend TruncLaurent operator*(const TruncLaurent& a, const TruncLaurent& b) {
    const std::int64_t lo = a.val_ + b.val_;
    const std::int64_t hi = std::min(a.val_ + b.precision(), b.val_ + a.precision());
    std::vector<Fq::Element> cs(hi > lo ? static_cast<std::size_t>(hi - lo) : 0, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        const std::int64_t k = a.val_ + b.val_ + static_cast<std::int64_t>(i + j);
        if (k >= hi) break;
        cs[static_cast<std::size_t>(k - lo)] =
            a.field_.add(cs[static_cast<std::size_t>(k - lo)], a.field_.mul(a.c_[i], b.c_[j]));
      }
    return TruncLaurent(a.field_, hi > lo ? lo : hi, std::move(cs), std::min(a.bound_, b.bound_));
  }

  /// Termwise Frobenius: (sum c_i t^i)^p = sum c_i^p t^(p i).
  TruncLaurent frobenius() const {
    const std::int64_t p = field_.p();
    const std::int64_t lo = p * val_;
    const std::int64_t hi = p * precision();
    std::vector<Fq::Element> cs(static_cast<std::size_t>(hi - lo), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) cs[static_cast<std::size_t>(p) * i] = field_.frobenius(c_[i]);
    return TruncLaurent(field_, lo, std::move(cs), bound_);
  }

  /// wp(x) = x^p - x.
  TruncLaurent wp() const { return frobenius() - *this; }

  /// Exact equality of the known coefficients and the precision.
  friend bool operator==(const TruncLaurent& a, const TruncLaurent& b) {
    if (a.precision() != b.precision()) return false;
    const std::int64_t lo = std::min(a.val_, b.val_);
    for (std::int64_t k = lo; k < a.precision(); ++k) {
      const auto ca = k >= a.val_ ? a.c_[static_cast<std::size_t>(k - a.val_)] : 0;
      const auto cb = k >= b.val_ ? b.c_[static_cast<std::size_t>(k - b.val_)] : 0;
      if (ca != cb) return false;
    }
    return true;
  }

  /// Pole order of the polar-and-constant part: max(0, -(lowest nonzero exponent <= 0)).
  std::int64_t pole_order() const {
    for (std::int64_t k = val_; k < std::min<std::int64_t>(precision(), 1); ++k)
      if (coefficient(k) != 0) return -k;
    return 0;
  }

  bool is_zero_through(std::int64_t k) const {
    for (std::int64_t i = val_; i <= k && i < precision(); ++i)
      if (coefficient(i) != 0) return false;
    return true;
  }

 private:
  Fq field_;
  std::int64_t val_;
  std::vector<Fq::Element> c_;
  std::size_t bound_;
};

/// Canonical representative of the class of `a` in K / wp(K), K = F_q((t)).
/// The result is supported on {0} and {-j : j > 0, p does not divide j}, with
/// the constant term in F_p * trace_witness(); its precision is exactly 1
/// (terms of positive degree lie in wp(K) and are dropped).
inline TruncLaurent artin_schreier_reduce(const TruncLaurent& a) {
  const Fq& f = a.field();
  if (a.precision() < 1)
    throw Error(ErrorCode::TruncationExceeded,
                "constant term of a series with precision " + std::to_string(a.precision()) + " is unknown");
  const std::int64_t lo = std::min<std::int64_t>(a.valuation(), 0);
  std::vector<Fq::Element> cs(static_cast<std::size_t>(1 - lo), 0);
  for (std::int64_t k = lo; k <= 0; ++k) cs[static_cast<std::size_t>(k - lo)] = a.coefficient(k);
  const std::int64_t p = f.p();
  // c t^(-p j) = wp(c^(1/p) t^(-j)) + c^(1/p) t^(-j); sweep from the deepest pole.
  for (std::int64_t k = lo; k < 0; ++k) {
    auto& c = cs[static_cast<std::size_t>(k - lo)];
    if (c == 0 || (-k) % p != 0) continue;
    const std::int64_t target = k / p;
    auto& d = cs[static_cast<std::size_t>(target - lo)];
    d = f.add(d, f.frobenius_inverse(c));
    c = 0;
  }
  auto& c0 = cs.back();
  const auto tr = f.trace(c0);
  c0 = tr == 0 ? 0 : f.mul(f.div(tr, f.trace(f.trace_witness())), f.trace_witness());
  std::int64_t first = 0;
  while (first < -lo && cs[static_cast<std::size_t>(first)] == 0) ++first;
  std::vector<Fq::Element> trimmed(cs.begin() + first, cs.end());
  const std::size_t bound = std::max(a.bound(), trimmed.size());
  return TruncLaurent(f, lo + first, std::move(trimmed), bound);
}

}  // namespace wildmck
