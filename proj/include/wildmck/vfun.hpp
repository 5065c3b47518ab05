#pragma once
// Closed-form evaluations of the v-function: Jordan-block/twist formulas for
// abelian H x C_p, the D_V invariant, and the Artin-conductor route for
// permutation representations with explicit lower ramification filtrations.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wildmck/errors.hpp"
#include "wildmck/qseries.hpp"

namespace wildmck {

/// One indecomposable C_p-summand V_i: a Jordan block J_d(1) on which the
/// inertia generator acts by a scalar whose fractional age is `twist`.
struct Summand {
  int dim = 1;
  Rational twist = 0;  // in [0, 1); 0 means the tame part is unramified on V_i
};

using SummandData = std::vector<Summand>;

/// Lower-numbering ramification filtration G_0 ⊇ G_1 ⊇ ... with the order and
/// fixed-space dimension (on k^n) of each level. Levels past the list are trivial.
struct RamFiltration {
  struct Level {
    std::int64_t order = 1;
    int fixed_dim = 0;
  };
  int n = 0;
  std::vector<Level> levels;  // levels[i] describes G_i
};

namespace detail {

inline void check_level(std::int64_t j, std::int64_t p) {
  if (j < 0 || (j > 0 && j % p == 0))
    throw Error(ErrorCode::BadLevel, "level " + std::to_string(j) + " is not an Artin-Schreier level for p = " +
                                         std::to_string(p));
}

}  // namespace detail

/// v of an indecomposable n-dimensional summand with tame ramification index l
/// at Artin-Schreier level j.
inline Rational v_indecomposable(int n, std::int64_t l, std::int64_t j, std::int64_t p) {
  if (n < 1 || n > p)
    throw Error(ErrorCode::DimensionExceedsP, "block of dimension " + std::to_string(n) + " for p = " + std::to_string(p));
  if (l < 1 || l % p == 0) throw Error(ErrorCode::BadLevel, "tame index must be prime to p");
  detail::check_level(j, p);
  const Rational tame = l == 1 ? Rational(0) : Rational(1, l);
  Rational v = n * tame;
  if (j == 0) return v;
  for (int i = 1; i <= n; ++i) v += Rational(ceil(Rational((i - 1) * j, p) - tame));
  return v;
}

/// Sum over summands and k = 1..d of ceil((k-1) j / p - twist).
inline Rational sht(const SummandData& summands, std::int64_t j, std::int64_t p) {
  if (j <= 0 || j % p == 0)
    throw Error(ErrorCode::BadLevel, "shift number needs a positive level prime to p, got " + std::to_string(j));
  Rational total = 0;
  for (const auto& s : summands)
    for (int k = 1; k <= s.dim; ++k) total += Rational(ceil(Rational((k - 1) * j, p) - s.twist));
  return total;
}

inline Rational d_v(const SummandData& summands) {
  Rational total = 0;
  for (const auto& s : summands) total += Rational(s.dim * (s.dim - 1), 2);
  return total;
}

/// age + Sht(j) for j > 0; the age alone at the unramified level j = 0.
inline Rational v_composite(const SummandData& summands, const Rational& age, std::int64_t j, std::int64_t p) {
  if (j == 0) return age;
  return age + sht(summands, j, p);
}

/// Fractional age of the inertia action carried by the summands: sum d_i * twist_i.
inline Rational summand_age(const SummandData& summands) {
  Rational a = 0;
  for (const auto& s : summands) a += s.dim * s.twist;
  return a;
}

/// Half the Artin conductor sum_i codim(V^{G_i}) / [G_0 : G_i].
inline Rational artin_v(const RamFiltration& filtration) {
  if (filtration.levels.empty()) return 0;
  const std::int64_t g0 = filtration.levels.front().order;
  Rational a = 0;
  for (const auto& level : filtration.levels) a += Rational(filtration.n - level.fixed_dim) * Rational(level.order, g0);
  return a / 2;
}

/// Fixed-space dimensions of the permutation representation of A_4 on k^4 and
/// its subgroups; checked against the realized fixtures in the tests.
struct PermutationFixedDims {
  int n = 4;
  int a4 = 1;
  int c2sq = 1;
  int c2 = 2;
};

/// Ramification filtration of a C_2^2-extension given by Artin-Schreier
/// levels j <= k (j = 0 for an unramified partner).
inline RamFiltration c2sq_filtration(std::int64_t j, std::int64_t k, const PermutationFixedDims& dims = {}) {
  if (j < 0 || k <= 0 || j > k || (j > 0 && j % 2 == 0) || k % 2 == 0)
    throw Error(ErrorCode::BadLevels, "need 0 <= j <= k with j, k odd (or j = 0), got j = " + std::to_string(j) +
                                          ", k = " + std::to_string(k));
  RamFiltration f;
  f.n = dims.n;
  if (j == 0) {
    f.levels.assign(static_cast<std::size_t>(k + 1), {2, dims.c2});
    return f;
  }
  f.levels.assign(static_cast<std::size_t>(j + 1), {4, dims.c2sq});
  for (std::int64_t i = j + 1; i <= j + 2 * (k - j); ++i) f.levels.push_back({2, dims.c2});
  return f;
}

/// Ramification filtration of an A_4-extension: tame cubic layer ramified or
/// not, Artin-Schreier level j over it.
inline RamFiltration a4_filtration(bool cubic_ramified, std::int64_t j, const PermutationFixedDims& dims = {}) {
  if (!cubic_ramified) return c2sq_filtration(j, j, dims);
  if (j <= 0 || j % 2 == 0 || j % 3 == 0)
    throw Error(ErrorCode::BadLevels, "ramified branch needs gcd(j, 6) = 1, got " + std::to_string(j));
  RamFiltration f;
  f.n = dims.n;
  f.levels.push_back({12, dims.a4});
  for (std::int64_t i = 1; i <= j; ++i) f.levels.push_back({4, dims.c2sq});
  return f;
}

inline Rational c2sq_v(std::int64_t j, std::int64_t k) { return artin_v(c2sq_filtration(j, k)); }
inline Rational a4_v(bool cubic_ramified, std::int64_t j) { return artin_v(a4_filtration(cubic_ramified, j)); }

}  // namespace wildmck
