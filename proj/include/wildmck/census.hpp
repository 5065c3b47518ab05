#pragma once
// Strata of G-etale algebras over F_q((t)): Artin-Schreier level counts, tame
// (Frobenius, inertia) pairs, and the stratum families of the C_2^2 and A_4
// permutation fixtures.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wildmck/errors.hpp"
#include "wildmck/galois_field.hpp"
#include "wildmck/group_core.hpp"
#include "wildmck/qseries.hpp"
#include "wildmck/vfun.hpp"

namespace wildmck {

/// Number of C_p-extensions at Artin-Schreier level j, as a polynomial in q.
inline QLaurent as_level_count(std::int64_t p, std::int64_t j) {
  if (j < 0 || (j > 0 && j % p == 0))
    throw Error(ErrorCode::InvalidLevel, "level " + std::to_string(j) + " for p = " + std::to_string(p));
  if (j == 0) return QLaurent(p - 1);
  const std::int64_t e = j - 1 - (j - 1) / p;
  return QLaurent::monomial(p, e + 1) - QLaurent::monomial(p, e);
}

struct TamePair {
  ElementId frobenius = 0;
  ElementId inertia = 0;
};

/// Ordered pairs generating the tame abelian subgroup h.
inline std::vector<TamePair> tame_pairs(const MatrixGroup& g, const Subgroup& h) {
  if (h.order() % static_cast<std::size_t>(g.p()) == 0)
    throw Error(ErrorCode::ModularInput, "subgroup order " + std::to_string(h.order()) + " is divisible by p");
  if (!is_abelian(g, h)) throw Error(ErrorCode::Unsupported, "tame pairs need an abelian subgroup");
  std::vector<std::vector<ElementId>> powers;  // cyclic subgroup of each element
  for (ElementId x : h.elements) {
    std::vector<ElementId> c{g.identity()};
    for (ElementId y = x; y != g.identity(); y = g.mul(y, x)) c.push_back(y);
    powers.push_back(std::move(c));
  }
  std::vector<std::size_t> stamp(g.order(), 0);
  std::size_t round = 0;
  std::vector<TamePair> out;
  for (std::size_t a = 0; a < h.order(); ++a)
    for (std::size_t b = 0; b < h.order(); ++b) {
      if (powers[a].size() * powers[b].size() < h.order()) continue;
      ++round;
      std::size_t hit = 0;
      for (ElementId x : powers[a])
        for (ElementId y : powers[b]) {
          const ElementId z = g.mul(x, y);
          if (stamp[z] != round) stamp[z] = round, ++hit;
        }
      if (hit == h.order()) out.push_back({h.elements[a], h.elements[b]});
    }
  return out;
}

/// Age of diag(zeta_m^{b_1}, ..., zeta_m^{b_n}): sum of (b_i mod m) / m.
inline Rational inertia_age(const std::vector<std::int64_t>& exponents, std::int64_t m) {
  Rational a = 0;
  for (auto b : exponents) a += Rational(((b % m) + m) % m, m);
  return a;
}

/// Eigenspace of a semisimple matrix for the eigenvalue g^k, twist = k / (q - 1).
struct Eigenspace {
  Fq::Element eigenvalue = 1;
  Rational twist = 0;
  std::vector<std::vector<Fq::Element>> basis;
};

/// Eigenspaces of an element of order prime to p, with eigenvalues in F_q.
inline std::vector<Eigenspace> eigenspaces(const FqMatrix& tau) {
  const Fq& f = tau.field();
  std::vector<Eigenspace> out;
  std::size_t total = 0;
  for (std::uint32_t k = 0; k + 1 < f.q() && total < tau.n(); ++k) {
    const Fq::Element lambda = f.exp(k);
    auto basis = kernel_basis(tau.minus_scalar(lambda));
    if (basis.empty()) continue;
    total += basis.size();
    out.push_back({lambda, Rational(k, f.q() - 1), std::move(basis)});
  }
  if (total != tau.n()) throw Error(ErrorCode::ModularInput, "element is not diagonalizable over F_q");
  return out;
}

/// Age of a diagonalizable matrix via its eigenvalue exponents.
inline Rational inertia_age(const FqMatrix& tau) {
  Rational a = 0;
  for (const auto& e : eigenspaces(tau)) a += static_cast<std::int64_t>(e.basis.size()) * e.twist;
  return a;
}

struct CensusStratum {
  QLaurent count;
  Rational v = 0;
  std::string label;
  std::vector<std::int64_t> levels;  // Artin-Schreier levels that define the stratum
};

/// A family of strata indexed by i in N^rank; its mass contribution is
/// sum_i count(i) q^{n - v(i)}.
struct StratumFamily {
  std::string name;
  std::size_t rank = 0;
  std::int64_t n = 0;
  std::function<CensusStratum(const std::vector<std::int64_t>&)> at;

  QLaurent term(const std::vector<std::int64_t>& idx) const {
    const auto s = at(idx);
    return s.count * QLaurent::q(Rational(n) - s.v);
  }
};

namespace detail {

inline QLaurent qm1() { return QLaurent::q() - QLaurent(1); }

inline std::string level_label(const std::string& head, std::int64_t j, std::int64_t k) {
  return head + "j=" + std::to_string(j) + ",k=" + std::to_string(k);
}

}  // namespace detail

/// C_2^2 census strata at levels (j, k), j <= k.
inline CensusStratum c2sq_stratum(std::int64_t j, std::int64_t k) {
  const Rational v = c2sq_v(j, k);
  if (j == 0) return {QLaurent::monomial(6, (k - 1) / 2) * detail::qm1(), v, detail::level_label("", j, k), {j, k}};
  if (j == k)
    return {QLaurent::monomial(4, j - 1) * detail::qm1() * (QLaurent::q() - QLaurent(2)), v, detail::level_label("", j, k),
            {j, k}};
  return {QLaurent::monomial(12, (j - 1) / 2 + (k - 1) / 2) * detail::qm1() * detail::qm1(), v,
          detail::level_label("", j, k), {j, k}};
}

inline std::vector<StratumFamily> c2sq_families() {
  return {
      {"c2sq j=0<k", 1, 4, [](const std::vector<std::int64_t>& i) { return c2sq_stratum(0, 2 * i[0] + 1); }},
      {"c2sq j=k", 1, 4, [](const std::vector<std::int64_t>& i) { return c2sq_stratum(2 * i[0] + 1, 2 * i[0] + 1); }},
      {"c2sq 0<j<k", 2, 4,
       [](const std::vector<std::int64_t>& i) {
         const std::int64_t j = 2 * i[0] + 1;
         return c2sq_stratum(j, j + 2 * (i[1] + 1));
       }},
  };
}

/// A_4 strata: level j over the cubic layer, which is unramified or ramified.
inline CensusStratum a4_stratum(bool cubic_ramified, std::int64_t j) {
  const Rational v = a4_v(cubic_ramified, j);
  if (!cubic_ramified)
    return {QLaurent::monomial(8, j - 1) * (QLaurent::q(2) - QLaurent(1)), v, "unramified,j=" + std::to_string(j), {j}};
  const std::int64_t e = j - 1 - (j - 1) / 2 - (j - 1) / 3 + (j - 1) / 6;
  return {QLaurent::monomial(24, e) * detail::qm1(), v, "ramified,j=" + std::to_string(j), {j}};
}

inline std::vector<StratumFamily> a4_families() {
  return {
      {"a4 unramified", 1, 4, [](const std::vector<std::int64_t>& i) { return a4_stratum(false, 2 * i[0] + 1); }},
      {"a4 ramified j=1 mod 6", 1, 4, [](const std::vector<std::int64_t>& i) { return a4_stratum(true, 6 * i[0] + 1); }},
      {"a4 ramified j=5 mod 6", 1, 4, [](const std::vector<std::int64_t>& i) { return a4_stratum(true, 6 * i[0] + 5); }},
  };
}

/// Strata of an abelian H' x C_p class for one tame inertia value: the
/// unramified C_p-layer plus one family per residue r of j mod p.
/// `multiplicity` is the number of tame pairs sharing this inertia data.
inline std::vector<StratumFamily> modular_families(const SummandData& summands, const Rational& age, std::int64_t p,
                                                   std::int64_t n, std::int64_t multiplicity = 1) {
  std::vector<StratumFamily> out;
  out.push_back({"j=0", 0, n, [=](const std::vector<std::int64_t>&) {
                   return CensusStratum{multiplicity * as_level_count(p, 0), v_composite(summands, age, 0, p), "j=0", {0}};
                 }});
  for (std::int64_t r = 1; r < p; ++r) {
    out.push_back({"j=" + std::to_string(r) + " mod " + std::to_string(p), 1, n,
                   [=](const std::vector<std::int64_t>& i) {
                     const std::int64_t j = i[0] * p + r;
                     return CensusStratum{multiplicity * as_level_count(p, j), v_composite(summands, age, j, p),
                                          "j=" + std::to_string(j), {j}};
                   }});
  }
  return out;
}

}  // namespace wildmck
