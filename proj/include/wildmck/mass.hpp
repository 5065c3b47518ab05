#pragma once
// Mass polynomials f_{G'} per subgroup class, their weighted sum F_G, and the
// MassReport with S(F_G), Betti data and the conjugacy / indecomposable counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wildmck/census.hpp"
#include "wildmck/errors.hpp"
#include "wildmck/group_core.hpp"
#include "wildmck/qseries.hpp"
#include "wildmck/vfun.hpp"

namespace wildmck {

struct Divergent {
  Rational d_v;
  std::int64_t p = 0;
  friend bool operator==(const Divergent&, const Divergent&) = default;
};

using FValue = std::variant<QLaurent, NotPolynomial, Divergent>;

/// Number of f with <f, tau> = h, keyed by tau (h abelian and tame).
inline std::map<ElementId, std::int64_t> inertia_multiplicities(const MatrixGroup& g, const Subgroup& h) {
  std::map<ElementId, std::int64_t> out;
  for (const auto& pair : tame_pairs(g, h)) ++out[pair.inertia];
  return out;
}

/// Sum over generating pairs (f, tau) of q^{n - age(tau)}.
inline QLaurent f_tame_abelian(const MatrixGroup& g, const Subgroup& h) {
  QLaurent f;
  for (const auto& [tau, count] : inertia_multiplicities(g, h))
    f += QLaurent::monomial(count, Rational(static_cast<std::int64_t>(g.n())) - inertia_age(g.element(tau)));
  return f;
}

/// Inertia data of one tame pair class of H' inside H' x C_p.
struct ModularTerm {
  Rational age;
  SummandData summands;
  std::int64_t multiplicity = 1;
};

/// Closed form for H' x C_p from per-inertia summand data.
inline FValue f_modular_abelian(const std::vector<ModularTerm>& terms, std::int64_t n, std::int64_t p) {
  if (terms.empty()) return QLaurent{};
  const Rational dv = d_v(terms.front().summands);
  for (const auto& t : terms)
    if (d_v(t.summands) != dv) throw Error(ErrorCode::Unsupported, "inconsistent Jordan data across inertia values");
  if (dv < p) return Divergent{dv, p};
  const QLaurent one(1);
  const QLaurent den = one - QLaurent::q(Rational(p - 1) - dv);
  const QLaurent wild_factor = QLaurent(p) * (one - QLaurent::q(-1));
  QRatFun total(QLaurent{}, den);
  for (const auto& t : terms) {
    QLaurent shifts;
    for (std::int64_t r = 1; r < p; ++r) shifts += QLaurent::q(Rational(r) - sht(t.summands, r, p));
    const QLaurent outer = QLaurent::monomial(t.multiplicity, Rational(n) - t.age);
    total += QRatFun(outer * (QLaurent(p - 1) * den + wild_factor * shifts), den);
  }
  auto verdict = simplify_to_polynomial(total);
  if (auto* poly = std::get_if<QLaurent>(&verdict)) return *poly;
  return std::get<NotPolynomial>(verdict);
}

/// Jordan blocks of sigma on each eigenspace of every inertia value of the tame part.
inline std::vector<ModularTerm> modular_terms(const MatrixGroup& g, const Subgroup& k) {
  const auto p = static_cast<std::uint64_t>(g.p());
  const auto reg = p_regular_elements(g, k);
  const Subgroup tame = generate(g, reg);
  const ElementId sigma = *std::find_if(k.elements.begin(), k.elements.end(),
                                        [&](ElementId x) { return g.element_order(x) == p; });
  const FqMatrix nilp = g.element(sigma).minus_scalar(1);
  std::vector<FqMatrix> powers{FqMatrix::identity(g.field(), g.n())};
  for (std::uint64_t i = 0; i < p; ++i) powers.push_back(powers.back() * nilp);

  std::vector<ModularTerm> out;
  for (const auto& [tau, count] : inertia_multiplicities(g, tame)) {
    ModularTerm term;
    term.multiplicity = count;
    for (const auto& space : eigenspaces(g.element(tau))) {
      std::vector<std::size_t> r;  // r[i] = rank of (sigma - 1)^i on the eigenspace
      for (const auto& m : powers) r.push_back(rank_on_columns(m, space.basis));
      r.push_back(0);
      for (std::size_t d = 1; d + 1 < r.size(); ++d) {
        const std::size_t at_least_d = r[d - 1] - r[d];
        const std::size_t at_least_next = r[d] - r[d + 1];
        for (std::size_t c = 0; c < at_least_d - at_least_next; ++c)
          term.summands.push_back({static_cast<int>(d), space.twist});
      }
      term.age += static_cast<std::int64_t>(space.basis.size()) * space.twist;
    }
    out.push_back(std::move(term));
  }
  return out;
}

inline FValue f_modular_abelian(const MatrixGroup& g, const Subgroup& k) {
  return f_modular_abelian(modular_terms(g, k), static_cast<std::int64_t>(g.n()), g.p());
}

/// H x| C_p with H non-modular abelian admits no Galois field extension.
inline QLaurent f_nonabelian_modular() { return QLaurent{}; }

namespace detail {

/// c q^s with b = a * c q^s, if it exists.
inline std::optional<QLaurent> monomial_ratio(const QLaurent& a, const QLaurent& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  const QLaurent m = QLaurent::monomial(b.coefficient(b.max_exponent()) / a.coefficient(a.max_exponent()),
                                        b.max_exponent() - a.max_exponent());
  if (a * m != b) return std::nullopt;
  return m;
}

}  // namespace detail

/// A family whose terms are T(i) = T(0) * prod_t q^{step_t i_t}.
struct GeometricFamily {
  QLaurent t0;
  std::vector<Rational> steps;
};

/// Reads T(0) and the step exponents off a stratum family, checking the term
/// ratio along each direction is a monomial q^{step} and that it persists at
/// 2 e_t and e_s + e_t.
inline GeometricFamily geometric_decomposition(const StratumFamily& fam) {
  const std::vector<std::int64_t> zero(fam.rank, 0);
  GeometricFamily out{fam.term(zero), {}};
  std::vector<QLaurent> ratios;
  for (std::size_t t = 0; t < fam.rank; ++t) {
    auto e = zero;
    e[t] = 1;
    auto ratio = detail::monomial_ratio(out.t0, fam.term(e));
    if (!ratio || ratio->size() != 1 || ratio->coefficient(ratio->max_exponent()) != 1)
      throw Error(ErrorCode::Unsupported, "family '" + fam.name + "' is not geometric in direction " + std::to_string(t));
    ratios.push_back(*ratio);
    out.steps.push_back(ratio->max_exponent());
  }
  for (std::size_t t = 0; t < fam.rank; ++t)
    for (std::size_t s = t; s < fam.rank; ++s) {
      auto e = zero;
      e[t] += 1;
      e[s] += 1;
      if (fam.term(e) != out.t0 * ratios[t] * ratios[s])
        throw Error(ErrorCode::Unsupported, "family '" + fam.name + "' is not a product of geometric series");
    }
  return out;
}

/// Sum of a stratum family as T(0) / prod_t (1 - q^{step_t}).
inline QRatFun family_closed_form(const StratumFamily& fam) {
  const auto geo = geometric_decomposition(fam);
  QRatFun out = geo.t0;
  for (const auto& step : geo.steps) out *= geometric_closed_form(1, 0, step);
  return out;
}

inline QLaurent sum_families_polynomial(const std::vector<StratumFamily>& fams, const std::string& what) {
  QRatFun total;
  for (const auto& fam : fams) total += family_closed_form(fam);
  auto verdict = simplify_to_polynomial(total);
  if (auto* poly = std::get_if<QLaurent>(&verdict)) return *poly;
  throw Error(ErrorCode::Unsupported, what + " did not simplify to a polynomial");
}

inline QLaurent f_c2sq() { return sum_families_polynomial(c2sq_families(), "f for C_2^2"); }
inline QLaurent f_a4() { return sum_families_polynomial(a4_families(), "f for A_4"); }

// ---------------------------------------------------------------------------

struct ClassMass {
  SubgroupClass cls;
  FValue f;
  /// S(f_{H'}) for the tame part H' of a modular abelian class.
  std::optional<Rational> s_tame_part;
};

struct MassReport {
  std::string label;
  std::uint64_t q = 0;
  std::size_t group_order = 0;
  bool in_sl = true;
  bool small = true;
  std::vector<ClassMass> classes;
  std::optional<QLaurent> big_f;  // empty when some class is divergent or not polynomial
  std::string failure;
  std::optional<Rational> s_of_f;
  std::optional<BettiVerdict> betti;
  std::size_t conj_count = 0;
  IndecomposableCount ind_count = std::size_t{0};
  bool theorem_consistent = false;
  /// S(F_G); equals the Euler number of Y only if a crepant resolution exists.
  std::optional<Integer> crepant_conditional_euler;
};

inline std::optional<Rational> s_of(const FValue& f) {
  if (auto* poly = std::get_if<QLaurent>(&f)) return s_value(*poly);
  return std::nullopt;
}

inline FValue class_mass(const MatrixGroup& g, const SubgroupClass& c) {
  switch (c.kind) {
    case SubgroupKind::Trivial:
    case SubgroupKind::TameAbelian: return f_tame_abelian(g, c.representative);
    case SubgroupKind::ModularAbelian: return f_modular_abelian(g, c.representative);
    case SubgroupKind::ModularNonabelian: return f_nonabelian_modular();
    case SubgroupKind::PermC2Squared: return f_c2sq();
    case SubgroupKind::PermA4: return f_a4();
    case SubgroupKind::Other: break;
  }
  throw Error(ErrorCode::UnsupportedSubgroupKind,
              "subgroup of order " + std::to_string(c.order()) + " is outside the supported taxonomy");
}

inline MassReport big_f(const MatrixGroup& g, std::size_t max_group_order = kDefaultMaxGroupOrder) {
  MassReport r;
  r.label = g.spec().label;
  r.q = g.field().q();
  r.group_order = g.order();
  const auto sm = validate_sl_and_small(g);
  r.in_sl = sm.in_sl;
  r.small = sm.small;

  QLaurent total;
  bool polynomial = true;
  for (auto& cls : subgroup_classes(g, max_group_order)) {
    ClassMass cm{cls, class_mass(g, cls), std::nullopt};
    if (cls.kind == SubgroupKind::ModularAbelian)
      cm.s_tame_part = s_value(f_tame_abelian(g, generate(g, p_regular_elements(g, cls.representative))));
    if (auto* poly = std::get_if<QLaurent>(&cm.f)) {
      total += *poly * QLaurent(Rational(1, static_cast<std::int64_t>(cls.normalizer_order)));
    } else if (polynomial) {
      polynomial = false;
      r.failure = std::holds_alternative<Divergent>(cm.f) ? "Divergent" : "NotPolynomial";
      r.failure += " at a subgroup of order " + std::to_string(cls.order());
    }
    r.classes.push_back(std::move(cm));
  }
  r.conj_count = conjugacy_class_count(g);
  r.ind_count = indecomposable_count(g);
  if (polynomial) {
    r.big_f = total;
    r.s_of_f = s_value(total);
    r.betti = substitute_square(total);
    if (is_integer(*r.s_of_f)) r.crepant_conditional_euler = numerator(*r.s_of_f);
    const auto* ind = std::get_if<std::size_t>(&r.ind_count);
    r.theorem_consistent = *r.s_of_f == Rational(static_cast<std::int64_t>(r.conj_count)) &&
                           (!ind || *ind == r.conj_count);
  }
  return r;
}

}  // namespace wildmck
