#pragma once
// Brute-force checks at concrete q: Artin-Schreier representatives are
// enumerated and reduced, pair planes are classified by level, and truncated
// census sums are compared with closed forms under exact tail bounds.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wildmck/census.hpp"
#include "wildmck/errors.hpp"
#include "wildmck/galois_field.hpp"
#include "wildmck/mass.hpp"
#include "wildmck/qseries.hpp"
#include "wildmck/vfun.hpp"

namespace wildmck {

struct TruncationWindow {
  std::uint64_t q0 = 4;
  std::int64_t jmax = 9;
  std::size_t nterms = 32;
};

inline void check_window(const TruncationWindow& w) {
  if (w.jmax < 0) throw Error(ErrorCode::BadLevel, "negative maximal level");
  if (w.nterms < static_cast<std::size_t>(2 * w.jmax) || w.nterms < static_cast<std::size_t>(w.jmax + 1))
    throw Error(ErrorCode::TruncationExceeded, "window keeps " + std::to_string(w.nterms) +
                                                   " terms, needs at least 2 * Jmax = " + std::to_string(2 * w.jmax));
}

/// Full support enumerates every series c_0 + ... + c_{Jmax} t^{-Jmax}, so the
/// reduction has real work to do; larger windows fall back to the reduced support.
enum class SupportMode { Full, Reduced };

inline constexpr std::uint64_t kFullSupportBudget = std::uint64_t{1} << 21;

struct AsEnumeration {
  SupportMode mode = SupportMode::Reduced;
  std::uint64_t series_enumerated = 0;
  std::map<std::int64_t, std::uint64_t> classes_per_level;  // level 0 = nontrivial constant class
};

namespace detail {

using RepKey = std::pair<std::int64_t, std::vector<Fq::Element>>;

inline RepKey rep_key(const TruncLaurent& r) {
  std::vector<Fq::Element> cs;
  for (std::int64_t k = r.valuation(); k < r.precision(); ++k) cs.push_back(r.coefficient(k));
  return {r.valuation(), std::move(cs)};
}

/// Calls visit(series) for every coefficient vector on the given exponents.
template <class Visit>
void for_each_series(const Fq& f, std::int64_t jmax, const std::vector<std::int64_t>& exponents, std::size_t nterms,
                     Visit&& visit) {
  std::vector<Fq::Element> digits(exponents.size(), 0);
  std::vector<Fq::Element> cs(static_cast<std::size_t>(jmax + 1), 0);
  while (true) {
    std::fill(cs.begin(), cs.end(), 0);
    for (std::size_t i = 0; i < exponents.size(); ++i) cs[static_cast<std::size_t>(exponents[i] + jmax)] = digits[i];
    visit(TruncLaurent(f, -jmax, cs, nterms));
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == f.q()) digits[pos++] = 0;
    if (pos == digits.size()) return;
  }
}

inline std::uint64_t checked_power(std::uint64_t base, std::int64_t e) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 40) / base) return std::uint64_t{1} << 40;
    r *= base;
  }
  return r;
}

}  // namespace detail

/// Distinct Artin-Schreier classes of level <= Jmax, counted per level.
inline AsEnumeration enumerate_as_classes(const Fq& f, const TruncationWindow& w) {
  check_window(w);
  const std::int64_t p = f.p();
  AsEnumeration out;
  std::vector<std::int64_t> exponents;
  out.mode = detail::checked_power(f.q(), w.jmax + 1) <= kFullSupportBudget ? SupportMode::Full : SupportMode::Reduced;
  for (std::int64_t j = 0; j <= w.jmax; ++j)
    if (out.mode == SupportMode::Full || j == 0 || j % p != 0) exponents.push_back(-j);
  std::set<detail::RepKey> seen;
  detail::for_each_series(f, w.jmax, exponents, w.nterms, [&](const TruncLaurent& a) {
    ++out.series_enumerated;
    seen.insert(detail::rep_key(artin_schreier_reduce(a)));
  });
  for (std::int64_t j = 0; j <= w.jmax; ++j)
    if (j == 0 || j % p != 0) out.classes_per_level[j] = 0;
  for (const auto& [val, cs] : seen) {
    const bool zero = std::all_of(cs.begin(), cs.end(), [](Fq::Element c) { return c == 0; });
    if (zero) continue;
    const std::int64_t level = val < 0 ? -val : 0;
    ++out.classes_per_level[level];
  }
  return out;
}

/// Nonzero reduced representatives of level <= jmax, with their levels.
inline std::vector<std::pair<TruncLaurent, std::int64_t>> reduced_representatives(const Fq& f, const TruncationWindow& w) {
  check_window(w);
  std::vector<std::int64_t> exponents;
  for (std::int64_t j = 0; j <= w.jmax; ++j)
    if (j == 0 || j % f.p() != 0) exponents.push_back(-j);
  std::set<detail::RepKey> seen;
  std::vector<std::pair<TruncLaurent, std::int64_t>> out;
  detail::for_each_series(f, w.jmax, exponents, w.nterms, [&](const TruncLaurent& a) {
    auto r = artin_schreier_reduce(a);
    if (r.is_zero_through(0) || !seen.insert(detail::rep_key(r)).second) return;
    const std::int64_t level = r.pole_order();
    out.emplace_back(std::move(r), level);
  });
  return out;
}

struct PairCensus {
  /// Ordered pairs (a, b) spanning an F_2-plane of type (j, k), keyed by (j, k).
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> ordered_pairs;
  /// Number of distinct planes {a, b, a + b} of each type.
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> planes;
};

/// Classifies F_2-planes of Artin-Schreier classes by the levels of their
/// three nonzero members: (0, k, k) -> (0, k), (j, j, j) -> (j, j), (j, k, k) -> (j, k).
inline PairCensus c2sq_pair_census(const Fq& f, const TruncationWindow& w) {
  if (f.p() != 2) throw Error(ErrorCode::Unsupported, "pair census is defined for p = 2");
  const auto reps = reduced_representatives(f, w);
  PairCensus out;
  std::set<std::vector<detail::RepKey>> planes;
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) {
      if (a == b) continue;
      const auto c = artin_schreier_reduce(reps[a].first + reps[b].first);
      std::vector<std::int64_t> levels{reps[a].second, reps[b].second, c.pole_order()};
      std::sort(levels.begin(), levels.end());
      const auto type = std::make_pair(levels[0], levels[2]);
      ++out.ordered_pairs[type];
      std::vector<detail::RepKey> plane{detail::rep_key(reps[a].first), detail::rep_key(reps[b].first),
                                        detail::rep_key(c)};
      std::sort(plane.begin(), plane.end());
      if (planes.insert(plane).second) ++out.planes[type];
    }
  return out;
}

struct TruncationResult {
  bool pass = false;
  bool monotone = true;
  Rational partial;
  Rational closed;
  Rational tail_bound;
  std::vector<Rational> partial_sums;  // index J = truncation at levels <= J
  std::string detail;
};

namespace detail {

inline std::int64_t stratum_level(const CensusStratum& s) {
  std::int64_t l = 0;
  for (auto x : s.levels) l = std::max(l, x);
  return l;
}

/// Index vectors of `rank` coordinates with |i|_1 = total.
inline std::vector<std::vector<std::int64_t>> simplex_layer(std::size_t rank, std::int64_t total) {
  if (rank == 0) return total == 0 ? std::vector<std::vector<std::int64_t>>{{}} : std::vector<std::vector<std::int64_t>>{};
  if (rank == 1) return {{total}};
  std::vector<std::vector<std::int64_t>> out;
  for (std::int64_t first = 0; first <= total; ++first)
    for (auto rest : simplex_layer(rank - 1, total - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  return out;
}

/// sum_{s >= M} C(s + r - 1, r - 1) rho^s, exactly.
inline Rational layered_geometric_tail(std::size_t rank, std::int64_t m, const Rational& rho) {
  if (rank == 0) return 0;
  // The generating function of C(s + r - 1, r - 1) is (1 - x)^(-r); sum the
  // first M terms and subtract.
  Rational total = 1;
  for (std::size_t i = 0; i < rank; ++i) total /= (1 - rho);
  Rational head = 0, power = 1;
  for (std::int64_t s = 0; s < m; ++s) {
    Integer binom = 1;
    for (std::size_t i = 1; i < rank; ++i) binom = binom * (s + static_cast<std::int64_t>(i)) / static_cast<std::int64_t>(i);
    head += Rational(binom) * power;
    power *= rho;
  }
  return total - head;
}

}  // namespace detail

/// Compares partial sums of stratum families at q0 (strata with all levels <= J,
/// J = 0..Jmax) with a closed form. Each partial sum must be nondecreasing in J,
/// stay below the closed form, and be within a union bound of the excluded tail.
inline TruncationResult truncated_sum_compare(const std::vector<StratumFamily>& fams, const QLaurent& closed_form,
                                              const TruncationWindow& w) {
  check_window(w);
  const Rational q0(static_cast<std::int64_t>(w.q0));
  TruncationResult out;
  out.closed = evaluate(closed_form, q0);

  struct Prepared {
    const StratumFamily* fam;
    Rational t0;
    Rational rho;
  };
  std::vector<Prepared> prepared;
  for (const auto& fam : fams) {
    const auto geo = geometric_decomposition(fam);
    Rational rho = 0;
    for (const auto& step : geo.steps) {
      if (step >= 0)
        throw Error(ErrorCode::DivergentAtQ0, "family '" + fam.name + "' has step q^" + to_string(step) +
                                                  " >= 1 at q = " + std::to_string(w.q0));
      rho = std::max(rho, rational_power(q0, step));
    }
    prepared.push_back({&fam, evaluate(geo.t0, q0), rho});
  }

  out.partial_sums.assign(static_cast<std::size_t>(w.jmax + 1), 0);
  Rational bound_at_jmax = 0;
  for (const auto& pr : prepared) {
    const auto& fam = *pr.fam;
    const auto geo = geometric_decomposition(fam);
    // Walk layers |i|_1 = s until every stratum of the layer lies above Jmax.
    std::int64_t first_excluded_layer = -1;
    for (std::int64_t s = 0;; ++s) {
      bool any_inside = false;
      for (const auto& idx : detail::simplex_layer(fam.rank, s)) {
        const auto stratum = fam.at(idx);
        const std::int64_t level = detail::stratum_level(stratum);
        if (level > w.jmax) {
          if (first_excluded_layer < 0) first_excluded_layer = s;
          continue;
        }
        any_inside = true;
        const Rational term = evaluate(stratum.count, q0) * rational_power(q0, Rational(fam.n) - stratum.v);
        Rational predicted = pr.t0;
        for (std::size_t t = 0; t < idx.size(); ++t)
          for (std::int64_t k = 0; k < idx[t]; ++k) predicted *= rational_power(q0, geo.steps[t]);
        if (term != predicted || term < 0) {
          out.detail = "family '" + fam.name + "' deviates from its geometric form at " + stratum.label;
          return out;
        }
        for (std::int64_t J = level; J <= w.jmax; ++J) out.partial_sums[static_cast<std::size_t>(J)] += term;
      }
      if (fam.rank == 0 || !any_inside) break;
    }
    if (fam.rank > 0) {
      if (first_excluded_layer < 0) throw Error(ErrorCode::TruncationExceeded, "no excluded layer found");
      bound_at_jmax += pr.t0 * detail::layered_geometric_tail(fam.rank, first_excluded_layer, pr.rho);
    }
  }
  out.partial = out.partial_sums.back();
  out.tail_bound = bound_at_jmax;
  for (std::size_t J = 1; J < out.partial_sums.size(); ++J)
    if (out.partial_sums[J] < out.partial_sums[J - 1]) out.monotone = false;
  const bool below = std::all_of(out.partial_sums.begin(), out.partial_sums.end(),
                                 [&](const Rational& s) { return s <= out.closed; });
  const Rational gap = out.closed - out.partial;
  out.pass = out.monotone && below && gap <= out.tail_bound;
  out.detail = "partial " + to_string(out.partial) + ", closed " + to_string(out.closed) + ", gap " + to_string(gap) +
               ", tail bound " + to_string(out.tail_bound);
  return out;
}

// ---------------------------------------------------------------------------

struct BatteryRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Level counts of the enumeration against as_level_count at q0.
inline BatteryRow as_level_row(std::uint64_t p, std::uint64_t q0, std::int64_t jmax) {
  std::uint64_t e = 0;
  for (std::uint64_t x = 1; x < q0; x *= p) ++e;
  const Fq f = make_field(p, e);
  const auto en = enumerate_as_classes(f, {q0, jmax, static_cast<std::size_t>(std::max<std::int64_t>(2 * jmax, 2))});
  BatteryRow row;
  row.name = "AS classes p=" + std::to_string(p) + " q=" + std::to_string(q0) + " j<=" + std::to_string(jmax) +
             (en.mode == SupportMode::Full ? " (full support)" : " (reduced support)");
  row.pass = true;
  for (const auto& [j, count] : en.classes_per_level) {
    const Rational expected = evaluate(as_level_count(static_cast<std::int64_t>(p), j), Rational(static_cast<std::int64_t>(q0)));
    if (expected != Rational(static_cast<std::int64_t>(count))) {
      row.pass = false;
      row.detail += "j=" + std::to_string(j) + ": " + std::to_string(count) + " vs " + to_string(expected) + "; ";
    }
  }
  if (row.pass) row.detail = std::to_string(en.series_enumerated) + " series reduced";
  return row;
}

inline BatteryRow c2sq_pair_row(std::uint64_t q0, std::int64_t jmax) {
  std::uint64_t e = 0;
  for (std::uint64_t x = 1; x < q0; x *= 2) ++e;
  const auto census = c2sq_pair_census(make_field(2, e), {q0, jmax, static_cast<std::size_t>(2 * jmax)});
  BatteryRow row;
  row.name = "C2^2 pair census q=" + std::to_string(q0) + " k<=" + std::to_string(jmax);
  row.pass = true;
  std::size_t types = 0;
  for (std::int64_t k = 1; k <= jmax; k += 2)
    for (std::int64_t j = 0; j <= k; j += (j == 0 ? 1 : 2)) {
      ++types;
      const Rational expected = evaluate(c2sq_stratum(j, k).count, Rational(static_cast<std::int64_t>(q0)));
      auto it = census.ordered_pairs.find({j, k});
      const std::uint64_t got = it == census.ordered_pairs.end() ? 0 : it->second;
      auto pit = census.planes.find({j, k});
      const std::uint64_t planes = pit == census.planes.end() ? 0 : pit->second;
      if (expected != Rational(static_cast<std::int64_t>(got)) || got != 6 * planes) {
        row.pass = false;
        row.detail += "(" + std::to_string(j) + "," + std::to_string(k) + "): " + std::to_string(got) + " vs " +
                      to_string(expected) + "; ";
      }
    }
  // Every plane must land in one of the three types.
  for (const auto& [type, count] : census.ordered_pairs) {
    const auto [j, k] = type;
    const bool known = k % 2 == 1 && (j == 0 || (j % 2 == 1 && j <= k));
    if (!known) {
      row.pass = false;
      row.detail += "unexpected type (" + std::to_string(j) + "," + std::to_string(k) + "); ";
    }
  }
  if (row.pass) row.detail = std::to_string(types) + " stratum types agree";
  return row;
}

inline BatteryRow truncation_row(const std::string& name, const std::vector<StratumFamily>& fams,
                                 const QLaurent& closed, std::uint64_t q0, std::int64_t jmax) {
  const auto r = truncated_sum_compare(fams, closed, {q0, jmax, static_cast<std::size_t>(2 * jmax)});
  return {name + " truncated at q=" + std::to_string(q0) + " j<=" + std::to_string(jmax), r.pass, r.detail};
}

/// Divergent families must be refused at q0.
inline BatteryRow divergence_row(std::uint64_t q0) {
  const SummandData j2_1_1{{2, 0}, {1, 0}, {1, 0}};
  BatteryRow row{"J2+1+1 refused at q=" + std::to_string(q0), false, ""};
  try {
    truncated_sum_compare(modular_families(j2_1_1, 0, 2, 4), QLaurent{}, {q0, 9, 18});
    row.detail = "no divergence reported";
  } catch (const Error& e) {
    row.pass = e.code() == ErrorCode::DivergentAtQ0;
    row.detail = e.what();
  }
  return row;
}

inline std::vector<BatteryRow> run_oracle_battery() {
  std::vector<BatteryRow> rows;
  for (std::uint64_t q0 : {2, 4, 8}) rows.push_back(as_level_row(2, q0, 9));
  rows.push_back(as_level_row(3, 3, 7));
  rows.push_back(as_level_row(3, 9, 7));
  rows.push_back(c2sq_pair_row(2, 9));
  rows.push_back(c2sq_pair_row(4, 7));
  rows.push_back(truncation_row("f(C2^2)", c2sq_families(), f_c2sq(), 4, 9));
  rows.push_back(truncation_row("f(A4)", a4_families(), f_a4(), 4, 9));
  rows.push_back(divergence_row(4));
  return rows;
}

}  // namespace wildmck
