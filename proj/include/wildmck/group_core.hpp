#pragma once
// Concrete matrix groups over F_q: realization from a GroupSpec, the subgroup
// lattice up to conjugacy, and the conjugacy / indecomposable counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "wildmck/errors.hpp"
#include "wildmck/galois_field.hpp"
#include "wildmck/group_spec.hpp"

namespace wildmck {

using ElementId = std::uint32_t;

namespace detail {

struct EntryHash {
  std::size_t operator()(const std::vector<Fq::Element>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

struct GroupTables {
  std::once_flag once;
  std::vector<ElementId> mul;  // order x order
  std::vector<ElementId> inv;
  std::vector<std::uint64_t> element_order;
};

}  // namespace detail

inline constexpr std::size_t kMaxRealizedOrder = 1'000'000;
inline constexpr std::size_t kDefaultMaxGroupOrder = 1000;

class MatrixGroup;
MatrixGroup realize(const GroupSpec& spec, std::uint64_t q, std::size_t max_elements);

/// A finite subgroup of GL(n, F_q), elements sorted by their row-major entries.
class MatrixGroup {
 public:
  const GroupSpec& spec() const { return spec_; }
  const Fq& field() const { return field_; }
  std::size_t n() const { return static_cast<std::size_t>(spec_.n); }
  std::int64_t p() const { return spec_.p; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<FqMatrix>& elements() const { return elements_; }
  const FqMatrix& element(ElementId i) const { return elements_[i]; }
  const std::vector<ElementId>& generators() const { return generators_; }
  /// Generators of the tame diagonal part H.
  const std::vector<ElementId>& h_generators() const { return h_generators_; }
  std::optional<ElementId> wild_generator() const { return wild_; }
  ElementId identity() const { return identity_; }

  std::optional<ElementId> index_of(const FqMatrix& m) const {
    auto it = index_.find(m.entries());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Multiplication table, inverses and element orders, built once on first use.
  const detail::GroupTables& tables() const {
    std::call_once(tables_->once, [this] { build_tables(); });
    return *tables_;
  }
  ElementId mul(ElementId a, ElementId b) const { return tables().mul[a * order() + b]; }
  ElementId inv(ElementId a) const { return tables().inv[a]; }
  std::uint64_t element_order(ElementId a) const { return tables().element_order[a]; }
  ElementId conjugate(ElementId g, ElementId x) const { return mul(mul(g, x), inv(g)); }

 private:
  friend MatrixGroup realize(const GroupSpec& spec, std::uint64_t q, std::size_t max_elements);

  void build_tables() const {
    const std::size_t N = order();
    if (N > 4 * kDefaultMaxGroupOrder)
      throw Error(ErrorCode::TooLarge, "group of order " + std::to_string(N) + " is too large for table methods");
    auto& t = *tables_;
    t.mul.resize(N * N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) t.mul[a * N + b] = *index_of(elements_[a] * elements_[b]);
    t.inv.resize(N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        if (t.mul[a * N + b] == identity_) {
          t.inv[a] = static_cast<ElementId>(b);
          break;
        }
    t.element_order.resize(N);
    for (std::size_t a = 0; a < N; ++a) {
      std::uint64_t k = 1;
      for (ElementId x = static_cast<ElementId>(a); x != identity_; x = t.mul[x * N + a]) ++k;
      t.element_order[a] = k;
    }
  }

  GroupSpec spec_;
  Fq field_;
  std::vector<FqMatrix> elements_;
  std::unordered_map<std::vector<Fq::Element>, ElementId, detail::EntryHash> index_;
  std::vector<ElementId> generators_;
  std::vector<ElementId> h_generators_;
  std::optional<ElementId> wild_;
  ElementId identity_ = 0;
  std::shared_ptr<detail::GroupTables> tables_ = std::make_shared<detail::GroupTables>();
};

namespace detail {

inline std::vector<FqMatrix> matrix_closure(const std::vector<FqMatrix>& gens, const Fq& f, std::size_t n,
                                            std::size_t max_elements) {
  std::vector<FqMatrix> out{FqMatrix::identity(f, n)};
  std::unordered_map<std::vector<Fq::Element>, std::size_t, EntryHash> seen{{out[0].entries(), 0}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      FqMatrix next = out[i] * g;
      if (seen.emplace(next.entries(), out.size()).second) {
        out.push_back(std::move(next));
        if (out.size() > max_elements)
          throw Error(ErrorCode::TooLarge, "closure exceeds " + std::to_string(max_elements) + " elements");
      }
    }
  }
  return out;
}

inline FqMatrix permutation_matrix(const Fq& f, const std::vector<int>& images_one_based) {
  const std::size_t n = images_one_based.size();
  FqMatrix m(f, n);
  for (std::size_t i = 0; i < n; ++i) m(static_cast<std::size_t>(images_one_based[i] - 1), i) = 1;
  return m;
}

inline FqMatrix diagonal_matrix(const Fq& f, Fq::Element zeta, const std::vector<std::int64_t>& exps) {
  FqMatrix m(f, exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) m(i, i) = f.pow(zeta, static_cast<std::uint64_t>(exps[i]));
  return m;
}

inline std::uint64_t field_degree(std::uint64_t p, std::uint64_t q) {
  std::uint64_t e = 0;
  for (std::uint64_t x = 1; x < q; x *= p) ++e;
  std::uint64_t check = 1;
  for (std::uint64_t i = 0; i < e; ++i) check *= p;
  if (check != q || q < p)
    throw Error(ErrorCode::IncompatibleField, std::to_string(q) + " is not a power of p = " + std::to_string(p));
  return e;
}

}  // namespace detail

/// Builds G = <H, w> over F_q and checks the order is #H * p (resp. #H).
inline MatrixGroup realize(const GroupSpec& spec_in, std::uint64_t q, std::size_t max_elements = kMaxRealizedOrder) {
  const GroupSpec spec = normalize_spec(spec_in);
  const auto p = static_cast<std::uint64_t>(spec.p);
  const auto n = static_cast<std::size_t>(spec.n);
  const std::uint64_t e = detail::field_degree(p, q);
  if ((q - 1) % static_cast<std::uint64_t>(spec.m) != 0)
    throw Error(ErrorCode::IncompatibleField,
                "q = " + std::to_string(q) + " is not 1 mod m = " + std::to_string(spec.m));
  const Fq f = make_field(p, e);
  const Fq::Element zeta = f.root_of_unity(static_cast<std::uint64_t>(spec.m));

  std::vector<FqMatrix> hgens, gens;
  std::optional<FqMatrix> wild;
  if (spec.permutation_fixture != PermutationFixture::None) {
    gens.push_back(detail::permutation_matrix(f, {2, 1, 4, 3}));
    gens.push_back(detail::permutation_matrix(f, {3, 4, 1, 2}));
    if (spec.permutation_fixture == PermutationFixture::A4) gens.push_back(detail::permutation_matrix(f, {2, 3, 1, 4}));
  } else {
    for (const auto& row : spec.h_generators) hgens.push_back(detail::diagonal_matrix(f, zeta, row));
    if (auto* j = std::get_if<JordanWild>(&spec.wild)) {
      FqMatrix w = FqMatrix::identity(f, n);
      std::size_t pos = 0;
      for (int d : j->blocks) {
        for (int k = 0; k + 1 < d; ++k) w(pos + static_cast<std::size_t>(k), pos + static_cast<std::size_t>(k) + 1) = 1;
        pos += static_cast<std::size_t>(d);
      }
      wild = w;
    } else if (auto* mw = std::get_if<MonomialWild>(&spec.wild)) {
      FqMatrix w(f, n);
      for (std::size_t i = 0; i < n; ++i)
        w(static_cast<std::size_t>(mw->perm[i] - 1), i) = f.pow(zeta, static_cast<std::uint64_t>(mw->diag[i]));
      wild = w;
    }
    gens = hgens;
    if (wild) gens.push_back(*wild);
  }

  std::vector<FqMatrix> h_elems = detail::matrix_closure(hgens, f, n, max_elements);
  if (wild) {
    std::unordered_map<std::vector<Fq::Element>, int, detail::EntryHash> in_h;
    for (const auto& h : h_elems) in_h.emplace(h.entries(), 0);
    FqMatrix wp = FqMatrix::identity(f, n);
    for (std::uint64_t i = 0; i < p; ++i) wp = wp * *wild;
    if (!in_h.count(wp.entries())) throw Error(ErrorCode::NotClosed, "w^p does not lie in H");
    FqMatrix w_inv = *wild;
    for (FqMatrix next = w_inv * *wild; !next.is_identity(); next = next * *wild) w_inv = next;
    for (const auto& h : hgens)
      if (!in_h.count((*wild * h * w_inv).entries())) throw Error(ErrorCode::NotClosed, "w does not normalize H");
  }

  std::vector<FqMatrix> all = detail::matrix_closure(gens, f, n, max_elements);
  const std::size_t expected = spec.permutation_fixture == PermutationFixture::A4         ? 12
                               : spec.permutation_fixture == PermutationFixture::C2Squared ? 4
                               : wild                                                        ? h_elems.size() * p
                                                                                             : h_elems.size();
  if (all.size() != expected)
    throw Error(ErrorCode::NotClosed, "realized order " + std::to_string(all.size()) + " differs from expected " +
                                          std::to_string(expected));
  std::sort(all.begin(), all.end());

  MatrixGroup g;
  g.spec_ = spec;
  g.field_ = f;
  g.elements_ = std::move(all);
  for (std::size_t i = 0; i < g.elements_.size(); ++i) g.index_.emplace(g.elements_[i].entries(), static_cast<ElementId>(i));
  g.identity_ = *g.index_of(FqMatrix::identity(f, n));
  for (const auto& h : hgens) g.h_generators_.push_back(*g.index_of(h));
  for (const auto& x : gens) g.generators_.push_back(*g.index_of(x));
  if (wild) g.wild_ = *g.index_of(*wild);
  return g;
}

inline MatrixGroup realize(const GroupSpec& spec) { return realize(spec, default_field_order(spec)); }

// ---------------------------------------------------------------------------

struct SmallnessReport {
  bool in_sl = true;
  bool small = true;
  std::optional<ElementId> offending;
  std::string reason;
};

/// in_sl: every determinant is 1. small: no pseudo-reflections.
inline SmallnessReport validate_sl_and_small(const MatrixGroup& g) {
  SmallnessReport r;
  const std::size_t n = g.n();
  for (ElementId i = 0; i < g.order(); ++i) {
    const auto& m = g.element(i);
    if (determinant(m) != 1) {
      if (r.in_sl && r.small) r.offending = i, r.reason = "element of determinant != 1 found";
      r.in_sl = false;
    }
    if (i != g.identity() && fixed_space_dim(m) + 2 > n) {
      if (r.in_sl && r.small) r.offending = i, r.reason = "pseudo-reflection found";
      r.small = false;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  std::vector<ElementId> elements;  // sorted
  std::vector<ElementId> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(ElementId x) const { return std::binary_search(elements.begin(), elements.end(), x); }
};

enum class SubgroupKind { Trivial, TameAbelian, ModularAbelian, ModularNonabelian, PermC2Squared, PermA4, Other };

inline std::string_view kind_name(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::Trivial: return "Trivial";
    case SubgroupKind::TameAbelian: return "TameAbelian";
    case SubgroupKind::ModularAbelian: return "ModularAbelian";
    case SubgroupKind::ModularNonabelian: return "ModularNonabelian";
    case SubgroupKind::PermC2Squared: return "PermC2Squared";
    case SubgroupKind::PermA4: return "PermA4";
    case SubgroupKind::Other: return "Other";
  }
  return "Other";
}

struct SubgroupClass {
  Subgroup representative;
  std::size_t class_size = 1;
  std::size_t normalizer_order = 1;
  std::size_t centralizer_order = 1;
  SubgroupKind kind = SubgroupKind::Other;

  std::size_t order() const { return representative.order(); }
};

/// Subgroup generated by `gens`.
inline Subgroup generate(const MatrixGroup& g, std::vector<ElementId> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElementId> elems{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (ElementId x : gens) {
      const ElementId y = g.mul(elems[i], x);
      if (!in[y]) {
        in[y] = 1;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return {std::move(elems), std::move(gens)};
}

inline bool is_abelian(const MatrixGroup& g, const Subgroup& s) {
  for (std::size_t i = 0; i < s.generators.size(); ++i)
    for (std::size_t j = i + 1; j < s.generators.size(); ++j)
      if (g.mul(s.generators[i], s.generators[j]) != g.mul(s.generators[j], s.generators[i])) return false;
  return true;
}

inline std::uint64_t p_part(std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 1;
  while (x % p == 0) {
    x /= p;
    r *= p;
  }
  return r;
}

/// Elements of s of order prime to p (the tame part when s is abelian or of H x| C_p shape).
inline std::vector<ElementId> p_regular_elements(const MatrixGroup& g, const Subgroup& s) {
  std::vector<ElementId> out;
  const auto p = static_cast<std::uint64_t>(g.p());
  for (ElementId x : s.elements)
    if (g.element_order(x) % p != 0) out.push_back(x);
  return out;
}

inline SubgroupKind classify(const MatrixGroup& g, const Subgroup& s) {
  if (s.order() == 1) return SubgroupKind::Trivial;
  const auto p = static_cast<std::uint64_t>(g.p());
  const bool abelian = is_abelian(g, s);
  const std::uint64_t sylow = p_part(s.order(), p);
  if (sylow == 1) return abelian ? SubgroupKind::TameAbelian : SubgroupKind::Other;
  if (g.spec().permutation_fixture != PermutationFixture::None) {
    if (s.order() == 4 && std::none_of(s.elements.begin(), s.elements.end(), [&](ElementId x) { return g.element_order(x) == 4; }))
      return SubgroupKind::PermC2Squared;
    if (s.order() == 12 && g.spec().permutation_fixture == PermutationFixture::A4) return SubgroupKind::PermA4;
  }
  if (sylow != p) return SubgroupKind::Other;
  if (abelian) return SubgroupKind::ModularAbelian;
  // H x| C_p shape: the p-regular elements form an abelian normal subgroup of index p.
  const auto reg = p_regular_elements(g, s);
  if (reg.size() * p != s.order()) return SubgroupKind::Other;
  const Subgroup h = generate(g, reg);
  if (h.order() != reg.size() || !is_abelian(g, h)) return SubgroupKind::Other;
  return SubgroupKind::ModularNonabelian;
}

/// Every subgroup of g, by the cyclic-extension method, sorted by (order, elements).
inline std::vector<Subgroup> all_subgroups(const MatrixGroup& g, std::size_t max_order = kDefaultMaxGroupOrder) {
  if (g.order() > max_order)
    throw Error(ErrorCode::TooLarge, "subgroup enumeration limited to order " + std::to_string(max_order) +
                                         ", group has order " + std::to_string(g.order()));
  // One generator per cyclic subgroup.
  std::vector<ElementId> cyclic_gens;
  {
    std::set<std::vector<ElementId>> seen;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (x == g.identity()) continue;
      if (seen.insert(generate(g, {x}).elements).second) cyclic_gens.push_back(x);
    }
  }
  std::map<std::vector<ElementId>, Subgroup> found;
  Subgroup trivial{{g.identity()}, {}};
  found.emplace(trivial.elements, trivial);
  std::vector<Subgroup> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& s : frontier) {
      for (ElementId x : cyclic_gens) {
        if (s.contains(x)) continue;
        auto gens = s.generators;
        gens.push_back(x);
        Subgroup t = generate(g, std::move(gens));
        if (found.count(t.elements)) continue;
        found.emplace(t.elements, t);
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [elems, s] : found) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
  });
  return out;
}

inline Subgroup conjugate_subgroup(const MatrixGroup& g, ElementId c, const Subgroup& s) {
  Subgroup t;
  for (ElementId x : s.elements) t.elements.push_back(g.conjugate(c, x));
  for (ElementId x : s.generators) t.generators.push_back(g.conjugate(c, x));
  std::sort(t.elements.begin(), t.elements.end());
  return t;
}

inline std::size_t centralizer_order(const MatrixGroup& g, const Subgroup& s) {
  std::size_t count = 0;
  for (ElementId c = 0; c < g.order(); ++c)
    if (std::all_of(s.generators.begin(), s.generators.end(), [&](ElementId x) { return g.mul(c, x) == g.mul(x, c); }))
      ++count;
  return count;
}

/// Conjugacy classes of subgroups with normalizer/centralizer orders and kinds,
/// sorted by (order, canonical representative).
inline std::vector<SubgroupClass> subgroup_classes(const MatrixGroup& g, std::size_t max_order = kDefaultMaxGroupOrder) {
  const auto subs = all_subgroups(g, max_order);
  std::map<std::vector<ElementId>, std::size_t> position;
  for (std::size_t i = 0; i < subs.size(); ++i) position.emplace(subs[i].elements, i);
  std::vector<bool> done(subs.size(), false);
  std::vector<SubgroupClass> out;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (done[i]) continue;
    // subs is sorted, so the first unvisited member of an orbit is its canonical representative.
    std::vector<std::size_t> orbit{i};
    done[i] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (ElementId c : g.generators()) {
        const auto j = position.at(conjugate_subgroup(g, c, subs[orbit[k]]).elements);
        if (!done[j]) {
          done[j] = true;
          orbit.push_back(j);
        }
      }
    SubgroupClass cls;
    cls.representative = subs[i];
    cls.class_size = orbit.size();
    cls.normalizer_order = g.order() / orbit.size();
    cls.centralizer_order = centralizer_order(g, subs[i]);
    cls.kind = classify(g, subs[i]);
    out.push_back(std::move(cls));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy classes and representation counts

/// Orbits of `conjugators` acting by conjugation on `domain`.
inline std::vector<std::vector<ElementId>> conjugation_orbits(const MatrixGroup& g, const std::vector<ElementId>& domain,
                                                              const std::vector<ElementId>& conjugators) {
  std::unordered_map<ElementId, std::size_t> slot;
  for (std::size_t i = 0; i < domain.size(); ++i) slot.emplace(domain[i], i);
  std::vector<std::size_t> parent(domain.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (ElementId c : conjugators) {
      const std::size_t a = find(i), b = find(slot.at(g.conjugate(c, domain[i])));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::size_t, std::vector<ElementId>> groups;
  for (std::size_t i = 0; i < domain.size(); ++i) groups[find(i)].push_back(domain[i]);
  std::vector<std::vector<ElementId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

inline std::vector<std::vector<ElementId>> conjugacy_classes(const MatrixGroup& g) {
  std::vector<ElementId> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return conjugation_orbits(g, all, g.generators());
}

inline std::size_t conjugacy_class_count(const MatrixGroup& g) { return conjugacy_classes(g).size(); }

struct InfiniteRepresentationType {
  std::string reason;
  friend bool operator==(const InfiniteRepresentationType&, const InfiniteRepresentationType&) = default;
};

using IndecomposableCount = std::variant<std::size_t, InfiniteRepresentationType>;

/// l_k(G) + (p - 1) l_k(N_G(C_p)) for a Sylow subgroup of order p; #Conj(G) when tame.
inline IndecomposableCount indecomposable_count(const MatrixGroup& g) {
  const auto p = static_cast<std::uint64_t>(g.p());
  const std::uint64_t sylow = p_part(g.order(), p);
  if (sylow == 1) return conjugacy_class_count(g);
  std::vector<ElementId> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  if (sylow != p) {
    const bool cyclic = std::any_of(all.begin(), all.end(), [&](ElementId x) { return g.element_order(x) == sylow; });
    if (cyclic)
      throw Error(ErrorCode::Unsupported,
                  "cyclic Sylow subgroup of order " + std::to_string(sylow) + " (finite type, count not implemented)");
    return InfiniteRepresentationType{"Sylow " + std::to_string(p) + "-subgroup of order " + std::to_string(sylow) +
                                      " is not cyclic"};
  }
  auto regular_class_count = [&](const std::vector<ElementId>& members) {
    std::vector<ElementId> regular;
    for (ElementId x : members)
      if (g.element_order(x) % p != 0) regular.push_back(x);
    return conjugation_orbits(g, regular, members).size();
  };
  const ElementId x = *std::find_if(all.begin(), all.end(), [&](ElementId y) { return g.element_order(y) == p; });
  const Subgroup cp = generate(g, {x});
  std::vector<ElementId> normalizer;
  for (ElementId c : all)
    if (cp.contains(g.conjugate(c, x))) normalizer.push_back(c);
  // Conjugation by all of G reduces to its generators for the first count.
  std::vector<ElementId> regular;
  for (ElementId y : all)
    if (g.element_order(y) % p != 0) regular.push_back(y);
  const std::size_t lg = conjugation_orbits(g, regular, g.generators()).size();
  return lg + (p - 1) * regular_class_count(normalizer);
}

}  // namespace wildmck
