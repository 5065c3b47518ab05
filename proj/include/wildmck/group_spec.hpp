#pragma once
// Group specifications: the input schema, its JSON reader/writer, and the
// compiled-in fixtures.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wildmck/errors.hpp"
#include "wildmck/galois_field.hpp"

namespace wildmck {

/// Generator diag(J_{d_1}(1), ..., J_{d_s}(1)).
struct JordanWild {
  std::vector<int> blocks;
  friend bool operator==(const JordanWild&, const JordanWild&) = default;
};

/// Generator e_i -> zeta_m^{diag_i} e_{perm_i} (perm is 1-based).
struct MonomialWild {
  std::vector<int> perm;
  std::vector<std::int64_t> diag;
  friend bool operator==(const MonomialWild&, const MonomialWild&) = default;
};

using WildGenerator = std::variant<std::monostate, JordanWild, MonomialWild>;

/// Built-in permutation actions of A_4 and its Sylow 2-subgroup on k^4.
enum class PermutationFixture { None, C2Squared, A4 };

struct GroupSpec {
  std::string label;
  std::int64_t p = 2;
  std::int64_t n = 1;
  std::int64_t m = 1;
  /// Diagonal generators diag(zeta_m^{a_1}, ..., zeta_m^{a_n}), exponents mod m.
  std::vector<std::vector<std::int64_t>> h_generators;
  WildGenerator wild;
  /// Jordan case: summand_characters[i][g] is the exponent by which h-generator g acts on block i.
  std::vector<std::vector<std::int64_t>> summand_characters;
  PermutationFixture permutation_fixture = PermutationFixture::None;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

inline int permutation_order(const std::vector<int>& perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  std::int64_t order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::int64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return static_cast<int>(order);
}

}  // namespace detail

/// Checks the schema invariants, normalizes exponents mod m, and derives
/// whichever of h_generators / summand_characters is missing in the Jordan case.
inline GroupSpec normalize_spec(GroupSpec s) {
  auto bad = [](const std::string& field, const std::string& why) {
    return Error(ErrorCode::MalformedSpec, "field '" + field + "': " + why);
  };
  if (!is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(s.p, 0)))) throw bad("p", "must be prime");
  if (s.n < 1 || s.n > 16) throw bad("n", "must be between 1 and 16");
  if (s.m < 1) throw bad("m", "must be positive");
  if (s.m % s.p == 0) throw bad("m", "tame modulus must be prime to p");

  if (s.permutation_fixture != PermutationFixture::None) {
    if (s.p != 2 || s.n != 4) throw bad("permutation_fixture", "defined for p = 2, n = 4 only");
    if (!s.h_generators.empty() || !std::holds_alternative<std::monostate>(s.wild))
      throw bad("permutation_fixture", "cannot be combined with generators");
    if (s.permutation_fixture == PermutationFixture::A4 && s.m % 3 != 0)
      throw bad("m", "the A_4 fixture needs cube roots of unity (m divisible by 3)");
    return s;
  }

  const auto n = static_cast<std::size_t>(s.n);
  if (auto* j = std::get_if<JordanWild>(&s.wild)) {
    if (j->blocks.empty()) throw bad("wild_generator.blocks", "must be nonempty");
    int total = 0;
    for (std::size_t i = 0; i < j->blocks.size(); ++i) {
      const int d = j->blocks[i];
      if (d < 1 || d > s.p)
        throw bad("wild_generator.blocks[" + std::to_string(i) + "]", "block size must lie in [1, p]");
      total += d;
    }
    if (total != s.n) throw bad("wild_generator.blocks", "block sizes must sum to n");
    if (std::all_of(j->blocks.begin(), j->blocks.end(), [](int d) { return d == 1; }))
      throw bad("wild_generator.blocks", "the generator must have order p (some block of size >= 2)");
    const std::size_t nblocks = j->blocks.size();
    if (!s.summand_characters.empty()) {
      if (s.summand_characters.size() != nblocks) throw bad("summand_characters", "need one row per block");
      const std::size_t ngens = s.summand_characters.front().size();
      for (std::size_t b = 0; b < nblocks; ++b) {
        if (s.summand_characters[b].size() != ngens)
          throw bad("summand_characters[" + std::to_string(b) + "]", "rows must have equal length");
        for (auto& x : s.summand_characters[b]) x = detail::mod(x, s.m);
      }
      if (s.h_generators.empty()) {
        s.h_generators.assign(ngens, std::vector<std::int64_t>(n, 0));
        std::size_t pos = 0;
        for (std::size_t b = 0; b < nblocks; ++b) {
          for (int k = 0; k < j->blocks[b]; ++k, ++pos)
            for (std::size_t g = 0; g < ngens; ++g) s.h_generators[g][pos] = s.summand_characters[b][g];
        }
      } else if (ngens != s.h_generators.size()) {
        throw bad("summand_characters", "need one column per h-generator");
      }
    }
  }
  for (std::size_t g = 0; g < s.h_generators.size(); ++g) {
    auto& row = s.h_generators[g];
    if (row.size() != n) throw bad("h_generators[" + std::to_string(g) + "]", "length must be n");
    for (auto& x : row) x = detail::mod(x, s.m);
  }
  if (auto* j = std::get_if<JordanWild>(&s.wild)) {
    // H must act on every block by a scalar.
    std::vector<std::vector<std::int64_t>> chars(j->blocks.size(), std::vector<std::int64_t>(s.h_generators.size()));
    for (std::size_t g = 0; g < s.h_generators.size(); ++g) {
      std::size_t pos = 0;
      for (std::size_t b = 0; b < j->blocks.size(); ++b) {
        const auto value = s.h_generators[g][pos];
        for (int k = 0; k < j->blocks[b]; ++k, ++pos)
          if (s.h_generators[g][pos] != value)
            throw bad("h_generators[" + std::to_string(g) + "]",
                      "must act by a scalar on Jordan block " + std::to_string(b));
        chars[b][g] = value;
      }
    }
    if (!s.summand_characters.empty() && s.summand_characters != chars)
      throw bad("summand_characters", "disagrees with h_generators");
    s.summand_characters = std::move(chars);
  } else if (auto* w = std::get_if<MonomialWild>(&s.wild)) {
    if (w->perm.size() != n) throw bad("wild_generator.perm", "length must be n");
    std::vector<int> sorted = w->perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      if (sorted[i] != static_cast<int>(i + 1)) throw bad("wild_generator.perm", "must be a permutation of 1..n");
    if (detail::permutation_order(w->perm) != s.p) throw bad("wild_generator.perm", "must have order p");
    if (w->diag.empty()) w->diag.assign(n, 0);
    if (w->diag.size() != n) throw bad("wild_generator.diag", "length must be n");
    for (auto& x : w->diag) x = detail::mod(x, s.m);
  } else if (!s.summand_characters.empty()) {
    throw bad("summand_characters", "only meaningful for a Jordan wild generator");
  }
  return s;
}

inline nlohmann::ordered_json spec_to_json(const GroupSpec& s) {
  nlohmann::ordered_json j;
  j["label"] = s.label;
  j["p"] = s.p;
  j["n"] = s.n;
  j["m"] = s.m;
  if (s.permutation_fixture != PermutationFixture::None) {
    j["permutation_fixture"] = s.permutation_fixture == PermutationFixture::A4 ? "a4" : "c2sq";
    return j;
  }
  j["h_generators"] = s.h_generators;
  if (auto* jw = std::get_if<JordanWild>(&s.wild)) {
    j["wild_generator"] = {{"type", "jordan"}, {"blocks", jw->blocks}};
    j["summand_characters"] = s.summand_characters;
  } else if (auto* mw = std::get_if<MonomialWild>(&s.wild)) {
    j["wild_generator"] = {{"type", "monomial"}, {"perm", mw->perm}, {"diag", mw->diag}};
  } else {
    j["wild_generator"] = nullptr;
  }
  return j;
}

namespace detail {

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <class T>
T get_field(const nlohmann::json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, "field '" + path + "': " + e.what());
  }
}

}  // namespace detail

/// Reads the JSON group-spec document. Syntax errors report line and column,
/// schema errors report the offending field path.
inline GroupSpec parse_group_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedSpec, "syntax error at " + detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0) +
                                              ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::MalformedSpec, "top level must be an object");
  static const std::vector<std::string> known = {"label", "p", "n", "m", "h_generators", "wild_generator",
                                                 "summand_characters", "permutation_fixture"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorCode::MalformedSpec, "field '" + key + "': unknown field");
  }
  for (const char* required : {"p", "n"}) {
    if (!j.contains(required)) throw Error(ErrorCode::MalformedSpec, std::string("field '") + required + "': missing");
  }
  GroupSpec s;
  s.label = j.contains("label") ? detail::get_field<std::string>(j["label"], "label") : "";
  s.p = detail::get_field<std::int64_t>(j["p"], "p");
  s.n = detail::get_field<std::int64_t>(j["n"], "n");
  s.m = j.contains("m") ? detail::get_field<std::int64_t>(j["m"], "m") : 1;
  if (j.contains("h_generators"))
    s.h_generators = detail::get_field<std::vector<std::vector<std::int64_t>>>(j["h_generators"], "h_generators");
  if (j.contains("summand_characters"))
    s.summand_characters =
        detail::get_field<std::vector<std::vector<std::int64_t>>>(j["summand_characters"], "summand_characters");
  if (j.contains("permutation_fixture")) {
    const auto kind = detail::get_field<std::string>(j["permutation_fixture"], "permutation_fixture");
    if (kind == "a4")
      s.permutation_fixture = PermutationFixture::A4;
    else if (kind == "c2sq")
      s.permutation_fixture = PermutationFixture::C2Squared;
    else
      throw Error(ErrorCode::MalformedSpec, "field 'permutation_fixture': expected \"a4\" or \"c2sq\"");
  }
  if (j.contains("wild_generator") && !j["wild_generator"].is_null()) {
    const auto& w = j["wild_generator"];
    if (!w.is_object() || !w.contains("type"))
      throw Error(ErrorCode::MalformedSpec, "field 'wild_generator': expected an object with a 'type'");
    const auto type = detail::get_field<std::string>(w["type"], "wild_generator.type");
    if (type == "jordan") {
      if (!w.contains("blocks")) throw Error(ErrorCode::MalformedSpec, "field 'wild_generator.blocks': missing");
      s.wild = JordanWild{detail::get_field<std::vector<int>>(w["blocks"], "wild_generator.blocks")};
    } else if (type == "monomial") {
      if (!w.contains("perm")) throw Error(ErrorCode::MalformedSpec, "field 'wild_generator.perm': missing");
      MonomialWild mw;
      mw.perm = detail::get_field<std::vector<int>>(w["perm"], "wild_generator.perm");
      if (w.contains("diag")) mw.diag = detail::get_field<std::vector<std::int64_t>>(w["diag"], "wild_generator.diag");
      s.wild = mw;
    } else {
      throw Error(ErrorCode::MalformedSpec, "field 'wild_generator.type': expected \"jordan\" or \"monomial\"");
    }
  }
  return normalize_spec(std::move(s));
}

// ---------------------------------------------------------------------------
// Fixtures

namespace detail {

inline std::optional<std::vector<std::int64_t>> parse_ints(std::string_view s, char sep) {
  std::vector<std::int64_t> out;
  while (true) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data()) return std::nullopt;
    out.push_back(v);
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    if (s.empty()) return out;
    if (s.front() != sep) return std::nullopt;
    s.remove_prefix(1);
  }
}

/// SL(3) torus of exponent l, normalized by the cyclic permutation (1 2 3), p = 3.
inline GroupSpec trihedral3(std::int64_t l) {
  GroupSpec s;
  s.label = "trihedral3-l" + std::to_string(l);
  s.p = 3;
  s.n = 3;
  s.m = l;
  s.h_generators = {{1, -1, 0}, {0, 1, -1}};
  s.wild = MonomialWild{{2, 3, 1}, {0, 0, 0}};
  return s;
}

/// Full SL(4) torus of exponent l with the involution (12)(34), p = 2.
inline GroupSpec diag4_full(std::int64_t l) {
  GroupSpec s;
  s.label = "diag4-full-l" + std::to_string(l);
  s.p = 2;
  s.n = 4;
  s.m = l;
  s.h_generators = {{1, -1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}};
  s.wild = MonomialWild{{2, 1, 4, 3}, {0, 0, 0, 0}};
  return s;
}

/// <1/l1 (1,-1,0,0), 1/l2 (0,0,1,-1)> with the involution (12)(34), p = 2.
inline GroupSpec diag4_pair(std::int64_t l1, std::int64_t l2) {
  GroupSpec s;
  s.label = "diag4-pair-l" + std::to_string(l1) + "-" + std::to_string(l2);
  s.p = 2;
  s.n = 4;
  s.m = std::lcm(l1, l2);
  const std::int64_t a = s.m / l1, b = s.m / l2;
  s.h_generators = {{a, -a, 0, 0}, {0, 0, b, -b}};
  s.wild = MonomialWild{{2, 1, 4, 3}, {0, 0, 0, 0}};
  return s;
}

/// J_3 + (p-3) copies of J_2: D_V = p.
inline GroupSpec jordan_j3j2(std::int64_t p) {
  GroupSpec s;
  s.label = "jordan-j3j2-p" + std::to_string(p);
  s.p = p;
  JordanWild w{{3}};
  for (std::int64_t i = 0; i < p - 3; ++i) w.blocks.push_back(2);
  s.n = std::accumulate(w.blocks.begin(), w.blocks.end(), 0);
  s.wild = w;
  return s;
}

}  // namespace detail

/// Names of the shipped fixtures (parameterized families are listed at the
/// parameters exercised by the test-suite).
inline std::vector<std::string> fixture_names() {
  return {"c2-j2j2",        "c2sq-perm",       "a4-perm",         "g18-trihedral4",  "c6-twisted",
          "c3-j3",          "jordan-j3j2-p5",  "jordan-j3j2-p7",  "trihedral3-l2",   "trihedral3-l4",
          "diag4-full-l3",  "diag4-full-l5",   "diag4-pair-l3-3", "diag4-pair-l5-5", "diag4-pair-l3-5",
          "tame-c3",        "tame-c3xc3",      "tame-c5",         "j2-1-1",          "transvection-j2"};
}

/// Looks up a compiled-in fixture. Families accept any parameter:
/// `trihedral3-l<l>`, `diag4-full-l<l>`, `diag4-pair-l<l1>-<l2>`, `jordan-j3j2-p<p>`.
inline std::optional<GroupSpec> fixture(std::string_view name) {
  GroupSpec s;
  s.label = std::string(name);
  if (name == "c2-j2j2") {
    s.p = 2, s.n = 4;
    s.wild = JordanWild{{2, 2}};
  } else if (name == "c2sq-perm") {
    s.p = 2, s.n = 4;
    s.permutation_fixture = PermutationFixture::C2Squared;
  } else if (name == "a4-perm") {
    s.p = 2, s.n = 4, s.m = 3;
    s.permutation_fixture = PermutationFixture::A4;
  } else if (name == "g18-trihedral4") {
    s = detail::diag4_pair(3, 3);
    s.label = std::string(name);
  } else if (name == "c6-twisted") {
    s.p = 2, s.n = 4, s.m = 3;
    s.wild = JordanWild{{2, 2}};
    s.summand_characters = {{1}, {2}};
  } else if (name == "c3-j3") {
    s.p = 3, s.n = 3;
    s.wild = JordanWild{{3}};
  } else if (name == "tame-c3") {
    s.p = 2, s.n = 2, s.m = 3;
    s.h_generators = {{1, 2}};
  } else if (name == "tame-c3xc3") {
    s.p = 2, s.n = 4, s.m = 3;
    s.h_generators = {{1, 2, 0, 0}, {0, 0, 1, 2}};
  } else if (name == "tame-c5") {
    s.p = 2, s.n = 2, s.m = 5;
    s.h_generators = {{1, 4}};
  } else if (name == "j2-1-1") {
    s.p = 2, s.n = 4;
    s.wild = JordanWild{{2, 1, 1}};
  } else if (name == "transvection-j2") {
    s.p = 2, s.n = 2;
    s.wild = JordanWild{{2}};
  } else if (name.starts_with("trihedral3-l")) {
    auto v = detail::parse_ints(name.substr(12), '-');
    if (!v || v->size() != 1 || (*v)[0] < 1 || (*v)[0] % 3 == 0) return std::nullopt;
    s = detail::trihedral3((*v)[0]);
  } else if (name.starts_with("diag4-full-l")) {
    auto v = detail::parse_ints(name.substr(12), '-');
    if (!v || v->size() != 1 || (*v)[0] < 1 || (*v)[0] % 2 == 0) return std::nullopt;
    s = detail::diag4_full((*v)[0]);
  } else if (name.starts_with("diag4-pair-l")) {
    auto v = detail::parse_ints(name.substr(12), '-');
    if (!v || v->size() != 2 || (*v)[0] < 1 || (*v)[1] < 1 || (*v)[0] % 2 == 0 || (*v)[1] % 2 == 0)
      return std::nullopt;
    s = detail::diag4_pair((*v)[0], (*v)[1]);
  } else if (name.starts_with("jordan-j3j2-p")) {
    auto v = detail::parse_ints(name.substr(13), '-');
    if (!v || v->size() != 1 || (*v)[0] < 3 || !is_prime(static_cast<std::uint64_t>((*v)[0]))) return std::nullopt;
    s = detail::jordan_j3j2((*v)[0]);
  } else {
    return std::nullopt;
  }
  return normalize_spec(std::move(s));
}

/// Smallest q = p^e with q = 1 (mod m) and q <= 2^20.
inline std::uint64_t default_field_order(const GroupSpec& s) {
  std::uint64_t q = static_cast<std::uint64_t>(s.p);
  while (q <= kMaxFieldOrder) {
    if ((q - 1) % static_cast<std::uint64_t>(s.m) == 0) return q;
    q *= static_cast<std::uint64_t>(s.p);
  }
  throw Error(ErrorCode::IncompatibleField, "no field of order <= 2^20 contains the m-th roots of unity");
}

}  // namespace wildmck
