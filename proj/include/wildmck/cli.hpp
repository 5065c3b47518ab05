#pragma once
// Command-line front end. run() is the whole program minus argv handling, so
// tests can drive it with string vectors and capture both streams.

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wildmck/census.hpp"
#include "wildmck/group_core.hpp"
#include "wildmck/group_spec.hpp"
#include "wildmck/mass.hpp"
#include "wildmck/oracle.hpp"
#include "wildmck/report.hpp"

namespace wildmck::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRejected = 2;

/// A fixture name, or a path to a JSON group-spec file.
inline GroupSpec load_spec(const std::string& source) {
  if (auto f = fixture(source)) return *f;
  std::ifstream in(source);
  if (!in) throw Error(ErrorCode::MalformedSpec, "'" + source + "' is neither a fixture name nor a readable file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_group_spec(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedSpec, source + ": " + e.message());
  }
}

struct Options {
  std::string target;
  std::uint64_t q = 0;
  bool force = false;
  std::string format = "text";
  std::int64_t jmax = 9;
  std::int64_t p = 2;
  std::size_t max_group_order = kDefaultMaxGroupOrder;
};

inline int analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const GroupSpec spec = load_spec(o.target);
  const MatrixGroup g = realize(spec, o.q ? o.q : default_field_order(spec));
  const auto sm = validate_sl_and_small(g);
  if ((!sm.in_sl || !sm.small) && !o.force) {
    err << "rejected: " << sm.reason << " (element " << *sm.offending << "); use --force to compute anyway\n";
    return kExitRejected;
  }
  const MassReport r = big_f(g, o.max_group_order);
  out << (o.format == "machine" ? render_machine(r) : render_text(r));
  if (!r.big_f) {
    err << "rejected: " << r.failure << "\n";
    return kExitRejected;
  }
  return kExitOk;
}

inline std::vector<CensusTable> census_tables(const Options& o) {
  auto collect = [&](const std::string& title, const std::vector<StratumFamily>& fams) {
    CensusTable t{title, {}};
    for (const auto& fam : fams) {
      // Walk each family along its index layers until the level bound is passed.
      for (std::int64_t s = 0;; ++s) {
        bool any = false;
        for (const auto& idx : detail::simplex_layer(fam.rank, s)) {
          auto st = fam.at(idx);
          if (detail::stratum_level(st) > o.jmax) continue;
          any = true;
          t.strata.push_back(std::move(st));
        }
        if (fam.rank == 0 || !any) break;
      }
    }
    return t;
  };
  if (o.target == "c2sq") return {collect("C2^2 strata", c2sq_families())};
  if (o.target == "a4") return {collect("A4 strata", a4_families())};
  if (o.target == "as") {
    CensusTable t{"Artin-Schreier levels, p = " + std::to_string(o.p), {}};
    for (std::int64_t j = 0; j <= o.jmax; ++j)
      if (j == 0 || j % o.p != 0) t.strata.push_back({as_level_count(o.p, j), 0, "j=" + std::to_string(j), {j}});
    return {t};
  }
  const GroupSpec spec = load_spec(o.target);
  const MatrixGroup g = realize(spec, o.q ? o.q : default_field_order(spec));
  std::vector<CensusTable> tables;
  for (const auto& cls : subgroup_classes(g, o.max_group_order)) {
    if (cls.kind != SubgroupKind::ModularAbelian) continue;
    std::size_t k = 0;
    for (const auto& term : modular_terms(g, cls.representative))
      tables.push_back(collect("class of order " + std::to_string(cls.order()) + ", inertia value " +
                                   std::to_string(k++) + " (age " + to_string(term.age) + ", " +
                                   std::to_string(term.multiplicity) + " pairs)",
                               modular_families(term.summands, term.age, g.p(), spec.n, term.multiplicity)));
  }
  return tables;
}

inline int census(const Options& o, std::ostream& out) {
  const auto tables = census_tables(o);
  out << (o.format == "machine" ? census_to_json(tables).dump(2) + "\n" : render_census(tables));
  return kExitOk;
}

inline int verify(const Options& o, std::ostream& out) {
  const auto rows = run_oracle_battery();
  if (o.format == "machine") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out << j.dump(2) << "\n";
  } else {
    out << render_battery(rows);
  }
  return std::all_of(rows.begin(), rows.end(), [](const BatteryRow& r) { return r.pass; }) ? kExitOk : kExitError;
}

inline int list_fixtures(const Options& o, std::ostream& out) {
  if (o.format == "machine") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& name : fixture_names()) j.push_back(spec_to_json(*fixture(name)));
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& name : fixture_names()) {
    const auto s = *fixture(name);
    out << name << "  p=" << s.p << " n=" << s.n << " m=" << s.m << "  ";
    if (s.permutation_fixture == PermutationFixture::A4)
      out << "A4 permuting coordinates";
    else if (s.permutation_fixture == PermutationFixture::C2Squared)
      out << "C2^2 permuting coordinates";
    else if (auto* j = std::get_if<JordanWild>(&s.wild)) {
      out << "Jordan [";
      for (std::size_t i = 0; i < j->blocks.size(); ++i) out << (i ? "," : "") << j->blocks[i];
      out << "]";
    } else if (std::holds_alternative<MonomialWild>(s.wild)) {
      out << "monomial, " << s.h_generators.size() << " diagonal generators";
    } else {
      out << "tame, " << s.h_generators.size() << " diagonal generators";
    }
    out << "\n";
  }
  return kExitOk;
}

struct PaperRow {
  std::string claim;
  std::function<bool()> check;
};

inline std::vector<PaperRow> paper_rows() {
  auto report = [](const char* name) { return big_f(realize(*fixture(name))); };
  const QLaurent q = QLaurent::q();
  return {
      {"f(C2^2) = 10q^3 + 4q^2", [=] { return f_c2sq() == QLaurent::monomial(10, 3) + QLaurent::monomial(4, 2); }},
      {"f(A4) = 32q^3 + 32q^2", [=] { return f_a4() == QLaurent::monomial(32, 3) + QLaurent::monomial(32, 2); }},
      {"F(C2^2) = q^4 + 4q^3 + q^2, S = 6",
       [=] {
         const auto r = report("c2sq-perm");
         return r.big_f == QLaurent::q(4) + QLaurent::monomial(4, 3) + QLaurent::q(2) && r.s_of_f == Rational(6);
       }},
      {"F(A4) = q^4 + 6q^3 + 3q^2, S = 10",
       [=] {
         const auto r = report("a4-perm");
         return r.big_f == QLaurent::q(4) + QLaurent::monomial(6, 3) + QLaurent::monomial(3, 2) && r.s_of_f == Rational(10);
       }},
      {"F(A4)(T^2) = T^8 + 6T^6 + 3T^4",
       [=] {
         const auto r = report("a4-perm");
         return r.betti && *r.betti == BettiVerdict(std::vector<Integer>{0, 0, 0, 0, 3, 0, 6, 0, 1});
       }},
      {"#A(C_3) = 3^2 - 1",
       [=] {
         const auto g = realize(*fixture("tame-c3"));
         std::vector<ElementId> all(g.order());
         std::iota(all.begin(), all.end(), 0);
         return tame_pairs(g, generate(g, all)).size() == 8;
       }},
      {"p - 1 unramified C_p classes", [=] { return as_level_count(2, 0) == QLaurent(1) && as_level_count(3, 0) == QLaurent(2); }},
      {"C_p with D_V = p: S(f) = p^2 - 1, S(F) = p",
       [=] {
         for (const char* name : {"c2-j2j2", "c3-j3", "jordan-j3j2-p5"}) {
           const auto r = report(name);
           const auto p = r.group_order;
           const auto& top = r.classes.back();
           if (s_of(top.f) != Rational(static_cast<std::int64_t>(p * p - 1)) || r.s_of_f != Rational(static_cast<std::int64_t>(p)))
             return false;
         }
         return true;
       }},
      {"non-abelian H x| C_p has f = 0",
       [=] {
         const auto r = report("g18-trihedral4");
         return std::all_of(r.classes.begin(), r.classes.end(), [](const ClassMass& c) {
           return c.cls.kind != SubgroupKind::ModularNonabelian || std::get<QLaurent>(c.f).is_zero();
         });
       }},
      {"abelian H x C_p: #Conj = #Ind = #G",
       [=] {
         for (const char* name : {"c2-j2j2", "c6-twisted"}) {
           const auto r = report(name);
           if (r.conj_count != r.group_order || r.ind_count != IndecomposableCount(r.group_order)) return false;
         }
         return true;
       }},
      {"the A4 fixture has infinite representation type",
       [=] { return std::holds_alternative<InfiniteRepresentationType>(report("a4-perm").ind_count); }},
  };
}

inline int reproduce_paper(std::ostream& out) {
  bool all = true;
  for (const auto& row : paper_rows()) {
    bool ok = false;
    try {
      ok = row.check();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    out << (ok ? "✓ " : "✗ ") << row.claim << "\n";
  }
  return all ? kExitOk : kExitError;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mass formulas and Euler numbers of wild quotient singularities", "wildmck"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "mass report of a fixture or spec file");
  analyze_cmd->add_option("spec", o.target, "fixture name or JSON spec path")->required();
  analyze_cmd->add_option("--q", o.q, "field order");
  analyze_cmd->add_flag("--force", o.force, "compute for non-small or non-SL groups");
  analyze_cmd->add_option("--max-group-order", o.max_group_order, "subgroup enumeration limit");
  add_common(analyze_cmd);

  auto* census_cmd = app.add_subcommand("census", "stratum tables: c2sq, a4, as, or a fixture/spec");
  census_cmd->add_option("target", o.target, "c2sq | a4 | as | fixture | spec path")->required();
  census_cmd->add_option("--jmax", o.jmax, "largest Artin-Schreier level listed")->check(CLI::Range(0, 200));
  census_cmd->add_option("--p", o.p, "characteristic for the 'as' table")->check(CLI::Range(2, 1000));
  census_cmd->add_option("--q", o.q, "field order used to realize a spec");
  census_cmd->add_option("--max-group-order", o.max_group_order, "subgroup enumeration limit");
  add_common(census_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "run the brute-force oracle battery");
  add_common(verify_cmd);
  auto* fixtures_cmd = app.add_subcommand("fixtures", "list compiled-in fixtures");
  add_common(fixtures_cmd);
  app.add_subcommand("reproduce-paper", "check the published values");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }
  try {
    if (*analyze_cmd) return analyze(o, out, err);
    if (*census_cmd) return census(o, out);
    if (*verify_cmd) return verify(o, out);
    if (*fixtures_cmd) return list_fixtures(o, out);
    return reproduce_paper(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace wildmck::cli
