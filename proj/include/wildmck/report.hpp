#pragma once
// Text and machine (JSON) renderings of mass reports, census tables and the
// oracle battery. The machine form parses back into a MassReport.

#include <cstdint>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wildmck/census.hpp"
#include "wildmck/errors.hpp"
#include "wildmck/mass.hpp"
#include "wildmck/oracle.hpp"
#include "wildmck/qseries.hpp"

namespace wildmck {

inline constexpr const char* kReportFormat = "wildmck-mass-report/1";
inline constexpr const char* kConditionalNote = "equals e(Y) only if a crepant resolution of k^n/G exists";

namespace detail {

inline nlohmann::json integer_json(const Integer& x) {
  if (x > Integer(INT64_MAX) || x < Integer(INT64_MIN)) return x.str();
  return x.convert_to<std::int64_t>();
}

inline Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

inline nlohmann::json f_json(const FValue& f) {
  if (auto* poly = std::get_if<QLaurent>(&f)) return {{"status", "polynomial"}, {"value", poly->to_string()}};
  if (auto* np = std::get_if<NotPolynomial>(&f))
    return {{"status", "not_polynomial"},
            {"numerator", np->reduced.numerator().to_string()},
            {"denominator", np->reduced.denominator().to_string()}};
  const auto& d = std::get<Divergent>(f);
  return {{"status", "divergent"}, {"d_v", to_string(d.d_v)}, {"p", d.p}};
}

inline FValue f_from_json(const nlohmann::json& j) {
  const auto status = j.at("status").get<std::string>();
  if (status == "polynomial") return QLaurent::parse(j.at("value").get<std::string>());
  if (status == "not_polynomial")
    return NotPolynomial{QRatFun(QLaurent::parse(j.at("numerator").get<std::string>()),
                                 QLaurent::parse(j.at("denominator").get<std::string>()))};
  if (status == "divergent") return Divergent{parse_rational(j.at("d_v").get<std::string>()), j.at("p").get<std::int64_t>()};
  throw Error(ErrorCode::ParseError, "unknown f status '" + status + "'");
}

inline SubgroupKind kind_from_name(const std::string& s) {
  for (auto k : {SubgroupKind::Trivial, SubgroupKind::TameAbelian, SubgroupKind::ModularAbelian,
                 SubgroupKind::ModularNonabelian, SubgroupKind::PermC2Squared, SubgroupKind::PermA4, SubgroupKind::Other})
    if (kind_name(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown subgroup kind '" + s + "'");
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& x) {
  if (!x) return nullptr;
  return *x;
}

inline std::string ind_text(const IndecomposableCount& ind) {
  if (auto* n = std::get_if<std::size_t>(&ind)) return std::to_string(*n);
  return "infinite representation type (" + std::get<InfiniteRepresentationType>(ind).reason + ")";
}

}  // namespace detail

inline nlohmann::json report_to_json(const MassReport& r) {
  nlohmann::json j;
  j["format"] = kReportFormat;
  j["label"] = r.label;
  j["q"] = r.q;
  j["group_order"] = r.group_order;
  j["in_sl"] = r.in_sl;
  j["small"] = r.small;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : r.classes) {
    nlohmann::json cj;
    cj["order"] = c.cls.order();
    cj["class_size"] = c.cls.class_size;
    cj["normalizer_order"] = c.cls.normalizer_order;
    cj["centralizer_order"] = c.cls.centralizer_order;
    cj["kind"] = std::string(kind_name(c.cls.kind));
    cj["elements"] = c.cls.representative.elements;
    cj["generators"] = c.cls.representative.generators;
    cj["f"] = detail::f_json(c.f);
    const auto s = s_of(c.f);
    cj["s"] = s ? nlohmann::json(to_string(*s)) : nlohmann::json(nullptr);
    cj["s_tame_part"] = c.s_tame_part ? nlohmann::json(to_string(*c.s_tame_part)) : nlohmann::json(nullptr);
    j["classes"].push_back(std::move(cj));
  }
  j["F"] = r.big_f ? nlohmann::json(r.big_f->to_string()) : nlohmann::json(nullptr);
  j["failure"] = r.failure;
  j["s_of_F"] = r.s_of_f ? nlohmann::json(to_string(*r.s_of_f)) : nlohmann::json(nullptr);
  if (!r.betti) {
    j["betti"] = nullptr;
  } else if (auto* b = std::get_if<std::vector<Integer>>(&*r.betti)) {
    j["betti"] = nlohmann::json::array();
    for (const auto& x : *b) j["betti"].push_back(detail::integer_json(x));
  } else {
    j["betti"] = {{"non_integral", std::get<NonIntegralBetti>(*r.betti).reason}};
  }
  j["conj_count"] = r.conj_count;
  if (auto* n = std::get_if<std::size_t>(&r.ind_count))
    j["ind_count"] = *n;
  else
    j["ind_count"] = {{"infinite_representation_type", std::get<InfiniteRepresentationType>(r.ind_count).reason}};
  j["theorem_consistent"] = r.theorem_consistent;
  if (r.crepant_conditional_euler)
    j["crepant_conditional_euler"] = {{"value", detail::integer_json(*r.crepant_conditional_euler)},
                                      {"conditional", kConditionalNote}};
  else
    j["crepant_conditional_euler"] = nullptr;
  return j;
}

inline MassReport report_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kReportFormat) throw Error(ErrorCode::ParseError, "unknown report format");
    MassReport r;
    r.label = j.at("label").get<std::string>();
    r.q = j.at("q").get<std::uint64_t>();
    r.group_order = j.at("group_order").get<std::size_t>();
    r.in_sl = j.at("in_sl").get<bool>();
    r.small = j.at("small").get<bool>();
    for (const auto& cj : j.at("classes")) {
      ClassMass c{{}, detail::f_from_json(cj.at("f")), std::nullopt};
      c.cls.representative.elements = cj.at("elements").get<std::vector<ElementId>>();
      c.cls.representative.generators = cj.at("generators").get<std::vector<ElementId>>();
      c.cls.class_size = cj.at("class_size").get<std::size_t>();
      c.cls.normalizer_order = cj.at("normalizer_order").get<std::size_t>();
      c.cls.centralizer_order = cj.at("centralizer_order").get<std::size_t>();
      c.cls.kind = detail::kind_from_name(cj.at("kind").get<std::string>());
      if (!cj.at("s_tame_part").is_null()) c.s_tame_part = parse_rational(cj.at("s_tame_part").get<std::string>());
      r.classes.push_back(std::move(c));
    }
    if (!j.at("F").is_null()) r.big_f = QLaurent::parse(j.at("F").get<std::string>());
    r.failure = j.at("failure").get<std::string>();
    if (!j.at("s_of_F").is_null()) r.s_of_f = parse_rational(j.at("s_of_F").get<std::string>());
    const auto& b = j.at("betti");
    if (b.is_array()) {
      std::vector<Integer> v;
      for (const auto& x : b) v.push_back(detail::integer_from_json(x));
      r.betti = v;
    } else if (b.is_object()) {
      r.betti = NonIntegralBetti{b.at("non_integral").get<std::string>()};
    }
    r.conj_count = j.at("conj_count").get<std::size_t>();
    const auto& ind = j.at("ind_count");
    if (ind.is_object())
      r.ind_count = InfiniteRepresentationType{ind.at("infinite_representation_type").get<std::string>()};
    else
      r.ind_count = ind.get<std::size_t>();
    r.theorem_consistent = j.at("theorem_consistent").get<bool>();
    if (!j.at("crepant_conditional_euler").is_null())
      r.crepant_conditional_euler = detail::integer_from_json(j.at("crepant_conditional_euler").at("value"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string render_machine(const MassReport& r) { return report_to_json(r).dump(2) + "\n"; }

inline MassReport parse_machine(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return report_from_json(j);
}

inline std::string render_text(const MassReport& r) {
  std::ostringstream os;
  os << "group " << (r.label.empty() ? "(unnamed)" : r.label) << ": order " << r.group_order << " over F_" << r.q
     << "\n";
  os << "  in SL: " << (r.in_sl ? "yes" : "no") << ", small: " << (r.small ? "yes" : "no") << "\n";
  os << "subgroup classes:\n";
  for (const auto& c : r.classes) {
    os << "  order " << c.cls.order() << "  x" << c.cls.class_size << "  |N|=" << c.cls.normalizer_order
       << "  |C|=" << c.cls.centralizer_order << "  " << kind_name(c.cls.kind) << "  f = ";
    if (auto* poly = std::get_if<QLaurent>(&c.f))
      os << poly->to_string();
    else if (auto* np = std::get_if<NotPolynomial>(&c.f))
      os << "not a polynomial: " << np->reduced.to_string();
    else
      os << "divergent (D_V = " << to_string(std::get<Divergent>(c.f).d_v) << " < p)";
    os << "\n";
  }
  if (r.big_f) {
    os << "F = " << r.big_f->to_string() << "\n";
    os << "S(F) = " << to_string(*r.s_of_f) << "\n";
    if (auto* b = std::get_if<std::vector<Integer>>(&*r.betti)) {
      os << "F(T^2) coefficients: [";
      for (std::size_t i = 0; i < b->size(); ++i) os << (i ? "," : "") << (*b)[i];
      os << "]\n";
    } else {
      os << "F(T^2): " << std::get<NonIntegralBetti>(*r.betti).reason << "\n";
    }
  } else {
    os << "F: undefined (" << r.failure << ")\n";
  }
  os << "#Conj = " << r.conj_count << "\n";
  os << "#Ind = " << detail::ind_text(r.ind_count) << "\n";
  os << "S(F) = #Conj = #Ind: " << (r.theorem_consistent ? "consistent" : "not consistent") << "\n";
  if (r.crepant_conditional_euler)
    os << "Euler number " << *r.crepant_conditional_euler << " (conditional: " << kConditionalNote << ")\n";
  return os.str();
}

// ---------------------------------------------------------------------------

struct CensusTable {
  std::string title;
  std::vector<CensusStratum> strata;
};

inline std::string render_census(const std::vector<CensusTable>& tables) {
  std::ostringstream os;
  for (const auto& t : tables) {
    os << t.title << "\n";
    for (const auto& s : t.strata) os << "  " << s.label << "  count = " << s.count.to_string() << "  v = " << to_string(s.v) << "\n";
  }
  return os.str();
}

inline nlohmann::json census_to_json(const std::vector<CensusTable>& tables) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json tj{{"title", t.title}, {"strata", nlohmann::json::array()}};
    for (const auto& s : t.strata)
      tj["strata"].push_back({{"label", s.label}, {"count", s.count.to_string()}, {"v", to_string(s.v)}});
    j.push_back(std::move(tj));
  }
  return j;
}

inline std::string render_battery(const std::vector<BatteryRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) os << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  [" << r.detail << "]\n";
  return os.str();
}

}  // namespace wildmck
