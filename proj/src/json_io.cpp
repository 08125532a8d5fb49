#include "dcskit/json_io.hpp"

#include <algorithm>

namespace dcs {

namespace {

Int require_int(const Json& j, const std::string& field) {
  if (!j.contains(field)) fail(Errc::parse, "missing field \"" + field + "\"");
  const Json& v = j.at(field);
  if (!v.is_number_integer()) fail(Errc::parse, "field \"" + field + "\" must be an integer");
  return v.get<Int>();
}

void reject_unknown_fields(const Json& j, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (item.key() == name) known = true;
    if (!known) fail(Errc::parse, "unknown field \"" + item.key() + "\" in " + where);
  }
}

Json rational_json(const Rational& r) {
  return Json{{"num", r.num()}, {"den", r.den()}, {"text", r.str()}};
}

}  // namespace

Json system_to_json(const DcsSystem& sys) {
  Json progs = Json::array();
  for (const auto& p : sys.progressions())
    progs.push_back(Json{{"residue", p.residue}, {"modulus", p.modulus}});
  return Json{{"n", sys.n()}, {"m", sys.m()}, {"progressions", std::move(progs)}};
}

std::string system_to_json_line(const DcsSystem& sys) { return system_to_json(sys).dump(); }

DcsSystem system_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::parse, "system must be a JSON object");
  reject_unknown_fields(j, {"n", "m", "progressions"}, "system");
  const Int n = require_int(j, "n");
  const Int m = require_int(j, "m");
  if (!j.contains("progressions") || !j.at("progressions").is_array())
    fail(Errc::parse, "field \"progressions\" must be an array");

  std::vector<Progression> progs;
  int pos = 0;
  for (const Json& pj : j.at("progressions")) {
    const std::string where = "progressions[" + std::to_string(pos++) + "]";
    if (!pj.is_object()) fail(Errc::parse, where + " must be an object");
    reject_unknown_fields(pj, {"residue", "modulus"}, where);
    Progression p{require_int(pj, "residue"), require_int(pj, "modulus")};
    if (p.modulus < 1) fail(Errc::parse, where + ": modulus must be positive");
    if (p.residue < 0 || p.residue >= p.modulus)
      fail(Errc::parse, where + ": residue must lie in [0, modulus)");
    progs.push_back(p);
  }
  if (progs.size() < 2) fail(Errc::parse, "a system needs at least two progressions");
  if (m < 2 || m > static_cast<Int>(progs.size()))
    fail(Errc::parse, "field \"m\" must lie in [2, number of progressions]");

  DcsSystem sys(std::move(progs), m);
  if (sys.n() != n)
    fail(Errc::parse, "field \"n\" is " + std::to_string(n) + " but the moduli have lcm " +
                          std::to_string(sys.n()));
  return sys;
}

DcsSystem system_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse, e.what());
  }
  return system_from_json(j);
}

Json cover_report_json(const CoverReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    Json item{{"kind", v.kind == CoverKind::under_covered ? "under_covered" : "over_covered"},
              {"residue", v.residue}};
    if (v.kind == CoverKind::over_covered) {
      item["first"] = v.first;
      item["second"] = v.second;
    }
    violations.push_back(std::move(item));
  }
  return Json{{"status", report.exact() ? "exact"
                         : report.violations.front().kind == CoverKind::under_covered
                             ? "under_covered"
                             : "over_covered"},
              {"period", report.period},
              {"violations", std::move(violations)}};
}

Json shape_report_json(const ShapeReport& report) {
  Json j{{"status", shape_clause_name(report.failed)}};
  if (!report.ok()) j["detail"] = report.detail;
  return j;
}

Json verify_report_json(const DcsSystem& sys, const CoverReport& cover, const ShapeReport& shape,
                        Int effective_m, bool require_min3) {
  return Json{{"n", sys.n()},
              {"m", effective_m},
              {"require_min3", require_min3},
              {"cover", cover_report_json(cover)},
              {"shape", shape_report_json(shape)},
              {"valid", cover.exact() && shape.ok()}};
}

Json inequality_report_json(const InequalityReport& report) {
  return Json{{"lhs", report.lhs},
              {"threshold", report.threshold},
              {"target", report.target},
              {"holds", report.holds}};
}

std::string systems_jsonl(const std::vector<DcsSystem>& systems) {
  std::string out;
  for (const auto& sys : systems) {
    out += system_to_json_line(sys);
    out += '\n';
  }
  return out;
}

Json search_summary_json(const SearchConfig& config, const SearchResult& result,
                         const std::string& engine) {
  Json per_n = Json::array();
  for (const auto& row : result.per_n) {
    per_n.push_back(Json{{"n", row.n},
                         {"count", row.count},
                         {"nodes", row.stats.nodes},
                         {"prune_subset_sum", row.stats.prune_subset_sum},
                         {"prune_coprime", row.stats.prune_coprime},
                         {"prune_overlap", row.stats.prune_overlap}});
  }
  Json j{{"m", config.m}};
  if (config.n > 0)
    j["n"] = config.n;
  else
    j["n_max"] = config.n_max;
  j["mode"] = config.mode == EquivalenceMode::translation ? "translation" : "raw";
  j["engine"] = engine;
  j["count"] = result.systems.size();
  j["nodes"] = result.stats.nodes;
  j["prunes"] = Json{{"subset_sum", result.stats.prune_subset_sum},
                     {"coprime", result.stats.prune_coprime},
                     {"overlap", result.stats.prune_overlap}};
  j["seconds"] = result.seconds;
  j["complete"] = result.complete;
  j["per_n"] = std::move(per_n);
  return j;
}

Json analyze_inequalities_json(const CosetPartition& partition) {
  Json cosets = Json::array();
  for (int i = 0; i < partition.t(); ++i) {
    const Coset& k = partition.cosets()[static_cast<std::size_t>(i)];
    Json row{{"residue", k.residue}, {"index", k.index}, {"size", k.size()}};
    row["base"] = inequality_report_json(coset_base_inequality(partition, i));
    auto two_level = coset_two_level_inequality(partition, i);
    row["two_level"] = two_level ? inequality_report_json(*two_level) : Json(nullptr);
    cosets.push_back(std::move(row));
  }
  return Json{{"n", partition.n()}, {"t", partition.t()}, {"cosets", std::move(cosets)}};
}

Json analyze_classes_json(const CosetPartition& partition) {
  const Factorization primes = factorize(partition.n());
  Json levels = Json::array();
  for (int h = 1; h <= static_cast<int>(primes.size()); ++h) {
    Json classes = Json::array();
    for (Int q : realized_level_values(partition, h)) {
      ClassReport report = level_class(partition, h, q);
      classes.push_back(Json{{"Q", report.q},
                             {"members", report.members},
                             {"d_h", report.d_h ? Json(*report.d_h) : Json(nullptr)},
                             {"size_sum", report.size_sum}});
    }
    levels.push_back(Json{{"h", h},
                          {"p_h", primes[static_cast<std::size_t>(h - 1)].prime},
                          {"classes", std::move(classes)}});
  }
  return Json{{"n", partition.n()}, {"levels", std::move(levels)}};
}

Json analyze_density_json(const DcsSystem& sys) {
  // strip the m progressions with the largest modulus (the last m in
  // canonical order) and measure what the rest misses
  const auto& progs = sys.progressions();
  const std::size_t keep = progs.size() - static_cast<std::size_t>(sys.m());
  std::vector<Progression> remaining(progs.begin(), progs.begin() + static_cast<std::ptrdiff_t>(keep));
  const Rational uncovered = uncovered_density(remaining);
  const Rational expected(sys.m(), sys.n());
  return Json{{"n", sys.n()},
              {"m", sys.m()},
              {"density_sum", rational_json(density_sum(sys))},
              {"uncovered", rational_json(uncovered)},
              {"expected", rational_json(expected)},
              {"matches", uncovered == expected}};
}

Json analyze_gap_json(const DcsSystem& sys) {
  const Int n = sys.n();
  const Factorization f = factorize(n);
  const Int p = f.back().prime;
  return Json{{"n", n},
              {"largest_prime", p},
              {"sigma_argument", n / p},
              {"sigma_value", sigma(n / p)},
              {"gap", divisor_sum_gap(n)}};
}

}  // namespace dcs
