#ifndef DCSKIT_JSON_IO_HPP
#define DCSKIT_JSON_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "dcskit/analytics.hpp"
#include "dcskit/search.hpp"
#include "dcskit/system.hpp"

namespace dcs {

using Json = nlohmann::ordered_json;

// {"n": .., "m": .., "progressions": [{"residue": .., "modulus": ..}, ..]}
// Progressions are emitted in canonical order; unknown fields are rejected
// on input.
Json system_to_json(const DcsSystem& sys);
std::string system_to_json_line(const DcsSystem& sys);
DcsSystem system_from_json(const Json& j);
DcsSystem system_from_json_text(const std::string& text);

Json cover_report_json(const CoverReport& report);
Json shape_report_json(const ShapeReport& report);
Json verify_report_json(const DcsSystem& sys, const CoverReport& cover, const ShapeReport& shape,
                        Int effective_m, bool require_min3);

Json inequality_report_json(const InequalityReport& report);

// one canonical system per line, newline-terminated
std::string systems_jsonl(const std::vector<DcsSystem>& systems);
Json search_summary_json(const SearchConfig& config, const SearchResult& result,
                         const std::string& engine);

Json analyze_inequalities_json(const CosetPartition& partition);
Json analyze_classes_json(const CosetPartition& partition);
Json analyze_density_json(const DcsSystem& sys);
Json analyze_gap_json(const DcsSystem& sys);

}  // namespace dcs

#endif
