#include "dcskit.h"

#include <cstring>
#include <new>
#include <string>

#include "dcskit/json_io.hpp"
#include "dcskit/normalize.hpp"
#include "dcskit/search.hpp"
#include "dcskit/system.hpp"

struct dcskit_system {
  dcs::DcsSystem value;
};

namespace {

thread_local std::string g_last_error;

dcskit_status status_of(dcs::Errc code) {
  switch (code) {
    case dcs::Errc::invalid_argument: return DCSKIT_ERR_INVALID;
    case dcs::Errc::parse: return DCSKIT_ERR_PARSE;
    case dcs::Errc::overflow: return DCSKIT_ERR_OVERFLOW;
    case dcs::Errc::internal: return DCSKIT_ERR_INTERNAL;
  }
  return DCSKIT_ERR_INTERNAL;
}

template <class Fn>
dcskit_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DCSKIT_OK;
  } catch (const dcs::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DCSKIT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool condition, const char* what) {
  if (!condition) dcs::fail(dcs::Errc::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* dcskit_version(void) { return "0.1.0"; }

const char* dcskit_last_error(void) { return g_last_error.c_str(); }

void dcskit_string_free(char* s) { delete[] s; }

void dcskit_system_free(dcskit_system* sys) { delete sys; }

dcskit_status dcskit_system_from_json(const char* json, dcskit_system** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new dcskit_system{dcs::system_from_json_text(json)};
  });
}

dcskit_status dcskit_system_to_json(const dcskit_system* sys, char** out_json) {
  return guarded([&] {
    require(sys && out_json, "null argument");
    *out_json = dup_string(dcs::system_to_json_line(sys->value));
  });
}

dcskit_status dcskit_verify(const dcskit_system* sys, long long m_override, int require_min3,
                            int exhaustive, char** report_json, int* valid) {
  return guarded([&] {
    require(sys, "null system");
    const dcs::DcsSystem* checked = &sys->value;
    dcs::DcsSystem overridden = sys->value;
    if (m_override >= 0) {
      overridden = dcs::DcsSystem(sys->value.progressions(), m_override);
      checked = &overridden;
    }
    dcs::CoverReport cover = dcs::validate_exact_cover(*checked, exhaustive != 0);
    dcs::ShapeReport shape = dcs::check_shape(*checked, require_min3 != 0);
    if (valid) *valid = cover.exact() && shape.ok() ? 1 : 0;
    if (report_json)
      *report_json = dup_string(
          dcs::verify_report_json(*checked, cover, shape, checked->m(), require_min3 != 0)
              .dump());
  });
}

dcskit_status dcskit_two_add(const dcskit_system* sys, dcskit_system** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    *out = new dcskit_system{dcs::two_add(sys->value)};
  });
}

dcskit_status dcskit_two_drop(const dcskit_system* sys, dcskit_system** out) {
  return guarded([&] {
    require(sys && out, "null argument");
    *out = new dcskit_system{dcs::two_drop(sys->value)};
  });
}

dcskit_status dcskit_normalize_full(const dcskit_system* sys, dcskit_system** out,
                                    long long* drops) {
  return guarded([&] {
    require(sys && out, "null argument");
    dcs::NormalizeResult result = dcs::normalize_full(sys->value);
    *out = new dcskit_system{std::move(result.system)};
    if (drops) *drops = result.drops;
  });
}

dcskit_status dcskit_enumerate(const dcskit_search_config* config, char** systems_jsonl,
                               char** summary_json) {
  return guarded([&] {
    require(config, "null config");
    dcs::SearchConfig cfg;
    cfg.m = config->m;
    cfg.n = config->n;
    cfg.n_max = config->n_max;
    cfg.mode = config->translation ? dcs::EquivalenceMode::translation : dcs::EquivalenceMode::raw;
    cfg.jobs = config->jobs;
    cfg.node_limit = config->node_limit;

    dcs::SearchResult result;
    const char* engine = "pruned";
    if (config->naive) {
      require(cfg.n > 0, "naive engine needs a single n");
      engine = "naive";
      result = dcs::naive_enumerate(cfg.n, cfg.m, cfg.mode);
    } else if (cfg.n > 0) {
      result = dcs::enumerate_for_n(cfg);
    } else {
      result = dcs::enumerate_range(cfg);
    }
    if (systems_jsonl) *systems_jsonl = dup_string(dcs::systems_jsonl(result.systems));
    if (summary_json)
      *summary_json = dup_string(dcs::search_summary_json(cfg, result, engine).dump());
  });
}

dcskit_status dcskit_analyze(const dcskit_system* sys, const char* report, char** report_json) {
  return guarded([&] {
    require(sys && report && report_json, "null argument");
    const std::string kind = report;
    if (!dcs::validate_exact_cover(sys->value).exact())
      dcs::fail(dcs::Errc::invalid_argument, "analyze requires an exact cover");
    dcs::Json j;
    if (kind == "inequalities") {
      j = dcs::analyze_inequalities_json(dcs::to_coset_partition(sys->value));
    } else if (kind == "classes") {
      j = dcs::analyze_classes_json(dcs::to_coset_partition(sys->value));
    } else if (kind == "density") {
      j = dcs::analyze_density_json(sys->value);
    } else if (kind == "gap") {
      j = dcs::analyze_gap_json(sys->value);
    } else {
      dcs::fail(dcs::Errc::invalid_argument, "unknown report \"" + kind + "\"");
    }
    *report_json = dup_string(j.dump());
  });
}

}  // extern "C"
