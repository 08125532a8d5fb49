// Command-line front end for the dcskit shared library. Talks to the core
// exclusively through the C API in dcskit.h; JSON returned by the library is
// re-parsed here only to render tables.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dcskit.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;     // usage or input error
constexpr int kExitInvalid = 2;   // verification failed

struct SystemPtr {
  dcskit_system* p = nullptr;
  ~SystemPtr() { dcskit_system_free(p); }
};

struct StringPtr {
  char* p = nullptr;
  ~StringPtr() { dcskit_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

int fail_input(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return kExitUsage;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

int load_system(const std::string& path, SystemPtr& sys) {
  std::string text;
  if (!read_file(path, text)) return fail_input("cannot read " + path);
  if (dcskit_system_from_json(text.c_str(), &sys.p) != DCSKIT_OK)
    return fail_input(path + ": " + dcskit_last_error());
  return kExitOk;
}

std::string rational_text(const json& r) { return r.at("text").get<std::string>(); }

// ---------------------------------------------------------------- verify --

int run_verify(const std::string& file, long long m_override, bool require_min3, bool exhaustive,
               const std::string& format) {
  SystemPtr sys;
  if (int rc = load_system(file, sys); rc != kExitOk) return rc;

  StringPtr report;
  int valid = 0;
  if (dcskit_verify(sys.p, m_override, require_min3 ? 1 : 0, exhaustive ? 1 : 0, &report.p,
                    &valid) != DCSKIT_OK)
    return fail_input(dcskit_last_error());

  if (format == "json") {
    std::cout << report.str() << "\n";
    return valid ? kExitOk : kExitInvalid;
  }

  json j = json::parse(report.str());
  std::cout << "n        " << j["n"].get<long long>() << "\n"
            << "m        " << j["m"].get<long long>() << "\n"
            << "cover    " << j["cover"]["status"].get<std::string>() << "\n";
  for (const auto& v : j["cover"]["violations"]) {
    std::cout << "         " << v["kind"].get<std::string>() << " at residue "
              << v["residue"].get<long long>();
    if (v.contains("first"))
      std::cout << " (progressions " << v["first"].get<long long>() << " and "
                << v["second"].get<long long>() << ")";
    std::cout << "\n";
  }
  std::cout << "shape    " << j["shape"]["status"].get<std::string>() << "\n";
  if (j["shape"].contains("detail"))
    std::cout << "         " << j["shape"]["detail"].get<std::string>() << "\n";
  std::cout << (valid ? "VALID" : "INVALID") << "\n";
  return valid ? kExitOk : kExitInvalid;
}

// ------------------------------------------------------------- normalize --

int run_normalize(const std::string& file, const std::string& out_path,
                  const std::string& format) {
  SystemPtr sys;
  if (int rc = load_system(file, sys); rc != kExitOk) return rc;

  int valid = 0;
  StringPtr verify_report;
  if (dcskit_verify(sys.p, -1, 0, 0, &verify_report.p, &valid) != DCSKIT_OK)
    return fail_input(dcskit_last_error());
  json cover = json::parse(verify_report.str())["cover"];
  if (cover["status"] != "exact") {
    std::cerr << "error: input is not an exact cover (" << cover["status"].get<std::string>()
              << ")\n";
    return kExitInvalid;
  }

  SystemPtr normalized;
  long long drops = 0;
  if (dcskit_normalize_full(sys.p, &normalized.p, &drops) != DCSKIT_OK)
    return fail_input(dcskit_last_error());
  StringPtr out_json;
  if (dcskit_system_to_json(normalized.p, &out_json.p) != DCSKIT_OK)
    return fail_input(dcskit_last_error());

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail_input("cannot write " + out_path);
    out << out_json.str() << "\n";
  }
  if (format == "json") {
    std::cout << json{{"drops", drops}, {"system", json::parse(out_json.str())}}.dump() << "\n";
  } else {
    std::cout << "drops    " << drops << "\n" << out_json.str() << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------- enumerate --

int run_enumerate(long long m, long long n, long long n_max, const std::string& mode,
                  const std::string& engine, int jobs, unsigned long long node_limit,
                  const std::string& out_path, const std::string& format) {
  if ((n > 0) == (n_max > 0)) return fail_input("exactly one of --n and --n-max is required");
  dcskit_search_config cfg{};
  cfg.m = m;
  cfg.n = n > 0 ? n : 0;
  cfg.n_max = n > 0 ? 0 : n_max;
  cfg.translation = mode == "translation" ? 1 : 0;
  cfg.jobs = jobs;
  cfg.naive = engine == "naive" ? 1 : 0;
  cfg.node_limit = node_limit;

  StringPtr systems, summary;
  if (dcskit_enumerate(&cfg, &systems.p, &summary.p) != DCSKIT_OK)
    return fail_input(dcskit_last_error());

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail_input("cannot write " + out_path);
    out << systems.str();
  }

  json j = json::parse(summary.str());
  if (format == "json") {
    if (out_path.empty()) std::cout << systems.str();
    std::cout << summary.str() << "\n";
    return kExitOk;
  }
  if (format == "csv") {
    std::cout << "n,count,nodes,prune_subset_sum,prune_coprime,prune_overlap\n";
    for (const auto& row : j["per_n"]) {
      std::cout << row["n"].get<long long>() << "," << row["count"].get<long long>() << ","
                << row["nodes"].get<unsigned long long>() << ","
                << row["prune_subset_sum"].get<unsigned long long>() << ","
                << row["prune_coprime"].get<unsigned long long>() << ","
                << row["prune_overlap"].get<unsigned long long>() << "\n";
    }
    return kExitOk;
  }

  std::cout << "m        " << j["m"].get<long long>() << "\n";
  if (j.contains("n"))
    std::cout << "n        " << j["n"].get<long long>() << "\n";
  else
    std::cout << "n_max    " << j["n_max"].get<long long>() << "\n";
  std::cout << "mode     " << j["mode"].get<std::string>() << "\n"
            << "engine   " << j["engine"].get<std::string>() << "\n"
            << "count    " << j["count"].get<long long>() << "\n"
            << "nodes    " << j["nodes"].get<unsigned long long>() << "\n"
            << "prunes   subset_sum=" << j["prunes"]["subset_sum"].get<unsigned long long>()
            << " coprime=" << j["prunes"]["coprime"].get<unsigned long long>()
            << " overlap=" << j["prunes"]["overlap"].get<unsigned long long>() << "\n"
            << "seconds  " << j["seconds"].get<double>() << "\n"
            << "complete " << (j["complete"].get<bool>() ? "yes" : "no") << "\n";
  long long shown = 0;
  for (const auto& row : j["per_n"]) {
    if (row["count"].get<long long>() == 0) continue;
    if (shown == 0) std::cout << "hits per n:\n";
    std::cout << "  n=" << row["n"].get<long long>() << "  count=" << row["count"].get<long long>()
              << "\n";
    ++shown;
  }
  if (out_path.empty()) {
    std::istringstream lines(systems.str());
    std::string line;
    while (std::getline(lines, line)) std::cout << line << "\n";
  }
  return kExitOk;
}

// --------------------------------------------------------------- analyze --

void print_inequality(const json& r, const char* label) {
  std::cout << label << " lhs=" << r["lhs"].get<long long>()
            << " threshold=" << r["threshold"].get<long long>()
            << " target=" << r["target"].get<long long>()
            << (r["holds"].get<bool>() ? " holds" : " VIOLATED");
}

int run_analyze(const std::string& file, const std::string& report, const std::string& format) {
  SystemPtr sys;
  if (int rc = load_system(file, sys); rc != kExitOk) return rc;

  int valid = 0;
  StringPtr verify_report;
  if (dcskit_verify(sys.p, -1, 0, 0, &verify_report.p, &valid) != DCSKIT_OK)
    return fail_input(dcskit_last_error());
  json cover = json::parse(verify_report.str())["cover"];
  if (cover["status"] != "exact") {
    std::cerr << "error: input is not an exact cover (" << cover["status"].get<std::string>()
              << ")\n";
    return kExitInvalid;
  }

  StringPtr out;
  if (dcskit_analyze(sys.p, report.c_str(), &out.p) != DCSKIT_OK)
    return fail_input(dcskit_last_error());
  if (format == "json") {
    std::cout << out.str() << "\n";
    return kExitOk;
  }

  json j = json::parse(out.str());
  if (report == "inequalities") {
    std::cout << "n = " << j["n"].get<long long>() << ", " << j["t"].get<long long>()
              << " cosets\n";
    for (const auto& row : j["cosets"]) {
      std::cout << "coset residue=" << row["residue"].get<long long>()
                << " index=" << row["index"].get<long long>()
                << " size=" << row["size"].get<long long>() << "\n  ";
      print_inequality(row["base"], "base     ");
      std::cout << "\n  ";
      if (row["two_level"].is_null())
        std::cout << "two_level not applicable";
      else
        print_inequality(row["two_level"], "two_level");
      std::cout << "\n";
    }
  } else if (report == "classes") {
    std::cout << "n = " << j["n"].get<long long>() << "\n";
    for (const auto& level : j["levels"]) {
      std::cout << "h=" << level["h"].get<long long>() << " (p=" << level["p_h"].get<long long>()
                << ")\n";
      for (const auto& cls : level["classes"]) {
        std::cout << "  Q=" << cls["Q"].get<long long>() << " members=[";
        bool first = true;
        for (const auto& member : cls["members"]) {
          if (!first) std::cout << ",";
          std::cout << member.get<long long>();
          first = false;
        }
        std::cout << "] d_h=";
        if (cls["d_h"].is_null())
          std::cout << "-";
        else
          std::cout << cls["d_h"].get<long long>();
        std::cout << " size_sum=" << cls["size_sum"].get<long long>() << "\n";
      }
    }
  } else if (report == "density") {
    std::cout << "n            " << j["n"].get<long long>() << "\n"
              << "m            " << j["m"].get<long long>() << "\n"
              << "density_sum  " << rational_text(j["density_sum"]) << "\n"
              << "uncovered    " << rational_text(j["uncovered"]) << "\n"
              << "expected     " << rational_text(j["expected"]) << "\n"
              << "matches      " << (j["matches"].get<bool>() ? "yes" : "NO") << "\n";
  } else {  // gap
    std::cout << "n              " << j["n"].get<long long>() << "\n"
              << "largest_prime  " << j["largest_prime"].get<long long>() << "\n"
              << "sigma_argument " << j["sigma_argument"].get<long long>() << "\n"
              << "sigma_value    " << j["sigma_value"].get<long long>() << "\n"
              << "gap            " << j["gap"].get<long long>() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disjoint covering system toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dcskit_version()));

  std::string file, format = "table", out_path, mode = "translation", engine = "pruned";
  std::string report = "inequalities";
  long long m_override = -1, m = 2, n = 0, n_max = 0;
  unsigned long long node_limit = 0;
  int jobs = 0;
  bool require_min3 = false, exhaustive = false;

  auto* verify = app.add_subcommand("verify", "check exact cover and modulus shape");
  verify->add_option("file", file)->required();
  verify->add_option("--m", m_override, "override the multiplicity used for the shape check");
  verify->add_flag("--require-min3", require_min3, "require smallest modulus >= 3");
  verify->add_flag("--all", exhaustive, "report every cover violation");
  verify->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  auto* normalize =
      app.add_subcommand("normalize", "iterate 2-drop to the minimum-modulus-3 regime");
  normalize->add_option("file", file)->required();
  normalize->add_option("--out", out_path, "write the normalized system to this file");
  normalize->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  auto* enumerate = app.add_subcommand("enumerate", "exhaustively enumerate systems");
  enumerate->add_option("--m", m, "multiplicity of the largest modulus")->required();
  enumerate->add_option("--n", n, "single period to search");
  enumerate->add_option("--n-max", n_max, "sweep all periods up to this bound");
  enumerate->add_option("--mode", mode)->check(CLI::IsMember({"raw", "translation"}));
  enumerate->add_option("--jobs", jobs, "worker threads (0 = one per core)");
  enumerate->add_option("--engine", engine)->check(CLI::IsMember({"pruned", "naive"}));
  enumerate->add_option("--node-limit", node_limit, "abort after this many search nodes");
  enumerate->add_option("--out", out_path, "write JSON-lines systems to this file");
  enumerate->add_option("--format", format)->check(CLI::IsMember({"table", "json", "csv"}));

  auto* analyze = app.add_subcommand("analyze", "coset-level reports for one system");
  analyze->add_option("file", file)->required();
  analyze->add_option("--report", report)
      ->check(CLI::IsMember({"inequalities", "classes", "density", "gap"}))
      ->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(verify))
      return run_verify(file, m_override, require_min3, exhaustive, format);
    if (app.got_subcommand(normalize)) return run_normalize(file, out_path, format);
    if (app.got_subcommand(enumerate))
      return run_enumerate(m, n, n_max, mode, engine, jobs, node_limit, out_path, format);
    if (app.got_subcommand(analyze)) return run_analyze(file, report, format);
  } catch (const std::exception& e) {
    return fail_input(e.what());
  }
  return kExitUsage;
}
