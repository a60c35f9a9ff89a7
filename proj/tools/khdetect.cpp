// Knot diagram invariant front end: single-diagram homology, table scans,
// and the dimension-5 classification verifier.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "khdetect/bracket.hpp"
#include "khdetect/hfk.hpp"
#include "khdetect/khovanov.hpp"
#include "khdetect/pd.hpp"

namespace {

constexpr const char* kEngineVersion = "khdetect-1";
constexpr int kCrossingGuard = 14;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct CacheConfig {
  bool enabled = true;
  bool verify = false;
  std::filesystem::path dir;
};

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("KHDETECT_CACHE_DIR")) return env;
  return std::filesystem::temp_directory_path() / "khdetect-cache";
}

std::filesystem::path cache_path(const CacheConfig& cfg,
                                 const std::string& key) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(key)));
  return cfg.dir / (std::string(buf) + ".json");
}

// Cached reduced/unreduced homology of a diagram.  The key mixes the
// canonical PD text, the variant, and the engine version so that caches
// never survive a convention change.  Returns (result, cache divergence).
std::pair<kh::BigradedDimensions, bool> homology_cached(
    const kh::PlanarDiagram& d, bool reduced, const CacheConfig& cfg) {
  std::string key = std::string(kEngineVersion) + "|" +
                    (reduced ? "reduced" : "unreduced") + "|bp" +
                    std::to_string(d.basepoint) + "|" + kh::print_pd(d);
  std::filesystem::path path;
  std::string cached;
  if (cfg.enabled) {
    path = cache_path(cfg, key);
    std::ifstream in(path);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      cached = buf.str();
      if (!cfg.verify && !cached.empty())
        return {kh::homology_from_json(cached), false};
    }
  }
  auto result = kh::homology(kh::build_complex(d, reduced));
  std::string text = kh::homology_to_json(result);
  bool diverged = false;
  if (!cached.empty() && cached != text) diverged = true;
  if (cfg.enabled && (cached.empty() || diverged)) {
    std::filesystem::create_directories(cfg.dir);
    std::ofstream out(path, std::ios::trunc);
    out << text;
  }
  return {result, diverged};
}

kh::PlanarDiagram parse_guarded(const std::string& text) {
  auto d = kh::parse_pd(text);
  if (d.n_crossings() > kCrossingGuard)
    throw kh::ValidationError("diagram has " + std::to_string(d.n_crossings()) +
                              " crossings; the cube guard allows at most " +
                              std::to_string(kCrossingGuard));
  return d;
}

std::string delta_support_str(const kh::BigradedDimensions& b) {
  auto support = kh::delta_support(b);
  std::string out;
  for (auto& q : support) {
    if (!out.empty()) out += ",";
    out += q.get_str();
  }
  return out.empty() ? "-" : out;
}

int cmd_compute(const std::string& pd_text, bool unreduced,
                const CacheConfig& cfg) {
  auto d = parse_guarded(pd_text);
  auto [hom, diverged] = homology_cached(d, !unreduced, cfg);
  for (auto& [qh, dim] : hom.dims)
    std::cout << "q=" << qh.first << " h=" << qh.second << " dim=" << dim
              << "\n";
  std::cout << "total: " << hom.total_dim() << "\n";
  std::cout << "delta-support: " << delta_support_str(hom) << "\n";
  std::cout << "thin: "
            << (kh::delta_support(hom).size() == 1 ? "yes" : "no") << "\n";
  std::cout << "euler: " << kh::graded_euler_char(hom).str() << "\n";
  if (diverged) {
    std::cerr << "cache divergence detected; entry rewritten\n";
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_mirror(const std::string& pd_text) {
  auto d = parse_guarded(pd_text);
  std::cout << kh::print_pd(kh::mirror(d)) << "\n";
  return kExitOk;
}

int cmd_scan(const std::string& table_path, int dim_filter, bool thin_only,
             const CacheConfig& cfg) {
  std::ifstream in(table_path);
  if (!in) {
    std::cerr << "cannot read table: " << table_path << "\n";
    return kExitInput;
  }
  nlohmann::json table;
  try {
    in >> table;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "table is not valid JSON: " << e.what() << "\n";
    return kExitInput;
  }
  if (!table.is_array()) {
    std::cerr << "table must be a JSON array of {name, pd, expected?}\n";
    return kExitInput;
  }

  bool divergence = false;
  std::vector<std::string> rows;
  for (auto& entry : table) {
    std::string name = entry.value("name", "?");
    std::string row = name;
    try {
      auto d = parse_guarded(entry.at("pd").get<std::string>());
      auto [hom, diverged] = homology_cached(d, true, cfg);
      divergence = divergence || diverged;
      bool thin = kh::delta_support(hom).size() == 1;
      if (thin_only && !thin) continue;
      bool match = hom.total_dim() == dim_filter && thin;
      std::string status = diverged ? "cache-divergence" : "ok";
      if (entry.contains("expected")) {
        auto expected = kh::homology_from_json(entry.at("expected").dump());
        if (!(expected == hom)) status = "expected-mismatch";
      }
      row += "\t" + std::to_string(hom.total_dim()) + "\t" +
             delta_support_str(hom) + "\t" + (match ? "match" : "-") + "\t" +
             status;
    } catch (const std::runtime_error& e) {
      row += "\t-\t-\t-\terror: " + std::string(e.what());
    }
    rows.push_back(row);
  }
  std::cout << "name\tdim\tdelta\thypothesis\tstatus\n";
  for (auto& r : rows) std::cout << r << "\n";
  if (divergence) {
    std::cerr << "cache divergence detected; entries rewritten\n";
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_classify(int dim, int genus_bound, const std::string& out_path) {
  auto report = kh::classify(dim, genus_bound);
  std::string text = report.to_json();
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitInput;
    }
    out << text << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology detector"};
  app.require_subcommand(1);

  CacheConfig cache;
  cache.dir = default_cache_dir();
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "disable the result cache");

  std::string pd_text;
  bool unreduced = false;
  auto* compute = app.add_subcommand("compute", "homology of one diagram");
  compute->add_option("--pd", pd_text, "PD text, e.g. X(1,4,2,5);...")
      ->required();
  compute->add_flag("--unreduced", unreduced, "unreduced variant");

  std::string table_path;
  int dim_filter = 5;
  bool thin_only = false;
  bool verify_cache = false;
  auto* scan = app.add_subcommand("scan", "scan a knot table (TSV output)");
  scan->add_option("table", table_path, "JSON table of {name, pd, expected?}")
      ->required();
  scan->add_option("--dim", dim_filter, "total dimension for the match flag");
  scan->add_flag("--thin", thin_only, "only rows with a single delta value");
  scan->add_flag("--verify-cache", verify_cache,
                 "recompute cached entries and report divergence");

  int classify_dim = 5;
  int genus_bound = 8;
  std::string out_path;
  auto* classify = app.add_subcommand("classify", "run the case analysis");
  classify->add_option("--dim", classify_dim, "reduced homology dimension");
  classify->add_option("--genus-bound", genus_bound,
                       "largest genus enumerated explicitly");
  classify->add_option("--out", out_path, "write the JSON report here");

  std::string mirror_pd;
  auto* mir = app.add_subcommand("mirror", "print the mirror PD");
  mir->add_option("--pd", mirror_pd, "PD text")->required();

  // Lets --no-cache appear after the subcommand name.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  cache.enabled = !no_cache;
  cache.verify = verify_cache;

  try {
    if (*compute) return cmd_compute(pd_text, unreduced, cache);
    if (*scan) return cmd_scan(table_path, dim_filter, thin_only, cache);
    if (*classify) return cmd_classify(classify_dim, genus_bound, out_path);
    if (*mir) return cmd_mirror(mirror_pd);
  } catch (const kh::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const kh::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
