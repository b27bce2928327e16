#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cdim/constructions.hpp"
#include "cdim/errors.hpp"
#include "cdim/lattice.hpp"
#include "cdim/numtheory.hpp"
#include "cdim/structure.hpp"
#include "cdim/verify.hpp"

using nlohmann::json;
using namespace cdim;

namespace {

struct Options {
  uint32_t threads = 1;
  uint64_t node_budget = CentralizerLattice::kDefaultNodeBudget;
  uint64_t enum_cap = FiniteGroup::kDefaultEnumCap;
  std::string cache_dir;
  std::string emit;  // per-command default when empty
};

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string normalize(const std::string& s) {
  auto ts = split_ws(s);
  std::string out;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i) out += " ";
    out += ts[i];
  }
  return out;
}

uint64_t parse_num(const std::string& s) {
  require(!s.empty() && s.find_first_not_of("0123456789") == std::string::npos,
          ErrorCode::ParseError, "expected a number, got '" + s + "'");
  return std::stoull(s);
}

// key=value pairs after the kind token
std::map<std::string, uint64_t> parse_kv(const std::vector<std::string>& ts, size_t from) {
  std::map<std::string, uint64_t> kv;
  for (size_t i = from; i < ts.size(); ++i) {
    auto eq = ts[i].find('=');
    require(eq != std::string::npos, ErrorCode::ParseError,
            "expected key=value, got '" + ts[i] + "'");
    kv[ts[i].substr(0, eq)] = parse_num(ts[i].substr(eq + 1));
  }
  return kv;
}

uint64_t need(const std::map<std::string, uint64_t>& kv, const std::string& key) {
  auto it = kv.find(key);
  require(it != kv.end(), ErrorCode::ParseError, "missing parameter '" + key + "'");
  return it->second;
}

// compact group tokens used inside product and sharpness specs
GroupPtr token_group(const std::string& t) {
  if (t == "trivial") return trivial_group();
  if (t == "Q8") return quaternion_group();
  auto tail_pair = [&](size_t at) {
    auto us = t.find('_', at);
    require(us != std::string::npos, ErrorCode::ParseError, "bad group token '" + t + "'");
    return std::pair<uint64_t, uint64_t>{parse_num(t.substr(at, us - at)),
                                         parse_num(t.substr(us + 1))};
  };
  if (t.rfind("SL2_", 0) == 0) return special_linear_2(uint32_t(parse_num(t.substr(4))));
  if (t.size() > 1 && t[0] == 'R' && t.find('_') != std::string::npos) {
    auto [n, r] = tail_pair(1);
    return extraspecial_group(uint32_t(n), uint32_t(r));
  }
  if (t.size() > 1 && t[0] == 'X' && t.find('_') != std::string::npos) {
    auto [n, r] = tail_pair(1);
    return symplectic_on_extraspecial(uint32_t(n), uint32_t(r));
  }
  if (t.size() > 1 && t[0] == 'C') return cyclic_group(uint32_t(parse_num(t.substr(1))));
  if (t.size() > 1 && t[0] == 'S') return symmetric_group(uint32_t(parse_num(t.substr(1))));
  if (t.size() > 1 && t[0] == 'A') return alternating_group(uint32_t(parse_num(t.substr(1))));
  if (t.size() > 1 && t[0] == 'D') return dihedral_group(uint32_t(parse_num(t.substr(1))));
  fail(ErrorCode::ParseError, "unrecognized group token '" + t + "'");
}

GroupPtr build_from_spec(const std::string& spec, const Options& opt) {
  auto ts = split_ws(spec);
  require(!ts.empty(), ErrorCode::ParseError, "empty construction spec");
  const std::string& kind = ts[0];
  if (kind == "central_product" || kind == "direct_product") {
    require(ts.size() == 3, ErrorCode::ParseError, kind + " takes two group tokens");
    auto a = token_group(ts[1]);
    auto b = token_group(ts[2]);
    return kind == "central_product" ? central_product(a, b) : direct_product(a, b);
  }
  if (kind == "sharpness") {
    require(ts.size() == 3, ErrorCode::ParseError, "sharpness takes a group token and p=");
    auto kv = parse_kv(ts, 2);
    return sharpness_group(token_group(ts[1]), uint32_t(need(kv, "p"))).group;
  }
  auto kv = parse_kv(ts, 1);
  if (kind == "trivial") return trivial_group();
  if (kind == "cyclic") return cyclic_group(uint32_t(need(kv, "n")));
  if (kind == "symmetric") return symmetric_group(uint32_t(need(kv, "n")));
  if (kind == "alternating") return alternating_group(uint32_t(need(kv, "n")));
  if (kind == "dihedral") return dihedral_group(uint32_t(need(kv, "n")));
  if (kind == "quaternion") return quaternion_group();
  if (kind == "SL2") return special_linear_2(uint32_t(need(kv, "q")));
  if (kind == "elementary")
    return elementary_abelian_group(uint32_t(need(kv, "p")), uint32_t(need(kv, "k")));
  if (kind == "symplectic")
    return symplectic_group(uint32_t(need(kv, "n")), uint32_t(need(kv, "r")));
  if (kind == "extraspecial")
    return extraspecial_group(uint32_t(need(kv, "n")), uint32_t(need(kv, "r")));
  if (kind == "symplectic_extraspecial")
    return symplectic_on_extraspecial(uint32_t(need(kv, "n")), uint32_t(need(kv, "r")));
  if (kind == "weil")
    return weil_representation(uint32_t(need(kv, "n")), uint32_t(need(kv, "r")),
                               uint32_t(need(kv, "p")), opt.enum_cap)
        .image;
  if (kind == "counterexample")
    return counterexample_group(uint32_t(need(kv, "n")), uint32_t(need(kv, "r")),
                                uint32_t(need(kv, "p")), opt.enum_cap);
  fail(ErrorCode::ParseError, "unrecognized construction kind '" + kind + "'");
}

std::string slug_of(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      s += char(std::tolower(static_cast<unsigned char>(c)));
    else if (!s.empty() && s.back() != '-')
      s += '-';
  }
  while (!s.empty() && s.back() == '-') s.pop_back();
  return s;
}

// a group ref is either a construction spec or the slug of a cached one
std::pair<GroupPtr, std::string> resolve_group(const std::string& ref, const Options& opt) {
  std::string spec = normalize(ref);
  if (!opt.cache_dir.empty()) {
    auto path = std::filesystem::path(opt.cache_dir) / (slug_of(spec) + ".json");
    std::ifstream in(path);
    if (in) {
      json j = json::parse(in, nullptr, false);
      require(!j.is_discarded() && j.contains("spec"), ErrorCode::CacheError,
              "unreadable cache entry " + path.string());
      spec = j["spec"].get<std::string>();
    }
  }
  return {build_from_spec(spec, opt), spec};
}

json witness_json(const FiniteGroup& g, const CdimResult& cd) {
  json w;
  w["verified"] = verify_chain(g, cd.witness);
  w["ys_sizes"] = json::array();
  w["cs_orders"] = json::array();
  for (const auto& y : cd.witness.ys) w["ys_sizes"].push_back(y.count());
  for (const auto& c : cd.witness.cs) w["cs_orders"].push_back(c.count());
  return w;
}

std::string spaced_factors(const nt::Factorization& f) {
  std::string s;
  for (size_t i = 0; i < f.primes.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(f.primes[i].first);
    if (f.primes[i].second > 1) s += "^" + std::to_string(f.primes[i].second);
  }
  return s.empty() ? "1" : s;
}

int cmd_construct(const std::string& ref, const Options& opt) {
  std::string spec = normalize(ref);
  auto g = build_from_spec(spec, opt);
  json out;
  out["name"] = spec;
  out["order"] = g->order();
  out["backend"] = backend_name(g->backend());
  if (!opt.cache_dir.empty()) {
    std::filesystem::create_directories(opt.cache_dir);
    auto path = std::filesystem::path(opt.cache_dir) / (slug_of(spec) + ".json");
    json entry = out;
    entry["spec"] = spec;
    std::ofstream of(path);
    require(bool(of), ErrorCode::CacheError, "cannot write " + path.string());
    of << entry.dump(2) << "\n";
  }
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_cdim(const std::string& ref, const Options& opt) {
  auto [g, spec] = resolve_group(ref, opt);
  auto cd = c_dimension(*g, opt.node_budget);
  json out;
  out["group"] = spec;
  out["order"] = g->order();
  out["c_dimension"] = cd.value;
  out["witness"] = witness_json(*g, cd);
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_lattice(const std::string& ref, const Options& opt) {
  auto [g, spec] = resolve_group(ref, opt);
  auto lat = centralizer_lattice(*g, opt.node_budget);
  std::string emit = opt.emit.empty() ? "json" : opt.emit;
  if (emit == "dot") {
    printf("digraph centralizer_lattice {\n");
    for (size_t i = 0; i < lat.nodes().size(); ++i)
      printf("  n%zu [label=\"%u\"];\n", i, lat.nodes()[i].order);
    for (const auto& [sub, super] : lat.edges()) printf("  n%u -> n%u;\n", sub, super);
    printf("}\n");
    return 0;
  }
  require(emit == "json", ErrorCode::InvalidArgument, "lattice emits json or dot");
  auto cd = c_dimension(lat, *g);
  json out;
  out["group"] = spec;
  out["order"] = g->order();
  out["nodes"] = json::array();
  for (size_t i = 0; i < lat.nodes().size(); ++i)
    out["nodes"].push_back({{"id", i}, {"order", lat.nodes()[i].order}});
  out["edges"] = json::array();
  for (const auto& [sub, super] : lat.edges()) out["edges"].push_back({sub, super});
  out["c_dimension"] = cd.value;
  out["witness"] = witness_json(*g, cd);
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_analyze(const std::string& ref, const Options& opt) {
  auto [g, spec] = resolve_group(ref, opt);
  json out;
  out["group"] = spec;
  out["order"] = g->order();
  out["center"] = center_bits(*g).count();
  out["fitting"] = fitting(*g).count();
  out["fitting_series"] = json::array();
  for (const auto& f : fitting_series(g)) out["fitting_series"].push_back(f.count());
  out["soluble_radical"] = soluble_radical(g).count();
  out["layer"] = layer(g).count();
  out["generalized_fitting"] = generalized_fitting(g).count();
  out["socle"] = socle(*g).count();
  out["composition_factors"] = json::array();
  for (const auto& f : composition_factors(g))
    out["composition_factors"].push_back(
        {{"name", f.name}, {"family", f.family}, {"order", f.order}, {"lambda", f.lambda}});
  out["lambda"] = lambda_sum(g);
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_sieve(uint32_t n, uint32_t max_omega, uint64_t from, uint64_t to,
              const Options& opt) {
  auto rep = nt::sieve_pi(n, max_omega, from, to);
  std::string emit = opt.emit.empty() ? "csv" : opt.emit;
  if (emit == "csv") {
    printf("r,omega,factorization\n");
    for (const auto& h : rep.hits)
      printf("%llu,%u,%s\n", (unsigned long long)h.r, h.omega,
             spaced_factors(h.factors).c_str());
    return 0;
  }
  require(emit == "json", ErrorCode::InvalidArgument, "sieve emits csv or json");
  json out;
  out["n"] = rep.n;
  out["max_omega"] = rep.max_omega;
  out["from"] = rep.lo;
  out["to"] = rep.hi;
  out["hits"] = json::array();
  for (const auto& h : rep.hits)
    out["hits"].push_back(
        {{"r", h.r}, {"omega", h.omega}, {"factorization", spaced_factors(h.factors)}});
  out["histogram"] = json::array();
  for (const auto& [om, cnt] : rep.histogram) out["histogram"].push_back({om, cnt});
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_dickson(uint64_t limit, const Options& opt) {
  auto ts = nt::dickson_triples(limit);
  std::string emit = opt.emit.empty() ? "csv" : opt.emit;
  if (emit == "csv") {
    printf("n,r,omega,factorization\n");
    for (const auto& t : ts) {
      auto f = nt::factorize(t.r * t.r - 1);
      printf("%llu,%llu,%u,%s\n", (unsigned long long)t.n, (unsigned long long)t.r,
             f.big_omega(), spaced_factors(f).c_str());
    }
    return 0;
  }
  require(emit == "json", ErrorCode::InvalidArgument, "dickson emits csv or json");
  json out;
  out["limit"] = limit;
  out["triples"] = json::array();
  for (const auto& t : ts) {
    auto f = nt::factorize(t.r * t.r - 1);
    out["triples"].push_back({{"n", t.n},
                              {"r", t.r},
                              {"omega", f.big_omega()},
                              {"factorization", spaced_factors(f)}});
  }
  printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_verify(const std::string& filter, const Options& opt) {
  auto rs = run_claims(filter);
  std::string emit = opt.emit.empty() ? "table" : opt.emit;
  uint32_t passed = 0, failed = 0;
  for (const auto& r : rs) (r.status == "pass" ? passed : failed)++;
  if (emit == "table") {
    printf("%-30s %-6s %-34s %-34s %s\n", "id", "status", "expected", "measured", "ms");
    for (const auto& r : rs) {
      printf("%-30s %-6s %-34s %-34s %.1f\n", r.id.c_str(), r.status.c_str(),
             r.expected.c_str(), r.measured.c_str(), r.ms);
      if (!r.detail.empty()) printf("    %s\n", r.detail.c_str());
    }
    printf("%zu claims, %u passed, %u failed\n", rs.size(), passed, failed);
  } else {
    require(emit == "json", ErrorCode::InvalidArgument, "verify emits table or json");
    json out;
    out["claims"] = json::array();
    for (const auto& r : rs)
      out["claims"].push_back({{"id", r.id},
                               {"statement", r.statement},
                               {"status", r.status},
                               {"expected", r.expected},
                               {"measured", r.measured},
                               {"detail", r.detail},
                               {"ms", r.ms}});
    out["passed"] = passed;
    out["failed"] = failed;
    printf("%s\n", out.dump(2).c_str());
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group centralizer-chain toolkit"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--threads", opt.threads, "worker threads (claims always report in id order)")
      ->envname("CDIM_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_option("--node-budget", opt.node_budget, "lattice node budget")
      ->envname("CDIM_NODE_BUDGET");
  app.add_option("--enum-cap", opt.enum_cap, "element enumeration cap")
      ->envname("CDIM_ENUM_CAP");
  app.add_option("--cache-dir", opt.cache_dir, "construction cache directory")
      ->envname("CDIM_CACHE_DIR");
  app.add_option("--emit", opt.emit, "output format (json|dot|csv|table, per command)")
      ->envname("CDIM_EMIT");

  std::string ref, filter;
  uint32_t sieve_n = 2, sieve_m = 6;
  uint64_t sieve_from = 3, sieve_to = 1000, limit = 1000;

  auto* c_construct = app.add_subcommand("construct", "build a group from a spec line");
  c_construct->add_option("spec", ref, "construction spec")->required();
  auto* c_cdim = app.add_subcommand("cdim", "c-dimension of a group");
  c_cdim->add_option("group", ref, "group spec or cached name")->required();
  auto* c_lattice = app.add_subcommand("lattice", "centralizer lattice of a group");
  c_lattice->add_option("group", ref, "group spec or cached name")->required();
  auto* c_analyze = app.add_subcommand("analyze", "fitting-type structure report");
  c_analyze->add_option("group", ref, "group spec or cached name")->required();
  auto* c_sieve = app.add_subcommand("sieve", "odd primes with bounded Omega(r^n - 1)");
  c_sieve->add_option("--n", sieve_n, "exponent");
  c_sieve->add_option("--max-omega", sieve_m, "Omega cap");
  c_sieve->add_option("--from", sieve_from, "range start");
  c_sieve->add_option("--to", sieve_to, "range end");
  auto* c_dickson = app.add_subcommand("dickson", "prime triples n, 6n+1, 12n+1");
  c_dickson->add_option("--limit", limit, "largest n");
  auto* c_verify = app.add_subcommand("verify", "run the claim suite");
  c_verify->add_option("filter", filter, "substring filter on claim ids");

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_construct->parsed()) return cmd_construct(ref, opt);
    if (c_cdim->parsed()) return cmd_cdim(ref, opt);
    if (c_lattice->parsed()) return cmd_lattice(ref, opt);
    if (c_analyze->parsed()) return cmd_analyze(ref, opt);
    if (c_sieve->parsed()) return cmd_sieve(sieve_n, sieve_m, sieve_from, sieve_to, opt);
    if (c_dickson->parsed()) return cmd_dickson(limit, opt);
    if (c_verify->parsed()) return cmd_verify(filter, opt);
  } catch (const Error& e) {
    fprintf(stderr, "error: %s\n", e.what());
    switch (e.code()) {
      case ErrorCode::CapExceeded:
      case ErrorCode::LatticeBudgetExceeded:
      case ErrorCode::Overflow:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
