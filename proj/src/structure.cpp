#include "cdim/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cdim/lattice.hpp"
#include "cdim/numtheory.hpp"

namespace cdim {

namespace {

DynBitset whole(const FiniteGroup& g) {
  DynBitset b(g.size());
  for (uint32_t i = 0; i < g.size(); ++i) b.set(i);
  return b;
}

DynBitset trivial(const FiniteGroup& g) {
  DynBitset b(g.size());
  b.set(0);
  return b;
}

DynBitset derived_of(const FiniteGroup& g, const DynBitset& bits) {
  return commutator_bits(g, bits, bits);
}

DynBitset perfect_core_of(const FiniteGroup& g, DynBitset bits) {
  while (true) {
    DynBitset nxt = derived_of(g, bits);
    if (nxt == bits) return bits;
    bits = std::move(nxt);
  }
}

bool abelian_set(const FiniteGroup& g, const DynBitset& bits) {
  auto gens = greedy_generators(g, bits);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!g.commute(gens[i], gens[j])) return false;
  return true;
}

DynBitset preimage(const GroupHom& proj, const DynBitset& sub) {
  DynBitset out(proj.domain()->size());
  for (uint32_t i = 0; i < proj.domain()->size(); ++i)
    if (sub.test(proj(i))) out.set(i);
  return out;
}

}  // namespace

std::vector<DynBitset> derived_series(const FiniteGroup& g) {
  std::vector<DynBitset> out{whole(g)};
  while (true) {
    DynBitset nxt = derived_of(g, out.back());
    if (nxt == out.back()) return out;
    out.push_back(std::move(nxt));
  }
}

DynBitset perfect_core(const FiniteGroup& g) { return perfect_core_of(g, whole(g)); }

bool is_soluble(const FiniteGroup& g) { return perfect_core(g).count() == 1; }

bool is_nilpotent(const FiniteGroup& g) { return is_nilpotent_set(g, whole(g)); }

DynBitset normalizer_bits(const FiniteGroup& g, const DynBitset& bits) {
  auto gens = greedy_generators(g, bits);
  DynBitset out(g.size());
  for (uint32_t u = 0; u < g.size(); ++u) {
    bool ok = true;
    for (uint32_t x : gens)
      if (!bits.test(g.conj(u, x))) {
        ok = false;
        break;
      }
    if (ok) out.set(u);
  }
  return out;
}

DynBitset sylow(const FiniteGroup& g, uint32_t p) {
  require(nt::is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  uint64_t part = 1;
  for (uint64_t n = g.order(); n % p == 0; n /= p) part *= p;
  DynBitset sub = trivial(g);
  while (sub.count() < part) {
    // a non-Sylow p-subgroup has index divisible by p in its normalizer, so some
    // normalizing element has a p-part outside the subgroup
    DynBitset norm = normalizer_bits(g, sub);
    bool grew = false;
    for (uint32_t u = norm.next(0); u < g.size() && !grew; u = norm.next(u + 1)) {
      if (sub.test(u)) continue;
      uint32_t rest = g.element_order(u);
      if (rest % p != 0) continue;
      while (rest % p == 0) rest /= p;
      uint32_t x = g.power(u, rest);
      if (sub.test(x)) continue;
      auto gens = greedy_generators(g, sub);
      gens.push_back(x);
      sub = subgroup_closure(g, gens);
      grew = true;
    }
    require(grew, ErrorCode::Internal, "sylow extension stalled");
  }
  return sub;
}

DynBitset o_p(const FiniteGroup& g, uint32_t p) {
  DynBitset core = sylow(g, p);
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t gi : g.generator_indices()) {
      DynBitset meet = core & conjugate_subgroup(g, core, gi);
      if (meet != core) {
        core = std::move(meet);
        changed = true;
      }
    }
  }
  return core;
}

DynBitset fitting(const FiniteGroup& g) {
  std::vector<uint32_t> seeds;
  for (const auto& pe : nt::factorize(g.order()).primes)
    o_p(g, uint32_t(pe.first)).for_each([&](uint32_t i) { seeds.push_back(i); });
  return subgroup_closure(g, seeds);
}

std::vector<DynBitset> fitting_series(const GroupPtr& g) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  std::vector<DynBitset> out{fitting(*g)};
  while (out.back().count() < g->size()) {
    auto q = quotient(g, out.back());
    DynBitset above = fitting(*q.group);
    if (above.count() == 1) break;
    out.push_back(preimage(q.projection, above));
  }
  return out;
}

DynBitset soluble_radical(const GroupPtr& g) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  if (g->size() == 1) return trivial(*g);
  std::vector<uint32_t> seeds;
  for (const auto& m : minimal_normal_subgroups(*g))
    if (abelian_set(*g, m)) m.for_each([&](uint32_t i) { seeds.push_back(i); });
  if (seeds.empty()) return trivial(*g);
  DynBitset sol = subgroup_closure(*g, seeds);
  if (sol.count() == g->size()) return sol;
  auto q = quotient(g, sol);
  return preimage(q.projection, soluble_radical(q.group));
}

std::vector<DynBitset> minimal_normal_subgroups(const FiniteGroup& g) {
  std::vector<DynBitset> closures;
  for (const auto& cls : g.conjugacy_classes()) {
    if (cls.size() == 1 && cls.front() == 0) continue;
    DynBitset n = normal_closure(g, {cls.front()});
    if (std::find(closures.begin(), closures.end(), n) == closures.end())
      closures.push_back(std::move(n));
  }
  std::vector<DynBitset> out;
  for (const auto& n : closures) {
    bool minimal = true;
    for (const auto& m : closures)
      if (m != n && m.is_subset_of(n)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const DynBitset& a, const DynBitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.lex_less(b);
  });
  return out;
}

DynBitset socle(const FiniteGroup& g) {
  std::vector<uint32_t> seeds;
  for (const auto& m : minimal_normal_subgroups(g))
    m.for_each([&](uint32_t i) { seeds.push_back(i); });
  return subgroup_closure(g, seeds);
}

DynBitset layer(const GroupPtr& g) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  return perfect_core_of(*g, centralizer_set(*g, fitting(*g)));
}

std::vector<DynBitset> components(const GroupPtr& g) {
  DynBitset e = layer(g);
  if (e.count() == 1) return {};
  auto pe = promote(g, e);
  auto q = quotient(pe.group, center_bits(*pe.group));
  std::vector<DynBitset> out;
  std::vector<uint32_t> seeds;
  for (const auto& mbar : minimal_normal_subgroups(*q.group)) {
    DynBitset comp = perfect_core_of(*pe.group, preimage(q.projection, mbar));
    require(comp.count() > 1, ErrorCode::LayerDecompositionFailed,
            "component candidate collapsed");
    // quasisimple: perfect by construction, and simple over its center
    auto pc = promote(pe.group, comp);
    auto cq = quotient(pc.group, center_bits(*pc.group));
    require(cq.group->size() > 1, ErrorCode::LayerDecompositionFailed,
            "component candidate is central");
    auto mins = minimal_normal_subgroups(*cq.group);
    require(mins.size() == 1 && mins.front().count() == cq.group->size(),
            ErrorCode::LayerDecompositionFailed, "component is not quasisimple");
    DynBitset lifted(g->size());
    comp.for_each([&](uint32_t i) { lifted.set(pe.to_parent[i]); });
    lifted.for_each([&](uint32_t i) { seeds.push_back(i); });
    out.push_back(std::move(lifted));
  }
  require(subgroup_closure(*g, seeds) == e, ErrorCode::LayerDecompositionFailed,
          "components do not generate the layer");
  std::sort(out.begin(), out.end(), [](const DynBitset& a, const DynBitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.lex_less(b);
  });
  return out;
}

DynBitset generalized_fitting(const GroupPtr& g) {
  std::vector<uint32_t> seeds;
  fitting(*g).for_each([&](uint32_t i) { seeds.push_back(i); });
  layer(g).for_each([&](uint32_t i) { seeds.push_back(i); });
  return subgroup_closure(*g, seeds);
}

namespace {

struct TableRow {
  uint64_t order;
  std::string name;
  std::string family;
  uint32_t lambda;
  std::map<uint32_t, uint32_t> order_counts;  // empty when the order is unambiguous
};

std::string data_dir() {
  if (const char* env = std::getenv("CDIM_DATA_DIR")) return env;
  return CDIM_DATA_DIR;
}

const std::vector<TableRow>& simple_table() {
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> out;
    std::string path = data_dir() + "/simple_groups.tsv";
    std::ifstream in(path);
    require(in.good(), ErrorCode::CacheError, "cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      TableRow row;
      std::string omul;
      ls >> row.order >> row.name >> row.family >> row.lambda >> omul;
      require(!ls.fail(), ErrorCode::ParseError, "bad table row: " + line);
      if (omul != "-") {
        std::istringstream ms(omul);
        std::string part;
        while (std::getline(ms, part, ',')) {
          auto colon = part.find(':');
          require(colon != std::string::npos, ErrorCode::ParseError, "bad multiset: " + omul);
          row.order_counts[uint32_t(std::stoul(part.substr(0, colon)))] =
              uint32_t(std::stoul(part.substr(colon + 1)));
        }
      }
      out.push_back(std::move(row));
    }
    require(!out.empty(), ErrorCode::ParseError, "empty table");
    return out;
  }();
  return rows;
}

SimpleId identify_simple(const FiniteGroup& s) {
  std::vector<const TableRow*> hits;
  for (const auto& row : simple_table())
    if (row.order == s.order()) hits.push_back(&row);
  require(!hits.empty(), ErrorCode::UnrecognizedSimpleGroup,
          "no table entry of order " + std::to_string(s.order()));
  const TableRow* match = hits.front();
  if (hits.size() > 1) {
    std::map<uint32_t, uint32_t> counts;
    for (uint32_t i = 0; i < s.size(); ++i) ++counts[s.element_order(i)];
    match = nullptr;
    for (const TableRow* row : hits)
      if (row->order_counts == counts) {
        match = row;
        break;
      }
    require(match != nullptr, ErrorCode::UnrecognizedSimpleGroup,
            "element order statistics match no table entry of order " +
                std::to_string(s.order()));
  }
  return SimpleId{match->order, match->name, match->family, match->lambda};
}

}  // namespace

std::vector<SimpleId> composition_factors(const GroupPtr& g) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  std::vector<SimpleId> out;
  GroupPtr cur = g;
  while (cur->size() > 1) {
    DynBitset m = minimal_normal_subgroups(*cur).front();
    auto pm = promote(cur, m);
    if (pm.group->is_abelian()) {
      auto f = nt::factorize(pm.group->order());
      require(f.primes.size() == 1, ErrorCode::Internal, "minimal normal not a p-group");
      for (uint32_t k = 0; k < f.primes.front().second; ++k)
        out.push_back(SimpleId{f.primes.front().first,
                               "C" + std::to_string(f.primes.front().first), "cyclic", 0});
    } else {
      for (const auto& sbar : minimal_normal_subgroups(*pm.group)) {
        auto ps = promote(pm.group, sbar);
        out.push_back(identify_simple(*ps.group));
      }
    }
    cur = quotient(cur, m).group;
  }
  std::sort(out.begin(), out.end(), [](const SimpleId& a, const SimpleId& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.name < b.name;
  });
  return out;
}

uint32_t lambda_sum(const GroupPtr& g) {
  uint32_t total = 0;
  for (const auto& f : composition_factors(g))
    if (f.family != "cyclic") total += f.lambda;
  return total;
}

uint32_t p_rank(const FiniteGroup& g, uint32_t p) {
  require(nt::is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  std::vector<uint32_t> elts;
  for (uint32_t i = 1; i < g.size(); ++i)
    if (g.element_order(i) == p) elts.push_back(i);
  uint32_t best = 0;
  std::function<void(const DynBitset&, const std::vector<uint32_t>&, uint32_t)> grow =
      [&](const DynBitset& sub, const std::vector<uint32_t>& cands, uint32_t rank) {
        best = std::max(best, rank);
        for (size_t t = 0; t < cands.size(); ++t) {
          if (rank + (cands.size() - t) <= best) return;  // one generator per rank step
          uint32_t x = cands[t];
          if (sub.test(x)) continue;
          auto gens = greedy_generators(g, sub);
          gens.push_back(x);
          DynBitset bigger = subgroup_closure(g, gens);
          std::vector<uint32_t> rest;
          for (size_t u = t + 1; u < cands.size(); ++u)
            if (!bigger.test(cands[u]) && g.commute(x, cands[u])) rest.push_back(cands[u]);
          grow(bigger, rest, rank + 1);
        }
      };
  grow(trivial(g), elts, 0);
  return best;
}

uint32_t min_faithful_degree(const GroupPtr& g, uint32_t cap) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  require(g->order() <= cap, ErrorCode::CapExceeded, "subgroup sweep capped");
  if (g->size() == 1) return 1;

  // one candidate per distinct normal core: the cheapest stabilizer realizing it
  std::vector<std::pair<DynBitset, uint32_t>> cores;
  for (const auto& h : all_subgroups(*g)) {
    DynBitset core = h;
    bool changed = true;
    while (changed) {
      changed = false;
      for (uint32_t gi : g->generator_indices()) {
        DynBitset meet = core & conjugate_subgroup(*g, core, gi);
        if (meet != core) {
          core = std::move(meet);
          changed = true;
        }
      }
    }
    uint32_t cost = g->size() / h.count();
    auto it = std::find_if(cores.begin(), cores.end(),
                           [&](const auto& c) { return c.first == core; });
    if (it == cores.end())
      cores.emplace_back(std::move(core), cost);
    else
      it->second = std::min(it->second, cost);
  }
  std::sort(cores.begin(), cores.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });

  uint32_t best = g->size();  // the regular representation
  std::function<void(const DynBitset&, uint32_t, size_t)> pick =
      [&](const DynBitset& kernel, uint32_t cost, size_t from) {
        if (kernel.count() == 1) {
          best = std::min(best, cost);
          return;
        }
        for (size_t i = from; i < cores.size(); ++i) {
          if (cost + cores[i].second >= best) return;  // sorted by cost
          DynBitset meet = kernel & cores[i].first;
          if (meet == kernel) continue;
          pick(meet, cost + cores[i].second, i + 1);
        }
      };
  pick(whole(*g), 0, 0);
  return best;
}

}  // namespace cdim
