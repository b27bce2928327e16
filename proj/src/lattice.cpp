#include "cdim/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cdim/numtheory.hpp"

namespace cdim {
namespace {

DynBitset element_centralizer(const FiniteGroup& g, uint32_t x) {
  DynBitset out(g.size());
  for (uint32_t y = 0; y < g.size(); ++y)
    if (g.commute(y, x)) out.set(y);
  return out;
}

// Small subset of xs generating a supergroup of xs; lets C_G(X) be computed as the
// intersection of a handful of element centralizers instead of one per member.
std::vector<uint32_t> generating_subset(const FiniteGroup& g,
                                        const std::vector<uint32_t>& xs) {
  std::vector<uint32_t> gens;
  DynBitset have(g.size());
  have.set(0);
  for (uint32_t x : xs) {
    if (have.test(x)) continue;
    gens.push_back(x);
    have = subgroup_closure(g, gens);
  }
  return gens;
}

DynBitset centralizer_of_gens(const FiniteGroup& g, const std::vector<uint32_t>& gens) {
  DynBitset out(g.size());
  for (uint32_t y = 0; y < g.size(); ++y) out.set(y);
  for (uint32_t x : gens) out &= element_centralizer(g, x);
  return out;
}

}  // namespace

DynBitset centralizer(const FiniteGroup& g, const std::vector<uint32_t>& xs) {
  for (uint32_t x : xs)
    require(x < g.size(), ErrorCode::UnknownElement, "element index out of range");
  if (xs.size() <= 8) return centralizer_of_gens(g, xs);
  return centralizer_of_gens(g, generating_subset(g, xs));
}

DynBitset centralizer_set(const FiniteGroup& g, const DynBitset& xs) {
  require(xs.size() == g.size(), ErrorCode::InvalidArgument, "bitset size mismatch");
  return centralizer(g, xs.members());
}

std::optional<uint32_t> CentralizerLattice::find(const DynBitset& bits) const {
  for (uint32_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].bits == bits) return i;
  return std::nullopt;
}

CentralizerLattice centralizer_lattice(const FiniteGroup& g, size_t node_budget) {
  const uint32_t n = g.size();
  std::vector<DynBitset> pool;
  std::unordered_map<uint64_t, std::vector<uint32_t>> byhash;
  auto intern = [&](const DynBitset& b) -> uint32_t {
    uint64_t h = b.hash();
    auto& bucket = byhash[h];
    for (uint32_t id : bucket)
      if (pool[id] == b) return id;
    require(pool.size() < node_budget, ErrorCode::LatticeBudgetExceeded,
            "centralizer lattice exceeded the node budget");
    bucket.push_back(uint32_t(pool.size()));
    pool.push_back(b);
    return uint32_t(pool.size() - 1);
  };

  DynBitset full(n);
  for (uint32_t i = 0; i < n; ++i) full.set(i);
  intern(full);

  std::vector<std::shared_ptr<const std::vector<uint32_t>>> cms;
  for (uint32_t gi : g.generator_indices()) cms.push_back(g.conj_map(gi));

  // seed with every element centralizer: one scan per conjugacy class, the rest of the
  // class reached by translating bitsets along the class orbit (C(x^a) = C(x)^a)
  for (const auto& cl : g.conjugacy_classes()) {
    std::unordered_map<uint32_t, uint32_t> node_of;
    std::vector<uint32_t> stack;
    node_of[cl[0]] = intern(element_centralizer(g, cl[0]));
    stack.push_back(cl[0]);
    while (!stack.empty()) {
      uint32_t m = stack.back();
      stack.pop_back();
      uint32_t mid = node_of[m];
      for (const auto& cm : cms) {
        uint32_t m2 = (*cm)[m];
        if (node_of.count(m2)) continue;
        DynBitset tb(n);
        pool[mid].for_each([&](uint32_t i) { tb.set((*cm)[i]); });
        node_of[m2] = intern(tb);
        stack.push_back(m2);
      }
    }
  }

  // meet closure: every unordered pair intersected once; new nodes join the worklist
  for (size_t i = 1; i < pool.size(); ++i)
    for (size_t j = 0; j < i; ++j) intern(pool[i] & pool[j]);

  std::vector<uint32_t> perm(pool.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<uint32_t> pc(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) pc[i] = pool[i].count();
  std::sort(perm.begin(), perm.end(), [&](uint32_t a, uint32_t b) {
    if (pc[a] != pc[b]) return pc[a] < pc[b];
    return pool[a].lex_less(pool[b]);
  });

  CentralizerLattice lat;
  lat.nodes_.reserve(pool.size());
  for (uint32_t old : perm) lat.nodes_.push_back({std::move(pool[old]), pc[old]});
  lat.top_ = uint32_t(lat.nodes_.size() - 1);
  lat.bottom_ = 0;

  // covers: for each node the minimal strict supersets
  const auto& nodes = lat.nodes_;
  std::vector<uint32_t> covers;
  for (uint32_t i = 0; i < nodes.size(); ++i) {
    covers.clear();
    for (uint32_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[j].order <= nodes[i].order) continue;
      if (!nodes[i].bits.is_subset_of(nodes[j].bits)) continue;
      bool minimal = true;
      for (uint32_t k : covers)
        if (nodes[k].bits.is_subset_of(nodes[j].bits)) {
          minimal = false;
          break;
        }
      if (minimal) {
        covers.push_back(j);
        lat.edges_.emplace_back(i, j);
      }
    }
  }
  std::sort(lat.edges_.begin(), lat.edges_.end());
  return lat;
}

CdimResult c_dimension(const CentralizerLattice& lat, const FiniteGroup& g) {
  const auto& nodes = lat.nodes();
  std::vector<uint32_t> depth(nodes.size(), 0);
  std::vector<uint32_t> prev(nodes.size(), UINT32_MAX);
  for (auto [i, j] : lat.edges()) {
    if (depth[i] + 1 > depth[j] || (depth[i] + 1 == depth[j] && i < prev[j])) {
      depth[j] = depth[i] + 1;
      prev[j] = i;
    }
  }
  CdimResult res;
  res.value = depth[lat.top()];
  for (uint32_t at = lat.top(); at != UINT32_MAX; at = prev[at])
    res.chain_nodes.push_back(at);
  std::reverse(res.chain_nodes.begin(), res.chain_nodes.end());
  for (uint32_t id : res.chain_nodes) {
    res.witness.cs.push_back(nodes[id].bits);
    res.witness.ys.push_back(centralizer_set(g, nodes[id].bits));
  }
  return res;
}

CdimResult c_dimension(const FiniteGroup& g, size_t node_budget) {
  return c_dimension(centralizer_lattice(g, node_budget), g);
}

bool verify_chain(const FiniteGroup& g, const ChainWitness& w) {
  if (w.ys.empty() || w.ys.size() != w.cs.size()) return false;
  for (size_t i = 0; i < w.ys.size(); ++i)
    if (centralizer_set(g, w.ys[i]) != w.cs[i]) return false;
  for (size_t i = 0; i + 1 < w.ys.size(); ++i) {
    if (!w.ys[i + 1].is_subset_of(w.ys[i]) || w.ys[i + 1] == w.ys[i]) return false;
    if (!w.cs[i].is_subset_of(w.cs[i + 1]) || w.cs[i] == w.cs[i + 1]) return false;
  }
  return true;
}

uint32_t cdim_upper_bound_semidirect(const FiniteGroup& g, const DynBitset& v) {
  require(v.size() == g.size(), ErrorCode::InvalidArgument, "bitset size mismatch");
  auto vgens = greedy_generators(g, v);
  for (size_t i = 0; i < vgens.size(); ++i)
    for (size_t j = i + 1; j < vgens.size(); ++j)
      require(g.commute(vgens[i], vgens[j]), ErrorCode::NotAbelian,
              "normal subgroup is not abelian");
  require(is_normal(g, v), ErrorCode::NotNormal, "subgroup is not normal");
  uint32_t om = nt::big_omega(g.order() / v.count());
  bool central = true;
  for (uint32_t x : vgens)
    for (uint32_t gi : g.generator_indices())
      if (!g.commute(x, gi)) {
        central = false;
        break;
      }
  return central ? om : 2 * om;
}

namespace {

// elements of s fixed pointwise by every table in acts
DynBitset fixed_points(uint32_t qsize, const std::vector<const std::vector<uint32_t>*>& acts) {
  DynBitset out(qsize);
  for (uint32_t i = 0; i < qsize; ++i) {
    bool fix = true;
    for (const auto* a : acts)
      if ((*a)[i] != i) {
        fix = false;
        break;
      }
    if (fix) out.set(i);
  }
  return out;
}

struct HyperplaneSearch {
  const FiniteGroup& e;
  const std::vector<std::vector<uint32_t>>& act;
  uint32_t p;
  uint32_t qsize;
  std::vector<DynBitset> chain;
  std::vector<DynBitset> fixed;

  DynBitset fix_of(const DynBitset& sub) const {
    std::vector<const std::vector<uint32_t>*> acts;
    sub.for_each([&](uint32_t m) { acts.push_back(&act[m]); });
    return fixed_points(qsize, acts);
  }

  // index-p subgroups of the elementary abelian subgroup sub, ascending by the
  // defining functional in coordinates over a greedy basis
  std::vector<DynBitset> hyperplanes(const DynBitset& sub) const {
    std::vector<uint32_t> basis;
    DynBitset span(e.size());
    span.set(0);
    sub.for_each([&](uint32_t m) {
      if (!span.test(m)) {
        basis.push_back(m);
        span = subgroup_closure(e, basis);
      }
    });
    uint32_t r = uint32_t(basis.size());
    std::vector<std::vector<uint32_t>> coord(e.size());
    coord[0] = std::vector<uint32_t>(r, 0);
    std::vector<uint32_t> stack{0};
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      for (uint32_t bi = 0; bi < r; ++bi) {
        uint32_t y = e.mul(x, basis[bi]);
        if (!coord[y].empty() || y == 0) continue;
        coord[y] = coord[x];
        coord[y][bi] = (coord[y][bi] + 1) % p;
        stack.push_back(y);
      }
    }
    std::vector<DynBitset> out;
    std::vector<uint32_t> phi(r, 0);
    while (true) {
      // next functional with leading coefficient 1, lex order
      uint32_t k = r;
      while (k > 0 && phi[k - 1] == p - 1) phi[--k] = 0;
      if (k == 0) break;
      phi[k - 1]++;
      uint32_t lead = 0;
      while (lead < r && phi[lead] == 0) ++lead;
      if (phi[lead] != 1) continue;
      DynBitset h(e.size());
      sub.for_each([&](uint32_t m) {
        uint64_t dot = 0;
        for (uint32_t bi = 0; bi < r; ++bi) dot += uint64_t(phi[bi]) * coord[m][bi];
        if (dot % p == 0) h.set(m);
      });
      out.push_back(std::move(h));
    }
    return out;
  }

  bool descend(const DynBitset& sub, const DynBitset& subfix) {
    chain.push_back(sub);
    fixed.push_back(subfix);
    if (sub.count() == 1) return true;
    for (const auto& h : hyperplanes(sub)) {
      DynBitset hfix = fix_of(h);
      if (subfix.is_subset_of(hfix) && hfix != subfix && descend(h, hfix)) return true;
    }
    chain.pop_back();
    fixed.pop_back();
    return false;
  }
};

}  // namespace

KhukhroChain khukhro_chain(const FiniteGroup& e, const FiniteGroup& q,
                           const std::vector<std::vector<uint32_t>>& gen_action) {
  require(gen_action.size() == e.generator_indices().size(), ErrorCode::InvalidArgument,
          "one action table per generator required");
  const uint32_t qs = q.size();
  for (const auto& a : gen_action) {
    require(a.size() == qs, ErrorCode::InvalidArgument, "action table size mismatch");
    DynBitset seen(qs);
    for (uint32_t v : a) {
      require(v < qs && !seen.test(v), ErrorCode::NotAutomorphism,
              "action table is not a bijection");
      seen.set(v);
    }
    require(a[0] == 0, ErrorCode::NotAutomorphism, "action must fix the identity");
    for (uint32_t x = 0; x < qs; ++x)
      for (uint32_t gi : q.generator_indices())
        require(a[q.mul(x, gi)] == q.mul(a[x], a[gi]), ErrorCode::NotAutomorphism,
                "action table is not multiplicative");
  }

  require(e.is_abelian(), ErrorCode::InvalidArgument, "e must be elementary abelian");
  uint32_t p = 0;
  for (uint32_t x = 1; x < e.size(); ++x) {
    uint32_t o = e.element_order(x);
    if (p == 0) p = o;
    require(o == p, ErrorCode::InvalidArgument, "e must be elementary abelian");
  }
  if (p == 0) p = 2;  // trivial e
  require(std::gcd(uint64_t(e.size()), uint64_t(qs)) == 1, ErrorCode::NotCoprime,
          "e and q must have coprime orders");
  DynBitset allq(qs);
  for (uint32_t i = 0; i < qs; ++i) allq.set(i);
  require(is_nilpotent_set(q, allq), ErrorCode::NotNilpotent, "q must be nilpotent");

  // extend the generator tables to the whole of e along its Cayley graph
  std::vector<std::vector<uint32_t>> act(e.size());
  act[0].resize(qs);
  std::iota(act[0].begin(), act[0].end(), 0);
  std::vector<uint32_t> stack{0};
  std::vector<char> done(e.size(), 0);
  done[0] = 1;
  const auto& egens = e.generator_indices();
  while (!stack.empty()) {
    uint32_t x = stack.back();
    stack.pop_back();
    for (size_t j = 0; j < egens.size(); ++j) {
      uint32_t y = e.mul(x, egens[j]);
      std::vector<uint32_t> comp(qs);
      for (uint32_t i = 0; i < qs; ++i) comp[i] = act[x][gen_action[j][i]];
      if (!done[y]) {
        act[y] = std::move(comp);
        done[y] = 1;
        stack.push_back(y);
      } else {
        require(act[y] == comp, ErrorCode::RelationViolation,
                "action tables are inconsistent");
      }
    }
  }
  for (uint32_t x = 1; x < e.size(); ++x) {
    bool trivial = true;
    for (uint32_t i = 0; i < qs; ++i)
      if (act[x][i] != i) {
        trivial = false;
        break;
      }
    require(!trivial, ErrorCode::ActionNotFaithful, "action has nontrivial kernel");
  }

  HyperplaneSearch hs{e, act, p, qs, {}, {}};
  DynBitset alle(e.size());
  for (uint32_t i = 0; i < e.size(); ++i) alle.set(i);
  require(hs.descend(alle, hs.fix_of(alle)), ErrorCode::SearchExhausted,
          "no hyperplane chain with strictly growing fixed points");
  return {std::move(hs.chain), std::move(hs.fixed)};
}

}  // namespace cdim
