#include "cdim/subgroup.hpp"

#include <algorithm>
#include <unordered_map>

namespace cdim {

DynBitset subgroup_closure(const FiniteGroup& g, const std::vector<uint32_t>& seeds) {
  if (seeds.size() > 64) {
    // reduce a large seed set first: every adjoined seed at least doubles the closure,
    // so the rebuilt BFS runs over a handful of generators instead of the full set
    std::vector<uint32_t> gens;
    DynBitset have(g.size());
    have.set(0);
    for (uint32_t t : seeds)
      if (!have.test(t)) {
        gens.push_back(t);
        have = subgroup_closure(g, gens);
      }
    return have;
  }
  DynBitset s(g.size());
  s.set(0);
  std::vector<uint32_t> frontier{0};
  std::vector<uint32_t> next;
  while (!frontier.empty()) {
    next.clear();
    for (uint32_t x : frontier)
      for (uint32_t t : seeds) {
        uint32_t y = g.mul(x, t);
        if (!s.test(y)) {
          s.set(y);
          next.push_back(y);
        }
      }
    frontier.swap(next);
  }
  return s;
}

bool is_subgroup(const FiniteGroup& g, const DynBitset& bits) {
  if (!bits.test(0)) return false;
  const auto mem = bits.members();
  for (uint32_t a : mem)
    for (uint32_t b : mem)
      if (!bits.test(g.mul(a, b))) return false;
  return true;
}

std::vector<uint32_t> greedy_generators(const FiniteGroup& g, const DynBitset& bits) {
  require(bits.size() == g.size(), ErrorCode::InvalidArgument, "bitset size mismatch");
  require(bits.test(0), ErrorCode::NotSubgroup, "identity missing");
  std::vector<uint32_t> gens;
  DynBitset have(g.size());
  have.set(0);
  for (uint32_t i = bits.next(0); i < g.size(); i = bits.next(i + 1)) {
    if (have.test(i)) continue;
    gens.push_back(i);
    have = subgroup_closure(g, gens);
    require(have.is_subset_of(bits), ErrorCode::NotSubgroup, "set is not closed");
  }
  require(have == bits, ErrorCode::NotSubgroup, "set is not closed");
  return gens;
}

DynBitset conjugate_subgroup(const FiniteGroup& g, const DynBitset& bits, uint32_t c) {
  auto m = g.conj_map(c);
  DynBitset out(g.size());
  bits.for_each([&](uint32_t i) { out.set((*m)[i]); });
  return out;
}

bool is_normal(const FiniteGroup& g, const DynBitset& bits) {
  for (uint32_t gi : g.generator_indices()) {
    auto m = g.conj_map(gi);
    bool ok = true;
    bits.for_each([&](uint32_t i) {
      if (!bits.test((*m)[i])) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

DynBitset normal_closure(const FiniteGroup& g, const std::vector<uint32_t>& seeds) {
  // orbit-close the seeds under conjugation by the generators, then take the subgroup
  // closure; a subgroup generated by a conjugation-closed set is normal
  DynBitset orb(g.size());
  std::vector<uint32_t> stack;
  for (uint32_t s : seeds)
    if (!orb.test(s)) {
      orb.set(s);
      stack.push_back(s);
    }
  std::vector<std::shared_ptr<const std::vector<uint32_t>>> maps;
  for (uint32_t gi : g.generator_indices()) maps.push_back(g.conj_map(gi));
  while (!stack.empty()) {
    uint32_t x = stack.back();
    stack.pop_back();
    for (const auto& m : maps) {
      uint32_t y = (*m)[x];
      if (!orb.test(y)) {
        orb.set(y);
        stack.push_back(y);
      }
    }
  }
  return subgroup_closure(g, orb.members());
}

DynBitset commutator_bits(const FiniteGroup& g, const DynBitset& abits,
                          const DynBitset& bbits) {
  // [A,B] is generated, as a normal subgroup of <A,B>, by the generator commutators
  auto agens = greedy_generators(g, abits);
  auto bgens = greedy_generators(g, bbits);
  DynBitset orb(g.size());
  std::vector<uint32_t> stack;
  auto push = [&](uint32_t x) {
    if (!orb.test(x)) {
      orb.set(x);
      stack.push_back(x);
    }
  };
  for (uint32_t a : agens)
    for (uint32_t b : bgens) push(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  std::vector<uint32_t> cgens = agens;
  cgens.insert(cgens.end(), bgens.begin(), bgens.end());
  while (!stack.empty()) {
    uint32_t x = stack.back();
    stack.pop_back();
    for (uint32_t c : cgens) push(g.conj(c, x));
  }
  return subgroup_closure(g, orb.members());
}

bool is_nilpotent_set(const FiniteGroup& g, const DynBitset& bits) {
  DynBitset cur = bits;
  while (true) {
    DynBitset nxt = commutator_bits(g, cur, bits);
    if (nxt == cur) return cur.count() == 1;
    cur = nxt;
  }
}

DynBitset center_bits(const FiniteGroup& g) {
  DynBitset z(g.size());
  for (uint32_t i = 0; i < g.size(); ++i) {
    bool central = true;
    for (uint32_t gi : g.generator_indices())
      if (!g.commute(i, gi)) {
        central = false;
        break;
      }
    if (central) z.set(i);
  }
  return z;
}

std::vector<DynBitset> all_subgroups(const FiniteGroup& g) {
  std::vector<DynBitset> subs;
  std::unordered_map<uint64_t, std::vector<size_t>> index;
  auto add = [&](const DynBitset& s) -> bool {
    uint64_t h = s.hash();
    for (size_t k : index[h])
      if (subs[k] == s) return false;
    index[h].push_back(subs.size());
    subs.push_back(s);
    return true;
  };
  DynBitset triv(g.size());
  triv.set(0);
  add(triv);
  for (size_t at = 0; at < subs.size(); ++at) {
    DynBitset cur = subs[at];
    auto gens = greedy_generators(g, cur);
    for (uint32_t x = 0; x < g.size(); ++x) {
      if (cur.test(x)) continue;
      auto ext = gens;
      ext.push_back(x);
      add(subgroup_closure(g, ext));
    }
  }
  std::sort(subs.begin(), subs.end(), [](const DynBitset& a, const DynBitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.lex_less(b);
  });
  return subs;
}

std::vector<DynBitset> longest_subgroup_chain(const FiniteGroup& g) {
  auto subs = all_subgroups(g);  // ascending by order
  const size_t m = subs.size();
  std::vector<uint32_t> depth(m, 0);  // longest chain from subs[i] down to trivial
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < i; ++j)
      if (subs[j].count() < subs[i].count() && subs[j].is_subset_of(subs[i]))
        depth[i] = std::max(depth[i], depth[j] + 1);
  size_t top = m - 1;  // the whole group sorts last
  std::vector<DynBitset> chain{subs[top]};
  size_t cur = top;
  while (subs[cur].count() > 1) {
    size_t pick = SIZE_MAX;
    for (size_t j = 0; j < m; ++j) {
      if (j == cur || depth[j] + 1 != depth[cur]) continue;
      if (!(subs[j].count() < subs[cur].count() && subs[j].is_subset_of(subs[cur]))) continue;
      if (pick == SIZE_MAX) {
        pick = j;
        continue;
      }
      if (subs[j].count() != subs[pick].count()
              ? subs[j].count() < subs[pick].count()
              : subs[j].lex_less(subs[pick]))
        pick = j;
    }
    require(pick != SIZE_MAX, ErrorCode::Internal, "chain walk stuck");
    chain.push_back(subs[pick]);
    cur = pick;
  }
  return chain;
}

PromotedGroup promote(const GroupPtr& parent, const DynBitset& bits) {
  require(parent != nullptr, ErrorCode::InvalidArgument, "null parent");
  auto gens = greedy_generators(*parent, bits);
  std::vector<GroupElement> gen_elems;
  gen_elems.reserve(std::max<size_t>(gens.size(), 1));
  if (gens.empty())
    gen_elems.push_back(parent->element(0));
  else
    for (uint32_t gi : gens) gen_elems.push_back(parent->element(gi));
  auto sub = FiniteGroup::enumerate_like(parent, std::move(gen_elems), parent->enum_cap());
  require(sub->order() == bits.count(), ErrorCode::Internal, "promotion order mismatch");
  std::vector<uint32_t> to_parent(sub->size());
  for (uint32_t i = 0; i < sub->size(); ++i) to_parent[i] = parent->index_of(sub->element(i));
  return {std::move(sub), std::move(to_parent)};
}

GroupHom::GroupHom(GroupPtr dom, GroupPtr cod, std::vector<uint32_t> map, bool verify)
    : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
  require(dom_ && cod_, ErrorCode::InvalidArgument, "null group");
  require(map_.size() == dom_->size(), ErrorCode::InvalidArgument, "map table size mismatch");
  for (uint32_t v : map_)
    require(v < cod_->size(), ErrorCode::InvalidArgument, "map image out of range");
  require(map_[0] == 0, ErrorCode::InvalidArgument, "identity must map to identity");
  if (verify) {
    for (uint32_t x = 0; x < dom_->size(); ++x)
      for (uint32_t gi : dom_->generator_indices())
        require(map_[dom_->mul(x, gi)] == cod_->mul(map_[x], map_[gi]),
                ErrorCode::InvalidArgument, "table is not a homomorphism");
  }
}

DynBitset GroupHom::kernel() const {
  DynBitset k(dom_->size());
  for (uint32_t i = 0; i < dom_->size(); ++i)
    if (map_[i] == 0) k.set(i);
  return k;
}

DynBitset GroupHom::image() const {
  DynBitset im(cod_->size());
  for (uint32_t v : map_) im.set(v);
  return im;
}

Quotient quotient(const GroupPtr& g, const DynBitset& normal_bits, uint64_t cap) {
  require(g != nullptr, ErrorCode::InvalidArgument, "null group");
  require(normal_bits.size() == g->size(), ErrorCode::InvalidArgument, "bitset size mismatch");
  greedy_generators(*g, normal_bits);  // validates closure
  require(is_normal(*g, normal_bits), ErrorCode::NotNormal, "subgroup is not normal");

  const auto nmem = normal_bits.members();
  std::vector<uint32_t> rep_of(g->size(), UINT32_MAX);
  for (uint32_t i = 0; i < g->size(); ++i) {
    if (rep_of[i] != UINT32_MAX) continue;
    // ascending scan: the first unassigned element is the minimum of its coset
    for (uint32_t n : nmem) rep_of[g->mul(n, i)] = i;
  }
  auto q = FiniteGroup::coset_group(g, normal_bits, rep_of, cap);
  require(q->order() * normal_bits.count() == g->order(), ErrorCode::Internal,
          "coset count mismatch");
  std::vector<uint32_t> table(g->size());
  std::vector<uint32_t> coset_to_idx(g->size(), UINT32_MAX);
  for (uint32_t qi = 0; qi < q->size(); ++qi) coset_to_idx[q->element(qi).data[0]] = qi;
  for (uint32_t i = 0; i < g->size(); ++i) {
    table[i] = coset_to_idx[rep_of[i]];
    require(table[i] != UINT32_MAX, ErrorCode::Internal, "coset missing from quotient");
  }
  GroupHom proj(g, q, std::move(table), true);
  return {std::move(q), std::move(proj)};
}

}  // namespace cdim
