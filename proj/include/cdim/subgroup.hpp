#pragma once

#include <vector>

#include "cdim/group.hpp"

namespace cdim {

// Subgroups of an enumerated group are membership bitsets over its element indices.
// Closure is BFS over right multiplication by the seeds; identity is always included.
DynBitset subgroup_closure(const FiniteGroup& g, const std::vector<uint32_t>& seeds);

// True iff bits contains the identity and is closed under multiplication. Quadratic in
// the subset size; meant for asserts on small sets.
bool is_subgroup(const FiniteGroup& g, const DynBitset& bits);

// Deterministic small generating set: repeatedly adjoin the smallest uncovered index.
// Error(NotSubgroup) if the closure escapes bits.
std::vector<uint32_t> greedy_generators(const FiniteGroup& g, const DynBitset& bits);

bool is_normal(const FiniteGroup& g, const DynBitset& bits);
DynBitset conjugate_subgroup(const FiniteGroup& g, const DynBitset& bits, uint32_t c);
DynBitset normal_closure(const FiniteGroup& g, const std::vector<uint32_t>& seeds);

DynBitset center_bits(const FiniteGroup& g);

// [A, B] for subgroups given as bitsets; Error(NotSubgroup) if either set is not closed
DynBitset commutator_bits(const FiniteGroup& g, const DynBitset& abits,
                          const DynBitset& bbits);

// lower central series of the subgroup reaches the identity
bool is_nilpotent_set(const FiniteGroup& g, const DynBitset& bits);

// every subgroup, ascending by (order, membership words); exponential, small groups only
std::vector<DynBitset> all_subgroups(const FiniteGroup& g);

// a longest strictly descending chain g = s_0 > s_1 > ... > s_l = 1 through the full
// subgroup lattice; among longest chains, each step picks the (order, lex)-least next
std::vector<DynBitset> longest_subgroup_chain(const FiniteGroup& g);

// Subgroup as a standalone group; to_parent maps its indices into the parent.
struct PromotedGroup {
  GroupPtr group;
  std::vector<uint32_t> to_parent;
};
PromotedGroup promote(const GroupPtr& parent, const DynBitset& bits);

// Verified homomorphism given as a full index table.
class GroupHom {
 public:
  GroupHom(GroupPtr dom, GroupPtr cod, std::vector<uint32_t> map, bool verify = true);

  const GroupPtr& domain() const { return dom_; }
  const GroupPtr& codomain() const { return cod_; }
  uint32_t operator()(uint32_t i) const { return map_[i]; }
  const std::vector<uint32_t>& table() const { return map_; }

  DynBitset kernel() const;
  DynBitset image() const;

 private:
  GroupPtr dom_;
  GroupPtr cod_;
  std::vector<uint32_t> map_;
};

struct Quotient {
  GroupPtr group;
  GroupHom projection;
};

// Quotient by a normal subgroup, with the canonical projection. Coset representatives
// are the minimal element indices, so the image of the identity is always index 0.
Quotient quotient(const GroupPtr& g, const DynBitset& normal_bits,
                  uint64_t cap = FiniteGroup::kDefaultEnumCap);

}  // namespace cdim
