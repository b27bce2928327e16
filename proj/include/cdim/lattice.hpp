#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdim/group.hpp"
#include "cdim/subgroup.hpp"

namespace cdim {

// C_G(X): everything commuting with each listed element.
DynBitset centralizer(const FiniteGroup& g, const std::vector<uint32_t>& xs);
DynBitset centralizer_set(const FiniteGroup& g, const DynBitset& xs);

struct LatticeNode {
  DynBitset bits;
  uint32_t order = 0;
};

// Meet-closure of {G} u {C_G(x) : x in G}. Nodes are sorted by (order, word-lex),
// so ids are deterministic; edges are Hasse covers (sub, super).
class CentralizerLattice {
 public:
  static constexpr size_t kDefaultNodeBudget = 50000;

  const std::vector<LatticeNode>& nodes() const { return nodes_; }
  const std::vector<std::pair<uint32_t, uint32_t>>& edges() const { return edges_; }
  uint32_t top() const { return top_; }
  uint32_t bottom() const { return bottom_; }

  std::optional<uint32_t> find(const DynBitset& bits) const;

  friend CentralizerLattice centralizer_lattice(const FiniteGroup& g, size_t node_budget);

 private:
  std::vector<LatticeNode> nodes_;
  std::vector<std::pair<uint32_t, uint32_t>> edges_;
  uint32_t top_ = 0;
  uint32_t bottom_ = 0;
};

CentralizerLattice centralizer_lattice(
    const FiniteGroup& g, size_t node_budget = CentralizerLattice::kDefaultNodeBudget);

// Y_0 > ... > Y_k with C_G(Y_0) < ... < C_G(Y_k); length() counts strict inclusions.
struct ChainWitness {
  std::vector<DynBitset> ys;
  std::vector<DynBitset> cs;
  uint32_t length() const { return ys.empty() ? 0 : uint32_t(ys.size()) - 1; }
};

struct CdimResult {
  uint32_t value = 0;
  ChainWitness witness;
  std::vector<uint32_t> chain_nodes;  // lattice ids, bottom to top
};

CdimResult c_dimension(const CentralizerLattice& lat, const FiniteGroup& g);
CdimResult c_dimension(const FiniteGroup& g,
                       size_t node_budget = CentralizerLattice::kDefaultNodeBudget);

bool verify_chain(const FiniteGroup& g, const ChainWitness& w);

// 2*Omega(|G/V|) for abelian normal V, halved when V is central.
uint32_t cdim_upper_bound_semidirect(const FiniteGroup& g, const DynBitset& v);

// E = E_0 > E_1 > ... > E_n = 1, each of index p, with C_Q(E_i) strictly increasing.
struct KhukhroChain {
  std::vector<DynBitset> subgroups;  // over e's indices
  std::vector<DynBitset> fixed;      // over q's indices
};

// gen_action[i] is the permutation of q's indices induced by e's i-th generator;
// the action must be faithful and by automorphisms, q nilpotent and coprime to e.
KhukhroChain khukhro_chain(const FiniteGroup& e, const FiniteGroup& q,
                           const std::vector<std::vector<uint32_t>>& gen_action);

}  // namespace cdim
