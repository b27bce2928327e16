#pragma once

#include <string>
#include <vector>

#include "cdim/subgroup.hpp"

namespace cdim {

// G = D_0 >= D_1 >= ... with D_{i+1} = [D_i, D_i], listed until stationary; the last
// entry is the perfect core.
std::vector<DynBitset> derived_series(const FiniteGroup& g);
DynBitset perfect_core(const FiniteGroup& g);
bool is_soluble(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);

DynBitset normalizer_bits(const FiniteGroup& g, const DynBitset& bits);

// Sylow p-subgroup by normalizer extension; trivial when p does not divide the order.
DynBitset sylow(const FiniteGroup& g, uint32_t p);
// largest normal p-subgroup = normal core of a Sylow p-subgroup
DynBitset o_p(const FiniteGroup& g, uint32_t p);

DynBitset fitting(const FiniteGroup& g);
// F_1 <= F_2 <= ... until the quotient has a trivial Fitting subgroup; the last term
// equals the soluble radical
std::vector<DynBitset> fitting_series(const GroupPtr& g);
DynBitset soluble_radical(const GroupPtr& g);

// minimal elements among normal closures of single conjugacy classes, sorted by
// (order, membership words)
std::vector<DynBitset> minimal_normal_subgroups(const FiniteGroup& g);
DynBitset socle(const FiniteGroup& g);

// E(G), computed as the perfect core of the centralizer of F(G), and its decomposition
// into quasisimple components. Error(LayerDecompositionFailed) if any factor fails the
// quasisimplicity checks or the factors do not generate the layer.
DynBitset layer(const GroupPtr& g);
std::vector<DynBitset> components(const GroupPtr& g);
DynBitset generalized_fitting(const GroupPtr& g);

struct SimpleId {
  uint64_t order = 0;
  std::string name;
  std::string family;  // cyclic | alternating | lie | sporadic
  uint32_t lambda = 0;
};

// Jordan-Hoelder factors via chief series refinement. Nonabelian factors are matched
// against the bundled table by order and, where the order is ambiguous, by element
// order statistics; Error(UnrecognizedSimpleGroup) when no row matches.
std::vector<SimpleId> composition_factors(const GroupPtr& g);
// sum of table lambda values over the nonabelian composition factors
uint32_t lambda_sum(const GroupPtr& g);

// largest rank of an elementary abelian p-subgroup, exhaustive
uint32_t p_rank(const FiniteGroup& g, uint32_t p);

// minimal faithful permutation degree over families of point stabilizers;
// Error(CapExceeded) above the cap since the subgroup sweep is exponential
uint32_t min_faithful_degree(const GroupPtr& g, uint32_t cap = 200);

}  // namespace cdim
