#pragma once

#include "cdim/group.hpp"
#include "cdim/subgroup.hpp"

namespace cdim {

GroupPtr trivial_group();
GroupPtr cyclic_group(uint32_t n);
GroupPtr symmetric_group(uint32_t n);
GroupPtr alternating_group(uint32_t n);
GroupPtr dihedral_group(uint32_t n);  // order 2n, n >= 3
GroupPtr quaternion_group();          // order 8, 2x2 matrices mod 3
GroupPtr special_linear_2(uint32_t p);

// F_p^rank as a permutation group on rank blocks of p points
GroupPtr elementary_abelian_group(uint32_t p, uint32_t rank);

// Sp_{2n}(r) on column vectors, generated by symplectic transvections
// (n = 1 uses the classical two-generator presentation of SL_2(r))
GroupPtr symplectic_group(uint32_t n, uint32_t r);

// extraspecial group of order r^{2n+1} and exponent r (r odd), realized as
// unitriangular (n+2)x(n+2) matrices over F_r; payload coordinates (a, b, c) sit in
// row 0, the last column, and the corner
GroupPtr extraspecial_group(uint32_t n, uint32_t r);

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

// central product over identified cyclic centers: (A x B) / <(z_A, z_B^{-1})>.
// Error(OrderMismatch) if |Z(A)| != |Z(B)|, Error(InvalidArgument) if a center is
// not cyclic.
GroupPtr central_product(const GroupPtr& a, const GroupPtr& b);

// index tables on R of the automorphisms induced by each generator of Sp
std::vector<std::vector<uint32_t>> symplectic_action_tables(const GroupPtr& r_grp,
                                                            const GroupPtr& sp);
// X_{n,r} = R ⋊ Sp as a pair-backend group
GroupPtr symplectic_on_extraspecial(uint32_t n, uint32_t r);

// V ⋊ M on p^dim affine points for a matrix group M over F_p; the first dim
// generators are the basis translations
GroupPtr affine_group(const GroupPtr& m, uint64_t cap = FiniteGroup::kDefaultEnumCap);

// automorphism table of the coordinate relabeling sigma on F_p^rank
std::vector<uint32_t> module_coordinate_auto(const GroupPtr& v, uint32_t p,
                                             const std::vector<uint32_t>& sigma);

// V ⋊ H for V = ⊕_i F_p[H/H_i] along a longest subgroup chain H = H_0 > ... > H_l = 1
struct SharpnessGroup {
  GroupPtr group;
  uint32_t chain_length = 0;
  std::vector<uint64_t> chain_orders;
  uint32_t module_rank = 0;
};
SharpnessGroup sharpness_group(const GroupPtr& h, uint32_t p);

// the H-module part alone: permutation action of h on the cosets of each chain member,
// summed; returns the coordinate relabeling of each generator of h
struct CosetModule {
  uint32_t rank = 0;
  std::vector<std::vector<uint32_t>> gen_sigmas;  // one per generator of h
};
CosetModule coset_permutation_module(const GroupPtr& h, const std::vector<DynBitset>& chain);

// monomial action of R and intertwiners for Sp over F_p, p = 1 (mod r)
struct WeilData {
  GroupPtr image;    // <rho(R), lifted Sp generators> inside GL_{r^n}(p)
  GroupPtr r_image;  // <rho(R)> alone
  std::vector<GroupElement> r_gens;
  std::vector<GroupElement> sp_gens;
  uint32_t omega = 0;
};
WeilData weil_representation(uint32_t n, uint32_t r, uint32_t p,
                             uint64_t cap = FiniteGroup::kDefaultEnumCap);

// G_{n,r} over F_p: V ⋊ X_{n,r} as an affine permutation group on p^{r^n} points
GroupPtr counterexample_group(uint32_t n, uint32_t r, uint32_t p,
                              uint64_t cap = FiniteGroup::kDefaultEnumCap);

}  // namespace cdim
