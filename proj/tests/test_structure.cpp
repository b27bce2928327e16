#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "cdim/constructions.hpp"
#include "cdim/lattice.hpp"
#include "cdim/structure.hpp"

using namespace cdim;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

DynBitset full_bits(const FiniteGroup& g) {
  DynBitset b(g.size());
  for (uint32_t i = 0; i < g.size(); ++i) b.set(i);
  return b;
}

// closure computed with a raw worklist over std::set, independent of the library path
DynBitset brute_closure(const FiniteGroup& g, std::set<uint32_t> cur) {
  cur.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<uint32_t> mem(cur.begin(), cur.end());
    for (uint32_t a : mem)
      for (uint32_t b : mem)
        if (cur.insert(g.mul(a, b)).second) grew = true;
  }
  DynBitset out(g.size());
  for (uint32_t x : cur) out.set(x);
  return out;
}

DynBitset brute_derived(const FiniteGroup& g, const DynBitset& h) {
  std::set<uint32_t> comms;
  auto mem = h.members();
  for (uint32_t a : mem)
    for (uint32_t b : mem)
      comms.insert(g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)));
  return brute_closure(g, std::move(comms));
}

DynBitset brute_normalizer(const FiniteGroup& g, const DynBitset& h) {
  DynBitset out(g.size());
  for (uint32_t u = 0; u < g.size(); ++u) {
    bool ok = true;
    h.for_each([&](uint32_t x) {
      if (!h.test(g.conj(u, x))) ok = false;
    });
    if (ok) out.set(u);
  }
  return out;
}

std::vector<DynBitset> brute_minimal_normals(const FiniteGroup& g) {
  std::vector<DynBitset> normals;
  for (const auto& h : all_subgroups(g))
    if (h.count() > 1 && is_normal(g, h)) normals.push_back(h);
  std::vector<DynBitset> out;
  for (const auto& n : normals) {
    bool minimal = true;
    for (const auto& m : normals)
      if (m != n && m.is_subset_of(n)) minimal = false;
    if (minimal) out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const DynBitset& a, const DynBitset& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.lex_less(b);
  });
  return out;
}

GroupPtr psl2_7() {
  auto g = FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 5, 6, 0, 7}),
                                   make_permutation({7, 6, 3, 2, 5, 4, 1, 0})});
  REQUIRE(g->order() == 168);
  return g;
}

// left multiplication as a faithful transitive permutation action
GroupPtr regular_perm(const GroupPtr& h) {
  std::vector<GroupElement> gens;
  for (uint32_t gi : h->generator_indices()) {
    std::vector<uint32_t> row(h->size());
    for (uint32_t x = 0; x < h->size(); ++x) row[x] = h->mul(gi, x);
    gens.push_back(make_permutation(std::move(row)));
  }
  auto g = FiniteGroup::enumerate(std::move(gens));
  REQUIRE(g->order() == h->order());
  return g;
}

bool transitive(const FiniteGroup& g, uint32_t n) {
  REQUIRE(g.degree() == n);
  std::vector<char> seen(n, 0);
  std::vector<uint32_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    uint32_t pt = stack.back();
    stack.pop_back();
    for (uint32_t gi : g.generator_indices()) {
      uint32_t img = g.element(gi).data[pt];
      if (!seen[img]) {
        seen[img] = 1;
        stack.push_back(img);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::vector<uint32_t> orders_of(const std::vector<DynBitset>& v) {
  std::vector<uint32_t> out;
  for (const auto& b : v) out.push_back(b.count());
  return out;
}

}  // namespace

TEST_CASE("derived series against the raw definition") {
  for (const auto& g : {symmetric_group(3), symmetric_group(4), special_linear_2(3),
                        alternating_group(4), dihedral_group(6), quaternion_group(),
                        extraspecial_group(1, 3), alternating_group(5)}) {
    auto ds = derived_series(*g);
    CHECK(ds.front() == full_bits(*g));
    for (size_t i = 0; i + 1 < ds.size(); ++i) {
      CHECK(brute_derived(*g, ds[i]) == ds[i + 1]);
      CHECK(ds[i + 1].is_subset_of(ds[i]));
      CHECK(ds[i + 1].count() < ds[i].count());
    }
    CHECK(brute_derived(*g, ds.back()) == ds.back());
    CHECK(perfect_core(*g) == ds.back());
    CHECK(is_soluble(*g) == (ds.back().count() == 1));
  }
  CHECK(orders_of(derived_series(*symmetric_group(4))) ==
        std::vector<uint32_t>{24, 12, 4, 1});
  CHECK(orders_of(derived_series(*special_linear_2(3))) ==
        std::vector<uint32_t>{24, 8, 2, 1});
  CHECK(orders_of(derived_series(*extraspecial_group(1, 3))) ==
        std::vector<uint32_t>{27, 3, 1});
  CHECK(orders_of(derived_series(*alternating_group(5))) == std::vector<uint32_t>{60});
  CHECK(is_soluble(*trivial_group()));
  CHECK(!is_soluble(*symmetric_group(5)));

  CHECK(is_nilpotent(*quaternion_group()));
  CHECK(is_nilpotent(*cyclic_group(12)));
  CHECK(is_nilpotent(*extraspecial_group(1, 3)));
  CHECK(!is_nilpotent(*symmetric_group(3)));
  CHECK(!is_nilpotent(*alternating_group(4)));
  CHECK(code_of([&] {
          auto s3 = symmetric_group(3);
          DynBitset open(s3->size());
          open.set(0);
          open.set(s3->index_of(make_permutation({0, 2, 1})));
          open.set(s3->index_of(make_permutation({1, 0, 2})));
          commutator_bits(*s3, open, full_bits(*s3));
        }) == ErrorCode::NotSubgroup);
}

TEST_CASE("normalizers against the double loop") {
  for (const auto& g : {symmetric_group(4), special_linear_2(3), dihedral_group(6)}) {
    for (const auto& h : all_subgroups(*g))
      CHECK(normalizer_bits(*g, h) == brute_normalizer(*g, h));
  }
  auto s3 = symmetric_group(3);
  auto refl = subgroup_closure(*s3, {s3->index_of(make_permutation({1, 0, 2}))});
  CHECK(normalizer_bits(*s3, refl) == refl);
}

TEST_CASE("sylow subgroups and p-cores") {
  struct Case {
    GroupPtr g;
    std::vector<std::pair<uint32_t, std::pair<uint32_t, uint32_t>>> per_p;  // p -> (sylow, core)
  };
  std::vector<Case> cases;
  cases.push_back({symmetric_group(3), {{2, {2, 1}}, {3, {3, 3}}}});
  cases.push_back({symmetric_group(4), {{2, {8, 4}}, {3, {3, 1}}}});
  cases.push_back({special_linear_2(3), {{2, {8, 8}}, {3, {3, 1}}}});
  cases.push_back({dihedral_group(6), {{2, {4, 2}}, {3, {3, 3}}}});
  cases.push_back({alternating_group(5), {{2, {4, 1}}, {3, {3, 1}}, {5, {5, 1}}}});
  cases.push_back({extraspecial_group(1, 3), {{3, {27, 27}}}});
  for (const auto& c : cases) {
    const auto& g = *c.g;
    for (const auto& [p, expect] : c.per_p) {
      DynBitset syl = sylow(g, p);
      CHECK(is_subgroup(g, syl));
      CHECK(syl.count() == expect.first);
      uint64_t rest = g.order() / syl.count();
      CHECK(rest % p != 0);
      bool all_p_power = true;
      syl.for_each([&](uint32_t x) {
        uint32_t o = g.element_order(x);
        while (o % p == 0) o /= p;
        if (o != 1) all_p_power = false;
      });
      CHECK(all_p_power);

      DynBitset core = o_p(g, p);
      CHECK(core.count() == expect.second);
      CHECK(is_normal(g, core));
      CHECK(core.is_subset_of(syl));
      // the normal core of the Sylow subgroup, element by element
      DynBitset brute(g.size());
      syl.for_each([&](uint32_t x) {
        bool in = true;
        for (uint32_t u = 0; u < g.size() && in; ++u)
          if (!syl.test(g.conj(u, x))) in = false;
        if (in) brute.set(x);
      });
      CHECK(core == brute);
    }
  }
  CHECK(sylow(*symmetric_group(3), 5).count() == 1);
  CHECK(code_of([] { sylow(*symmetric_group(3), 6); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fitting subgroup is the largest normal nilpotent subgroup") {
  std::vector<std::pair<GroupPtr, uint32_t>> cases = {
      {symmetric_group(3), 3},     {symmetric_group(4), 4},
      {special_linear_2(3), 8},    {alternating_group(4), 4},
      {dihedral_group(6), 6},      {alternating_group(5), 1},
      {quaternion_group(), 8},     {cyclic_group(12), 12},
      {extraspecial_group(1, 3), 27}};
  for (const auto& [g, order] : cases) {
    DynBitset f = fitting(*g);
    CHECK(f.count() == order);
    CHECK(is_normal(*g, f));
    CHECK(is_nilpotent_set(*g, f));
    for (const auto& h : all_subgroups(*g))
      if (is_normal(*g, h) && is_nilpotent_set(*g, h)) CHECK(h.is_subset_of(f));
  }
}

TEST_CASE("fitting series climbs to the soluble radical") {
  CHECK(orders_of(fitting_series(symmetric_group(4))) == std::vector<uint32_t>{4, 12, 24});
  CHECK(orders_of(fitting_series(special_linear_2(3))) == std::vector<uint32_t>{8, 24});
  CHECK(orders_of(fitting_series(alternating_group(5))) == std::vector<uint32_t>{1});
  CHECK(orders_of(fitting_series(dihedral_group(6))) == std::vector<uint32_t>{6, 12});
  CHECK(orders_of(fitting_series(trivial_group())) == std::vector<uint32_t>{1});

  auto a5c6 = direct_product(alternating_group(5), cyclic_group(6));
  for (const auto& g : {symmetric_group(4), special_linear_2(3), symmetric_group(5),
                        alternating_group(5), dihedral_group(6), a5c6}) {
    auto fs = fitting_series(g);
    CHECK(fs.front() == fitting(*g));
    for (size_t i = 0; i < fs.size(); ++i) {
      CHECK(is_normal(*g, fs[i]));
      if (i + 1 < fs.size()) {
        CHECK(fs[i].is_subset_of(fs[i + 1]));
        CHECK(fs[i].count() < fs[i + 1].count());
        auto q = quotient(g, fs[i]);
        DynBitset image(q.group->size());
        fs[i + 1].for_each([&](uint32_t x) { image.set(q.projection(x)); });
        CHECK(is_nilpotent_set(*q.group, image));
      }
    }
    CHECK(fs.back() == soluble_radical(g));
    if (is_soluble(*g)) CHECK(fs.back().count() == g->size());
  }

  CHECK(soluble_radical(symmetric_group(4)).count() == 24);
  CHECK(soluble_radical(alternating_group(5)).count() == 1);
  CHECK(soluble_radical(symmetric_group(5)).count() == 1);
  CHECK(soluble_radical(a5c6).count() == 6);
}

TEST_CASE("minimal normal subgroups and the socle") {
  for (const auto& g : {symmetric_group(3), symmetric_group(4), special_linear_2(3),
                        elementary_abelian_group(2, 2), quaternion_group(),
                        dihedral_group(4), dihedral_group(6), alternating_group(4),
                        cyclic_group(12), extraspecial_group(1, 3), alternating_group(5)}) {
    auto mins = minimal_normal_subgroups(*g);
    CHECK(mins == brute_minimal_normals(*g));
    DynBitset s = socle(*g);
    for (const auto& m : mins) CHECK(m.is_subset_of(s));
    CHECK(is_normal(*g, s));
  }
  CHECK(socle(*symmetric_group(3)).count() == 3);
  CHECK(socle(*extraspecial_group(1, 3)) == center_bits(*extraspecial_group(1, 3)));
  CHECK(socle(*symmetric_group(4)).count() == 4);
  CHECK(minimal_normal_subgroups(*elementary_abelian_group(2, 2)).size() == 3);
  CHECK(minimal_normal_subgroups(*alternating_group(5)).size() == 1);
  CHECK(minimal_normal_subgroups(*trivial_group()).empty());

  auto a5a5 = direct_product(alternating_group(5), alternating_group(5));
  auto mins = minimal_normal_subgroups(*a5a5);
  REQUIRE(mins.size() == 2);
  CHECK(mins[0].count() == 60);
  CHECK(mins[1].count() == 60);
  CHECK(socle(*a5a5).count() == 3600);
}

TEST_CASE("layer, components, and the generalized fitting subgroup") {
  // soluble groups are layer-free
  for (const auto& g : {symmetric_group(4), special_linear_2(3), quaternion_group(),
                        dihedral_group(6), extraspecial_group(1, 3)}) {
    CHECK(layer(g).count() == 1);
    CHECK(components(g).empty());
    CHECK(generalized_fitting(g) == fitting(*g));
  }

  auto a5 = alternating_group(5);
  CHECK(layer(a5) == full_bits(*a5));
  REQUIRE(components(a5).size() == 1);
  CHECK(components(a5).front() == full_bits(*a5));

  auto a5c6 = direct_product(a5, cyclic_group(6));
  CHECK(layer(a5c6).count() == 60);
  CHECK(generalized_fitting(a5c6).count() == 360);

  auto a5s3 = direct_product(a5, symmetric_group(3));
  CHECK(layer(a5s3).count() == 60);
  CHECK(generalized_fitting(a5s3).count() == 180);

  auto a5a5 = direct_product(a5, a5);
  auto comps = components(a5a5);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].count() == 60);
  CHECK(comps[1].count() == 60);
  CHECK((comps[0] & comps[1]).count() == 1);
  CHECK(layer(a5a5) == full_bits(*a5a5));

  // a perfect central extension is a single component
  auto sl25 = special_linear_2(5);
  CHECK(layer(sl25) == full_bits(*sl25));
  REQUIRE(components(sl25).size() == 1);

  // central product: two quasisimple components sharing the centre
  auto cp = central_product(sl25, sl25);
  REQUIRE(cp->order() == 7200);
  auto cpc = components(cp);
  REQUIRE(cpc.size() == 2);
  CHECK(cpc[0].count() == 120);
  CHECK(cpc[1].count() == 120);
  CHECK((cpc[0] & cpc[1]) == center_bits(*cp));
  for (const auto& c : cpc) {
    CHECK(is_normal(*cp, c));
    CHECK(commutator_bits(*cp, c, c) == c);
  }
  CHECK(layer(cp) == full_bits(*cp));
  CHECK(generalized_fitting(cp) == full_bits(*cp));

  // the defining property of F*
  for (const auto& g : {symmetric_group(4), special_linear_2(3), a5, a5c6, a5s3, sl25,
                        central_product(special_linear_2(3), special_linear_2(3))}) {
    DynBitset fstar = generalized_fitting(g);
    CHECK(centralizer_set(*g, fstar).is_subset_of(fstar));
  }
}

TEST_CASE("extraspecial-symplectic quotient fingerprint") {
  auto x = symplectic_on_extraspecial(1, 3);
  REQUIRE(x->order() == 648);
  DynBitset f = fitting(*x);
  CHECK(f.count() == 27);
  CHECK(layer(x).count() == 1);
  CHECK(generalized_fitting(x) == f);
  CHECK(centralizer_set(*x, f).is_subset_of(f));
  auto q = quotient(x, f);
  CHECK(q.group->size() == 24);
  CHECK(derived_series(*q.group)[1].count() == 8);
  CHECK(center_bits(*q.group).count() == 2);
  auto cf = composition_factors(x);
  CHECK(cf.size() == 7);
  for (const auto& s : cf) CHECK(s.family == "cyclic");
}

TEST_CASE("composition factors and the lambda invariant") {
  auto names = [](const GroupPtr& g) {
    std::vector<std::string> out;
    for (const auto& f : composition_factors(g)) out.push_back(f.name);
    return out;
  };
  CHECK(names(symmetric_group(4)) == std::vector<std::string>{"C2", "C2", "C2", "C3"});
  CHECK(names(special_linear_2(3)) == std::vector<std::string>{"C2", "C2", "C2", "C3"});
  CHECK(names(cyclic_group(12)) == std::vector<std::string>{"C2", "C2", "C3"});
  CHECK(names(trivial_group()).empty());

  auto a5 = alternating_group(5);
  auto cf = composition_factors(a5);
  REQUIRE(cf.size() == 1);
  CHECK(cf[0].order == 60);
  CHECK(cf[0].family == "alternating");
  CHECK(cf[0].lambda == 1);

  auto s5 = composition_factors(symmetric_group(5));
  REQUIRE(s5.size() == 2);
  CHECK(s5[0].order == 2);
  CHECK(s5[1].order == 60);

  CHECK(lambda_sum(symmetric_group(4)) == 0);
  CHECK(lambda_sum(a5) == 1);
  CHECK(lambda_sum(special_linear_2(5)) == 1);
  CHECK(lambda_sum(psl2_7()) == 1);
  CHECK(lambda_sum(alternating_group(6)) == 1);
  CHECK(lambda_sum(alternating_group(7)) == 7);
  CHECK(lambda_sum(direct_product(alternating_group(5), alternating_group(5))) == 2);
  CHECK(lambda_sum(direct_product(alternating_group(5), symmetric_group(3))) == 1);
}

TEST_CASE("element order statistics split the ambiguous order") {
  auto a8 = alternating_group(8);
  auto cf = composition_factors(a8);
  REQUIRE(cf.size() == 1);
  CHECK(cf[0].order == 20160);
  CHECK(cf[0].family == "alternating");
  CHECK(cf[0].name == "Alt(8)=PSL(4,2)");
  CHECK(cf[0].lambda == 3);
  CHECK(lambda_sum(symmetric_group(8)) == 3);
}

TEST_CASE("lambda stays under five quarters of the degree on transitive groups") {
  std::vector<std::pair<uint32_t, GroupPtr>> catalog;
  auto add = [&](uint32_t n, GroupPtr g) {
    REQUIRE(transitive(*g, n));
    catalog.emplace_back(n, std::move(g));
  };
  add(3, cyclic_group(3));
  add(3, symmetric_group(3));
  add(4, cyclic_group(4));
  add(4, FiniteGroup::enumerate({make_permutation({1, 0, 3, 2}), make_permutation({2, 3, 0, 1})}));
  add(4, dihedral_group(4));
  add(4, alternating_group(4));
  add(4, symmetric_group(4));
  add(5, cyclic_group(5));
  add(5, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 0}), make_permutation({0, 4, 3, 2, 1})}));
  add(5, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 0}), make_permutation({0, 2, 4, 1, 3})}));
  add(5, alternating_group(5));
  add(5, symmetric_group(5));
  add(6, cyclic_group(6));
  add(6, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 5, 0}), make_permutation({0, 5, 4, 3, 2, 1})}));
  add(6, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 0, 5}), make_permutation({5, 4, 2, 3, 1, 0})}));
  add(6, alternating_group(6));
  add(6, symmetric_group(6));
  add(7, cyclic_group(7));
  add(7, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 5, 6, 0}), make_permutation({0, 6, 5, 4, 3, 2, 1})}));
  add(7, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 5, 6, 0}), make_permutation({0, 2, 4, 6, 1, 3, 5})}));
  add(7, FiniteGroup::enumerate({make_permutation({1, 2, 3, 4, 5, 6, 0}), make_permutation({0, 3, 6, 2, 5, 1, 4})}));
  add(7, alternating_group(7));
  add(7, symmetric_group(7));
  add(8, cyclic_group(8));
  add(8, dihedral_group(8));
  add(8, regular_perm(quaternion_group()));
  add(8, psl2_7());
  {
    auto gl32 = FiniteGroup::enumerate(
        {make_matrix(3, 2, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
         make_matrix(3, 2, {0, 0, 1, 1, 0, 0, 0, 1, 0})});
    REQUIRE(gl32->order() == 168);
    add(8, affine_group(gl32));
  }
  add(8, alternating_group(8));
  add(8, symmetric_group(8));

  REQUIRE(catalog.size() >= 25);
  for (const auto& [n, g] : catalog) {
    uint32_t lv = lambda_sum(g);
    CHECK(4 * lv < 5 * n);
  }
  // the order-60 group on five points really is the alternating one, and the order-20
  // one is soluble
  CHECK(lambda_sum(catalog[10].second) == 1);
  CHECK(lambda_sum(catalog[9].second) == 0);
}

TEST_CASE("nonabelian factor count stays under five times the chain length") {
  std::vector<GroupPtr> catalog = {symmetric_group(3),
                                   dihedral_group(4),
                                   quaternion_group(),
                                   alternating_group(4),
                                   symmetric_group(4),
                                   special_linear_2(3),
                                   extraspecial_group(1, 3),
                                   dihedral_group(6),
                                   alternating_group(5),
                                   special_linear_2(5),
                                   psl2_7(),
                                   symplectic_on_extraspecial(1, 3),
                                   central_product(special_linear_2(3), special_linear_2(3))};
  for (const auto& g : catalog) {
    REQUIRE(!g->is_abelian());
    uint32_t nonab = 0;
    for (const auto& f : composition_factors(g))
      if (f.family != "cyclic") ++nonab;
    uint32_t cd = c_dimension(*g).value;
    CHECK(cd >= 1);
    CHECK(nonab < 5 * cd);
  }
}

TEST_CASE("p-rank by exhaustive growth") {
  auto brute = [](const FiniteGroup& g, uint32_t p) {
    uint32_t best = 0;
    for (const auto& h : all_subgroups(g)) {
      bool elem = true;
      h.for_each([&](uint32_t x) {
        if (x != 0 && g.element_order(x) != p) elem = false;
      });
      if (!elem || !is_nilpotent_set(g, h)) continue;
      auto mem = h.members();
      bool ab = true;
      for (uint32_t a : mem)
        for (uint32_t b : mem)
          if (!g.commute(a, b)) ab = false;
      if (!ab) continue;
      uint32_t rank = 0;
      for (uint32_t c = h.count(); c > 1; c /= p) ++rank;
      best = std::max(best, rank);
    }
    return best;
  };
  for (const auto& g : {symmetric_group(4), quaternion_group(), dihedral_group(4),
                        alternating_group(5), cyclic_group(12),
                        elementary_abelian_group(2, 3), extraspecial_group(1, 3)}) {
    for (uint32_t p : {2u, 3u, 5u}) CHECK(p_rank(*g, p) == brute(*g, p));
  }
  CHECK(p_rank(*elementary_abelian_group(2, 2), 2) == 2);
  CHECK(p_rank(*quaternion_group(), 2) == 1);
  CHECK(p_rank(*symmetric_group(4), 2) == 2);
  CHECK(p_rank(*extraspecial_group(1, 3), 3) == 2);
  CHECK(p_rank(*symmetric_group(4), 5) == 0);
  CHECK(code_of([] { p_rank(*symmetric_group(3), 4); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("minimal faithful degree by exhaustive stabilizer families") {
  CHECK(min_faithful_degree(trivial_group()) == 1);
  CHECK(min_faithful_degree(cyclic_group(6)) == 5);
  CHECK(min_faithful_degree(quaternion_group()) == 8);
  CHECK(min_faithful_degree(alternating_group(5)) == 5);
  CHECK(min_faithful_degree(elementary_abelian_group(2, 2)) == 4);
  CHECK(min_faithful_degree(symmetric_group(4)) == 4);
  CHECK(min_faithful_degree(dihedral_group(4)) == 4);
  CHECK(min_faithful_degree(cyclic_group(12)) == 7);
  CHECK(min_faithful_degree(psl2_7()) == 7);

  // additive over direct products of simple factors
  struct Pair {
    GroupPtr a, b;
    uint32_t mu_a, mu_b;
  };
  std::vector<Pair> pairs = {{cyclic_group(2), cyclic_group(3), 2, 3},
                             {cyclic_group(2), cyclic_group(2), 2, 2},
                             {cyclic_group(3), cyclic_group(5), 3, 5},
                             {cyclic_group(5), cyclic_group(5), 5, 5},
                             {cyclic_group(2), cyclic_group(7), 2, 7},
                             {alternating_group(5), cyclic_group(2), 5, 2},
                             {alternating_group(5), cyclic_group(3), 5, 3}};
  for (const auto& pr : pairs) {
    CHECK(min_faithful_degree(pr.a) == pr.mu_a);
    CHECK(min_faithful_degree(pr.b) == pr.mu_b);
    CHECK(min_faithful_degree(direct_product(pr.a, pr.b)) == pr.mu_a + pr.mu_b);
  }

  // degree dominates lambda on the simple groups within the cap
  CHECK(min_faithful_degree(alternating_group(5)) >= lambda_sum(alternating_group(5)));
  CHECK(min_faithful_degree(psl2_7()) >= lambda_sum(psl2_7()));

  CHECK(code_of([] {
          min_faithful_degree(central_product(special_linear_2(3), special_linear_2(3)));
        }) == ErrorCode::CapExceeded);
  CHECK(code_of([] { min_faithful_degree(alternating_group(5), 59); }) ==
        ErrorCode::CapExceeded);
}
