#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>

#include "cdim/constructions.hpp"
#include "cdim/subgroup.hpp"

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

struct Lcg {
  uint64_t s = 0xc0ffee123456789ull;
  uint32_t next(uint32_t bound) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return uint32_t((s >> 33) % bound);
  }
};

}  // namespace

TEST_CASE("basic families have the right orders") {
  CHECK(trivial_group()->order() == 1);
  for (uint32_t n : {1u, 2u, 5u, 12u}) CHECK(cyclic_group(n)->order() == n);
  CHECK(symmetric_group(5)->order() == 120);
  CHECK(alternating_group(3)->order() == 3);
  CHECK(alternating_group(4)->order() == 12);
  CHECK(alternating_group(5)->order() == 60);
  CHECK(alternating_group(6)->order() == 360);
  for (uint32_t n : {3u, 4u, 7u, 10u}) CHECK(dihedral_group(n)->order() == 2 * n);
  CHECK(quaternion_group()->order() == 8);
  for (uint32_t p : {2u, 3u, 5u, 7u})
    CHECK(special_linear_2(p)->order() == uint64_t(p) * (p * p - 1));
  CHECK(elementary_abelian_group(3, 2)->order() == 9);
  CHECK(elementary_abelian_group(2, 5)->order() == 32);
  CHECK(elementary_abelian_group(3, 0)->order() == 1);
}

TEST_CASE("elementary abelian groups have prime exponent") {
  auto v = elementary_abelian_group(3, 3);
  CHECK(v->is_abelian());
  for (uint32_t i = 1; i < v->size(); ++i) CHECK(v->element_order(i) == 3);
}

TEST_CASE("symplectic groups") {
  CHECK(symplectic_group(1, 3)->order() == 24);
  CHECK(symplectic_group(1, 5)->order() == 120);
  auto sp4 = symplectic_group(2, 3);
  CHECK(sp4->order() == 51840);
  // independent check: sampled elements preserve the symplectic form
  auto form = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) {
    uint64_t acc = 0;
    for (uint32_t k = 0; k < 2; ++k) acc += x[k] * y[k + 2] + x[k + 2] * (3 - 1) * y[k];
    return uint32_t(acc % 3);
  };
  Lcg rng;
  for (int t = 0; t < 100; ++t) {
    auto g = sp4->element(rng.next(sp4->size()));
    std::vector<uint32_t> u(4), v(4), gu(4, 0), gv(4, 0);
    for (auto& x : u) x = rng.next(3);
    for (auto& x : v) x = rng.next(3);
    for (uint32_t i = 0; i < 4; ++i)
      for (uint32_t j = 0; j < 4; ++j) {
        gu[i] = (gu[i] + g.data[i * 4 + j] * u[j]) % 3;
        gv[i] = (gv[i] + g.data[i * 4 + j] * v[j]) % 3;
      }
    CHECK(form(gu, gv) == form(u, v));
  }
}

TEST_CASE("extraspecial groups match the coordinate product oracle") {
  for (auto [n, r] : {std::pair<uint32_t, uint32_t>{1, 3}, {2, 3}, {1, 5}}) {
    auto g = extraspecial_group(n, r);
    uint64_t expect = 1;
    for (uint32_t i = 0; i < 2 * n + 1; ++i) expect *= r;
    REQUIRE(g->order() == expect);
    // exponent r
    for (uint32_t i = 1; i < g->size(); ++i) CHECK(g->element_order(i) == r);
    CHECK(center_bits(*g).count() == r);
    const uint32_t d = n + 2;
    auto decode = [&](const GroupElement& e) {
      std::vector<uint32_t> a(n), b(n);
      for (uint32_t i = 0; i < n; ++i) {
        a[i] = e.data[i + 1];
        b[i] = e.data[size_t(i + 1) * d + (n + 1)];
      }
      return std::tuple<std::vector<uint32_t>, std::vector<uint32_t>, uint32_t>{
          a, b, e.data[n + 1]};
    };
    Lcg rng;
    for (int t = 0; t < 200; ++t) {
      uint32_t i = rng.next(g->size());
      uint32_t j = rng.next(g->size());
      auto [a1, b1, c1] = decode(g->element(i));
      auto [a2, b2, c2] = decode(g->element(j));
      auto [a3, b3, c3] = decode(g->element(g->mul(i, j)));
      uint32_t dot = 0;
      for (uint32_t k = 0; k < n; ++k) dot = (dot + a1[k] * b2[k]) % r;
      for (uint32_t k = 0; k < n; ++k) {
        CHECK(a3[k] == (a1[k] + a2[k]) % r);
        CHECK(b3[k] == (b1[k] + b2[k]) % r);
      }
      CHECK(c3 == (c1 + c2 + dot) % r);
    }
  }
}

TEST_CASE("direct products") {
  auto c12 = direct_product(cyclic_group(3), cyclic_group(4));
  CHECK(c12->order() == 12);
  CHECK(c12->is_abelian());
  bool has12 = false;
  for (uint32_t i = 0; i < c12->size(); ++i) has12 |= c12->element_order(i) == 12;
  CHECK(has12);
  auto g = direct_product(symmetric_group(3), cyclic_group(2));
  CHECK(g->order() == 12);
  CHECK_FALSE(g->is_abelian());
}

TEST_CASE("central products glue cyclic centers") {
  auto q8 = quaternion_group();
  auto d8 = dihedral_group(4);
  CHECK(central_product(q8, q8)->order() == 32);
  CHECK(central_product(q8, d8)->order() == 32);
  CHECK(central_product(d8, d8)->order() == 32);
  auto s = special_linear_2(3);
  auto ss = central_product(s, s);
  CHECK(ss->order() == 288);
  CHECK(center_bits(*ss).count() == 2);
  CHECK(central_product(s, q8)->order() == 96);
  auto r13 = extraspecial_group(1, 3);
  auto rr = central_product(r13, r13);
  CHECK(rr->order() == 243);
  for (uint32_t i = 1; i < rr->size(); ++i) CHECK(rr->element_order(i) == 3);
  auto iter3 = central_product(central_product(q8, q8), q8);
  CHECK(iter3->order() == 128);
  CHECK(code_of([&] { central_product(q8, cyclic_group(3)); }) == ErrorCode::OrderMismatch);
  CHECK(code_of([&] { central_product(elementary_abelian_group(2, 2), q8); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("subgroup lattice enumeration and longest chains") {
  CHECK(all_subgroups(*symmetric_group(3)).size() == 6);
  CHECK(all_subgroups(*cyclic_group(4)).size() == 3);
  CHECK(all_subgroups(*quaternion_group()).size() == 6);
  CHECK(longest_subgroup_chain(*cyclic_group(4)).size() == 3);
  CHECK(longest_subgroup_chain(*quaternion_group()).size() == 4);
  auto chain = longest_subgroup_chain(*symmetric_group(3));
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].count() == 6);
  CHECK(chain[1].count() == 2);  // the (order, lex)-least longest chain passes through C2
  CHECK(chain[2].count() == 1);
}

TEST_CASE("symplectic action on extraspecial groups") {
  auto x13 = symplectic_on_extraspecial(1, 3);
  CHECK(x13->order() == 648);
  CHECK_FALSE(x13->is_abelian());
  auto x15 = symplectic_on_extraspecial(1, 5);
  CHECK(x15->order() == 15000);
}

TEST_CASE("affine groups") {
  // {+-1} < GL_1(3) gives the affine group of the line: sym(3)
  auto pm1 = FiniteGroup::enumerate({make_matrix(1, 3, {2})});
  auto aff = affine_group(pm1);
  CHECK(aff->order() == 6);
  CHECK(aff->degree() == 3);

  auto a2 = affine_group(special_linear_2(3));
  CHECK(a2->order() == 9 * 24);
  CHECK(a2->degree() == 9);
  // the translation part is normal
  auto v = subgroup_closure(*a2, {a2->generator_indices()[0], a2->generator_indices()[1]});
  CHECK(v.count() == 9);
  CHECK(is_normal(*a2, v));

  // sampled composition agrees with the affine law (M1, v1)(M2, v2) = (M1 M2, M1 v2 + v1)
  auto decode_pt = [&](uint32_t pt) { return std::pair<uint32_t, uint32_t>{pt % 3, pt / 3}; };
  auto affine_parts = [&](const GroupElement& e) {
    auto [t0, t1] = decode_pt(e.data[0]);
    std::vector<uint32_t> m(4);
    auto [x0, x1] = decode_pt(e.data[1]);  // image of e_0 = point 1
    auto [y0, y1] = decode_pt(e.data[3]);  // image of e_1 = point 3
    m[0] = (x0 + 3 - t0) % 3;
    m[2] = (x1 + 3 - t1) % 3;
    m[1] = (y0 + 3 - t0) % 3;
    m[3] = (y1 + 3 - t1) % 3;
    return std::pair<std::vector<uint32_t>, std::pair<uint32_t, uint32_t>>{m, {t0, t1}};
  };
  Lcg rng;
  for (int t = 0; t < 100; ++t) {
    uint32_t i = rng.next(a2->size());
    uint32_t j = rng.next(a2->size());
    auto [m1, v1] = affine_parts(a2->element(i));
    auto [m2, v2] = affine_parts(a2->element(j));
    auto [mp, vp] = affine_parts(a2->element(a2->mul(i, j)));
    auto mm = mat_mul(m1.data(), m2.data(), 2, 3);
    CHECK(mp == mm);
    CHECK(vp.first == (m1[0] * v2.first + m1[1] * v2.second + v1.first) % 3);
    CHECK(vp.second == (m1[2] * v2.first + m1[3] * v2.second + v1.second) % 3);
  }
}

TEST_CASE("sharpness groups along longest chains") {
  auto s1 = sharpness_group(cyclic_group(2), 3);
  CHECK(s1.chain_length == 1);
  CHECK(s1.module_rank == 3);
  CHECK(s1.group->order() == 54);

  auto s2 = sharpness_group(cyclic_group(4), 3);
  CHECK(s2.chain_length == 2);
  CHECK(s2.module_rank == 7);
  CHECK(s2.group->order() == 8748);

  auto s3 = sharpness_group(symmetric_group(3), 2);
  CHECK(s3.chain_length == 2);
  CHECK(s3.module_rank == 10);
  CHECK(s3.group->order() == 6144);
  CHECK(s3.chain_orders == std::vector<uint64_t>{6, 2, 1});
}

TEST_CASE("weil representation of the 27-group") {
  auto wd = weil_representation(1, 3, 7);
  CHECK(wd.omega == 2);
  CHECK(wd.r_image->order() == 27);
  CHECK(wd.image->order() == 648);
  CHECK(wd.image->dimension() == 3);
  CHECK(wd.image->modulus() == 7);
  // scalar part of the center acts by omega
  auto z = center_bits(*wd.r_image);
  CHECK(z.count() == 3);
}

TEST_CASE("weil representation of the 125-group") {
  auto wd = weil_representation(1, 5, 11);
  CHECK(wd.r_image->order() == 125);
  CHECK(wd.image->order() == 15000);
  CHECK(wd.image->dimension() == 5);
}

TEST_CASE("counterexample group over f7") {
  auto g = counterexample_group(1, 3, 7);
  CHECK(g->order() == 222264);
  CHECK(g->degree() == 343);
  CHECK(code_of([&] { counterexample_group(1, 3, 7, 1000); }) == ErrorCode::CapExceeded);
  CHECK(code_of([&] { counterexample_group(1, 3, 5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { counterexample_group(1, 2, 7); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("input validation") {
  CHECK(code_of([] { cyclic_group(0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { dihedral_group(2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { elementary_abelian_group(4, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { extraspecial_group(1, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { extraspecial_group(1, 4); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { symplectic_group(0, 3); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { weil_representation(1, 3, 11); }) == ErrorCode::InvalidArgument);
}
