#include "cdim/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "cdim/numtheory.hpp"

namespace cdim {

namespace {

GroupElement cycle(uint32_t degree, const std::vector<uint32_t>& cyc) {
  std::vector<uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (size_t i = 0; i < cyc.size(); ++i) img[cyc[i]] = cyc[(i + 1) % cyc.size()];
  return make_permutation(std::move(img));
}

uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

GroupPtr trivial_group() { return FiniteGroup::enumerate({identity_permutation(1)}); }

GroupPtr cyclic_group(uint32_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "cyclic_group needs n >= 1");
  if (n == 1) return trivial_group();
  std::vector<uint32_t> full(n);
  std::iota(full.begin(), full.end(), 0);
  return FiniteGroup::enumerate({cycle(n, full)});
}

GroupPtr symmetric_group(uint32_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "symmetric_group needs n >= 1");
  if (n == 1) return trivial_group();
  if (n == 2) return cyclic_group(2);
  std::vector<uint32_t> full(n);
  std::iota(full.begin(), full.end(), 0);
  return FiniteGroup::enumerate({cycle(n, {0, 1}), cycle(n, full)});
}

GroupPtr alternating_group(uint32_t n) {
  require(n >= 3, ErrorCode::InvalidArgument, "alternating_group needs n >= 3");
  std::vector<GroupElement> gens;
  for (uint32_t i = 0; i + 2 < n; ++i) gens.push_back(cycle(n, {i, i + 1, i + 2}));
  return FiniteGroup::enumerate(std::move(gens));
}

GroupPtr dihedral_group(uint32_t n) {
  require(n >= 3, ErrorCode::InvalidArgument, "dihedral_group needs n >= 3");
  std::vector<uint32_t> full(n), flip(n);
  std::iota(full.begin(), full.end(), 0);
  for (uint32_t i = 0; i < n; ++i) flip[i] = (n - i) % n;
  return FiniteGroup::enumerate({cycle(n, full), make_permutation(std::move(flip))});
}

GroupPtr quaternion_group() {
  return FiniteGroup::enumerate({make_matrix(2, 3, {0, 2, 1, 0}), make_matrix(2, 3, {1, 1, 1, 2})});
}

GroupPtr special_linear_2(uint32_t p) {
  require(p >= 2, ErrorCode::InvalidArgument, "need a prime p");
  return FiniteGroup::enumerate({make_matrix(2, p, {0, p - 1, 1, 0}), make_matrix(2, p, {1, 1, 0, 1})});
}

GroupPtr elementary_abelian_group(uint32_t p, uint32_t rank) {
  require(nt::is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  if (rank == 0) return trivial_group();
  const uint32_t deg = p * rank;
  require(deg <= 65535, ErrorCode::InvalidArgument, "degree too large");
  std::vector<GroupElement> gens;
  for (uint32_t i = 0; i < rank; ++i) {
    std::vector<uint32_t> blk(p);
    for (uint32_t t = 0; t < p; ++t) blk[t] = i * p + t;
    gens.push_back(cycle(deg, blk));
  }
  return FiniteGroup::enumerate(std::move(gens));
}

namespace {

// <x, y> = sum_k x_k y_{k+n} - x_{k+n} y_k  (mod r)
uint32_t symp_form(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y, uint32_t n,
                   uint32_t r) {
  uint64_t acc = 0;
  for (uint32_t k = 0; k < n; ++k)
    acc += uint64_t(x[k]) * y[k + n] + uint64_t(x[k + n]) * (r - 1) * y[k] % r;
  return uint32_t(acc % r);
}

}  // namespace

GroupPtr symplectic_group(uint32_t n, uint32_t r) {
  require(n >= 1, ErrorCode::InvalidArgument, "need n >= 1");
  require(nt::is_prime(r), ErrorCode::InvalidArgument, "r must be prime");
  if (n == 1) return special_linear_2(r);
  const uint32_t d = 2 * n;
  std::vector<GroupElement> gens;
  // projective points: nonzero vectors with leading coordinate 1
  std::vector<uint32_t> v(d, 0);
  uint64_t total = 1;
  for (uint32_t i = 0; i < d; ++i) total *= r;
  for (uint64_t code = 1; code < total; ++code) {
    uint64_t c = code;
    for (uint32_t i = 0; i < d; ++i) {
      v[i] = uint32_t(c % r);
      c /= r;
    }
    uint32_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    // transvection u -> u + <u, v> v
    std::vector<uint32_t> m(size_t(d) * d, 0);
    for (uint32_t j = 0; j < d; ++j) {
      std::vector<uint32_t> ej(d, 0);
      ej[j] = 1;
      uint32_t coef = symp_form(ej, v, n, r);
      for (uint32_t i = 0; i < d; ++i) m[size_t(i) * d + j] = ((i == j ? 1 : 0) + coef * v[i]) % r;
    }
    gens.push_back(make_matrix(d, r, std::move(m)));
  }
  return FiniteGroup::enumerate(std::move(gens));
}

namespace {

struct HeisCoords {
  std::vector<uint32_t> a, b;
  uint32_t c;
};

HeisCoords heis_decode(const GroupElement& e, uint32_t n) {
  const uint32_t d = n + 2;
  HeisCoords h;
  h.a.resize(n);
  h.b.resize(n);
  for (uint32_t i = 0; i < n; ++i) {
    h.a[i] = e.data[0 * d + (i + 1)];
    h.b[i] = e.data[size_t(i + 1) * d + (n + 1)];
  }
  h.c = e.data[0 * d + (n + 1)];
  return h;
}

GroupElement heis_encode(uint32_t n, uint32_t r, const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b, uint32_t c) {
  const uint32_t d = n + 2;
  std::vector<uint32_t> m(size_t(d) * d, 0);
  for (uint32_t i = 0; i < d; ++i) m[size_t(i) * d + i] = 1;
  for (uint32_t i = 0; i < n; ++i) {
    m[0 * d + (i + 1)] = a[i] % r;
    m[size_t(i + 1) * d + (n + 1)] = b[i] % r;
  }
  m[0 * d + (n + 1)] = c % r;
  return make_matrix(d, r, std::move(m));
}

}  // namespace

GroupPtr extraspecial_group(uint32_t n, uint32_t r) {
  require(n >= 1, ErrorCode::InvalidArgument, "need n >= 1");
  require(nt::is_prime(r) && r >= 3, ErrorCode::InvalidArgument, "r must be an odd prime");
  std::vector<GroupElement> gens;
  std::vector<uint32_t> zero(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    auto e = zero;
    e[i] = 1;
    gens.push_back(heis_encode(n, r, e, zero, 0));
    gens.push_back(heis_encode(n, r, zero, e, 0));
  }
  auto g = FiniteGroup::enumerate(std::move(gens));
  uint64_t expect = 1;
  for (uint32_t i = 0; i < 2 * n + 1; ++i) expect *= r;
  require(g->order() == expect, ErrorCode::Internal, "extraspecial order mismatch");
  return g;
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  require(a && b, ErrorCode::InvalidArgument, "null factor");
  std::vector<uint32_t> ident(a->size());
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<uint32_t>> tables(b->generators().size(), ident);
  return FiniteGroup::semidirect(a, b, tables);
}

namespace {

uint32_t cyclic_center_generator(const FiniteGroup& g) {
  DynBitset z = center_bits(g);
  const uint32_t m = z.count();
  for (uint32_t i = z.next(0); i < g.size(); i = z.next(i + 1))
    if (g.element_order(i) == m) return i;
  fail(ErrorCode::InvalidArgument, "center is not cyclic");
}

}  // namespace

GroupPtr central_product(const GroupPtr& a, const GroupPtr& b) {
  require(a && b, ErrorCode::InvalidArgument, "null factor");
  uint32_t za = cyclic_center_generator(*a);
  uint32_t zb = cyclic_center_generator(*b);
  require(a->element_order(za) == b->element_order(zb), ErrorCode::OrderMismatch,
          "central subgroups have different orders");
  auto d = direct_product(a, b);
  if (a->element_order(za) == 1) return d;
  GroupElement glue;
  glue.tag = Backend::Pair;
  glue.data = {za, b->inv(zb)};
  auto bits = subgroup_closure(*d, {d->index_of(glue)});
  return quotient(d, bits).group;
}

std::vector<std::vector<uint32_t>> symplectic_action_tables(const GroupPtr& r_grp,
                                                            const GroupPtr& sp) {
  require(r_grp && sp, ErrorCode::InvalidArgument, "null group");
  require(r_grp->backend() == Backend::Matrix && sp->backend() == Backend::Matrix,
          ErrorCode::InvalidArgument, "expected matrix groups");
  const uint32_t r = r_grp->modulus();
  const uint32_t n = r_grp->dimension() - 2;
  require(sp->dimension() == 2 * n && sp->modulus() == r, ErrorCode::InvalidArgument,
          "dimension mismatch between R and Sp");
  const uint32_t inv2 = (r + 1) / 2;
  const uint32_t d2 = 2 * n;

  std::vector<std::vector<uint32_t>> tables;
  for (uint32_t gk : sp->generator_indices()) {
    auto m = sp->element(gk);
    std::vector<uint32_t> table(r_grp->size());
    for (uint32_t i = 0; i < r_grp->size(); ++i) {
      auto h = heis_decode(r_grp->element(i), n);
      std::vector<uint32_t> u(d2);
      for (uint32_t k = 0; k < n; ++k) {
        u[k] = h.a[k];
        u[k + n] = h.b[k];
      }
      std::vector<uint32_t> w(d2, 0);
      for (uint32_t row = 0; row < d2; ++row) {
        uint64_t acc = 0;
        for (uint32_t col = 0; col < d2; ++col) acc += uint64_t(m.data[size_t(row) * d2 + col]) * u[col];
        w[row] = uint32_t(acc % r);
      }
      auto beta = [&](const std::vector<uint32_t>& x) {
        uint64_t acc = 0;
        for (uint32_t k = 0; k < n; ++k) acc += uint64_t(x[k]) * x[k + n];
        return uint32_t(acc % r);
      };
      uint32_t q = uint32_t(uint64_t(beta(w) + r - beta(u)) % r * inv2 % r);
      std::vector<uint32_t> a2(w.begin(), w.begin() + n), b2(w.begin() + n, w.end());
      table[i] = r_grp->index_of(heis_encode(n, r, a2, b2, (h.c + q) % r));
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

GroupPtr symplectic_on_extraspecial(uint32_t n, uint32_t r) {
  auto rg = extraspecial_group(n, r);
  auto sp = symplectic_group(n, r);
  auto x = FiniteGroup::semidirect(rg, sp, symplectic_action_tables(rg, sp));
  require(x->order() == rg->order() * sp->order(), ErrorCode::Internal, "X order mismatch");
  return x;
}

GroupPtr affine_group(const GroupPtr& m, uint64_t cap) {
  require(m != nullptr, ErrorCode::InvalidArgument, "null matrix group");
  require(m->backend() == Backend::Matrix, ErrorCode::InvalidArgument, "expected a matrix group");
  const uint32_t p = m->modulus();
  const uint32_t d = m->dimension();
  uint64_t deg = 1;
  for (uint32_t i = 0; i < d; ++i) {
    deg *= p;
    require(deg <= 65535, ErrorCode::InvalidArgument, "affine degree exceeds 65535 points");
  }
  require(deg * m->order() <= cap, ErrorCode::CapExceeded, "affine group order exceeds cap");

  auto decode = [&](uint32_t pt, std::vector<uint32_t>& u) {
    for (uint32_t i = 0; i < d; ++i) {
      u[i] = pt % p;
      pt /= p;
    }
  };
  auto encode = [&](const std::vector<uint32_t>& u) {
    uint32_t pt = 0;
    for (uint32_t i = d; i-- > 0;) pt = pt * p + u[i];
    return pt;
  };

  std::vector<GroupElement> gens;
  std::vector<uint32_t> u(d);
  for (uint32_t i = 0; i < d; ++i) {  // basis translations
    std::vector<uint32_t> img(static_cast<size_t>(deg));
    for (uint32_t pt = 0; pt < deg; ++pt) {
      decode(pt, u);
      u[i] = (u[i] + 1) % p;
      img[pt] = encode(u);
    }
    gens.push_back(make_permutation(std::move(img)));
  }
  for (uint32_t gk : m->generator_indices()) {
    auto mat = m->element(gk);
    std::vector<uint32_t> img(static_cast<size_t>(deg));
    std::vector<uint32_t> w(d);
    for (uint32_t pt = 0; pt < deg; ++pt) {
      decode(pt, u);
      for (uint32_t row = 0; row < d; ++row) {
        uint64_t acc = 0;
        for (uint32_t col = 0; col < d; ++col) acc += uint64_t(mat.data[size_t(row) * d + col]) * u[col];
        w[row] = uint32_t(acc % p);
      }
      img[pt] = encode(w);
    }
    gens.push_back(make_permutation(std::move(img)));
  }
  auto g = FiniteGroup::enumerate(std::move(gens), cap);
  require(g->order() == deg * m->order(), ErrorCode::Internal, "affine order mismatch");
  return g;
}

std::vector<uint32_t> module_coordinate_auto(const GroupPtr& v, uint32_t p,
                                             const std::vector<uint32_t>& sigma) {
  require(v != nullptr, ErrorCode::InvalidArgument, "null module group");
  const uint32_t rank = uint32_t(sigma.size());
  require(v->backend() == Backend::Permutation && v->degree() == p * rank,
          ErrorCode::InvalidArgument, "module group does not match sigma rank");
  std::vector<uint32_t> table(v->size());
  std::vector<uint32_t> shift(rank), moved(rank);
  for (uint32_t i = 0; i < v->size(); ++i) {
    auto e = v->element(i);
    for (uint32_t k = 0; k < rank; ++k) shift[k] = e.data[size_t(k) * p] - k * p;
    for (uint32_t k = 0; k < rank; ++k) moved[sigma[k]] = shift[k];
    std::vector<uint32_t> img(size_t(rank) * p);
    for (uint32_t k = 0; k < rank; ++k)
      for (uint32_t t = 0; t < p; ++t) img[size_t(k) * p + t] = k * p + (t + moved[k]) % p;
    table[i] = v->index_of(make_permutation(std::move(img)));
  }
  return table;
}

CosetModule coset_permutation_module(const GroupPtr& h, const std::vector<DynBitset>& chain) {
  require(h != nullptr, ErrorCode::InvalidArgument, "null group");
  CosetModule cm;
  const auto& hgens = h->generator_indices();
  cm.gen_sigmas.assign(hgens.size(), {});
  for (const auto& sub : chain) {
    require(sub.size() == h->size(), ErrorCode::InvalidArgument, "chain bitset size mismatch");
    const auto mem = sub.members();
    // right cosets (sub)g, represented by their minimal member
    std::vector<uint32_t> rep(h->size(), UINT32_MAX);
    std::vector<uint32_t> coord(h->size(), UINT32_MAX);
    uint32_t ncos = 0;
    for (uint32_t g = 0; g < h->size(); ++g) {
      if (rep[g] != UINT32_MAX) continue;
      for (uint32_t s : mem) rep[h->mul(s, g)] = g;
      coord[g] = ncos++;
    }
    for (size_t k = 0; k < hgens.size(); ++k) {
      uint32_t xinv = h->inv(hgens[k]);
      for (uint32_t g = 0; g < h->size(); ++g) {
        if (coord[g] == UINT32_MAX) continue;
        uint32_t target = rep[h->mul(g, xinv)];
        cm.gen_sigmas[k].push_back(cm.rank + coord[target]);
      }
    }
    cm.rank += ncos;
  }
  return cm;
}

SharpnessGroup sharpness_group(const GroupPtr& h, uint32_t p) {
  require(h != nullptr, ErrorCode::InvalidArgument, "null group");
  require(nt::is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  auto chain = longest_subgroup_chain(*h);
  auto cm = coset_permutation_module(h, chain);
  auto v = elementary_abelian_group(p, cm.rank);
  std::vector<std::vector<uint32_t>> tables;
  for (const auto& sigma : cm.gen_sigmas) tables.push_back(module_coordinate_auto(v, p, sigma));
  SharpnessGroup out;
  out.group = FiniteGroup::semidirect(v, h, tables);
  out.chain_length = uint32_t(chain.size()) - 1;
  for (const auto& s : chain) out.chain_orders.push_back(s.count());
  out.module_rank = cm.rank;
  return out;
}

namespace {

// nullspace of the stacked intertwiner equations over F_p; must be one-dimensional
std::vector<uint32_t> solve_intertwiner(const std::vector<std::vector<uint32_t>>& rho_gens,
                                        const std::vector<std::vector<uint32_t>>& rho_alpha_gens,
                                        uint32_t d, uint32_t p) {
  const uint32_t nvar = d * d;
  std::vector<std::vector<uint32_t>> rows;
  for (size_t j = 0; j < rho_gens.size(); ++j) {
    const auto& rg = rho_gens[j];
    const auto& ra = rho_alpha_gens[j];
    // A rg - ra A = 0, entry (i, m): sum_t A[i][t] rg[t][m] - sum_s ra[i][s] A[s][m]
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t m = 0; m < d; ++m) {
        std::vector<uint32_t> row(nvar, 0);
        for (uint32_t t = 0; t < d; ++t)
          row[i * d + t] = (row[i * d + t] + rg[size_t(t) * d + m]) % p;
        for (uint32_t s = 0; s < d; ++s)
          row[s * d + m] = (row[s * d + m] + p - ra[size_t(i) * d + s] % p) % p;
        rows.push_back(std::move(row));
      }
  }
  // Gaussian elimination
  uint32_t rank = 0;
  std::vector<int64_t> pivot_of_col(nvar, -1);
  for (uint32_t col = 0; col < nvar && rank < rows.size(); ++col) {
    uint32_t sel = UINT32_MAX;
    for (uint32_t rr = rank; rr < rows.size(); ++rr)
      if (rows[rr][col] != 0) {
        sel = rr;
        break;
      }
    if (sel == UINT32_MAX) continue;
    std::swap(rows[rank], rows[sel]);
    uint64_t inv = powm(rows[rank][col], p - 2, p);
    for (uint32_t cc = col; cc < nvar; ++cc)
      rows[rank][cc] = uint32_t(rows[rank][cc] * inv % p);
    for (uint32_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][col] == 0) continue;
      uint64_t f = rows[rr][col];
      for (uint32_t cc = col; cc < nvar; ++cc)
        rows[rr][cc] = uint32_t((rows[rr][cc] + (p - f) * rows[rank][cc]) % p);
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  require(rank + 1 == nvar, ErrorCode::NoIntertwiner, "intertwiner space is not one-dimensional");
  uint32_t free_col = UINT32_MAX;
  for (uint32_t col = 0; col < nvar; ++col)
    if (pivot_of_col[col] < 0) {
      free_col = col;
      break;
    }
  std::vector<uint32_t> sol(nvar, 0);
  sol[free_col] = 1;
  for (uint32_t col = 0; col < nvar; ++col) {
    if (pivot_of_col[col] < 0) continue;
    uint32_t rr = uint32_t(pivot_of_col[col]);
    sol[col] = (p - uint32_t(uint64_t(rows[rr][free_col]) % p)) % p;
  }
  // normalize: first nonzero entry 1
  for (uint32_t i = 0; i < nvar; ++i)
    if (sol[i] != 0) {
      uint64_t inv = powm(sol[i], p - 2, p);
      for (auto& v : sol) v = uint32_t(v * inv % p);
      break;
    }
  return sol;
}

}  // namespace

WeilData weil_representation(uint32_t n, uint32_t r, uint32_t p, uint64_t cap) {
  require(n >= 1, ErrorCode::InvalidArgument, "need n >= 1");
  require(nt::is_prime(r) && r >= 3, ErrorCode::InvalidArgument, "r must be an odd prime");
  require(nt::is_prime(p), ErrorCode::InvalidArgument, "p must be prime");
  require(p % r == 1, ErrorCode::InvalidArgument, "need p = 1 (mod r)");
  uint64_t d64 = 1;
  for (uint32_t i = 0; i < n; ++i) d64 *= r;
  require(d64 <= 64, ErrorCode::InvalidArgument, "module dimension r^n exceeds 64");
  const uint32_t d = uint32_t(d64);

  uint32_t omega = 0;
  for (uint32_t y = 2; y < p; ++y)
    if (powm(y, r, p) == 1) {
      omega = y;
      break;
    }
  require(omega != 0, ErrorCode::Internal, "no element of order r mod p");

  auto rg = extraspecial_group(n, r);
  auto sp = symplectic_group(n, r);

  // vector index: w = sum w_i r^i
  auto vec_of = [&](uint32_t code) {
    std::vector<uint32_t> w(n);
    for (uint32_t i = 0; i < n; ++i) {
      w[i] = code % r;
      code /= r;
    }
    return w;
  };
  auto code_of = [&](const std::vector<uint32_t>& w) {
    uint32_t c = 0;
    for (uint32_t i = n; i-- > 0;) c = c * r + w[i] % r;
    return c;
  };
  // rho(a,b,c)[w, w+a] = omega^{c + b.w}
  auto rho = [&](const HeisCoords& h) {
    std::vector<uint32_t> m(size_t(d) * d, 0);
    for (uint32_t wc = 0; wc < d; ++wc) {
      auto w = vec_of(wc);
      uint64_t expo = h.c;
      for (uint32_t i = 0; i < n; ++i) expo += uint64_t(h.b[i]) * w[i];
      auto wa = w;
      for (uint32_t i = 0; i < n; ++i) wa[i] = (wa[i] + h.a[i]) % r;
      m[size_t(wc) * d + code_of(wa)] = uint32_t(powm(omega, expo % r, p));
    }
    return m;
  };

  WeilData out;
  out.omega = omega;
  std::vector<std::vector<uint32_t>> rho_gen_mats;
  for (const auto& ge : rg->generators()) {
    auto mat = rho(heis_decode(ge, n));
    rho_gen_mats.push_back(mat);
    out.r_gens.push_back(make_matrix(d, p, std::move(mat)));
  }
  out.r_image = FiniteGroup::enumerate(out.r_gens, cap);
  require(out.r_image->order() == rg->order(), ErrorCode::Internal,
          "monomial action is not faithful");

  const uint32_t inv2 = (r + 1) / 2;
  const uint32_t d2 = 2 * n;
  auto alpha_image = [&](const GroupElement& m, const HeisCoords& h) {
    std::vector<uint32_t> u(d2);
    for (uint32_t k = 0; k < n; ++k) {
      u[k] = h.a[k];
      u[k + n] = h.b[k];
    }
    std::vector<uint32_t> w(d2, 0);
    for (uint32_t row = 0; row < d2; ++row) {
      uint64_t acc = 0;
      for (uint32_t col = 0; col < d2; ++col) acc += uint64_t(m.data[size_t(row) * d2 + col]) * u[col];
      w[row] = uint32_t(acc % r);
    }
    auto beta = [&](const std::vector<uint32_t>& x) {
      uint64_t acc = 0;
      for (uint32_t k = 0; k < n; ++k) acc += uint64_t(x[k]) * x[k + n];
      return uint32_t(acc % r);
    };
    HeisCoords out2;
    out2.a.assign(w.begin(), w.begin() + n);
    out2.b.assign(w.begin() + n, w.end());
    out2.c = uint32_t((h.c + uint64_t(beta(w) + r - beta(u)) % r * inv2) % r);
    return out2;
  };

  std::vector<std::vector<uint32_t>> raw_a;       // unnormalized intertwiners
  std::vector<std::vector<uint32_t>> candidates;  // scalar candidates per generator
  for (uint32_t gk : sp->generator_indices()) {
    auto m = sp->element(gk);
    std::vector<std::vector<uint32_t>> rho_alpha;
    for (const auto& ge : rg->generators())
      rho_alpha.push_back(rho(alpha_image(m, heis_decode(ge, n))));
    auto a = solve_intertwiner(rho_gen_mats, rho_alpha, d, p);
    try {
      mat_inv(a.data(), d, p);
    } catch (const Error&) {
      fail(ErrorCode::NoIntertwiner, "intertwiner is singular");
    }
    uint32_t ord = sp->element_order(gk);
    std::vector<uint32_t> pw = a;
    for (uint32_t t = 1; t < ord; ++t) pw = mat_mul(pw.data(), a.data(), d, p);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j)
        require(i == j ? pw[size_t(i) * d + j] == pw[0] : pw[size_t(i) * d + j] == 0,
                ErrorCode::NoIntertwiner, "intertwiner power is not scalar");
    uint64_t lam_inv = powm(pw[0], p - 2, p);
    std::vector<uint32_t> cands;
    for (uint32_t c = 1; c < p; ++c)
      if (powm(c, ord, p) == lam_inv) cands.push_back(c);
    require(!cands.empty(), ErrorCode::ScalarSearchFailed, "no scalar matches generator order");
    raw_a.push_back(std::move(a));
    candidates.push_back(std::move(cands));
  }

  const uint64_t expected = rg->order() * sp->order();
  require(expected <= cap, ErrorCode::CapExceeded, "representation image exceeds cap");

  std::vector<size_t> pick(raw_a.size(), 0);
  while (true) {
    std::vector<GroupElement> gens = out.r_gens;
    std::vector<GroupElement> sp_mats;
    for (size_t k = 0; k < raw_a.size(); ++k) {
      std::vector<uint32_t> scaled = raw_a[k];
      uint64_t c = candidates[k][pick[k]];
      for (auto& v : scaled) v = uint32_t(v * c % p);
      sp_mats.push_back(make_matrix(d, p, std::move(scaled)));
    }
    for (const auto& e : sp_mats) gens.push_back(e);
    bool ok = false;
    try {
      auto img = FiniteGroup::enumerate(gens, expected);
      ok = img->order() == expected;
      if (ok) {
        out.image = img;
        out.sp_gens = std::move(sp_mats);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded) throw;
    }
    if (ok) break;
    size_t k = 0;
    while (k < pick.size() && ++pick[k] == candidates[k].size()) pick[k++] = 0;
    require(k < pick.size(), ErrorCode::ScalarSearchFailed,
            "no scalar assignment yields the expected image order");
  }

  // the lifted generators must still intertwine the monomial action
  auto sp_idx = sp->generator_indices();
  for (size_t k = 0; k < out.sp_gens.size(); ++k) {
    auto m = sp->element(sp_idx[k]);
    const auto& a = out.sp_gens[k].data;
    for (size_t j = 0; j < rg->generators().size(); ++j) {
      auto lhs = mat_mul(a.data(), rho_gen_mats[j].data(), d, p);
      auto target = rho(alpha_image(m, heis_decode(rg->generators()[j], n)));
      auto rhs = mat_mul(target.data(), a.data(), d, p);
      require(lhs == rhs, ErrorCode::Internal, "lifted generator fails to intertwine");
    }
  }
  return out;
}

GroupPtr counterexample_group(uint32_t n, uint32_t r, uint32_t p, uint64_t cap) {
  auto wd = weil_representation(n, r, p, cap);
  return affine_group(wd.image, cap);
}

}  // namespace cdim
