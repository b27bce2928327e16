#include "cdim/group.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

namespace cdim {

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

inline uint64_t fnv_step(uint64_t h, uint64_t v) {
  h ^= v;
  h *= kFnvPrime;
  return h;
}

bool is_small_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void append_be32(std::string& s, uint32_t v) {
  s.push_back(char((v >> 24) & 0xff));
  s.push_back(char((v >> 16) & 0xff));
  s.push_back(char((v >> 8) & 0xff));
  s.push_back(char(v & 0xff));
}

}  // namespace

// ---------------------------------------------------------------- ElementStore

ElementStore::ElementStore(Backend tag, uint32_t width, bool narrow)
    : tag_(tag), width_(width), narrow_(narrow) {
  table_.assign(64, 0);
  mask_ = 63;
}

uint64_t ElementStore::hash16(const uint16_t* vals) const {
  uint64_t h = kFnvOffset;
  for (uint32_t i = 0; i < width_; ++i) h = fnv_step(h, vals[i]);
  return h;
}

uint64_t ElementStore::hash32(const uint32_t* vals) const {
  uint64_t h = kFnvOffset;
  for (uint32_t i = 0; i < width_; ++i) h = fnv_step(h, vals[i]);
  return h;
}

void ElementStore::grow() {
  std::vector<uint32_t> old = std::move(table_);
  table_.assign(old.size() * 2, 0);
  mask_ = table_.size() - 1;
  for (uint32_t slot : old) {
    if (!slot) continue;
    uint32_t idx = slot - 1;
    uint64_t h = narrow_ ? hash16(row16(idx)) : hash32(row32(idx));
    uint64_t s = h & mask_;
    while (table_[s]) s = (s + 1) & mask_;
    table_[s] = slot;
  }
}

uint32_t ElementStore::append16(const uint16_t* vals) {
  if ((count_ + 1) * 10 > table_.size() * 6) grow();
  d16_.insert(d16_.end(), vals, vals + width_);
  uint32_t idx = count_++;
  uint64_t s = hash16(vals) & mask_;
  while (table_[s]) s = (s + 1) & mask_;
  table_[s] = idx + 1;
  return idx;
}

uint32_t ElementStore::append32(const uint32_t* vals) {
  if ((count_ + 1) * 10 > table_.size() * 6) grow();
  d32_.insert(d32_.end(), vals, vals + width_);
  uint32_t idx = count_++;
  uint64_t s = hash32(vals) & mask_;
  while (table_[s]) s = (s + 1) & mask_;
  table_[s] = idx + 1;
  return idx;
}

std::optional<uint32_t> ElementStore::find16(const uint16_t* vals) const {
  uint64_t s = hash16(vals) & mask_;
  while (table_[s]) {
    uint32_t idx = table_[s] - 1;
    if (std::memcmp(row16(idx), vals, size_t(width_) * 2) == 0) return idx;
    s = (s + 1) & mask_;
  }
  return std::nullopt;
}

std::optional<uint32_t> ElementStore::find32(const uint32_t* vals) const {
  uint64_t s = hash32(vals) & mask_;
  while (table_[s]) {
    uint32_t idx = table_[s] - 1;
    if (std::memcmp(row32(idx), vals, size_t(width_) * 4) == 0) return idx;
    s = (s + 1) & mask_;
  }
  return std::nullopt;
}

void ElementStore::get(uint32_t i, std::vector<uint32_t>& out) const {
  out.resize(width_);
  if (narrow_) {
    const uint16_t* r = row16(i);
    for (uint32_t k = 0; k < width_; ++k) out[k] = r[k];
  } else {
    const uint32_t* r = row32(i);
    std::copy(r, r + width_, out.begin());
  }
}

std::optional<uint32_t> ElementStore::find_generic(const uint32_t* vals) const {
  if (!narrow_) return find32(vals);
  // narrow stores hold permutations, which never recurse
  thread_local std::vector<uint16_t> tmp;
  tmp.resize(width_);
  for (uint32_t k = 0; k < width_; ++k) {
    if (vals[k] > 0xffff) return std::nullopt;
    tmp[k] = static_cast<uint16_t>(vals[k]);
  }
  return find16(tmp.data());
}

uint32_t ElementStore::append_generic(const uint32_t* vals) {
  if (!narrow_) return append32(vals);
  thread_local std::vector<uint16_t> tmp;
  tmp.resize(width_);
  for (uint32_t k = 0; k < width_; ++k) tmp[k] = static_cast<uint16_t>(vals[k]);
  return append16(tmp.data());
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(Backend b, Ctx ctx, uint32_t width, bool narrow)
    : backend_(b), ctx_(std::move(ctx)), store_(b, width, narrow) {}

uint32_t FiniteGroup::degree() const {
  const auto* c = std::get_if<PermCtx>(&ctx_);
  require(c != nullptr, ErrorCode::InvalidArgument, "not a permutation group");
  return c->degree;
}

uint32_t FiniteGroup::dimension() const {
  const auto* c = std::get_if<MatCtx>(&ctx_);
  require(c != nullptr, ErrorCode::InvalidArgument, "not a matrix group");
  return c->dim;
}

uint32_t FiniteGroup::modulus() const {
  const auto* c = std::get_if<MatCtx>(&ctx_);
  require(c != nullptr, ErrorCode::InvalidArgument, "not a matrix group");
  return c->mod;
}

void FiniteGroup::identity_payload(uint32_t* out) const {
  switch (backend_) {
    case Backend::Permutation:
      for (uint32_t i = 0; i < store_.width(); ++i) out[i] = i;
      return;
    case Backend::Matrix: {
      const auto& c = std::get<MatCtx>(ctx_);
      std::fill(out, out + store_.width(), 0);
      for (uint32_t i = 0; i < c.dim; ++i) out[size_t(i) * c.dim + i] = 1;
      return;
    }
    case Backend::Pair:
      out[0] = 0;
      out[1] = 0;
      return;
    case Backend::Coset: {
      const auto& c = std::get<CosetCtx>(ctx_);
      out[0] = c.rep_of[0];
      return;
    }
  }
}

void FiniteGroup::payload_mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const {
  switch (backend_) {
    case Backend::Permutation: {
      const uint32_t n = store_.width();
      for (uint32_t i = 0; i < n; ++i) out[i] = a[b[i]];  // function composition a∘b
      return;
    }
    case Backend::Matrix: {
      const auto& c = std::get<MatCtx>(ctx_);
      auto r = mat_mul(a, b, c.dim, c.mod);
      std::copy(r.begin(), r.end(), out);
      return;
    }
    case Backend::Pair: {
      const auto& c = std::get<PairCtx>(ctx_);
      const uint32_t nsz = c.normal->size();
      out[0] = c.normal->mul(a[0], c.act[size_t(a[1]) * nsz + b[0]]);
      out[1] = c.comp->mul(a[1], b[1]);
      return;
    }
    case Backend::Coset: {
      const auto& c = std::get<CosetCtx>(ctx_);
      out[0] = c.rep_of[c.parent->mul(a[0], b[0])];
      return;
    }
  }
}

void FiniteGroup::payload_inv(const uint32_t* a, uint32_t* out) const {
  switch (backend_) {
    case Backend::Permutation: {
      const uint32_t n = store_.width();
      for (uint32_t i = 0; i < n; ++i) out[a[i]] = i;
      return;
    }
    case Backend::Matrix: {
      const auto& c = std::get<MatCtx>(ctx_);
      auto r = mat_inv(a, c.dim, c.mod);
      std::copy(r.begin(), r.end(), out);
      return;
    }
    case Backend::Pair: {
      const auto& c = std::get<PairCtx>(ctx_);
      const uint32_t nsz = c.normal->size();
      uint32_t hinv = c.comp->inv(a[1]);
      out[0] = c.act[size_t(hinv) * nsz + c.normal->inv(a[0])];
      out[1] = hinv;
      return;
    }
    case Backend::Coset: {
      const auto& c = std::get<CosetCtx>(ctx_);
      out[0] = c.rep_of[c.parent->inv(a[0])];
      return;
    }
  }
}

void FiniteGroup::row_of(uint32_t i, uint32_t* out) const {
  if (store_.narrow()) {
    const uint16_t* r = store_.row16(i);
    for (uint32_t k = 0; k < store_.width(); ++k) out[k] = r[k];
  } else {
    const uint32_t* r = store_.row32(i);
    std::copy(r, r + store_.width(), out);
  }
}

uint32_t FiniteGroup::mul(uint32_t a, uint32_t b) const {
  require(a < size() && b < size(), ErrorCode::UnknownElement, "index out of range");
  const uint32_t w = store_.width();
  if (backend_ == Backend::Permutation && store_.narrow()) {
    const uint16_t* pa = store_.row16(a);
    const uint16_t* pb = store_.row16(b);
    thread_local std::vector<uint16_t> out;
    out.resize(w);
    for (uint32_t i = 0; i < w; ++i) out[i] = pa[pb[i]];
    auto idx = store_.find16(out.data());
    require(idx.has_value(), ErrorCode::Internal, "product escaped enumeration");
    return *idx;
  }
  // plain locals: pair/coset payload ops recurse into component muls
  std::vector<uint32_t> av(w), bv(w), ov(w);
  row_of(a, av.data());
  row_of(b, bv.data());
  payload_mul(av.data(), bv.data(), ov.data());
  auto idx = store_.find_generic(ov.data());
  require(idx.has_value(), ErrorCode::Internal, "product escaped enumeration");
  return *idx;
}

uint32_t FiniteGroup::inv(uint32_t a) const {
  require(a < size(), ErrorCode::UnknownElement, "index out of range");
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (!inv_table_.empty()) return inv_table_[a];
  }
  const uint32_t w = store_.width();
  std::vector<uint32_t> table(size());
  std::vector<uint32_t> av(w), ov(w);
  for (uint32_t i = 0; i < size(); ++i) {
    row_of(i, av.data());
    payload_inv(av.data(), ov.data());
    auto idx = store_.find_generic(ov.data());
    require(idx.has_value(), ErrorCode::Internal, "inverse escaped enumeration");
    table[i] = *idx;
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (inv_table_.empty()) inv_table_ = std::move(table);
  return inv_table_[a];
}

uint32_t FiniteGroup::conj(uint32_t g, uint32_t x) const { return mul(mul(g, x), inv(g)); }

bool FiniteGroup::commute(uint32_t a, uint32_t b) const {
  const uint32_t w = store_.width();
  if (backend_ == Backend::Permutation && store_.narrow()) {
    const uint16_t* pa = store_.row16(a);
    const uint16_t* pb = store_.row16(b);
    for (uint32_t i = 0; i < w; ++i)
      if (pa[pb[i]] != pb[pa[i]]) return false;
    return true;
  }
  std::vector<uint32_t> av(w), bv(w), x(w), y(w);
  row_of(a, av.data());
  row_of(b, bv.data());
  payload_mul(av.data(), bv.data(), x.data());
  payload_mul(bv.data(), av.data(), y.data());
  return x == y;
}

uint32_t FiniteGroup::element_order(uint32_t a) const {
  require(a < size(), ErrorCode::UnknownElement, "index out of range");
  uint32_t o = 1, cur = a;
  while (cur != 0) {
    cur = mul(cur, a);
    ++o;
    require(o <= size(), ErrorCode::Internal, "order runaway");
  }
  return o;
}

uint32_t FiniteGroup::power(uint32_t a, int64_t e) const {
  uint32_t base = a;
  if (e < 0) {
    base = inv(a);
    e = -e;
  }
  uint32_t acc = 0;  // identity
  uint64_t k = uint64_t(e);
  uint32_t sq = base;
  while (k) {
    if (k & 1) acc = mul(acc, sq);
    sq = mul(sq, sq);
    k >>= 1;
  }
  return acc;
}

bool FiniteGroup::is_abelian() const {
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (abelian_.has_value()) return *abelian_;
  }
  bool ab = true;
  for (size_t i = 0; i < gen_idx_.size() && ab; ++i)
    for (size_t j = i + 1; j < gen_idx_.size() && ab; ++j)
      if (!commute(gen_idx_[i], gen_idx_[j])) ab = false;
  std::lock_guard<std::mutex> lk(cache_mu_);
  abelian_ = ab;
  return ab;
}

GroupElement FiniteGroup::element(uint32_t i) const {
  require(i < size(), ErrorCode::UnknownElement, "index out of range");
  GroupElement e;
  e.tag = backend_;
  if (const auto* c = std::get_if<MatCtx>(&ctx_)) {
    e.dim = c->dim;
    e.mod = c->mod;
  }
  store_.get(i, e.data);
  return e;
}

void FiniteGroup::check_generator(const GroupElement& e) const {
  require(e.tag == backend_, ErrorCode::MixedBackend, "backend mismatch");
  switch (backend_) {
    case Backend::Permutation:
      require(e.data.size() == store_.width(), ErrorCode::MixedBackend, "degree mismatch");
      break;
    case Backend::Matrix: {
      const auto& c = std::get<MatCtx>(ctx_);
      require(e.dim == c.dim && e.mod == c.mod, ErrorCode::MixedBackend, "dimension/modulus mismatch");
      break;
    }
    case Backend::Pair: {
      const auto& c = std::get<PairCtx>(ctx_);
      require(e.data.size() == 2, ErrorCode::InvalidArgument, "bad pair payload");
      require(e.data[0] < c.normal->size() && e.data[1] < c.comp->size(), ErrorCode::UnknownElement,
              "pair component index out of range");
      break;
    }
    case Backend::Coset: {
      const auto& c = std::get<CosetCtx>(ctx_);
      require(e.data.size() == 1, ErrorCode::InvalidArgument, "bad coset payload");
      require(e.data[0] < c.parent->size(), ErrorCode::UnknownElement, "coset rep out of range");
      break;
    }
  }
}

std::optional<uint32_t> FiniteGroup::find(const GroupElement& e) const {
  check_generator(e);
  return store_.find_generic(e.data.data());
}

uint32_t FiniteGroup::index_of(const GroupElement& e) const {
  auto i = find(e);
  require(i.has_value(), ErrorCode::UnknownElement, "element not enumerated in this group");
  return *i;
}

std::string FiniteGroup::key_of_payload(const uint32_t* vals) const {
  std::string key;
  switch (backend_) {
    case Backend::Permutation:
    case Backend::Matrix:
      for (uint32_t k = 0; k < store_.width(); ++k) append_be32(key, vals[k]);
      return key;
    case Backend::Pair: {
      const auto& c = std::get<PairCtx>(ctx_);
      return c.normal->canonical_key(vals[0]) + c.comp->canonical_key(vals[1]);
    }
    case Backend::Coset:
      append_be32(key, vals[0]);
      return key;
  }
  return key;
}

std::string FiniteGroup::canonical_key(uint32_t i) const {
  require(i < size(), ErrorCode::UnknownElement, "index out of range");
  std::vector<uint32_t> row(store_.width());
  row_of(i, row.data());
  return key_of_payload(row.data());
}

std::string FiniteGroup::canonical_key(const GroupElement& e) const {
  check_generator(e);
  return key_of_payload(e.data.data());
}

GroupElement FiniteGroup::multiply(const GroupElement& x, const GroupElement& y) const {
  return element(mul(index_of(x), index_of(y)));
}

GroupElement FiniteGroup::inverse(const GroupElement& x) const { return element(inv(index_of(x))); }

GroupElement FiniteGroup::identity_element() const { return element(0); }

std::shared_ptr<const std::vector<uint32_t>> FiniteGroup::conj_map(uint32_t g) const {
  require(g < size(), ErrorCode::UnknownElement, "index out of range");
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = conj_maps_.find(g);
    if (it != conj_maps_.end()) return it->second;
  }
  const uint32_t w = store_.width();
  const uint32_t gi = inv(g);
  auto out = std::make_shared<std::vector<uint32_t>>(size());
  if (backend_ == Backend::Permutation && store_.narrow()) {
    const uint16_t* pg = store_.row16(g);
    const uint16_t* pgi = store_.row16(gi);
    std::vector<uint16_t> tmp(w);
    for (uint32_t i = 0; i < size(); ++i) {
      const uint16_t* px = store_.row16(i);
      for (uint32_t k = 0; k < w; ++k) tmp[k] = pg[px[pgi[k]]];  // g ∘ x ∘ g^{-1}
      auto idx = store_.find16(tmp.data());
      require(idx.has_value(), ErrorCode::Internal, "conjugate escaped enumeration");
      (*out)[i] = *idx;
    }
  } else {
    std::vector<uint32_t> gv(w), giv(w), xv(w), t1(w), t2(w);
    row_of(g, gv.data());
    row_of(gi, giv.data());
    for (uint32_t i = 0; i < size(); ++i) {
      row_of(i, xv.data());
      payload_mul(gv.data(), xv.data(), t1.data());
      payload_mul(t1.data(), giv.data(), t2.data());
      auto idx = store_.find_generic(t2.data());
      require(idx.has_value(), ErrorCode::Internal, "conjugate escaped enumeration");
      (*out)[i] = *idx;
    }
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  auto [it, inserted] = conj_maps_.try_emplace(g, std::move(out));
  return it->second;
}

const std::vector<std::vector<uint32_t>>& FiniteGroup::conjugacy_classes() const {
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    if (classes_.has_value()) return *classes_;
  }
  std::vector<std::shared_ptr<const std::vector<uint32_t>>> maps;
  maps.reserve(gen_idx_.size());
  for (uint32_t g : gen_idx_) maps.push_back(conj_map(g));
  std::vector<std::vector<uint32_t>> classes;
  DynBitset seen(size());
  std::vector<uint32_t> stack;
  for (uint32_t i = 0; i < size(); ++i) {
    if (seen.test(i)) continue;
    std::vector<uint32_t> cls{i};
    seen.set(i);
    stack.assign(1, i);
    while (!stack.empty()) {
      uint32_t x = stack.back();
      stack.pop_back();
      for (const auto& m : maps) {
        uint32_t y = (*m)[x];
        if (!seen.test(y)) {
          seen.set(y);
          cls.push_back(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  if (!classes_.has_value()) classes_ = std::move(classes);
  return *classes_;
}

uint64_t FiniteGroup::generator_content_hash() const {
  uint64_t h = kFnvOffset;
  h = fnv_step(h, uint64_t(backend_));
  switch (backend_) {
    case Backend::Permutation:
      h = fnv_step(h, degree());
      break;
    case Backend::Matrix:
      h = fnv_step(h, dimension());
      h = fnv_step(h, modulus());
      break;
    default:
      break;
  }
  for (const auto& g : gens_) {
    const std::string key = canonical_key(g);
    for (unsigned char ch : key) h = fnv_step(h, ch);
  }
  return h;
}

// ------------------------------------------------------------------ enumeration

GroupPtr FiniteGroup::build(Backend b, Ctx ctx, std::vector<GroupElement> gens, uint64_t cap,
                            const std::vector<std::vector<uint32_t>>* preloaded_rows) {
  uint32_t width = 0;
  bool narrow = false;
  switch (b) {
    case Backend::Permutation:
      width = std::get<PermCtx>(ctx).degree;
      narrow = true;
      break;
    case Backend::Matrix: {
      const auto& c = std::get<MatCtx>(ctx);
      width = c.dim * c.dim;
      break;
    }
    case Backend::Pair:
      width = 2;
      break;
    case Backend::Coset:
      width = 1;
      break;
  }
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup(b, std::move(ctx), width, narrow));
  g->cap_ = cap;
  for (const auto& e : gens) g->check_generator(e);
  g->gens_ = std::move(gens);

  auto& store = g->store_;
  std::vector<uint32_t> idp(width);
  g->identity_payload(idp.data());

  if (preloaded_rows != nullptr) {
    // cache load path: rows arrive in index order and are trusted to be closed
    require(!preloaded_rows->empty(), ErrorCode::CacheError, "empty element table");
    require((*preloaded_rows)[0] == idp, ErrorCode::CacheError, "identity not first");
    for (const auto& row : *preloaded_rows) {
      require(row.size() == width, ErrorCode::CacheError, "row width mismatch");
      require(!store.find_generic(row.data()).has_value(), ErrorCode::CacheError, "duplicate row");
      store.append_generic(row.data());
    }
  } else {
    store.append_generic(idp.data());

    // key-rank tables for pair layer ordering (canonical key of a pair element is the
    // concatenation of component keys, so key order = lex on component key ranks)
    std::vector<uint32_t> rank_n, rank_h;
    if (b == Backend::Pair) {
      const auto& pc = std::get<PairCtx>(g->ctx_);
      auto ranks = [](const FiniteGroup& comp) {
        std::vector<uint32_t> idx(comp.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<std::string> keys(comp.size());
        for (uint32_t i = 0; i < comp.size(); ++i) keys[i] = comp.canonical_key(i);
        std::sort(idx.begin(), idx.end(),
                  [&](uint32_t a, uint32_t bb) { return keys[a] < keys[bb]; });
        std::vector<uint32_t> rank(comp.size());
        for (uint32_t pos = 0; pos < idx.size(); ++pos) rank[idx[pos]] = pos;
        return rank;
      };
      rank_n = ranks(*pc.normal);
      rank_h = ranks(*pc.comp);
    }

    std::vector<std::vector<uint32_t>> gen_rows;
    for (const auto& e : g->gens_) gen_rows.push_back(e.data);

    std::vector<uint32_t> frontier{0};
    std::vector<uint32_t> scratch(width);
    std::vector<uint32_t> cur(width);
    // candidate buffer for the current layer, deduplicated via open addressing
    std::vector<uint32_t> cand;
    std::vector<uint32_t> cand_tab(64, 0);  // 0 = empty, else candidate index + 1
    auto row_hash = [width](const uint32_t* row) {
      uint64_t h = kFnvOffset;
      for (uint32_t k = 0; k < width; ++k) h = fnv_step(h, row[k]);
      return h;
    };
    while (!frontier.empty()) {
      cand.clear();
      size_t ncand = 0;
      std::fill(cand_tab.begin(), cand_tab.end(), 0);
      auto cand_row = [&](size_t k) { return cand.data() + k * width; };
      for (uint32_t fi : frontier) {
        g->row_of(fi, cur.data());
        for (const auto& gr : gen_rows) {
          g->payload_mul(cur.data(), gr.data(), scratch.data());
          if (store.find_generic(scratch.data()).has_value()) continue;
          if ((ncand + 1) * 10 > cand_tab.size() * 6) {
            std::vector<uint32_t> old = std::move(cand_tab);
            cand_tab.assign(old.size() * 2, 0);
            for (uint32_t slot : old) {
              if (!slot) continue;
              uint64_t s = row_hash(cand_row(slot - 1)) & (cand_tab.size() - 1);
              while (cand_tab[s]) s = (s + 1) & (cand_tab.size() - 1);
              cand_tab[s] = slot;
            }
          }
          uint64_t s = row_hash(scratch.data()) & (cand_tab.size() - 1);
          bool dup = false;
          while (cand_tab[s]) {
            if (std::equal(scratch.begin(), scratch.end(), cand_row(cand_tab[s] - 1))) {
              dup = true;
              break;
            }
            s = (s + 1) & (cand_tab.size() - 1);
          }
          if (dup) continue;
          cand.insert(cand.end(), scratch.begin(), scratch.end());
          cand_tab[s] = uint32_t(++ncand);
          require(store.size() + ncand <= cap, ErrorCode::CapExceeded,
                  "enumeration exceeded cap");
        }
      }
      std::vector<uint32_t> order_idx(ncand);
      std::iota(order_idx.begin(), order_idx.end(), 0);
      std::sort(order_idx.begin(), order_idx.end(), [&](uint32_t x, uint32_t y) {
        const uint32_t* rx = cand_row(x);
        const uint32_t* ry = cand_row(y);
        if (b == Backend::Pair) {
          if (rank_n[rx[0]] != rank_n[ry[0]]) return rank_n[rx[0]] < rank_n[ry[0]];
          return rank_h[rx[1]] < rank_h[ry[1]];
        }
        return std::lexicographical_compare(rx, rx + width, ry, ry + width);
      });
      std::vector<uint32_t> next;
      next.reserve(ncand);
      for (uint32_t k : order_idx) next.push_back(store.append_generic(cand_row(k)));
      frontier = std::move(next);
    }
  }

  g->gen_idx_.reserve(g->gens_.size());
  for (const auto& e : g->gens_) {
    auto idx = store.find_generic(e.data.data());
    require(idx.has_value(), ErrorCode::Internal, "generator missing after closure");
    g->gen_idx_.push_back(*idx);
  }
  return g;
}

GroupPtr FiniteGroup::enumerate(std::vector<GroupElement> generators, uint64_t cap) {
  require(!generators.empty(), ErrorCode::InvalidArgument, "need at least one generator");
  const Backend b = generators[0].tag;
  require(b == Backend::Permutation || b == Backend::Matrix, ErrorCode::InvalidArgument,
          "pair/coset groups need a context; use semidirect/quotient/enumerate_like");
  for (const auto& e : generators)
    require(e.tag == b, ErrorCode::MixedBackend, "generators mix backends");
  Ctx ctx;
  if (b == Backend::Permutation) {
    const uint32_t deg = static_cast<uint32_t>(generators[0].data.size());
    for (const auto& e : generators)
      require(e.data.size() == deg, ErrorCode::MixedBackend, "generators mix degrees");
    ctx = PermCtx{deg};
  } else {
    const uint32_t dim = generators[0].dim;
    const uint32_t mod = generators[0].mod;
    require(is_small_prime(mod), ErrorCode::InvalidArgument, "matrix backend needs a prime modulus");
    for (const auto& e : generators)
      require(e.dim == dim && e.mod == mod, ErrorCode::MixedBackend,
              "generators mix dimensions or moduli");
    ctx = MatCtx{dim, mod};
  }
  return build(b, std::move(ctx), std::move(generators), cap, nullptr);
}

GroupPtr FiniteGroup::enumerate_like(const GroupPtr& context, std::vector<GroupElement> generators,
                                     uint64_t cap) {
  require(context != nullptr, ErrorCode::InvalidArgument, "null context group");
  require(!generators.empty(), ErrorCode::InvalidArgument, "need at least one generator");
  return build(context->backend_, context->ctx_, std::move(generators), cap, nullptr);
}

GroupPtr FiniteGroup::semidirect(const GroupPtr& normal, const GroupPtr& comp,
                                 const std::vector<std::vector<uint32_t>>& gen_autos,
                                 uint64_t cap) {
  require(normal && comp, ErrorCode::InvalidArgument, "null component");
  require(gen_autos.size() == comp->generators().size(), ErrorCode::InvalidArgument,
          "need one automorphism per complement generator");
  const uint32_t nsz = normal->size();
  const uint32_t hsz = comp->size();
  require(uint64_t(nsz) * hsz <= cap, ErrorCode::CapExceeded, "semidirect order exceeds cap");

  // validate the generator automorphisms
  const auto& ngens = normal->generator_indices();
  for (const auto& a : gen_autos) {
    require(a.size() == nsz, ErrorCode::InvalidArgument, "automorphism table size mismatch");
    DynBitset img(nsz);
    for (uint32_t v : a) {
      require(v < nsz, ErrorCode::InvalidArgument, "automorphism image out of range");
      require(!img.test(v), ErrorCode::NotAutomorphism, "not a bijection");
      img.set(v);
    }
    require(a[0] == 0, ErrorCode::NotAutomorphism, "identity not fixed");
    for (uint32_t x = 0; x < nsz; ++x)
      for (uint32_t gn : ngens)
        require(a[normal->mul(x, gn)] == normal->mul(a[x], a[gn]), ErrorCode::NotAutomorphism,
                "does not preserve products");
  }

  // extend alpha along the Cayley graph of comp; rediscoveries must agree
  std::vector<uint32_t> act(size_t(hsz) * nsz, UINT32_MAX);
  auto row = [&](uint32_t h) { return act.data() + size_t(h) * nsz; };
  for (uint32_t x = 0; x < nsz; ++x) row(0)[x] = x;
  const auto& hgens = comp->generator_indices();
  std::vector<uint32_t> queue{0};
  std::vector<char> done(hsz, 0);
  done[0] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    uint32_t h = queue[qi];
    for (size_t k = 0; k < hgens.size(); ++k) {
      uint32_t h2 = comp->mul(h, hgens[k]);
      const uint32_t* ah = row(h);
      const std::vector<uint32_t>& ag = gen_autos[k];
      if (!done[h2]) {
        uint32_t* out = row(h2);
        for (uint32_t x = 0; x < nsz; ++x) out[x] = ah[ag[x]];  // alpha_{h g} = alpha_h ∘ alpha_g
        done[h2] = 1;
        queue.push_back(h2);
      } else {
        const uint32_t* exp = row(h2);
        for (uint32_t x = 0; x < nsz; ++x)
          require(exp[x] == ah[ag[x]], ErrorCode::RelationViolation,
                  "action inconsistent with complement relations");
      }
    }
  }
  for (uint32_t h = 0; h < hsz; ++h)
    require(done[h], ErrorCode::Internal, "complement generators do not generate it");

  PairCtx ctx{normal, comp, std::move(act)};
  std::vector<GroupElement> gens;
  for (uint32_t gn : normal->generator_indices()) {
    GroupElement e;
    e.tag = Backend::Pair;
    e.data = {gn, 0};
    gens.push_back(std::move(e));
  }
  for (uint32_t gh : comp->generator_indices()) {
    GroupElement e;
    e.tag = Backend::Pair;
    e.data = {0, gh};
    gens.push_back(std::move(e));
  }
  auto g = build(Backend::Pair, std::move(ctx), std::move(gens), cap, nullptr);
  require(g->order() == uint64_t(nsz) * hsz, ErrorCode::Internal, "semidirect closure incomplete");
  return g;
}

GroupPtr FiniteGroup::coset_group(const GroupPtr& parent, DynBitset kernel_bits,
                                  std::vector<uint32_t> rep_of, uint64_t cap) {
  require(parent != nullptr, ErrorCode::InvalidArgument, "null parent");
  CosetCtx ctx{parent, std::move(kernel_bits), std::move(rep_of)};
  std::vector<GroupElement> gens;
  for (uint32_t gi : parent->generator_indices()) {
    GroupElement e;
    e.tag = Backend::Coset;
    e.data = {ctx.rep_of[gi]};
    gens.push_back(std::move(e));
  }
  if (gens.empty()) {
    GroupElement e;
    e.tag = Backend::Coset;
    e.data = {ctx.rep_of[0]};
    gens.push_back(std::move(e));
  }
  return build(Backend::Coset, std::move(ctx), std::move(gens), cap, nullptr);
}

// ------------------------------------------------------------------ binary cache

bool FiniteGroup::cacheable() const {
  return backend_ == Backend::Permutation || backend_ == Backend::Matrix;
}

namespace {
void put_u32(std::ostream& os, uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ostream& os, uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
uint32_t get_u32(std::istream& is) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  require(bool(is), ErrorCode::CacheError, "truncated cache file");
  return v;
}
uint64_t get_u64(std::istream& is) {
  uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  require(bool(is), ErrorCode::CacheError, "truncated cache file");
  return v;
}
}  // namespace

std::string FiniteGroup::cache_file_name() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "g_%016llx.gc",
                static_cast<unsigned long long>(generator_content_hash()));
  return buf;
}

void FiniteGroup::save_cache(const std::string& path) const {
  require(cacheable(), ErrorCode::CacheError, "only permutation/matrix groups are cacheable");
  std::ofstream os(path, std::ios::binary);
  require(bool(os), ErrorCode::CacheError, "cannot open cache file for writing");
  os.write("GCAC", 4);
  put_u32(os, 1);  // version
  put_u32(os, uint32_t(backend_));
  put_u32(os, backend_ == Backend::Permutation ? degree() : dimension());
  put_u32(os, backend_ == Backend::Permutation ? 0 : modulus());
  put_u64(os, order());
  put_u64(os, generator_content_hash());
  put_u32(os, uint32_t(gens_.size()));
  std::vector<uint32_t> row(store_.width());
  for (const auto& e : gens_)
    for (uint32_t v : e.data) put_u32(os, v);
  for (uint32_t i = 0; i < size(); ++i) {
    row_of(i, row.data());
    if (store_.narrow())
      for (uint32_t v : row) {
        uint16_t w = static_cast<uint16_t>(v);
        os.write(reinterpret_cast<const char*>(&w), 2);
      }
    else
      for (uint32_t v : row) put_u32(os, v);
  }
  require(bool(os), ErrorCode::CacheError, "cache write failed");
}

GroupPtr FiniteGroup::load_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(bool(is), ErrorCode::CacheError, "cannot open cache file");
  char magic[4];
  is.read(magic, 4);
  require(bool(is) && std::memcmp(magic, "GCAC", 4) == 0, ErrorCode::CacheError, "bad magic");
  require(get_u32(is) == 1, ErrorCode::CacheError, "unsupported cache version");
  const Backend b = Backend(get_u32(is));
  require(b == Backend::Permutation || b == Backend::Matrix, ErrorCode::CacheError, "bad backend tag");
  const uint32_t dd = get_u32(is);
  const uint32_t mod = get_u32(is);
  const uint64_t order = get_u64(is);
  const uint64_t declared_hash = get_u64(is);
  const uint32_t ngens = get_u32(is);
  require(order >= 1 && order <= kDefaultEnumCap, ErrorCode::CacheError, "order out of range");
  const uint32_t width = b == Backend::Permutation ? dd : dd * dd;
  std::vector<GroupElement> gens;
  for (uint32_t k = 0; k < ngens; ++k) {
    std::vector<uint32_t> data(width);
    for (auto& v : data) v = get_u32(is);
    gens.push_back(b == Backend::Permutation ? make_permutation(std::move(data))
                                             : make_matrix(dd, mod, std::move(data)));
  }
  std::vector<std::vector<uint32_t>> rows(order, std::vector<uint32_t>(width));
  const bool narrow = b == Backend::Permutation;
  for (auto& row : rows) {
    if (narrow)
      for (auto& v : row) {
        uint16_t w = 0;
        is.read(reinterpret_cast<char*>(&w), 2);
        require(bool(is), ErrorCode::CacheError, "truncated element table");
        v = w;
      }
    else
      for (auto& v : row) v = get_u32(is);
  }
  Ctx ctx;
  if (b == Backend::Permutation)
    ctx = PermCtx{dd};
  else
    ctx = MatCtx{dd, mod};
  auto g = build(b, std::move(ctx), std::move(gens), kDefaultEnumCap, &rows);
  require(g->generator_content_hash() == declared_hash, ErrorCode::CacheError,
          "generator hash mismatch");
  return g;
}

}  // namespace cdim
