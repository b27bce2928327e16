#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cdim/bitset.hpp"
#include "cdim/element.hpp"
#include "cdim/errors.hpp"

namespace cdim {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Compact per-group element storage with an open-addressing index.
// Permutation payloads are stored as u16 (degree is capped at 65535); everything
// else as u32. Rows are immutable once appended; indices are dense from 0.
class ElementStore {
 public:
  ElementStore(Backend tag, uint32_t width, bool narrow);

  uint32_t size() const { return count_; }
  uint32_t width() const { return width_; }
  bool narrow() const { return narrow_; }

  const uint16_t* row16(uint32_t i) const { return &d16_[size_t(i) * width_]; }
  const uint32_t* row32(uint32_t i) const { return &d32_[size_t(i) * width_]; }

  // scratch is width() entries wide, in the store's native layout
  uint32_t append16(const uint16_t* vals);
  uint32_t append32(const uint32_t* vals);
  std::optional<uint32_t> find16(const uint16_t* vals) const;
  std::optional<uint32_t> find32(const uint32_t* vals) const;

  void get(uint32_t i, std::vector<uint32_t>& out) const;
  std::optional<uint32_t> find_generic(const uint32_t* vals) const;
  uint32_t append_generic(const uint32_t* vals);

 private:
  void grow();
  uint64_t hash16(const uint16_t* vals) const;
  uint64_t hash32(const uint32_t* vals) const;

  Backend tag_;
  uint32_t width_;
  bool narrow_;
  uint32_t count_ = 0;
  std::vector<uint16_t> d16_;
  std::vector<uint32_t> d32_;
  std::vector<uint32_t> table_;  // 0 = empty, else index + 1
  uint64_t mask_ = 0;
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  static constexpr uint64_t kDefaultEnumCap = uint64_t(1) << 22;

  struct PermCtx {
    uint32_t degree;
  };
  struct MatCtx {
    uint32_t dim;
    uint32_t mod;
  };
  struct PairCtx {
    GroupPtr normal;
    GroupPtr comp;
    std::vector<uint32_t> act;  // act[h * |N| + n] = index of automorphism image in N
  };
  struct CosetCtx {
    GroupPtr parent;
    DynBitset kernel;
    std::vector<uint32_t> rep_of;  // parent index -> minimal index in its right coset
  };

  // Closure of the generators under multiplication, BFS layer by layer; identity gets
  // index 0 and each new layer is sorted by canonical key before indices are assigned.
  static GroupPtr enumerate(std::vector<GroupElement> generators,
                            uint64_t cap = kDefaultEnumCap);
  // Same, but inherits the backend context (pair action tables / coset structure /
  // degree / modulus) from an existing group. Generators must use that backend.
  static GroupPtr enumerate_like(const GroupPtr& context, std::vector<GroupElement> generators,
                                 uint64_t cap = kDefaultEnumCap);
  // N x H with H acting by automorphisms; gen_autos[k] is the index map on N of the
  // automorphism assigned to comp->generators()[k]. Verified: each map is an
  // automorphism, and the extension along H's Cayley graph is consistent.
  static GroupPtr semidirect(const GroupPtr& normal, const GroupPtr& comp,
                             const std::vector<std::vector<uint32_t>>& gen_autos,
                             uint64_t cap = kDefaultEnumCap);
  // Internal-ish: coset group over parent/kernel. Most callers want quotient() from
  // subgroup.hpp, which also returns the projection hom.
  static GroupPtr coset_group(const GroupPtr& parent, DynBitset kernel_bits,
                              std::vector<uint32_t> rep_of, uint64_t cap = kDefaultEnumCap);

  Backend backend() const { return backend_; }
  uint64_t order() const { return store_.size(); }
  uint32_t size() const { return store_.size(); }
  uint32_t degree() const;     // permutation backend
  uint32_t dimension() const;  // matrix backend
  uint32_t modulus() const;    // matrix backend
  uint64_t enum_cap() const { return cap_; }

  const std::vector<GroupElement>& generators() const { return gens_; }
  const std::vector<uint32_t>& generator_indices() const { return gen_idx_; }

  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t conj(uint32_t g, uint32_t x) const;  // g x g^{-1}
  bool commute(uint32_t a, uint32_t b) const;
  uint32_t element_order(uint32_t a) const;
  uint32_t power(uint32_t a, int64_t e) const;
  bool is_abelian() const;

  GroupElement element(uint32_t i) const;
  std::optional<uint32_t> find(const GroupElement& e) const;
  uint32_t index_of(const GroupElement& e) const;  // Error(UnknownElement) if absent
  std::string canonical_key(uint32_t i) const;
  std::string canonical_key(const GroupElement& e) const;

  GroupElement multiply(const GroupElement& x, const GroupElement& y) const;
  GroupElement inverse(const GroupElement& x) const;
  GroupElement identity_element() const;

  // i -> g x_i g^{-1}, lazily built and cached per g
  std::shared_ptr<const std::vector<uint32_t>> conj_map(uint32_t g) const;
  // conjugacy classes as index lists, each ascending, ordered by first member
  const std::vector<std::vector<uint32_t>>& conjugacy_classes() const;

  const PairCtx* pair_ctx() const { return std::get_if<PairCtx>(&ctx_); }
  const CosetCtx* coset_ctx() const { return std::get_if<CosetCtx>(&ctx_); }

  const ElementStore& store() const { return store_; }
  uint64_t generator_content_hash() const;

  // binary cache (permutation / matrix backends only)
  bool cacheable() const;
  void save_cache(const std::string& path) const;
  static GroupPtr load_cache(const std::string& path);
  std::string cache_file_name() const;  // keyed by generator content hash

 private:
  using Ctx = std::variant<PermCtx, MatCtx, PairCtx, CosetCtx>;

  FiniteGroup(Backend b, Ctx ctx, uint32_t width, bool narrow);

  static GroupPtr build(Backend b, Ctx ctx, std::vector<GroupElement> gens, uint64_t cap,
                        const std::vector<std::vector<uint32_t>>* preloaded_rows);

  void payload_mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const;
  void payload_inv(const uint32_t* a, uint32_t* out) const;
  void identity_payload(uint32_t* out) const;
  void row_of(uint32_t i, uint32_t* out) const;
  std::string key_of_payload(const uint32_t* vals) const;
  void check_generator(const GroupElement& e) const;


  Backend backend_;
  Ctx ctx_;
  uint64_t cap_ = kDefaultEnumCap;
  ElementStore store_;
  std::vector<GroupElement> gens_;
  std::vector<uint32_t> gen_idx_;

  mutable std::mutex cache_mu_;
  mutable std::vector<uint32_t> inv_table_;
  mutable std::optional<bool> abelian_;
  mutable std::unordered_map<uint32_t, std::shared_ptr<const std::vector<uint32_t>>> conj_maps_;
  mutable std::optional<std::vector<std::vector<uint32_t>>> classes_;
};

}  // namespace cdim
