#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdim/errors.hpp"

namespace cdim {

enum class Backend : uint8_t { Permutation = 0, Matrix = 1, Pair = 2, Coset = 3 };

const char* backend_name(Backend b);

// Value-type element. Payloads by backend:
//   Permutation: data = images of 0..degree-1 (function composition convention)
//   Matrix:      data = row-major entries in [0, mod), dim x dim
//   Pair:        data = {index in normal component, index in complement component}
//   Coset:       data = {index of coset representative in parent group}
// Pair/Coset payloads only make sense relative to the owning group's context.
struct GroupElement {
  Backend tag = Backend::Permutation;
  uint32_t dim = 0;  // matrix backend only
  uint32_t mod = 0;  // matrix backend only
  std::vector<uint32_t> data;

  bool operator==(const GroupElement& o) const {
    return tag == o.tag && dim == o.dim && mod == o.mod && data == o.data;
  }
};

GroupElement make_permutation(std::vector<uint32_t> images);
GroupElement make_matrix(uint32_t dim, uint32_t mod, std::vector<uint32_t> entries);
GroupElement identity_permutation(uint32_t degree);
GroupElement identity_matrix(uint32_t dim, uint32_t mod);

// mod-p matrix helpers (row-major)
std::vector<uint32_t> mat_mul(const uint32_t* a, const uint32_t* b, uint32_t d, uint32_t p);
std::vector<uint32_t> mat_inv(const uint32_t* a, uint32_t d, uint32_t p);  // Error(Internal) if singular

}  // namespace cdim
