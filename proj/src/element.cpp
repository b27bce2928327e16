#include "cdim/element.hpp"

#include <algorithm>
#include <numeric>

namespace cdim {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Permutation: return "permutation";
    case Backend::Matrix: return "matrix";
    case Backend::Pair: return "pair";
    case Backend::Coset: return "coset";
  }
  return "?";
}

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MixedBackend: return "MixedBackend";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::ActionNotFaithful: return "ActionNotFaithful";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::LatticeBudgetExceeded: return "LatticeBudgetExceeded";
    case ErrorCode::NoIntertwiner: return "NoIntertwiner";
    case ErrorCode::ScalarSearchFailed: return "ScalarSearchFailed";
    case ErrorCode::UnrecognizedSimpleGroup: return "UnrecognizedSimpleGroup";
    case ErrorCode::LayerDecompositionFailed: return "LayerDecompositionFailed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CacheError: return "CacheError";
    case ErrorCode::Internal: return "Internal";
  }
  return "?";
}

GroupElement make_permutation(std::vector<uint32_t> images) {
  const uint32_t n = static_cast<uint32_t>(images.size());
  require(n >= 1 && n <= 65535, ErrorCode::InvalidArgument, "permutation degree out of range");
  std::vector<bool> seen(n, false);
  for (uint32_t v : images) {
    require(v < n && !seen[v], ErrorCode::InvalidArgument, "not a permutation");
    seen[v] = true;
  }
  GroupElement e;
  e.tag = Backend::Permutation;
  e.data = std::move(images);
  return e;
}

GroupElement make_matrix(uint32_t dim, uint32_t mod, std::vector<uint32_t> entries) {
  require(dim >= 1 && dim <= 64, ErrorCode::InvalidArgument, "matrix dimension out of range");
  require(mod >= 2, ErrorCode::InvalidArgument, "modulus too small");
  bool prime = true;
  for (uint32_t d = 2; uint64_t(d) * d <= mod; ++d)
    if (mod % d == 0) prime = false;
  require(prime, ErrorCode::InvalidArgument, "modulus must be prime");
  require(entries.size() == size_t(dim) * dim, ErrorCode::InvalidArgument, "entry count mismatch");
  for (auto& v : entries) v %= mod;
  GroupElement e;
  e.tag = Backend::Matrix;
  e.dim = dim;
  e.mod = mod;
  e.data = std::move(entries);
  return e;
}

GroupElement identity_permutation(uint32_t degree) {
  std::vector<uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0);
  return make_permutation(std::move(im));
}

GroupElement identity_matrix(uint32_t dim, uint32_t mod) {
  std::vector<uint32_t> e(size_t(dim) * dim, 0);
  for (uint32_t i = 0; i < dim; ++i) e[size_t(i) * dim + i] = 1;
  return make_matrix(dim, mod, std::move(e));
}

std::vector<uint32_t> mat_mul(const uint32_t* a, const uint32_t* b, uint32_t d, uint32_t p) {
  std::vector<uint32_t> c(size_t(d) * d);
  for (uint32_t i = 0; i < d; ++i) {
    for (uint32_t j = 0; j < d; ++j) {
      uint64_t acc = 0;
      for (uint32_t k = 0; k < d; ++k) acc += uint64_t(a[i * d + k]) * b[k * d + j];
      c[i * d + j] = static_cast<uint32_t>(acc % p);
    }
  }
  return c;
}

std::vector<uint32_t> mat_inv(const uint32_t* a, uint32_t d, uint32_t p) {
  // Gauss-Jordan over F_p
  std::vector<uint64_t> m(size_t(d) * 2 * d, 0);
  auto at = [&](uint32_t r, uint32_t c) -> uint64_t& { return m[size_t(r) * 2 * d + c]; };
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) at(i, j) = a[i * d + j] % p;
  for (uint32_t i = 0; i < d; ++i) at(i, d + i) = 1;

  auto powmod = [&](uint64_t b, uint64_t e) {
    uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };

  for (uint32_t col = 0; col < d; ++col) {
    uint32_t piv = col;
    while (piv < d && at(piv, col) == 0) ++piv;
    require(piv < d, ErrorCode::Internal, "singular matrix");
    if (piv != col)
      for (uint32_t j = 0; j < 2 * d; ++j) std::swap(at(piv, j), at(col, j));
    uint64_t inv = powmod(at(col, col), p - 2);  // p prime
    for (uint32_t j = 0; j < 2 * d; ++j) at(col, j) = at(col, j) * inv % p;
    for (uint32_t r = 0; r < d; ++r) {
      if (r == col || at(r, col) == 0) continue;
      uint64_t f = at(r, col);
      for (uint32_t j = 0; j < 2 * d; ++j) at(r, j) = (at(r, j) + (p - f) * at(col, j)) % p;
    }
  }
  std::vector<uint32_t> out(size_t(d) * d);
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) out[i * d + j] = static_cast<uint32_t>(at(i, d + j));
  return out;
}

}  // namespace cdim
