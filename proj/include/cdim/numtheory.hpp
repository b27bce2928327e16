#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cdim::nt {

struct Factorization {
  std::vector<std::pair<uint64_t, uint32_t>> primes;  // ascending (prime, exponent)

  uint32_t big_omega() const {
    uint32_t s = 0;
    for (const auto& [p, e] : primes) s += e;
    return s;
  }
  uint64_t value() const {
    uint64_t v = 1;
    for (const auto& [p, e] : primes)
      for (uint32_t k = 0; k < e; ++k) v *= p;
    return v;
  }
};

bool is_prime(uint64_t n);
Factorization factorize(uint64_t n);  // n >= 1; empty list for n = 1
uint32_t big_omega(uint64_t n);
std::string factor_string(const Factorization& f);  // e.g. "2^3*3*5*31"

// r^n, Error(Overflow) if it does not fit in uint64 or r^n - 1 would not
uint64_t pow_checked(uint64_t r, uint32_t n);

// value of the n-th cyclotomic polynomial at r (r >= 2, n >= 1)
uint64_t cyclotomic_value(uint32_t n, uint64_t r);

// Omega(r^n - 1), summed over the cyclotomic factors so the pieces stay small
uint32_t omega_power_minus_one(uint64_t r, uint32_t n);

// primes in [lo, hi] inclusive, segmented sieve
std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi);

uint64_t lcm_upto(uint32_t n);  // lcm(1..n)

struct SieveHit {
  uint64_t r = 0;
  uint32_t omega = 0;
  Factorization factors;  // of r^n - 1
};

// odd primes r in [lo, hi] with Omega(r^n - 1) <= max_omega; the histogram counts
// every odd prime scanned, keyed by Omega value
struct SieveReport {
  uint32_t n = 0;
  uint32_t max_omega = 0;
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<SieveHit> hits;
  std::vector<std::pair<uint32_t, uint64_t>> histogram;  // ascending Omega
};

SieveReport sieve_pi(uint32_t n, uint32_t max_omega, uint64_t lo, uint64_t hi);

// n, 6n+1 and 12n+1 simultaneously prime with n <= limit; every emitted r = 12n+1
// is re-checked to satisfy Omega(r^2 - 1) = 6
struct DicksonTriple {
  uint64_t n = 0;
  uint64_t r = 0;  // 12n + 1
};
std::vector<DicksonTriple> dickson_triples(uint64_t limit);

// empirical minimum of Omega(r^n - 1) over odd primes in [lo, hi], with the count
// attaining it; an observation about the scanned range, nothing more
struct EmpiricalMn {
  uint32_t min_omega = 0;
  uint64_t count_at_min = 0;
  std::vector<std::pair<uint32_t, uint64_t>> histogram;
};
EmpiricalMn m_n_empirical(uint32_t n, uint64_t lo, uint64_t hi);

uint64_t nbar(uint32_t n);  // 2 * lcm(1..n)

uint64_t theorem23_bound(uint32_t n, uint32_t m);  // 2 * ((n+1)^2 + n*m)

}  // namespace cdim::nt
