#include "cdim/numtheory.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cdim/errors.hpp"

namespace cdim::nt {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return uint64_t((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t pollard_brent(uint64_t n) {
  if ((n & 1) == 0) return 2;
  uint64_t c = 1;
  while (true) {
    uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
    const uint64_t m = 128;
    uint64_t r = 1;
    auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      uint64_t k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (d != n) return d;
    ++c;  // rare cycle degeneracy: retry with a new increment
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(uint64_t n) { return miller_rabin(n); }

Factorization factorize(uint64_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "factorize needs n >= 1");
  std::vector<uint64_t> fs;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      fs.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, fs);
  std::sort(fs.begin(), fs.end());
  Factorization f;
  for (size_t i = 0; i < fs.size();) {
    size_t j = i;
    while (j < fs.size() && fs[j] == fs[i]) ++j;
    f.primes.emplace_back(fs[i], uint32_t(j - i));
    i = j;
  }
  return f;
}

uint32_t big_omega(uint64_t n) { return factorize(n).big_omega(); }

std::string factor_string(const Factorization& f) {
  if (f.primes.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < f.primes.size(); ++i) {
    if (i) s += "*";
    s += std::to_string(f.primes[i].first);
    if (f.primes[i].second > 1) s += "^" + std::to_string(f.primes[i].second);
  }
  return s;
}

uint64_t pow_checked(uint64_t r, uint32_t n) {
  require(r >= 1, ErrorCode::InvalidArgument, "base must be positive");
  uint64_t v = 1;
  for (uint32_t i = 0; i < n; ++i) {
    require(v <= UINT64_MAX / r, ErrorCode::Overflow, "power exceeds 64 bits");
    v *= r;
  }
  return v;
}

uint64_t cyclotomic_value(uint32_t n, uint64_t r) {
  require(n >= 1 && r >= 2, ErrorCode::InvalidArgument, "cyclotomic_value needs n >= 1, r >= 2");
  uint64_t num = pow_checked(r, n) - 1;
  if (n == 1) return num;
  for (uint32_t d = 1; d < n; ++d)
    if (n % d == 0) num /= cyclotomic_value(d, r);
  return num;
}

uint32_t omega_power_minus_one(uint64_t r, uint32_t n) {
  require(n >= 1 && r >= 2, ErrorCode::InvalidArgument, "need n >= 1, r >= 2");
  pow_checked(r, n);  // overflow gate for the whole product
  uint32_t total = 0;
  for (uint32_t d = 1; d <= n; ++d)
    if (n % d == 0) total += big_omega(cyclotomic_value(d, r));
  return total;
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<uint64_t>(lo, 2);
  uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  std::vector<char> base(root + 1, 1);
  std::vector<uint64_t> base_primes;
  for (uint64_t p = 2; p <= root; ++p) {
    if (!base[p]) continue;
    base_primes.push_back(p);
    for (uint64_t q = p * p; q <= root; q += p) base[q] = 0;
  }
  const uint64_t seg = 1 << 18;
  std::vector<char> mark;
  for (uint64_t start = lo; start <= hi; start += seg) {
    uint64_t end = std::min(hi, start + seg - 1);
    mark.assign(size_t(end - start + 1), 1);
    for (uint64_t p : base_primes) {
      uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (uint64_t q = first; q <= end; q += p) mark[size_t(q - start)] = 0;
    }
    for (uint64_t v = start; v <= end; ++v)
      if (mark[size_t(v - start)]) out.push_back(v);
    if (end == hi) break;
  }
  return out;
}

uint64_t lcm_upto(uint32_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "lcm_upto needs n >= 1");
  uint64_t l = 1;
  for (uint32_t k = 2; k <= n; ++k) {
    uint64_t g = std::gcd(l, uint64_t(k));
    require(l / g <= UINT64_MAX / k, ErrorCode::Overflow, "lcm exceeds 64 bits");
    l = l / g * k;
  }
  return l;
}

namespace {

// r^n - 1 split into cyclotomic pieces so each factorize call stays small
Factorization factor_power_minus_one(uint64_t r, uint32_t n) {
  pow_checked(r, n);
  std::map<uint64_t, uint32_t> acc;
  for (uint32_t d = 1; d <= n; ++d)
    if (n % d == 0)
      for (const auto& [p, e] : factorize(cyclotomic_value(d, r)).primes) acc[p] += e;
  Factorization f;
  f.primes.assign(acc.begin(), acc.end());
  return f;
}

}  // namespace

SieveReport sieve_pi(uint32_t n, uint32_t max_omega, uint64_t lo, uint64_t hi) {
  require(n >= 1, ErrorCode::InvalidArgument, "sieve_pi needs n >= 1");
  SieveReport rep;
  rep.n = n;
  rep.max_omega = max_omega;
  rep.lo = lo;
  rep.hi = hi;
  std::map<uint32_t, uint64_t> hist;
  for (uint64_t r : primes_in_range(std::max<uint64_t>(lo, 3), hi)) {
    Factorization f = factor_power_minus_one(r, n);
    uint32_t om = f.big_omega();
    ++hist[om];
    if (om <= max_omega) rep.hits.push_back({r, om, std::move(f)});
  }
  rep.histogram.assign(hist.begin(), hist.end());
  return rep;
}

std::vector<DicksonTriple> dickson_triples(uint64_t limit) {
  require(limit <= (UINT64_MAX - 1) / 12, ErrorCode::Overflow, "12*limit+1 exceeds 64 bits");
  std::vector<DicksonTriple> out;
  for (uint64_t n : primes_in_range(2, limit)) {
    if (!miller_rabin(6 * n + 1) || !miller_rabin(12 * n + 1)) continue;
    uint64_t r = 12 * n + 1;
    require(omega_power_minus_one(r, 2) == 6, ErrorCode::Internal,
            "dickson triple missed the Omega identity");
    out.push_back({n, r});
  }
  return out;
}

EmpiricalMn m_n_empirical(uint32_t n, uint64_t lo, uint64_t hi) {
  require(n >= 1, ErrorCode::InvalidArgument, "m_n_empirical needs n >= 1");
  EmpiricalMn out;
  std::map<uint32_t, uint64_t> hist;
  for (uint64_t r : primes_in_range(std::max<uint64_t>(lo, 3), hi))
    ++hist[omega_power_minus_one(r, n)];
  out.histogram.assign(hist.begin(), hist.end());
  if (!hist.empty()) {
    out.min_omega = hist.begin()->first;
    out.count_at_min = hist.begin()->second;
  }
  return out;
}

uint64_t nbar(uint32_t n) {
  uint64_t l = lcm_upto(n);
  require(l <= UINT64_MAX / 2, ErrorCode::Overflow, "nbar exceeds 64 bits");
  return 2 * l;
}

uint64_t theorem23_bound(uint32_t n, uint32_t m) {
  require(n >= 1 && m >= 1, ErrorCode::InvalidArgument, "theorem23_bound needs n, m >= 1");
  __uint128_t v = 2 * (((__uint128_t)n + 1) * (n + 1) + (__uint128_t)n * m);
  require(v <= UINT64_MAX, ErrorCode::Overflow, "bound exceeds 64 bits");
  return uint64_t(v);
}

}  // namespace cdim::nt
