#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "cdim/errors.hpp"
#include "cdim/numtheory.hpp"

using namespace cdim;
using namespace cdim::nt;

namespace {

// independent naive oracle
std::vector<uint64_t> naive_factor(uint64_t n) {
  std::vector<uint64_t> fs;
  for (uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      fs.push_back(p);
      n /= p;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

bool naive_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("primality matches the naive oracle up to 20000") {
  for (uint64_t n = 0; n <= 20000; ++n) CHECK(is_prime(n) == naive_prime(n));
}

TEST_CASE("primality on known hard cases") {
  CHECK_FALSE(is_prime(561));         // Carmichael
  CHECK_FALSE(is_prime(1105));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime((uint64_t(1) << 61) - 1));
  CHECK(is_prime(1000000000000000009ull));
  CHECK_FALSE(is_prime(1000000000000000007ull));
}

TEST_CASE("factorize matches the naive oracle on a dense range and samples") {
  for (uint64_t n = 1; n <= 20000; ++n) {
    auto f = factorize(n);
    std::vector<uint64_t> flat;
    for (auto [p, e] : f.primes)
      for (uint32_t k = 0; k < e; ++k) flat.push_back(p);
    CHECK(flat == naive_factor(n));
    CHECK(f.value() == n);
  }
  for (uint64_t n : {999983ull, 1000000ull, 123456789ull, 999999999989ull}) {
    auto f = factorize(n);
    std::vector<uint64_t> flat;
    for (auto [p, e] : f.primes)
      for (uint32_t k = 0; k < e; ++k) flat.push_back(p);
    CHECK(flat == naive_factor(n));
  }
}

TEST_CASE("factorize handles 63-bit semiprimes via rho") {
  auto f = factorize((uint64_t(1) << 59) - 1);
  REQUIRE(f.primes.size() == 2);
  CHECK(f.primes[0] == std::pair<uint64_t, uint32_t>{179951, 1});
  CHECK(f.primes[1] == std::pair<uint64_t, uint32_t>{3203431780337ull, 1});
  auto g = factorize(1000003ull * 1000033ull);
  REQUIRE(g.primes.size() == 2);
  CHECK(g.primes[0].first == 1000003);
  CHECK(g.primes[1].first == 1000033);
}

TEST_CASE("big_omega basics") {
  CHECK(big_omega(1) == 0);
  CHECK(big_omega(2) == 1);
  CHECK(big_omega(12) == 3);
  CHECK(big_omega(1024) == 10);
  CHECK(big_omega(3720) == 6);
}

TEST_CASE("factor_string formatting") {
  CHECK(factor_string(factorize(1)) == "1");
  CHECK(factor_string(factorize(3720)) == "2^3*3*5*31");
  CHECK(factor_string(factorize(97)) == "97");
}

TEST_CASE("cyclotomic values and the product identity") {
  CHECK(cyclotomic_value(1, 10) == 9);
  CHECK(cyclotomic_value(2, 10) == 11);
  CHECK(cyclotomic_value(6, 2) == 3);
  CHECK(cyclotomic_value(4, 3) == 10);
  for (uint64_t r : {2ull, 3ull, 5ull, 61ull}) {
    for (uint32_t n : {1u, 2u, 3u, 4u, 6u, 10u, 12u}) {
      uint64_t v = 1;
      bool fits = true;
      for (uint32_t i = 0; i < n && fits; ++i) {
        if (v > UINT64_MAX / r) fits = false;
        v *= r;
      }
      if (!fits) continue;
      uint64_t prod = 1;
      for (uint32_t d = 1; d <= n; ++d)
        if (n % d == 0) prod *= cyclotomic_value(d, r);
      CHECK(prod == pow_checked(r, n) - 1);
    }
  }
}

TEST_CASE("omega of r^n - 1 via cyclotomic split") {
  CHECK(omega_power_minus_one(61, 2) == 6);
  CHECK(omega_power_minus_one(2, 11) == 2);   // 2047 = 23 * 89
  CHECK(omega_power_minus_one(5, 2) == 4);    // 24 = 2^3 * 3
  CHECK(omega_power_minus_one(7, 2) == 5);    // 48
  CHECK(omega_power_minus_one(11, 2) == 5);   // 120
  CHECK(omega_power_minus_one(13, 2) == 5);   // 168
  for (uint64_t r : {3ull, 7ull, 10ull})
    for (uint32_t n : {2u, 3u, 4u, 6u})
      CHECK(omega_power_minus_one(r, n) == big_omega(pow_checked(r, n) - 1));
}

TEST_CASE("overflow is reported") {
  CHECK(code_of([] { pow_checked(2, 64); }) == ErrorCode::Overflow);
  CHECK(code_of([] { omega_power_minus_one(3, 42); }) == ErrorCode::Overflow);
  CHECK(pow_checked(2, 63) == uint64_t(1) << 63);
}

TEST_CASE("segmented sieve") {
  auto ps = primes_in_range(2, 10000);
  CHECK(ps.size() == 1229);
  CHECK(ps.front() == 2);
  CHECK(ps.back() == 9973);
  auto window = primes_in_range(999900, 1000100);
  std::vector<uint64_t> expect;
  for (uint64_t v = 999900; v <= 1000100; ++v)
    if (naive_prime(v)) expect.push_back(v);
  CHECK(window == expect);
  CHECK(primes_in_range(2, 2) == std::vector<uint64_t>{2});
  CHECK(primes_in_range(14, 16).empty());
  CHECK(primes_in_range(10, 5).empty());
}

TEST_CASE("lcm_upto") {
  CHECK(lcm_upto(1) == 1);
  CHECK(lcm_upto(2) == 2);
  CHECK(lcm_upto(4) == 12);
  CHECK(lcm_upto(6) == 60);
  CHECK(lcm_upto(10) == 2520);
}

TEST_CASE("sieve_pi collects the right primes with full factorizations") {
  auto rep = sieve_pi(2, 6, 5, 100);
  CHECK(rep.n == 2);
  CHECK(rep.lo == 5);
  CHECK(rep.hi == 100);
  std::vector<uint64_t> hit_rs;
  for (const auto& h : rep.hits) {
    hit_rs.push_back(h.r);
    CHECK(naive_prime(h.r));
    CHECK(h.r % 2 == 1);
    CHECK(h.omega <= 6);
    CHECK(h.factors.value() == h.r * h.r - 1);
    CHECK(h.factors.big_omega() == h.omega);
    CHECK(h.omega == big_omega(h.r * h.r - 1));
  }
  CHECK(std::find(hit_rs.begin(), hit_rs.end(), 61) != hit_rs.end());
  CHECK(std::find(hit_rs.begin(), hit_rs.end(), 5) != hit_rs.end());  // 24 = 2^3*3
  uint64_t scanned = 0;
  for (const auto& [om, cnt] : rep.histogram) {
    (void)om;
    scanned += cnt;
  }
  CHECK(scanned == primes_in_range(5, 100).size());

  // nothing above 13 gets under five
  CHECK(sieve_pi(2, 4, 17, 20000).hits.empty());
  CHECK(sieve_pi(2, 5, 17, 20000).hits.empty());
}

TEST_CASE("sieve_pi is monotone in the omega cap") {
  std::vector<uint64_t> prev;
  for (uint32_t m = 3; m <= 8; ++m) {
    auto rep = sieve_pi(2, m, 3, 500);
    std::vector<uint64_t> rs;
    for (const auto& h : rep.hits) rs.push_back(h.r);
    CHECK(std::includes(rs.begin(), rs.end(), prev.begin(), prev.end()));
    prev = std::move(rs);
  }
}

TEST_CASE("dickson triples up to 100") {
  auto ts = dickson_triples(100);
  std::vector<uint64_t> expect;
  for (uint64_t n = 2; n <= 100; ++n)
    if (naive_prime(n) && naive_prime(6 * n + 1) && naive_prime(12 * n + 1))
      expect.push_back(n);
  REQUIRE(ts.size() == expect.size());
  CHECK(ts.size() == 7);
  for (size_t i = 0; i < ts.size(); ++i) {
    CHECK(ts[i].n == expect[i]);
    CHECK(ts[i].r == 12 * ts[i].n + 1);
    CHECK(big_omega(ts[i].r * ts[i].r - 1) == 6);
  }
  CHECK(ts[1].n == 5);
  CHECK(ts[1].r == 61);
}

TEST_CASE("empirical minimum of omega over a prime window") {
  auto e = m_n_empirical(2, 17, 20000);
  CHECK(e.min_omega == 6);
  CHECK(e.count_at_min >= 1);
  uint64_t total = 0;
  for (const auto& [om, cnt] : e.histogram) {
    if (om == e.min_omega) CHECK(cnt == e.count_at_min);
    total += cnt;
  }
  CHECK(total == primes_in_range(17, 20000).size());

  auto one = m_n_empirical(1, 3, 100);
  CHECK(one.min_omega == 1);
  CHECK(one.count_at_min == 1);  // r - 1 prime forces r = 3

  CHECK(m_n_empirical(2, 24, 28).histogram.empty());
}

TEST_CASE("nbar and the theorem bound") {
  CHECK(nbar(1) == 2);
  CHECK(nbar(2) == 4);
  CHECK(nbar(3) == 12);
  CHECK(nbar(4) == 24);
  CHECK(nbar(6) == 120);
  CHECK(theorem23_bound(1, 21) == 50);
  CHECK(theorem23_bound(1, 6) == 20);
  CHECK(theorem23_bound(1, 10) == 28);
  CHECK(theorem23_bound(2, 6) == 42);
  CHECK(code_of([] { theorem23_bound(0, 5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { theorem23_bound(5, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { nbar(50); }) == ErrorCode::Overflow);
}
