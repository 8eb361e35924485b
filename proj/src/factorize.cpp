#include <algorithm>
#include <array>
#include <numeric>

#include "floorsum/arith.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/wide.hpp"

namespace floorsum::arith {

namespace {

constexpr std::uint32_t kTrialLimit = 4096;

std::vector<std::uint32_t> make_small_primes() {
  std::vector<bool> composite(kTrialLimit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint32_t j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = make_small_primes();
  return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return r;
}

// The first twelve primes as bases are a proven deterministic set below 2^64.
bool miller_rabin(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    if (a % n == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Brent's cycle detection with batched gcds. n must be odd, composite and
// free of prime factors below kTrialLimit.
std::uint64_t brent_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = brent_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) return true;
    if (m % p == 0) return m == p;
  }
  return miller_rabin(m);
}

Factorization factorize(std::uint64_t m) {
  if (m == 0 || m > kMaxFactorizable)
    throw RangeError("factorize: argument must lie in [1, 2^63]");
  Factorization out;
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > m) break;
    if (m % p != 0) continue;
    std::uint32_t e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    out.push_back({p, e});
  }
  if (m == 1) return out;
  const std::uint64_t last = small_primes().back();
  if (m <= last * last) {
    out.push_back({m, 1});
    return out;
  }
  std::vector<std::uint64_t> large;
  split_large(m, large);
  std::sort(large.begin(), large.end());
  for (std::uint64_t p : large) {
    if (!out.empty() && out.back().prime == p)
      ++out.back().exponent;
    else
      out.push_back({p, 1});
  }
  return out;
}

}  // namespace floorsum::arith
