#include <fmt/format.h>

#include "floorsum/arith.hpp"
#include "floorsum/errors.hpp"

namespace floorsum::arith {

namespace {

constexpr std::uint64_t kMaxSieveLimit = 0xFFFF'FFFEull;

void check_budget(std::uint64_t limit, std::size_t bytes_per_entry) {
  if (limit > kMaxSieveLimit) throw RangeError("sieve limit must stay below 2^32");
  const auto need = static_cast<long double>(limit + 1) * bytes_per_entry;
  if (need > static_cast<long double>(memory_budget_bytes()))
    throw MemoryBudgetError(fmt::format("sieve up to {} needs ~{} MB, budget is {} MB", limit,
                                        static_cast<std::uint64_t>(need / (1 << 20)) + 1,
                                        memory_budget_bytes() >> 20));
}

// Linear totient sieve; entry 0 is unused.
std::vector<std::uint64_t> totient_table(std::uint64_t limit) {
  std::vector<std::uint64_t> phi(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  if (limit >= 1) phi[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (phi[i] == 0) {
      phi[i] = i - 1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > limit) break;
      if (i % p == 0) {
        phi[ip] = phi[i] * p;
        break;
      }
      phi[ip] = phi[i] * (p - 1);
    }
  }
  return phi;
}

// Builds a multiplicative integer function from its prime-power values.
template <typename PrimePowerFn>
std::vector<std::uint64_t> multiplicative_table(std::uint64_t limit, PrimePowerFn at_prime_power) {
  const auto spf = smallest_prime_factors(limit);
  std::vector<std::uint64_t> out(limit + 1, 0);
  if (limit >= 1) out[1] = 1;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned a = 0;
    do {
      m /= p;
      ++a;
    } while (m % p == 0);
    std::uint64_t r;
    if (__builtin_mul_overflow(at_prime_power(p, a), out[m], &r))
      throw RangeError("64-bit overflow while sieving");
    out[n] = r;
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit) {
  if (limit > kMaxSieveLimit) throw RangeError("sieve limit must stay below 2^32");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || i * p > limit) break;
      spf[i * p] = p;
    }
  }
  return spf;
}

std::vector<std::uint8_t> big_omega_table(std::uint64_t limit) {
  const auto spf = smallest_prime_factors(limit);
  std::vector<std::uint8_t> omega(limit + 1, 0);
  for (std::uint64_t n = 2; n <= limit; ++n) omega[n] = static_cast<std::uint8_t>(omega[n / spf[n]] + 1);
  return omega;
}

Value SieveTable::value(std::uint64_t n) const {
  if (n == 0 || n > limit_) throw RangeError(fmt::format("sieve index {} outside [1, {}]", n, limit_));
  if (fn_.is_exact()) return ints_[n];
  return reals_[n];
}

double SieveTable::real_value(std::uint64_t n) const { return as_double(value(n)); }

SieveTable build_sieve(const ArithFnSpec& fn, std::uint64_t limit) {
  if (limit < 1) throw DomainError("sieve limit must be >= 1");
  SieveTable t(fn, limit);
  const auto k = static_cast<unsigned>(fn.int_param());

  switch (fn.kind()) {
    case FnKind::Phi:
      check_budget(limit, 12);
      t.ints_ = totient_table(limit);
      break;
    case FnKind::TauK:
      check_budget(limit, 12);
      t.ints_ = multiplicative_table(limit, [k](std::uint64_t, unsigned a) { return tau_k_prime_power(a, k); });
      break;
    case FnKind::MkFull:
      check_budget(limit, 12);
      t.ints_ = multiplicative_table(limit, [k](std::uint64_t p, unsigned a) { return m_k_prime_power(p, a, k); });
      break;
    case FnKind::DigitSum:
      check_budget(limit, 8);
      t.ints_.assign(limit + 1, 0);
      for (std::uint64_t n = 1; n <= limit; ++n) t.ints_[n] = digit_sum_point(n, fn.int_param());
      break;
    case FnKind::PhiOverN:
    case FnKind::PhiPow: {
      check_budget(limit, 20);
      const auto phi = totient_table(limit);
      t.reals_.assign(limit + 1, 0.0);
      for (std::uint64_t n = 1; n <= limit; ++n)
        t.reals_[n] = fn.kind() == FnKind::PhiOverN ? static_cast<double>(phi[n]) / static_cast<double>(n)
                                                    : phi_pow_value(phi[n], fn.real_param());
      break;
    }
    case FnKind::LambdaPowOmega: {
      check_budget(limit, 13);
      const auto omega = big_omega_table(limit);
      t.reals_.assign(limit + 1, 0.0);
      for (std::uint64_t n = 1; n <= limit; ++n) t.reals_[n] = lambda_pow(fn.real_param(), omega[n]);
      break;
    }
    case FnKind::MkFullNormalized: {
      check_budget(limit, 20);
      const auto mk = multiplicative_table(limit, [k](std::uint64_t p, unsigned a) { return m_k_prime_power(p, a, k); });
      t.reals_.assign(limit + 1, 0.0);
      for (std::uint64_t n = 1; n <= limit; ++n) t.reals_[n] = mk_normalized_value(mk[n], n, k);
      break;
    }
  }
  return t;
}

bool verify_phi_convolution(std::uint64_t limit) {
  const auto phi = build_sieve(ArithFnSpec::phi(), limit);
  std::vector<std::int64_t> conv(limit + 1, 0);
  for (std::uint64_t d = 1; d <= limit; ++d) {
    const int mu = mobius_point(d);
    if (mu == 0) continue;
    for (std::uint64_t n = d, q = 1; n <= limit; n += d, ++q) conv[n] += mu * static_cast<std::int64_t>(q);
  }
  const auto values = phi.integers();
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (conv[n] != static_cast<std::int64_t>(values[n])) return false;
  return true;
}

}  // namespace floorsum::arith
