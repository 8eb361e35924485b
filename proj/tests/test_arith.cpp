#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "floorsum/arith.hpp"
#include "floorsum/errors.hpp"
#include "oracle.hpp"

using namespace floorsum;
using namespace floorsum::arith;

namespace {

std::uint64_t product(const Factorization& f) {
  std::uint64_t r = 1;
  for (const auto& [p, a] : f)
    for (unsigned i = 0; i < a; ++i) r *= p;
  return r;
}

}  // namespace

TEST_CASE("factorize small values against trial division") {
  CHECK(factorize(1).empty());
  CHECK(factorize(2) == Factorization{{2, 1}});
  CHECK(factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  for (std::uint64_t m = 2; m <= 20'000; ++m) {
    const auto f = factorize(m);
    REQUIRE(product(f) == m);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(oracle::big_omega(f[i].prime) == 1);
      if (i > 0) CHECK(f[i - 1].prime < f[i].prime);
    }
  }
}

TEST_CASE("factorize large values") {
  CHECK(factorize(600851475143ull) == Factorization{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}});
  CHECK(factorize(3037000493ull * 3037000453ull) == Factorization{{3037000453ull, 1}, {3037000493ull, 1}});
  CHECK(factorize((1ull << 62) - 57) == Factorization{{(1ull << 62) - 57, 1}});
  CHECK(factorize(9223372036854775807ull) ==
        Factorization{{7, 2}, {73, 1}, {127, 1}, {337, 1}, {92737, 1}, {649657, 1}});
  CHECK(factorize(1ull << 63) == Factorization{{2, 63}});
  CHECK(is_prime((1ull << 61) - 1));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(3215031751ull));
}

TEST_CASE("factorize rejects out-of-range input") {
  CHECK_THROWS_AS(factorize(0), RangeError);
  CHECK_THROWS_AS(factorize((1ull << 63) + 1), RangeError);
}

TEST_CASE("point functions against definitions") {
  for (std::uint64_t n = 1; n <= 600; ++n) {
    CHECK(phi_point(n) == oracle::phi(n));
    CHECK(big_omega_point(n) == oracle::big_omega(n));
    for (unsigned k = 1; k <= 4; ++k) CHECK(tau_k_point(n, k) == oracle::tau_k(n, k));
    for (std::uint64_t q : {2, 3, 10, 16}) CHECK(digit_sum_point(n, q) == oracle::digit_sum(n, q));
    for (unsigned k = 2; k <= 4; ++k) CHECK(m_k_full_point(n, k) == oracle::m_k(n, k));
  }
  CHECK(phi_point(1) == 1);
  CHECK(tau_k_point(12, 2) == 6);
  CHECK(tau_k_point(12, 3) == 18);
  CHECK(m_k_full_point(72, 2) == 72);
  CHECK(m_k_full_point(2 * 2 * 2 * 3, 2) == 8);
  CHECK(m_k_full_point(2 * 2 * 2 * 3, 3) == 8);
  CHECK(m_k_full_point(2 * 2 * 3 * 3, 3) == 1);
  CHECK(digit_sum_point(0, 10) == 0);
  CHECK(digit_sum_point(987654321, 10) == 45);
}

TEST_CASE("multiplicativity on random coprime pairs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
  int tested = 0;
  while (tested < 500) {
    const std::uint64_t m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    ++tested;
    CHECK(phi_point(m * n) == phi_point(m) * phi_point(n));
    CHECK(tau_k_point(m * n, 3) == tau_k_point(m, 3) * tau_k_point(n, 3));
    CHECK(m_k_full_point(m * n, 2) == m_k_full_point(m, 2) * m_k_full_point(n, 2));
    CHECK(big_omega_point(m * n) == big_omega_point(m) + big_omega_point(n));
  }
}

TEST_CASE("mobius inversion of phi") { CHECK(verify_phi_convolution(20'000)); }

TEST_CASE("spec parsing and names") {
  for (const char* text : {"phi", "phi-over-n", "phi-pow:0.5", "tau:3", "lambda-omega:1.5", "digit-sum:10", "mk:2",
                           "mk-norm:3"}) {
    const auto fn = ArithFnSpec::parse(text);
    CHECK(ArithFnSpec::parse(fn.name()) == fn);
  }
  CHECK(ArithFnSpec::parse("tau:2") == ArithFnSpec::tau_k(2));
  CHECK(ArithFnSpec::parse("digit-sum:2").is_exact());
  CHECK_FALSE(ArithFnSpec::parse("phi-over-n").is_exact());
  CHECK_FALSE(ArithFnSpec::parse("mk-norm:2").is_exact());
  CHECK(ArithFnSpec::parse("mk:2").is_exact());

  CHECK_THROWS_AS(ArithFnSpec::parse("sigma"), ParseError);
  CHECK_THROWS_AS(ArithFnSpec::parse("tau:"), ParseError);
  CHECK_THROWS_AS(ArithFnSpec::parse("tau:x"), ParseError);
  CHECK_THROWS_AS(ArithFnSpec::parse("tau:0"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("phi-pow:1"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("phi-pow:0"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("lambda-omega:2"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("lambda-omega:0.5"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("digit-sum:1"), DomainError);
  CHECK_THROWS_AS(ArithFnSpec::parse("mk:1"), DomainError);
}

TEST_CASE("eval on real-valued functions") {
  CHECK(as_double(eval(ArithFnSpec::phi_over_n(), 12)) == doctest::Approx(4.0 / 12.0));
  CHECK(as_double(eval(ArithFnSpec::phi_pow(0.5), 12)) == doctest::Approx(2.0));
  CHECK(as_double(eval(ArithFnSpec::lambda_pow_omega(1.5), 12)) == doctest::Approx(3.375));
  CHECK(as_double(eval(ArithFnSpec::lambda_pow_omega(1.5), 1)) == 1.0);
  CHECK(as_double(eval(ArithFnSpec::mk_full_normalized(2), 8)) == doctest::Approx(8.0 / std::sqrt(8.0)));
  CHECK(std::get<std::uint64_t>(eval(ArithFnSpec::phi(), 36)) == 12);
}

TEST_CASE("sieve tables agree with point evaluation") {
  const ArithFnSpec fns[] = {ArithFnSpec::phi(),         ArithFnSpec::phi_over_n(),
                             ArithFnSpec::phi_pow(0.3),  ArithFnSpec::tau_k(1),
                             ArithFnSpec::tau_k(2),      ArithFnSpec::tau_k(5),
                             ArithFnSpec::lambda_pow_omega(std::sqrt(3.0)),
                             ArithFnSpec::digit_sum(10), ArithFnSpec::digit_sum(7),
                             ArithFnSpec::mk_full(2),    ArithFnSpec::mk_full(3),
                             ArithFnSpec::mk_full_normalized(2)};
  constexpr std::uint64_t kLimit = 30'000;
  for (const auto& fn : fns) {
    CAPTURE(fn.name());
    const auto table = build_sieve(fn, kLimit);
    CHECK(table.limit() == kLimit);
    for (std::uint64_t n = 1; n <= kLimit; ++n) {
      const Value point = eval(fn, n);
      if (fn.is_exact())
        REQUIRE(std::get<std::uint64_t>(table.value(n)) == std::get<std::uint64_t>(point));
      else
        REQUIRE(table.real_value(n) == as_double(point));
    }
  }
}

TEST_CASE("auxiliary tables") {
  const auto spf = smallest_prime_factors(1000);
  const auto omega = big_omega_table(1000);
  CHECK(spf[0] == 0);
  CHECK(spf[1] == 0);
  for (std::uint64_t n = 2; n <= 1000; ++n) {
    CHECK(spf[n] == factorize(n).front().prime);
    CHECK(omega[n] == oracle::big_omega(n));
  }
}

TEST_CASE("sieve memory budget") {
  ::setenv("FLOORSUM_MEM_MB", "1", 1);
  CHECK(memory_budget_bytes() == 1024u * 1024u);
  CHECK_THROWS_AS(build_sieve(ArithFnSpec::phi(), 10'000'000), MemoryBudgetError);
  ::unsetenv("FLOORSUM_MEM_MB");
  CHECK(memory_budget_bytes() == std::size_t{4096} * 1024u * 1024u);
}
