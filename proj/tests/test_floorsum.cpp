#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "floorsum/errors.hpp"
#include "floorsum/floorsum.hpp"
#include "floorsum/wide.hpp"
#include "oracle.hpp"

using namespace floorsum;
using arith::ArithFnSpec;

TEST_CASE("quotient blocks for small x") {
  CHECK(quotient_blocks(1) == std::vector<QuotientBlock>{{1, 1, 1}});
  CHECK(quotient_blocks(10) ==
        std::vector<QuotientBlock>{{10, 1, 1}, {5, 2, 2}, {3, 3, 3}, {2, 4, 5}, {1, 6, 10}});
}

TEST_CASE("quotient blocks partition [1, x]") {
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> xs;
  for (std::uint64_t x = 1; x <= 3000; ++x) xs.push_back(x);
  for (int i = 0; i < 50; ++i) xs.push_back(std::uniform_int_distribution<std::uint64_t>(1, 1ull << 36)(rng));
  xs.push_back(1'000'000'000'000ull);
  for (std::uint64_t x : xs) {
    CAPTURE(x);
    const auto blocks = quotient_blocks(x);
    REQUIRE(blocks.size() <= 2 * isqrt(x) + 1);
    std::uint64_t next = 1;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      REQUIRE(b.n_lo == next);
      REQUIRE(b.n_hi >= b.n_lo);
      REQUIRE(x / b.n_lo == b.q);
      REQUIRE(x / b.n_hi == b.q);
      if (i > 0) REQUIRE(blocks[i - 1].q > b.q);
      next = b.n_hi + 1;
    }
    REQUIRE(next == x + 1);
  }
}

TEST_CASE("floor_sum matches a direct loop over definitions") {
  for (std::uint64_t x : {1ull, 2ull, 3ull, 10ull, 97ull, 360ull, 1000ull}) {
    CAPTURE(x);
    CHECK(to_string(floor_sum(ArithFnSpec::phi(), x).exact()) ==
          std::to_string(static_cast<std::uint64_t>(oracle::floor_sum(x, oracle::phi))));
    CHECK(floor_sum(ArithFnSpec::tau_k(3), x).approx() ==
          static_cast<double>(oracle::floor_sum(x, [](std::uint64_t m) { return oracle::tau_k(m, 3); })));
    CHECK(floor_sum(ArithFnSpec::digit_sum(10), x).approx() ==
          static_cast<double>(oracle::floor_sum(x, [](std::uint64_t m) { return oracle::digit_sum(m, 10); })));
    CHECK(floor_sum(ArithFnSpec::mk_full(2), x).approx() ==
          static_cast<double>(oracle::floor_sum(x, [](std::uint64_t m) { return oracle::m_k(m, 2); })));
    const double ref =
        static_cast<double>(oracle::floor_sum(x, [](std::uint64_t m) { return oracle::phi(m) / (long double)m; }));
    CHECK(floor_sum(ArithFnSpec::phi_over_n(), x).approx() == doctest::Approx(ref).epsilon(1e-13));
  }
  CHECK(floor_sum(ArithFnSpec::phi(), 12).exact() == 18);
}

TEST_CASE("floor_sum agrees with the naive sum") {
  const ArithFnSpec fns[] = {ArithFnSpec::phi(), ArithFnSpec::tau_k(2), ArithFnSpec::phi_pow(0.7),
                             ArithFnSpec::lambda_pow_omega(1.25), ArithFnSpec::mk_full_normalized(3)};
  for (const auto& fn : fns) {
    CAPTURE(fn.name());
    const auto table = arith::build_sieve(fn, 200'000);
    for (std::uint64_t x = 1; x <= 2'000; ++x) {
      const auto fast = floor_sum(fn, x);
      const auto slow = floor_sum_naive(table, x);
      if (fn.is_exact())
        REQUIRE(fast.exact() == slow.exact());
      else
        REQUIRE(fast.approx() == doctest::Approx(slow.approx()).epsilon(1e-12));
    }
    for (std::uint64_t x : {99'991ull, 131'072ull, 200'000ull}) {
      const auto fast = floor_sum(fn, x);
      const auto slow = floor_sum_naive(table, x);
      if (fn.is_exact())
        CHECK(fast.exact() == slow.exact());
      else
        CHECK(fast.approx() == doctest::Approx(slow.approx()).epsilon(1e-12));
    }
  }
}

TEST_CASE("constant function sums to x") {
  for (std::uint64_t x : {1ull, 17ull, 1'000'003ull, 123'456'789'012ull})
    CHECK(floor_sum(ArithFnSpec::tau_k(1), x).exact() == x);
}

TEST_CASE("totient sum reference values") {
  CHECK(floor_sum(ArithFnSpec::phi(), 1'000'000).exact() == 8'073'733);
  CHECK(floor_sum(ArithFnSpec::phi(), 10'000'000'000ull).value_string() == "136816406645");
  CHECK(rho(1'000'000) == doctest::Approx(8073733.0 / (1e6 * std::log(1e6))));
}

TEST_CASE("result does not depend on thread count") {
  const ArithFnSpec fns[] = {ArithFnSpec::phi(), ArithFnSpec::phi_over_n(), ArithFnSpec::digit_sum(10),
                             ArithFnSpec::lambda_pow_omega(std::sqrt(3.0))};
  for (const auto& fn : fns) {
    CAPTURE(fn.name());
    for (std::uint64_t x : {1'000ull, 987'654'321ull, 10'000'000'000ull}) {
      const auto one = floor_sum(fn, x, {1});
      for (unsigned t : {2u, 8u}) {
        const auto many = floor_sum(fn, x, {t});
        CHECK(one.value_string() == many.value_string());
        CHECK(one.block_count == many.block_count);
      }
    }
  }
}

TEST_CASE("result metadata") {
  const auto r = floor_sum(ArithFnSpec::phi_over_n(), 10);
  CHECK(r.x == 10);
  CHECK(r.block_count == 5);
  CHECK_FALSE(r.is_exact());
  CHECK(std::get<CompensatedReal>(r.value).error_estimate >= 0.0);
  CHECK(floor_sum(ArithFnSpec::phi(), 10).is_exact());
}

TEST_CASE("naive sum limits") {
  CHECK_THROWS(floor_sum_naive(ArithFnSpec::phi(), kNaiveLimit + 1));
  const auto table = arith::build_sieve(ArithFnSpec::phi(), 100);
  CHECK_THROWS(floor_sum_naive(table, 101));
}

TEST_CASE("tau_x identity") {
  for (std::uint64_t x = 1; x <= 300; ++x) CHECK(verify_tau_x_identity(x));
  CHECK(verify_tau_x_identity(10'000));
  // tau_x(n) directly from the definition
  for (std::uint64_t x : {30ull, 64ull, 97ull})
    for (std::uint64_t n = 1; n <= x; ++n) {
      std::uint64_t count = 0;
      for (std::uint64_t d : oracle::divisors(n))
        if (std::gcd(d, d * x / n) == 1) ++count;
      CHECK(tau_x_point(n, x) == count);
    }
}

TEST_CASE("real x normalisation") {
  CHECK(normalize_real_x(1.0) == 1);
  CHECK(normalize_real_x(12.7) == 12);
  CHECK(normalize_real_x(1e10 + 0.5) == 10'000'000'000ull);
  CHECK_THROWS(normalize_real_x(0.5));
  CHECK_THROWS(normalize_real_x(std::nan("")));
  // floor(x / n) == floor(floor(x) / n)
  const double x = 1234.987;
  for (std::uint64_t n = 1; n <= 1300; ++n)
    CHECK(static_cast<std::uint64_t>(std::floor(x / n)) == normalize_real_x(x) / n);
}
