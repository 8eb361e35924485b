#include <doctest.h>

#include <cmath>
#include <vector>

#include "floorsum/errors.hpp"
#include "floorsum/series.hpp"

using namespace floorsum;
using namespace floorsum::series;
using arith::ArithFnSpec;

namespace {

// tau_k(n) for n <= limit by repeated convolution with 1
std::vector<std::uint64_t> tau_table(std::uint64_t limit, unsigned k) {
  std::vector<std::uint64_t> cur(limit + 1, 1);
  cur[0] = 0;
  for (unsigned step = 1; step < k; ++step) {
    std::vector<std::uint64_t> next(limit + 1, 0);
    for (std::uint64_t d = 1; d <= limit; ++d)
      for (std::uint64_t m = d; m <= limit; m += d) next[m] += cur[m / d];
    cur.swap(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("telescoping series for the constant function") {
  for (std::uint64_t N : {10ull, 1000ull, 100'000ull}) {
    const auto c = kappa(ArithFnSpec::tau_k(1), N, TauKBounded{1, 1});
    const double Nd = static_cast<double>(N);
    CHECK(c.partial_sum == doctest::Approx(Nd / (Nd + 1.0)).epsilon(1e-15));
    CHECK(c.tail_bound >= 1.0 / (Nd + 1.0));
    CHECK(c.interval().contains(1.0));
  }
}

TEST_CASE("binary and decimal digit sums") {
  // sum s_q(n) / (n (n + 1)) = q ln q / (q - 1)
  for (std::uint64_t q : {2ull, 10ull}) {
    const auto fn = ArithFnSpec::digit_sum(q);
    const double exact = q * std::log(static_cast<double>(q)) / (q - 1.0);
    for (std::uint64_t N : {1000ull, 1'000'000ull}) {
      const auto c = kappa(fn, N, default_growth(fn));
      CAPTURE(q);
      CAPTURE(N);
      CHECK(c.interval().contains(exact));
    }
  }
}

TEST_CASE("intervals at two truncations overlap and shrink") {
  const ArithFnSpec fns[] = {ArithFnSpec::phi_over_n(), ArithFnSpec::phi_pow(0.5), ArithFnSpec::tau_k(2),
                             ArithFnSpec::tau_k(3), ArithFnSpec::lambda_pow_omega(std::sqrt(3.0)),
                             ArithFnSpec::digit_sum(10), ArithFnSpec::mk_full_normalized(2)};
  for (const auto& fn : fns) {
    CAPTURE(fn.name());
    const auto growth = default_growth(fn);
    const auto coarse = kappa(fn, 10'000, growth).interval();
    const auto fine = kappa(fn, 1'000'000, growth).interval();
    CHECK(fine.width() < coarse.width());
    CHECK(fine.lo <= coarse.hi);
    CHECK(coarse.lo <= fine.hi);
    CHECK(coarse.contains(fine.mid()));
  }
}

TEST_CASE("series constant for phi(n)/n") {
  const auto c = kappa(ArithFnSpec::phi_over_n(), 1'000'000, default_growth(ArithFnSpec::phi_over_n()));
  CHECK(c.tail_bound == doctest::Approx(2e-6).epsilon(1e-3));
  CHECK(c.interval().contains(0.7883853746));
}

TEST_CASE("lambda^Omega tail is small") {
  const auto fn = ArithFnSpec::lambda_pow_omega(std::sqrt(3.0));
  const auto c = kappa(fn, 1'000'000, default_growth(fn));
  CHECK(c.tail_bound > 0.0);
  CHECK(c.tail_bound < 1e-4);
}

TEST_CASE("summatory bound for tau_k") {
  constexpr std::uint64_t kLimit = 1'000'000;
  for (unsigned k = 1; k <= 4; ++k) {
    CAPTURE(k);
    const auto tau = tau_table(kLimit, k);
    std::uint64_t total = 0;
    bool ok = true;
    for (std::uint64_t t = 1; t <= kLimit; ++t) {
      total += tau[t];
      if (static_cast<double>(total) > tau_k_summatory_bound(static_cast<double>(t), k)) ok = false;
    }
    CHECK(ok);
  }
}

TEST_CASE("tail helpers") {
  CHECK(tau_k_tail_bound(1, 1, 100) == doctest::Approx(0.02));
  CHECK(tau_k_tail_bound(3, 2, 100) == doctest::Approx(6 * (2 + std::log(100.0)) / 100));
  CHECK(tau_k_tail_bound(1, 3, 1000) > tau_k_tail_bound(1, 2, 1000));
  CHECK_THROWS_AS(tau_k_tail_bound(1, 40, 10), DomainError);
  CHECK(power_tail_bound(1, 0.5, 10'000) == doctest::Approx(0.02));
  CHECK_THROWS_AS(power_tail_bound(1, 1.0, 100), DomainError);
  CHECK(log_tail_bound(1, 1, 100) == doctest::Approx((2 + std::log(100.0)) / 100));
  CHECK_THROWS_AS(prime_square_tail_bound(1), DomainError);

  // against an actual partial sum of p^-2
  constexpr std::uint64_t kLimit = 2'000'000;
  std::vector<bool> composite(kLimit + 1, false);
  std::vector<double> suffix;
  for (std::uint64_t p = 2; p <= kLimit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p * p; m <= kLimit; m += p) composite[m] = true;
  }
  for (std::uint64_t P : {10ull, 100ull, 10'000ull}) {
    double s = 0.0;
    for (std::uint64_t p = P + 1; p <= kLimit; ++p)
      if (!composite[p]) s += 1.0 / (static_cast<double>(p) * p);
    CHECK(prime_square_tail_bound(P) > s);
  }
}

TEST_CASE("growth parsing and defaults") {
  CHECK(std::holds_alternative<TauKBounded>(parse_growth("tau:1,2")));
  CHECK(std::holds_alternative<PowerBounded>(parse_growth("power:1,0.5")));
  CHECK(std::holds_alternative<LogBounded>(parse_growth("log:9,3.9")));
  CHECK(std::holds_alternative<OmegaGeometric>(parse_growth("omega-geom:1.5")));
  for (const char* text : {"tau:1,2", "power:2,0.25", "log:1,2", "omega-geom:1.5"})
    CHECK(growth_name(parse_growth(growth_name(parse_growth(text)))) == growth_name(parse_growth(text)));
  CHECK_THROWS_AS(parse_growth("tau:1"), ParseError);
  CHECK_THROWS_AS(parse_growth("poly:1,2"), ParseError);
  CHECK_THROWS_AS(default_growth(ArithFnSpec::phi()), DomainError);
  CHECK_THROWS_AS(default_growth(ArithFnSpec::mk_full(2)), DomainError);
}

TEST_CASE("kappa rejects bad input") {
  CHECK_THROWS_AS(kappa(ArithFnSpec::tau_k(2), 5, TauKBounded{1, 2}), DomainError);
  // tau_3 exceeds tau_2 at n = 2
  CHECK_THROWS_AS(kappa(ArithFnSpec::tau_k(3), 100, TauKBounded{1, 2}), RangeError);
  CHECK_THROWS_AS(kappa(ArithFnSpec::phi_over_n(), 100, PowerBounded{1, 1.5}), DomainError);
  CHECK_THROWS_AS(kappa(ArithFnSpec::lambda_pow_omega(1.9), 100, OmegaGeometric{1.5}), RangeError);
}

TEST_CASE("main term rounds outward") {
  const auto fn = ArithFnSpec::phi_over_n();
  const auto c = kappa(fn, 10'000, default_growth(fn));
  const auto m = main_term(fn, 1'000'000, c);
  CHECK(m.lo < 1e6 * c.interval().lo);
  CHECK(m.hi > 1e6 * c.interval().hi);
  CHECK_THROWS_AS(main_term(ArithFnSpec::tau_k(2), 10, c), DomainError);
}
