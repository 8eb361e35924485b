#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "floorsum/arith.hpp"
#include "floorsum/wide.hpp"

namespace floorsum {

// Maximal run n_lo..n_hi on which floor(x / n) == q.
struct QuotientBlock {
  std::uint64_t q;
  std::uint64_t n_lo;
  std::uint64_t n_hi;

  std::uint64_t length() const { return n_hi - n_lo + 1; }
  friend bool operator==(const QuotientBlock&, const QuotientBlock&) = default;
};

// Blocks in increasing n_lo (strictly decreasing q); they partition [1, x]
// and there are at most 2 * isqrt(x) + 1 of them.
std::vector<QuotientBlock> quotient_blocks(std::uint64_t x);

struct CompensatedReal {
  double value;
  double error_estimate;
};

struct FloorSumResult {
  std::uint64_t x;
  arith::ArithFnSpec fn;
  std::variant<u128, CompensatedReal> value;
  std::uint64_t block_count;
  std::chrono::nanoseconds elapsed;

  bool is_exact() const { return std::holds_alternative<u128>(value); }
  u128 exact() const { return std::get<u128>(value); }
  double approx() const;
  std::string value_string() const;
};

struct FloorSumOptions {
  unsigned threads = 1;
};

// Sum_{n <= x} f(floor(x / n)) over quotient blocks. Quotients up to isqrt(x)
// come from a sieve, larger ones from point evaluation. Integer-valued
// functions are summed exactly in 128 bits; real-valued ones with compensated
// summation in fixed chunk order, so the value does not depend on threads.
FloorSumResult floor_sum(const arith::ArithFnSpec& fn, std::uint64_t x, FloorSumOptions opts = {});

inline constexpr std::uint64_t kNaiveLimit = 100'000'000;

// Direct n = 1..x loop over a full sieve; used as an oracle for floor_sum.
FloorSumResult floor_sum_naive(const arith::ArithFnSpec& fn, std::uint64_t x);
// Same, reusing a table whose limit is at least x.
FloorSumResult floor_sum_naive(const arith::SieveTable& table, std::uint64_t x);

// S(x) / (x ln x) with S = floor_sum(phi, x); x >= 3.
double rho(std::uint64_t x, FloorSumOptions opts = {});

// Number of divisors d of n with gcd(d, floor(d x / n)) == 1; 1 <= n <= x.
std::uint64_t tau_x_point(std::uint64_t n, std::uint64_t x);

inline constexpr std::uint64_t kTauXLimit = 100'000;

// sum_{n <= x} tau_x(n) == S(x); x <= kTauXLimit.
bool verify_tau_x_identity(std::uint64_t x);

// floor(x_real) for x_real >= 1; floor(x / n) == floor(floor(x) / n).
std::uint64_t normalize_real_x(double x_real);

}  // namespace floorsum
