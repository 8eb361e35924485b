#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "floorsum/compensated.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/floorsum.hpp"

namespace floorsum {

using arith::ArithFnSpec;

namespace {

constexpr std::size_t kChunkBlocks = 1024;

struct ChunkPartial {
  u128 exact = 0;
  CompensatedSum real;
};

template <typename Body>
void run_chunks(std::size_t chunk_count, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunk_count)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t c; (c = next.fetch_add(1)) < chunk_count;) body(c);
      } catch (...) {
        errors[t] = std::current_exception();
        next = chunk_count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<QuotientBlock> quotient_blocks(std::uint64_t x) {
  if (x < 1) throw DomainError("quotient_blocks requires x >= 1");
  std::vector<QuotientBlock> blocks;
  blocks.reserve(2 * isqrt(x) + 1);
  for (std::uint64_t n = 1; n <= x;) {
    const std::uint64_t q = x / n;
    const std::uint64_t hi = x / q;
    blocks.push_back({q, n, hi});
    n = hi + 1;
  }
  return blocks;
}

double FloorSumResult::approx() const {
  if (is_exact()) return static_cast<double>(exact());
  return std::get<CompensatedReal>(value).value;
}

std::string FloorSumResult::value_string() const {
  if (is_exact()) return to_string(exact());
  return fmt::format("{}", std::get<CompensatedReal>(value).value);
}

FloorSumResult floor_sum(const ArithFnSpec& fn, std::uint64_t x, FloorSumOptions opts) {
  if (x < 1) throw DomainError("floor_sum requires x >= 1");
  const auto start = std::chrono::steady_clock::now();

  const auto blocks = quotient_blocks(x);
  const std::uint64_t root = isqrt(x);
  const auto table = arith::build_sieve(fn, root);
  const bool exact = fn.is_exact();

  const std::size_t chunk_count = (blocks.size() + kChunkBlocks - 1) / kChunkBlocks;
  std::vector<ChunkPartial> partials(chunk_count);

  run_chunks(chunk_count, opts.threads, [&](std::size_t c) {
    ChunkPartial& out = partials[c];
    const std::size_t end = std::min(blocks.size(), (c + 1) * kChunkBlocks);
    for (std::size_t i = c * kChunkBlocks; i < end; ++i) {
      const QuotientBlock& b = blocks[i];
      const arith::Value v = b.q <= root ? table.value(b.q) : arith::eval(fn, b.q);
      if (exact)
        out.exact = checked_add(out.exact, checked_mul(std::get<std::uint64_t>(v), b.length()));
      else
        out.real.add(std::get<double>(v) * static_cast<double>(b.length()));
    }
  });

  FloorSumResult result{x, fn, u128{0}, blocks.size(), {}};
  if (exact) {
    u128 total = 0;
    for (const auto& p : partials) total = checked_add(total, p.exact);
    result.value = total;
  } else {
    CompensatedSum total;
    for (const auto& p : partials) total.merge(p.real);
    result.value = CompensatedReal{total.value(), total.error_estimate()};
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

FloorSumResult floor_sum_naive(const arith::SieveTable& table, std::uint64_t x) {
  if (x < 1) throw DomainError("floor_sum_naive requires x >= 1");
  if (x > kNaiveLimit) throw RangeError(fmt::format("floor_sum_naive is limited to x <= {}", kNaiveLimit));
  if (table.limit() < x) throw RangeError("floor_sum_naive: table limit below x");
  const auto start = std::chrono::steady_clock::now();

  FloorSumResult result{x, table.fn(), u128{0}, 0, {}};
  if (table.fn().is_exact()) {
    const auto values = table.integers();
    u128 total = 0;
    for (std::uint64_t n = 1; n <= x; ++n) total = checked_add(total, values[x / n]);
    result.value = total;
  } else {
    const auto values = table.reals();
    CompensatedSum total;
    for (std::uint64_t n = 1; n <= x; ++n) total.add(values[x / n]);
    result.value = CompensatedReal{total.value(), total.error_estimate()};
  }
  std::uint64_t blocks = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (n == 1 || x / n != x / (n - 1)) ++blocks;
  result.block_count = blocks;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

FloorSumResult floor_sum_naive(const ArithFnSpec& fn, std::uint64_t x) {
  if (x > kNaiveLimit) throw RangeError(fmt::format("floor_sum_naive is limited to x <= {}", kNaiveLimit));
  return floor_sum_naive(arith::build_sieve(fn, std::max<std::uint64_t>(x, 1)), x);
}

double rho(std::uint64_t x, FloorSumOptions opts) {
  if (x < 3) throw DomainError("rho requires x >= 3");
  const double s = floor_sum(ArithFnSpec::phi(), x, opts).approx();
  const double xd = static_cast<double>(x);
  return s / (xd * std::log(xd));
}

std::uint64_t tau_x_point(std::uint64_t n, std::uint64_t x) {
  if (n < 1 || n > x) throw DomainError("tau_x requires 1 <= n <= x");
  const auto f = arith::factorize(n);
  std::vector<std::uint64_t> divisors{1};
  for (const auto& [p, a] : f) {
    const std::size_t base = divisors.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= a; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t d : divisors) {
    const auto q = static_cast<std::uint64_t>(static_cast<u128>(d) * x / n);
    if (std::gcd(d, q) == 1) ++count;
  }
  return count;
}

bool verify_tau_x_identity(std::uint64_t x) {
  if (x < 1 || x > kTauXLimit) throw RangeError(fmt::format("verify_tau_x_identity needs 1 <= x <= {}", kTauXLimit));
  u128 total = 0;
  for (std::uint64_t n = 1; n <= x; ++n) total += tau_x_point(n, x);
  return total == floor_sum(ArithFnSpec::phi(), x).exact();
}

std::uint64_t normalize_real_x(double x_real) {
  if (!(x_real >= 1.0)) throw DomainError("x must be a real number >= 1");
  if (x_real >= 18446744073709551616.0) throw RangeError("x exceeds 64-bit range");
  return static_cast<std::uint64_t>(std::floor(x_real));
}

}  // namespace floorsum
