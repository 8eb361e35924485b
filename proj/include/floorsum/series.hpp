#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "floorsum/arith.hpp"

namespace floorsum::series {

// |f(n)| <= A * tau_k(n)
struct TauKBounded {
  double A;
  unsigned k;
};

// |f(n)| <= C * n^beta, beta < 1
struct PowerBounded {
  double C;
  double beta;
};

// |f(n)| <= C + D * ln n
struct LogBounded {
  double C;
  double D;
};

// 0 <= f(n) <= lambda^Omega(n), 0 < lambda < 4. The tail is bounded through
// the Euler product of sum lambda^Omega(n) / n^2.
struct OmegaGeometric {
  double lambda;
};

using GrowthClass = std::variant<TauKBounded, PowerBounded, LogBounded, OmegaGeometric>;

// Grammar: tau:A,K | power:C,BETA | log:C,D | omega-geom:LAMBDA
GrowthClass parse_growth(std::string_view text);
std::string growth_name(const GrowthClass& g);

// A growth class valid for fn; throws DomainError for functions whose series
// diverges or has no built-in bound (phi, mk).
GrowthClass default_growth(const arith::ArithFnSpec& fn);

struct Interval {
  double lo;
  double hi;

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// kappa_f = sum_{n >= 1} f(n) / (n (n + 1)) truncated at N, with an upper
// bound on the omitted tail.
struct SeriesConstant {
  arith::ArithFnSpec fn;
  std::uint64_t truncation;
  double partial_sum;
  double tail_bound;

  Interval interval() const;
};

// Explicit bound sum_{n <= t} tau_k(n) <= t (1 + ln t)^(k-1).
double tau_k_summatory_bound(double t, unsigned k);

// 2 * A * int_N^inf (1 + ln t)^(k-1) / t^2 dt, which dominates
// sum_{n > N} A tau_k(n) / (n (n + 1)) by partial summation against
// tau_k_summatory_bound. Requires 2 (1 + ln N) >= k - 1.
double tau_k_tail_bound(double A, unsigned k, std::uint64_t N);

double power_tail_bound(double C, double beta, std::uint64_t N);
double log_tail_bound(double C, double D, std::uint64_t N);

// Upper bound for sum_{p > P} p^-2 from pi(t) < 1.25506 t / ln t.
double prime_square_tail_bound(std::uint64_t P);

inline constexpr std::uint64_t kMinTruncation = 10;

// Throws DomainError for an unusable growth class and RangeError when the
// declared bound is violated by some f(n), n <= N.
SeriesConstant kappa(const arith::ArithFnSpec& fn, std::uint64_t N, const GrowthClass& growth);

// x * interval, rounded outward.
Interval main_term(const arith::ArithFnSpec& fn, std::uint64_t x, const SeriesConstant& constant);

}  // namespace floorsum::series
