#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "floorsum/arith.hpp"
#include "floorsum/exponent.hpp"
#include "floorsum/floorsum.hpp"
#include "floorsum/series.hpp"

namespace floorsum::analytic {

// Sawtooth z - floor(z) - 1/2.
double psi(double z);

// Phi(t) = pi t (1 - |t|) cot(pi t) + |t| for 0 < |t| < 1.
double vaaler_Phi(double t);

// -sum_{h=1}^{H} Phi(h / (H + 1)) sin(2 pi h z) / (pi h)
double vaaler_approx(double z, unsigned H);

// (1 / (2H + 2)) * sum_{|h| <= H} (1 - |h| / (H + 1)) e(hz), which is real
// and nonnegative.
double fejer_bound(double z, unsigned H);

// sum_{N < n <= N1} phi(n) e(h x / n). `phi` must cover index N1.
std::complex<double> twisted_exp_sum(std::span<const std::uint64_t> phi, std::uint64_t N, std::uint64_t N1,
                                     double x, std::uint64_t h);
std::complex<double> twisted_exp_sum(std::uint64_t N, std::uint64_t N1, double x, std::uint64_t h);

struct Lemma42Row {
  std::uint64_t N;
  double x;
  double abs_sum;
  double bound;
  double ratio;
};

struct Lemma42Report {
  std::vector<Lemma42Row> rows;
  double max_ratio;
  // every ratio is at most twice the ratio at the smallest N
  bool bounded;
};

// For each N evaluates |sum_{N < n <= 2N} phi(n) e(x / n)| against
// x^k N^(1+l-2k) ln N + N^3 / x + N with x = x_ratio * N^x_power.
Lemma42Report lemma42_check(const exponent::ExponentPair& p, std::span<const std::uint64_t> N_list, double x_ratio,
                            double x_power = 2.0);

// 0 for k == 1, otherwise sqrt(k lll / ll) (k - 1 + 30 / lll) with
// ll = ln ln x and lll = ln ln ln x; requires x >= 16.
double epsilon_k(double x, unsigned k);

// |H_floor(x) - ln x - gamma| <= 6 / (11 x)
bool harmonic_check(double x);

// sum_{n <= x} phi(n) / n^2 <= ln x / zeta(2) + 2 + 1 / zeta(2)
bool phi_over_n2_check(double x);

// Evaluates the same inequality at many points from one totient table.
std::vector<bool> phi_over_n2_scan(std::span<const double> xs);

double explicit_upper_bound(double x);

// S(x) <= (1 + 1/zeta(2)) / 2 * x ln x + 4x + sqrt(x) ln x / 4 + sqrt(x)
bool explicit_upper_check(std::uint64_t x, FloorSumOptions opts = {});

struct ResidualReport {
  arith::ArithFnSpec fn;
  std::vector<std::uint64_t> x_grid;
  std::vector<double> residuals;   // S_f(x) - x * kappa_mid
  std::vector<double> normalized;  // residual / (x^a (ln x)^b)
  double max_normalized;           // max |normalized|
  double a;
  double b;
  series::SeriesConstant constant;
  // max |normalized| over the upper half of the grid <= 2 * max over the lower half
  bool trend_bounded;
};

struct ResidualOptions {
  std::uint64_t truncation = 10'000'000;
  // Largest admissible contribution x * tail_bound / (x^a (ln x)^b) of the
  // series-constant uncertainty to any normalized residual.
  double max_constant_error = 1e-2;
  FloorSumOptions sum;
};

// Throws DomainError (series precision insufficient) when the constant's tail
// bound is too coarse for the grid.
ResidualReport residual_harness(const arith::ArithFnSpec& fn, const series::GrowthClass& growth,
                                std::vector<std::uint64_t> x_grid, double a, double b, ResidualOptions opts = {});

}  // namespace floorsum::analytic
