#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "floorsum/analytic.hpp"
#include "floorsum/compensated.hpp"
#include "floorsum/constants.hpp"
#include "floorsum/errors.hpp"

namespace floorsum::analytic {

double psi(double z) { return z - std::floor(z) - 0.5; }

namespace {

// pi u cot(pi u) for 0 < u <= 1/2.
double pi_cot_scaled(double u) {
  const double c = kPi * u;
  if (u < 1e-3) {
    const double c2 = c * c;
    return 1.0 - c2 / 3.0 - c2 * c2 / 45.0;
  }
  return c / std::tan(c);
}

}  // namespace

double vaaler_Phi(double t) {
  const double at = std::fabs(t);
  if (!(at > 0.0 && at < 1.0)) throw DomainError("vaaler_Phi requires 0 < |t| < 1");
  if (at < 1e-3) return (1.0 - at) * pi_cot_scaled(at) + at;
  // cot(pi |t|) = -cot(pi (1 - |t|)), which stays accurate as |t| -> 1.
  const double u = 1.0 - at;
  return at * (1.0 - pi_cot_scaled(u));
}

double vaaler_approx(double z, unsigned H) {
  if (H < 1) throw DomainError("vaaler_approx requires H >= 1");
  const double frac = z - std::floor(z);
  double s = 0.0;
  for (unsigned h = 1; h <= H; ++h) {
    const double weight = vaaler_Phi(static_cast<double>(h) / (H + 1.0));
    s += weight * std::sin(2.0 * kPi * h * frac) / (kPi * h);
  }
  return -s;
}

double fejer_bound(double z, unsigned H) {
  if (H < 1) throw DomainError("fejer_bound requires H >= 1");
  const double frac = z - std::floor(z);
  double kernel = 1.0;
  for (unsigned h = 1; h <= H; ++h) kernel += 2.0 * (1.0 - h / (H + 1.0)) * std::cos(2.0 * kPi * h * frac);
  return std::max(0.0, kernel) / (2.0 * H + 2.0);
}

std::complex<double> twisted_exp_sum(std::span<const std::uint64_t> phi, std::uint64_t N, std::uint64_t N1,
                                     double x, std::uint64_t h) {
  if (!(N < N1 && N1 <= 2 * N)) throw RangeError("twisted_exp_sum requires N < N1 <= 2N");
  if (N1 >= phi.size()) throw RangeError("totient table too short");
  if (h < 1) throw DomainError("twisted_exp_sum requires h >= 1");

  const bool integral = x >= 0 && x == std::floor(x) && x * static_cast<double>(h) < 9.0e18;
  const auto xi = integral ? static_cast<std::uint64_t>(x) : 0;
  CompensatedSum re, im;
  for (std::uint64_t n = N + 1; n <= N1; ++n) {
    long double frac;
    if (integral) {
      frac = static_cast<long double>((static_cast<u128>(xi) * h) % n) / n;
    } else {
      const long double t = static_cast<long double>(h) * x / n;
      frac = t - std::floor(t);
    }
    const double angle = static_cast<double>(2.0L * static_cast<long double>(kPi) * frac);
    const double weight = static_cast<double>(phi[n]);
    re.add(weight * std::cos(angle));
    im.add(weight * std::sin(angle));
  }
  return {re.value(), im.value()};
}

std::complex<double> twisted_exp_sum(std::uint64_t N, std::uint64_t N1, double x, std::uint64_t h) {
  if (!(N < N1 && N1 <= 2 * N)) throw RangeError("twisted_exp_sum requires N < N1 <= 2N");
  const auto table = arith::build_sieve(arith::ArithFnSpec::phi(), N1);
  return twisted_exp_sum(table.integers(), N, N1, x, h);
}

Lemma42Report lemma42_check(const exponent::ExponentPair& p, std::span<const std::uint64_t> N_list, double x_ratio,
                            double x_power) {
  if (N_list.empty()) throw DomainError("lemma42_check needs at least one N");
  const std::uint64_t n_max = *std::max_element(N_list.begin(), N_list.end());
  if (n_max > 1'000'000) throw RangeError("lemma42_check is limited to N <= 10^6");
  const auto table = arith::build_sieve(arith::ArithFnSpec::phi(), 2 * n_max);
  const double k = p.k().convert_to<double>();
  const double l = p.l().convert_to<double>();

  Lemma42Report report{{}, 0.0, true};
  for (std::uint64_t N : N_list) {
    if (N < 2) throw DomainError("lemma42_check needs N >= 2");
    const double Nd = static_cast<double>(N);
    const double x = x_ratio * std::pow(Nd, x_power);
    if (!(Nd <= x)) throw DomainError(fmt::format("lemma42_check requires N <= x (N = {})", N));
    const double sum = std::abs(twisted_exp_sum(table.integers(), N, 2 * N, x, 1));
    const double bound = std::pow(x, k) * std::pow(Nd, 1.0 + l - 2.0 * k) * std::log(Nd) + Nd * Nd * Nd / x + Nd;
    report.rows.push_back({N, x, sum, bound, sum / bound});
    report.max_ratio = std::max(report.max_ratio, sum / bound);
  }
  const auto smallest = std::min_element(report.rows.begin(), report.rows.end(),
                                         [](const Lemma42Row& a, const Lemma42Row& b) { return a.N < b.N; });
  for (const auto& row : report.rows)
    if (row.ratio > 2.0 * smallest->ratio) report.bounded = false;
  return report;
}

double epsilon_k(double x, unsigned k) {
  if (!(x >= 16.0)) throw DomainError("epsilon_k requires x >= 16");
  if (k < 1) throw DomainError("epsilon_k requires k >= 1");
  if (k == 1) return 0.0;
  const double ll = std::log(std::log(x));
  const double lll = std::log(ll);
  const double kd = static_cast<double>(k);
  return std::sqrt(kd * lll / ll) * (kd - 1.0 + 30.0 / lll);
}

bool harmonic_check(double x) {
  if (!(x >= 1.0)) throw DomainError("harmonic_check requires x >= 1");
  const std::uint64_t n = normalize_real_x(x);
  CompensatedSum h;
  for (std::uint64_t j = n; j >= 1; --j) h.add(1.0 / static_cast<double>(j));
  return std::fabs(h.value() - std::log(x) - kEulerGamma) <= 6.0 / (11.0 * x);
}

namespace {

double phi_over_n2_bound(double x) { return std::log(x) / kZeta2 + 2.0 + kInvZeta2; }

}  // namespace

std::vector<bool> phi_over_n2_scan(std::span<const double> xs) {
  std::vector<bool> out(xs.size(), false);
  if (xs.empty()) return out;
  double x_max = 0.0;
  for (double x : xs) {
    if (!(x >= 1.0)) throw DomainError("phi_over_n2_check requires x >= 1");
    x_max = std::max(x_max, x);
  }
  const std::uint64_t limit = normalize_real_x(x_max);
  const auto phi = arith::build_sieve(arith::ArithFnSpec::phi(), limit);

  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  CompensatedSum sum;
  std::uint64_t n = 0;
  for (std::size_t i : order) {
    const std::uint64_t upto = normalize_real_x(xs[i]);
    for (; n < upto; ++n) {
      const double nd = static_cast<double>(n + 1);
      sum.add(static_cast<double>(phi.integers()[n + 1]) / (nd * nd));
    }
    out[i] = sum.value() <= phi_over_n2_bound(xs[i]);
  }
  return out;
}

bool phi_over_n2_check(double x) {
  const double xs[] = {x};
  return phi_over_n2_scan(xs)[0];
}

double explicit_upper_bound(double x) {
  const double lx = std::log(x);
  const double rx = std::sqrt(x);
  return 0.5 * (1.0 + kInvZeta2) * x * lx + 4.0 * x + rx * lx / 4.0 + rx;
}

bool explicit_upper_check(std::uint64_t x, FloorSumOptions opts) {
  if (x < 3) throw DomainError("explicit_upper_check requires x >= 3");
  const double s = floor_sum(arith::ArithFnSpec::phi(), x, opts).approx();
  return s <= explicit_upper_bound(static_cast<double>(x));
}

ResidualReport residual_harness(const arith::ArithFnSpec& fn, const series::GrowthClass& growth,
                                std::vector<std::uint64_t> x_grid, double a, double b, ResidualOptions opts) {
  if (x_grid.size() < 2) throw DomainError("residual_harness needs at least two grid points");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (x_grid[i] < 3) throw DomainError("residual_harness grid points must be >= 3");
    if (i > 0 && x_grid[i] <= x_grid[i - 1]) throw DomainError("residual_harness grid must be strictly increasing");
  }

  const auto constant = series::kappa(fn, opts.truncation, growth);
  ResidualReport report{fn, std::move(x_grid), {}, {}, 0.0, a, b, constant, true};

  for (std::uint64_t x : report.x_grid) {
    const double xd = static_cast<double>(x);
    const double scale = std::pow(xd, a) * std::pow(std::log(xd), b);
    if (xd * constant.tail_bound / scale > opts.max_constant_error)
      throw DomainError(fmt::format("series precision insufficient at x = {}: raise the truncation", x));
    const double r = floor_sum(fn, x, opts.sum).approx() - xd * constant.partial_sum;
    report.residuals.push_back(r);
    report.normalized.push_back(r / scale);
    report.max_normalized = std::max(report.max_normalized, std::fabs(r / scale));
  }

  const std::size_t half = report.x_grid.size() / 2;
  double lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    lower = std::max(lower, std::fabs(report.normalized[i]));
    upper = std::max(upper, std::fabs(report.normalized[report.normalized.size() - 1 - i]));
  }
  report.trend_bounded = upper <= 2.0 * lower;
  return report;
}

}  // namespace floorsum::analytic
