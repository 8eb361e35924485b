#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "floorsum/compensated.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/series.hpp"

namespace floorsum::series {

using arith::ArithFnSpec;
using arith::FnKind;

namespace {

// Relative slack when comparing f(n) against a declared envelope; the real
// envelopes are evaluated with pow/log in binary64.
constexpr double kEnvelopeSlack = 1e-12;

// Upper bound constant in pi(t) < 1.25506 t / ln t, valid for t > 1
// (Rosser and Schoenfeld, 1962).
constexpr double kPrimeCountingConstant = 1.25506;

template <typename Envelope>
void check_envelope(const arith::SieveTable& table, std::uint64_t N, Envelope envelope, std::string_view what) {
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double f = std::fabs(table.real_value(n));
    const double bound = envelope(n);
    if (f > bound * (1.0 + kEnvelopeSlack))
      throw RangeError(fmt::format("growth class {} violated at n = {}: |f(n)| = {} > {}", what, n, f, bound));
  }
}

std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  for (std::size_t pos = 0;;) {
    const auto comma = s.find(',', pos);
    out.push_back(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double to_real(std::string_view s) {
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw ParseError(fmt::format("invalid number '{}' in growth class", s));
  return v;
}

}  // namespace

GrowthClass parse_growth(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError(fmt::format("growth class '{}' lacks parameters", text));
  const auto head = text.substr(0, colon);
  const auto args = split_args(text.substr(colon + 1));
  auto expect = [&](std::size_t n) {
    if (args.size() != n) throw ParseError(fmt::format("growth class '{}' takes {} parameter(s)", head, n));
  };
  if (head == "tau") {
    expect(2);
    const double k = to_real(args[1]);
    if (k < 1 || k != std::floor(k) || k > 64) throw ParseError("tau growth needs integer 1 <= k <= 64");
    return TauKBounded{to_real(args[0]), static_cast<unsigned>(k)};
  }
  if (head == "power") {
    expect(2);
    return PowerBounded{to_real(args[0]), to_real(args[1])};
  }
  if (head == "log") {
    expect(2);
    return LogBounded{to_real(args[0]), to_real(args[1])};
  }
  if (head == "omega-geom") {
    expect(1);
    return OmegaGeometric{to_real(args[0])};
  }
  throw ParseError(fmt::format("unknown growth class '{}'", text));
}

std::string growth_name(const GrowthClass& g) {
  struct {
    std::string operator()(const TauKBounded& v) const { return fmt::format("tau:{},{}", v.A, v.k); }
    std::string operator()(const PowerBounded& v) const { return fmt::format("power:{},{}", v.C, v.beta); }
    std::string operator()(const LogBounded& v) const { return fmt::format("log:{},{}", v.C, v.D); }
    std::string operator()(const OmegaGeometric& v) const { return fmt::format("omega-geom:{}", v.lambda); }
  } visitor;
  return std::visit(visitor, g);
}

GrowthClass default_growth(const ArithFnSpec& fn) {
  switch (fn.kind()) {
    case FnKind::PhiOverN: return TauKBounded{1.0, 1};
    case FnKind::PhiPow: return PowerBounded{1.0, fn.real_param()};
    case FnKind::TauK: return TauKBounded{1.0, static_cast<unsigned>(fn.int_param())};
    case FnKind::LambdaPowOmega: return OmegaGeometric{fn.real_param()};
    case FnKind::DigitSum: {
      const double q = static_cast<double>(fn.int_param());
      return LogBounded{q - 1.0, (q - 1.0) / std::log(q)};
    }
    case FnKind::MkFullNormalized: return PowerBounded{1.0, 1.0 - 1.0 / static_cast<double>(fn.int_param())};
    case FnKind::Phi:
    case FnKind::MkFull:
      break;
  }
  throw DomainError(fmt::format("no convergent growth class for '{}'", fn.name()));
}

Interval SeriesConstant::interval() const { return {partial_sum - tail_bound, partial_sum + tail_bound}; }

double tau_k_summatory_bound(double t, unsigned k) { return t * std::pow(1.0 + std::log(t), static_cast<double>(k) - 1.0); }

double tau_k_tail_bound(double A, unsigned k, std::uint64_t N) {
  if (k < 1) throw DomainError("tau growth needs k >= 1");
  const double L = 1.0 + std::log(static_cast<double>(N));
  if (2.0 * L < static_cast<double>(k) - 1.0)
    throw DomainError(fmt::format("truncation {} too small for the tau_{} tail bound", N, k));
  // I_j = L^j / N + j I_{j-1}, I_0 = 1 / N
  const unsigned j_max = k - 1;
  double integral = 1.0;
  for (unsigned j = 1; j <= j_max; ++j) integral = std::pow(L, j) + j * integral;
  return 2.0 * A * integral / static_cast<double>(N);
}

double power_tail_bound(double C, double beta, std::uint64_t N) {
  if (!(beta < 1.0)) throw DomainError("power growth needs beta < 1");
  return C * std::pow(static_cast<double>(N), beta - 1.0) / (1.0 - beta);
}

double log_tail_bound(double C, double D, std::uint64_t N) {
  const double lnN = std::log(static_cast<double>(N));
  if (D < 0 || C + D * lnN < D / 2.0) throw DomainError("log growth envelope must be nonnegative and decreasing past N");
  return (C + D * lnN + D) / static_cast<double>(N);
}

double prime_square_tail_bound(std::uint64_t P) {
  if (P < 2) throw DomainError("prime tail needs P >= 2");
  const double p = static_cast<double>(P);
  return 2.0 * kPrimeCountingConstant / (p * std::log(p));
}

namespace {

double omega_geometric_tail(const arith::SieveTable& table, std::uint64_t N, double lambda) {
  if (!(lambda > 0.0 && lambda < 4.0)) throw DomainError("omega-geom growth needs 0 < lambda < 4");
  const auto omega = arith::big_omega_table(N);
  check_envelope(table, N, [&](std::uint64_t n) { return arith::lambda_pow(lambda, omega[n]); }, "omega-geom");

  CompensatedSum head;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    head.add(arith::lambda_pow(lambda, omega[n]) / (nd * nd));
  }
  CompensatedSum log_product;
  for (std::uint64_t p = 2; p <= N; ++p) {
    if (omega[p] != 1) continue;
    const double pd = static_cast<double>(p);
    log_product.add(-std::log1p(-lambda / (pd * pd)));
  }
  const double Nd = static_cast<double>(N);
  log_product.add(lambda / (1.0 - lambda / (Nd * Nd)) * prime_square_tail_bound(N));
  const double euler_upper = std::exp(log_product.value()) * (1.0 + 1e-12);
  const double slack = 1e-14 + head.error_estimate();
  return std::max(0.0, euler_upper - head.value()) + slack;
}

}  // namespace

SeriesConstant kappa(const ArithFnSpec& fn, std::uint64_t N, const GrowthClass& growth) {
  if (N < kMinTruncation) throw DomainError(fmt::format("truncation must be >= {}", kMinTruncation));
  const auto table = arith::build_sieve(fn, N);

  CompensatedSum partial;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    partial.add(table.real_value(n) / (nd * (nd + 1.0)));
  }

  double tail = 0.0;
  if (const auto* g = std::get_if<TauKBounded>(&growth)) {
    if (!(g->A > 0.0) || g->k < 1) throw DomainError("tau growth needs A > 0 and k >= 1");
    tail = tau_k_tail_bound(g->A, g->k, N);
    const auto tau = arith::build_sieve(ArithFnSpec::tau_k(g->k), N);
    check_envelope(table, N, [&](std::uint64_t n) { return g->A * static_cast<double>(tau.integers()[n]); }, "tau");
  } else if (const auto* g = std::get_if<PowerBounded>(&growth)) {
    if (!(g->C > 0.0)) throw DomainError("power growth needs C > 0");
    tail = power_tail_bound(g->C, g->beta, N);
    check_envelope(table, N, [&](std::uint64_t n) { return g->C * std::pow(static_cast<double>(n), g->beta); }, "power");
  } else if (const auto* g = std::get_if<LogBounded>(&growth)) {
    tail = log_tail_bound(g->C, g->D, N);
    check_envelope(table, N, [&](std::uint64_t n) { return g->C + g->D * std::log(static_cast<double>(n)); }, "log");
  } else if (const auto* g = std::get_if<OmegaGeometric>(&growth)) {
    tail = omega_geometric_tail(table, N, g->lambda);
  }

  return {fn, N, partial.value(), tail + partial.error_estimate()};
}

Interval main_term(const ArithFnSpec& fn, std::uint64_t x, const SeriesConstant& constant) {
  if (!(fn == constant.fn)) throw DomainError("series constant computed for a different function");
  const double xd = static_cast<double>(x);
  const Interval iv = constant.interval();
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {std::nextafter(xd * iv.lo, -inf), std::nextafter(xd * iv.hi, inf)};
}

}  // namespace floorsum::series
