#include <charconv>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "floorsum/arith.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/wide.hpp"

namespace floorsum::arith {

namespace {

std::uint64_t checked_mul64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("64-bit overflow in arithmetic function");
  return r;
}

std::uint64_t ipow(std::uint64_t p, unsigned a) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < a; ++i) r = checked_mul64(r, p);
  return r;
}

}  // namespace

std::uint64_t phi_prime_power(std::uint64_t p, unsigned a) { return ipow(p, a - 1) * (p - 1); }

// binomial(a + k - 1, k - 1) = binomial(a + k - 1, a)
std::uint64_t tau_k_prime_power(unsigned a, unsigned k) {
  u128 r = 1;
  for (unsigned i = 1; i <= a; ++i) {
    r = r * (k - 1 + i) / i;
    if (r > UINT64_MAX) throw RangeError("tau_k value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t m_k_prime_power(std::uint64_t p, unsigned a, unsigned k) { return a >= k ? ipow(p, a) : 1; }

std::uint64_t phi_point(std::uint64_t m) {
  std::uint64_t r = 1;
  for (const auto& [p, a] : factorize(m)) r *= phi_prime_power(p, a);
  return r;
}

std::uint64_t tau_k_point(std::uint64_t m, unsigned k) {
  if (k == 0) throw DomainError("tau_k requires k >= 1");
  std::uint64_t r = 1;
  for (const auto& pp : factorize(m)) r = checked_mul64(r, tau_k_prime_power(pp.exponent, k));
  return r;
}

unsigned big_omega_point(std::uint64_t m) {
  unsigned r = 0;
  for (const auto& pp : factorize(m)) r += pp.exponent;
  return r;
}

std::uint64_t digit_sum_point(std::uint64_t m, std::uint64_t q) {
  if (q < 2) throw DomainError("digit sum requires base q >= 2");
  std::uint64_t s = 0;
  for (; m != 0; m /= q) s += m % q;
  return s;
}

std::uint64_t m_k_full_point(std::uint64_t m, unsigned k) {
  if (k < 2) throw DomainError("M_k requires k >= 2");
  std::uint64_t r = 1;
  for (const auto& [p, a] : factorize(m)) r *= m_k_prime_power(p, a, k);
  return r;
}

int mobius_point(std::uint64_t m) {
  const auto f = factorize(m);
  for (const auto& pp : f)
    if (pp.exponent > 1) return 0;
  return f.size() % 2 == 0 ? 1 : -1;
}

double lambda_pow(double lambda, unsigned omega) { return std::pow(lambda, static_cast<double>(omega)); }

double phi_pow_value(std::uint64_t phi, double beta) { return std::pow(static_cast<double>(phi), beta); }

double mk_normalized_value(std::uint64_t mk, std::uint64_t n, unsigned k) {
  return static_cast<double>(mk) * std::pow(static_cast<double>(n), -1.0 / k);
}

// --- ArithFnSpec ---------------------------------------------------------

ArithFnSpec ArithFnSpec::phi() { return {FnKind::Phi, 0.0, 0}; }
ArithFnSpec ArithFnSpec::phi_over_n() { return {FnKind::PhiOverN, 0.0, 0}; }

ArithFnSpec ArithFnSpec::phi_pow(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("phi-pow requires 0 < beta < 1");
  return {FnKind::PhiPow, beta, 0};
}

ArithFnSpec ArithFnSpec::tau_k(unsigned k) {
  if (k < 1) throw DomainError("tau requires k >= 1");
  return {FnKind::TauK, 0.0, k};
}

ArithFnSpec ArithFnSpec::lambda_pow_omega(double lambda) {
  if (!(lambda >= 1.0 && lambda < 2.0)) throw DomainError("lambda-omega requires 1 <= lambda < 2");
  return {FnKind::LambdaPowOmega, lambda, 0};
}

ArithFnSpec ArithFnSpec::digit_sum(std::uint64_t q) {
  if (q < 2) throw DomainError("digit-sum requires base q >= 2");
  return {FnKind::DigitSum, 0.0, q};
}

ArithFnSpec ArithFnSpec::mk_full(unsigned k) {
  if (k < 2) throw DomainError("mk requires k >= 2");
  return {FnKind::MkFull, 0.0, k};
}

ArithFnSpec ArithFnSpec::mk_full_normalized(unsigned k) {
  if (k < 2) throw DomainError("mk-norm requires k >= 2");
  return {FnKind::MkFullNormalized, 0.0, k};
}

ValueClass ArithFnSpec::value_class() const {
  switch (kind_) {
    case FnKind::Phi:
    case FnKind::TauK:
    case FnKind::DigitSum:
    case FnKind::MkFull:
      return ValueClass::ExactInteger;
    default:
      return ValueClass::Real;
  }
}

std::string ArithFnSpec::name() const {
  switch (kind_) {
    case FnKind::Phi: return "phi";
    case FnKind::PhiOverN: return "phi-over-n";
    case FnKind::PhiPow: return fmt::format("phi-pow:{}", real_);
    case FnKind::TauK: return fmt::format("tau:{}", int_);
    case FnKind::LambdaPowOmega: return fmt::format("lambda-omega:{}", real_);
    case FnKind::DigitSum: return fmt::format("digit-sum:{}", int_);
    case FnKind::MkFull: return fmt::format("mk:{}", int_);
    case FnKind::MkFullNormalized: return fmt::format("mk-norm:{}", int_);
  }
  return {};
}

namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError(fmt::format("invalid integer parameter '{}' for {}", s, what));
  return v;
}

double parse_real(std::string_view s, std::string_view what) {
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw ParseError(fmt::format("invalid real parameter '{}' for {}", s, what));
  return v;
}

unsigned as_unsigned(std::uint64_t v) {
  if (v > 1'000'000) throw DomainError("function parameter too large");
  return static_cast<unsigned>(v);
}

}  // namespace

ArithFnSpec ArithFnSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  const std::string_view arg = has_arg ? text.substr(colon + 1) : std::string_view{};

  auto no_arg = [&](ArithFnSpec spec) {
    if (has_arg) throw ParseError(fmt::format("function '{}' takes no parameter", head));
    return spec;
  };
  auto need_arg = [&]() {
    if (!has_arg) throw ParseError(fmt::format("function '{}' requires a parameter", head));
    return arg;
  };

  if (head == "phi") return no_arg(phi());
  if (head == "phi-over-n") return no_arg(phi_over_n());
  if (head == "phi-pow") return phi_pow(parse_real(need_arg(), head));
  if (head == "tau") return tau_k(as_unsigned(parse_uint(need_arg(), head)));
  if (head == "lambda-omega") return lambda_pow_omega(parse_real(need_arg(), head));
  if (head == "digit-sum") return digit_sum(parse_uint(need_arg(), head));
  if (head == "mk") return mk_full(as_unsigned(parse_uint(need_arg(), head)));
  if (head == "mk-norm") return mk_full_normalized(as_unsigned(parse_uint(need_arg(), head)));
  throw ParseError(fmt::format("unknown function '{}'", text));
}

double as_double(const Value& v) {
  return std::visit([](auto x) { return static_cast<double>(x); }, v);
}

Value eval(const ArithFnSpec& fn, std::uint64_t m) {
  if (m == 0) throw DomainError("arithmetic functions are evaluated at m >= 1");
  const auto k = static_cast<unsigned>(fn.int_param());
  switch (fn.kind()) {
    case FnKind::Phi: return phi_point(m);
    case FnKind::PhiOverN: return static_cast<double>(phi_point(m)) / static_cast<double>(m);
    case FnKind::PhiPow: return phi_pow_value(phi_point(m), fn.real_param());
    case FnKind::TauK: return tau_k_point(m, k);
    case FnKind::LambdaPowOmega: return lambda_pow(fn.real_param(), big_omega_point(m));
    case FnKind::DigitSum: return digit_sum_point(m, fn.int_param());
    case FnKind::MkFull: return m_k_full_point(m, k);
    case FnKind::MkFullNormalized: return mk_normalized_value(m_k_full_point(m, k), m, k);
  }
  return std::uint64_t{0};
}

std::size_t memory_budget_bytes() {
  constexpr std::size_t kDefaultMb = 4096;
  std::size_t mb = kDefaultMb;
  if (const char* env = std::getenv("FLOORSUM_MEM_MB")) {
    std::size_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) mb = v;
  }
  return mb << 20;
}

}  // namespace floorsum::arith
