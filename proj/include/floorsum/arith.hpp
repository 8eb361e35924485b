#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace floorsum::arith {

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with strictly increasing primes; empty for m = 1.
using Factorization = std::vector<PrimePower>;

inline constexpr std::uint64_t kMaxFactorizable = std::uint64_t{1} << 63;

bool is_prime(std::uint64_t m);

// Deterministic: trial division by small primes, then Miller-Rabin with a
// fixed base set and Brent's rho with fixed seeds. Throws RangeError for
// m == 0 or m > 2^63.
Factorization factorize(std::uint64_t m);

std::uint64_t phi_point(std::uint64_t m);
std::uint64_t tau_k_point(std::uint64_t m, unsigned k);
unsigned big_omega_point(std::uint64_t m);
std::uint64_t digit_sum_point(std::uint64_t m, std::uint64_t q);
std::uint64_t m_k_full_point(std::uint64_t m, unsigned k);
int mobius_point(std::uint64_t m);

// Multiplicative pieces at a prime power, shared by point evaluation and the
// sieves so both paths produce identical values.
std::uint64_t phi_prime_power(std::uint64_t p, unsigned a);
std::uint64_t tau_k_prime_power(unsigned a, unsigned k);
std::uint64_t m_k_prime_power(std::uint64_t p, unsigned a, unsigned k);

enum class FnKind {
  Phi,
  PhiOverN,
  PhiPow,
  TauK,
  LambdaPowOmega,
  DigitSum,
  MkFull,
  MkFullNormalized,
};

enum class ValueClass { ExactInteger, Real };

// An arithmetic function together with its parameter. Parameter ranges are
// checked by the named constructors.
class ArithFnSpec {
 public:
  static ArithFnSpec phi();
  static ArithFnSpec phi_over_n();
  static ArithFnSpec phi_pow(double beta);                 // 0 < beta < 1
  static ArithFnSpec tau_k(unsigned k);                    // k >= 1
  static ArithFnSpec lambda_pow_omega(double lambda);      // 1 <= lambda < 2
  static ArithFnSpec digit_sum(std::uint64_t q);           // q >= 2
  static ArithFnSpec mk_full(unsigned k);                  // k >= 2
  static ArithFnSpec mk_full_normalized(unsigned k);       // k >= 2

  // Grammar: phi, phi-over-n, phi-pow:B, tau:K, lambda-omega:L,
  // digit-sum:Q, mk:K, mk-norm:K. Throws ParseError or DomainError.
  static ArithFnSpec parse(std::string_view text);

  FnKind kind() const { return kind_; }
  ValueClass value_class() const;
  bool is_exact() const { return value_class() == ValueClass::ExactInteger; }

  double real_param() const { return real_; }
  std::uint64_t int_param() const { return int_; }

  // Canonical text in the parse grammar.
  std::string name() const;

  friend bool operator==(const ArithFnSpec&, const ArithFnSpec&) = default;

 private:
  ArithFnSpec(FnKind kind, double real, std::uint64_t integer)
      : kind_(kind), real_(real), int_(integer) {}

  FnKind kind_;
  double real_;
  std::uint64_t int_;
};

using Value = std::variant<std::uint64_t, double>;

double as_double(const Value& v);

Value eval(const ArithFnSpec& fn, std::uint64_t m);

// Real-valued transforms shared by eval and the sieves.
double lambda_pow(double lambda, unsigned omega);
double phi_pow_value(std::uint64_t phi, double beta);
double mk_normalized_value(std::uint64_t mk, std::uint64_t n, unsigned k);

// Sieve memory cap in bytes; FLOORSUM_MEM_MB overrides the 4096 MB default.
std::size_t memory_budget_bytes();

class SieveTable {
 public:
  const ArithFnSpec& fn() const { return fn_; }
  std::uint64_t limit() const { return limit_; }

  // Entries are indexed by n; index 0 is unused.
  Value value(std::uint64_t n) const;
  double real_value(std::uint64_t n) const;
  std::span<const std::uint64_t> integers() const { return ints_; }
  std::span<const double> reals() const { return reals_; }

 private:
  friend SieveTable build_sieve(const ArithFnSpec& fn, std::uint64_t limit);
  SieveTable(ArithFnSpec fn, std::uint64_t limit) : fn_(fn), limit_(limit) {}

  ArithFnSpec fn_;
  std::uint64_t limit_;
  std::vector<std::uint64_t> ints_;
  std::vector<double> reals_;
};

// Throws MemoryBudgetError when the table and its scratch space exceed
// memory_budget_bytes().
SieveTable build_sieve(const ArithFnSpec& fn, std::uint64_t limit);

// Smallest-prime-factor table for 0..limit (spf[0] = spf[1] = 0).
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit);

// Omega(n) for 0..limit.
std::vector<std::uint8_t> big_omega_table(std::uint64_t limit);

// Checks sum_{d | n} mu(d) * (n / d) == phi(n) for every n <= limit, with mu
// taken from point factorizations and phi from the totient sieve.
bool verify_phi_convolution(std::uint64_t limit);

}  // namespace floorsum::arith
