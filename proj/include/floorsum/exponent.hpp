#pragma once

#include <array>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace floorsum::exponent {

using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or an integer; throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Exponent pair (k, l) with 0 <= k <= 1/2 <= l <= 1.
class ExponentPair {
 public:
  ExponentPair(Rational k, Rational l);

  const Rational& k() const { return k_; }
  const Rational& l() const { return l_; }

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;

 private:
  Rational k_;
  Rational l_;
};

// A: (k, l) -> (k / (2k + 2), (k + l + 1) / (2k + 2))
ExponentPair process_A(const ExponentPair& p);
// B: (k, l) -> (l - 1/2, k + 1/2)
ExponentPair process_B(const ExponentPair& p);

// Expands "BA^3(BA^2)^2B" style notation into a flat letter string.
// Whitespace is ignored. Throws ParseError.
std::string expand_word(std::string_view sugar);

// Applies a flat word over {A, B}, rightmost letter first.
ExponentPair apply_word(std::string_view word, const ExponentPair& p);

// The four summands of
//   (J^(l+1) x^(k+1))^(1/(k+2)) + (J^(2(l+1)) x^k)^(1/(k+2))
//   + (J^(3k-l+5) x^(-k-1))^(1/(k+2)) + J^3 / x
// for x >= 3 and sqrt(x) < J <= x.
std::array<double, 4> lemma43_terms(const ExponentPair& p, double J, double x);

// Exponent of x in each summand above when J = x^theta.
std::array<Rational, 4> lemma43_exponents(const ExponentPair& p, const Rational& theta);

// Largest theta <= 2/3 keeping every summand at most x^1:
// min(1/(l+1), (2k+3)/(3k-l+5), 2/3).
Rational optimal_theta(const ExponentPair& p);

struct BoundProfile {
  Rational theta;
  double lower_coeff;  // theta / zeta(2)
  double upper_coeff;  // theta / zeta(2) + (1 - theta)
};

BoundProfile bound_profile_for_theta(const Rational& theta);
BoundProfile bound_profile(const ExponentPair& p);

}  // namespace floorsum::exponent
