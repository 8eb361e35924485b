#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "floorsum/constants.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/exponent.hpp"

namespace floorsum::exponent {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> boost::multiprecision::cpp_int {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw ParseError(fmt::format("invalid rational '{}'", text));
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw ParseError(fmt::format("invalid rational '{}'", text));
    return boost::multiprecision::cpp_int(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError(fmt::format("zero denominator in '{}'", text));
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

ExponentPair::ExponentPair(Rational k, Rational l) : k_(std::move(k)), l_(std::move(l)) {
  const Rational half(1, 2);
  if (k_ < 0 || k_ > half || l_ < half || l_ > 1)
    throw DomainError(fmt::format("({}, {}) is outside 0 <= k <= 1/2 <= l <= 1", to_string(k_), to_string(l_)));
}

ExponentPair process_A(const ExponentPair& p) {
  const Rational d = 2 * p.k() + 2;
  return {p.k() / d, (p.k() + p.l() + 1) / d};
}

ExponentPair process_B(const ExponentPair& p) {
  const Rational half(1, 2);
  return {p.l() - half, p.k() + half};
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  std::string parse() {
    std::string out = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return out;
  }

 private:
  std::string sequence() {
    std::string out;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') return out;
      std::string atom;
      const char c = text_[pos_];
      if (c == 'A' || c == 'B') {
        atom = std::string(1, c);
        ++pos_;
      } else if (c == '(') {
        ++pos_;
        atom = sequence();
        skip_space();
        if (pos_ == text_.size() || text_[pos_] != ')') fail("missing ')'");
        ++pos_;
        if (atom.empty()) fail("empty group");
      } else {
        fail("unexpected character");
      }
      const unsigned reps = power();
      for (unsigned i = 0; i < reps; ++i) out += atom;
    }
  }

  unsigned power() {
    skip_space();
    if (pos_ == text_.size() || text_[pos_] != '^') return 1;
    ++pos_;
    skip_space();
    unsigned v = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > 1000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("missing exponent after '^'");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::string_view why) const {
    throw ParseError(fmt::format("malformed word '{}' at position {}: {}", text_, pos_, why));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::string expand_word(std::string_view sugar) {
  std::string flat = WordParser(sugar).parse();
  if (flat.empty()) throw ParseError("empty process word");
  return flat;
}

ExponentPair apply_word(std::string_view word, const ExponentPair& p) {
  if (word.empty()) throw ParseError("empty process word");
  ExponentPair cur = p;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it == 'A')
      cur = process_A(cur);
    else if (*it == 'B')
      cur = process_B(cur);
    else
      throw ParseError(fmt::format("malformed word '{}': letters must be A or B", word));
  }
  return cur;
}

std::array<double, 4> lemma43_terms(const ExponentPair& p, double J, double x) {
  if (!(x >= 3.0)) throw DomainError("lemma43_terms requires x >= 3");
  if (!(J > std::sqrt(x) && J <= x)) throw DomainError("lemma43_terms requires sqrt(x) < J <= x");
  const double k = to_double(p.k());
  const double l = to_double(p.l());
  const double lj = std::log(J);
  const double lx = std::log(x);
  const double inv = 1.0 / (k + 2.0);
  return {
      std::exp(((l + 1.0) * lj + (k + 1.0) * lx) * inv),
      std::exp((2.0 * (l + 1.0) * lj + k * lx) * inv),
      std::exp(((3.0 * k - l + 5.0) * lj - (k + 1.0) * lx) * inv),
      std::exp(3.0 * lj - lx),
  };
}

std::array<Rational, 4> lemma43_exponents(const ExponentPair& p, const Rational& theta) {
  const Rational& k = p.k();
  const Rational& l = p.l();
  const Rational d = k + 2;
  return {
      (theta * (l + 1) + k + 1) / d,
      (2 * theta * (l + 1) + k) / d,
      (theta * (3 * k - l + 5) - k - 1) / d,
      3 * theta - 1,
  };
}

Rational optimal_theta(const ExponentPair& p) {
  Rational theta = Rational(1) / (p.l() + 1);
  const Rational second = (2 * p.k() + 3) / (3 * p.k() - p.l() + 5);
  if (second < theta) theta = second;
  if (Rational(2, 3) < theta) theta = Rational(2, 3);
  return theta;
}

BoundProfile bound_profile_for_theta(const Rational& theta) {
  if (theta <= 0 || theta > 1) throw DomainError("theta must lie in (0, 1]");
  const double t = to_double(theta);
  const double lower = t / kZeta2;
  return {theta, lower, lower + to_double(1 - theta)};
}

BoundProfile bound_profile(const ExponentPair& p) { return bound_profile_for_theta(optimal_theta(p)); }

}  // namespace floorsum::exponent
