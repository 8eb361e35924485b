#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>
#include <CLI11.hpp>

#include "floorsum/analytic.hpp"
#include "floorsum/cli.hpp"
#include "floorsum/errors.hpp"
#include "floorsum/exponent.hpp"
#include "floorsum/floorsum.hpp"
#include "floorsum/record.hpp"
#include "floorsum/series.hpp"

namespace floorsum::cli {

using arith::ArithFnSpec;

namespace {

constexpr std::uint64_t kLargeXGuard = 1'000'000'000'000ull;
constexpr double kTableTolerance = 5e-5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

std::uint64_t ms_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::string fixed4(double v) { return fmt::format("{:.4f}", v); }

// Integers are taken exactly; anything else is read as a real and floored.
std::uint64_t parse_x(const std::string& text, bool force, std::ostream& err) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec == std::errc::result_out_of_range) throw UsageError(fmt::format("--x {} exceeds 64 bits", text));
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) throw UsageError(fmt::format("--x '{}' is not a number", text));
    try {
      x = normalize_real_x(v);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (static_cast<double>(x) != v) err << "warning: x = " << text << " floored to " << x << '\n';
  }
  if (x < 1) throw UsageError("--x must be >= 1");
  if (x > kLargeXGuard && !force) throw UsageError("--x above 10^12 requires --force");
  return x;
}

ArithFnSpec parse_fn(const std::string& text) {
  try {
    return ArithFnSpec::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::uint64_t> parse_grid(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !(v >= 1)) throw UsageError(fmt::format("bad grid entry '{}'", item));
    out.push_back(normalize_real_x(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool close_relative(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

// --- sum ---------------------------------------------------------------

struct SumArgs {
  std::string function;
  std::string x;
  bool naive = false;
  bool force = false;
};

std::vector<OutputRecord> cmd_sum(const SumArgs& a, unsigned threads, std::ostream& err) {
  const auto fn = parse_fn(a.function);
  const std::uint64_t x = parse_x(a.x, a.force, err);
  if (a.naive && x > kNaiveLimit) throw UsageError(fmt::format("--naive is limited to x <= {}", kNaiveLimit));

  const auto start = Clock::now();
  const FloorSumResult r = a.naive ? floor_sum_naive(fn, x) : floor_sum(fn, x, {threads});
  OutputRecord rec;
  rec.command = "sum";
  rec.input("function", fn.name()).input("x", std::to_string(x)).input("naive", a.naive ? "true" : "false");
  rec.output("value", r.value_string()).output("block_count", std::to_string(r.block_count));
  if (!r.is_exact()) rec.output("error_estimate", format_real(std::get<CompensatedReal>(r.value).error_estimate));
  if (fn.kind() == arith::FnKind::Phi && x >= 3) {
    const double xd = static_cast<double>(x);
    const double rho_value = r.approx() / (xd * std::log(xd));
    rec.output("rho", format_real(rho_value)).output("rho_4dp", fixed4(rho_value));
  }
  rec.elapsed_ms = ms_since(start);
  return {rec};
}

// --- table -------------------------------------------------------------

std::vector<OutputRecord> cmd_table(const std::string& which, unsigned threads) {
  std::vector<std::string> names;
  if (which == "all")
    names = {"6.1", "6.2", "6.3"};
  else
    names = {which};
  std::vector<OutputRecord> out;
  for (const auto& name : names) {
    for (const auto& row : reference_table(name)) {
      const auto start = Clock::now();
      const FloorSumResult r = floor_sum(ArithFnSpec::phi(), row.x, {threads});
      const double xd = static_cast<double>(row.x);
      const double rho_value = r.approx() / (xd * std::log(xd));
      const double diff = std::fabs(rho_value - row.reported);
      OutputRecord rec;
      rec.command = "table";
      rec.input("table", name).input("x", std::to_string(row.x));
      rec.output("S", r.value_string())
          .output("rho", format_real(rho_value))
          .output("rho_4dp", fixed4(rho_value))
          .output("reported_rho", fixed4(row.reported))
          .output("abs_diff", format_real(diff));
      rec.status = diff <= kTableTolerance ? Status::Ok : Status::CheckFailed;
      rec.elapsed_ms = ms_since(start);
      out.push_back(rec);
    }
  }
  return out;
}

// --- constant ----------------------------------------------------------

std::vector<OutputRecord> cmd_constant(const std::string& function, std::uint64_t trunc, const std::string& growth_text) {
  const auto fn = parse_fn(function);
  series::GrowthClass growth;
  try {
    growth = growth_text.empty() ? series::default_growth(fn) : series::parse_growth(growth_text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto start = Clock::now();
  const series::SeriesConstant c = [&] {
    try {
      return series::kappa(fn, trunc, growth);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  const auto iv = c.interval();
  OutputRecord rec;
  rec.command = "constant";
  rec.input("function", fn.name()).input("trunc", std::to_string(trunc)).input("growth", series::growth_name(growth));
  rec.output("partial_sum", format_real(c.partial_sum))
      .output("tail_bound", format_real(c.tail_bound))
      .output("lo", format_real(iv.lo))
      .output("hi", format_real(iv.hi))
      .output("width", format_real(iv.width()));
  rec.elapsed_ms = ms_since(start);
  return {rec};
}

// --- exponent ----------------------------------------------------------

std::vector<OutputRecord> cmd_exponent(const std::string& word_text, const std::string& seed_text) {
  std::string word;
  exponent::ExponentPair seed{0, 1};
  try {
    word = exponent::expand_word(word_text);
    const auto comma = seed_text.find(',');
    if (comma == std::string::npos) throw ParseError("--seed must be 'k,l'");
    seed = exponent::ExponentPair(exponent::parse_rational(seed_text.substr(0, comma)),
                                  exponent::parse_rational(seed_text.substr(comma + 1)));
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto start = Clock::now();
  const auto pair = exponent::apply_word(word, seed);
  const auto profile = exponent::bound_profile(pair);
  OutputRecord rec;
  rec.command = "exponent";
  rec.input("word", word_text).input("expanded", word).input("seed", seed_text);
  rec.output("k", exponent::to_string(pair.k()))
      .output("l", exponent::to_string(pair.l()))
      .output("theta", exponent::to_string(profile.theta))
      .output("lower_coeff", format_real(profile.lower_coeff))
      .output("upper_coeff", format_real(profile.upper_coeff))
      .output("note", "epsilon slack in the pairs is taken as 0");
  rec.elapsed_ms = ms_since(start);
  return {rec};
}

// --- check -------------------------------------------------------------

OutputRecord check_record(std::string suite, Clock::time_point start, bool ok) {
  OutputRecord rec;
  rec.command = "check";
  rec.input("suite", std::move(suite));
  rec.status = ok ? Status::Ok : Status::CheckFailed;
  rec.elapsed_ms = ms_since(start);
  return rec;
}

std::vector<OutputRecord> suite_vaaler() {
  constexpr unsigned kGrid = 100'000;
  constexpr double kSlack = 1e-12;
  const unsigned Hs[] = {1, 5, 10, 50, 100};
  std::vector<OutputRecord> out;
  std::vector<double> max_errors, mean_errors;
  for (unsigned H : Hs) {
    const auto start = Clock::now();
    std::uint64_t violations = 0;
    double max_err = 0.0, total = 0.0;
    for (unsigned i = 0; i < kGrid; ++i) {
      const double z = static_cast<double>(i) / kGrid;
      const double e = std::fabs(analytic::psi(z) - analytic::vaaler_approx(z, H));
      max_err = std::max(max_err, e);
      total += e;
      if (e > analytic::fejer_bound(z, H) + kSlack) ++violations;
    }
    max_errors.push_back(max_err);
    mean_errors.push_back(total / kGrid);
    auto rec = check_record("vaaler", start, violations == 0);
    rec.input("H", std::to_string(H)).input("grid", std::to_string(kGrid));
    rec.output("max_error", format_real(max_err))
        .output("mean_error", format_real(mean_errors.back()))
        .output("violations", std::to_string(violations));
    out.push_back(rec);
  }
  // the grid contains z = 0 where psi jumps, so the max alone is flat at 1/2
  const auto start = Clock::now();
  bool monotone = true;
  for (std::size_t i = 2; i < max_errors.size(); ++i)
    if (max_errors[i] > max_errors[i - 1] + kSlack) monotone = false;
  for (std::size_t i = 1; i < mean_errors.size(); ++i)
    if (mean_errors[i] >= mean_errors[i - 1]) monotone = false;
  auto rec = check_record("vaaler", start, monotone);
  rec.input("property", "max error nonincreasing on H >= 5, mean error decreasing in H");
  out.push_back(rec);
  return out;
}

std::vector<OutputRecord> suite_harmonic() {
  const auto start = Clock::now();
  std::uint64_t points = 0, failures = 0;
  auto probe = [&](double x) {
    ++points;
    if (!analytic::harmonic_check(x)) ++failures;
  };
  for (unsigned i = 2; i <= 20'000; ++i) probe(i / 2.0);
  for (unsigned n = 2; n <= 10'000; ++n) probe(std::nextafter(static_cast<double>(n), 0.0));
  auto rec = check_record("harmonic", start, failures == 0);
  rec.input("grid", "x in {1, 1.5, ..., 10^4} and n^- for n <= 10^4");
  rec.output("points", std::to_string(points)).output("failures", std::to_string(failures));
  return {rec};
}

std::vector<OutputRecord> suite_phi_n2() {
  std::vector<double> xs;
  for (double x = 10; x <= 1e7; x *= 10) xs.push_back(x);
  const auto start = Clock::now();
  const auto ok = analytic::phi_over_n2_scan(xs);
  std::vector<OutputRecord> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto rec = check_record("phi-n2", start, ok[i]);
    rec.input("x", format_real(xs[i]));
    out.push_back(rec);
  }
  return out;
}

std::vector<std::uint64_t> log_spaced(double lo, double hi, unsigned count) {
  std::vector<std::uint64_t> out;
  for (unsigned i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(static_cast<std::uint64_t>(std::llround(lo * std::pow(hi / lo, t))));
  }
  return out;
}

std::vector<OutputRecord> suite_explicit_upper(unsigned threads) {
  std::vector<OutputRecord> out;
  for (std::uint64_t x : log_spaced(3, 1e8, 50)) {
    const auto start = Clock::now();
    const double s = floor_sum(ArithFnSpec::phi(), x, {threads}).approx();
    const double bound = analytic::explicit_upper_bound(static_cast<double>(x));
    auto rec = check_record("explicit-upper", start, s <= bound);
    rec.input("x", std::to_string(x));
    rec.output("S", format_real(s)).output("bound", format_real(bound));
    out.push_back(rec);
  }
  return out;
}

std::vector<OutputRecord> suite_tau_x() {
  std::vector<OutputRecord> out;
  auto start = Clock::now();
  bool all = true;
  for (std::uint64_t x = 1; x <= 2000; ++x) all = all && verify_tau_x_identity(x);
  auto rec = check_record("tau-x", start, all);
  rec.input("x", "1..2000");
  out.push_back(rec);

  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::uint64_t> dist(2001, 10'000);
  std::vector<std::uint64_t> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(dist(rng));
  xs.push_back(10'000);
  for (std::uint64_t x : xs) {
    start = Clock::now();
    auto r = check_record("tau-x", start, verify_tau_x_identity(x));
    r.input("x", std::to_string(x));
    out.push_back(r);
  }
  return out;
}

std::vector<ArithFnSpec> oracle_functions() {
  return {ArithFnSpec::phi(),          ArithFnSpec::tau_k(1),          ArithFnSpec::tau_k(2),
          ArithFnSpec::tau_k(3),       ArithFnSpec::digit_sum(10),     ArithFnSpec::digit_sum(2),
          ArithFnSpec::mk_full(2),     ArithFnSpec::mk_full(3),        ArithFnSpec::phi_over_n(),
          ArithFnSpec::phi_pow(0.4),   ArithFnSpec::lambda_pow_omega(std::sqrt(3.0)),
          ArithFnSpec::mk_full_normalized(2)};
}

std::vector<OutputRecord> suite_oracle() {
  constexpr std::uint64_t kDense = 10'000;
  constexpr std::uint64_t kSparse = 1'000'000;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(kDense + 1, kSparse);
  std::vector<std::uint64_t> sparse;
  for (int i = 0; i < 100; ++i) sparse.push_back(dist(rng));

  std::vector<OutputRecord> out;
  for (const auto& fn : oracle_functions()) {
    const auto start = Clock::now();
    const auto table = arith::build_sieve(fn, kSparse);
    std::uint64_t mismatches = 0;
    auto compare = [&](std::uint64_t x) {
      const auto fast = floor_sum(fn, x);
      const auto slow = floor_sum_naive(table, x);
      const bool same = fn.is_exact() ? fast.exact() == slow.exact() : close_relative(fast.approx(), slow.approx(), 1e-9);
      if (!same) ++mismatches;
    };
    for (std::uint64_t x = 1; x <= kDense; ++x) compare(x);
    for (std::uint64_t x : sparse) compare(x);
    auto rec = check_record("oracle", start, mismatches == 0);
    rec.input("function", fn.name()).input("x", "1..10^4 and 100 random <= 10^6");
    rec.output("mismatches", std::to_string(mismatches));
    out.push_back(rec);
  }
  return out;
}

std::vector<OutputRecord> suite_lemma42() {
  std::vector<OutputRecord> out;
  const std::uint64_t Ns[] = {1'000, 10'000, 100'000};
  const std::pair<const char*, exponent::ExponentPair> pairs[] = {
      {"1/2,1/2", exponent::ExponentPair({1, 2}, {1, 2})},
      {"0,1", exponent::ExponentPair(0, 1)},
  };
  for (const auto& [name, pair] : pairs) {
    const auto start = Clock::now();
    const auto report = analytic::lemma42_check(pair, Ns, 1.0, 1.5);
    auto rec = check_record("lemma42", start, report.bounded);
    rec.input("pair", name).input("N", "10^3,10^4,10^5").input("x", "N^(3/2)");
    for (const auto& row : report.rows) rec.output(fmt::format("ratio_N{}", row.N), format_real(row.ratio));
    rec.output("max_ratio", format_real(report.max_ratio));
    out.push_back(rec);
  }
  return out;
}

// Normalisation exponent of x suggested by the asymptotic results for fn.
double default_residual_exponent(const ArithFnSpec& fn) {
  switch (fn.kind()) {
    case arith::FnKind::PhiOverN:
    case arith::FnKind::TauK:
      return 0.5;
    case arith::FnKind::DigitSum:
      return 2.0 / 3.0;
    case arith::FnKind::LambdaPowOmega: {
      const double alpha = 2.0 * std::log(fn.real_param()) / std::log(2.0);
      return (alpha + 1.0) / 3.0;
    }
    case arith::FnKind::PhiPow:
      return (2.0 * fn.real_param() + 2.0) / 3.0;
    case arith::FnKind::MkFullNormalized:
      return 1.0 - 1.0 / (3.0 * static_cast<double>(fn.int_param()));
    default:
      throw UsageError(fmt::format("no residual normalisation for '{}'", fn.name()));
  }
}

// Log-power in the normalisation; tau_k for k >= 2 carries (ln x)^(k - 1/2).
double default_residual_log_exponent(const ArithFnSpec& fn) {
  if (fn.kind() == arith::FnKind::TauK && fn.int_param() >= 2) return static_cast<double>(fn.int_param()) - 0.5;
  return 0.0;
}

struct CheckArgs {
  std::string suite;
  std::string grid;
  double a = std::nan("");
  double b = std::nan("");
  std::uint64_t trunc = 10'000'000;
};

std::vector<OutputRecord> suite_residual(const CheckArgs& args, const std::string& fn_text, unsigned threads) {
  const auto fn = parse_fn(fn_text);
  const bool constant_one = fn == ArithFnSpec::tau_k(1);
  std::vector<std::uint64_t> grid;
  if (!args.grid.empty())
    grid = parse_grid(args.grid);
  else if (constant_one)
    grid = {1'000, 10'000, 100'000, 1'000'000, 10'000'000};
  else if (fn.kind() == arith::FnKind::MkFullNormalized)
    grid = {10'000, 100'000, 1'000'000, 10'000'000};
  else
    grid = {10'000, 100'000, 10'000'000, 100'000'000};
  const double a = std::isnan(args.a) ? (constant_one ? 0.0 : default_residual_exponent(fn)) : args.a;
  const double b = std::isnan(args.b) ? default_residual_log_exponent(fn) : args.b;

  series::GrowthClass growth;
  try {
    growth = series::default_growth(fn);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto start = Clock::now();
  analytic::ResidualOptions opts;
  opts.truncation = args.trunc;
  opts.sum.threads = threads;
  if (constant_one) {
    // x * tail stays below 1/2, inside the |r| <= 2 allowance
    opts.truncation = std::max(args.trunc, 4 * *std::max_element(grid.begin(), grid.end()));
    opts.max_constant_error = 1.0;
  }
  const auto report = analytic::residual_harness(fn, growth, grid, a, b, opts);

  // f == 1 has the closed form S = x, so the check is |r| <= 2 rather than a trend
  bool ok = constant_one || report.trend_bounded;
  if (constant_one)
    for (double r : report.residuals) ok = ok && std::fabs(r) <= 2.0;
  auto rec = check_record("residual:" + fn.name(), start, ok);
  rec.input("a", format_real(a)).input("b", format_real(b)).input("trunc", std::to_string(opts.truncation));
  for (std::size_t i = 0; i < report.x_grid.size(); ++i) {
    rec.output(fmt::format("r_{}", report.x_grid[i]), format_real(report.residuals[i]));
    rec.output(fmt::format("norm_{}", report.x_grid[i]), format_real(report.normalized[i]));
  }
  rec.output("max_normalized", format_real(report.max_normalized));
  rec.output("kappa", format_real(report.constant.partial_sum));
  return {rec};
}

std::vector<OutputRecord> cmd_check(const CheckArgs& args, unsigned threads) {
  const std::string& s = args.suite;
  if (s == "vaaler") return suite_vaaler();
  if (s == "harmonic") return suite_harmonic();
  if (s == "phi-n2") return suite_phi_n2();
  if (s == "explicit-upper") return suite_explicit_upper(threads);
  if (s == "tau-x") return suite_tau_x();
  if (s == "oracle") return suite_oracle();
  if (s == "lemma42") return suite_lemma42();
  if (s.starts_with("residual:")) return suite_residual(args, s.substr(9), threads);
  throw UsageError(fmt::format("unknown suite '{}'", s));
}

}  // namespace

std::vector<TableRow> reference_table(const std::string& which) {
  if (which == "6.1")
    return {{1'000'000ull, 0.5844}, {10'000'000ull, 0.5849}, {100'000'000ull, 0.5896},
            {1'000'000'000ull, 0.5909}, {10'000'000'000ull, 0.5940}};
  if (which == "6.2")
    return {{1'000'000ull, 0.5844}, {1'000'001ull, 0.6274}, {1'000'002ull, 0.5965},
            {1'000'003ull, 0.6447}, {1'000'004ull, 0.6108}};
  if (which == "6.3")
    return {{10'000'000'000ull, 0.5940}, {10'000'000'001ull, 0.6200}, {10'000'000'002ull, 0.6001},
            {10'000'000'003ull, 0.6270}, {10'000'000'004ull, 0.6144}};
  throw UsageError(fmt::format("unknown table '{}' (expected 6.1, 6.2, 6.3 or all)", which));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sums of arithmetic functions at floor quotients", "floorsum"};
  app.require_subcommand(1);

  std::string format = "json";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "Worker threads (1 = reference sequential order)")->check(CLI::PositiveNumber);

  SumArgs sum;
  auto* sum_cmd = app.add_subcommand("sum", "Compute S_f(x) = sum_{n <= x} f(floor(x/n))");
  sum_cmd->add_option("--function", sum.function, "Function spec, e.g. phi, tau:2, digit-sum:10")->required();
  sum_cmd->add_option("--x", sum.x, "x >= 1 (reals are floored)")->required();
  sum_cmd->add_flag("--naive", sum.naive, "Use the direct n = 1..x loop");
  sum_cmd->add_flag("--force", sum.force, "Allow x above 10^12");
  sum_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string table_which = "all";
  auto* table_cmd = app.add_subcommand("table", "Recompute the rho(x) reproduction tables");
  table_cmd->add_option("--which", table_which, "6.1, 6.2, 6.3 or all");
  table_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::string const_fn, const_growth;
  std::uint64_t const_trunc = 10'000'000;
  auto* const_cmd = app.add_subcommand("constant", "Series constant sum f(n)/(n(n+1)) with a tail bound");
  const_cmd->add_option("--function", const_fn, "Function spec")->required();
  const_cmd->add_option("--trunc", const_trunc, "Truncation N");
  const_cmd->add_option("--growth", const_growth, "tau:A,K | power:C,BETA | log:C,D | omega-geom:LAMBDA");

  std::string word, seed = "0,1";
  auto* exp_cmd = app.add_subcommand("exponent", "Apply A/B processes to an exponent pair");
  exp_cmd->add_option("--word", word, "Process word, e.g. BA^3(BA^2)^2")->required();
  exp_cmd->add_option("--seed", seed, "Seed pair 'k,l' as rationals");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run an invariant suite");
  check_cmd->add_option("--suite", check.suite,
                        "vaaler | harmonic | phi-n2 | explicit-upper | tau-x | oracle | lemma42 | residual:<fn>")
      ->required();
  check_cmd->add_option("--grid", check.grid, "Residual grid, comma separated");
  check_cmd->add_option("--a", check.a, "Residual normalisation exponent of x");
  check_cmd->add_option("--b", check.b, "Residual normalisation exponent of ln x");
  check_cmd->add_option("--trunc", check.trunc, "Series truncation for residual suites");
  check_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  RecordWriter writer(out, format == "csv" ? Format::Csv : Format::Json);
  try {
    std::vector<OutputRecord> records;
    if (sum_cmd->parsed())
      records = cmd_sum(sum, threads, err);
    else if (table_cmd->parsed())
      records = cmd_table(table_which, threads);
    else if (const_cmd->parsed())
      records = cmd_constant(const_fn, const_trunc, const_growth);
    else if (exp_cmd->parsed())
      records = cmd_exponent(word, seed);
    else if (check_cmd->parsed())
      records = cmd_check(check, threads);

    bool failed = false;
    for (const auto& r : records) {
      writer.write(r);
      failed = failed || r.status != Status::Ok;
    }
    writer.finish();
    return failed ? kExitFailure : kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace floorsum::cli
