#include "lspec/indicator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "lspec/error.hpp"
#include "lspec/specfun.hpp"
#include "lspec/summation.hpp"

namespace lspec {

namespace {

constexpr std::uint64_t kMinIndicatorLimit = 3;

DirichletCharacter make_character(const CharacterTarget& t) {
  auto group = std::make_shared<const GroupStructure>(t.modulus);
  if (t.label >= group->phi()) {
    throw InvalidArgument("character label " + std::to_string(t.label) + " out of range for modulus " +
                          std::to_string(t.modulus));
  }
  return DirichletCharacter(group, exponents_of(*group, t.label));
}

void check_limit(const Cutoff& cutoff) {
  if (cutoff.limit() < kMinIndicatorLimit) {
    throw DomainError("indicator needs a cutoff limit >= 3, got " + std::to_string(cutoff.limit()));
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("bad " + what + ": '" + s + "'");
  return v;
}

}  // namespace

EpsilonMode EpsilonMode::fixed(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be a finite value >= 0");
  return EpsilonMode(Kind::fixed, eps);
}

EpsilonMode EpsilonMode::parse(const std::string& text) {
  if (text == "zero") return zero();
  if (text == "paper") return paper();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("eps must be 'zero', 'paper' or a number, got '" + text + "'");
  }
  return fixed(v);
}

double EpsilonMode::resolve(const Cutoff& cutoff) const noexcept {
  switch (kind_) {
    case Kind::paper: return 3.0 * std::log(cutoff.x()) / cutoff.x();
    case Kind::zero: return 0.0;
    case Kind::fixed: return value_;
  }
  return 0.0;
}

double EpsilonMode::predicted_depth(const Cutoff& cutoff) const noexcept {
  const double x = cutoff.x();
  switch (kind_) {
    case Kind::paper: return x / (3.0 * std::log(x));
    case Kind::zero: return x;
    case Kind::fixed: return value_ == 0.0 ? x : -std::expm1(-value_ * x) / value_;
  }
  return x;
}

std::string EpsilonMode::to_string() const {
  switch (kind_) {
    case Kind::paper: return "paper";
    case Kind::zero: return "zero";
    case Kind::fixed: {
      char buf[32];
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value_);
      return std::string(buf, ptr);
    }
  }
  return "zero";
}

Target parse_target(const std::string& text) {
  if (text == "zeta") return ZetaTarget{};
  if (text.rfind("char:", 0) == 0) {
    const auto rest = text.substr(5);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw InvalidArgument("target must be char:q:label");
    CharacterTarget t;
    t.modulus = parse_u64(rest.substr(0, colon), "modulus");
    t.label = parse_u64(rest.substr(colon + 1), "label");
    if (t.modulus == 0) throw InvalidArgument("modulus must be >= 1");
    return t;
  }
  throw InvalidArgument("target must be 'zeta' or 'char:q:label', got '" + text + "'");
}

std::string to_string(const Target& target) {
  if (const auto* c = std::get_if<CharacterTarget>(&target)) {
    return "char:" + std::to_string(c->modulus) + ":" + std::to_string(c->label);
  }
  return "zeta";
}

std::complex<double> zeta_main_term(double y, double x, double eps) noexcept {
  const std::complex<double> z(0.5 - eps, -y);
  return std::exp(x * z) / z;
}

IndicatorEngine::IndicatorEngine(const Target& target, const Cutoff& cutoff, const EpsilonMode& eps)
    : cutoff_(cutoff), eps_(eps.resolve(cutoff)), depth_(eps.predicted_depth(cutoff)) {
  check_limit(cutoff);
  const auto terms = prime_powers(cutoff);
  if (const auto* c = std::get_if<CharacterTarget>(&target)) {
    const auto chi = make_character(*c);
    if (!chi.primitive()) {
      throw InvalidArgument("character " + to_string(target) + " is not primitive (conductor " +
                            std::to_string(chi.conductor()) +
                            "); use the compensated rows of the decomposition instead");
    }
    build(terms, &chi);
  } else {
    build(terms, nullptr);
  }
}

IndicatorEngine::IndicatorEngine(const DirichletCharacter& chi, const Cutoff& cutoff, const EpsilonMode& eps)
    : cutoff_(cutoff), eps_(eps.resolve(cutoff)), depth_(eps.predicted_depth(cutoff)) {
  check_limit(cutoff);
  if (!chi.primitive()) {
    throw InvalidArgument("character mod " + std::to_string(chi.modulus()) + " label " +
                          std::to_string(chi.label()) +
                          " is not primitive; use the compensated rows of the decomposition instead");
  }
  build(prime_powers(cutoff), &chi);
}

void IndicatorEngine::build(const std::vector<PrimePowerTerm>& terms, const DirichletCharacter* chi) {
  zeta_ = chi == nullptr;
  if (chi) {
    parity_ = chi->parity();
    modulus_ = chi->modulus();
    table_ = make_term_table(terms, eps_, [chi](const PrimePowerTerm& t) { return (*chi)(t.value); });
  } else {
    table_ = make_term_table(terms, eps_);
  }
}

IndicatorSample IndicatorEngine::assemble(double y, std::complex<double> prime_sum, const Cutoff& at,
                                          const EpsilonMode& eps) const {
  auto s = assemble(y, prime_sum);
  if (zeta_) {
    const auto main = zeta_main_term(y, at.x(), eps_);
    s.main_term_re = main.real();
    s.main_term_im = main.imag();
  }
  s.predicted_depth = eps.predicted_depth(at);
  s.total = s.recombined();
  return s;
}

IndicatorSample IndicatorEngine::assemble(double y, std::complex<double> prime_sum) const {
  IndicatorSample s;
  s.y = y;
  s.prime_sum_re = prime_sum.real();
  s.prime_sum_im = prime_sum.imag();
  if (zeta_) {
    const auto main = zeta_main_term(y, cutoff_.x(), eps_);
    s.main_term_re = main.real();
    s.main_term_im = main.imag();
  }
  s.smooth_term = smooth_density(y, {parity_ == 0 ? Parity::even : Parity::odd, modulus_});
  s.total = s.recombined();
  s.predicted_depth = depth_;
  return s;
}

IndicatorSample IndicatorEngine::sample(double y) const { return assemble(y, table_.evaluate(y)); }

std::vector<IndicatorSample> IndicatorEngine::scan(const UniformGrid& grid, unsigned threads) const {
  const auto sums = table_.scan(grid, threads);
  std::vector<IndicatorSample> out;
  out.reserve(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) out.push_back(assemble(grid.at(k), sums[k]));
  return out;
}

IndicatorSample zeta_indicator(double y, const Cutoff& cutoff, const EpsilonMode& eps) {
  return IndicatorEngine(ZetaTarget{}, cutoff, eps).sample(y);
}

IndicatorSample dirichlet_indicator(double y, const Cutoff& cutoff, const EpsilonMode& eps,
                                    const DirichletCharacter& chi) {
  return IndicatorEngine(chi, cutoff, eps).sample(y);
}

std::vector<IndicatorSample> scan(const ScanRequest& request) {
  const auto grid = UniformGrid::covering(request.y_min, request.y_max, request.y_step, request.max_points);
  return IndicatorEngine(request.target, request.cutoff, request.eps).scan(grid, request.threads);
}

std::vector<IndicatorSample> pointwise_trace(double y, const Target& target, const EpsilonMode& eps,
                                             std::span<const std::uint64_t> limit_schedule) {
  if (!std::is_sorted(limit_schedule.begin(), limit_schedule.end())) {
    throw InvalidArgument("cutoff schedule must be ascending");
  }
  std::vector<IndicatorSample> out;
  if (limit_schedule.empty()) return out;

  if (eps.kind() == EpsilonMode::Kind::paper) {
    for (const auto limit : limit_schedule) {
      out.push_back(IndicatorEngine(target, Cutoff(limit), eps).sample(y));
    }
    return out;
  }

  // The engine at the largest cutoff holds every term in ascending value order;
  // smaller cutoffs are prefixes of it.
  const IndicatorEngine full(target, Cutoff(limit_schedule.back()), eps);
  std::vector<std::uint64_t> values;
  {
    const auto terms = prime_powers(full.cutoff());
    std::optional<DirichletCharacter> chi;
    if (const auto* c = std::get_if<CharacterTarget>(&target)) chi = make_character(*c);
    for (const auto& t : terms) {
      if (!chi || (*chi)(t.value) != std::complex<double>(0.0, 0.0)) values.push_back(t.value);
    }
  }
  const auto& table = full.terms();
  ReproducibleSum<std::complex<double>> acc;
  std::size_t m = 0;
  for (const auto limit : limit_schedule) {
    const Cutoff cutoff(limit);
    check_limit(cutoff);
    while (m < table.size() && values[m] <= limit) {
      const double theta = y * table.freqs()[m];
      acc.add(table.coefs()[m] * std::complex<double>(std::cos(theta), -std::sin(theta)));
      ++m;
    }
    out.push_back(full.assemble(y, acc.value(), cutoff, eps));
  }
  return out;
}

double origin_identity(const Cutoff& cutoff) {
  check_limit(cutoff);
  ReproducibleSum<double> acc;
  for (const auto& t : prime_powers(cutoff)) acc.add(damped_amplitude(t, 0.0));
  const double x = cutoff.x();
  return acc.value() - 4.0 * std::sinh(x / 2.0) - 0.5 * digamma(0.25) + 0.5 * std::log(std::numbers::pi);
}

std::vector<std::uint64_t> log_schedule(std::uint64_t lo, std::uint64_t hi, std::size_t n) {
  if (lo < 2 || hi < lo) throw InvalidArgument("log_schedule needs 2 <= lo <= hi");
  std::vector<std::uint64_t> out;
  if (n <= 1 || lo == hi) return {hi};
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    auto v = static_cast<std::uint64_t>(std::llround(std::exp(t)));
    v = std::clamp(v, lo, hi);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

}  // namespace lspec
