#include "lspec/tools/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <sstream>

#include "lspec/char_group.hpp"
#include "lspec/dft_decomp.hpp"
#include "lspec/error.hpp"
#include "lspec/indicator.hpp"
#include "lspec/prime_stream.hpp"
#include "lspec/specfun.hpp"
#include "lspec/zero_side.hpp"
#include "lspec/tools/output.hpp"

namespace lspec::tools {

namespace {

using cd = std::complex<double>;

constexpr std::uint64_t kDeskLimit = 1000000;
constexpr std::uint64_t kFastLimit = 100000;

std::uint64_t cap(std::uint64_t limit, const AcceptanceOptions& o) {
  return o.fast ? std::min(limit, kFastLimit) : limit;
}

ZeroTable zeros(const AcceptanceOptions& o, const char* name) {
  return load_zeros((std::filesystem::path(o.zeros_dir) / name).string());
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

DirichletCharacter chi5_i() {
  const auto t = character_group(5);
  const auto label = find_character(t, 2, cd(0, 1));
  if (!label) throw Error("no character mod 5 with chi(2) = i");
  return t[*label];
}

const SpikeMatch* spike_near(const std::vector<SpikeMatch>& spikes, double gamma) {
  const SpikeMatch* best = nullptr;
  for (const auto& s : spikes) {
    if (!best || std::abs(s.detected_y - gamma) < std::abs(best->detected_y - gamma)) best = &s;
  }
  return best;
}

// 1. first ten zeta zeros
void zero_detection(const AcceptanceOptions& o, CriterionResult& r) {
  const Cutoff c(cap(kDeskLimit, o));
  const double x = c.x();
  const auto table = zeros(o, zero_files::zeta_low);
  if (table.size() < 10) throw Error("zeta table needs at least 10 ordinates");
  const IndicatorEngine engine(ZetaTarget{}, c, EpsilonMode::zero());
  const auto scan = engine.scan(UniformGrid::covering(0.0, 60.0, 0.01), o.threads);
  const auto spikes = detect_spikes(scan, {0.5, 0.05}, &table);

  int found = 0;
  double worst_offset = 0.0, dmin = 1e300, dmax = 0.0;
  bool in_band = true;
  for (std::size_t i = 0; i < 10; ++i) {
    const double g = table.ordinates[i];
    const auto it = std::find_if(spikes.begin(), spikes.end(),
                                 [g](const SpikeMatch& s) { return s.matched_gamma && *s.matched_gamma == g; });
    if (it == spikes.end()) continue;
    ++found;
    worst_offset = std::max(worst_offset, std::abs(it->residual_offset));
    dmin = std::min(dmin, it->depth);
    dmax = std::max(dmax, it->depth);
    in_band = in_band && it->depth >= 0.5 * x && it->depth <= 1.5 * x;
  }
  const auto unmatched = std::count_if(spikes.begin(), spikes.end(), [](const SpikeMatch& s) { return !s.matched_gamma; });
  r.pass = found == 10 && unmatched == 0 && worst_offset < 0.05 && in_band;
  r.measured = std::to_string(found) + "/10 first zeros matched, " + std::to_string(spikes.size()) + " spikes, " +
               std::to_string(unmatched) + " unmatched, max |offset| " + fmt(worst_offset) + ", depths [" +
               fmt(dmin) + ", " + fmt(dmax) + "]";
  r.threshold = "all of the first 10 matched, none unmatched, |offset| < 0.05, depth in [" + fmt(0.5 * x) + ", " +
                fmt(1.5 * x) + "]";
}

// 2. the zero at 1e6 + 1.90...
// Not capped in the fast suite: a 1e5 cutoff cannot resolve zero spacing near
// height 1e6, and the 2001-point grid costs about a second at 1e6.
void high_ordinate(const AcceptanceOptions& o, CriterionResult& r) {
  const Cutoff c(kDeskLimit);
  const auto table = zeros(o, zero_files::zeta_high);
  const auto g = table.nearest(1e6 + 1.90);
  if (!g || std::abs(*g - (1e6 + 1.90)) > 0.01) throw Error("zero table has no ordinate at 1e6 + 1.90...");
  const IndicatorEngine engine(ZetaTarget{}, c, EpsilonMode::zero());
  const auto scan = engine.scan(UniformGrid::covering(1e6, 1e6 + 10.0, 0.005), o.threads);
  const auto spikes = detect_spikes(scan, {0.5, 0.05}, &table);
  const auto* s = spike_near(spikes, *g);
  const double off = s ? std::abs(s->detected_y - *g) : INFINITY;
  r.pass = off < 0.05;
  r.measured = "spike at 1e6 + " + fmt(s ? s->detected_y - 1e6 : NAN, 7) + ", |offset| " + fmt(off) + " from 1e6 + " +
               fmt(*g - 1e6, 7);
  r.threshold = "|offset| < 0.05";
}

// 3. chi mod 5 with chi(2) = i
void dirichlet_detection(const AcceptanceOptions& o, CriterionResult& r) {
  const Cutoff c(cap(kDeskLimit, o));
  const double x = c.x();
  const auto table = zeros(o, zero_files::chi5);
  if (table.empty()) throw Error("character zero table is empty");
  const double g = table.ordinates.front();
  const IndicatorEngine engine(chi5_i(), c, EpsilonMode::zero());
  const auto scan = engine.scan(UniformGrid::covering(-25.0, 25.0, 0.01), o.threads);
  const auto spikes = detect_spikes(scan, {0.5, 0.05}, &table);
  const auto* s = spike_near(spikes, g);
  const double off = s ? std::abs(s->detected_y - g) : INFINITY;
  const double depth = s ? s->depth : 0.0;
  const double at10 = engine.sample(10.0).total;
  r.pass = off < 0.05 && depth >= 0.5 * x && std::abs(at10) <= 0.3 * x;
  r.measured = "spike |offset| " + fmt(off) + " from " + fmt(g, 7) + ", depth " + fmt(depth) + ", total(10) " +
               fmt(at10);
  r.threshold = "|offset| < 0.05, depth >= " + fmt(0.5 * x) + ", |total(10)| <= " + fmt(0.3 * x);
}

// 4. classes +1 and +3 mod 4
void quadratic_decomposition(const AcceptanceOptions& o, CriterionResult& r) {
  const Cutoff c(cap(kDeskLimit, o));
  const double half = c.x() / 2;
  const double gz = zeros(o, zero_files::zeta_low).ordinates.at(0);
  const double gc = zeros(o, zero_files::chi4).ordinates.at(0);
  const DecompositionEngine engine(4, c, EpsilonMode::zero());
  const auto grid = UniformGrid::covering(-2.0, 32.0, 0.01);
  const auto sums = engine.class_sums(grid, o.threads);

  auto extremum = [&](std::uint64_t a, double g, bool lowest) {
    double best = lowest ? INFINITY : -INFINITY;
    for (const auto& v : sums) {
      if (std::abs(v.y - g) > 0.05) continue;
      const double t = engine.class_indicator(a, v, true).total;
      best = lowest ? std::min(best, t) : std::max(best, t);
    }
    return best;
  };
  const double p_z = extremum(1, gz, true), p_c = extremum(1, gc, true);
  const double m_z = extremum(3, gz, true), m_c = extremum(3, gc, false);
  auto within = [&](double v, double target) { return std::abs(v - target) <= 0.35 * std::abs(target); };
  r.pass = within(p_z, -half) && within(p_c, -half) && within(m_z, -half) && within(m_c, half);
  r.measured = "class 1: " + fmt(p_z) + " at zeta zero, " + fmt(p_c) + " at chi zero; class 3: " + fmt(m_z) +
               " at zeta zero, " + fmt(m_c) + " at chi zero";
  r.threshold = "class 1: -" + fmt(half) + " at both; class 3: -" + fmt(half) + " then +" + fmt(half) +
                "; each within 35%";
}

// 5. Landau sums
void landau(const AcceptanceOptions& o, CriterionResult& r) {
  const auto table = zeros(o, zero_files::zeta_1000);
  if (table.size() < 1000) throw Error("Landau check needs at least 1000 zeta ordinates");
  const auto a = landau_sum(2.0, 600.0, table);
  const auto b = landau_sum(2.5, 600.0, table);
  r.pass = a.value.real() >= -91.0 && a.value.real() <= -41.0 && std::abs(b.value.real()) <= 25.0 && !a.truncated;
  r.measured = "Re(x=2) " + fmt(a.value.real()) + " (predicted " + fmt(a.predicted_re) + "), Re(x=2.5) " +
               fmt(b.value.real());
  r.threshold = "Re(x=2) in [-91, -41], |Re(x=2.5)| <= 25";
}

// 6. origin identity against the zero side
void origin(const AcceptanceOptions& o, CriterionResult& r) {
  const auto table = zeros(o, zero_files::zeta_1000);
  const auto schedule = log_schedule(1000, cap(kDeskLimit, o), 20);
  double ss = 0.0, worst = 0.0;
  for (const auto limit : schedule) {
    const Cutoff c(limit);
    const double d = origin_identity(c) - zero_side_origin_sum(c.x(), 1000.0, table);
    ss += d * d;
    worst = std::max(worst, std::abs(d));
  }
  const double rms = std::sqrt(ss / static_cast<double>(schedule.size()));
  r.pass = rms <= 1.0;
  r.measured = "RMS " + fmt(rms) + " over " + std::to_string(schedule.size()) + " cutoffs (max " + fmt(worst) + ")";
  r.threshold = "RMS <= 1.0";
}

// 7. kernel overshoot constants
void kernel_constants(const AcceptanceOptions&, CriterionResult& r) {
  const auto k = kernel_overshoot();
  const double x = std::log(1e6);
  const double im = indicator_kernel(k.u / x, x, 0.0).imag();
  const double du = std::abs(k.u - 2.331122) / 2.331122;
  const double dv = std::abs(im / x - 0.724611) / 0.724611;
  r.pass = du <= 1e-5 && dv <= 1e-5;
  r.measured = "u* " + fmt(k.u, 9) + ", peak " + fmt(im / x, 9) + " x";
  r.threshold = "u* = 2.331122, peak 0.724611 x, each to 1e-5 relative";
}

// 8. character algebra
void character_algebra(const AcceptanceOptions& o, CriterionResult& r) {
  double orth = 0.0, trip = 0.0, two_path = 0.0;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> uy(-100.0, 100.0);
  for (std::uint64_t q = 1; q <= 60; ++q) {
    const DecompositionEngine engine(q, Cutoff(1000 + rng() % 9000), EpsilonMode::zero());
    orth = std::max(orth, orthogonality_defect(engine.table()));
    const auto v = engine.class_sums(uy(rng));
    const auto back = inverse_transform(engine.table(), forward_transform(engine.table(), v.entries));
    for (std::size_t k = 0; k < back.size(); ++k) trip = std::max(trip, std::abs(back[k] - v.entries[k]));
  }
  for (int pair = 0; pair < 10; ++pair) {
    const double y = uy(rng);
    const Cutoff c(1000 + rng() % (kFastLimit - 999));
    const auto terms = prime_powers(c);
    for (std::uint64_t q = 1; q <= 30; ++q) {
      const DecompositionEngine engine(q, c, EpsilonMode::zero());
      const auto sys = engine.solve(engine.class_sums(y));
      for (const auto& chi : engine.table().characters()) {
        if (!chi.primitive()) continue;
        const auto direct = make_term_table(terms, 0.0, [&chi](const PrimePowerTerm& t) { return chi(t.value); });
        two_path = std::max(two_path, std::abs(sys.transformed[chi.label()] - direct.evaluate(y)));
      }
    }
  }
  r.pass = orth < 1e-10 && trip <= 1e-10 && two_path <= 1e-9;
  r.measured = "orthogonality " + fmt(orth, 3) + ", round trip " + fmt(trip, 3) + ", two-path " + fmt(two_path, 3);
  r.threshold = "orthogonality < 1e-10, round trip <= 1e-10, two-path <= 1e-9";
}

// 9. compensation identity
void compensation(const AcceptanceOptions& o, CriterionResult& r) {
  const Cutoff c(kFastLimit);
  const auto terms = prime_powers(c);
  std::mt19937_64 rng(o.seed + 9);
  std::uniform_real_distribution<double> uy(-100.0, 100.0);
  double worst = 0.0;
  std::size_t count = 0;
  for (std::uint64_t q = 2; q <= 60; ++q) {
    const auto t = character_group(q);
    for (const auto& chi : t.characters()) {
      if (chi.primitive()) continue;
      ++count;
      const auto rec = conductor_and_parent(chi);
      const auto comp = compensation_for(chi, c, EpsilonMode::zero());
      const auto child = make_term_table(terms, 0.0, [&chi](const PrimePowerTerm& p) { return chi(p.value); });
      const auto parent =
          make_term_table(terms, 0.0, [&rec](const PrimePowerTerm& p) { return rec.parent(p.value); });
      for (int i = 0; i < 5; ++i) {
        const double y = uy(rng);
        const cd diff = parent.evaluate(y) - child.evaluate(y);
        worst = std::max(worst, std::abs(diff - comp.series_difference(y)));
      }
    }
  }
  r.pass = worst <= 1e-9;
  r.measured = "max deviation " + fmt(worst, 3) + " over " + std::to_string(count) + " characters x 5 ordinates";
  r.threshold = "<= 1e-9";
}

// 10. numerics hygiene
void hygiene(const AcceptanceOptions&, CriterionResult& r) {
  struct Ref {
    cd s, v;
  };
  // high-precision reference values
  static const Ref refs[] = {
      {{1.0, 0.0}, {-0.57721566490153286061, 0.0}},
      {{0.25, 0.0}, {-4.2274535333762654081, 0.0}},
      {{0.5, 10.0}, {2.3021676932743471136, 1.5707963267948966192}},
      {{0.25, -7.0}, {1.9456973736998503039, -1.6065564616259578587}},
      {{-2.5, 0.3}, {1.1080030134754655709, 2.2145460646932182734}},
      {{0.75, -500000.0}, {13.122363377404287128, -1.5707958267948966191}},
      {{3.0, 1e7}, {16.118095650958350621, 1.5707960767948966192}},
      {{0.001, 0.0}, {-1000.5755719318102797, 0.0}},
      {{-0.5, -40.0}, {3.689165860777526379, -1.5957924211551528292}},
  };
  double dig = 0.0;
  for (const auto& ref : refs) {
    dig = std::max(dig, std::abs(digamma(ref.s) - ref.v) / std::max(1.0, std::abs(ref.v)));
  }

  const IndicatorEngine engine(ZetaTarget{}, Cutoff(kFastLimit), EpsilonMode::zero());
  const auto grid = UniformGrid::covering(0.0, 40.0, 0.01);
  const auto one = engine.terms().scan(grid, 1);
  bool identical = true;
  for (unsigned t : {2u, 8u}) identical = identical && engine.terms().scan(grid, t) == one;

  const auto naive = naive_sieve(100000);
  bool sieve_ok = true;
  for (std::size_t seg : {std::size_t{61}, std::size_t{4096}, kDefaultSegmentSize}) {
    sieve_ok = sieve_ok && sieve_primes(100000, seg) == naive;
  }
  const auto pi6 = sieve_primes(1000000).size();
  r.pass = dig <= 1e-12 && identical && sieve_ok && pi6 == 78498;
  r.measured = "digamma " + fmt(dig, 3) + ", scans " + (identical ? "identical" : "differ") +
               " across 1/2/8 threads, sieve " + (sieve_ok ? "matches" : "differs from") + " oracle to 1e5, pi(1e6) " +
               std::to_string(pi6);
  r.threshold = "digamma <= 1e-12, bit-identical scans, exact sieve agreement, pi(1e6) = 78498";
}

struct Criterion {
  const char* name;
  void (*run)(const AcceptanceOptions&, CriterionResult&);
  double budget_seconds;  // 0 = no runtime budget
};

const Criterion kCriteria[kCriterionCount] = {
    {"zero detection", zero_detection, 120.0},
    {"high-ordinate detection", high_ordinate, 0.0},
    {"dirichlet detection", dirichlet_detection, 0.0},
    {"quadratic decomposition", quadratic_decomposition, 0.0},
    {"landau sum", landau, 0.0},
    {"origin identity", origin, 0.0},
    {"kernel constants", kernel_constants, 0.0},
    {"character algebra", character_algebra, 0.0},
    {"compensation identity", compensation, 0.0},
    {"numerics hygiene", hygiene, 0.0},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("no acceptance criterion " + std::to_string(id));
  const auto& c = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.run(options, r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.measured = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.budget_seconds > 0.0) {
    r.threshold += ", runtime < " + fmt(c.budget_seconds) + " s";
    if (r.seconds >= c.budget_seconds) r.pass = false;
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    out.push_back(run_criterion(id, options));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << ": " << r.measured << " | threshold: "
    << r.threshold << " | " << fmt(r.seconds, 3) << " s";
  return s.str();
}

}  // namespace lspec::tools
