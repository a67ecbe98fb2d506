#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lspec/char_group.hpp"
#include "lspec/error.hpp"
#include "lspec/indicator.hpp"
#include "lspec/specfun.hpp"

using namespace lspec;
using cd = std::complex<double>;

namespace {

constexpr double kGamma1 = 14.134725141734693790;
constexpr double kGammaChi5 = 6.18357819545085391;

const Cutoff kMillion(1000000);

DirichletCharacter chi5_i() {
  const auto t = character_group(5);
  const auto label = find_character(t, 2, cd(0, 1));
  REQUIRE(label.has_value());
  return t[*label];
}

}  // namespace

TEST_CASE("zeta indicator dips at the first zero") {
  const double x = kMillion.x();
  const auto at_zero = zeta_indicator(kGamma1, kMillion, EpsilonMode::zero());
  CHECK(at_zero.total <= -0.5 * x);
  CHECK(at_zero.predicted_depth == doctest::Approx(x));
  const auto off = zeta_indicator(8.0, kMillion, EpsilonMode::zero());
  CHECK(std::abs(off.total) <= 0.3 * x);
}

TEST_CASE("dirichlet indicator dips at the first zero of the mod 5 character") {
  const auto chi = chi5_i();
  const double x = kMillion.x();
  CHECK(dirichlet_indicator(kGammaChi5, kMillion, EpsilonMode::zero(), chi).total <= -0.5 * x);
  CHECK(std::abs(dirichlet_indicator(10.0, kMillion, EpsilonMode::zero(), chi).total) <= 0.3 * x);
}

TEST_CASE("trivial character equals zeta without its main term") {
  const auto chi = character_group(1)[0];
  for (double y : {0.0, 3.3, kGamma1, -40.0}) {
    const auto z = zeta_indicator(y, Cutoff(50000), EpsilonMode::zero());
    const auto d = dirichlet_indicator(y, Cutoff(50000), EpsilonMode::zero(), chi);
    CHECK(d.prime_sum_re == z.prime_sum_re);
    CHECK(d.smooth_term == z.smooth_term);
    CHECK(d.main_term_re == 0.0);
    CHECK(d.total == z.prime_sum_re - z.smooth_term);
    CHECK(d.total == doctest::Approx(z.total + z.main_term_re).epsilon(1e-12));
  }
}

TEST_CASE("hand check at limit 10") {
  const double y = 1.7;
  double re = 0.0;
  const std::pair<int, int> pp[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}};
  for (auto [p, n] : pp) {
    const double lp = std::log(double(p));
    re += lp * std::exp(-0.5 * n * lp) * std::cos(y * n * lp);
  }
  const double x = std::log(10.0);
  const cd z(0.5, -y);
  const double main = (std::exp(x * z) / z).real();
  const double smooth = 0.5 * digamma(cd(0.25, -y / 2)).real() - 0.5 * std::log(std::numbers::pi);
  const auto s = zeta_indicator(y, Cutoff(10), EpsilonMode::zero());
  CHECK(s.prime_sum_re == doctest::Approx(re).epsilon(1e-14));
  CHECK(s.main_term_re == doctest::Approx(main).epsilon(1e-14));
  CHECK(s.smooth_term == doctest::Approx(smooth).epsilon(1e-14));
}

TEST_CASE("conjugate symmetry of the zeta indicator") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  const IndicatorEngine engine(ZetaTarget{}, Cutoff(100000), EpsilonMode::zero());
  for (int i = 0; i < 20; ++i) {
    const double y = u(rng);
    CHECK(std::abs(engine.sample(y).total - engine.sample(-y).total) < 1e-9);
  }
}

TEST_CASE("breakdown recombines exactly") {
  const IndicatorEngine engine(ZetaTarget{}, Cutoff(100000), EpsilonMode::paper());
  for (const auto& s : engine.scan(UniformGrid::covering(0, 30, 0.37))) CHECK(s.total == s.recombined());
  const IndicatorEngine chi(chi5_i(), Cutoff(100000), EpsilonMode::zero());
  for (double y : {0.0, 1.0, kGammaChi5}) {
    const auto s = chi.sample(y);
    CHECK(s.total == s.recombined());
  }
}

TEST_CASE("damping reduces the spike") {
  const auto zero = zeta_indicator(kGamma1, kMillion, EpsilonMode::zero());
  const auto paper = zeta_indicator(kGamma1, kMillion, EpsilonMode::paper());
  CHECK(std::abs(paper.total) <= std::abs(zero.total));
  CHECK(paper.predicted_depth == doctest::Approx(kMillion.x() / (3 * std::log(kMillion.x()))));
  CHECK(paper.predicted_depth < zero.predicted_depth);
}

TEST_CASE("scan is bit-identical across thread counts") {
  const IndicatorEngine engine(ZetaTarget{}, Cutoff(100000), EpsilonMode::zero());
  const auto grid = UniformGrid::covering(-2.0, 40.0, 0.01);
  REQUIRE(grid.count == 4201);
  const auto one = engine.terms().scan(grid, 1);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = engine.terms().scan(grid, t);
    REQUIRE(many.size() == one.size());
    for (std::size_t k = 0; k < one.size(); ++k) REQUIRE(many[k] == one[k]);
  }
}

TEST_CASE("scan agrees with pointwise evaluation") {
  const IndicatorEngine engine(ZetaTarget{}, Cutoff(100000), EpsilonMode::zero());
  const auto grid = UniformGrid::covering(100.0, 120.0, 0.01);
  const auto sums = engine.terms().scan(grid, 1);
  const double bound = phase_drift_bound(engine.terms(), grid);
  double amp = 0.0;
  for (auto c : engine.terms().coefs()) amp += std::abs(c);
  for (std::size_t k = 0; k < grid.count; k += 37) {
    const auto direct = engine.terms().evaluate(grid.at(k));
    REQUIRE(std::abs(sums[k] - direct) <= bound * amp);
    if (k % kRefreshInterval == 0) REQUIRE(sums[k] == direct);
  }
}

TEST_CASE("single-point scan equals pointwise value") {
  ScanRequest req;
  req.cutoff = Cutoff(30000);
  req.y_min = req.y_max = 21.022;
  const auto out = scan(req);
  REQUIRE(out.size() == 1);
  const auto direct = zeta_indicator(21.022, Cutoff(30000), EpsilonMode::zero());
  CHECK(out[0].total == direct.total);
  CHECK(out[0].prime_sum_re == direct.prime_sum_re);
}

TEST_CASE("scan request validation") {
  ScanRequest req;
  req.cutoff = Cutoff(1000);
  req.y_min = 0;
  req.y_max = 10;
  req.y_step = 0.0;
  CHECK_THROWS_AS(scan(req), InvalidArgument);
  req.y_step = 1e-6;
  req.max_points = 1000;
  CHECK_THROWS_AS(scan(req), ResourceError);
  req.y_step = 0.5;
  req.y_max = -1;
  CHECK_THROWS_AS(scan(req), InvalidArgument);
  CHECK(UniformGrid::covering(0, 54, 0.01).count == 5401);
  CHECK(UniformGrid::covering(-2, 54, 0.01).count == 5601);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(zeta_indicator(1.0, Cutoff(2), EpsilonMode::zero()), DomainError);
  const auto t = character_group(8);
  for (const auto& chi : t.characters()) {
    if (!chi.primitive()) CHECK_THROWS_AS(IndicatorEngine(chi, Cutoff(100), EpsilonMode::zero()), InvalidArgument);
  }
  CHECK_THROWS_AS(IndicatorEngine(CharacterTarget{4, 0}, Cutoff(100), EpsilonMode::zero()), InvalidArgument);
  CHECK_THROWS_AS(IndicatorEngine(CharacterTarget{4, 2}, Cutoff(100), EpsilonMode::zero()), InvalidArgument);
  CHECK_NOTHROW(IndicatorEngine(CharacterTarget{4, 1}, Cutoff(100), EpsilonMode::zero()));
}

TEST_CASE("parsing of modes and targets") {
  CHECK(EpsilonMode::parse("zero") == EpsilonMode::zero());
  CHECK(EpsilonMode::parse("paper") == EpsilonMode::paper());
  CHECK(EpsilonMode::parse("0.25") == EpsilonMode::fixed(0.25));
  CHECK(EpsilonMode::parse("0.25").to_string() == "0.25");
  CHECK_THROWS_AS(EpsilonMode::parse("-1"), InvalidArgument);
  CHECK_THROWS_AS(EpsilonMode::parse("abc"), InvalidArgument);
  CHECK(EpsilonMode::paper().resolve(kMillion) == doctest::Approx(3 * std::log(kMillion.x()) / kMillion.x()));

  CHECK(std::holds_alternative<ZetaTarget>(parse_target("zeta")));
  const auto t = parse_target("char:5:3");
  REQUIRE(std::holds_alternative<CharacterTarget>(t));
  CHECK(std::get<CharacterTarget>(t).modulus == 5);
  CHECK(std::get<CharacterTarget>(t).label == 3);
  CHECK(to_string(t) == "char:5:3");
  CHECK_THROWS_AS(parse_target("char:5"), InvalidArgument);
  CHECK_THROWS_AS(parse_target("char:0:0"), InvalidArgument);
  CHECK_THROWS_AS(parse_target("eta"), InvalidArgument);
}

TEST_CASE("pointwise trace") {
  const std::vector<std::uint64_t> decades{100, 1000, 10000, 100000, 1000000};

  SUBCASE("each entry equals a fresh evaluation at that cutoff") {
    const auto trace = pointwise_trace(kGamma1, ZetaTarget{}, EpsilonMode::zero(), decades);
    REQUIRE(trace.size() == decades.size());
    for (std::size_t i = 0; i < decades.size(); ++i) {
      const auto direct = zeta_indicator(kGamma1, Cutoff(decades[i]), EpsilonMode::zero());
      CHECK(trace[i].total == direct.total);
      CHECK(trace[i].predicted_depth == direct.predicted_depth);
    }
  }
  SUBCASE("the dip grows roughly linearly in x at a zero") {
    const auto trace = pointwise_trace(kGamma1, ZetaTarget{}, EpsilonMode::zero(), decades);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].total < trace[i - 1].total);
    // least-squares slope of total against x
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const double x = Cutoff(decades[i]).x();
      sx += x;
      sy += trace[i].total;
      sxx += x * x;
      sxy += x * trace[i].total;
    }
    const double n = double(trace.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
  }
  SUBCASE("bounded away from zeros") {
    const auto trace = pointwise_trace(8.0, ZetaTarget{}, EpsilonMode::zero(), decades);
    for (const auto& s : trace) CHECK(std::abs(s.total) <= 0.3 * kMillion.x());
  }
  SUBCASE("character target and paper mode") {
    const auto target = parse_target("char:4:1");
    const auto trace = pointwise_trace(6.0, target, EpsilonMode::paper(), std::vector<std::uint64_t>{50, 5000});
    REQUIRE(trace.size() == 2);
    CHECK(trace[1].total == IndicatorEngine(target, Cutoff(5000), EpsilonMode::paper()).sample(6.0).total);
  }
  SUBCASE("single element") {
    const std::uint64_t one[] = {77777};
    const auto trace = pointwise_trace(3.0, ZetaTarget{}, EpsilonMode::zero(), one);
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].total == zeta_indicator(3.0, Cutoff(77777), EpsilonMode::zero()).total);
  }
  CHECK_THROWS_AS(pointwise_trace(1.0, ZetaTarget{}, EpsilonMode::zero(), std::vector<std::uint64_t>{100, 10}),
                  InvalidArgument);
}

TEST_CASE("origin identity") {
  SUBCASE("hand value at limit 10") {
    const double s = std::log(2.0) * (std::pow(2.0, -0.5) + 0.5 + std::pow(2.0, -1.5)) +
                     std::log(3.0) * (std::pow(3.0, -0.5) + 1.0 / 3) + std::log(5.0) / std::sqrt(5.0) +
                     std::log(7.0) / std::sqrt(7.0);
    const double x = std::log(10.0);
    const double psi_quarter = -0.57721566490153286061 - 3 * std::log(2.0) - std::numbers::pi / 2;
    const double expected = s - 4 * std::sinh(x / 2) - 0.5 * psi_quarter + 0.5 * std::log(std::numbers::pi);
    CHECK(std::abs(origin_identity(Cutoff(10)) - expected) < 1e-12);
  }
  SUBCASE("relation to the indicator at y = 0") {
    for (std::uint64_t limit : {100u, 12345u, 1000000u}) {
      const Cutoff c(limit);
      const auto s = zeta_indicator(0.0, c, EpsilonMode::zero());
      CHECK(origin_identity(c) == doctest::Approx(s.total + 2 * std::exp(-c.x() / 2)).epsilon(1e-9));
    }
  }
  SUBCASE("small compared with x squared") {
    CHECK(std::abs(origin_identity(kMillion)) <= 5 * kMillion.x());
    for (std::uint64_t limit : log_schedule(1000, 1000000, 20)) {
      const Cutoff c(limit);
      CHECK(std::abs(origin_identity(c)) / (c.x() * c.x()) < 0.1);
    }
  }
}

TEST_CASE("log schedule") {
  const auto s = log_schedule(1000, 1000000, 4);
  CHECK(s == std::vector<std::uint64_t>{1000, 10000, 100000, 1000000});
  CHECK(log_schedule(2, 2, 5) == std::vector<std::uint64_t>{2});
  CHECK_THROWS_AS(log_schedule(1, 10, 3), InvalidArgument);
}
