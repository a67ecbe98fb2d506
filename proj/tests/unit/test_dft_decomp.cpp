#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lspec/dft_decomp.hpp"
#include "lspec/error.hpp"
#include "lspec/indicator.hpp"

using namespace lspec;
using cd = std::complex<double>;

namespace {

constexpr double kGamma1 = 14.134725141734693790;
constexpr double kGammaChi4 = 6.0209489046975965;

// Direct character prime sum, independent of the class-sum path.
cd character_sum(const DirichletCharacter& chi, const std::vector<PrimePowerTerm>& terms, double eps, double y) {
  cd acc = 0;
  for (const auto& t : terms) {
    const cd w = chi(t.value);
    if (w == cd(0, 0)) continue;
    const double amp = t.weight * std::exp(-(0.5 + eps) * t.freq);
    acc += w * amp * std::exp(cd(0, -y * t.freq));
  }
  return acc;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("class sums mod 4 at limit 10 by hand") {
  const auto v = class_sums(4, Cutoff(10), EpsilonMode::zero(), 0.0);
  REQUIRE(v.entries.size() == 2);
  const double s1 = std::log(5.0) / std::sqrt(5.0) + std::log(3.0) / 3;
  const double s3 = std::log(3.0) / std::sqrt(3.0) + std::log(7.0) / std::sqrt(7.0);
  CHECK(std::abs(v.entries[0] - s1) < 1e-14);
  CHECK(std::abs(v.entries[1] - s3) < 1e-14);
}

TEST_CASE("modulus 1 gives the full prime sum") {
  const Cutoff c(5000);
  const auto v = class_sums(1, c, EpsilonMode::zero(), 2.5);
  REQUIRE(v.entries.size() == 1);
  const auto z = zeta_indicator(2.5, c, EpsilonMode::zero());
  CHECK(v.entries[0].real() == doctest::Approx(z.prime_sum_re).epsilon(1e-13));
}

TEST_CASE("class sums partition the coprime prime powers") {
  const Cutoff c(20000);
  const auto terms = prime_powers(c);
  for (std::uint64_t q : {3u, 10u, 12u, 30u}) {
    const auto v = class_sums(q, c, EpsilonMode::zero(), 7.25);
    cd total = 0;
    for (auto e : v.entries) total += e;
    cd direct = 0;
    for (const auto& t : terms) {
      if (gcd_u64(t.value, q) != 1) continue;
      direct += t.weight * std::exp(-0.5 * t.freq) * std::exp(cd(0, -7.25 * t.freq));
    }
    CHECK(std::abs(total - direct) < 1e-9);
  }
}

TEST_CASE("round trip through the character table for q <= 60") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uy(-50.0, 50.0);
  for (std::uint64_t q = 1; q <= 60; ++q) {
    const Cutoff c(2000 + rng() % 20000);
    const DecompositionEngine engine(q, c, EpsilonMode::zero());
    const auto v = engine.class_sums(uy(rng));
    const auto back = inverse_transform(engine.table(), forward_transform(engine.table(), v.entries));
    REQUIRE(max_abs_diff(back, v.entries) < 1e-10);
  }
  CHECK_THROWS_AS(forward_transform(character_group(5), std::vector<cd>(3)), InvalidArgument);
}

TEST_CASE("character rows equal direct character sums for primitive characters, q <= 30") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> uy(-60.0, 60.0);
  for (std::uint64_t q = 3; q <= 30; ++q) {
    const Cutoff c(1000 + rng() % 30000);
    const auto terms = prime_powers(c);
    const DecompositionEngine engine(q, c, EpsilonMode::zero());
    for (int trial = 0; trial < 2; ++trial) {
      const double y = uy(rng);
      const auto sys = engine.solve(engine.class_sums(y));
      for (std::size_t j = 0; j < engine.table().phi(); ++j) {
        const auto& chi = engine.table()[j];
        if (!chi.primitive()) continue;
        REQUIRE(std::abs(sys.transformed[j] - character_sum(chi, terms, 0.0, y)) < 1e-9);
        const auto d = dirichlet_indicator(y, c, EpsilonMode::zero(), chi);
        REQUIRE(std::abs(sys.rows[j].total - d.total) < 1e-9);
        REQUIRE(sys.rows[j].compensation == 0.0);
      }
    }
  }
}

TEST_CASE("rows for q = 4") {
  const Cutoff c(100000);
  const double y = 9.3;
  const auto sys = assemble_system(4, c, EpsilonMode::zero(), y);
  const auto z = zeta_indicator(y, c, EpsilonMode::zero());
  const auto d = dirichlet_indicator(y, c, EpsilonMode::zero(), character_group(4)[1]);
  CHECK(std::abs(sys.rows[1].prime_sum.real() - d.prime_sum_re) < 1e-9);
  CHECK(std::abs(sys.rows[1].total - d.total) < 1e-9);
  const auto& principal = sys.rows[0];
  CHECK(principal.parent_is_zeta);
  CHECK(std::abs(principal.prime_sum.real() + principal.series_difference.real() - z.prime_sum_re) < 1e-9);
  const cd n = exponential_noise(y, c, 0.0);
  CHECK(std::abs(principal.total - (z.total + z.main_term_re - n.real())) < 1e-9);
  CHECK(principal.noise == n);
  CHECK(sys.rows[1].noise == cd(0, 0));
}

TEST_CASE("real characters give real rows at y = 0") {
  for (std::uint64_t q : {4u, 8u, 12u, 24u}) {
    const auto sys = assemble_system(q, Cutoff(30000), EpsilonMode::zero(), 0.0);
    for (std::size_t j = 0; j < sys.rows.size(); ++j) {
      if (sys.table[j].is_real()) CHECK(std::abs(sys.transformed[j].imag()) < 1e-12);
    }
  }
}

TEST_CASE("noise formula") {
  const Cutoff c(1000);
  const double x = c.x(), y = 3.0, eps = 0.1;
  const cd z1(0.5 - eps, -y), z2(-0.5 - eps, -y);
  const cd expected = (std::exp(x * z1) - 1.0) / z1 - (std::exp(x * z2) - 1.0) / (-z2);
  CHECK(std::abs(exponential_noise(y, c, eps) - expected) < 1e-12);
}

TEST_CASE("compensation examples") {
  const Cutoff c(100000);
  SUBCASE("principal mod 4") {
    const auto comp = compensation_for(character_group(4)[0], c, EpsilonMode::zero());
    REQUIRE(comp.poisson_terms.size() == 1);
    CHECK(comp.poisson_terms[0].p == 2);
    CHECK(comp.poisson_terms[0].weight == doctest::Approx(std::log(2.0) / 2));
    CHECK(comp.constant == doctest::Approx(std::log(2.0) / 2));
    CHECK(comp.truncation_error_bound > 0);
  }
  SUBCASE("mod 8 induced from mod 4") {
    const auto t = character_group(8);
    for (const auto& chi : t.characters()) {
      if (chi.conductor() != 4) continue;
      const auto comp = compensation_for(chi, c, EpsilonMode::zero());
      CHECK(comp.poisson_terms.empty());
      CHECK(comp.constant == doctest::Approx(std::log(2.0) / 2));
      CHECK(comp.series_difference(3.0) == cd(0, 0));
      CHECK(comp.value(3.0) == doctest::Approx(std::log(2.0) / 2));
    }
  }
  SUBCASE("primitive child") {
    const auto comp = compensation_for(character_group(5)[1], c, EpsilonMode::zero());
    CHECK(comp.empty());
    CHECK(comp.value(1.0) == 0.0);
    CHECK(comp.exact_value(1.0) == 0.0);
  }
}

TEST_CASE("compensation equals parent minus child series, q' <= 60") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uy(-40.0, 40.0);
  for (const auto& eps : {EpsilonMode::zero(), EpsilonMode::fixed(0.05)}) {
    const Cutoff c(20000);
    const double e = eps.resolve(c);
    const auto terms = prime_powers(c);
    for (std::uint64_t q = 2; q <= 60; ++q) {
      const auto t = character_group(q);
      for (const auto& chi : t.characters()) {
        if (chi.primitive()) continue;
        const auto rec = conductor_and_parent(chi);
        const auto comp = compensation_for(chi, c, eps);
        CHECK(comp.constant >= 0.0);
        for (const auto& pt : comp.poisson_terms) REQUIRE(q % pt.p == 0);
        const double y = uy(rng);
        const cd diff = character_sum(rec.parent, terms, e, y) - character_sum(chi, terms, e, y);
        REQUIRE(std::abs(comp.series_difference(y) - diff) < 1e-9);
        // closed form versus truncated series
        REQUIRE(std::abs(comp.value(y) - comp.exact_value(y)) <= comp.truncation_error_bound + 1e-12);
      }
    }
  }
}

TEST_CASE("Poisson kernel bounds and mean") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 101u}) {
    const double lp = std::log(double(p));
    for (double eps : {0.0, 0.01, 0.3}) {
      const double r = std::exp(-(0.5 + eps) * lp);
      const int n = 4096;
      const double period = 2 * std::numbers::pi / lp;
      double mean = 0;
      for (int i = 0; i < n; ++i) {
        const double y = period * i / n;
        const cd w = r * std::exp(cd(0, -y * lp));
        const double k = ((1.0 + w) / (1.0 - w)).real();
        REQUIRE(std::abs(k) <= (1 + r) / (1 - r) + 1e-12);
        mean += k / n;
      }
      CHECK(std::abs(mean - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("parity dispatch for q <= 60") {
  for (std::uint64_t q = 1; q <= 60; ++q) {
    const double y = 0.7 * double(q);
    const auto sys = assemble_system(q, Cutoff(200), EpsilonMode::zero(), y);
    REQUIRE(sys.rows.size() == sys.table.phi());
    for (std::size_t j = 0; j < sys.rows.size(); ++j) {
      const int a = sys.table[j].parity();
      REQUIRE(sys.rows[j].parity == a);
      REQUIRE(sys.rhs.parity[j] == a);
      const double g = a == 0 ? sys.rhs.g_even : sys.rhs.g_odd;
      REQUIRE(sys.rows[j].smooth == doctest::Approx(g + sys.rhs.constant).epsilon(1e-13));
    }
  }
}

TEST_CASE("class indicator is the inverse transform of the rows") {
  const Cutoff c(30000);
  for (std::uint64_t q : {4u, 5u, 7u, 12u, 15u}) {
    const DecompositionEngine engine(q, c, EpsilonMode::zero());
    const double y = 11.1;
    const auto sums = engine.class_sums(y);
    const auto sys = engine.solve(sums);
    for (std::size_t k = 0; k < engine.table().phi(); ++k) {
      const auto a = engine.table().residues()[k];
      cd acc = 0;
      for (std::size_t j = 0; j < sys.rows.size(); ++j) acc += std::conj(engine.table().m(j, k)) * sys.rows[j].complex_total();
      const auto s = engine.class_indicator(a, sums);
      CHECK(std::abs(s.total - acc.real() / double(engine.table().phi())) < 1e-9);
      CHECK(s.total == s.recombined());
      const auto off = engine.class_indicator(a, sums, false);
      CHECK(off.compensation == 0.0);
    }
  }
  CHECK_THROWS_AS(invert_to_class(4, 2, c, EpsilonMode::zero(), 1.0), InvalidArgument);
  CHECK_THROWS_AS(invert_to_class(12, 9, c, EpsilonMode::zero(), 1.0), InvalidArgument);
}

TEST_CASE("residue classes mod 4 at desk scale") {
  const Cutoff c(1000000);
  const double half = c.x() / 2;
  const DecompositionEngine engine(4, c, EpsilonMode::zero());
  auto total = [&](std::uint64_t a, double y) { return engine.class_indicator(a, engine.class_sums(y)).total; };
  CHECK(engine.class_indicator(1, engine.class_sums(0.0)).predicted_depth == doctest::Approx(half));
  CHECK(total(1, kGamma1) == doctest::Approx(-half).epsilon(0.35));
  CHECK(total(1, kGammaChi4) == doctest::Approx(-half).epsilon(0.35));
  CHECK(total(3, kGamma1) == doctest::Approx(-half).epsilon(0.35));
  CHECK(total(3, kGammaChi4) == doctest::Approx(half).epsilon(0.35));
}

TEST_CASE("class mod 3 away from zeros stays small") {
  const Cutoff c(1000000);
  CHECK(std::abs(invert_to_class(3, 1, c, EpsilonMode::zero(), 4.0).total) <= 0.3 * c.x());
}

TEST_CASE("quadratic split") {
  SUBCASE("limit 10 by hand") {
    const auto chi = character_group(4)[1];
    const auto qs = quadratic_split(chi, Cutoff(10), EpsilonMode::zero(), 0.0);
    CHECK(std::abs(qs.s_plus - (std::log(5.0) / std::sqrt(5.0) + std::log(3.0) / 3)) < 1e-14);
    CHECK(std::abs(qs.s_minus - (std::log(3.0) / std::sqrt(3.0) + std::log(7.0) / std::sqrt(7.0))) < 1e-14);
  }
  SUBCASE("mod 4 sums") {
    const Cutoff c(50000);
    const auto chi = character_group(4)[1];
    const double y = 21.0;
    const auto qs = quadratic_split(chi, c, EpsilonMode::zero(), y);
    const auto sums = class_sums(4, c, EpsilonMode::zero(), y);
    CHECK(std::abs(qs.s_plus + qs.s_minus - (sums.entries[0] + sums.entries[1])) < 1e-9);
    CHECK(std::abs(qs.s_plus - qs.s_minus - character_sum(chi, prime_powers(c), 0.0, y)) < 1e-9);
  }
  SUBCASE("mod 5 reconstruction") {
    const Cutoff c(50000);
    const auto t = character_group(5);
    const auto label = find_character(t, 2, cd(-1, 0));
    REQUIRE(label.has_value());
    const auto& chi = t[*label];
    const double y = 13.0;
    const auto qs = quadratic_split(chi, c, EpsilonMode::zero(), y);
    CHECK(std::abs(qs.chi_row.total - dirichlet_indicator(y, c, EpsilonMode::zero(), chi).total) < 1e-9);
    const auto z = zeta_indicator(y, c, EpsilonMode::zero());
    CHECK(std::abs(qs.zeta_row.prime_sum.real() + qs.zeta_row.series_difference.real() - z.prime_sum_re) < 1e-9);
  }
  CHECK_THROWS_AS(quadratic_split(character_group(5)[1], Cutoff(100), EpsilonMode::zero(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(quadratic_split(character_group(4)[0], Cutoff(100), EpsilonMode::zero(), 0.0), InvalidArgument);
}

TEST_CASE("mixed subsystem") {
  const Cutoff c(50000);
  const double y = 17.5;
  SUBCASE("trivial first factor degenerates") {
    const auto mixed = mixed_subsystem(character_group(1)[0], 7, c, EpsilonMode::zero(), y);
    const auto plain = assemble_system(7, c, EpsilonMode::zero(), y);
    REQUIRE(mixed.rows.size() == plain.rows.size());
    for (std::size_t j = 0; j < plain.rows.size(); ++j) CHECK(mixed.rows[j].total == plain.rows[j].total);
  }
  SUBCASE("odd character mod 4 with modulus 3") {
    const auto chi4 = character_group(4)[1];
    const auto sys = mixed_subsystem(chi4, 3, c, EpsilonMode::zero(), y);
    REQUIRE(sys.rows.size() == 2);
    CHECK(sys.rhs.noise == cd(0, 0));
    CHECK(sys.rhs.constant == doctest::Approx(-0.5 * std::log(std::numbers::pi / 12)));
    // row 0 carries chi4 induced to modulus 12
    CHECK(std::abs(sys.rows[0].total - dirichlet_indicator(y, c, EpsilonMode::zero(), chi4).total) < 1e-9);
    const auto prod = product_character(chi4, character_group(3)[1]);
    REQUIRE(prod.primitive());
    CHECK(std::abs(sys.rows[1].total - dirichlet_indicator(y, c, EpsilonMode::zero(), prod).total) < 1e-9);
  }
  SUBCASE("real rows at y = 0") {
    const auto sys = mixed_subsystem(character_group(4)[1], 3, c, EpsilonMode::zero(), 0.0);
    for (const auto& r : sys.rows) {
      CHECK(std::isfinite(r.total));
      CHECK(std::abs(r.prime_sum.imag()) < 1e-12);
    }
  }
  CHECK_THROWS_AS(mixed_subsystem(character_group(4)[1], 6, c, EpsilonMode::zero(), y), InvalidArgument);
  CHECK_THROWS_AS(mixed_subsystem(character_group(8)[0], 3, c, EpsilonMode::zero(), y), InvalidArgument);
}
