#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lspec/error.hpp"
#include "lspec/specfun.hpp"

using namespace lspec;
using cd = std::complex<double>;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

struct Reference {
  cd s;
  cd value;
};

// 30-digit values from an arbitrary-precision library.
const Reference kReferences[] = {
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

double rel_err(cd got, cd want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("digamma against high-precision references") {
  for (const auto& r : kReferences) {
    INFO("s = " << r.s.real() << " + " << r.s.imag() << "i");
    CHECK(rel_err(digamma(r.s), r.value) <= 1e-12);
  }
}

TEST_CASE("digamma special values") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-15));
  const double gauss = -kEulerGamma - 3 * std::log(2.0) - std::numbers::pi / 2;
  CHECK(std::abs(digamma(0.25) - gauss) < 1e-12 * std::abs(gauss));
  CHECK(std::abs(digamma(0.5) - (-kEulerGamma - 2 * std::log(2.0))) < 1e-13);
}

TEST_CASE("digamma at poles throws") {
  CHECK_THROWS_AS(digamma(0.0), DomainError);
  CHECK_THROWS_AS(digamma(-3.0), DomainError);
  CHECK_THROWS_AS(digamma(cd(-7.0, 0.0)), DomainError);
  CHECK_NOTHROW(digamma(cd(-7.0, 1e-3)));
}

TEST_CASE("downward recurrence from s+20 agrees") {
  const cd s(0.5, 10.0);
  cd v = digamma(s + 20.0);
  for (int k = 19; k >= 0; --k) v -= 1.0 / (s + double(k));
  CHECK(std::abs(v - digamma(s)) < 1e-12);
}

TEST_CASE("recurrence property") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-30.0, 30.0), im(-1e4, 1e4);
  for (int i = 0; i < 2000; ++i) {
    const cd s(re(rng), i % 4 == 0 ? re(rng) : im(rng));
    if (std::abs(s.imag()) < 1e-3) continue;
    const cd lhs = digamma(s + 1.0);
    const cd rhs = digamma(s) + 1.0 / s;
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("reflection property") {
  for (double a = -3.9; a < 4.0; a += 0.173) {
    for (double b : {0.0, 0.37, -1.2, 2.5}) {
      const cd s(a, b);
      if (b == 0.0 && std::abs(a - std::round(a)) < 1e-6) continue;
      const cd lhs = digamma(1.0 - s) - digamma(s);
      const cd rhs = std::numbers::pi / std::tan(std::numbers::pi * s);
      REQUIRE(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("real part is even in y") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e5, 1e5);
  for (int i = 0; i < 500; ++i) {
    const double y = u(rng);
    for (int a : {0, 1}) {
      CHECK(half_re_digamma(y, a) == doctest::Approx(half_re_digamma(-y, a)).epsilon(1e-14));
    }
  }
}

TEST_CASE("smooth density") {
  const double v = smooth_density(0.0, {Parity::even, 1});
  CHECK(std::abs(v - (-2.6860917096128327911)) < 1e-12);
  CHECK(v == doctest::Approx(0.5 * digamma(0.25) - 0.5 * std::log(std::numbers::pi)));
  CHECK(smooth_density(0.0, {Parity::even, 5}) - v == doctest::Approx(0.5 * std::log(5.0)).epsilon(1e-14));

  const double y = 1e6;
  for (std::uint64_t q : {1u, 7u}) {
    const double asym = 0.5 * std::log(y / 2) - 0.5 * std::log(std::numbers::pi / q);
    CHECK(std::abs(smooth_density(y, {Parity::even, q}) - asym) < 1e-6);
    CHECK(std::abs(smooth_density(y, {Parity::odd, q}) - asym) < 1e-6);
  }

  const double yy = 3.7;
  const double both = smooth_density(yy, {Parity::both, 3});
  const double avg = 0.5 * (smooth_density(yy, {Parity::even, 3}) + smooth_density(yy, {Parity::odd, 3}));
  CHECK(both == doctest::Approx(avg).epsilon(1e-14));
  CHECK(smooth_density(yy, {Parity::odd, 1}) ==
        doctest::Approx(0.5 * digamma(cd(0.75, -yy / 2)).real() - 0.5 * std::log(std::numbers::pi)));
}
