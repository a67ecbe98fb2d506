#include "lspec/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lspec/error.hpp"

namespace lspec {

namespace {

// B_{2k} / (2k) for k = 1..8.
constexpr std::array<double, 8> kBernoulliOver2k = {
    1.0 / 6.0 / 2.0,     -1.0 / 30.0 / 4.0,   1.0 / 42.0 / 6.0,      -1.0 / 30.0 / 8.0,
    5.0 / 66.0 / 10.0,   -691.0 / 2730.0 / 12.0, 7.0 / 6.0 / 14.0,   -3617.0 / 510.0 / 16.0,
};

constexpr double kShiftThreshold = 16.0;

std::complex<double> asymptotic(std::complex<double> s) {
  const auto inv = 1.0 / s;
  const auto inv2 = inv * inv;
  // Horner in 1/s^2.
  std::complex<double> tail{0.0, 0.0};
  for (std::size_t k = kBernoulliOver2k.size(); k-- > 0;) tail = (tail + kBernoulliOver2k[k]) * inv2;
  return std::log(s) - 0.5 * inv - tail;
}

std::complex<double> pi_cot_pi(std::complex<double> s) {
  using std::numbers::pi;
  // For large |Im s| tan saturates at +-i, which std::tan handles.
  return pi / std::tan(pi * s);
}

}  // namespace

std::complex<double> digamma(std::complex<double> s) {
  if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real())) {
    throw DomainError("digamma pole at non-positive integer");
  }
  if (s.real() < 0.0) {
    return digamma(1.0 - s) - pi_cot_pi(s);
  }
  std::complex<double> shift{0.0, 0.0};
  while (s.real() < kShiftThreshold) {
    shift += 1.0 / s;
    s += 1.0;
  }
  return asymptotic(s) - shift;
}

double digamma(double s) { return digamma(std::complex<double>(s, 0.0)).real(); }

double half_re_digamma(double y, int parity) {
  const std::complex<double> arg((0.5 + parity) / 2.0, -y / 2.0);
  return 0.5 * digamma(arg).real();
}

double smooth_density(double y, const SmoothTermSpec& spec) {
  const double constant = 0.5 * std::log(std::numbers::pi / static_cast<double>(spec.modulus));
  switch (spec.parity) {
    case Parity::even: return half_re_digamma(y, 0) - constant;
    case Parity::odd: return half_re_digamma(y, 1) - constant;
    case Parity::both:
      return 0.5 * half_re_digamma(y, 0) + 0.5 * half_re_digamma(y, 1) - constant;
  }
  return 0.0;
}

}  // namespace lspec
