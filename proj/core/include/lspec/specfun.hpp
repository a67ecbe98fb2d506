#pragma once

#include <complex>
#include <cstdint>

namespace lspec {

// psi(s) = Gamma'(s)/Gamma(s) for complex s.
//
// Re s < 0 goes through the reflection formula; otherwise s is shifted upward
// by recurrence until Re s >= 16 and the Stirling-type series with Bernoulli
// numbers through B_16 is summed. Throws DomainError at non-positive integers.
std::complex<double> digamma(std::complex<double> s);
double digamma(double s);

enum class Parity { even, odd, both };

struct SmoothTermSpec {
  Parity parity = Parity::even;
  std::uint64_t modulus = 1;
};

// Archimedean density of zeros:
//   even/odd: (1/2) Re psi((1/2 + a - iy)/2) - (1/2) log(pi/q)
//   both:     (1/4) Re psi((1/2 - iy)/2) + (1/4) Re psi((3/2 - iy)/2) - (1/2) log(pi/q)
double smooth_density(double y, const SmoothTermSpec& spec);

// (1/2) Re psi((1/2 + a - iy)/2) alone; G_e for a = 0, G_o for a = 1.
double half_re_digamma(double y, int parity);

}  // namespace lspec
