#pragma once

// Nonuniform oscillatory sums  F(y) = sum_m c_m exp(-i y w_m)
// over prime-power frequencies w_m = n log p.
//
// Direct evaluation computes every phase with sincos. Grid scans split the
// grid into blocks of kRefreshInterval points: each block starts from directly
// computed phases and advances them by the per-term rotation exp(-i dy w_m).
// The accumulated phase drift within a block is bounded by about
// kRefreshInterval * eps_machine * |w_max * y| in absolute terms.
//
// Every output value depends only on the grid index, never on which thread
// produced it, so scans are bit-identical across thread counts.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lspec/prime_stream.hpp"

namespace lspec {

inline constexpr std::size_t kRefreshInterval = 512;
inline constexpr std::size_t kDefaultMaxGridPoints = 100'000'000;

struct UniformGrid {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 1;

  double at(std::size_t k) const noexcept { return start + static_cast<double>(k) * step; }

  // Points start + k*step for k with start + k*step <= stop (to a 1e-9 relative
  // step slack). Throws InvalidArgument for step <= 0 or stop < start and
  // ResourceError when the count exceeds max_points.
  static UniformGrid covering(double start, double stop, double step,
                              std::size_t max_points = kDefaultMaxGridPoints);
};

class TermTable {
 public:
  TermTable() = default;

  void reserve(std::size_t n);
  void push(double freq, std::complex<double> coef);

  std::size_t size() const noexcept { return freq_.size(); }
  std::span<const double> freqs() const noexcept { return freq_; }
  std::span<const std::complex<double>> coefs() const noexcept { return coef_; }
  double max_freq() const noexcept { return max_freq_; }

  // Terms [0, prefix) only; prefix defaults to all.
  std::complex<double> evaluate(double y) const noexcept { return evaluate_prefix(y, size()); }
  std::complex<double> evaluate_prefix(double y, std::size_t prefix) const noexcept;

  // Values at every grid point.
  std::vector<std::complex<double>> scan(const UniformGrid& grid, unsigned threads = 0) const;

 private:
  std::vector<double> freq_;
  std::vector<std::complex<double>> coef_;
  double max_freq_ = 0.0;
};

// Coefficient for one prime-power term: log p * share * p^{-n (1/2 + eps)} times
// an optional character value.
double damped_amplitude(const PrimePowerTerm& t, double eps) noexcept;

// Builds the table from prime powers. The optional twist multiplies each
// coefficient (character value); terms with a zero twist are dropped.
TermTable make_term_table(std::span<const PrimePowerTerm> terms, double eps,
                          const std::function<std::complex<double>(const PrimePowerTerm&)>& twist = {});

// Upper bound on |phase error| accumulated within one refresh block.
double phase_drift_bound(const TermTable& table, const UniformGrid& grid) noexcept;

// Resolves a thread request: 0 means hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

}  // namespace lspec
