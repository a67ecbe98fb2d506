#include "lspec/oscillatory_sum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "lspec/error.hpp"
#include "lspec/summation.hpp"

namespace lspec {

UniformGrid UniformGrid::covering(double start, double stop, double step, std::size_t max_points) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("grid step must be > 0");
  if (!(stop >= start)) throw InvalidArgument("grid needs y_min <= y_max");
  const double span = (stop - start) / step;
  if (span + 1.0 > static_cast<double>(max_points)) {
    throw ResourceError("grid of " + std::to_string(span + 1.0) + " points exceeds the limit of " +
                        std::to_string(max_points));
  }
  const auto intervals = static_cast<std::size_t>(std::floor(span + 1e-9));
  return {start, step, intervals + 1};
}

void TermTable::reserve(std::size_t n) {
  freq_.reserve(n);
  coef_.reserve(n);
}

void TermTable::push(double freq, std::complex<double> coef) {
  freq_.push_back(freq);
  coef_.push_back(coef);
  max_freq_ = std::max(max_freq_, std::abs(freq));
}

std::complex<double> TermTable::evaluate_prefix(double y, std::size_t prefix) const noexcept {
  ReproducibleSum<std::complex<double>> acc;
  prefix = std::min(prefix, size());
  for (std::size_t m = 0; m < prefix; ++m) {
    const double theta = y * freq_[m];
    acc.add(coef_[m] * std::complex<double>(std::cos(theta), -std::sin(theta)));
  }
  return acc.value();
}

std::vector<std::complex<double>> TermTable::scan(const UniformGrid& grid, unsigned threads) const {
  std::vector<std::complex<double>> out(grid.count);
  const std::size_t blocks = (grid.count + kRefreshInterval - 1) / kRefreshInterval;
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(blocks, 1));

  auto run_block = [&](std::size_t b, std::vector<std::complex<double>>& phase,
                       std::vector<std::complex<double>>& rot) {
    const std::size_t k0 = b * kRefreshInterval;
    const std::size_t k1 = std::min(grid.count, k0 + kRefreshInterval);
    const double y0 = grid.at(k0);
    const std::size_t n = size();
    for (std::size_t m = 0; m < n; ++m) {
      const double theta = y0 * freq_[m];
      phase[m] = std::complex<double>(std::cos(theta), -std::sin(theta));
      const double dtheta = grid.step * freq_[m];
      rot[m] = std::complex<double>(std::cos(dtheta), -std::sin(dtheta));
    }
    for (std::size_t k = k0; k < k1; ++k) {
      ReproducibleSum<std::complex<double>> acc;
      if (k == k0) {
        for (std::size_t m = 0; m < n; ++m) acc.add(coef_[m] * phase[m]);
      } else {
        for (std::size_t m = 0; m < n; ++m) {
          phase[m] *= rot[m];
          acc.add(coef_[m] * phase[m]);
        }
      }
      out[k] = acc.value();
    }
  };

  // Block k0 evaluates its first point from fresh phases, which matches
  // evaluate() bit for bit.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::complex<double>> phase(size()), rot(size());
    for (std::size_t b = next++; b < blocks; b = next++) run_block(b, phase, rot);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return out;
}

double damped_amplitude(const PrimePowerTerm& t, double eps) noexcept {
  return t.weight * t.share * std::exp(-(0.5 + eps) * t.freq);
}

TermTable make_term_table(std::span<const PrimePowerTerm> terms, double eps,
                          const std::function<std::complex<double>(const PrimePowerTerm&)>& twist) {
  TermTable table;
  table.reserve(terms.size());
  for (const auto& t : terms) {
    std::complex<double> c = damped_amplitude(t, eps);
    if (twist) {
      const auto w = twist(t);
      if (w == std::complex<double>(0.0, 0.0)) continue;
      c *= w;
    }
    table.push(t.freq, c);
  }
  return table;
}

double phase_drift_bound(const TermTable& table, const UniformGrid& grid) noexcept {
  const double y_max = std::max(std::abs(grid.start), std::abs(grid.at(grid.count - 1)));
  return static_cast<double>(kRefreshInterval) * std::numeric_limits<double>::epsilon() *
         std::max(1.0, table.max_freq() * y_max);
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace lspec
