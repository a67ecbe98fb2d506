#pragma once

// Order-fixed compensated summation.
//
// Terms are accumulated with Neumaier's error-free transformation inside
// fixed-size chunks; finished chunks are merged pairwise through a binary
// counter. The result is a pure function of the term sequence, so a running
// sum snapshotted after the first k terms equals a fresh sum over those k terms
// bit for bit. Pointwise traces over growing cutoffs rely on that.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace lspec {

template <typename T>
struct NeumaierSum {
  T sum{};
  T comp{};

  void add(T v) noexcept {
    if constexpr (std::is_floating_point_v<T>) {
      const T s = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - s) + v : (v - s) + sum;
      sum = s;
    } else {
      using R = typename T::value_type;
      NeumaierSum<R> re{sum.real(), comp.real()};
      NeumaierSum<R> im{sum.imag(), comp.imag()};
      re.add(v.real());
      im.add(v.imag());
      sum = T(re.sum, im.sum);
      comp = T(re.comp, im.comp);
    }
  }

  T value() const noexcept { return sum + comp; }
};

template <typename T, std::size_t ChunkSize = 1024>
class ReproducibleSum {
 public:
  void add(T v) noexcept {
    chunk_.add(v);
    if (++in_chunk_ == ChunkSize) flush();
  }

  // Sum of everything added so far. Does not disturb the accumulator.
  T value() const noexcept {
    T acc = chunk_.value();
    // Fold levels from the most recent (lowest) upwards.
    for (std::size_t level = 0; level < kLevels; ++level) {
      if (occupied_ & (std::size_t{1} << level)) acc = levels_[level] + acc;
    }
    return acc;
  }

  std::size_t count() const noexcept { return flushed_ * ChunkSize + in_chunk_; }

 private:
  static constexpr std::size_t kLevels = 48;

  void flush() noexcept {
    T carry = chunk_.value();
    chunk_ = {};
    in_chunk_ = 0;
    ++flushed_;
    std::size_t level = 0;
    while (occupied_ & (std::size_t{1} << level)) {
      carry = levels_[level] + carry;
      occupied_ &= ~(std::size_t{1} << level);
      ++level;
    }
    levels_[level] = carry;
    occupied_ |= std::size_t{1} << level;
  }

  NeumaierSum<T> chunk_{};
  std::size_t in_chunk_ = 0;
  std::size_t flushed_ = 0;
  std::size_t occupied_ = 0;
  std::array<T, kLevels> levels_{};
};

}  // namespace lspec
