#pragma once

// Zero indicators for zeta and primitive Dirichlet L-functions.
//
// For the zeta target, at ordinate y and cutoff x = log(limit):
//   total = Re sum_{p^n <= limit} log p p^{-n(1/2+eps+iy)}
//         - Re[ e^{x(1/2-eps-iy)} / (1/2-eps-iy) ]
//         - (1/2) Re psi((1/2-iy)/2) + (1/2) log pi
// For a primitive character chi mod q the prime sum is twisted by chi(p^n),
// there is no main term, and the digamma argument and constant become
// (1/2 + a_chi - iy)/2 and (1/2) log(pi/q).
//
// The total dips to about -predicted_depth at a zero ordinate and stays O(1)
// elsewhere.

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lspec/char_group.hpp"
#include "lspec/oscillatory_sum.hpp"
#include "lspec/prime_stream.hpp"

namespace lspec {

class EpsilonMode {
 public:
  enum class Kind { paper, zero, fixed };

  static EpsilonMode paper() { return EpsilonMode(Kind::paper, 0.0); }
  static EpsilonMode zero() { return EpsilonMode(Kind::zero, 0.0); }
  // Throws InvalidArgument for eps < 0.
  static EpsilonMode fixed(double eps);
  // "zero", "paper", or a non-negative number.
  static EpsilonMode parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  // eps = 3 log x / x in paper mode.
  double resolve(const Cutoff& cutoff) const noexcept;
  // Spike depth at a simple zero: x/(3 log x) in paper mode, x in zero mode,
  // (1 - e^{-eps x})/eps for a fixed eps > 0.
  double predicted_depth(const Cutoff& cutoff) const noexcept;
  std::string to_string() const;

  friend bool operator==(const EpsilonMode&, const EpsilonMode&) = default;

 private:
  EpsilonMode(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

struct ZetaTarget {
  friend bool operator==(const ZetaTarget&, const ZetaTarget&) = default;
};
struct CharacterTarget {
  std::uint64_t modulus = 1;
  std::size_t label = 0;
  friend bool operator==(const CharacterTarget&, const CharacterTarget&) = default;
};
using Target = std::variant<ZetaTarget, CharacterTarget>;

// "zeta" or "char:q:label".
Target parse_target(const std::string& text);
std::string to_string(const Target& target);

struct IndicatorSample {
  double y = 0.0;
  double prime_sum_re = 0.0;
  double prime_sum_im = 0.0;
  double main_term_re = 0.0;
  double main_term_im = 0.0;
  double smooth_term = 0.0;
  double total = 0.0;
  double predicted_depth = 0.0;

  // total from the stored components, in the order evaluate() uses.
  double recombined() const noexcept { return prime_sum_re - main_term_re - smooth_term; }
};

// Re/Im of e^{x(1/2-eps-iy)} / (1/2-eps-iy).
std::complex<double> zeta_main_term(double y, double x, double eps) noexcept;

// Precomputed evaluator for one (target, cutoff, eps). Immutable; shareable.
class IndicatorEngine {
 public:
  // Throws InvalidArgument for a non-primitive character (use dft_decomp's
  // compensated rows instead) and DomainError for limit < 3.
  IndicatorEngine(const Target& target, const Cutoff& cutoff, const EpsilonMode& eps);
  // Convenience for an already-built character.
  IndicatorEngine(const DirichletCharacter& chi, const Cutoff& cutoff, const EpsilonMode& eps);

  const Cutoff& cutoff() const noexcept { return cutoff_; }
  double eps() const noexcept { return eps_; }
  double predicted_depth() const noexcept { return depth_; }
  bool is_zeta() const noexcept { return zeta_; }
  int parity() const noexcept { return parity_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const TermTable& terms() const noexcept { return table_; }

  IndicatorSample sample(double y) const;
  std::vector<IndicatorSample> scan(const UniformGrid& grid, unsigned threads = 0) const;

  // Assembles a sample from an already computed prime sum. The main term and
  // predicted depth follow `at` (a prefix cutoff) when given.
  IndicatorSample assemble(double y, std::complex<double> prime_sum) const;
  IndicatorSample assemble(double y, std::complex<double> prime_sum, const Cutoff& at,
                           const EpsilonMode& eps) const;

 private:
  void build(const std::vector<PrimePowerTerm>& terms, const DirichletCharacter* chi);

  Cutoff cutoff_;
  double eps_;
  double depth_;
  bool zeta_ = true;
  int parity_ = 0;
  std::uint64_t modulus_ = 1;
  TermTable table_;
};

IndicatorSample zeta_indicator(double y, const Cutoff& cutoff, const EpsilonMode& eps);
IndicatorSample dirichlet_indicator(double y, const Cutoff& cutoff, const EpsilonMode& eps,
                                    const DirichletCharacter& chi);

struct ScanRequest {
  Cutoff cutoff{1000000};
  EpsilonMode eps = EpsilonMode::zero();
  Target target = ZetaTarget{};
  double y_min = 0.0;
  double y_max = 0.0;
  double y_step = 0.01;
  unsigned threads = 0;
  std::size_t max_points = kDefaultMaxGridPoints;
};

std::vector<IndicatorSample> scan(const ScanRequest& request);

// One sample per cutoff in an ascending schedule, at fixed y. With a
// cutoff-independent eps the prime sum is carried forward term by term; paper
// mode changes every amplitude with the cutoff and so re-evaluates per entry.
// Each sample equals the pointwise evaluation at that cutoff bit for bit.
std::vector<IndicatorSample> pointwise_trace(double y, const Target& target, const EpsilonMode& eps,
                                             std::span<const std::uint64_t> limit_schedule);

// sum_{p^n <= limit} log p / p^{n/2} - 4 sinh(x/2) - (1/2) psi(1/4) + (log pi)/2,
// which the explicit formula equates with -sum over zeros of sin(gamma x)/gamma.
double origin_identity(const Cutoff& cutoff);

// n log-spaced integer cutoffs from lo to hi inclusive, deduplicated.
std::vector<std::uint64_t> log_schedule(std::uint64_t lo, std::uint64_t hi, std::size_t n);

}  // namespace lspec
