#pragma once

// Character-table decomposition of prime sums over residue classes.
//
// With M[j][k] = chi_j(a_k) and S_k the damped prime-power sum over the class
// a_k mod q, row j of M S is the prime sum twisted by chi_j. Each row is a
// Dirichlet indicator once its character is reduced to the primitive parent:
// a non-primitive row differs from its parent by finitely many geometric
// series in the primes p | q with p not dividing the conductor, plus the
// constant (1/2) log(q / f). The principal row's parent is zeta, which also
// carries the exponential main term ("noise")
//   N = (x^{1/2-eps-iy} - 1)/(1/2-eps-iy) - (x^{-1/2-eps-iy} - 1)/(1/2+eps+iy),
// where x^s means limit^s.
//
// M M^* = phi(q) I, so S = M^* (M S) / phi(q) recovers any single class.
// Complex sums are carried throughout; real parts are taken only when a row
// or class indicator is reported.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lspec/char_group.hpp"
#include "lspec/indicator.hpp"
#include "lspec/oscillatory_sum.hpp"
#include "lspec/prime_stream.hpp"

namespace lspec {

struct ClassSumVector {
  std::uint64_t modulus = 1;
  // Indexed like CharacterTable::residues().
  std::vector<std::complex<double>> entries;
  double eps = 0.0;
  double y = 0.0;
};

// Geometric-series and constant corrections from a non-primitive character
// to its primitive parent (zeta for a principal child).
struct Compensation {
  struct PoissonTerm {
    std::uint64_t p = 0;
    double weight = 0.0;                     // (log p) / 2
    std::complex<double> coefficient{1.0, 0.0};  // parent(p)
    // parent(p) = exp(2 pi i angle / denominator), kept exact for powers.
    std::uint64_t angle = 0;
    std::uint64_t denominator = 1;
  };

  std::vector<PoissonTerm> poisson_terms;
  // sum over p^k || q', p not dividing f, of (k-1)/2 log p, plus
  // sum over p^k || q', p^l || f, l >= 1, of (k-l)/2 log p.
  double constant = 0.0;
  // (1/2) log(q'/f): the constant part of the exact series form.
  double half_log_ratio = 0.0;
  // C log q' / limit^{1/2+eps} with C = 1/(1 - 2^{-1/2}); bounds
  // |value(y) - exact_value(y)|.
  double truncation_error_bound = 0.0;
  double eps = 0.0;
  Cutoff cutoff{2};

  bool empty() const noexcept { return poisson_terms.empty() && constant == 0.0; }

  // Closed form: sum (log p / 2) Re[(1 + u)/(1 - u)] + constant,
  // u = parent(p) p^{-1/2-eps-iy}.
  double value(double y) const noexcept;

  // Parent prime sum minus child prime sum, exactly: the finite geometric
  // series sum_{p^n <= limit} parent(p)^n log p p^{-n(1/2+eps+iy)}.
  std::complex<double> series_difference(double y) const noexcept;

  // Re series_difference(y) + half_log_ratio.
  double exact_value(double y) const noexcept { return series_difference(y).real() + half_log_ratio; }
};

Compensation compensation_for(const DirichletCharacter& child, const Cutoff& cutoff, const EpsilonMode& eps);

// Real part of the indicator a single row of the system stands for.
struct RowIndicator {
  std::size_t label = 0;             // row index in the table mod q
  std::uint64_t row_modulus = 1;     // q (or q1 q2 in the mixed case)
  std::size_t row_character = 0;     // label of the row's character mod row_modulus
  int parity = 0;
  std::uint64_t conductor = 1;
  bool primitive = true;
  bool parent_is_zeta = false;
  std::complex<double> prime_sum;    // (M S)_j
  std::complex<double> series_difference;  // parent minus child prime sums
  double half_log_ratio = 0.0;       // (1/2) log(q/f)
  double compensation = 0.0;         // Re series_difference + half_log_ratio
  std::complex<double> noise;        // N when the parent is zeta, else 0
  double smooth = 0.0;               // smooth_density(y, parity, row modulus)
  double total = 0.0;                // Re prime_sum + compensation - Re noise - smooth

  // Complex counterpart of total, before the real part is taken.
  std::complex<double> complex_total() const noexcept;
};

struct RhsSkeleton {
  std::complex<double> noise;  // only in the principal row, and only without a twist
  double g_even = 0.0;         // (1/2) Re psi((1/2 - iy)/2)
  double g_odd = 0.0;          // (1/2) Re psi((3/2 - iy)/2)
  double constant = 0.0;       // -(1/2) log(pi / q)
  std::vector<int> parity;     // per row
};

struct LinearSystem {
  std::uint64_t twist_modulus = 1;  // q1; 1 for the plain system
  CharacterTable table;             // mod q (= q2 in the mixed case)
  ClassSumVector sums;
  std::vector<std::complex<double>> transformed;  // M S
  RhsSkeleton rhs;
  std::vector<RowIndicator> rows;
  double predicted_depth = 0.0;
};

// One row of output for a residue-class indicator.
struct ClassIndicatorSample {
  double y = 0.0;
  double class_sum_re = 0.0;
  double noise_share = 0.0;   // Re N / phi(q)
  double smooth_even = 0.0;   // c_e(a) smooth_density(y, even, q)
  double smooth_odd = 0.0;    // c_o(a) smooth_density(y, odd, q)
  double compensation = 0.0;  // Re (1/phi) sum_j conj chi_j(a) (series diff + (1/2) log(q/f_j)); 0 when off
  double total = 0.0;         // class_sum_re - noise_share - smooth_even - smooth_odd + compensation
  double predicted_depth = 0.0;  // depth / phi(q)

  double recombined() const noexcept {
    return class_sum_re - noise_share - smooth_even - smooth_odd + compensation;
  }
};

struct QuadraticSplit {
  double y = 0.0;
  std::complex<double> s_plus;
  std::complex<double> s_minus;
  RowIndicator zeta_row;  // principal row, compensated back to zeta
  RowIndicator chi_row;
};

// Precomputed per-class term tables for one (q, cutoff, eps, optional twist).
// Immutable after construction.
class DecompositionEngine {
 public:
  // twist: a primitive character mod q1 with gcd(q1, q) = 1, or nullopt.
  DecompositionEngine(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps,
                      std::optional<DirichletCharacter> twist = std::nullopt);

  const CharacterTable& table() const noexcept { return table_; }
  const Cutoff& cutoff() const noexcept { return cutoff_; }
  double eps() const noexcept { return eps_; }
  std::uint64_t twist_modulus() const noexcept { return twist_ ? twist_->modulus() : 1; }
  std::uint64_t row_modulus() const noexcept { return table_.modulus() * twist_modulus(); }
  const std::vector<DirichletCharacter>& row_characters() const noexcept { return row_chars_; }
  const std::vector<Compensation>& compensations() const noexcept { return comps_; }
  const std::vector<InductionRecord>& inductions() const noexcept { return inductions_; }

  ClassSumVector class_sums(double y) const;
  // grid.count vectors of phi(q) entries.
  std::vector<ClassSumVector> class_sums(const UniformGrid& grid, unsigned threads = 0) const;

  LinearSystem solve(const ClassSumVector& sums) const;
  ClassIndicatorSample class_indicator(std::uint64_t a, const ClassSumVector& sums,
                                       bool exact_compensation = true) const;
  QuadraticSplit quadratic(const DirichletCharacter& chi, const ClassSumVector& sums) const;

 private:
  std::uint64_t q_;
  Cutoff cutoff_;
  double eps_;
  double depth_;
  std::optional<DirichletCharacter> twist_;
  CharacterTable table_;
  std::vector<TermTable> class_tables_;
  std::vector<DirichletCharacter> row_chars_;
  std::vector<InductionRecord> inductions_;
  std::vector<Compensation> comps_;
};

// N at ordinate y.
std::complex<double> exponential_noise(double y, const Cutoff& cutoff, double eps) noexcept;

ClassSumVector class_sums(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps, double y);

LinearSystem assemble_system(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps, double y);

// S = M^* v / phi(q).
std::vector<std::complex<double>> inverse_transform(const CharacterTable& table,
                                                    const std::vector<std::complex<double>>& v);
std::vector<std::complex<double>> forward_transform(const CharacterTable& table,
                                                    const std::vector<std::complex<double>>& s);

// Throws InvalidArgument when gcd(a, q) > 1.
ClassIndicatorSample invert_to_class(std::uint64_t q, std::uint64_t a, const Cutoff& cutoff,
                                     const EpsilonMode& eps, double y, bool exact_compensation = true);

// Throws InvalidArgument unless chi is real, primitive and non-principal.
QuadraticSplit quadratic_split(const DirichletCharacter& chi, const Cutoff& cutoff, const EpsilonMode& eps,
                               double y);

// Rows of the full system mod q1 q2 whose characters contain chi (primitive
// mod q1). Throws InvalidArgument for non-coprime moduli or non-primitive chi.
LinearSystem mixed_subsystem(const DirichletCharacter& chi, std::uint64_t q2, const Cutoff& cutoff,
                             const EpsilonMode& eps, double y);

}  // namespace lspec
