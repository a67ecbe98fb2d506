#pragma once

// Dirichlet characters mod q.
//
// (Z/qZ)^x is decomposed by CRT into cyclic factors, each with an explicit
// generator: the smallest primitive root for an odd prime power p^e, -1 for
// 4, and the pair {-1, 5} for 2^e with e >= 3. A character is an exponent tuple
// (t_1, ..., t_r) with chi(g_i) = exp(2 pi i t_i / ord_i). Values are kept as
// exact angle numerators over the common denominator phi(q) and only turned
// into complex numbers on demand.
//
// Labeling: characters are ordered lexicographically by exponent tuple, first
// generator most significant, so label 0 is the principal character.
// Generators are ordered by ascending prime; for 2^e (e >= 3) the -1 factor
// precedes the 5 factor. Residues are ascending, so residue index 0 is 1.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace lspec {

// Cyclic factor of (Z/qZ)^x.
struct CyclicFactor {
  std::uint64_t prime = 0;     // p of the prime-power component it belongs to
  int prime_exponent = 0;      // e with p^e || q
  std::uint64_t generator = 0; // lifted to mod q (== 1 mod the other components)
  std::uint64_t local_generator = 0;  // generator mod p^e
  std::uint64_t order = 0;
};

// Shared discrete-log tables for one modulus; immutable after construction.
class GroupStructure {
 public:
  explicit GroupStructure(std::uint64_t q);

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t phi() const noexcept { return phi_; }
  const std::vector<CyclicFactor>& factors() const noexcept { return factors_; }

  // Discrete log of m w.r.t. a factor's generator; meaningful only when coprime(m).
  bool coprime(std::uint64_t m) const noexcept { return coprime_[m % q_]; }
  std::uint64_t log(std::size_t factor, std::uint64_t m) const noexcept {
    return logs_[factor][m % q_];
  }

 private:
  std::uint64_t q_;
  std::uint64_t phi_;
  std::vector<CyclicFactor> factors_;
  std::vector<bool> coprime_;
  std::vector<std::vector<std::uint32_t>> logs_;  // [factor][residue]
};

// Label of an exponent tuple in the lexicographic order described above.
std::size_t label_of(const GroupStructure& group, const std::vector<std::uint64_t>& exponents);

// Inverse of label_of.
std::vector<std::uint64_t> exponents_of(const GroupStructure& group, std::size_t label);

class DirichletCharacter {
 public:
  // Label is derived from the exponent tuple (mixed radix, first factor most
  // significant). Throws InvalidArgument if a tuple entry is out of range.
  DirichletCharacter(std::shared_ptr<const GroupStructure> group, std::vector<std::uint64_t> exponents);

  std::uint64_t modulus() const noexcept { return group_->modulus(); }
  std::size_t label() const noexcept { return label_; }
  const std::vector<std::uint64_t>& exponents() const noexcept { return exponents_; }
  const GroupStructure& group() const noexcept { return *group_; }
  std::shared_ptr<const GroupStructure> group_ptr() const noexcept { return group_; }

  int parity() const noexcept { return parity_; }
  std::uint64_t conductor() const noexcept { return conductor_; }
  bool primitive() const noexcept { return conductor_ == modulus(); }
  bool principal() const noexcept;
  // Order of chi in the character group.
  std::uint64_t order() const noexcept { return order_; }
  bool is_real() const noexcept { return order_ <= 2; }

  // chi(m) = exp(2 pi i angle / phi(q)); nullopt when gcd(m, q) > 1.
  std::optional<std::uint64_t> angle(std::uint64_t m) const noexcept;
  std::complex<double> operator()(std::uint64_t m) const noexcept;
  std::complex<double> operator()(std::int64_t m) const noexcept;

 private:
  std::shared_ptr<const GroupStructure> group_;
  std::vector<std::uint64_t> exponents_;
  std::size_t label_;
  int parity_ = 0;
  std::uint64_t conductor_ = 1;
  std::uint64_t order_ = 1;
};

// exp(2 pi i num / den), exact at multiples of a quarter turn.
std::complex<double> root_of_unity(std::uint64_t num, std::uint64_t den) noexcept;

inline std::complex<double> evaluate(const DirichletCharacter& chi, std::int64_t m) noexcept {
  return chi(m);
}

class CharacterTable {
 public:
  std::uint64_t modulus() const noexcept { return group_->modulus(); }
  std::uint64_t phi() const noexcept { return group_->phi(); }
  const GroupStructure& group() const noexcept { return *group_; }
  const std::vector<DirichletCharacter>& characters() const noexcept { return characters_; }
  const DirichletCharacter& operator[](std::size_t label) const { return characters_.at(label); }
  const std::vector<std::uint64_t>& residues() const noexcept { return residues_; }

  // Index of residue a (mod q) in residues(), or nullopt if not coprime.
  std::optional<std::size_t> residue_index(std::uint64_t a) const noexcept;

  // Label of the character with the given exponent tuple.
  std::size_t label_of(const std::vector<std::uint64_t>& exponents) const;
  std::shared_ptr<const GroupStructure> group_ptr() const noexcept { return group_; }

  // M[j][k] = chi_j(a_k), row-major phi x phi.
  const std::vector<std::complex<double>>& matrix() const noexcept { return matrix_; }
  std::complex<double> m(std::size_t j, std::size_t k) const noexcept { return matrix_[j * phi() + k]; }

  // Exact angle numerators of M over phi(q).
  std::uint64_t angle(std::size_t j, std::size_t k) const noexcept { return angles_[j * phi() + k]; }

  friend CharacterTable character_group(std::uint64_t q);

 private:
  std::shared_ptr<const GroupStructure> group_;
  std::vector<DirichletCharacter> characters_;
  std::vector<std::uint64_t> residues_;
  std::vector<std::int64_t> residue_slot_;  // residue -> index or -1
  std::vector<std::complex<double>> matrix_;
  std::vector<std::uint64_t> angles_;
};

// Full character group mod q. Throws InvalidArgument for q == 0.
CharacterTable character_group(std::uint64_t q);

// Max-norm of M M^* - phi(q) I.
double orthogonality_defect(const CharacterTable& table);

struct ExtraPrime {
  std::uint64_t p = 0;
  int k = 0;  // p^k || child modulus
  int l = 0;  // p^l || conductor
};

struct InductionRecord {
  DirichletCharacter child;
  DirichletCharacter parent;  // primitive, modulo child.conductor()
  // Primes whose exponent in the child modulus exceeds that in the conductor.
  std::vector<ExtraPrime> extra_primes;
};

InductionRecord conductor_and_parent(const DirichletCharacter& chi);

// Conductor by exhaustive search over divisors. Test oracle only.
std::uint64_t brute_force_conductor(const DirichletCharacter& chi);

// The character mod q1*q2 equal to chi1 * chi2 for coprime moduli. The target
// group may be passed in to share it across calls. Throws InvalidArgument when
// the moduli share a factor or the supplied group has the wrong modulus.
DirichletCharacter product_character(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                     std::shared_ptr<const GroupStructure> product_group = nullptr);

// First character whose value at m equals the given root of unity, by label.
std::optional<std::size_t> find_character(const CharacterTable& table, std::uint64_t m,
                                          std::complex<double> value, double tol = 1e-12);

}  // namespace lspec
