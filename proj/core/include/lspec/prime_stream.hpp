#pragma once

// Prime and prime-power enumeration.
//
// Every prime-side sum in the library draws its terms from prime_powers(): the
// pairs (p, n) with p^n <= limit, weighted by the von Mangoldt value log p and
// carrying the frequency n log p at which the term oscillates in y.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lspec {

// Integer cutoff p^n <= limit. The log-domain cutoff x is derived, never stored
// independently, so x == log(limit) always holds.
class Cutoff {
 public:
  // Throws DomainError for limit < 2.
  explicit Cutoff(std::uint64_t limit, bool halve_boundary = false);

  // Largest limit with log(limit) <= x (within a relative 1e-12 slack so that
  // x = log(10^6) maps back to 10^6).
  static Cutoff from_log(double x, bool halve_boundary = false);

  std::uint64_t limit() const noexcept { return limit_; }
  double x() const noexcept { return x_; }

  // When set and limit is itself a prime power, that boundary term counts
  // with weight 1/2 (the halving convention). Off by default.
  bool halve_boundary() const noexcept { return halve_boundary_; }

  friend bool operator==(const Cutoff&, const Cutoff&) = default;

 private:
  std::uint64_t limit_;
  double x_;
  bool halve_boundary_;
};

struct PrimePowerTerm {
  std::uint64_t p = 0;
  int n = 0;
  std::uint64_t value = 0;  // p^n, exact
  double weight = 0.0;      // log p
  double freq = 0.0;        // n log p
  double share = 1.0;       // 1/2 for a halved boundary term, else 1

  double von_mangoldt() const noexcept { return weight * share; }
};

// Residue classes mod q to keep. An empty class list means "no filter".
class ResidueFilter {
 public:
  ResidueFilter() = default;
  // Throws InvalidArgument when q == 0 or a class is >= q or not coprime to q.
  ResidueFilter(std::uint64_t modulus, std::vector<std::uint64_t> classes);

  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& classes() const noexcept { return classes_; }
  bool empty() const noexcept { return classes_.empty(); }
  bool accepts(std::uint64_t value) const noexcept;

 private:
  std::uint64_t modulus_ = 1;
  std::vector<std::uint64_t> classes_;  // sorted, unique
  std::vector<bool> mask_;
};

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

// Streams the primes <= limit in ascending order. Memory is bounded by the
// segment size plus the base primes up to sqrt(limit).
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit,
                    std::size_t segment_size = kDefaultSegmentSize);

// All primes in [2, limit], ascending. Throws DomainError for limit < 2.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        std::size_t segment_size = kDefaultSegmentSize);

// Reference sieve of Eratosthenes over a full byte array. Test oracle only.
std::vector<std::uint64_t> naive_sieve(std::uint64_t limit);

// All prime powers p^n <= cutoff.limit() passing the filter, ascending by value.
std::vector<PrimePowerTerm> prime_powers(const Cutoff& cutoff, const ResidueFilter& filter = {});

// psi(limit) = sum of Lambda(n) for n <= limit.
double chebyshev_psi(const Cutoff& cutoff);

// Exact integer power with overflow detection; returns false on overflow.
bool checked_pow(std::uint64_t base, int exponent, std::uint64_t& out) noexcept;

// If value == p^k for a prime p and k >= 1, returns p; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t value);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;

// Prime factorization by trial division, ascending primes.
struct PrimeFactor {
  std::uint64_t p;
  int k;
};
std::vector<PrimeFactor> factorize(std::uint64_t n);

}  // namespace lspec
