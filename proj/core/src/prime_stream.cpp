#include "lspec/prime_stream.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lspec/error.hpp"
#include "lspec/summation.hpp"

namespace lspec {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

}  // namespace

Cutoff::Cutoff(std::uint64_t limit, bool halve_boundary)
    : limit_(limit), x_(0.0), halve_boundary_(halve_boundary) {
  if (limit < 2) {
    throw DomainError("cutoff limit must be >= 2, got " + std::to_string(limit));
  }
  x_ = std::log(static_cast<double>(limit));
}

Cutoff Cutoff::from_log(double x, bool halve_boundary) {
  if (!(x >= std::log(2.0) * (1 - 1e-12)) || !std::isfinite(x) || x > 43.6) {
    throw DomainError("log cutoff out of range: " + std::to_string(x));
  }
  const double e = std::exp(x);
  auto limit = static_cast<std::uint64_t>(std::floor(e));
  if (static_cast<double>(limit + 1) <= e * (1 + 1e-12)) ++limit;
  return Cutoff(std::max<std::uint64_t>(limit, 2), halve_boundary);
}

ResidueFilter::ResidueFilter(std::uint64_t modulus, std::vector<std::uint64_t> classes)
    : modulus_(modulus), classes_(std::move(classes)) {
  if (modulus_ == 0) throw InvalidArgument("residue filter modulus must be >= 1");
  std::sort(classes_.begin(), classes_.end());
  classes_.erase(std::unique(classes_.begin(), classes_.end()), classes_.end());
  mask_.assign(modulus_, false);
  for (auto a : classes_) {
    if (a >= modulus_) {
      throw InvalidArgument("residue class " + std::to_string(a) + " not in [0, " +
                            std::to_string(modulus_) + ")");
    }
    if (gcd_u64(a, modulus_) != 1) {
      throw InvalidArgument("residue class " + std::to_string(a) + " not coprime to " +
                            std::to_string(modulus_));
    }
    mask_[a] = true;
  }
}

bool ResidueFilter::accepts(std::uint64_t value) const noexcept {
  return classes_.empty() || mask_[value % modulus_];
}

std::vector<std::uint64_t> naive_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit,
                    std::size_t segment_size) {
  if (limit < 2) return;
  if (segment_size == 0) segment_size = kDefaultSegmentSize;
  const auto base = naive_sieve(isqrt(limit));
  std::vector<char> composite(segment_size);
  for (std::uint64_t lo = 2; lo <= limit;) {
    const std::uint64_t hi = std::min<std::uint64_t>(limit, lo + segment_size - 1);
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 0);
    for (auto p : base) {
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
    }
    for (std::uint64_t v = lo; v <= hi; ++v) {
      if (!composite[v - lo]) visit(v);
    }
    if (hi == limit) break;
    lo = hi + 1;
  }
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::size_t segment_size) {
  if (limit < 2) throw DomainError("sieve limit must be >= 2");
  std::vector<std::uint64_t> primes;
  for_each_prime(limit, [&](std::uint64_t p) { primes.push_back(p); }, segment_size);
  return primes;
}

bool checked_pow(std::uint64_t base, int exponent, std::uint64_t& out) noexcept {
  std::uint64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return false;
    r *= base;
  }
  out = r;
  return true;
}

std::vector<PrimePowerTerm> prime_powers(const Cutoff& cutoff, const ResidueFilter& filter) {
  const std::uint64_t limit = cutoff.limit();

  // Higher powers p^n, n >= 2: only primes up to sqrt(limit) contribute.
  std::vector<PrimePowerTerm> higher;
  for (auto p : naive_sieve(isqrt(limit))) {
    const double lp = std::log(static_cast<double>(p));
    std::uint64_t v = p;
    for (int n = 2; v <= limit / p; ++n) {
      v *= p;
      higher.push_back({p, n, v, lp, n * lp, 1.0});
    }
  }
  std::sort(higher.begin(), higher.end(),
            [](const PrimePowerTerm& a, const PrimePowerTerm& b) { return a.value < b.value; });

  std::vector<PrimePowerTerm> out;
  auto it = higher.begin();
  auto emit = [&](const PrimePowerTerm& t) {
    if (filter.accepts(t.value)) out.push_back(t);
  };
  for_each_prime(limit, [&](std::uint64_t p) {
    while (it != higher.end() && it->value < p) emit(*it++);
    const double lp = std::log(static_cast<double>(p));
    emit({p, 1, p, lp, lp, 1.0});
  });
  while (it != higher.end()) emit(*it++);

  if (cutoff.halve_boundary() && !out.empty() && out.back().value == limit) {
    out.back().share = 0.5;
  }
  return out;
}

double chebyshev_psi(const Cutoff& cutoff) {
  ReproducibleSum<double> sum;
  for (const auto& t : prime_powers(cutoff)) sum.add(t.von_mangoldt());
  return sum.value();
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::vector<PrimeFactor> factorize(std::uint64_t n) {
  std::vector<PrimeFactor> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t prime_power_base(std::uint64_t value) {
  if (value < 2) return 0;
  const auto f = factorize(value);
  return f.size() == 1 ? f.front().p : 0;
}

}  // namespace lspec
