#include "lspec/char_group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>
#include <string>

#include "lspec/error.hpp"
#include "lspec/prime_stream.hpp"

namespace lspec {

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a mod m for gcd(a, m) == 1, m >= 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    const auto qt = r / nr;
    t = std::exchange(nt, t - qt * nt);
    r = std::exchange(nr, r - qt * nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// x == a (mod m1), x == b (mod m2), coprime moduli.
std::uint64_t crt(std::uint64_t a, std::uint64_t m1, std::uint64_t b, std::uint64_t m2) {
  const std::uint64_t m = m1 * m2;
  const std::uint64_t diff = (b % m2 + m2 - a % m2) % m2;
  const std::uint64_t t = mulmod(diff, invmod(m1 % m2, m2), m2);
  return (a % m1 + mulmod(m1, t, m)) % m;
}

std::uint64_t smallest_primitive_root(std::uint64_t p, std::uint64_t pe, std::uint64_t phi) {
  const auto phi_factors = factorize(phi);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& f : phi_factors) {
      if (powmod(g, phi / f.p, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p^e == 2
}

int valuation(std::uint64_t n, std::uint64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

GroupStructure::GroupStructure(std::uint64_t q) : q_(q), phi_(1) {
  if (q == 0) throw InvalidArgument("modulus must be >= 1");
  if (q > (std::uint64_t{1} << 32)) throw InvalidArgument("modulus too large for a character table");

  coprime_.assign(q, false);
  for (std::uint64_t m = 0; m < q; ++m) coprime_[m] = gcd_u64(m, q) == 1;

  for (const auto& [p, e] : factorize(q)) {
    const std::uint64_t pe = ipow(p, e);
    const std::uint64_t phi_pe = pe / p * (p - 1);
    phi_ *= phi_pe;
    const std::uint64_t rest = q / pe;

    // Local log tables indexed by residue mod p^e, one per factor of this component.
    std::vector<CyclicFactor> local;
    std::vector<std::vector<std::uint32_t>> local_logs;
    if (p != 2) {
      const auto g = smallest_primitive_root(p, pe, phi_pe);
      local.push_back({p, e, 0, g, phi_pe});
      std::vector<std::uint32_t> lg(pe, 0);
      std::uint64_t v = 1;
      for (std::uint64_t k = 0; k < phi_pe; ++k) {
        lg[v] = static_cast<std::uint32_t>(k);
        v = mulmod(v, g, pe);
      }
      local_logs.push_back(std::move(lg));
    } else if (e == 2) {
      local.push_back({2, 2, 0, 3, 2});
      local_logs.push_back({0, 0, 0, 1});
    } else if (e >= 3) {
      const std::uint64_t half = pe / 4;  // order of 5
      local.push_back({2, e, 0, pe - 1, 2});
      local.push_back({2, e, 0, 5, half});
      std::vector<std::uint32_t> sign(pe, 0), five(pe, 0);
      std::uint64_t v = 1;
      for (std::uint64_t b = 0; b < half; ++b) {
        five[v] = static_cast<std::uint32_t>(b);
        five[pe - v] = static_cast<std::uint32_t>(b);
        sign[pe - v] = 1;
        v = mulmod(v, 5, pe);
      }
      local_logs.push_back(std::move(sign));
      local_logs.push_back(std::move(five));
    }

    for (std::size_t i = 0; i < local.size(); ++i) {
      auto f = local[i];
      f.generator = crt(f.local_generator, pe, 1, rest);
      factors_.push_back(f);
      std::vector<std::uint32_t> lg(q, 0);
      for (std::uint64_t m = 0; m < q; ++m) {
        if (coprime_[m]) lg[m] = local_logs[i][m % pe];
      }
      logs_.push_back(std::move(lg));
    }
  }
}

std::size_t label_of(const GroupStructure& group, const std::vector<std::uint64_t>& exponents) {
  const auto& fs = group.factors();
  if (exponents.size() != fs.size()) throw InvalidArgument("exponent tuple has wrong length");
  std::size_t label = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (exponents[i] >= fs[i].order) throw InvalidArgument("character exponent out of range");
    label = label * fs[i].order + exponents[i];
  }
  return label;
}

std::vector<std::uint64_t> exponents_of(const GroupStructure& group, std::size_t label) {
  const auto& fs = group.factors();
  std::vector<std::uint64_t> t(fs.size(), 0);
  for (std::size_t i = fs.size(); i-- > 0;) {
    t[i] = label % fs[i].order;
    label /= fs[i].order;
  }
  return t;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const GroupStructure> group,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  label_ = label_of(*group_, exponents_);
  const auto& fs = group_->factors();

  const std::uint64_t q = group_->modulus();
  parity_ = angle(q - 1 + (q == 1 ? 1 : 0)).value_or(0) == 0 ? 0 : 1;

  order_ = 1;
  conductor_ = 1;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto d = fs[i].order / std::gcd(exponents_[i], fs[i].order);
    order_ = std::lcm(order_, d);
  }
  // Conductor, one prime-power component at a time.
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& f = fs[i];
    const bool two_factor_group = f.prime == 2 && f.prime_exponent >= 3;
    if (two_factor_group) {
      const auto a = exponents_[i];
      const auto b = exponents_[i + 1];
      const auto ord_b = fs[i + 1].order;
      if (b == 0) {
        conductor_ *= a == 0 ? 1 : 4;
      } else {
        const auto d = ord_b / std::gcd(b, ord_b);
        conductor_ *= ipow(2, 2 + valuation(d, 2));
      }
      ++i;
    } else if (f.prime == 2) {
      conductor_ *= exponents_[i] == 0 ? 1 : 4;
    } else if (exponents_[i] != 0) {
      const auto d = f.order / std::gcd(exponents_[i], f.order);
      conductor_ *= ipow(f.prime, 1 + valuation(d, f.prime));
    }
  }
}

bool DirichletCharacter::principal() const noexcept {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto t) { return t == 0; });
}

std::optional<std::uint64_t> DirichletCharacter::angle(std::uint64_t m) const noexcept {
  if (!group_->coprime(m)) return std::nullopt;
  const auto phi = group_->phi();
  const auto& fs = group_->factors();
  std::uint64_t a = 0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (exponents_[i] == 0) continue;
    const auto lg = group_->log(i, m);
    const std::uint64_t step = phi / fs[i].order;
    a = (a + mulmod(mulmod(exponents_[i], lg, fs[i].order), step, phi)) % phi;
  }
  return a;
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t m) const noexcept {
  const auto a = angle(m);
  if (!a) return {0.0, 0.0};
  return root_of_unity(*a, group_->phi());
}

std::complex<double> DirichletCharacter::operator()(std::int64_t m) const noexcept {
  const auto q = static_cast<std::int64_t>(modulus());
  auto r = m % q;
  if (r < 0) r += q;
  return (*this)(static_cast<std::uint64_t>(r));
}

std::complex<double> root_of_unity(std::uint64_t num, std::uint64_t den) noexcept {
  num %= den;
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const long double theta = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(num) /
                            static_cast<long double>(den);
  return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

std::optional<std::size_t> CharacterTable::residue_index(std::uint64_t a) const noexcept {
  const auto s = residue_slot_[a % modulus()];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

std::size_t CharacterTable::label_of(const std::vector<std::uint64_t>& exponents) const {
  return lspec::label_of(*group_, exponents);
}

CharacterTable character_group(std::uint64_t q) {
  CharacterTable t;
  t.group_ = std::make_shared<const GroupStructure>(q);
  const auto phi = t.group_->phi();

  t.residue_slot_.assign(q, -1);
  if (q == 1) {
    t.residues_.push_back(1);
    t.residue_slot_[0] = 0;
  } else {
    for (std::uint64_t a = 1; a < q; ++a) {
      if (!t.group_->coprime(a)) continue;
      t.residue_slot_[a] = static_cast<std::int64_t>(t.residues_.size());
      t.residues_.push_back(a);
    }
  }

  t.characters_.reserve(phi);
  for (std::size_t label = 0; label < phi; ++label) {
    t.characters_.emplace_back(t.group_, exponents_of(*t.group_, label));
  }

  t.angles_.resize(phi * phi);
  t.matrix_.resize(phi * phi);
  for (std::size_t j = 0; j < phi; ++j) {
    for (std::size_t k = 0; k < phi; ++k) {
      const auto a = *t.characters_[j].angle(t.residues_[k]);
      t.angles_[j * phi + k] = a;
      t.matrix_[j * phi + k] = root_of_unity(a, phi);
    }
  }
  return t;
}

double orthogonality_defect(const CharacterTable& table) {
  const auto n = table.phi();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) acc += table.m(j, k) * std::conj(table.m(l, k));
      if (j == l) acc -= static_cast<double>(n);
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

std::uint64_t brute_force_conductor(const DirichletCharacter& chi) {
  const auto q = chi.modulus();
  for (std::uint64_t f = 1; f <= q; ++f) {
    if (q % f != 0) continue;
    bool trivial = true;
    for (std::uint64_t m = 1; m <= q && trivial; ++m) {
      if (gcd_u64(m, q) != 1 || m % f != 1 % f) continue;
      trivial = chi.angle(m).value_or(0) == 0;
    }
    if (trivial) return f;
  }
  return q;
}

InductionRecord conductor_and_parent(const DirichletCharacter& chi) {
  const auto q = chi.modulus();
  const auto f = chi.conductor();
  auto parent_group = std::make_shared<const GroupStructure>(f);

  // Part of q built from primes not dividing f; residues == 1 there keep m coprime to q.
  std::uint64_t rest = 1;
  std::vector<ExtraPrime> extra;
  for (const auto& [p, k] : factorize(q)) {
    const int l = f % p == 0 ? valuation(f, p) : 0;
    if (l == 0) rest *= ipow(p, k);
    if (k > l) extra.push_back({p, k, l});
  }

  const auto phi_q = chi.group().phi();
  std::vector<std::uint64_t> t;
  for (const auto& fac : parent_group->factors()) {
    const auto m = crt(fac.generator, f, 1, rest);
    const auto a = *chi.angle(m);
    // chi(m) = exp(2 pi i a / phi(q)) is an ord-th root of unity.
    t.push_back(static_cast<std::uint64_t>(static_cast<u128>(a) * fac.order / phi_q));
  }
  return InductionRecord{chi, DirichletCharacter(parent_group, std::move(t)), std::move(extra)};
}

DirichletCharacter product_character(const DirichletCharacter& chi1, const DirichletCharacter& chi2,
                                     std::shared_ptr<const GroupStructure> product_group) {
  const auto q1 = chi1.modulus();
  const auto q2 = chi2.modulus();
  if (gcd_u64(q1, q2) != 1) throw InvalidArgument("product_character needs coprime moduli");
  if (!product_group) product_group = std::make_shared<const GroupStructure>(q1 * q2);
  if (product_group->modulus() != q1 * q2) throw InvalidArgument("product group has wrong modulus");

  const auto phi1 = chi1.group().phi();
  const auto phi2 = chi2.group().phi();
  std::vector<std::uint64_t> t;
  for (const auto& fac : product_group->factors()) {
    const auto a1 = *chi1.angle(fac.generator % q1);
    const auto a2 = *chi2.angle(fac.generator % q2);
    const auto t1 = static_cast<std::uint64_t>(static_cast<u128>(a1) * fac.order / phi1);
    const auto t2 = static_cast<std::uint64_t>(static_cast<u128>(a2) * fac.order / phi2);
    t.push_back((t1 + t2) % fac.order);
  }
  return DirichletCharacter(std::move(product_group), std::move(t));
}

std::optional<std::size_t> find_character(const CharacterTable& table, std::uint64_t m,
                                          std::complex<double> value, double tol) {
  for (const auto& chi : table.characters()) {
    if (std::abs(chi(m) - value) <= tol) return chi.label();
  }
  return std::nullopt;
}

}  // namespace lspec
