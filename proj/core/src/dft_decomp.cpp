#include "lspec/dft_decomp.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lspec/error.hpp"
#include "lspec/specfun.hpp"

namespace lspec {

namespace {

// 1 / (1 - 2^{-1/2}) bounds 1 / (1 - |u|) for every prime.
const double kTailConstant = 1.0 / (1.0 - 1.0 / std::numbers::sqrt2);

RowIndicator make_row(std::size_t label, const DirichletCharacter& row_char, const InductionRecord& induction,
                      const Compensation& comp, std::complex<double> prime_sum, double y,
                      std::complex<double> noise, std::uint64_t row_modulus) {
  RowIndicator r;
  r.label = label;
  r.row_modulus = row_modulus;
  r.row_character = row_char.label();
  r.parity = row_char.parity();
  r.conductor = row_char.conductor();
  r.primitive = row_char.primitive();
  r.parent_is_zeta = induction.parent.modulus() == 1;
  r.prime_sum = prime_sum;
  r.series_difference = comp.series_difference(y);
  r.half_log_ratio = comp.half_log_ratio;
  r.compensation = r.series_difference.real() + r.half_log_ratio;
  r.noise = r.parent_is_zeta ? noise : std::complex<double>{};
  r.smooth = smooth_density(y, {r.parity == 0 ? Parity::even : Parity::odd, row_modulus});
  r.total = prime_sum.real() + r.compensation - r.noise.real() - r.smooth;
  return r;
}

}  // namespace

std::complex<double> RowIndicator::complex_total() const noexcept {
  return prime_sum + series_difference + half_log_ratio - noise - smooth;
}

double Compensation::value(double y) const noexcept {
  double v = constant;
  for (const auto& t : poisson_terms) {
    const double lp = std::log(static_cast<double>(t.p));
    const auto u = t.coefficient * std::exp(std::complex<double>(-(0.5 + eps) * lp, -y * lp));
    v += t.weight * ((1.0 + u) / (1.0 - u)).real();
  }
  return v;
}

std::complex<double> Compensation::series_difference(double y) const noexcept {
  std::complex<double> acc{0.0, 0.0};
  const auto limit = cutoff.limit();
  for (const auto& t : poisson_terms) {
    const double lp = std::log(static_cast<double>(t.p));
    std::uint64_t v = t.p;
    for (int n = 1;; ++n) {
      const double freq = n * lp;
      double amp = lp * std::exp(-(0.5 + eps) * freq);
      if (cutoff.halve_boundary() && v == limit) amp *= 0.5;
      const auto chi = root_of_unity(t.angle * static_cast<std::uint64_t>(n) % t.denominator, t.denominator);
      const double theta = y * freq;
      acc += amp * chi * std::complex<double>(std::cos(theta), -std::sin(theta));
      if (v > limit / t.p) break;
      v *= t.p;
    }
  }
  return acc;
}

Compensation compensation_for(const DirichletCharacter& child, const Cutoff& cutoff, const EpsilonMode& eps) {
  const auto rec = conductor_and_parent(child);
  Compensation c;
  c.eps = eps.resolve(cutoff);
  c.cutoff = cutoff;
  const auto& parent = rec.parent;
  for (const auto& e : rec.extra_primes) {
    const double lp = std::log(static_cast<double>(e.p));
    if (e.l == 0) {
      Compensation::PoissonTerm t;
      t.p = e.p;
      t.weight = lp / 2.0;
      t.angle = *parent.angle(e.p);
      t.denominator = parent.group().phi();
      t.coefficient = root_of_unity(t.angle, t.denominator);
      c.poisson_terms.push_back(t);
      c.constant += (e.k - 1) / 2.0 * lp;
    } else {
      c.constant += (e.k - e.l) / 2.0 * lp;
    }
  }
  c.half_log_ratio =
      0.5 * std::log(static_cast<double>(child.modulus()) / static_cast<double>(child.conductor()));
  if (!c.poisson_terms.empty()) {
    c.truncation_error_bound = kTailConstant * std::log(static_cast<double>(child.modulus())) *
                               std::exp(-(0.5 + c.eps) * cutoff.x());
  }
  return c;
}

std::complex<double> exponential_noise(double y, const Cutoff& cutoff, double eps) noexcept {
  const double x = cutoff.x();
  const std::complex<double> z1(0.5 - eps, -y);
  const std::complex<double> z2(-0.5 - eps, -y);
  return (std::exp(x * z1) - 1.0) / z1 + (std::exp(x * z2) - 1.0) / z2;
}

DecompositionEngine::DecompositionEngine(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps,
                                         std::optional<DirichletCharacter> twist)
    : q_(q),
      cutoff_(cutoff),
      eps_(eps.resolve(cutoff)),
      depth_(eps.predicted_depth(cutoff)),
      twist_(std::move(twist)),
      table_(character_group(q)) {
  if (twist_ && twist_->modulus() == 1) twist_.reset();
  if (twist_) {
    if (!twist_->primitive()) throw InvalidArgument("twisting character must be primitive");
    if (gcd_u64(twist_->modulus(), q) != 1) {
      throw InvalidArgument("moduli " + std::to_string(twist_->modulus()) + " and " + std::to_string(q) +
                            " are not coprime");
    }
  }

  const auto phi = table_.phi();
  class_tables_.resize(phi);
  for (const auto& t : prime_powers(cutoff)) {
    const auto idx = table_.residue_index(t.value);
    if (!idx) continue;
    std::complex<double> c = damped_amplitude(t, eps_);
    if (twist_) {
      const auto w = (*twist_)(t.value);
      if (w == std::complex<double>(0.0, 0.0)) continue;
      c *= w;
    }
    class_tables_[*idx].push(t.freq, c);
  }

  std::shared_ptr<const GroupStructure> product_group;
  if (twist_) product_group = std::make_shared<const GroupStructure>(row_modulus());
  row_chars_.reserve(phi);
  for (const auto& chi : table_.characters()) {
    row_chars_.push_back(twist_ ? product_character(*twist_, chi, product_group) : chi);
  }
  for (const auto& rc : row_chars_) {
    inductions_.push_back(conductor_and_parent(rc));
    comps_.push_back(compensation_for(rc, cutoff, eps));
  }
}

ClassSumVector DecompositionEngine::class_sums(double y) const {
  ClassSumVector v{q_, {}, eps_, y};
  v.entries.reserve(class_tables_.size());
  for (const auto& t : class_tables_) v.entries.push_back(t.evaluate(y));
  return v;
}

std::vector<ClassSumVector> DecompositionEngine::class_sums(const UniformGrid& grid, unsigned threads) const {
  std::vector<ClassSumVector> out(grid.count);
  for (std::size_t k = 0; k < grid.count; ++k) {
    out[k] = {q_, std::vector<std::complex<double>>(class_tables_.size()), eps_, grid.at(k)};
  }
  for (std::size_t c = 0; c < class_tables_.size(); ++c) {
    const auto values = class_tables_[c].scan(grid, threads);
    for (std::size_t k = 0; k < grid.count; ++k) out[k].entries[c] = values[k];
  }
  return out;
}

LinearSystem DecompositionEngine::solve(const ClassSumVector& sums) const {
  LinearSystem sys{twist_modulus(), table_, sums, forward_transform(table_, sums.entries), {}, {}, depth_};
  const double y = sums.y;
  sys.rhs.noise = twist_ ? std::complex<double>{} : exponential_noise(y, cutoff_, eps_);
  sys.rhs.g_even = half_re_digamma(y, 0);
  sys.rhs.g_odd = half_re_digamma(y, 1);
  sys.rhs.constant = -0.5 * std::log(std::numbers::pi / static_cast<double>(row_modulus()));
  for (std::size_t j = 0; j < row_chars_.size(); ++j) {
    sys.rhs.parity.push_back(row_chars_[j].parity());
    sys.rows.push_back(make_row(j, row_chars_[j], inductions_[j], comps_[j], sys.transformed[j], y,
                                sys.rhs.noise, row_modulus()));
  }
  return sys;
}

ClassIndicatorSample DecompositionEngine::class_indicator(std::uint64_t a, const ClassSumVector& sums,
                                                          bool exact_compensation) const {
  const auto idx = table_.residue_index(a);
  if (!idx) {
    throw InvalidArgument("class " + std::to_string(a) + " is not coprime to " + std::to_string(q_));
  }
  const double phi = static_cast<double>(table_.phi());
  const double y = sums.y;

  ClassIndicatorSample s;
  s.y = y;
  s.class_sum_re = sums.entries[*idx].real();
  if (!twist_) s.noise_share = exponential_noise(y, cutoff_, eps_).real() / phi;

  double c_even = 0.0, c_odd = 0.0;
  std::complex<double> comp{0.0, 0.0};
  for (std::size_t j = 0; j < row_chars_.size(); ++j) {
    const auto weight = std::conj(table_.m(j, *idx));
    (row_chars_[j].parity() == 0 ? c_even : c_odd) += weight.real();
    if (exact_compensation && !comps_[j].empty()) {
      comp += weight * (comps_[j].series_difference(y) + comps_[j].half_log_ratio);
    }
  }
  s.smooth_even = c_even / phi * smooth_density(y, {Parity::even, row_modulus()});
  s.smooth_odd = c_odd / phi * smooth_density(y, {Parity::odd, row_modulus()});
  s.compensation = comp.real() / phi;
  s.total = s.recombined();
  s.predicted_depth = depth_ / phi;
  return s;
}

QuadraticSplit DecompositionEngine::quadratic(const DirichletCharacter& chi, const ClassSumVector& sums) const {
  if (chi.modulus() != q_) throw InvalidArgument("character modulus does not match the decomposition");
  if (twist_) throw InvalidArgument("quadratic split is defined for the untwisted system");
  if (!chi.is_real() || chi.principal() || !chi.primitive()) {
    throw InvalidArgument("quadratic split needs a real, primitive, non-principal character");
  }
  QuadraticSplit out;
  out.y = sums.y;
  for (std::size_t k = 0; k < sums.entries.size(); ++k) {
    (chi(table_.residues()[k]).real() > 0 ? out.s_plus : out.s_minus) += sums.entries[k];
  }
  const auto noise = exponential_noise(sums.y, cutoff_, eps_);
  const std::size_t j = chi.label();
  out.zeta_row = make_row(0, row_chars_[0], inductions_[0], comps_[0], out.s_plus + out.s_minus, sums.y, noise, q_);
  out.chi_row = make_row(j, row_chars_[j], inductions_[j], comps_[j], out.s_plus - out.s_minus, sums.y, noise, q_);
  return out;
}

std::vector<std::complex<double>> forward_transform(const CharacterTable& table,
                                                    const std::vector<std::complex<double>>& s) {
  const auto n = table.phi();
  if (s.size() != n) throw InvalidArgument("vector length does not match phi(q)");
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) acc += table.m(j, k) * s[k];
    out[j] = acc;
  }
  return out;
}

std::vector<std::complex<double>> inverse_transform(const CharacterTable& table,
                                                    const std::vector<std::complex<double>>& v) {
  const auto n = table.phi();
  if (v.size() != n) throw InvalidArgument("vector length does not match phi(q)");
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) acc += std::conj(table.m(j, k)) * v[j];
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

ClassSumVector class_sums(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps, double y) {
  return DecompositionEngine(q, cutoff, eps).class_sums(y);
}

LinearSystem assemble_system(std::uint64_t q, const Cutoff& cutoff, const EpsilonMode& eps, double y) {
  const DecompositionEngine engine(q, cutoff, eps);
  return engine.solve(engine.class_sums(y));
}

ClassIndicatorSample invert_to_class(std::uint64_t q, std::uint64_t a, const Cutoff& cutoff,
                                     const EpsilonMode& eps, double y, bool exact_compensation) {
  if (q == 0 || gcd_u64(a % q, q) != 1) {
    throw InvalidArgument("class " + std::to_string(a) + " is not coprime to " + std::to_string(q));
  }
  const DecompositionEngine engine(q, cutoff, eps);
  return engine.class_indicator(a, engine.class_sums(y), exact_compensation);
}

QuadraticSplit quadratic_split(const DirichletCharacter& chi, const Cutoff& cutoff, const EpsilonMode& eps,
                               double y) {
  if (!chi.is_real() || chi.principal() || !chi.primitive()) {
    throw InvalidArgument("quadratic split needs a real, primitive, non-principal character");
  }
  const DecompositionEngine engine(chi.modulus(), cutoff, eps);
  return engine.quadratic(engine.table()[chi.label()], engine.class_sums(y));
}

LinearSystem mixed_subsystem(const DirichletCharacter& chi, std::uint64_t q2, const Cutoff& cutoff,
                             const EpsilonMode& eps, double y) {
  if (!chi.primitive()) throw InvalidArgument("mixed subsystem needs a primitive character");
  if (gcd_u64(chi.modulus(), q2) != 1) {
    throw InvalidArgument("moduli " + std::to_string(chi.modulus()) + " and " + std::to_string(q2) +
                          " are not coprime");
  }
  const DecompositionEngine engine(q2, cutoff, eps, chi);
  return engine.solve(engine.class_sums(y));
}

}  // namespace lspec
