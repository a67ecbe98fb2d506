#include "lspec/zero_side.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "lspec/error.hpp"
#include "lspec/prime_stream.hpp"
#include "lspec/summation.hpp"

namespace lspec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& source, std::size_t line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(source, line, "not a number: '" + text + "'");
  return v;
}

}  // namespace

std::optional<double> ZeroTable::nearest(double y) const noexcept {
  if (ordinates.empty()) return std::nullopt;
  const auto it = std::lower_bound(ordinates.begin(), ordinates.end(), y);
  if (it == ordinates.end()) return ordinates.back();
  if (it == ordinates.begin()) return *it;
  return (*it - y) < (y - *(it - 1)) ? *it : *(it - 1);
}

ZeroTable parse_zeros(const std::string& text, ZeroFormat format, const std::string& source) {
  ZeroTable table;
  table.source = source;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header_seen = format == ZeroFormat::plain;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (!header_seen) {
      if (s != "gamma") throw ParseError(source, line, "expected csv header 'gamma'");
      header_seen = true;
      continue;
    }
    const double v = parse_double(s, source, line);
    if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(source, line, "ordinate must be positive");
    if (!table.ordinates.empty() && !(v > table.ordinates.back())) {
      throw ParseError(source, line, "ordinates must be strictly ascending");
    }
    table.ordinates.push_back(v);
  }
  return table;
}

ZeroTable load_zeros(const std::string& path, ZeroFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open zero table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_zeros(buf.str(), format, path);
}

ZeroFormat guess_zero_format(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0 ? ZeroFormat::csv : ZeroFormat::plain;
}

ParabolaVertex parabolic_vertex(double fm, double f0, double fp) noexcept {
  const double curvature = fm - 2.0 * f0 + fp;
  if (curvature == 0.0) return {0.0, f0};
  const double offset = 0.5 * (fm - fp) / curvature;
  return {offset, f0 - 0.25 * (fm - fp) * offset};
}

std::vector<SpikeMatch> detect_spikes(const std::vector<IndicatorSample>& scan, const SpikeOptions& options,
                                      const ZeroTable* table) {
  if (!(options.depth_fraction > 0.0 && options.depth_fraction <= 1.0)) {
    throw InvalidArgument("depth fraction must lie in (0, 1]");
  }
  std::vector<SpikeMatch> out;
  if (scan.size() < 3) return out;
  const double step = scan[1].y - scan[0].y;
  if (!(step > 0.0)) throw InvalidArgument("scan must be ascending in y");
  for (std::size_t k = 2; k < scan.size(); ++k) {
    const double d = scan[k].y - scan[k - 1].y;
    if (std::abs(d - step) > 1e-6 * step + 1e-9 * std::abs(scan[k].y)) {
      throw InvalidArgument("scan grid is not uniform");
    }
  }
  const double window = options.match_window.value_or(1.5 * step);

  for (std::size_t k = 1; k + 1 < scan.size(); ++k) {
    const double f0 = scan[k].total;
    if (!(f0 < scan[k - 1].total && f0 <= scan[k + 1].total)) continue;
    if (f0 > -options.depth_fraction * scan[k].predicted_depth) continue;

    const auto v = parabolic_vertex(scan[k - 1].total, f0, scan[k + 1].total);
    SpikeMatch m;
    m.detected_y = scan[k].y + v.offset * step;
    m.depth = -v.value;
    m.predicted = scan[k].predicted_depth;
    if (table) {
      if (const auto g = table->nearest(m.detected_y); g && std::abs(*g - m.detected_y) <= window) {
        m.matched_gamma = *g;
        m.residual_offset = m.detected_y - *g;
      }
    }
    out.push_back(m);
  }
  return out;
}

double von_mangoldt(double x) {
  if (!(x >= 2.0) || x != std::floor(x) || x > 1.8e19) return 0.0;
  const auto p = prime_power_base(static_cast<std::uint64_t>(x));
  return p ? std::log(static_cast<double>(p)) : 0.0;
}

LandauResult landau_sum(double x, double T, const ZeroTable& table) {
  if (!(x > 1.0)) throw DomainError("Landau sum needs x > 1");
  LandauResult r;
  const double lx = std::log(x);
  ReproducibleSum<std::complex<double>> acc;
  for (const double g : table.ordinates) {
    if (g > T) break;
    const double w = g == T ? 0.5 : 1.0;
    acc.add(w * std::complex<double>(std::cos(g * lx), std::sin(g * lx)));
    ++r.count;
  }
  r.value = std::sqrt(x) * acc.value();
  r.predicted_re = -T / (2.0 * std::numbers::pi) * von_mangoldt(x);
  r.truncated = table.empty() || T > table.ordinates.back();
  return r;
}

std::complex<double> indicator_kernel(double delta, double x, double eps) noexcept {
  const std::complex<double> z(-eps, delta);
  const auto zx = z * x;
  if (std::abs(zx) < 1e-8) return x * (1.0 + 0.5 * zx);
  // expm1 on the complex exponent, split to keep accuracy for small |zx|.
  const double a = zx.real();
  const double b = zx.imag();
  const double s = std::sin(0.5 * b);
  const std::complex<double> em1(std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b));
  return em1 / z;
}

KernelOvershoot kernel_overshoot() {
  // tan(t) = 2t on (0, pi/2), t = u/2; bisection on sin t - 2t cos t.
  double lo = 0.5, hi = 1.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f = std::sin(mid) - 2.0 * mid * std::cos(mid);
    (f > 0.0 ? hi : lo) = mid;
  }
  const double u = lo + hi;
  return {u, (1.0 - std::cos(u)) / u};
}

ReImTraces re_im_comparison(const std::vector<double>& x_grid, double T, const ZeroTable& table,
                            const std::optional<UniformGrid>& y_grid, const Cutoff& cutoff,
                            const EpsilonMode& eps, unsigned threads) {
  ReImTraces out;
  out.landau.reserve(x_grid.size());
  for (const double x : x_grid) {
    const auto r = landau_sum(x, T, table);
    out.landau.push_back({x, r.value.real(), r.value.imag()});
  }
  if (y_grid && y_grid->count > 0) {
    const IndicatorEngine engine(ZetaTarget{}, cutoff, eps);
    for (const auto& s : engine.scan(*y_grid, threads)) {
      out.indicator.push_back({s.y, s.prime_sum_re - s.main_term_re, s.prime_sum_im - s.main_term_im});
    }
  }
  return out;
}

double zero_side_origin_sum(double x, double T, const ZeroTable& table) {
  ReproducibleSum<double> acc;
  for (const double g : table.ordinates) {
    if (g > T) break;
    acc.add(std::sin(g * x) / g);
  }
  return -2.0 * acc.value();
}

}  // namespace lspec
