#pragma once

// Zero-side tools: zero-ordinate tables, spike detection in scans, Landau's
// sum over zeros and the finite-cutoff kernel that turns a single zero into a
// spike.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lspec/indicator.hpp"
#include "lspec/oscillatory_sum.hpp"

namespace lspec {

struct ZeroTable {
  std::vector<double> ordinates;  // strictly ascending, positive
  std::string source;
  std::string target = "zeta";

  bool empty() const noexcept { return ordinates.empty(); }
  std::size_t size() const noexcept { return ordinates.size(); }
  // Nearest ordinate to y, if any.
  std::optional<double> nearest(double y) const noexcept;
};

enum class ZeroFormat { plain, csv };

// plain: one decimal per line, '#' starts a comment, blank lines ignored.
// csv:   header line `gamma`, then one value per line.
// Throws ParseError (with line number) on malformed, non-positive or
// non-ascending entries; Error when the file cannot be opened.
ZeroTable load_zeros(const std::string& path, ZeroFormat format = ZeroFormat::plain);
ZeroTable parse_zeros(const std::string& text, ZeroFormat format, const std::string& source = "<memory>");
// Format from the file extension: ".csv" is csv, anything else plain.
ZeroFormat guess_zero_format(const std::string& path);

struct SpikeMatch {
  double detected_y = 0.0;
  std::optional<double> matched_gamma;
  double depth = 0.0;          // -(refined minimum)
  double predicted = 0.0;      // predicted depth at the sample
  double residual_offset = 0.0;  // detected_y - matched_gamma when matched, else 0
};

struct SpikeOptions {
  double depth_fraction = 0.5;  // spike when total <= -depth_fraction * predicted_depth
  // Match radius; defaults to 1.5 grid steps when unset.
  std::optional<double> match_window;
};

// Local minima of a uniform scan below the depth threshold, refined by a
// 3-point parabola and matched to the nearest table ordinate within the window.
// Throws InvalidArgument when the scan is not uniform or depth_fraction is
// outside (0, 1].
std::vector<SpikeMatch> detect_spikes(const std::vector<IndicatorSample>& scan, const SpikeOptions& options,
                                      const ZeroTable* table = nullptr);

// Vertex of the parabola through (-1, fm), (0, f0), (1, fp): offset in units of
// the grid step and the value there. Offset is 0 for a degenerate parabola.
struct ParabolaVertex {
  double offset = 0.0;
  double value = 0.0;
};
ParabolaVertex parabolic_vertex(double fm, double f0, double fp) noexcept;

struct LandauResult {
  std::complex<double> value;
  double predicted_re = 0.0;  // -(T / 2 pi) Lambda(x)
  std::size_t count = 0;      // ordinates included (a coincident T counts once)
  bool truncated = false;     // T beyond the table's last ordinate
};

// sum_{0 < gamma <= T} x^{1/2 + i gamma}; an ordinate exactly equal to T gets
// weight 1/2. Throws DomainError for x <= 1.
LandauResult landau_sum(double x, double T, const ZeroTable& table);

// Lambda(x) for real x: log p when x is an integer p^k, else 0.
double von_mangoldt(double x);

// [e^{(-eps + i delta) x} - 1] / (-eps + i delta); x at delta = eps = 0.
std::complex<double> indicator_kernel(double delta, double x, double eps) noexcept;

// Extremum of (1 - cos u)/u, the normalized imaginary part of the eps = 0
// kernel: u* solves tan(u/2) = u, and the maximum is (1 - cos u*)/u*.
struct KernelOvershoot {
  double u = 0.0;
  double value = 0.0;
};
KernelOvershoot kernel_overshoot();

struct ReImPoint {
  double abscissa = 0.0;
  double re = 0.0;
  double im = 0.0;
};

struct ReImTraces {
  std::vector<ReImPoint> landau;     // vs x
  std::vector<ReImPoint> indicator;  // vs y: prime sum minus main term, before Re
};

// Landau sum over an x-grid and the complex zeta indicator over a y-grid.
// Either grid may be empty.
ReImTraces re_im_comparison(const std::vector<double>& x_grid, double T, const ZeroTable& table,
                            const std::optional<UniformGrid>& y_grid, const Cutoff& cutoff,
                            const EpsilonMode& eps, unsigned threads = 0);

// -sum over zeros with |gamma| <= T of sin(gamma x)/gamma, counting both
// gamma and -gamma (twice the sum over the positive table entries).
double zero_side_origin_sum(double x, double T, const ZeroTable& table);

}  // namespace lspec
