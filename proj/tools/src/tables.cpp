#include "lspec/tools/tables.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lspec/error.hpp"

namespace lspec::tools {

Table sieve_table(const std::vector<PrimePowerTerm>& terms) {
  Table t{{"p", "n", "value", "weight", "freq"}, {}};
  t.rows.reserve(terms.size());
  for (const auto& p : terms) {
    t.rows.push_back({p.p, static_cast<std::int64_t>(p.n), p.value, p.von_mangoldt(), p.freq});
  }
  return t;
}

Table scan_table(const std::vector<IndicatorSample>& samples) {
  Table t{{"y", "total", "prime_sum_re", "main_term_re", "smooth_term", "predicted_depth"}, {}};
  t.rows.reserve(samples.size());
  for (const auto& s : samples) {
    t.rows.push_back({s.y, s.total, s.prime_sum_re, s.main_term_re, s.smooth_term, s.predicted_depth});
  }
  return t;
}

Table trace_table(const std::vector<IndicatorSample>& samples, const std::vector<std::uint64_t>& limits) {
  Table t{{"limit", "x", "y", "total", "prime_sum_re", "main_term_re", "smooth_term", "predicted_depth"}, {}};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    t.rows.push_back({limits[i], Cutoff(limits[i]).x(), s.y, s.total, s.prime_sum_re, s.main_term_re,
                      s.smooth_term, s.predicted_depth});
  }
  return t;
}

Table class_table(const std::vector<ClassIndicatorSample>& samples) {
  Table t{{"y", "total", "class_sum_re", "noise_share", "smooth_even", "smooth_odd", "compensation",
           "predicted_depth"},
          {}};
  t.rows.reserve(samples.size());
  for (const auto& s : samples) {
    t.rows.push_back({s.y, s.total, s.class_sum_re, s.noise_share, s.smooth_even, s.smooth_odd, s.compensation,
                      s.predicted_depth});
  }
  return t;
}

Table spike_table(const std::vector<SpikeMatch>& spikes) {
  Table t{{"detected_y", "matched_gamma", "offset", "depth", "predicted"}, {}};
  for (const auto& s : spikes) {
    t.rows.push_back({s.detected_y, s.matched_gamma ? Cell(*s.matched_gamma) : Cell(std::monostate{}),
                      s.matched_gamma ? Cell(s.residual_offset) : Cell(std::monostate{}), s.depth, s.predicted});
  }
  return t;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::vector<IndicatorSample> read_scan_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scan file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  int iy = -1, itotal = -1, idepth = -1;
  std::vector<IndicatorSample> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (iy < 0) {
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        if (cells[i] == "y") iy = i;
        if (cells[i] == "total") itotal = i;
        if (cells[i] == "predicted_depth") idepth = i;
      }
      if (iy < 0 || itotal < 0 || idepth < 0) {
        throw ParseError(path, lineno, "scan header needs y, total and predicted_depth columns");
      }
      continue;
    }
    auto number = [&](int i) {
      if (i >= static_cast<int>(cells.size())) throw ParseError(path, lineno, "missing column");
      const auto& c = cells[i];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) throw ParseError(path, lineno, "not a number: '" + c + "'");
      return v;
    };
    IndicatorSample s;
    s.y = number(iy);
    s.total = number(itotal);
    s.predicted_depth = number(idepth);
    out.push_back(s);
  }
  if (iy < 0) throw ParseError(path, lineno, "no header row");
  return out;
}

}  // namespace lspec::tools
