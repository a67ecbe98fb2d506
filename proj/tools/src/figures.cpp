#include "lspec/tools/figures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "lspec/char_group.hpp"
#include "lspec/dft_decomp.hpp"
#include "lspec/error.hpp"
#include "lspec/indicator.hpp"
#include "lspec/zero_side.hpp"
#include "lspec/tools/acceptance.hpp"
#include "lspec/tools/tables.hpp"

namespace lspec::tools {

namespace fs = std::filesystem;

namespace {

struct Panel {
  std::string file;
  std::string kind;
  nlohmann::ordered_json params;
};

class FigureWriter {
 public:
  explicit FigureWriter(const FigureRequest& req) : req_(req), config_("figure") {
    config_.set("id", req.id)
        .set("limit", req.limit)
        .set("zeros-dir", req.zeros_dir)
        .set("output", req.out_dir)
        .set("trace-points", static_cast<std::uint64_t>(req.trace_points));
    fs::create_directories(req.out_dir);
  }

  const FigureRequest& request() const noexcept { return req_; }
  Cutoff cutoff() const { return Cutoff(req_.limit); }

  ZeroTable zeros(const char* name) {
    const auto path = fs::path(req_.zeros_dir) / name;
    if (!fs::exists(path)) {
      throw Error("figure " + req_.id + " needs the zero table '" + std::string(name) + "' in --zeros-dir (looked for " +
                  path.string() + ")");
    }
    tables_.push_back(path.string());
    return load_zeros(path.string());
  }

  void write(const std::string& name, const std::string& kind, const Table& table, nlohmann::ordered_json params) {
    const std::string file = req_.id + "_" + name + ".csv";
    std::ofstream out(fs::path(req_.out_dir) / file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + (fs::path(req_.out_dir) / file).string());
    write_csv(out, table, &config_, {"panel " + name});
    panels_.push_back({file, kind, std::move(params)});
  }

  nlohmann::ordered_json finish(const std::string& caption, nlohmann::ordered_json params) {
    nlohmann::ordered_json m;
    m["figure"] = req_.id;
    m["caption"] = caption;
    m["limit"] = req_.limit;
    m["x"] = cutoff().x();
    m["eps"] = "zero";
    m["parameters"] = std::move(params);
    m["zero_tables"] = tables_;
    auto& panels = m["panels"] = nlohmann::ordered_json::array();
    for (const auto& p : panels_) panels.push_back({{"file", p.file}, {"kind", p.kind}, {"params", p.params}});
    m["config"] = config_.to_json();
    std::ofstream out(fs::path(req_.out_dir) / (req_.id + "_manifest.json"), std::ios::binary | std::ios::trunc);
    out << m.dump(2) << '\n';
    return m;
  }

  void scan_panel(const std::string& name, const Target& target, double lo, double hi, double step) {
    ScanRequest s;
    s.cutoff = cutoff();
    s.target = target;
    s.y_min = lo;
    s.y_max = hi;
    s.y_step = step;
    s.threads = req_.threads;
    write(name, "scan", scan_table(scan(s)),
          {{"target", to_string(target)}, {"y_min", lo}, {"y_max", hi}, {"step", step}});
  }

  void trace_panel(const std::string& name, const Target& target, double y) {
    const auto limits = log_schedule(3, req_.limit, req_.trace_points);
    write(name, "pointwise_trace", trace_table(pointwise_trace(y, target, EpsilonMode::zero(), limits), limits),
          {{"target", to_string(target)}, {"y", y}, {"limit_min", 3}, {"limit_max", req_.limit}});
  }

  // Crosses at the predicted heights for every ordinate inside [lo, hi].
  void marks_panel(const std::string& name, const std::vector<std::pair<std::string, ZeroTable>>& sets, double lo,
                   double hi, double height, bool mirror) {
    Table t{{"gamma", "source", "height"}, {}};
    std::vector<std::pair<double, std::string>> all;
    for (const auto& [label, table] : sets) {
      for (double g : table.ordinates) {
        if (g >= lo && g <= hi) all.emplace_back(g, label);
        if (mirror && -g >= lo && -g <= hi) all.emplace_back(-g, label);
      }
    }
    std::sort(all.begin(), all.end());
    for (const auto& [g, label] : all) t.rows.push_back({g, label, height});
    write(name, "zero_marks", t, {{"y_min", lo}, {"y_max", hi}});
  }

 private:
  FigureRequest req_;
  RunConfig config_;
  std::vector<Panel> panels_;
  std::vector<std::string> tables_;
};

nlohmann::ordered_json fig1(FigureWriter& w) {
  const auto zeta = w.zeros(zero_files::zeta_low);
  const double g1 = zeta.ordinates.at(0);
  w.scan_panel("scan", ZetaTarget{}, -2.0, 54.0, 0.01);
  w.trace_panel("trace_gamma1", ZetaTarget{}, g1);
  w.trace_panel("trace_origin", ZetaTarget{}, 0.0);
  w.trace_panel("trace_y8", ZetaTarget{}, 8.0);
  w.marks_panel("zeros", {{"zeta", zeta}}, -2.0, 54.0, -w.cutoff().x(), true);
  return w.finish("Zero indicator of zeta(s) around origin.", {{"y_range", {-2.0, 54.0}}, {"ordinates", {g1, 0.0, 8.0}}});
}

nlohmann::ordered_json fig2(FigureWriter& w) {
  const auto zeta = w.zeros(zero_files::zeta_high);
  const auto g = zeta.nearest(1e6 + 1.90);
  if (!g) throw Error("zero table near height 1e6 is empty");
  w.scan_panel("scan", ZetaTarget{}, 1e6, 1e6 + 10.0, 0.005);
  w.trace_panel("trace_gamma", ZetaTarget{}, *g);
  w.trace_panel("trace_y", ZetaTarget{}, 1e6 + 2.3);
  w.marks_panel("zeros", {{"zeta", zeta}}, 1e6, 1e6 + 10.0, -w.cutoff().x(), false);
  return w.finish("Zero indicator of zeta(s) higher up.",
                  {{"y_range", {1e6, 1e6 + 10.0}}, {"ordinates", {*g, 1e6 + 2.3}}});
}

nlohmann::ordered_json fig3(FigureWriter& w) {
  const auto pos = w.zeros(zero_files::chi5);
  const auto neg = w.zeros(zero_files::chi5_negative);
  const auto t = character_group(5);
  const auto label = find_character(t, 2, {0.0, 1.0});
  if (!label) throw Error("no character mod 5 with chi(2) = i");
  const Target target = CharacterTarget{5, *label};
  const double g = pos.ordinates.at(0);
  w.scan_panel("scan", target, -25.0, 25.0, 0.01);
  w.trace_panel("trace_gamma1", target, g);
  w.trace_panel("trace_origin", target, 0.0);
  w.trace_panel("trace_y10", target, 10.0);
  // negative ordinates are stored as |gamma|
  Table marks{{"gamma", "source", "height"}, {}};
  std::vector<std::pair<double, std::string>> all;
  for (double v : pos.ordinates) {
    if (v <= 25.0) all.emplace_back(v, "chi5");
  }
  for (double v : neg.ordinates) {
    if (v <= 25.0) all.emplace_back(-v, "chi5");
  }
  std::sort(all.begin(), all.end());
  for (const auto& [v, s] : all) marks.rows.push_back({v, s, -w.cutoff().x()});
  w.write("zeros", "zero_marks", marks, {{"y_min", -25.0}, {"y_max", 25.0}});
  return w.finish("Zero indicator of L(s, chi).", {{"y_range", {-25.0, 25.0}},
                                                  {"character", to_string(target)},
                                                  {"chi(2)", "i"},
                                                  {"ordinates", {g, 0.0, 10.0}}});
}

nlohmann::ordered_json fig4(FigureWriter& w) {
  const auto zeta = w.zeros(zero_files::zeta_low);
  const auto chi4 = w.zeros(zero_files::chi4);
  const DecompositionEngine engine(4, w.cutoff(), EpsilonMode::zero());
  const auto grid = UniformGrid::covering(-2.0, 32.0, 0.01);
  const auto sums = engine.class_sums(grid, w.request().threads);
  for (std::uint64_t a : {1u, 3u}) {
    std::vector<ClassIndicatorSample> samples;
    samples.reserve(sums.size());
    for (const auto& v : sums) samples.push_back(engine.class_indicator(a, v, true));
    w.write("class" + std::to_string(a), "class_indicator", class_table(samples),
            {{"modulus", 4}, {"class", a}, {"exact_compensation", true}, {"y_min", -2.0}, {"y_max", 32.0},
             {"step", 0.01}});
  }
  w.marks_panel("zeros", {{"zeta", zeta}, {"chi4", chi4}}, -2.0, 32.0, -w.cutoff().x() / 2, true);
  return w.finish("Quadratic decomposition.", {{"modulus", 4}, {"classes", {1, 3}}, {"y_range", {-2.0, 32.0}}});
}

nlohmann::ordered_json fig5(FigureWriter& w) {
  const auto zeta = w.zeros(zero_files::zeta_1000);
  const double T = 500.0;
  std::vector<double> xs;
  for (int i = 0; i <= 3700; ++i) xs.push_back(1.5 + 0.005 * i);
  const auto traces = re_im_comparison(xs, T, zeta, UniformGrid::covering(-2.0, 54.0, 0.01), w.cutoff(),
                                       EpsilonMode::zero(), w.request().threads);
  Table landau{{"x", "re", "im"}, {}};
  for (const auto& p : traces.landau) landau.rows.push_back({p.abscissa, p.re, p.im});
  w.write("landau", "landau_trace", landau, {{"T", T}, {"x_min", 1.5}, {"x_max", 20.0}, {"x_step", 0.005}});
  Table ind{{"y", "re", "im"}, {}};
  for (const auto& p : traces.indicator) ind.rows.push_back({p.abscissa, p.re, p.im});
  w.write("indicator", "indicator_re_im", ind, {{"y_min", -2.0}, {"y_max", 54.0}, {"step", 0.01}});
  return w.finish("Real vs. Imaginary parts.", {{"T", T}});
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1", "fig2", "fig3", "fig4", "fig5"};
  return ids;
}

nlohmann::ordered_json reproduce_figure(const FigureRequest& request) {
  FigureWriter w(request);
  if (request.id == "fig1") return fig1(w);
  if (request.id == "fig2") return fig2(w);
  if (request.id == "fig3") return fig3(w);
  if (request.id == "fig4") return fig4(w);
  if (request.id == "fig5") return fig5(w);
  throw InvalidArgument("unknown figure '" + request.id + "' (expected fig1..fig5)");
}

}  // namespace lspec::tools
