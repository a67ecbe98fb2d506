#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lspec/char_group.hpp"
#include "lspec/dft_decomp.hpp"
#include "lspec/error.hpp"
#include "lspec/indicator.hpp"
#include "lspec/oscillatory_sum.hpp"
#include "lspec/prime_stream.hpp"
#include "lspec/zero_side.hpp"
#include "lspec/tools/acceptance.hpp"
#include "lspec/tools/figures.hpp"
#include "lspec/tools/output.hpp"
#include "lspec/tools/tables.hpp"

using namespace lspec;
using namespace lspec::tools;

namespace {

struct Globals {
  unsigned threads = 0;
  std::string output = "-";
  std::string format = "csv";
};

// Accepts plain integers and exact scientific forms such as 1e6.
std::uint64_t parse_count(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  if (auto [p, ec] = std::from_chars(text.data(), end, v); ec == std::errc() && p == end) return v;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(text.data(), end, d); ec == std::errc() && p == end) {
    if (d >= 0.0 && d < 9.2e18 && d == std::floor(d)) return static_cast<std::uint64_t>(d);
  }
  throw InvalidArgument(what + " must be a non-negative integer, got '" + text + "'");
}

std::vector<std::uint64_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_count(item, what));
  }
  return out;
}

void emit(const Globals& g, const Table& table, RunConfig config) {
  config.set("format", g.format).set("output", g.output);
  OutputSink sink(g.output);
  write_table(sink.stream(), table, config, parse_format(g.format));
}

void emit_json(const Globals& g, const nlohmann::ordered_json& j) {
  OutputSink sink(g.output);
  sink.stream() << j.dump(2) << '\n';
}

unsigned threads_of(const Globals& g) { return resolve_threads(g.threads); }

struct GridArgs {
  std::string limit = "1000000";
  std::string eps = "zero";
  double y_min = 0.0;
  double y_max = 0.0;
  double step = 0.01;
  std::string max_points = "100000000";

  void add(CLI::App* sub) {
    sub->add_option("--limit", limit, "cutoff N (largest prime power included)")->capture_default_str();
    sub->add_option("--eps", eps, "zero | paper | <number>")->capture_default_str();
    sub->add_option("--y-min", y_min, "first ordinate")->required();
    sub->add_option("--y-max", y_max, "last ordinate")->required();
    sub->add_option("--step", step, "grid step")->capture_default_str();
    sub->add_option("--max-points", max_points, "refuse grids larger than this")->capture_default_str();
  }
  UniformGrid grid() const { return UniformGrid::covering(y_min, y_max, step, parse_count(max_points, "max-points")); }
  Cutoff cutoff() const { return Cutoff(parse_count(limit, "limit")); }
  EpsilonMode mode() const { return EpsilonMode::parse(eps); }
  void record(RunConfig& c) const {
    c.set("limit", cutoff().limit())
        .set("eps", mode().to_string())
        .set("y-min", y_min)
        .set("y-max", y_max)
        .set("step", step)
        .set("max-points", parse_count(max_points, "max-points"));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lspec: zero indicators of zeta and Dirichlet L-functions from prime powers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--output", g.output, "output file, '-' for stdout")->capture_default_str();
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  // sieve
  auto* sieve = app.add_subcommand("sieve", "list prime powers up to a cutoff");
  std::string sieve_limit;
  std::uint64_t sieve_q = 0;
  std::string sieve_classes;
  bool halve = false;
  sieve->add_option("--limit", sieve_limit, "cutoff N")->required();
  sieve->add_option("--modulus", sieve_q, "residue filter modulus");
  sieve->add_option("--classes", sieve_classes, "comma-separated residues coprime to the modulus");
  sieve->add_flag("--halve-boundary,!--no-halve-boundary", halve, "half weight for a term equal to the cutoff");
  sieve->callback([&] {
    const Cutoff c(parse_count(sieve_limit, "limit"), halve);
    ResidueFilter filter;
    RunConfig cfg("sieve");
    cfg.set("limit", c.limit());
    if (sieve_q != 0) {
      filter = ResidueFilter(sieve_q, parse_list(sieve_classes, "class"));
      std::string cls;
      for (auto a : filter.classes()) cls += (cls.empty() ? "" : ",") + std::to_string(a);
      cfg.set("modulus", sieve_q).set("classes", cls);
    } else if (!sieve_classes.empty()) {
      throw InvalidArgument("--classes needs --modulus");
    }
    cfg.set("halve-boundary", halve);
    emit(g, sieve_table(prime_powers(c, filter)), cfg);
  });

  // chars
  auto* chars = app.add_subcommand("chars", "Dirichlet characters modulo q as JSON");
  std::uint64_t chars_q = 0;
  chars->add_option("--modulus", chars_q, "modulus q")->required();
  chars->callback([&] {
    const auto t = character_group(chars_q);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& chi : t.characters()) {
      nlohmann::ordered_json j;
      j["label"] = chi.label();
      j["parity"] = chi.parity();
      j["conductor"] = chi.conductor();
      j["primitive"] = chi.primitive();
      j["order"] = chi.order();
      auto& gv = j["generator_values"] = nlohmann::ordered_json::array();
      for (const auto& f : t.group().factors()) {
        const auto v = chi(f.generator);
        const auto a = chi.angle(f.generator);
        gv.push_back({{"generator", f.generator},
                      {"re", v.real()},
                      {"im", v.imag()},
                      {"angle", std::to_string(a.value_or(0)) + "/" + std::to_string(t.phi())}});
      }
      arr.push_back(std::move(j));
    }
    emit_json(g, arr);
  });

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "evaluate an indicator over a uniform y grid");
  GridArgs scan_args;
  std::string target = "zeta";
  scan_args.add(scan_cmd);
  scan_cmd->add_option("--target", target, "zeta | char:q:label")->capture_default_str();
  scan_cmd->callback([&] {
    const auto t = parse_target(target);
    const IndicatorEngine engine(t, scan_args.cutoff(), scan_args.mode());
    const auto samples = engine.scan(scan_args.grid(), threads_of(g));
    RunConfig cfg("scan");
    scan_args.record(cfg);
    cfg.set("target", to_string(t)).set("threads", threads_of(g));
    emit(g, scan_table(samples), cfg);
  });

  // origin
  auto* origin = app.add_subcommand("origin", "origin identity residual at one or more cutoffs");
  std::string origin_limits;
  std::string origin_zeros;
  double origin_T = 1000.0;
  origin->add_option("--limit", origin_limits, "cutoff, or a comma-separated list")->required();
  origin->add_option("--zeros", origin_zeros, "zeta zero table for the zero-side column");
  origin->add_option("--T", origin_T, "height bound for the zero-side sum")->capture_default_str();
  origin->callback([&] {
    const auto limits = parse_list(origin_limits, "limit");
    std::optional<ZeroTable> zeros;
    if (!origin_zeros.empty()) zeros = load_zeros(origin_zeros, guess_zero_format(origin_zeros));
    Table t{{"limit", "x", "residual", "zero_side"}, {}};
    std::string ls;
    for (auto l : limits) {
      const Cutoff c(l);
      ls += (ls.empty() ? "" : ",") + std::to_string(l);
      t.rows.push_back({l, c.x(), origin_identity(c),
                        zeros ? Cell(zero_side_origin_sum(c.x(), origin_T, *zeros)) : Cell(std::monostate{})});
    }
    RunConfig cfg("origin");
    cfg.set("limit", ls);
    if (zeros) cfg.set("zeros", origin_zeros).set("T", origin_T);
    emit(g, t, cfg);
  });

  // decompose
  auto* decompose = app.add_subcommand("decompose", "residue-class indicator via the character table");
  GridArgs dec_args;
  std::uint64_t dec_q = 0, dec_a = 0;
  bool exact = true;
  dec_args.add(decompose);
  decompose->add_option("--modulus", dec_q, "modulus q")->required();
  decompose->add_option("--class", dec_a, "residue class a coprime to q")->required();
  decompose->add_flag("--exact-compensation,!--no-exact-compensation", exact,
                      "apply the exact compensation terms (default on)");
  decompose->callback([&] {
    const DecompositionEngine engine(dec_q, dec_args.cutoff(), dec_args.mode());
    if (!engine.table().residue_index(dec_a)) {
      throw InvalidArgument("class " + std::to_string(dec_a) + " is not coprime to " + std::to_string(dec_q));
    }
    std::vector<ClassIndicatorSample> samples;
    for (const auto& v : engine.class_sums(dec_args.grid(), threads_of(g))) {
      samples.push_back(engine.class_indicator(dec_a, v, exact));
    }
    RunConfig cfg("decompose");
    cfg.set("modulus", dec_q).set("class", dec_a).set("exact-compensation", exact);
    dec_args.record(cfg);
    cfg.set("threads", threads_of(g));
    emit(g, class_table(samples), cfg);
  });

  // qsplit
  auto* qsplit = app.add_subcommand("qsplit", "quadratic split S+ / S- for a real primitive character");
  GridArgs qs_args;
  std::uint64_t qs_q = 0;
  std::size_t qs_label = 0;
  qs_args.add(qsplit);
  qsplit->add_option("--modulus", qs_q, "modulus q")->required();
  qsplit->add_option("--char-label", qs_label, "character label mod q")->required();
  qsplit->callback([&] {
    const DecompositionEngine engine(qs_q, qs_args.cutoff(), qs_args.mode());
    const auto& chi = engine.table()[qs_label];
    Table t{{"y", "s_plus_re", "s_plus_im", "s_minus_re", "s_minus_im", "zeta_row_total", "zeta_compensation",
             "chi_row_total"},
            {}};
    for (const auto& v : engine.class_sums(qs_args.grid(), threads_of(g))) {
      const auto s = engine.quadratic(chi, v);
      t.rows.push_back({s.y, s.s_plus.real(), s.s_plus.imag(), s.s_minus.real(), s.s_minus.imag(),
                        s.zeta_row.total, s.zeta_row.compensation, s.chi_row.total});
    }
    RunConfig cfg("qsplit");
    cfg.set("modulus", qs_q).set("char-label", static_cast<std::uint64_t>(qs_label));
    qs_args.record(cfg);
    cfg.set("threads", threads_of(g));
    emit(g, t, cfg);
  });

  // landau
  auto* landau = app.add_subcommand("landau", "Landau's sum over zeta zeros");
  double lx = 2.0, lT = 600.0;
  std::string lzeros;
  landau->add_option("--x", lx, "x > 1")->required();
  landau->add_option("--T", lT, "height bound")->required();
  landau->add_option("--zeros", lzeros, "zeta zero table")->required();
  landau->callback([&] {
    const auto table = load_zeros(lzeros, guess_zero_format(lzeros));
    const auto r = landau_sum(lx, lT, table);
    if (r.truncated) std::cerr << "warning: T exceeds the last ordinate in " << lzeros << "\n";
    RunConfig cfg("landau");
    cfg.set("x", lx).set("T", lT).set("zeros", lzeros).set("output", g.output);
    nlohmann::ordered_json j;
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["predicted_re"] = r.predicted_re;
    j["count"] = r.count;
    j["truncated"] = r.truncated;
    j["config"] = cfg.to_json();
    emit_json(g, j);
  });

  // match
  auto* match = app.add_subcommand("match", "detect spikes in a scan CSV and match them to zeros");
  std::string mscan, mzeros;
  double frac = 0.5;
  std::optional<double> window;
  match->add_option("--scan", mscan, "scan or decompose CSV")->required();
  match->add_option("--zeros", mzeros, "zero table");
  match->add_option("--depth-frac", frac, "spike threshold as a fraction of the predicted depth")->capture_default_str();
  match->add_option("--window", window, "match window (default 1.5 grid steps)");
  match->callback([&] {
    const auto samples = read_scan_csv(mscan);
    std::optional<ZeroTable> table;
    if (!mzeros.empty()) table = load_zeros(mzeros, guess_zero_format(mzeros));
    const auto spikes = detect_spikes(samples, {frac, window}, table ? &*table : nullptr);
    RunConfig cfg("match");
    cfg.set("scan", mscan).set("depth-frac", frac);
    if (!mzeros.empty()) cfg.set("zeros", mzeros);
    if (window) cfg.set("window", *window);
    emit(g, spike_table(spikes), cfg);
  });

  // figure
  auto* figure = app.add_subcommand("figure", "write the data panels of one figure");
  FigureRequest freq;
  std::string flimit = "1000000";
  figure->add_option("--id", freq.id, "fig1 .. fig5")->required()->check(CLI::IsMember(figure_ids()));
  figure->add_option("--limit", flimit, "cutoff N")->capture_default_str();
  figure->add_option("--zeros-dir", freq.zeros_dir, "directory with the zero tables")->required();
  figure->add_option("--trace-points", freq.trace_points, "cutoffs per pointwise trace")->capture_default_str();
  figure->callback([&] {
    freq.limit = parse_count(flimit, "limit");
    freq.threads = threads_of(g);
    freq.out_dir = g.output == "-" ? "." : g.output;
    const auto manifest = reproduce_figure(freq);
    for (const auto& p : manifest["panels"]) std::cout << (std::filesystem::path(freq.out_dir) / p["file"].get<std::string>()).string() << "\n";
  });

  // validate
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  std::string suite = "fast";
  AcceptanceOptions aopt;
  validate->add_option("--suite", suite, "fast | full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  validate->add_option("--zeros-dir", aopt.zeros_dir, "directory with the zero tables")->required();
  validate->add_option("--seed", aopt.seed, "seed for the randomized checks")->capture_default_str();
  validate->add_option("--only", aopt.only, "run only these criteria");
  int failures = 0;
  validate->callback([&] {
    aopt.fast = suite == "fast";
    aopt.threads = threads_of(g);
    OutputSink sink(g.output);
    const auto results = run_acceptance(aopt, [&](const CriterionResult& r) {
      sink.stream() << format_result(r) << std::endl;
    });
    for (const auto& r : results) failures += !r.pass;
    sink.stream() << (failures ? "FAILED " : "OK ") << results.size() - failures << "/" << results.size()
                  << " criteria passed (" << suite << " suite)\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return failures ? 1 : 0;
}
