// Command-line front end: sampling, alignment strength, matching, standard
// form export, experiment sweeps, level sets and SVG plots.

#include <omp.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "align/bilp.hpp"
#include "align/experiments.hpp"
#include "align/kernels.hpp"
#include "align/matching.hpp"
#include "align/model.hpp"
#include "align/strength.hpp"
#include "align/svg.hpp"

namespace {

using namespace align;

// numeric flags accept decimals or exact rationals like "23/120"
double parse_number(const std::string& text) {
  size_t slash = text.find('/');
  if (slash != std::string::npos) {
    size_t used = 0;
    long long num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw ParseError("bad rational: " + text);
    long long den = std::stoll(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1 || den == 0)
      throw ParseError("bad rational: " + text);
    return static_cast<double>(num) / static_cast<double>(den);
  }
  size_t used = 0;
  double v = std::stod(text, &used);
  if (used != text.size()) throw ParseError("bad number: " + text);
  return v;
}

// "a,b,c" as values, or "lo:hi:count" as an inclusive evenly spaced grid
std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream ss(text);
    std::string lo_s, hi_s, count_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, count_s))
      throw ParseError("grid spec must be lo:hi:count");
    double lo = parse_number(lo_s), hi = parse_number(hi_s);
    int count = std::stoi(count_s);
    if (count < 1) throw ParseError("grid count must be positive");
    for (int k = 0; k < count; ++k)
      out.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
    return out;
  }
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw ParseError("empty value list");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  return out;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// callbacks run once parsing is complete, so the final --threads value is set
void apply_threads(int threads) {
  if (threads <= 0)
    if (const char* env = std::getenv("ALIGN_THREADS")) threads = std::atoi(env);
  if (threads > 0) omp_set_num_threads(threads);
}

struct PairInput {
  std::string pair_file, g_file, h_file;
  int seeds = -1;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--pair", pair_file, "pair file (two edge lists plus seed count)");
    cmd->add_option("--g", g_file, "edge list of the first graph");
    cmd->add_option("--h", h_file, "edge list of the second graph");
    cmd->add_option("--s", seeds, "seed count (with --g/--h)");
  }

  SeededPair load() const {
    if (!pair_file.empty()) {
      if (!g_file.empty() || !h_file.empty() || seeds >= 0)
        throw ParseError("use either --pair or --g/--h/--s, not both");
      return read_pair_file(pair_file);
    }
    if (g_file.empty() || h_file.empty() || seeds < 0)
      throw ParseError("need --pair or all of --g, --h, --s");
    return SeededPair(read_edge_list_file(g_file), read_edge_list_file(h_file), seeds);
  }
};

void print_match_csv(std::ostream& out, const char* matcher, const SeededPair& pair,
                     const MatchResult& res) {
  out << "matcher,n,s,m,permutation,objective,matchable,fw_iterations,bnb_nodes,"
         "lap_calls,wall_time_s,tie_break\n";
  out << matcher << "," << pair.n() << "," << pair.seeds << "," << pair.ambiguous()
      << ",";
  for (int i = 0; i < res.phi_amb.size(); ++i)
    out << (i ? " " : "") << res.phi_amb(i) + 1;
  char wall[40];
  std::snprintf(wall, sizeof wall, "%.6f", res.wall_time_s);
  out << "," << res.objective << "," << (is_matchable(res) ? 1 : 0) << ","
      << res.work.fw_iterations << "," << res.work.bnb_nodes << ","
      << res.work.lap_calls << "," << wall << ","
      << (res.tie_break_identity_first ? "identity_first" : "unspecified") << "\n";
}

void warn_if_expensive(long long instances, int n) {
  double pair_ops = static_cast<double>(instances) * n * n;
  if (pair_ops > 5e10)
    std::cerr << "warning: this configuration is near publication scale and may run"
                 " for hours; consider fewer cells, replicates or vertices\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

// ---- subcommand configs ----

struct SampleArgs {
  int n = 0, s = 0;
  std::string rho_e, p = "0.5", delta = "0";
  std::string model_file;
  uint64_t seed = 0;
  std::string out_g, out_h, out_pair, out_model;
};

struct StrengthArgs {
  std::string g_file, h_file, phi_file;
};

struct MatchArgs {
  PairInput input;
  int max_iter = 30;
  std::string tol = "1e-6";
  std::string init = "barycenter";
  int cap = 14;
  bool no_incumbent = false;
  std::string out;
};

struct ConvergenceArgs {
  int n = 600, replicates = 20;
  std::string p = "0.5", delta = "0.3", rho_e = "0.3";
  uint64_t seed = 1;
  std::string out;
  bool no_timing = false;
};

struct MatchabilityArgs {
  std::string rho_e = "0:1/3:9", rho_h = "0:1/3:9", p = "1/2";
  int n = 180, s = 30, replicates = 20;
  uint64_t seed = 1;
  std::string matcher = "sgm";
  int max_iter = 30;
  std::string tol = "1e-6";
  int cap = 14;
  std::string out, summary, svg, svg_levels;
  bool no_timing = false;
};

struct RuntimeArgs {
  std::string levels = "2/9,3/9,4/9,5/9,6/9,7/9,8/9", p = "1/2";
  int pairs_per_level = 3, m = 10, s = 100, replicates = 30;
  uint64_t seed = 1;
  int cap = 14;
  bool no_incumbent = false;
  std::string out, summary, svg;
  bool no_timing = false;
};

struct LevelsetArgs {
  std::string c;
  int samples = 100;
  std::string out;
};

struct PlotArgs {
  std::string summary, out, levels, title;
};

void run_sample(const SampleArgs& a) {
  Rng rng(a.seed);
  std::optional<ModelSpec> model;
  if (!a.model_file.empty()) {
    model = read_model_file(a.model_file);
  } else {
    if (a.rho_e.empty()) throw ParseError("sample needs --rho-e (or --model)");
    UniformFamilySpec fam{a.n, parse_number(a.p), parse_number(a.delta),
                          parse_number(a.rho_e)};
    model = sample_uniform_family(fam, rng);
  }
  auto [g, h] = sample_pair(*model, rng);
  if (!a.out_g.empty()) write_edge_list_file(a.out_g, g);
  if (!a.out_h.empty()) write_edge_list_file(a.out_h, h);
  if (!a.out_model.empty()) write_model_file(a.out_model, *model);
  if (!a.out_pair.empty()) write_pair_file(a.out_pair, SeededPair(g, h, a.s));
  if (a.out_g.empty() && a.out_h.empty() && a.out_pair.empty() && a.out_model.empty())
    throw ParseError("sample produced no output; pass --out-g/--out-h/--out-pair");
}

void run_strength(const StrengthArgs& a) {
  Graph g = read_edge_list_file(a.g_file);
  Graph h = read_edge_list_file(a.h_file);
  Permutation phi = a.phi_file.empty() ? Permutation::identity(g.n())
                                       : read_permutation_file(a.phi_file, g.n());
  long long d = disagreements(g, h, phi);
  std::cout << "strength,d,density_g,density_h,denominator\n";
  std::cout << fmt_g(alignment_strength(g, h, phi)) << "," << d << ","
            << fmt_g(g.density()) << "," << fmt_g(h.density()) << ","
            << fmt_g(strength_denominator(g, h)) << "\n";
}

void run_stats(const std::string& model_file) {
  ModelSpec model = read_model_file(model_file);
  ParamStats st = param_stats(model);
  std::cout << "n,rho_e,mu,sigma2,rho_h,rho_T\n";
  std::cout << model.n() << "," << fmt_g(model.rho_e()) << "," << fmt_g(st.mu) << ","
            << fmt_g(st.sigma2) << "," << fmt_g(st.rho_h) << "," << fmt_g(st.rho_t)
            << "\n";
}

void run_match(const MatchArgs& a, bool exact) {
  SeededPair pair = a.input.load();
  MatchResult res;
  if (exact) {
    ExactConfig cfg;
    cfg.max_ambiguous = a.cap;
    cfg.use_sgm_incumbent = !a.no_incumbent;
    cfg.sgm.max_iter = a.max_iter;
    cfg.sgm.tol = parse_number(a.tol);
    res = exact_match(pair, cfg);
  } else {
    SgmConfig cfg;
    cfg.max_iter = a.max_iter;
    cfg.tol = parse_number(a.tol);
    if (a.init == "identity")
      cfg.init = SgmConfig::Init::Identity;
    else if (a.init != "barycenter")
      throw ParseError("--init must be barycenter or identity");
    res = sgm_match(pair, cfg);
  }
  if (a.out.empty()) {
    print_match_csv(std::cout, exact ? "exact" : "sgm", pair, res);
  } else {
    auto out = open_out(a.out);
    print_match_csv(out, exact ? "exact" : "sgm", pair, res);
  }
}

void run_export_lp(const PairInput& input, const std::string& out_path) {
  SeededPair pair = input.load();
  BilpModel model = build_bilp(pair);
  if (out_path.empty()) {
    write_lp(std::cout, model);
  } else {
    write_lp_file(out_path, model);
  }
}

void run_experiment_convergence(const ConvergenceArgs& a) {
  ConvergenceConfig cfg;
  cfg.n = a.n;
  cfg.p_center = parse_number(a.p);
  cfg.delta = parse_number(a.delta);
  cfg.rho_e = parse_number(a.rho_e);
  cfg.replicates = a.replicates;
  cfg.master_seed = a.seed;
  cfg.record_timing = !a.no_timing;
  auto records = run_convergence(cfg);
  if (a.out.empty()) {
    write_convergence_csv(std::cout, cfg, records);
  } else {
    auto out = open_out(a.out);
    write_convergence_csv(out, cfg, records);
  }
}

void emit_svg(const std::string& path, const std::vector<CellResult>& cells,
              const std::vector<double>& levels, const std::string& title,
              bool label_nodes) {
  std::vector<GridPoint> points;
  for (const CellResult& c : cells) {
    GridPoint p;
    p.rho_e = c.rho_e;
    p.rho_h = c.rho_h_target;
    p.classification = c.valid ? c.classification : Classification::Invalid;
    if (label_nodes && c.valid) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.0f", c.mean_bnb_nodes);
      p.label = buf;
    }
    points.push_back(p);
  }
  GridPlotOptions opts;
  opts.level_curves = levels;
  opts.title = title;
  auto out = open_out(path);
  write_grid_svg(out, points, opts);
}

void run_experiment_matchability(const MatchabilityArgs& a) {
  GridSpec spec;
  spec.rho_e_values = parse_number_list(a.rho_e);
  spec.rho_h_values = parse_number_list(a.rho_h);
  spec.p_center = parse_number(a.p);
  spec.n = a.n;
  spec.s = a.s;
  spec.replicates = a.replicates;
  spec.master_seed = a.seed;
  spec.record_timing = !a.no_timing;
  spec.sgm.max_iter = a.max_iter;
  spec.sgm.tol = parse_number(a.tol);
  spec.exact.max_ambiguous = a.cap;
  if (a.matcher == "exact")
    spec.matcher = MatcherKind::Exact;
  else if (a.matcher != "sgm")
    throw ParseError("--matcher must be sgm or exact");
  warn_if_expensive(static_cast<long long>(spec.rho_e_values.size()) *
                        static_cast<long long>(spec.rho_h_values.size()) *
                        spec.replicates,
                    spec.n);
  auto cells = run_matchability_grid(spec);
  if (a.out.empty()) {
    write_replicates_csv(std::cout, "matchability", spec.p_center, spec.n, spec.s, cells);
  } else {
    auto out = open_out(a.out);
    write_replicates_csv(out, "matchability", spec.p_center, spec.n, spec.s, cells);
  }
  if (!a.summary.empty()) {
    auto out = open_out(a.summary);
    write_summary_csv(out, "matchability", spec.p_center, spec.n, spec.s, cells);
  }
  if (!a.svg.empty()) {
    std::vector<double> levels;
    if (!a.svg_levels.empty()) levels = parse_number_list(a.svg_levels);
    emit_svg(a.svg, cells, levels, "matchability sweep", /*label_nodes=*/false);
  }
}

void run_experiment_runtime(const RuntimeArgs& a) {
  RuntimeConfig cfg;
  cfg.rho_t_levels = parse_number_list(a.levels);
  cfg.pairs_per_level = a.pairs_per_level;
  cfg.p_center = parse_number(a.p);
  cfg.m = a.m;
  cfg.s = a.s;
  cfg.replicates = a.replicates;
  cfg.master_seed = a.seed;
  cfg.record_timing = !a.no_timing;
  cfg.exact.max_ambiguous = a.cap;
  cfg.exact.use_sgm_incumbent = !a.no_incumbent;
  warn_if_expensive(static_cast<long long>(cfg.rho_t_levels.size()) *
                        cfg.pairs_per_level * cfg.replicates * 50,
                    cfg.m + cfg.s);
  auto cells = run_runtime_levelsets(cfg);
  const int n = cfg.m + cfg.s;
  if (a.out.empty()) {
    write_replicates_csv(std::cout, "runtime", cfg.p_center, n, cfg.s, cells);
  } else {
    auto out = open_out(a.out);
    write_replicates_csv(out, "runtime", cfg.p_center, n, cfg.s, cells);
  }
  if (!a.summary.empty()) {
    auto out = open_out(a.summary);
    write_summary_csv(out, "runtime", cfg.p_center, n, cfg.s, cells);
  }
  if (!a.svg.empty())
    emit_svg(a.svg, cells, cfg.rho_t_levels, "exact matching work", /*label_nodes=*/true);
}

void run_levelset(const LevelsetArgs& a) {
  LevelSet ls = level_set_curve(parse_number(a.c), a.samples);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file = open_out(a.out);
    out = &file;
  }
  *out << "rho_e,rho_h\n";
  for (auto [re, rh] : ls.points) *out << fmt_g(re) << "," << fmt_g(rh) << "\n";
}

void run_plot(const PlotArgs& a) {
  std::ifstream in(a.summary);
  if (!in) throw ParseError("cannot open " + a.summary);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty summary csv");
  auto header = split_csv_line(line);
  auto col = [&](const std::string& name) {
    for (size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return static_cast<int>(k);
    throw ParseError("summary csv lacks column " + name);
  };
  int c_rho_e = col("rho_e"), c_rho_h = col("rho_h_target");
  int c_class = col("classification"), c_nodes = col("mean_bnb_nodes");
  int c_exp = col("experiment");
  std::vector<GridPoint> points;
  bool runtime = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    GridPoint p;
    p.rho_e = std::stod(fields[static_cast<size_t>(c_rho_e)]);
    p.rho_h = std::stod(fields[static_cast<size_t>(c_rho_h)]);
    const std::string& cls = fields[static_cast<size_t>(c_class)];
    p.classification = cls == "green"    ? Classification::Green
                       : cls == "yellow" ? Classification::Yellow
                       : cls == "red"    ? Classification::Red
                                         : Classification::Invalid;
    if (fields[static_cast<size_t>(c_exp)] == "runtime") {
      runtime = true;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.0f",
                    std::stod(fields[static_cast<size_t>(c_nodes)]));
      p.label = buf;
    }
    points.push_back(p);
  }
  GridPlotOptions opts;
  if (!a.levels.empty()) opts.level_curves = parse_number_list(a.levels);
  opts.title = !a.title.empty()           ? a.title
               : runtime                  ? std::string("exact matching work")
                                          : std::string("matchability sweep");
  auto out = open_out(a.out);
  write_grid_svg(out, points, opts);
}

// keeps -h free for the --h graph option
CLI::App* add_sub(CLI::App& parent, const std::string& name, const std::string& desc) {
  CLI::App* sub = parent.add_subcommand(name, desc);
  sub->set_help_flag("--help", "print help");
  sub->fallthrough();  // global flags like --threads may follow the subcommand
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlated graph pairs: alignment strength, seeded matching,"
               " and total-correlation experiments"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: ALIGN_THREADS env or hardware)");

  SampleArgs sample_args;
  auto* sample = add_sub(app, "sample", "draw a correlated graph pair");
  sample->add_option("--n", sample_args.n, "vertex count")->required();
  sample->add_option("--rho-e", sample_args.rho_e, "edge correlation");
  sample->add_option("--p", sample_args.p, "Bernoulli parameter center");
  sample->add_option("--delta", sample_args.delta, "uniform half-width");
  sample->add_option("--model", sample_args.model_file, "explicit model file instead of --p/--delta");
  sample->add_option("--seed", sample_args.seed, "random seed")->required();
  sample->add_option("--s", sample_args.s, "seed vertices for --out-pair");
  sample->add_option("--out-g", sample_args.out_g, "edge list output for G");
  sample->add_option("--out-h", sample_args.out_h, "edge list output for H");
  sample->add_option("--out-pair", sample_args.out_pair, "pair file output");
  sample->add_option("--out-model", sample_args.out_model, "drawn parameter output");
  sample->callback([&] {
    apply_threads(threads);
    run_sample(sample_args);
  });

  StrengthArgs strength_args;
  auto* strength = add_sub(app, "strength", "alignment strength of a bijection");
  strength->add_option("--g", strength_args.g_file, "edge list of G")->required();
  strength->add_option("--h", strength_args.h_file, "edge list of H")->required();
  strength->add_option("--phi", strength_args.phi_file,
                       "permutation file (default identity)");
  strength->callback([&] {
    apply_threads(threads);
    run_strength(strength_args);
  });

  std::string stats_model;
  auto* stats = add_sub(app, "stats", "parameter statistics of a model file");
  stats->add_option("--model", stats_model, "model file")->required();
  stats->callback([&] {
    apply_threads(threads);
    run_stats(stats_model);
  });

  MatchArgs sgm_args;
  auto* match_sgm = add_sub(app, "match-sgm", "approximate seeded matching");
  sgm_args.input.add_options(match_sgm);
  match_sgm->add_option("--max-iter", sgm_args.max_iter, "iteration cap");
  match_sgm->add_option("--tol", sgm_args.tol, "relative improvement tolerance");
  match_sgm->add_option("--init", sgm_args.init, "barycenter or identity");
  match_sgm->add_option("--out", sgm_args.out, "CSV output (default stdout)");
  match_sgm->callback([&] {
    apply_threads(threads);
    run_match(sgm_args, /*exact=*/false);
  });

  MatchArgs exact_args;
  auto* match_exact = add_sub(app, "match-exact", "exact seeded matching");
  exact_args.input.add_options(match_exact);
  match_exact->add_option("--cap", exact_args.cap, "ambiguous vertex cap");
  match_exact->add_flag("--no-incumbent", exact_args.no_incumbent,
                        "skip the approximate warm start");
  match_exact->add_option("--max-iter", exact_args.max_iter, "warm start iteration cap");
  match_exact->add_option("--tol", exact_args.tol, "warm start tolerance");
  match_exact->add_option("--out", exact_args.out, "CSV output (default stdout)");
  match_exact->callback([&] {
    apply_threads(threads);
    run_match(exact_args, /*exact=*/true);
  });

  PairInput lp_input;
  std::string lp_out;
  auto* export_lp = add_sub(app, "export-lp", "standard form model as an LP file");
  lp_input.add_options(export_lp);
  export_lp->add_option("--out", lp_out, "LP output (default stdout)");
  export_lp->callback([&] {
    apply_threads(threads);
    run_export_lp(lp_input, lp_out);
  });

  auto* experiment = add_sub(app, "experiment", "replicated sweeps");
  experiment->require_subcommand(1);

  ConvergenceArgs conv_args;
  auto* conv = add_sub(*experiment, 
      "convergence", "identity-alignment strength versus total correlation");
  conv->add_option("--n", conv_args.n, "vertex count");
  conv->add_option("--p", conv_args.p, "Bernoulli parameter center");
  conv->add_option("--delta", conv_args.delta, "uniform half-width");
  conv->add_option("--rho-e", conv_args.rho_e, "edge correlation");
  conv->add_option("--replicates", conv_args.replicates, "replicate count");
  conv->add_option("--seed", conv_args.seed, "master seed");
  conv->add_option("--out", conv_args.out, "per-replicate CSV (default stdout)");
  conv->add_flag("--no-timing", conv_args.no_timing, "zero the wall_time_s column");
  conv->callback([&] {
    apply_threads(threads);
    run_experiment_convergence(conv_args);
  });

  MatchabilityArgs grid_args;
  auto* grid = add_sub(*experiment, "matchability",
                                          "matchability over a correlation grid");
  grid->add_option("--rho-e", grid_args.rho_e, "values list or lo:hi:count grid");
  grid->add_option("--rho-h", grid_args.rho_h, "values list or lo:hi:count grid");
  grid->add_option("--p", grid_args.p, "Bernoulli parameter center");
  grid->add_option("--n", grid_args.n, "vertex count");
  grid->add_option("--s", grid_args.s, "seed count");
  grid->add_option("--replicates", grid_args.replicates, "replicates per cell");
  grid->add_option("--seed", grid_args.seed, "master seed");
  grid->add_option("--matcher", grid_args.matcher, "sgm or exact");
  grid->add_option("--max-iter", grid_args.max_iter, "matcher iteration cap");
  grid->add_option("--tol", grid_args.tol, "matcher tolerance");
  grid->add_option("--cap", grid_args.cap, "exact matcher ambiguous cap");
  grid->add_option("--out", grid_args.out, "per-replicate CSV (default stdout)");
  grid->add_option("--summary", grid_args.summary, "per-cell summary CSV");
  grid->add_option("--svg", grid_args.svg, "scatter plot output");
  grid->add_option("--svg-levels", grid_args.svg_levels, "rho_T curves to overlay");
  grid->add_flag("--no-timing", grid_args.no_timing, "zero the wall_time_s column");
  grid->callback([&] {
    apply_threads(threads);
    run_experiment_matchability(grid_args);
  });

  RuntimeArgs runtime_args;
  auto* runtime = add_sub(*experiment, 
      "runtime", "exact matching work along total-correlation level sets");
  runtime->add_option("--levels", runtime_args.levels, "rho_T levels");
  runtime->add_option("--pairs-per-level", runtime_args.pairs_per_level,
                      "(rho_e, rho_h) pairs per level");
  runtime->add_option("--p", runtime_args.p, "Bernoulli parameter center");
  runtime->add_option("--m", runtime_args.m, "ambiguous vertices");
  runtime->add_option("--s", runtime_args.s, "seed count");
  runtime->add_option("--replicates", runtime_args.replicates, "replicates per pair");
  runtime->add_option("--seed", runtime_args.seed, "master seed");
  runtime->add_option("--cap", runtime_args.cap, "exact matcher ambiguous cap");
  runtime->add_flag("--no-incumbent", runtime_args.no_incumbent,
                    "skip the approximate warm start");
  runtime->add_option("--out", runtime_args.out, "per-replicate CSV (default stdout)");
  runtime->add_option("--summary", runtime_args.summary, "per-cell summary CSV");
  runtime->add_option("--svg", runtime_args.svg, "scatter plot output");
  runtime->add_flag("--no-timing", runtime_args.no_timing, "zero the wall_time_s column");
  runtime->callback([&] {
    apply_threads(threads);
    run_experiment_runtime(runtime_args);
  });

  LevelsetArgs level_args;
  auto* levelset = add_sub(app, "levelset", "total-correlation level set curve");
  levelset->add_option("--c", level_args.c, "total correlation value")->required();
  levelset->add_option("--samples", level_args.samples, "sample count");
  levelset->add_option("--out", level_args.out, "CSV output (default stdout)");
  levelset->callback([&] {
    apply_threads(threads);
    run_levelset(level_args);
  });

  PlotArgs plot_args;
  auto* plot = add_sub(app, "plot", "summary CSV to SVG scatter");
  plot->add_option("--summary", plot_args.summary, "summary CSV input")->required();
  plot->add_option("--out", plot_args.out, "SVG output")->required();
  plot->add_option("--levels", plot_args.levels, "rho_T curves to overlay");
  plot->add_option("--title", plot_args.title, "plot title");
  plot->callback([&] {
    apply_threads(threads);
    run_plot(plot_args);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
