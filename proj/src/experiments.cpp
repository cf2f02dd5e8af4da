#include "align/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

#include "align/kernels.hpp"
#include "align/strength.hpp"

namespace align {

const char* kReplicateCsvHeader =
    "experiment,cell_id,replicate,rho_e,rho_h_target,rho_h_realized,rho_T_realized,"
    "p_center,n,s,m,matched,objective,d_identity,strength_identity,bnb_nodes,"
    "lap_calls,fw_iterations,wall_time_s,seed";

const char* kSummaryCsvHeader =
    "experiment,cell_id,rho_e,rho_h_target,rho_T_target,rho_h_realized_mean,"
    "rho_T_realized_mean,p_center,n,s,m,replicates,matched_count,classification,"
    "mean_objective,mean_d_identity,mean_strength_identity,mean_bnb_nodes,"
    "geomean_bnb_nodes,mean_lap_calls,mean_fw_iterations,mean_wall_time_s";

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Green: return "green";
    case Classification::Yellow: return "yellow";
    case Classification::Red: return "red";
    default: return "invalid";
  }
}

Classification classify(int matched, int replicates) {
  const int failures = replicates - matched;
  if (failures == 0) return Classification::Green;
  if (static_cast<long long>(failures) * 60 <= 5LL * replicates) return Classification::Yellow;
  return Classification::Red;
}

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_wall(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::vector<ConvergenceRecord> run_convergence(const ConvergenceConfig& cfg) {
  if (cfg.replicates < 1) throw DimensionError("need at least one replicate");
  if (!(cfg.p_center > 0.0 && cfg.p_center < 1.0))
    throw UndefinedError("p_center must lie strictly inside (0,1)");
  if (cfg.delta < 0.0 || cfg.delta > std::min(cfg.p_center, 1.0 - cfg.p_center) + 1e-12)
    throw UndefinedError("delta must keep the parameter interval inside [0,1]");
  std::vector<ConvergenceRecord> records(static_cast<size_t>(cfg.replicates));

  std::atomic<bool> failed{false};
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < cfg.replicates; ++r) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      double t0 = now_s();
      ConvergenceRecord rec;
      rec.replicate = r;
      rec.seed = derive_stream(cfg.master_seed, 0, static_cast<uint64_t>(r));
      Rng rng(rec.seed);
      UniformFamilySpec fam{cfg.n, cfg.p_center, cfg.delta, cfg.rho_e};
      ModelSpec model = sample_uniform_family(fam, rng);
      auto [g, h] = sample_pair(model, rng);
      ParamStats stats = param_stats(model);
      rec.mu = stats.mu;
      rec.sigma2 = stats.sigma2;
      rec.rho_h_realized = stats.rho_h;
      rec.rho_t_realized = stats.rho_t;
      rec.density_g = g.density();
      rec.density_h = h.density();
      rec.d_identity = disagreements_identity(g, h);
      rec.d_rate = static_cast<double>(rec.d_identity) / static_cast<double>(pair_count(cfg.n));
      rec.strength_identity = alignment_strength(g, h, Permutation::identity(cfg.n));
      rec.wall_time_s = cfg.record_timing ? now_s() - t0 : 0.0;
      records[static_cast<size_t>(r)] = rec;
    } catch (...) {
#pragma omp critical(align_convergence_err)
      if (!err) err = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (err) std::rethrow_exception(err);
  return records;
}

namespace {

struct CellTarget {
  int cell_id;
  double rho_e;
  double rho_h;
  double rho_t;
  bool valid;
  double delta;  // calibrated half-width, meaningful when valid
};

// shared replicate body for the grid and level-set sweeps
ReplicateRecord run_one_replicate(const CellTarget& cell, int rep, uint64_t master_seed,
                                  int n, int s, double p_center, MatcherKind matcher,
                                  const SgmConfig& sgm_cfg, const ExactConfig& exact_cfg,
                                  bool record_timing) {
  ReplicateRecord rec;
  rec.cell_id = cell.cell_id;
  rec.replicate = rep;
  rec.rho_e = cell.rho_e;
  rec.rho_h_target = cell.rho_h;
  rec.seed = derive_stream(master_seed, static_cast<uint64_t>(cell.cell_id),
                           static_cast<uint64_t>(rep));
  Rng rng(rec.seed);
  UniformFamilySpec fam{n, p_center, cell.delta, cell.rho_e};
  ModelSpec model = sample_uniform_family(fam, rng);
  auto [g, h] = sample_pair(model, rng);
  ParamStats stats = param_stats(model);
  rec.rho_h_realized = stats.rho_h;
  rec.rho_t_realized = stats.rho_t;
  rec.d_identity = disagreements_identity(g, h);
  rec.strength_identity = alignment_strength(g, h, Permutation::identity(n));

  SeededPair pair(std::move(g), std::move(h), s);
  MatchResult res = matcher == MatcherKind::Sgm ? sgm_match(pair, sgm_cfg)
                                                : exact_match(pair, exact_cfg);
  rec.matched = is_matchable(res);
  rec.objective = res.objective;
  rec.work = res.work;
  rec.wall_time_s = record_timing ? res.wall_time_s : 0.0;
  return rec;
}

std::vector<CellResult> run_cells(const std::vector<CellTarget>& cells, int replicates,
                                  uint64_t master_seed, int n, int s, double p_center,
                                  MatcherKind matcher, const SgmConfig& sgm_cfg,
                                  const ExactConfig& exact_cfg, bool record_timing) {
  if (replicates < 1) throw DimensionError("need at least one replicate");

  struct Task {
    int cell_index;
    int rep;
  };
  std::vector<Task> tasks;
  for (size_t ci = 0; ci < cells.size(); ++ci)
    if (cells[ci].valid)
      for (int r = 0; r < replicates; ++r)
        tasks.push_back({static_cast<int>(ci), r});

  std::vector<ReplicateRecord> records(tasks.size());
  const int task_count = static_cast<int>(tasks.size());
  std::atomic<bool> failed{false};
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < task_count; ++t) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const Task& task = tasks[static_cast<size_t>(t)];
      records[static_cast<size_t>(t)] =
          run_one_replicate(cells[static_cast<size_t>(task.cell_index)], task.rep,
                            master_seed, n, s, p_center, matcher, sgm_cfg, exact_cfg,
                            record_timing);
    } catch (...) {
#pragma omp critical(align_cells_err)
      if (!err) err = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (err) std::rethrow_exception(err);

  std::vector<CellResult> out(cells.size());
  size_t rec_idx = 0;
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    CellResult& cell = out[ci];
    cell.cell_id = cells[ci].cell_id;
    cell.rho_e = cells[ci].rho_e;
    cell.rho_h_target = cells[ci].rho_h;
    cell.rho_t_target = cells[ci].rho_t;
    cell.valid = cells[ci].valid;
    if (!cell.valid) continue;
    cell.replicates = replicates;
    cell.reps.assign(records.begin() + static_cast<long>(rec_idx),
                     records.begin() + static_cast<long>(rec_idx + static_cast<size_t>(replicates)));
    rec_idx += static_cast<size_t>(replicates);

    double sum_rh = 0, sum_rt = 0, sum_obj = 0, sum_did = 0, sum_str = 0;
    double sum_nodes = 0, sum_log_nodes = 0, sum_lap = 0, sum_fw = 0, sum_wall = 0;
    bool any_zero_nodes = false;
    for (const ReplicateRecord& r : cell.reps) {
      cell.matched_count += r.matched ? 1 : 0;
      sum_rh += r.rho_h_realized;
      sum_rt += r.rho_t_realized;
      sum_obj += static_cast<double>(r.objective);
      sum_did += static_cast<double>(r.d_identity);
      sum_str += r.strength_identity;
      sum_nodes += static_cast<double>(r.work.bnb_nodes);
      if (r.work.bnb_nodes > 0)
        sum_log_nodes += std::log(static_cast<double>(r.work.bnb_nodes));
      else
        any_zero_nodes = true;
      sum_lap += static_cast<double>(r.work.lap_calls);
      sum_fw += static_cast<double>(r.work.fw_iterations);
      sum_wall += r.wall_time_s;
    }
    const double cnt = static_cast<double>(replicates);
    cell.rho_h_realized_mean = sum_rh / cnt;
    cell.rho_t_realized_mean = sum_rt / cnt;
    cell.mean_objective = sum_obj / cnt;
    cell.mean_d_identity = sum_did / cnt;
    cell.mean_strength_identity = sum_str / cnt;
    cell.mean_bnb_nodes = sum_nodes / cnt;
    cell.geomean_bnb_nodes = any_zero_nodes ? 0.0 : std::exp(sum_log_nodes / cnt);
    cell.mean_lap_calls = sum_lap / cnt;
    cell.mean_fw_iterations = sum_fw / cnt;
    cell.mean_wall_time_s = sum_wall / cnt;
    cell.classification = classify(cell.matched_count, replicates);
  }
  return out;
}

}  // namespace

std::vector<CellResult> run_matchability_grid(const GridSpec& spec) {
  if (spec.rho_e_values.empty() || spec.rho_h_values.empty())
    throw DimensionError("grid needs at least one rho_e and one rho_h value");
  std::vector<CellTarget> cells;
  int id = 0;
  for (double re : spec.rho_e_values)
    for (double rh : spec.rho_h_values) {
      CellTarget c;
      c.cell_id = id++;
      c.rho_e = re;
      c.rho_h = rh;
      c.rho_t = 1.0 - (1.0 - re) * (1.0 - rh);
      try {
        c.delta = delta_for_rho_h(spec.p_center, rh);
        c.valid = true;
      } catch (const UndefinedError&) {
        c.delta = 0;
        c.valid = false;  // unattainable target; keep going
      }
      cells.push_back(c);
    }
  return run_cells(cells, spec.replicates, spec.master_seed, spec.n, spec.s,
                   spec.p_center, spec.matcher, spec.sgm, spec.exact,
                   spec.record_timing);
}

std::vector<CellResult> run_runtime_levelsets(const RuntimeConfig& cfg) {
  if (cfg.rho_t_levels.empty()) throw DimensionError("need at least one rho_T level");
  if (cfg.pairs_per_level < 1) throw DimensionError("need at least one pair per level");
  const double ceiling = rho_h_ceiling(cfg.p_center);
  std::vector<CellTarget> cells;
  int id = 0;
  for (double level : cfg.rho_t_levels) {
    // walk the level set from the max-heterogeneity endpoint to rho_h = 0
    double re_hi = level;
    double re_lo = std::max(0.0, 1.0 - (1.0 - level) / (1.0 - ceiling));
    for (int k = 0; k < cfg.pairs_per_level; ++k) {
      double t = cfg.pairs_per_level == 1
                     ? 1.0
                     : static_cast<double>(k) / (cfg.pairs_per_level - 1);
      double re = re_lo + (re_hi - re_lo) * t;
      double rh = re >= 1.0 ? 0.0 : 1.0 - (1.0 - level) / (1.0 - re);
      if (rh < 0 && rh > -1e-12) rh = 0;
      CellTarget c;
      c.cell_id = id++;
      c.rho_e = re;
      c.rho_h = rh;
      c.rho_t = level;
      try {
        c.delta = delta_for_rho_h(cfg.p_center, rh);
        c.valid = true;
      } catch (const UndefinedError&) {
        c.delta = 0;
        c.valid = false;
      }
      cells.push_back(c);
    }
  }
  return run_cells(cells, cfg.replicates, cfg.master_seed, cfg.m + cfg.s, cfg.s,
                   cfg.p_center, MatcherKind::Exact, cfg.exact.sgm, cfg.exact,
                   cfg.record_timing);
}

LevelSet level_set_curve(double c, int samples) {
  if (!(c >= 0.0 && c <= 1.0)) throw UndefinedError("total correlation must lie in [0,1]");
  LevelSet ls;
  ls.rho_t = c;
  if (c == 0.0 || samples <= 1) {
    ls.points.emplace_back(0.0, c);
    return ls;
  }
  for (int k = 0; k < samples; ++k) {
    double re = c * static_cast<double>(k) / (samples - 1);
    double rh = re >= 1.0 ? 0.0 : 1.0 - (1.0 - c) / (1.0 - re);
    if (rh < 0 && rh > -1e-12) rh = 0;
    ls.points.emplace_back(re, rh);
  }
  return ls;
}

// ---- CSV ----

namespace {

void write_replicate_row(std::ostream& out, const std::string& experiment,
                         double p_center, int n, int s, const ReplicateRecord& r,
                         bool has_matcher) {
  out << experiment << "," << r.cell_id << "," << r.replicate << "," << fmt_g(r.rho_e)
      << "," << fmt_g(r.rho_h_target) << "," << fmt_g(r.rho_h_realized) << ","
      << fmt_g(r.rho_t_realized) << "," << fmt_g(p_center) << "," << n << "," << s << ","
      << n - s << ",";
  if (has_matcher)
    out << (r.matched ? 1 : 0) << "," << r.objective << ",";
  else
    out << ",,";
  out << r.d_identity << "," << fmt_g(r.strength_identity) << ",";
  if (has_matcher)
    out << r.work.bnb_nodes << "," << r.work.lap_calls << "," << r.work.fw_iterations
        << ",";
  else
    out << ",,,";
  out << fmt_wall(r.wall_time_s) << "," << r.seed << "\n";
}

}  // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceConfig& cfg,
                           const std::vector<ConvergenceRecord>& records) {
  out << kReplicateCsvHeader << "\n";
  const double nominal_rho_h =
      cfg.delta * cfg.delta / (3.0 * cfg.p_center * (1.0 - cfg.p_center));
  for (const ConvergenceRecord& r : records) {
    ReplicateRecord rec;
    rec.cell_id = 0;
    rec.replicate = r.replicate;
    rec.rho_e = cfg.rho_e;
    rec.rho_h_target = nominal_rho_h;
    rec.rho_h_realized = r.rho_h_realized;
    rec.rho_t_realized = r.rho_t_realized;
    rec.d_identity = r.d_identity;
    rec.strength_identity = r.strength_identity;
    rec.wall_time_s = r.wall_time_s;
    rec.seed = r.seed;
    write_replicate_row(out, "convergence", cfg.p_center, cfg.n, 0, rec,
                        /*has_matcher=*/false);
  }
}

void write_replicates_csv(std::ostream& out, const std::string& experiment,
                          double p_center, int n, int s,
                          const std::vector<CellResult>& cells) {
  out << kReplicateCsvHeader << "\n";
  for (const CellResult& cell : cells)
    for (const ReplicateRecord& r : cell.reps)
      write_replicate_row(out, experiment, p_center, n, s, r, /*has_matcher=*/true);
}

void write_summary_csv(std::ostream& out, const std::string& experiment,
                       double p_center, int n, int s,
                       const std::vector<CellResult>& cells) {
  out << kSummaryCsvHeader << "\n";
  for (const CellResult& c : cells) {
    out << experiment << "," << c.cell_id << "," << fmt_g(c.rho_e) << ","
        << fmt_g(c.rho_h_target) << "," << fmt_g(c.rho_t_target) << ","
        << fmt_g(c.rho_h_realized_mean) << "," << fmt_g(c.rho_t_realized_mean) << ","
        << fmt_g(p_center) << "," << n << "," << s << "," << n - s << ","
        << c.replicates << "," << c.matched_count << ","
        << classification_name(c.classification) << "," << fmt_g(c.mean_objective)
        << "," << fmt_g(c.mean_d_identity) << "," << fmt_g(c.mean_strength_identity)
        << "," << fmt_g(c.mean_bnb_nodes) << "," << fmt_g(c.geomean_bnb_nodes) << ","
        << fmt_g(c.mean_lap_calls) << "," << fmt_g(c.mean_fw_iterations) << ","
        << fmt_wall(c.mean_wall_time_s) << "\n";
  }
}

}  // namespace align
