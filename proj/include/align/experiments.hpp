#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "align/matching.hpp"
#include "align/model.hpp"

namespace align {

// ---- identity-alignment convergence runs ----

struct ConvergenceConfig {
  int n = 600;
  double p_center = 0.5;
  double delta = 0.3;
  double rho_e = 0.3;
  int replicates = 20;
  uint64_t master_seed = 1;
  bool record_timing = true;  // off: wall_time_s written as 0 for byte-stable output
};

struct ConvergenceRecord {
  int replicate = 0;
  uint64_t seed = 0;
  double mu = 0, sigma2 = 0;
  double rho_h_realized = 0, rho_t_realized = 0;
  double density_g = 0, density_h = 0;
  long long d_identity = 0;
  double d_rate = 0;  // d_identity / C(n,2)
  double strength_identity = 0;
  double wall_time_s = 0;
};

std::vector<ConvergenceRecord> run_convergence(const ConvergenceConfig& cfg);

// ---- matchability grid and runtime level-set sweeps ----

enum class MatcherKind { Sgm, Exact };
enum class Classification { Green, Yellow, Red, Invalid };

const char* classification_name(Classification c);

struct ReplicateRecord {
  int cell_id = 0;
  int replicate = 0;
  uint64_t seed = 0;
  double rho_e = 0, rho_h_target = 0;
  double rho_h_realized = 0, rho_t_realized = 0;
  bool matched = false;
  long long objective = 0;
  long long d_identity = 0;
  double strength_identity = 0;
  WorkCounters work;
  double wall_time_s = 0;
};

struct CellResult {
  int cell_id = 0;
  double rho_e = 0;
  double rho_h_target = 0;
  double rho_t_target = 0;
  bool valid = true;  // false when the target rho_h is unattainable at this p
  int replicates = 0;
  int matched_count = 0;
  Classification classification = Classification::Invalid;
  double rho_h_realized_mean = 0;
  double rho_t_realized_mean = 0;
  double mean_objective = 0;
  double mean_d_identity = 0;
  double mean_strength_identity = 0;
  double mean_bnb_nodes = 0;
  double geomean_bnb_nodes = 0;
  double mean_lap_calls = 0;
  double mean_fw_iterations = 0;
  double mean_wall_time_s = 0;
  std::vector<ReplicateRecord> reps;
};

// Failure-rate thresholds: green = none failed, yellow = rate <= 5/60,
// red otherwise.
Classification classify(int matched, int replicates);

struct GridSpec {
  std::vector<double> rho_e_values;
  std::vector<double> rho_h_values;
  double p_center = 0.5;
  int n = 180;
  int s = 30;
  int replicates = 20;
  uint64_t master_seed = 1;
  MatcherKind matcher = MatcherKind::Sgm;
  SgmConfig sgm;
  ExactConfig exact;
  bool record_timing = true;
};

// One cell per (rho_e, rho_h) pair; per replicate: calibrate delta, draw the
// Bernoulli parameters and the graph pair, match, record. Cells whose rho_h
// target is unattainable at p_center are marked invalid and skipped.
// Replicates run in parallel; records and CSV bytes are identical for any
// thread count.
std::vector<CellResult> run_matchability_grid(const GridSpec& spec);

struct RuntimeConfig {
  std::vector<double> rho_t_levels;
  int pairs_per_level = 3;
  double p_center = 0.5;
  int m = 10;
  int s = 100;
  int replicates = 30;
  uint64_t master_seed = 1;
  ExactConfig exact;
  bool record_timing = true;
};

// For each total-correlation level, picks (rho_e, rho_h) pairs along the
// level set (from the max-attainable-rho_h endpoint to rho_h = 0) and runs
// the exact matcher, recording branch-and-bound work counters per cell.
std::vector<CellResult> run_runtime_levelsets(const RuntimeConfig& cfg);

// (rho_e, rho_h) pairs sharing total correlation c: rho_h = 1 - (1-c)/(1-rho_e)
// for rho_e in [0, c].
struct LevelSet {
  double rho_t = 0;
  std::vector<std::pair<double, double>> points;  // (rho_e, rho_h)
};

LevelSet level_set_curve(double c, int samples);

// ---- CSV output ----
// Per-replicate schema (fields not applicable to an experiment stay empty):
// experiment,cell_id,replicate,rho_e,rho_h_target,rho_h_realized,
// rho_T_realized,p_center,n,s,m,matched,objective,d_identity,
// strength_identity,bnb_nodes,lap_calls,fw_iterations,wall_time_s,seed

extern const char* kReplicateCsvHeader;
extern const char* kSummaryCsvHeader;

void write_convergence_csv(std::ostream& out, const ConvergenceConfig& cfg,
                           const std::vector<ConvergenceRecord>& records);
void write_replicates_csv(std::ostream& out, const std::string& experiment,
                          double p_center, int n, int s,
                          const std::vector<CellResult>& cells);
void write_summary_csv(std::ostream& out, const std::string& experiment,
                       double p_center, int n, int s,
                       const std::vector<CellResult>& cells);

}  // namespace align
