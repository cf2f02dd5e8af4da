#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "align/graph.hpp"
#include "align/rng.hpp"

namespace align {

// Edge-correlated Bernoulli pair distribution: both graphs share Bernoulli
// parameters {p_ij}, and for each pair the two edge indicators have Pearson
// correlation rho_e.
class ModelSpec {
 public:
  // upper_p holds p_ij for i<j in row-major order: (0,1), (0,2), ..., (n-2,n-1).
  // Rejects parameters that are all 0 or all 1 (heterogeneity correlation
  // would be undefined).
  ModelSpec(int n, double rho_e, std::vector<double> upper_p);

  int n() const { return n_; }
  double rho_e() const { return rho_e_; }
  std::span<const double> upper() const { return p_; }

  double p(int i, int j) const;  // unordered pair, i != j

 private:
  int n_ = 0;
  double rho_e_ = 0;
  std::vector<double> p_;
};

struct ParamStats {
  double mu = 0;      // mean of the Bernoulli parameters
  double sigma2 = 0;  // population variance of the Bernoulli parameters
  double rho_h = 0;   // sigma2 / (mu (1 - mu))
  double rho_t = 0;   // 1 - (1 - rho_e)(1 - rho_h)
};

ParamStats param_stats(const ModelSpec& spec);

// Joint law of the two edge indicators of one pair.
struct JointEdgeDistribution {
  double p11 = 0;  // edge in both
  double p10 = 0;  // edge in first only
  double p01 = 0;  // edge in second only
  double p00 = 0;  // edge in neither
};

JointEdgeDistribution joint_edge_distribution(double p, double rho_e);

// Draws (G, H): per pair, the G indicator is Bernoulli(p_ij) and the H
// indicator, conditioned on it, is Bernoulli(rho_e * g + (1 - rho_e) * p_ij).
std::pair<Graph, Graph> sample_pair(const ModelSpec& spec, Rng& rng);

// Family with p_ij drawn i.i.d. Uniform(p_center - delta, p_center + delta).
struct UniformFamilySpec {
  int n = 0;
  double p_center = 0;
  double delta = 0;
  double rho_e = 0;
};

// Largest heterogeneity correlation reachable by the uniform family at a
// given center: (1/3) * min{p, 1-p} / max{p, 1-p}.
double rho_h_ceiling(double p_center);

// Half-width delta with expected rho_h equal to the target,
// delta = sqrt(3 * target * p (1-p)). Throws when the target exceeds the
// attainable ceiling.
double delta_for_rho_h(double p_center, double rho_h_target);

ModelSpec sample_uniform_family(const UniformFamilySpec& spec, Rng& rng);

// key-value header (n, rho_e), then upper-triangle rows of p_ij
void write_model(std::ostream& out, const ModelSpec& spec);
void write_model_file(const std::string& path, const ModelSpec& spec);
ModelSpec read_model(std::istream& in);
ModelSpec read_model_file(const std::string& path);

}  // namespace align
