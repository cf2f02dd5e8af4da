#include "align/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace align {

namespace {

long long upper_index(int n, int i, int j) {
  // row-major upper triangle: offset of row i, then j - i - 1
  if (i > j) std::swap(i, j);
  long long row_off = static_cast<long long>(i) * n - static_cast<long long>(i) * (i + 1) / 2;
  return row_off + (j - i - 1);
}

}  // namespace

ModelSpec::ModelSpec(int n, double rho_e, std::vector<double> upper_p)
    : n_(n), rho_e_(rho_e), p_(std::move(upper_p)) {
  if (n < 2) throw DimensionError("model needs at least two vertices");
  if (static_cast<long long>(p_.size()) != pair_count(n))
    throw DimensionError("bernoulli parameter count must equal C(n,2)");
  if (!(rho_e >= 0.0 && rho_e <= 1.0))
    throw UndefinedError("edge correlation must lie in [0,1]");
  bool any_nonzero = false, any_nonone = false;
  for (double v : p_) {
    if (!(v >= 0.0 && v <= 1.0))
      throw UndefinedError("bernoulli parameters must lie in [0,1]");
    if (v > 0.0) any_nonzero = true;
    if (v < 1.0) any_nonone = true;
  }
  if (!any_nonzero || !any_nonone)
    throw UndefinedError(
        "bernoulli parameters all 0 or all 1: heterogeneity correlation undefined");
}

double ModelSpec::p(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw DimensionError("bernoulli parameter index out of range");
  return p_[static_cast<size_t>(upper_index(n_, i, j))];
}

ParamStats param_stats(const ModelSpec& spec) {
  const auto p = spec.upper();
  const double count = static_cast<double>(p.size());
  double mu = 0;
  for (double v : p) mu += v;
  mu /= count;
  double sigma2 = 0;
  for (double v : p) sigma2 += (v - mu) * (v - mu);
  sigma2 /= count;
  ParamStats st;
  st.mu = mu;
  st.sigma2 = sigma2;
  st.rho_h = sigma2 / (mu * (1.0 - mu));
  st.rho_t = 1.0 - (1.0 - spec.rho_e()) * (1.0 - st.rho_h);
  return st;
}

JointEdgeDistribution joint_edge_distribution(double p, double rho_e) {
  JointEdgeDistribution j;
  double pq = p * (1.0 - p);
  j.p11 = p * p + rho_e * pq;
  j.p10 = (1.0 - rho_e) * pq;
  j.p01 = j.p10;
  j.p00 = (1.0 - p) * (1.0 - p) + rho_e * pq;
  return j;
}

std::pair<Graph, Graph> sample_pair(const ModelSpec& spec, Rng& rng) {
  const int n = spec.n();
  GraphBuilder bg(n), bh(n);
  const auto p = spec.upper();
  const double rho = spec.rho_e();
  size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx) {
      double pij = p[idx];
      bool ge = rng.bernoulli(pij);
      bool he = rng.bernoulli(rho * (ge ? 1.0 : 0.0) + (1.0 - rho) * pij);
      if (ge) bg.add_edge(i, j);
      if (he) bh.add_edge(i, j);
    }
  return {bg.build(), bh.build()};
}

double rho_h_ceiling(double p_center) {
  if (!(p_center > 0.0 && p_center < 1.0))
    throw UndefinedError("p_center must lie strictly inside (0,1)");
  double lo = std::min(p_center, 1.0 - p_center);
  double hi = std::max(p_center, 1.0 - p_center);
  return lo / (3.0 * hi);
}

double delta_for_rho_h(double p_center, double rho_h_target) {
  double ceiling = rho_h_ceiling(p_center);
  if (rho_h_target < 0.0)
    throw UndefinedError("rho_h target must be nonnegative");
  if (rho_h_target > ceiling * (1.0 + 1e-12))
    throw UndefinedError("rho_h target above the attainable ceiling for this p_center");
  double delta = std::sqrt(3.0 * rho_h_target * p_center * (1.0 - p_center));
  return std::min(delta, std::min(p_center, 1.0 - p_center));
}

ModelSpec sample_uniform_family(const UniformFamilySpec& spec, Rng& rng) {
  if (!(spec.p_center > 0.0 && spec.p_center < 1.0))
    throw UndefinedError("p_center must lie strictly inside (0,1)");
  if (spec.delta < 0.0 || spec.delta > std::min(spec.p_center, 1.0 - spec.p_center) + 1e-12)
    throw UndefinedError("delta must keep the parameter interval inside [0,1]");
  std::vector<double> p(static_cast<size_t>(pair_count(spec.n)));
  for (double& v : p) v = rng.uniform(spec.p_center - spec.delta, spec.p_center + spec.delta);
  return ModelSpec(spec.n, spec.rho_e, std::move(p));
}

void write_model(std::ostream& out, const ModelSpec& spec) {
  char buf[64];
  out << "n " << spec.n() << "\n";
  std::snprintf(buf, sizeof buf, "%.15g", spec.rho_e());
  out << "rho_e " << buf << "\n";
  const auto p = spec.upper();
  size_t idx = 0;
  for (int i = 0; i < spec.n() - 1; ++i) {
    for (int j = i + 1; j < spec.n(); ++j, ++idx) {
      std::snprintf(buf, sizeof buf, "%.15g", p[idx]);
      out << buf << (j + 1 < spec.n() ? " " : "");
    }
    out << "\n";
  }
}

void write_model_file(const std::string& path, const ModelSpec& spec) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_model(out, spec);
}

ModelSpec read_model(std::istream& in) {
  std::string tok;
  int n = 0;
  double rho_e = 0;
  if (!(in >> tok) || tok != "n" || !(in >> n) || n < 2)
    throw ParseError("model file must start with 'n <count>'");
  if (!(in >> tok) || tok != "rho_e" || !(in >> rho_e))
    throw ParseError("model file needs 'rho_e <value>'");
  std::vector<double> p(static_cast<size_t>(pair_count(n)));
  for (double& v : p)
    if (!(in >> v)) throw ParseError("model file truncated: expected C(n,2) parameters");
  return ModelSpec(n, rho_e, std::move(p));
}

ModelSpec read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_model(in);
}

}  // namespace align
