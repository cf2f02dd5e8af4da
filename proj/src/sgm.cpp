#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "align/lap.hpp"
#include "align/matching.hpp"

namespace align {

DoublyStochastic DoublyStochastic::barycenter(int order) {
  DoublyStochastic d(order);
  double v = 1.0 / order;
  for (double& x : d.a) x = v;
  return d;
}

DoublyStochastic DoublyStochastic::from_permutation(const Permutation& p) {
  DoublyStochastic d(p.size());
  for (int i = 0; i < p.size(); ++i) d.at(i, p(i)) = 1.0;
  return d;
}

bool DoublyStochastic::is_valid(double tol) const {
  for (double x : a)
    if (!(x >= -tol && x <= 1.0 + tol)) return false;
  for (int i = 0; i < m; ++i) {
    double rs = 0, cs = 0;
    for (int j = 0; j < m; ++j) {
      rs += at(i, j);
      cs += at(j, i);
    }
    if (std::abs(rs - 1.0) > tol || std::abs(cs - 1.0) > tol) return false;
  }
  return true;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0;
  for (size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

// seed-adjacency agreement profits: entry (i,j) counts seeds adjacent to
// ambiguous vertex i in g and to ambiguous vertex j in h, doubled (the two
// seed blocks of the objective contribute identically).
std::vector<double> seed_profit(const SeededPair& pair) {
  const int s = pair.seeds, m = pair.ambiguous();
  const int words = (s + 63) / 64;
  const uint64_t tail_mask =
      (s & 63) ? ((uint64_t{1} << (s & 63)) - 1) : ~uint64_t{0};
  std::vector<double> k(static_cast<size_t>(m) * m, 0.0);
  if (s == 0) return k;
  for (int i = 0; i < m; ++i) {
    const uint64_t* ga = pair.g.row(s + i);
    for (int j = 0; j < m; ++j) {
      const uint64_t* hb = pair.h.row(s + j);
      long long c = 0;
      for (int w = 0; w < words; ++w) {
        uint64_t x = ga[w] & hb[w];
        if (w == words - 1) x &= tail_mask;
        c += std::popcount(x);
      }
      k[static_cast<size_t>(i) * m + j] = 2.0 * static_cast<double>(c);
    }
  }
  return k;
}

}  // namespace

MatchResult sgm_match(const SeededPair& pair, const SgmConfig& cfg) {
  const int s = pair.seeds;
  const int m = pair.ambiguous();
  if (m < 1) throw DimensionError("seeded matching needs at least one ambiguous vertex");
  auto t0 = std::chrono::steady_clock::now();

  MatchResult result;
  LapSolver lap;

  BitMatrix a22 = BitMatrix::from_block(pair.g, s, s, m, m);
  BitMatrix b22 = BitMatrix::from_block(pair.h, s, s, m, m);
  std::vector<double> seed_k = seed_profit(pair);

  DoublyStochastic d = cfg.init == SgmConfig::Init::Identity
                           ? DoublyStochastic::from_permutation(Permutation::identity(m))
                           : DoublyStochastic::barycenter(m);

  const size_t mm = static_cast<size_t>(m) * m;
  std::vector<double> ad(mm), adb(mm), ar(mm), arb(mm), r(mm);
  SquareMatrix grad(m);

  bit_dense_mul(a22, d.a.data(), m, ad.data());
  dense_bit_mul(ad.data(), m, b22, adb.data());
  double f = dot(d.a, seed_k) + dot(d.a, adb);
  if (cfg.objective_trace) cfg.objective_trace->push_back(f);

  for (int it = 0; it < cfg.max_iter; ++it) {
    if (cfg.validate_iterates && !d.is_valid())
      throw std::logic_error("frank-wolfe iterate left the doubly stochastic polytope");

    for (size_t k = 0; k < mm; ++k) grad.a[k] = seed_k[k] + 2.0 * adb[k];
    LapResult q = lap.solve_max(grad);
    ++result.work.lap_calls;

    for (size_t k = 0; k < mm; ++k) r[k] = -d.a[k];
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i) * m + q.perm(i)] += 1.0;

    bit_dense_mul(a22, r.data(), m, ar.data());
    dense_bit_mul(ar.data(), m, b22, arb.data());

    double c1 = dot(r, seed_k) + 2.0 * dot(r, adb);
    double c2 = dot(r, arb);
    double alpha;
    if (c2 < 0.0)
      alpha = std::clamp(-c1 / (2.0 * c2), 0.0, 1.0);
    else
      alpha = (c1 + c2 > 0.0) ? 1.0 : 0.0;

    ++result.work.fw_iterations;
    if (alpha == 0.0) break;

    for (size_t k = 0; k < mm; ++k) d.a[k] += alpha * r[k];
    for (size_t k = 0; k < mm; ++k) ad[k] += alpha * ar[k];
    for (size_t k = 0; k < mm; ++k) adb[k] += alpha * arb[k];
    double f_new = f + c1 * alpha + c2 * alpha * alpha;
    if (cfg.objective_trace) cfg.objective_trace->push_back(f_new);
    double improvement = f_new - f;
    f = f_new;
    if (improvement <= cfg.tol * std::max(1.0, std::abs(f))) break;
  }

  // project the relaxed solution back to a permutation
  SquareMatrix proj(m);
  proj.a = d.a;
  LapResult final = lap.solve_max(proj);
  ++result.work.lap_calls;

  result.phi_amb = final.perm;
  result.objective = seed_split_disagreements(pair, result.phi_amb).total();
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

bool is_matchable(const MatchResult& result) { return result.phi_amb.is_identity(); }

}  // namespace align
