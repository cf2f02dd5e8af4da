#include <algorithm>
#include <bit>
#include <chrono>
#include <sstream>

#include "align/lap.hpp"
#include "align/matching.hpp"

namespace align {

namespace {

// depth-first search state for the exact matcher
struct BnbState {
  int m = 0;
  int s = 0;
  std::vector<long long> sa_cost;   // m x m seed-ambiguous disagreement counts
  std::vector<uint32_t> arow, brow; // ambiguous-block adjacency masks
  LapSolver lap;
  std::vector<long long> residual;  // scratch for bound subproblems
  std::vector<int> assign;          // assign[d] = slot of ambiguous vertex d
  std::vector<int> best_assign;
  long long best_val = 0;
  bool best_from_heuristic = true;
  uint32_t used_cols = 0;
  WorkCounters work;

  struct Child {
    int col;
    long long inc;
    long long bound;
  };
  std::vector<std::vector<Child>> children;  // per-depth scratch

  long long residual_bound(int depth, int skip_col) {
    // exact assignment optimum of the remaining seed-ambiguous costs;
    // future ambiguous-ambiguous costs are nonnegative, so this never
    // overestimates the completion cost
    const int k = m - depth - 1;
    if (k == 0) return 0;
    residual.resize(static_cast<size_t>(k) * k);
    std::vector<int> cols;
    cols.reserve(static_cast<size_t>(k));
    for (int j = 0; j < m; ++j)
      if (j != skip_col && !((used_cols >> j) & 1u)) cols.push_back(j);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        residual[static_cast<size_t>(a) * k + b] =
            sa_cost[static_cast<size_t>(depth + 1 + a) * m + cols[static_cast<size_t>(b)]];
    ++work.lap_calls;
    return lap.solve_min_value(k, residual.data());
  }

  long long incremental_cost(int depth, int col) const {
    long long inc = sa_cost[static_cast<size_t>(depth) * m + col];
    uint32_t ga = arow[static_cast<size_t>(depth)];
    uint32_t hb = brow[static_cast<size_t>(col)];
    for (int d = 0; d < depth; ++d) {
      bool ge = (ga >> d) & 1u;
      bool he = (hb >> assign[static_cast<size_t>(d)]) & 1u;
      inc += ge != he;
    }
    return inc;
  }

  void dfs(int depth, long long acc) {
    ++work.bnb_nodes;
    if (depth == m) {
      if (acc < best_val || (acc == best_val && best_from_heuristic)) {
        best_val = acc;
        best_assign = assign;
        best_from_heuristic = false;
      }
      return;
    }
    auto& kids = children[static_cast<size_t>(depth)];
    kids.clear();
    for (int j = 0; j < m; ++j) {
      if ((used_cols >> j) & 1u) continue;
      long long inc = incremental_cost(depth, j);
      if (acc + inc > best_val) continue;  // bound below only grows
      long long bound = acc + inc + residual_bound(depth, j);
      if (bound > best_val) continue;
      kids.push_back({j, inc, bound});
    }
    // ascending incremental cost, identity branch first on ties
    std::sort(kids.begin(), kids.end(), [&](const Child& a, const Child& b) {
      if (a.inc != b.inc) return a.inc < b.inc;
      bool aid = a.col == depth, bid = b.col == depth;
      if (aid != bid) return aid;
      return a.col < b.col;
    });
    for (const Child& c : kids) {
      if (acc + c.inc > best_val) break;  // incumbent may have improved since sorting
      if (c.bound > best_val) continue;
      assign[static_cast<size_t>(depth)] = c.col;
      used_cols |= uint32_t{1} << c.col;
      dfs(depth + 1, acc + c.inc);
      used_cols &= ~(uint32_t{1} << c.col);
    }
  }
};

}  // namespace

MatchResult exact_match(const SeededPair& pair, const ExactConfig& cfg) {
  const int m = pair.ambiguous();
  const int s = pair.seeds;
  if (m > cfg.max_ambiguous) {
    std::ostringstream msg;
    msg << "exact matcher guard: m=" << m << " ambiguous vertices exceeds the cap of "
        << cfg.max_ambiguous;
    throw GuardError(msg.str());
  }
  if (m > 31)
    throw GuardError(
        "exact matcher guard: the search uses 32-bit masks; m must stay below 32");
  auto t0 = std::chrono::steady_clock::now();

  MatchResult result;
  if (m == 0) {
    result.phi_amb = Permutation(std::vector<int>{});
    result.objective = seed_split_disagreements(pair, result.phi_amb).total();
    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

  BnbState st;
  st.m = m;
  st.s = s;
  st.sa_cost.assign(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const uint64_t* ga = pair.g.row(s + i);
      const uint64_t* hb = pair.h.row(s + j);
      long long c = 0;
      int full = s >> 6;
      for (int w = 0; w < full; ++w) c += std::popcount(ga[w] ^ hb[w]);
      if (s & 63) c += std::popcount((ga[full] ^ hb[full]) & ((uint64_t{1} << (s & 63)) - 1));
      st.sa_cost[static_cast<size_t>(i) * m + j] = c;
    }
  st.arow.resize(static_cast<size_t>(m));
  st.brow.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    uint32_t am = 0, bm = 0;
    for (int b = 0; b < m; ++b) {
      if (pair.g.has_edge(s + i, s + b)) am |= uint32_t{1} << b;
      if (pair.h.has_edge(s + i, s + b)) bm |= uint32_t{1} << b;
    }
    st.arow[static_cast<size_t>(i)] = am;
    st.brow[static_cast<size_t>(i)] = bm;
  }
  st.assign.assign(static_cast<size_t>(m), -1);
  st.children.resize(static_cast<size_t>(m));

  const long long d_ss = seed_split_disagreements(pair, Permutation::identity(m)).seed_seed;

  if (cfg.use_sgm_incumbent && m >= 2) {
    MatchResult warm = sgm_match(pair, cfg.sgm);
    st.best_assign = warm.phi_amb.image;
    st.best_val = warm.objective - d_ss;
    st.work.fw_iterations = warm.work.fw_iterations;
    st.work.lap_calls = warm.work.lap_calls;
  } else {
    Permutation ident = Permutation::identity(m);
    SeedSplit split = seed_split_disagreements(pair, ident);
    st.best_assign = ident.image;
    st.best_val = split.seed_amb + split.amb_amb;
  }
  st.best_from_heuristic = true;

  st.dfs(0, 0);

  result.phi_amb = Permutation(st.best_assign);
  result.objective = d_ss + st.best_val;
  result.work = st.work;
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace align
