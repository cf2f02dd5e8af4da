#include "align/lap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace align {

namespace {

template <class T>
constexpr T infinity_for() {
  if constexpr (std::is_floating_point_v<T>)
    return std::numeric_limits<T>::infinity();
  else
    return std::numeric_limits<T>::max() / 4;
}

}  // namespace

// Shortest augmenting path with dual potentials, one Dijkstra pass per row.
// Leaves an optimal assignment in row_to_col_/col_to_row_ and dual-feasible
// potentials (reduced costs >= 0, matched edges tight).
template <class T>
void LapSolver::run_core(int m, const T* cost) {
  auto& u = [this]() -> std::vector<T>& {
    if constexpr (std::is_same_v<T, double>) return u_d_; else return u_i_;
  }();
  auto& v = [this]() -> std::vector<T>& {
    if constexpr (std::is_same_v<T, double>) return v_d_; else return v_i_;
  }();
  auto& dist = [this]() -> std::vector<T>& {
    if constexpr (std::is_same_v<T, double>) return dist_d_; else return dist_i_;
  }();

  const T kInf = infinity_for<T>();
  u.assign(static_cast<size_t>(m), T(0));
  v.assign(static_cast<size_t>(m), T(0));
  row_to_col_.assign(static_cast<size_t>(m), -1);
  col_to_row_.assign(static_cast<size_t>(m), -1);
  pred_.assign(static_cast<size_t>(m), -1);
  remaining_.resize(static_cast<size_t>(m));
  scanned_rows_.assign(static_cast<size_t>(m), 0);
  scanned_cols_.assign(static_cast<size_t>(m), 0);
  dist.assign(static_cast<size_t>(m), kInf);

  for (int cur = 0; cur < m; ++cur) {
    std::fill(scanned_rows_.begin(), scanned_rows_.end(), 0);
    std::fill(scanned_cols_.begin(), scanned_cols_.end(), 0);
    std::fill(dist.begin(), dist.end(), kInf);
    int num_remaining = m;
    for (int it = 0; it < m; ++it) remaining_[static_cast<size_t>(it)] = m - 1 - it;

    int i = cur;
    int sink = -1;
    T min_val = T(0);
    while (sink == -1) {
      scanned_rows_[static_cast<size_t>(i)] = 1;
      int index = -1;
      T lowest = kInf;
      for (int it = 0; it < num_remaining; ++it) {
        int j = remaining_[static_cast<size_t>(it)];
        T r = min_val + cost[static_cast<size_t>(i) * m + j] - u[static_cast<size_t>(i)] -
              v[static_cast<size_t>(j)];
        if (r < dist[static_cast<size_t>(j)]) {
          dist[static_cast<size_t>(j)] = r;
          pred_[static_cast<size_t>(j)] = i;
        }
        if (dist[static_cast<size_t>(j)] < lowest ||
            (dist[static_cast<size_t>(j)] == lowest &&
             col_to_row_[static_cast<size_t>(j)] == -1)) {
          lowest = dist[static_cast<size_t>(j)];
          index = it;
        }
      }
      min_val = lowest;
      int j = remaining_[static_cast<size_t>(index)];
      if (col_to_row_[static_cast<size_t>(j)] == -1)
        sink = j;
      else
        i = col_to_row_[static_cast<size_t>(j)];
      scanned_cols_[static_cast<size_t>(j)] = 1;
      remaining_[static_cast<size_t>(index)] = remaining_[static_cast<size_t>(--num_remaining)];
    }

    u[static_cast<size_t>(cur)] += min_val;
    for (int k = 0; k < m; ++k)
      if (scanned_rows_[static_cast<size_t>(k)] && k != cur)
        u[static_cast<size_t>(k)] +=
            min_val - dist[static_cast<size_t>(row_to_col_[static_cast<size_t>(k)])];
    for (int j = 0; j < m; ++j)
      if (scanned_cols_[static_cast<size_t>(j)])
        v[static_cast<size_t>(j)] -= min_val - dist[static_cast<size_t>(j)];

    int j = sink;
    while (true) {
      int ii = pred_[static_cast<size_t>(j)];
      col_to_row_[static_cast<size_t>(j)] = ii;
      std::swap(row_to_col_[static_cast<size_t>(ii)], j);
      if (ii == cur) break;
    }
  }
}

// Every optimal assignment is a perfect matching of the tight graph
// (reduced cost <= eps) of the final duals, and vice versa. Walk rows in
// order and force the smallest tight column each row can take while the
// rest still matches; the displaced owner reroutes through one augmenting
// search. Yields the lexicographically smallest optimal permutation.
template <class T>
std::vector<int> LapSolver::lexicographic_refine(int m, const T* cost, T eps) {
  auto& u = [this]() -> std::vector<T>& {
    if constexpr (std::is_same_v<T, double>) return u_d_; else return u_i_;
  }();
  auto& v = [this]() -> std::vector<T>& {
    if constexpr (std::is_same_v<T, double>) return v_d_; else return v_i_;
  }();

  auto tight = [&](int i, int j) {
    return cost[static_cast<size_t>(i) * m + j] - u[static_cast<size_t>(i)] -
               v[static_cast<size_t>(j)] <=
           eps;
  };

  std::vector<int> r2c = row_to_col_;
  std::vector<int> c2r = col_to_row_;
  std::vector<char> fixed_col(static_cast<size_t>(m), 0);
  visited_.assign(static_cast<size_t>(m), 0);

  // Kuhn-style augment toward the single free column; only touches the
  // matching on success.
  auto kuhn = [&](auto&& self, int row) -> bool {
    for (int j = 0; j < m; ++j) {
      if (visited_[static_cast<size_t>(j)] || fixed_col[static_cast<size_t>(j)] ||
          !tight(row, j))
        continue;
      visited_[static_cast<size_t>(j)] = 1;
      if (c2r[static_cast<size_t>(j)] == -1 || self(self, c2r[static_cast<size_t>(j)])) {
        c2r[static_cast<size_t>(j)] = row;
        r2c[static_cast<size_t>(row)] = j;
        return true;
      }
    }
    return false;
  };

  for (int i = 0; i < m; ++i) {
    int cur = r2c[static_cast<size_t>(i)];
    for (int j = 0; j < cur; ++j) {
      if (fixed_col[static_cast<size_t>(j)] || !tight(i, j)) continue;
      int displaced = c2r[static_cast<size_t>(j)];
      // hand j to row i, free its old column, reroute the displaced row
      c2r[static_cast<size_t>(cur)] = -1;
      c2r[static_cast<size_t>(j)] = i;
      r2c[static_cast<size_t>(i)] = j;
      std::fill(visited_.begin(), visited_.end(), 0);
      visited_[static_cast<size_t>(j)] = 1;
      if (kuhn(kuhn, displaced)) {
        cur = j;
        break;
      }
      c2r[static_cast<size_t>(j)] = displaced;
      r2c[static_cast<size_t>(i)] = cur;
      c2r[static_cast<size_t>(cur)] = i;
    }
    fixed_col[static_cast<size_t>(cur)] = 1;
  }
  return r2c;
}

namespace {

void check_finite(const SquareMatrix& mat) {
  if (mat.m < 1) throw DimensionError("assignment matrix must have order >= 1");
  for (double v : mat.a)
    if (!std::isfinite(v)) throw UndefinedError("assignment matrix entries must be finite");
}

bool integral_entries(const SquareMatrix& mat) {
  constexpr double kLimit = 1.7e13;  // keep sums of m entries well inside int64
  for (double v : mat.a)
    if (v != std::floor(v) || std::abs(v) > kLimit) return false;
  return true;
}

}  // namespace

LapResult LapSolver::solve_min(const SquareMatrix& cost) {
  check_finite(cost);
  const int m = cost.m;
  std::vector<int> perm;
  if (integral_entries(cost)) {
    icost_.resize(cost.a.size());
    for (size_t k = 0; k < cost.a.size(); ++k)
      icost_[k] = static_cast<long long>(cost.a[k]);
    run_core<long long>(m, icost_.data());
    perm = lexicographic_refine<long long>(m, icost_.data(), 0);
  } else {
    double scale = 1.0;
    for (double v : cost.a) scale = std::max(scale, std::abs(v));
    run_core<double>(m, cost.a.data());
    perm = lexicographic_refine<double>(m, cost.a.data(), 1e-9 * scale);
  }
  double value = 0;
  for (int i = 0; i < m; ++i) value += cost.at(i, perm[static_cast<size_t>(i)]);
  LapResult res;
  res.perm = Permutation(std::move(perm));
  res.value = value;
  return res;
}

LapResult LapSolver::solve_max(const SquareMatrix& profit) {
  check_finite(profit);
  SquareMatrix neg(profit.m);
  for (size_t k = 0; k < profit.a.size(); ++k) neg.a[k] = -profit.a[k];
  LapResult res = solve_min(neg);
  double value = 0;
  for (int i = 0; i < profit.m; ++i) value += profit.at(i, res.perm(i));
  res.value = value;
  return res;
}

long long LapSolver::solve_min_value(int m, const long long* cost) {
  run_core<long long>(m, cost);
  long long total = 0;
  for (int i = 0; i < m; ++i)
    total += cost[static_cast<size_t>(i) * m + row_to_col_[static_cast<size_t>(i)]];
  return total;
}

LapResult solve_lap_max(const SquareMatrix& profit) {
  LapSolver solver;
  return solver.solve_max(profit);
}

double lap_lower_bound(const SquareMatrix& cost,
                       std::span<const int> free_rows,
                       std::span<const int> free_cols) {
  if (free_rows.size() != free_cols.size())
    throw DimensionError("residual assignment needs equally many rows and columns");
  const int k = static_cast<int>(free_rows.size());
  if (k == 0) return 0.0;
  SquareMatrix sub(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      sub.at(a, b) = cost.at(free_rows[static_cast<size_t>(a)], free_cols[static_cast<size_t>(b)]);
  LapSolver solver;
  return solver.solve_min(sub).value;
}

}  // namespace align
