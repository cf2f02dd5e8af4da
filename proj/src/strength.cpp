#include "align/strength.hpp"

#include <algorithm>
#include <numeric>

#include "align/kernels.hpp"

namespace align {

namespace {

void check_same_n(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw DimensionError("graphs must share the vertex count");
  if (g.n() < 2) throw UndefinedError("need at least two vertices");
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Rational mean_disagreements_closed_form_rational(const Graph& g, const Graph& h) {
  check_same_n(g, h);
  const long long c = pair_count(g.n());
  const long long eg = g.edge_count(), eh = h.edge_count();
  // e_G (C - e_H)/C + (C - e_G) e_H / C
  return Rational(eg * (c - eh) + (c - eg) * eh, c);
}

double mean_disagreements_closed_form(const Graph& g, const Graph& h) {
  return mean_disagreements_closed_form_rational(g, h).to_double();
}

Rational mean_disagreements_bruteforce(const Graph& g, const Graph& h) {
  check_same_n(g, h);
  const int n = g.n();
  if (n > 8) throw GuardError("bijection enumeration guarded at n <= 8");
  std::vector<int> img(static_cast<size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  long long total = 0;
  do {
    total += disagreements_reference(g, h, Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return Rational(total, factorial(n));
}

double strength_denominator(const Graph& g, const Graph& h) {
  check_same_n(g, h);
  double dg = g.density(), dh = h.density();
  return dg * (1.0 - dh) + (1.0 - dg) * dh;
}

double alignment_strength(const Graph& g, const Graph& h, const Permutation& phi) {
  check_same_n(g, h);
  const long long c = pair_count(g.n());
  const long long eg = g.edge_count(), eh = h.edge_count();
  // denominator as exact integers: C^2 * [d_G(1-d_H) + (1-d_G)d_H]
  const long long den = eg * (c - eh) + (c - eg) * eh;
  if (den == 0)
    throw UndefinedError(
        "alignment strength undefined: graphs both edgeless or both complete");
  const long long d = disagreements(g, h, phi);
  return 1.0 - static_cast<double>(d) * static_cast<double>(c) / static_cast<double>(den);
}

double expected_disagreement_rate(const ParamStats& stats, double rho_e) {
  return 2.0 * (1.0 - rho_e) * (stats.mu * (1.0 - stats.mu) - stats.sigma2);
}

}  // namespace align
