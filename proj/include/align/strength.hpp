#pragma once

#include "align/graph.hpp"
#include "align/model.hpp"
#include "align/rational.hpp"

namespace align {

// Average disagreement count over all n! bijections, in closed form:
// C(n,2) * [ d_G (1 - d_H) + (1 - d_G) d_H ]. Exact rational arithmetic
// internally; both graphs must share n >= 2.
double mean_disagreements_closed_form(const Graph& g, const Graph& h);
Rational mean_disagreements_closed_form_rational(const Graph& g, const Graph& h);

// Same average by enumerating every bijection; the independent oracle for
// the closed form. Guarded at n <= 8.
Rational mean_disagreements_bruteforce(const Graph& g, const Graph& h);

// d_G (1 - d_H) + (1 - d_G) d_H, the normalizer of alignment strength.
double strength_denominator(const Graph& g, const Graph& h);

// 1 - [d(G,H,phi) / C(n,2)] / [d_G (1-d_H) + (1-d_G) d_H]. 1 for an
// isomorphism, 0 for a bijection of average quality. Undefined (throws)
// when both graphs are edgeless or both complete.
double alignment_strength(const Graph& g, const Graph& h, const Permutation& phi);

// Expected d(G,H,identity)/C(n,2) under the correlated Bernoulli model:
// 2 (1 - rho_e) (mu (1 - mu) - sigma^2).
double expected_disagreement_rate(const ParamStats& stats, double rho_e);

}  // namespace align
