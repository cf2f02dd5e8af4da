#include <cmath>
#include <sstream>

#include "align/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace align;
using namespace align::testing;

TEST_CASE("parameter statistics: homogeneous case") {
  std::vector<double> p(pair_count(6), 0.5);
  ModelSpec spec(6, 0.3, p);
  ParamStats st = param_stats(spec);
  CHECK(st.mu == doctest::Approx(0.5));
  CHECK(st.sigma2 == doctest::Approx(0.0));
  CHECK(st.rho_h == doctest::Approx(0.0));
  CHECK(st.rho_t == doctest::Approx(0.3));
}

TEST_CASE("parameter statistics: three-pair worked example") {
  ModelSpec spec(3, 0.4, {0.2, 0.4, 0.6});
  ParamStats st = param_stats(spec);
  CHECK(st.mu == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(st.sigma2 == doctest::Approx(0.08 / 3.0).epsilon(1e-14));
  CHECK(st.rho_h == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(st.rho_t == doctest::Approx(7.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("parameter statistics: extreme parameters give rho_h = 1") {
  ModelSpec spec(3, 0.2, {0.0, 1.0, 1.0});
  ParamStats st = param_stats(spec);
  CHECK(st.rho_h == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("degenerate parameter matrices are rejected") {
  CHECK_THROWS_AS(ModelSpec(3, 0.5, {0.0, 0.0, 0.0}), UndefinedError);
  CHECK_THROWS_AS(ModelSpec(3, 0.5, {1.0, 1.0, 1.0}), UndefinedError);
  CHECK_THROWS_AS(ModelSpec(3, 1.5, {0.5, 0.5, 0.5}), UndefinedError);
  CHECK_THROWS_AS(ModelSpec(3, 0.5, {0.5, 0.5}), DimensionError);
}

TEST_CASE("variance identity of the heterogeneity correlation") {
  // 1 - rho_h must equal sum(p - p^2) / (C(n,2) mu (1-mu)) to near machine
  // precision on random parameter matrices
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + static_cast<int>(rng.below(20));
    std::vector<double> p(static_cast<size_t>(pair_count(n)));
    for (double& v : p) v = rng.next_double();
    ModelSpec spec(n, 0.25, p);
    ParamStats st = param_stats(spec);
    double sum = 0;
    for (double v : p) sum += v - v * v;
    double rhs = sum / (static_cast<double>(pair_count(n)) * st.mu * (1.0 - st.mu));
    CHECK(std::abs((1.0 - st.rho_h) - rhs) < 1e-12);
  }
}

TEST_CASE("joint edge distribution closed forms") {
  auto j = joint_edge_distribution(0.5, 0.4);
  CHECK(j.p11 == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(j.p10 == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(j.p01 == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(j.p00 == doctest::Approx(0.35).epsilon(1e-14));

  // perfectly correlated indicators never disagree
  for (double p : {0.0, 0.3, 0.8, 1.0}) {
    auto jj = joint_edge_distribution(p, 1.0);
    CHECK(jj.p11 == doctest::Approx(p).epsilon(1e-14));
    CHECK(jj.p10 == doctest::Approx(0.0));
    CHECK(jj.p01 == doctest::Approx(0.0));
    CHECK(jj.p00 == doctest::Approx(1.0 - p).epsilon(1e-14));
  }

  auto ind = joint_edge_distribution(0.5, 0.0);
  CHECK(ind.p11 == doctest::Approx(0.25));
  CHECK(ind.p10 == doctest::Approx(0.25));
  CHECK(ind.p01 == doctest::Approx(0.25));
  CHECK(ind.p00 == doctest::Approx(0.25));
}

TEST_CASE("sampling respects perfect correlation and saturated parameters") {
  Rng rng(33);
  std::vector<double> p(static_cast<size_t>(pair_count(20)));
  for (double& v : p) v = rng.next_double();
  ModelSpec spec(20, 1.0, p);
  auto [g, h] = sample_pair(spec, rng);
  CHECK(g.edge_count() == h.edge_count());
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j) CHECK(g.has_edge(i, j) == h.has_edge(i, j));

  std::vector<double> ones(static_cast<size_t>(pair_count(8)), 1.0);
  ones[0] = 0.999999;  // keep the spec constructible
  ModelSpec dense(8, 0.0, ones);
  Rng rng2(1);
  auto [gc, hc] = sample_pair(dense, rng2);
  CHECK(gc.edge_count() >= pair_count(8) - 1);
  CHECK(hc.edge_count() >= pair_count(8) - 1);
}

TEST_CASE("sampling is deterministic in the seed") {
  Rng a(77), b(77);
  std::vector<double> p(static_cast<size_t>(pair_count(40)), 0.5);
  ModelSpec spec(40, 0.4, p);
  auto [g1, h1] = sample_pair(spec, a);
  auto [g2, h2] = sample_pair(spec, b);
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j) {
      CHECK(g1.has_edge(i, j) == g2.has_edge(i, j));
      CHECK(h1.has_edge(i, j) == h2.has_edge(i, j));
    }
}

TEST_CASE("delta calibration") {
  CHECK(delta_for_rho_h(0.5, 1.0 / 12.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(delta_for_rho_h(0.5, 0.0) == 0.0);
  // ceiling: (1/3) min/max
  CHECK(rho_h_ceiling(0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(rho_h_ceiling(1.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK_THROWS_AS(delta_for_rho_h(0.5, 0.34), UndefinedError);
  CHECK_THROWS_AS(delta_for_rho_h(0.0, 0.1), UndefinedError);
  // at the ceiling the half-width reaches the boundary exactly
  CHECK(delta_for_rho_h(0.5, 1.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("uniform family sampling") {
  Rng rng(35);
  UniformFamilySpec fam{30, 0.5, 0.0, 0.2};
  ModelSpec constant = sample_uniform_family(fam, rng);
  for (double v : constant.upper()) CHECK(v == 0.5);

  UniformFamilySpec third{40, 1.0 / 3.0, 1.0 / 6.0, 0.2};
  ModelSpec spread = sample_uniform_family(third, rng);
  for (double v : spread.upper()) {
    CHECK(v > 1.0 / 6.0);
    CHECK(v < 0.5);
  }

  // concentration of the realized heterogeneity around the target
  int close = 0;
  const double target = 1.0 / 12.0;
  for (int rep = 0; rep < 100; ++rep) {
    UniformFamilySpec big{160, 0.5, delta_for_rho_h(0.5, target), 0.2};
    ModelSpec model = sample_uniform_family(big, rng);
    if (std::abs(param_stats(model).rho_h - target) < 0.01) ++close;
  }
  CHECK(close >= 95);
}

TEST_CASE("empirical joint edge frequencies match the closed form") {
  Rng rng(37);
  std::vector<double> p(static_cast<size_t>(pair_count(10)), 0.5);
  ModelSpec spec(10, 0.4, p);
  int both = 0;
  const int samples = 2000;
  for (int rep = 0; rep < samples; ++rep) {
    auto [g, h] = sample_pair(spec, rng);
    if (g.has_edge(0, 1) && h.has_edge(0, 1)) ++both;
  }
  double freq = static_cast<double>(both) / samples;
  double se = std::sqrt(0.35 * 0.65 / samples);
  CHECK(std::abs(freq - 0.35) < 3 * se);
}

TEST_CASE("model file round trip") {
  Rng rng(39);
  std::vector<double> p(static_cast<size_t>(pair_count(7)));
  for (double& v : p) v = rng.next_double();
  ModelSpec spec(7, 0.125, p);
  std::stringstream ss;
  write_model(ss, spec);
  ModelSpec back = read_model(ss);
  CHECK(back.n() == 7);
  CHECK(back.rho_e() == 0.125);
  for (size_t k = 0; k < p.size(); ++k)
    CHECK(back.upper()[k] == doctest::Approx(p[k]).epsilon(1e-14));

  std::stringstream bad("n 3\nrho_e 0.5\n0.1 0.2\n");
  CHECK_THROWS_AS(read_model(bad), ParseError);
}
