#include <numeric>
#include <sstream>

#include "align/bilp.hpp"
#include "align/model.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace align;
using namespace align::testing;

namespace {

SeededPair sampled_pair(int n, int s, double rho_e, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p(static_cast<size_t>(pair_count(n)), 0.5);
  ModelSpec model(n, rho_e, p);
  auto [g, h] = sample_pair(model, rng);
  return SeededPair(std::move(g), std::move(h), s);
}

}  // namespace

TEST_CASE("variable and row counts follow the block dimensions") {
  SeededPair pair = sampled_pair(500, 480, 0.5, 81);
  BilpModel model = build_bilp(pair);
  CHECK(model.m == 20);
  CHECK(model.s == 480);
  CHECK(model.var_count() == 39600);  // 3 m^2 + 4 m s
  CHECK(model.rows() == 20 * 20 + 2 * 20 * 480 + 2 * 20);
  CHECK(model.p_vars() == 400);
}

TEST_CASE("identity encoding of a perfectly correlated pair uses no artificials") {
  SeededPair pair = sampled_pair(12, 7, 1.0, 83);
  BilpModel model = build_bilp(pair);
  std::vector<int> x = model.encode(Permutation::identity(5));
  CHECK(model.is_feasible(x));
  CHECK(model.objective_value(x) == 0);
  for (int k = model.p_vars(); k < model.var_count(); ++k) CHECK(x[static_cast<size_t>(k)] == 0);
}

TEST_CASE("every permutation encodes feasibly with the split objective value") {
  for (int trial = 0; trial < 12; ++trial) {
    SeededPair pair = sampled_pair(7, 3, 0.4, 90 + static_cast<uint64_t>(trial));
    BilpModel model = build_bilp(pair);
    std::vector<int> img(4);
    std::iota(img.begin(), img.end(), 0);
    do {
      Permutation phi(img);
      std::vector<int> x = model.encode(phi);
      REQUIRE(model.is_feasible(x));
      SeedSplit split = seed_split_disagreements(pair, phi);
      CHECK(model.objective_value(x) == 2 * (split.seed_amb + split.amb_amb));
    } while (std::next_permutation(img.begin(), img.end()));
  }
}

TEST_CASE("binary feasibility forces permutation blocks") {
  SeededPair pair = sampled_pair(8, 5, 0.3, 97);
  BilpModel model = build_bilp(pair);
  REQUIRE(model.m == 3);
  int feasible = 0;
  std::vector<int> pblock(9), x;
  for (int mask = 0; mask < 512; ++mask) {
    for (int b = 0; b < 9; ++b) pblock[static_cast<size_t>(b)] = (mask >> b) & 1;
    if (model.encode_binary_pblock(pblock, x)) {
      ++feasible;
      CHECK(model.is_feasible(x));
      // the block is a permutation matrix: one entry per row and column
      for (int r = 0; r < 3; ++r) {
        int row_sum = 0, col_sum = 0;
        for (int c = 0; c < 3; ++c) {
          row_sum += pblock[static_cast<size_t>(r) * 3 + c];
          col_sum += pblock[static_cast<size_t>(c) * 3 + r];
        }
        CHECK(row_sum == 1);
        CHECK(col_sum == 1);
      }
    }
  }
  CHECK(feasible == 6);
}

TEST_CASE("constraint rows stack the commutation, seed and assignment blocks") {
  // multiply M by vec P directly and compare each segment against the
  // matrix products it linearizes
  SeededPair pair = sampled_pair(7, 3, 0.4, 103);
  BilpModel model = build_bilp(pair);
  const int m = model.m, s = model.s;
  Rng rng(7);
  Permutation phi = random_permutation(m, rng);

  std::vector<int> x = model.encode(phi);
  std::vector<long long> mx(static_cast<size_t>(model.rows()), 0);
  for (int row = 0; row < model.rows(); ++row)
    for (auto [col, coef] : model.m_rows[static_cast<size_t>(row)])
      mx[static_cast<size_t>(row)] += static_cast<long long>(coef) * x[static_cast<size_t>(col)];

  auto a = [&](int i, int j) { return pair.g.has_edge(i, j) ? 1 : 0; };
  auto b = [&](int i, int j) { return pair.h.has_edge(i, j) ? 1 : 0; };
  auto pm = [&](int r, int c) { return phi(r) == c ? 1 : 0; };

  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) {
      long long a22p = 0, pb22 = 0;
      for (int k = 0; k < m; ++k) {
        a22p += a(s + r, s + k) * pm(k, c);
        pb22 += pm(r, k) * b(s + k, s + c);
      }
      CHECK(mx[static_cast<size_t>(c * m + r)] == a22p - pb22);
    }
  for (int c = 0; c < m; ++c)
    for (int k = 0; k < s; ++k) {
      long long a12p = 0;
      for (int rp = 0; rp < m; ++rp) a12p += a(k, s + rp) * pm(rp, c);
      CHECK(mx[static_cast<size_t>(m * m + c * s + k)] == a12p);
    }
  for (int k = 0; k < s; ++k)
    for (int r = 0; r < m; ++r) {
      long long pb21 = 0;
      for (int cp = 0; cp < m; ++cp) pb21 += pm(r, cp) * b(s + cp, k);
      CHECK(mx[static_cast<size_t>(m * m + m * s + k * m + r)] == pb21);
    }
  for (int c = 0; c < 2 * m; ++c)
    CHECK(mx[static_cast<size_t>(m * m + 2 * m * s + c)] == 1);
}

TEST_CASE("tampered solutions are rejected") {
  SeededPair pair = sampled_pair(6, 2, 0.5, 99);
  BilpModel model = build_bilp(pair);
  std::vector<int> x = model.encode(Permutation::identity(4));
  REQUIRE(model.is_feasible(x));
  x[0] ^= 1;
  CHECK_FALSE(model.is_feasible(x));
}

TEST_CASE("lp export contains the standard sections and every variable") {
  SeededPair pair = sampled_pair(6, 3, 0.5, 101);
  BilpModel model = build_bilp(pair);
  std::stringstream ss;
  write_lp(ss, model);
  std::string text = ss.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Binary") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("p_1_1") != std::string::npos);
  CHECK(text.find("p_3_3") != std::string::npos);
  CHECK(text.find("e_1") != std::string::npos);
  // one constraint line per row
  size_t constraints = 0;
  for (size_t pos = text.find(" c"); pos != std::string::npos; pos = text.find(" c", pos + 1))
    if (text[pos + 2] >= '0' && text[pos + 2] <= '9') ++constraints;
  CHECK(constraints == static_cast<size_t>(model.rows()));
}
