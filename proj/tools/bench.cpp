// Timing harness: bit-parallel kernels and their serial references, plus the
// assignment solver and one end-to-end matcher iteration profile.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "align/kernels.hpp"
#include "align/lap.hpp"
#include "align/matching.hpp"
#include "align/model.hpp"
#include "align/rng.hpp"

using namespace align;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    double t0 = now_s();
    fn();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

Graph random_graph(int n, double p, Rng& rng) {
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) b.add_edge(i, j);
  return b.build();
}

void print_row(const char* kernel, int size, double serial_s, double parallel_s,
               bool same) {
  std::printf("%-26s %6d %12.3f %12.3f %8.2fx %s\n", kernel, size, serial_s * 1e3,
              parallel_s * 1e3, serial_s / parallel_s, same ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  for (int a = 1; a < argc; ++a)
    if (std::strcmp(argv[a], "--reps") == 0 && a + 1 < argc) reps = std::atoi(argv[a + 1]);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-26s %6s %12s %12s %9s\n", "kernel", "size", "serial ms",
              "parallel ms", "speedup");

  Rng rng(42);

  for (int n : {256, 512, 1024}) {
    Graph g = random_graph(n, 0.5, rng);
    Graph h = random_graph(n, 0.5, rng);
    Permutation shuffled = Permutation::identity(n);
    for (int i = n - 1; i > 0; --i)
      std::swap(shuffled.image[static_cast<size_t>(i)],
                shuffled.image[static_cast<size_t>(rng.below(static_cast<uint64_t>(i + 1)))]);

    long long ref = 0, fast = 0;
    Permutation ident = Permutation::identity(n);
    double ts = time_best_of(reps, [&] { ref = disagreements_reference(g, h, ident); });
    double tp = time_best_of(reps, [&] { fast = disagreements(g, h, ident); });
    print_row("disagreements (identity)", n, ts, tp, ref == fast);

    ts = time_best_of(reps, [&] { ref = disagreements_reference(g, h, shuffled); });
    tp = time_best_of(reps, [&] { fast = disagreements(g, h, shuffled); });
    print_row("disagreements (shuffled)", n, ts, tp, ref == fast);
  }

  for (int m : {128, 256, 512}) {
    Graph g = random_graph(m, 0.5, rng);
    BitMatrix bits = BitMatrix::from_block(g, 0, 0, m, m);
    std::vector<double> x(static_cast<size_t>(m) * m), out_ref(x.size()), out_fast(x.size());
    for (double& v : x) v = rng.next_double();

    double ts = time_best_of(reps, [&] { bit_dense_mul_reference(bits, x.data(), m, out_ref.data()); });
    double tp = time_best_of(reps, [&] { bit_dense_mul(bits, x.data(), m, out_fast.data()); });
    print_row("bit_dense_mul", m, ts, tp, out_ref == out_fast);

    ts = time_best_of(reps, [&] { dense_bit_mul_reference(x.data(), m, bits, out_ref.data()); });
    tp = time_best_of(reps, [&] { dense_bit_mul(x.data(), m, bits, out_fast.data()); });
    bool close = true;
    for (size_t k = 0; k < out_ref.size(); ++k)
      if (std::abs(out_ref[k] - out_fast[k]) > 1e-9) close = false;
    print_row("dense_bit_mul", m, ts, tp, close);
  }

  {
    const int m = 512;
    SquareMatrix profit(m);
    for (double& v : profit.a) v = rng.next_double();
    LapSolver solver;
    double t = time_best_of(reps, [&] { (void)solver.solve_max(profit); });
    std::printf("%-26s %6d %12s %12.3f\n", "lap solve_max", m, "-", t * 1e3);
  }

  {
    // one full approximate match at the matchability experiment scale
    const int n = 180, s = 30;
    Rng sample_rng(7);
    UniformFamilySpec fam{n, 0.5, 0.25, 0.2};
    ModelSpec model = sample_uniform_family(fam, sample_rng);
    auto [g, h] = sample_pair(model, sample_rng);
    SeededPair pair(std::move(g), std::move(h), s);
    double t = time_best_of(reps, [&] { (void)sgm_match(pair); });
    std::printf("%-26s %6d %12s %12.3f\n", "sgm_match (m=150)", n, "-", t * 1e3);
  }

  return 0;
}
