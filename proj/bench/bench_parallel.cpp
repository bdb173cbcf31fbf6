#include <chrono>
#include <cstdio>
#include <random>

#include "CLI11.hpp"
#include "raagkit/invariant.hpp"
#include "raagkit/marked.hpp"

using namespace raag;

namespace {

template <class F>
double seconds(int reps, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

GraphPtr random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return SimplicialGraph::make(labels, edges);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial versus OpenMP kernels"};
  int jobs = 0, reps = 3, vertices = 10;
  app.add_option("--jobs", jobs, "OpenMP threads, 0 for the default");
  app.add_option("--reps", reps, "repetitions per measurement");
  app.add_option("--vertices", vertices, "graph size for compute_L");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(7);
  std::printf("%-12s %-34s %10s %10s %8s %s\n", "kernel", "input", "serial s", "parallel s", "speedup", "agree");

  for (int n : {vertices - 2, vertices}) {
    const GraphPtr g = random_graph(rng, n, 0.4);
    std::vector<RaagMap> gens;
    for (int v = 0; v < n; v += 3) gens.push_back(make_inversion(g, v));
    const FiniteOuterGroup h = close_group(g, gens, {256, {}});
    InvariantSystem serial(g, {}), parallel(g, {});
    const double ts = seconds(reps, [&] { serial = compute_L(h); });
    const double tp = seconds(reps, [&] { parallel = compute_L_parallel(h, jobs); });
    char input[64];
    std::snprintf(input, sizeof input, "%d vertices, |H| = %zu", n, h.size());
    std::printf("%-12s %-34s %10.4f %10.4f %8.2f %s\n", "compute_L", input, ts, tp, ts / tp, serial == parallel ? "yes" : "NO");
  }

  for (double p : {0.3, 0.6}) {
    const GraphPtr g = random_graph(rng, 8, p);
    const MarkedComplex m = salvetti(g, 4);
    NpcResult serial, parallel;
    const double ts = seconds(reps, [&] { serial = npc_check(m.complex); });
    const double tp = seconds(reps, [&] { parallel = npc_check_parallel(m.complex, jobs); });
    char input[64];
    std::snprintf(input, sizeof input, "salvetti, 8 vertices, %zu cells", static_cast<std::size_t>(m.complex.total_cells()));
    std::printf("%-12s %-34s %10.4f %10.4f %8.2f %s\n", "npc_check", input, ts, tp, ts / tp, serial.ok == parallel.ok ? "yes" : "NO");
  }
  return 0;
}
