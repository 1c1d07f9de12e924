// Parallel kernels against their serial references on fixed inputs.

#include <benchmark/benchmark.h>

#include "luka/formula.hpp"
#include "luka/kernels.hpp"
#include "luka/pl_function.hpp"

using namespace luka;

namespace {

const PLFunction& left_fn() {
  static const PLFunction f = compile(parse("(X1 * X2 -> X3) + (X2 & !X1) * (X3 | X1 * X1)"), 3);
  return f;
}

const PLFunction& right_fn() {
  static const PLFunction f = compile(parse("(X3 + X3 -> X1 * X2) & (!X3 | X2 + X1 * X1)"), 3);
  return f;
}

const std::vector<Point>& grid() {
  static const std::vector<Point> pts = [] {
    std::vector<Point> out;
    for (long i = 0; i <= 16; ++i) {
      for (long j = 0; j <= 16; ++j) {
        for (long k = 0; k <= 16; ++k) out.push_back(Point{Rat(i, 16), Rat(j, 16), Rat(k, 16)});
      }
    }
    for (auto& p : out) {
      for (auto& c : p) c.canonicalize();
    }
    return out;
  }();
  return pts;
}

std::vector<Polyhedron> regions(const PLFunction& f) {
  std::vector<Polyhedron> out;
  for (const auto& c : f.cells()) out.push_back(c.region);
  return out;
}

template <bool Parallel>
void BM_overlay(benchmark::State& state) {
  const auto& a = left_fn().cells();
  const auto& b = right_fn().cells();
  for (auto _ : state) {
    auto r = Parallel ? kernels::overlay(a, b, kernels::Combine::oplus)
                      : kernels::serial::overlay(a, b, kernels::Combine::oplus);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_eval_batch(benchmark::State& state) {
  for (auto _ : state) {
    auto r = Parallel ? kernels::eval_batch(left_fn(), grid()) : kernels::serial::eval_batch(left_fn(), grid());
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_intersect_members(benchmark::State& state) {
  const auto a = regions(left_fn());
  const auto b = regions(right_fn());
  for (auto _ : state) {
    auto r = Parallel ? kernels::intersect_members(a, b) : kernels::serial::intersect_members(a, b);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_min_over_members(benchmark::State& state) {
  const auto members = regions(right_fn());
  for (auto _ : state) {
    auto r = Parallel ? kernels::min_over_members(left_fn(), members)
                      : kernels::serial::min_over_members(left_fn(), members);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_overlay<true>)->Name("overlay/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_overlay<false>)->Name("overlay/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_batch<true>)->Name("eval_batch/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eval_batch<false>)->Name("eval_batch/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_intersect_members<true>)->Name("intersect_members/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_intersect_members<false>)->Name("intersect_members/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_over_members<true>)->Name("min_over_members/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_over_members<false>)->Name("min_over_members/serial")->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("threads", std::to_string(kernels::max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
