#include <benchmark/benchmark.h>

#include <numeric>

#include <algwit/builders.hpp>
#include <algwit/closure.hpp>
#include <algwit/constructions.hpp>
#include <algwit/identity.hpp>
#include <algwit/io.hpp>
#include <algwit/termsearch.hpp>

using namespace algwit;

namespace {

  void closure_of_power(benchmark::State& state) {
    auto const m    = static_cast<unsigned>(state.range(0));
    auto       base = make_ujm_reduct(2, 2, m);
    auto       pow  = finite_algebra::product({base, base, base, base, base, base, base, base},
                                              "power", std::size_t{1} << 22);
    std::vector<element> gens{1, 2, 4, 8};
    for (auto _ : state) {
      auto r = subalgebra_closure(pow, gens, false);
      benchmark::DoNotOptimize(r.elements.size());
    }
  }
  BENCHMARK(closure_of_power)->Arg(3)->Arg(4);

  void sharpness_box_check(benchmark::State& state) {
    auto const m = static_cast<unsigned>(state.range(0));
    auto       w = build_sharpness_witness({m, 2});
    for (auto _ : state) {
      auto r = verify_sharpness(w);
      benchmark::DoNotOptimize(r.closed);
    }
    state.counters["elements"] = static_cast<double>(w.universe.size());
  }
  BENCHMARK(sharpness_box_check)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

  void jonsson_level(benchmark::State& state) {
    auto gens = fixture("N:2:5+N:3:5");
    for (auto _ : state) {
      auto r = chain_level(gens, jonsson_scheme(), 12);
      benchmark::DoNotOptimize(r.level);
    }
  }
  BENCHMARK(jonsson_level)->Unit(benchmark::kMillisecond);

  void nu_search(benchmark::State& state) {
    auto const arity = static_cast<unsigned>(state.range(0));
    auto       gens  = fixture("N:2:4");
    for (auto _ : state) {
      auto r = absorption_search(gens, near_unanimity_scheme(arity));
      benchmark::DoNotOptimize(r.verdict);
    }
  }
  BENCHMARK(nu_search)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

  void identity_check(benchmark::State& state) {
    auto const m = static_cast<unsigned>(state.range(0));
    auto       w = build_sharpness_witness({m, 2});
    identity_params p{identity_family::n_distributive, m, 2, 2, 2 * m - 5, {}};
    for (auto _ : state) {
      auto r = check_identity(p, w.alpha, w.beta, w.gamma);
      benchmark::DoNotOptimize(r.holds);
    }
  }
  BENCHMARK(identity_check)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
