#include <benchmark/benchmark.h>

#include <string>

#include "bip/parser.hpp"
#include "bip/render.hpp"
#include "bip/structure.hpp"

namespace {

const char* kSequentText =
    "((p -> q, Ea) ; (p -> q, Ea)), ((p -* 1 ; Ea), (Em, r * s)) |- (p -> q) * (r * s)";

void BM_parse_sequent(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bip::parse_sequent(kSequentText));
}
BENCHMARK(BM_parse_sequent);

void BM_normalize(benchmark::State& state) {
    auto raw = bip::parse_sequent(kSequentText);
    for (auto _ : state) benchmark::DoNotOptimize(bip::to_sequent(raw));
}
BENCHMARK(BM_normalize);

void BM_render_text(benchmark::State& state) {
    auto s = bip::to_sequent(bip::parse_sequent(kSequentText));
    for (auto _ : state) benchmark::DoNotOptimize(bip::render(s));
}
BENCHMARK(BM_render_text);

} // namespace

BENCHMARK_MAIN();
