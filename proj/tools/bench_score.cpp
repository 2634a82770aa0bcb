// Serial vs OpenMP-parallel corpus scoring on a synthetic workload.
#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "wesr/perturb.hpp"
#include "wesr/score.hpp"
#include "wesr/transcript.hpp"

namespace {

using namespace wesr;

struct Workload {
    std::vector<RefUtterance> refs;
    std::map<std::string, std::string> hyps;
};

Workload make_workload(int utterances) {
    const char* lex[] = {"one", "two", "three", "four", "five", "six",
                         "seven", "eight", "nine", "ten"};
    std::mt19937_64 rng(12345);
    Workload w;
    for (int u = 0; u < utterances; ++u) {
        AnnotatedTranscript t;
        t.language = Language::En;
        int n = 8 + int(rng() % 24);
        for (int i = 0; i < n; ++i) t.words.push_back(lex[rng() % 10]);
        int nd = int(rng() % 3);
        for (int k = 0; k < nd; ++k)
            t.discrete.push_back({int(rng() % (n + 1)), int(rng() % 15)});
        int a = int(rng() % n);
        int b = std::min(n - 1, a + int(rng() % 5));
        t.spans.push_back({a, b, 15 + int(rng() % 6)});
        std::string id = "u" + std::to_string(u);
        w.refs.push_back({id, serialize(t), Language::En});
        PerturbSpec spec;
        spec.substitution_rate = 0.15;
        spec.deletion_rate = 0.1;
        spec.insertion_rate = 0.1;
        spec.seed = derive_seed(7, id);
        w.hyps[id] = serialize(perturb_words(t, spec));
    }
    return w;
}

void BM_score_serial(benchmark::State& state) {
    auto w = make_workload(int(state.range(0)));
    for (auto _ : state) {
        auto rep = score_corpus_serial(w.refs, w.hyps);
        benchmark::DoNotOptimize(rep.utterances);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_score_parallel(benchmark::State& state) {
    auto w = make_workload(int(state.range(0)));
    for (auto _ : state) {
        auto rep = score_corpus(w.refs, w.hyps);
        benchmark::DoNotOptimize(rep.utterances);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_score_serial)->Arg(100)->Arg(1000)->Arg(5000);
BENCHMARK(BM_score_parallel)->Arg(100)->Arg(1000)->Arg(5000);
BENCHMARK_MAIN();
