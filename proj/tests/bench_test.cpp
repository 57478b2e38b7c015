// Copyright 2026 The lcpindex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <chrono>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "lcpindex/bench.hpp"
#include "lcpindex/errors.hpp"

namespace lcpindex::bench {
namespace {

using std::chrono::nanoseconds;

std::string config_error(std::string_view text) {
  try {
    ScenarioConfig::parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Rng, SameSeedSameStream) {
  Rng a(5), b(5), c(6);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowStaysInRangeAndUnitInHalfOpenInterval) {
  Rng r(9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
    const double u = r.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(r.below(1), 0u);
}

TEST(GenerateDataset, DeterministicPerSeed) {
  GeneratorSpec spec{.n = 500, .length = 12, .alphabet = 4, .seed = 3};
  const Dataset a = generate_dataset(spec), b = generate_dataset(spec);
  EXPECT_TRUE(std::ranges::equal(a.symbols(), b.symbols()));
  spec.seed = 4;
  EXPECT_FALSE(std::ranges::equal(a.symbols(), generate_dataset(spec).symbols()));
}

TEST(GenerateDataset, DistinctProducesNoDuplicates) {
  for (std::size_t n : {std::size_t{16}, std::size_t{10}, std::size_t{300}}) {
    GeneratorSpec spec{.n = n, .length = n == 300 ? 10u : 4u, .alphabet = 2, .seed = 1};
    spec.distinct = true;
    const Dataset d = generate_dataset(spec);
    std::set<std::vector<Symbol>> rows;
    for (std::size_t i = 0; i < d.size(); ++i) rows.emplace(d.item(i).begin(), d.item(i).end());
    EXPECT_EQ(rows.size(), n);
  }
}

TEST(GenerateDataset, DistinctBeyondUniverseFails) {
  GeneratorSpec spec{.n = 17, .length = 4, .alphabet = 2, .seed = 1};
  spec.distinct = true;
  EXPECT_THROW(generate_dataset(spec), InvalidInput);
}

TEST(GenerateDataset, ClusteredSharesPrefixes) {
  const auto distinct_prefixes = [](Distribution dist) {
    GeneratorSpec spec{.n = 2000, .length = 16, .alphabet = 4, .seed = 8};
    spec.distribution = dist;
    spec.cluster_depth = 6;
    const Dataset d = generate_dataset(spec);
    std::set<std::vector<Symbol>> prefixes;
    for (std::size_t i = 0; i < d.size(); ++i) prefixes.emplace(d.item(i).begin(), d.item(i).begin() + 6);
    return prefixes.size();
  };
  EXPECT_LT(distinct_prefixes(Distribution::kClustered) * 5, distinct_prefixes(Distribution::kUniform) * 4);
}

TEST(GenerateQueries, KeepPerturbationPrefix) {
  const Dataset d = generate_dataset({.n = 100, .length = 10, .alphabet = 4, .seed = 2});
  const auto queries = generate_queries(d, 50, 6, 3);
  ASSERT_EQ(queries.size(), 50u);
  for (const auto& q : queries) {
    ASSERT_EQ(q.size(), 10u);
    bool matched = false;
    for (std::size_t i = 0; i < d.size() && !matched; ++i) matched = lcp(d.item(i), q) >= 6;
    EXPECT_TRUE(matched);
  }
  EXPECT_EQ(queries, generate_queries(d, 50, 6, 3));
}

TEST(Distribution, Parse) {
  EXPECT_EQ(parse_distribution("clustered"), Distribution::kClustered);
  EXPECT_THROW(parse_distribution("gaussian"), ConfigError);
}

TEST(LatencyStats, NearestRank) {
  std::vector<nanoseconds> samples;
  for (int i = 100; i >= 1; --i) samples.emplace_back(i);
  const LatencyStats s = latency_stats(samples, std::chrono::seconds(2));
  EXPECT_EQ(s.p50, nanoseconds(50));
  EXPECT_EQ(s.p95, nanoseconds(95));
  EXPECT_EQ(s.p99, nanoseconds(99));
  EXPECT_EQ(s.max, nanoseconds(100));
  EXPECT_DOUBLE_EQ(s.qps, 50.0);
  EXPECT_EQ(s.total_queries, 100u);
  const std::vector<nanoseconds> one{nanoseconds(7)};
  EXPECT_EQ(nearest_rank(one, 50), nanoseconds(7));
}

TEST(LatencyStats, PercentilesAreOrdered) {
  Rng r(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<nanoseconds> samples(1 + r.below(300));
    for (auto& s : samples) s = nanoseconds(r.below(1000000));
    const LatencyStats st = latency_stats(samples, std::chrono::milliseconds(1));
    EXPECT_LE(st.p50, st.p95);
    EXPECT_LE(st.p95, st.p99);
    EXPECT_LE(st.p99, st.max);
  }
}

TEST(MemoryWall, MaterializationRows) {
  const std::uint64_t budget = 80 * kGiB;
  EXPECT_EQ(format_gib(memory_wall(100000, budget).materialization_bytes), "18.63 GiB");
  EXPECT_EQ(format_gib(memory_wall(200000, budget).materialization_bytes), "74.51 GiB");
  const auto five = memory_wall(500000, budget);
  EXPECT_EQ(format_gib(five.materialization_bytes), "465.66 GiB");
  EXPECT_FALSE(five.feasible);
  EXPECT_TRUE(memory_wall(200000, budget).feasible);
  EXPECT_EQ(memory_wall(1000000, budget).materialization_bytes, 2'000'000'000'000u);
  EXPECT_NEAR(memory_wall(1000000, budget).materialization_gib() / 1000, 1.86, 0.01);
}

TEST(MemoryWall, FeasibleExactlyAtBudgetAndRatio) {
  const auto at = memory_wall(1000, 2'000'000);
  EXPECT_TRUE(at.feasible);
  EXPECT_FALSE(memory_wall(1000, 1'999'999).feasible);
  EXPECT_FALSE(at.ratio.has_value());
  const auto with_index = memory_wall(1000, 2'000'000, 20'000);
  ASSERT_TRUE(with_index.ratio.has_value());
  EXPECT_DOUBLE_EQ(*with_index.ratio, 100.0);
  EXPECT_THROW(memory_wall(0, 1), InvalidInput);
}

TEST(ScenarioConfig, ParsesBothSeparatorsCommentsAndAliases) {
  const auto c = ScenarioConfig::parse(
      "# tal sweep\n"
      "scenario: tal_sweep\n"
      "seed = 42\n"
      "n_candidates: 2,000,000   # grouped\n"
      "max_len: 64\n"
      "sigma: 2\n"
      "top_k: 5\n"
      "buckets: 4, 16, 64\n"
      "range_fraction: 1/256\n");
  EXPECT_EQ(c.scenario, Scenario::kTalSweep);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.n_items, 2000000u);
  EXPECT_EQ(c.seq_len, 64u);
  EXPECT_EQ(c.alphabet, 2u);
  EXPECT_EQ(c.k, 5u);
  EXPECT_EQ(c.sweep_buckets(), (std::vector<std::uint64_t>{4, 16, 64}));
  EXPECT_EQ(c.informational.at("range_fraction"), "1/256");
}

TEST(ScenarioConfig, DerivedSweepIsPowersOfFour) {
  const auto c = ScenarioConfig::parse("scenario: tal_sweep\nseed: 1\nbucket_count: 100\n");
  EXPECT_EQ(c.sweep_buckets(), (std::vector<std::uint64_t>{1, 4, 16, 64, 100}));
}

TEST(ScenarioConfig, ErrorsNameTheLine) {
  EXPECT_NE(config_error("scenario: memo\nseed: 1\nbogus: 3\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("scenario: memo\nseed: 1\nseed: 2\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("scenario: memo\nseed: x\n").find("line 2"), std::string::npos);
  EXPECT_NE(config_error("scenario: warp\nseed: 1\n").find("warp"), std::string::npos);
  EXPECT_NE(config_error("scenario: memo\nseed: 1\nk: 0\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("scenario memo\n").find("line 1"), std::string::npos);
}

TEST(ScenarioConfig, ScenarioAndSeedAreMandatory) {
  EXPECT_NE(config_error("seed: 1\n").find("scenario"), std::string::npos);
  EXPECT_NE(config_error("scenario: gnc\n").find("seed"), std::string::npos);
}

ScenarioConfig small(std::string_view scenario) {
  return ScenarioConfig::parse(std::string("scenario: ") + std::string(scenario) +
                               "\nseed: 5\nn_items: 3000\nseq_len: 24\nsigma: 4\nk: 8\n"
                               "queries: 200\nsteps: 200\nbuckets: 1, 4, 16, 64\n");
}

TEST(RunScenario, DeterministicSectionReproducesAcrossRuns) {
  for (auto s : {"sustained", "gnc", "tal_sweep", "memo"}) {
    const auto a = run_scenario(small(s)).to_json();
    const auto b = run_scenario(small(s)).to_json();
    EXPECT_EQ(a["config"], b["config"]) << s;
    EXPECT_EQ(a["deterministic"], b["deterministic"]) << s;
    EXPECT_EQ(a["deterministic"]["determinism"]["identical"], true) << s;
    EXPECT_TRUE(a.contains("timing"));
  }
}

TEST(RunScenario, SeedChangesDigests) {
  auto c = small("sustained");
  const auto a = run_scenario(c);
  c.seed = 6;
  const auto b = run_scenario(c);
  EXPECT_NE(a.dataset_digest, b.dataset_digest);
}

TEST(RunScenario, TalSweepIsMonotone) {
  const auto r = run_scenario(small("tal_sweep"));
  ASSERT_EQ(r.sweep.size(), 4u);
  EXPECT_DOUBLE_EQ(r.sweep[0].reduction, 1.0);
  for (std::size_t i = 1; i < r.sweep.size(); ++i) {
    EXPECT_GE(r.sweep[i].reduction, r.sweep[i - 1].reduction);
    EXPECT_EQ(r.sweep[i].effective_buckets, r.sweep[i].requested_buckets);
  }
}

TEST(RunScenario, TalSweepReachesBucketCountAt256) {
  const auto r = run_scenario(ScenarioConfig::parse(
      "scenario: tal_sweep\nseed: 12\nn_items: 65536\nseq_len: 32\nsigma: 2\n"
      "queries: 300\nbuckets: 1, 256\n"));
  ASSERT_EQ(r.sweep.size(), 2u);
  EXPECT_GE(r.sweep[1].reduction, 128.0);
  EXPECT_LE(r.sweep[1].reduction, 512.0);
}

TEST(RunScenario, GncReplayIsByteIdentical) {
  const auto config = ScenarioConfig::parse(
      "scenario: gnc\nseed: 13\nn_items: 10000\nseq_len: 64\nsigma: 4\nsteps: 1000\n");
  const auto a = run_scenario(config), b = run_scenario(config);
  EXPECT_EQ(a.steps, 1000u);
  EXPECT_EQ(a.result_digest, b.result_digest);
  EXPECT_TRUE(a.deterministic);
}

TEST(RunScenario, MemoHotPassDoesNoScanWork) {
  const auto r = run_scenario(small("memo"));
  EXPECT_TRUE(r.hot_results_identical);
  EXPECT_EQ(r.hot_work.symbols_compared, 0u);
  EXPECT_EQ(r.hot_work.items_scanned, 0u);
  EXPECT_EQ(r.hot_work.cache_hits, r.hot_work.queries);
}

TEST(RunScenario, SustainedReportsOrderedLatencyAndMemory) {
  const auto r = run_scenario(small("sustained"));
  EXPECT_LE(r.latency.p50, r.latency.p95);
  EXPECT_LE(r.latency.p95, r.latency.p99);
  ASSERT_TRUE(r.memory.has_value());
  EXPECT_EQ(r.memory->n, 3000u);
  EXPECT_EQ(r.memory->materialization_bytes, 3000u * 3000u * 2u);
}

TEST(RunScenario, MissingIndexSnapshotIsInvalidState) {
  auto c = small("sustained");
  c.index_path = "/nonexistent/lcpindex-snapshot.idx";
  EXPECT_THROW(run_scenario(c), InvalidState);
}

TEST(RunScenario, TextReportEmbedsConfigAndSeed) {
  const std::string text = run_scenario(small("gnc")).to_text();
  EXPECT_NE(text.find("[config]"), std::string::npos);
  EXPECT_NE(text.find("seed = 5"), std::string::npos);
  EXPECT_NE(text.find("scenario = gnc"), std::string::npos);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

}  // namespace
}  // namespace lcpindex::bench
