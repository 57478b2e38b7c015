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

#ifndef LCPINDEX_BENCH_HPP_
#define LCPINDEX_BENCH_HPP_

// Desk-scale benchmark harness: deterministic data generation, latency
// statistics, the pairwise-materialization memory calculator and the
// scenario runner.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lcpindex/core.hpp"
#include "lcpindex/trie_index.hpp"
#include "lcpindex/work.hpp"

namespace lcpindex::bench {

// std::mt19937_64 (standard-specified sequence, 312 x 64-bit words of
// state) with portable range reduction. std::uniform_int_distribution is
// implementation-defined, so it is not used anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound) by rejection. Requires bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class Distribution { kUniform, kClustered };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view text);

struct GeneratorSpec {
  std::size_t n = 0;
  std::uint32_t length = 1;
  std::uint32_t alphabet = 2;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::kUniform;
  // Clustered data draws its first `cluster_depth` symbols from a Zipf law
  // P(c) ~ (c + 1)^-zipf_exponent; the remainder stays uniform.
  double zipf_exponent = 1.1;
  std::uint32_t cluster_depth = 8;
  // Reject repeated sequences. n == sigma^L yields the whole universe.
  bool distinct = false;
};

// Deterministic for a fixed spec. Throws InvalidInput if `distinct` is set
// and n > sigma^L.
Dataset generate_dataset(const GeneratorSpec& spec);

// Queries derived from dataset items: each keeps the first `prefix_len`
// symbols of a randomly chosen item and draws the rest uniformly.
// prefix_len == 0 (or an empty dataset) gives fully random queries.
std::vector<Sequence> generate_queries(const Dataset& dataset,
                                       std::size_t count,
                                       std::uint32_t prefix_len,
                                       std::uint64_t seed);

struct LatencyStats {
  std::chrono::nanoseconds p50{0};
  std::chrono::nanoseconds p95{0};
  std::chrono::nanoseconds p99{0};
  std::chrono::nanoseconds max{0};
  double qps = 0;
  std::uint64_t total_queries = 0;
};

// Nearest-rank percentiles over the full sample.
LatencyStats latency_stats(std::vector<std::chrono::nanoseconds> samples,
                           std::chrono::nanoseconds elapsed);

// Nearest-rank percentile of an ascending sample: element ceil(p/100 * n).
std::chrono::nanoseconds nearest_rank(
    std::span<const std::chrono::nanoseconds> sorted, double percentile);

inline constexpr std::uint64_t kGiB = std::uint64_t{1} << 30;
inline constexpr std::uint64_t kMaterializationEntryBytes = 2;  // fp16

struct MemoryEstimate {
  std::uint64_t n = 0;
  std::uint64_t materialization_bytes = 0;  // n * n * 2
  std::uint64_t budget_bytes = 0;
  bool feasible = false;
  std::optional<std::uint64_t> index_bytes_measured;
  std::optional<double> ratio;  // materialization / index bytes

  double materialization_gib() const {
    return static_cast<double>(materialization_bytes) / static_cast<double>(kGiB);
  }
};

// Throws InvalidInput if n == 0.
MemoryEstimate memory_wall(std::uint64_t n, std::uint64_t budget_bytes,
                           std::optional<std::uint64_t> index_bytes = {});

// "465.66 GiB"
std::string format_gib(std::uint64_t bytes);

enum class Scenario { kSustained, kGnc, kTalSweep, kMemo };

std::string_view to_string(Scenario s);

// Flat key/value benchmark configuration. Accepts "key: value" and
// "key = value" lines, '#' comments, digit grouping commas ("2,000,000") and
// simple fractions ("1/256").
struct ScenarioConfig {
  Scenario scenario = Scenario::kSustained;
  std::uint64_t seed = 0;
  std::size_t n_items = 10000;
  std::uint32_t seq_len = 64;
  std::uint32_t alphabet = 4;
  std::size_t k = 10;
  QueryMode query_mode = QueryMode::kComplete;
  std::uint64_t bucket_count = 256;
  std::vector<std::uint64_t> buckets;  // tal_sweep; derived if empty
  std::size_t queries = 1000;
  double run_seconds_target = 0;  // 0: a single pass over the query pool
  double warmup_s = 0;
  std::uint32_t prefix_len = 0;
  std::size_t simulation_steps = 1000;
  Distribution distribution = Distribution::kUniform;
  double zipf_exponent = 1.1;
  std::uint32_t cluster_depth = 8;
  std::size_t workers = 1;
  std::optional<std::string> index_path;
  // Keys accepted for compatibility and echoed back, but not interpreted.
  std::map<std::string, std::string> informational;

  // Throws ConfigError naming the offending line. `scenario` and `seed` are
  // mandatory.
  static ScenarioConfig parse(std::string_view text);

  // Bucket counts the sweep visits: `buckets` if set, else 1 and every power
  // of 4 below bucket_count, then bucket_count.
  std::vector<std::uint64_t> sweep_buckets() const;

  GeneratorSpec generator() const;
  nlohmann::ordered_json to_json() const;
};

struct SweepRow {
  std::uint64_t requested_buckets = 0;
  std::uint64_t effective_buckets = 0;
  std::uint32_t bucket_depth = 0;
  WorkReport work;
  double reduction = 1.0;
  bool unbounded = false;
  double mean_scanned_fraction = 0;
  std::uint64_t max_bucket_size = 0;
};

struct ScenarioReport {
  static constexpr int kSchemaVersion = 1;

  ScenarioConfig config;
  std::uint64_t dataset_digest = 0;
  std::uint64_t result_digest = 0;
  std::size_t node_count = 0;
  std::size_t index_bytes = 0;
  WorkReport work;  // first pass only; deterministic
  LatencyStats latency;
  std::chrono::nanoseconds elapsed{0};
  std::size_t determinism_samples = 0;
  bool deterministic = true;

  std::vector<SweepRow> sweep;  // tal_sweep
  std::optional<MemoryEstimate> memory;  // sustained

  // memo
  WorkReport hot_work;
  std::chrono::nanoseconds cold_time{0};
  std::chrono::nanoseconds hot_time{0};
  double memo_speedup = 0;
  bool hot_results_identical = true;

  // gnc
  std::uint64_t steps = 0;
  double steps_per_second = 0;

  // {"schema_version", "config", "deterministic", "timing"}. Everything
  // outside "timing" is reproducible from the config alone.
  nlohmann::ordered_json to_json() const;
  // Sectioned key = value rendering of to_json().
  std::string to_text() const;
};

// Runs one scenario. Throws InvalidState if the config references an index
// snapshot that does not exist, InvalidInput if it is inconsistent with the
// generated data.
ScenarioReport run_scenario(const ScenarioConfig& config);

// FNV-1a 64 over a byte string; used for dataset and result digests.
std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace lcpindex::bench

#endif  // LCPINDEX_BENCH_HPP_
