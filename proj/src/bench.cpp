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

#include "lcpindex/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "lcpindex/errors.hpp"
#include "lcpindex/query_cache.hpp"
#include "lcpindex/tal.hpp"

namespace lcpindex::bench {

using Clock = std::chrono::steady_clock;
using std::chrono::nanoseconds;

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the top partial stripe so every residue is equally likely.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t excess = (max % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (excess != 0 && x > max - excess) x = engine_();
  return x % bound;
}

std::string_view to_string(Distribution d) {
  return d == Distribution::kUniform ? "uniform" : "clustered";
}

Distribution parse_distribution(std::string_view text) {
  if (text == "uniform") return Distribution::kUniform;
  if (text == "clustered") return Distribution::kClustered;
  throw ConfigError("unknown distribution '" + std::string(text) +
                    "' (expected uniform or clustered)");
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// sigma^L, saturating at `cap`.
std::uint64_t universe_size(std::uint32_t sigma, std::uint32_t length,
                            std::uint64_t cap) {
  std::uint64_t u = 1;
  for (std::uint32_t j = 0; j < length; ++j) {
    if (u > cap / sigma) return cap;
    u *= sigma;
  }
  return std::min(u, cap);
}

class SymbolSource {
 public:
  SymbolSource(const GeneratorSpec& spec) : spec_(spec), rng_(spec.seed) {
    if (spec.distribution == Distribution::kClustered) {
      cdf_.resize(spec.alphabet);
      double total = 0;
      for (std::uint32_t c = 0; c < spec.alphabet; ++c) {
        total += std::pow(static_cast<double>(c) + 1.0, -spec.zipf_exponent);
        cdf_[c] = total;
      }
      for (double& v : cdf_) v /= total;
    }
  }

  void fill(std::span<Symbol> row) {
    for (std::uint32_t j = 0; j < row.size(); ++j) {
      if (!cdf_.empty() && j < spec_.cluster_depth) {
        const double u = rng_.unit();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        row[j] = static_cast<Symbol>(
            std::min<std::size_t>(it - cdf_.begin(), spec_.alphabet - 1));
      } else {
        row[j] = static_cast<Symbol>(rng_.below(spec_.alphabet));
      }
    }
  }

  Rng& rng() { return rng_; }

 private:
  const GeneratorSpec& spec_;
  Rng rng_;
  std::vector<double> cdf_;
};

}  // namespace

Dataset generate_dataset(const GeneratorSpec& spec) {
  const Alphabet alphabet(spec.alphabet);
  if (spec.length == 0) throw InvalidInput("sequence length must be positive");
  const std::uint32_t length = spec.length;
  std::vector<Symbol> symbols(spec.n * length);
  SymbolSource source(spec);

  if (!spec.distinct) {
    for (std::size_t i = 0; i < spec.n; ++i) {
      source.fill(std::span<Symbol>(symbols).subspan(i * length, length));
    }
    return Dataset(alphabet, length, std::move(symbols));
  }

  constexpr std::uint64_t kEnumerateLimit = std::uint64_t{1} << 24;
  const std::uint64_t universe = universe_size(
      spec.alphabet, length, std::numeric_limits<std::uint64_t>::max());
  if (spec.n > universe) {
    throw InvalidInput("cannot draw " + std::to_string(spec.n) +
                       " distinct items from a universe of " +
                       std::to_string(universe));
  }
  const bool exhaustive = spec.n == universe;
  if (exhaustive || (spec.distribution == Distribution::kUniform &&
                     universe <= kEnumerateLimit && universe <= 4 * spec.n)) {
    // Partial Fisher-Yates over the code space 0..sigma^L-1.
    std::vector<std::uint64_t> codes(universe);
    std::iota(codes.begin(), codes.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < spec.n; ++i) {
      const std::size_t j = i + source.rng().below(universe - i);
      std::swap(codes[i], codes[j]);
      std::uint64_t code = codes[i];
      for (std::uint32_t p = length; p-- > 0;) {
        symbols[i * length + p] = static_cast<Symbol>(code % spec.alphabet);
        code /= spec.alphabet;
      }
    }
    return Dataset(alphabet, length, std::move(symbols));
  }

  std::unordered_set<std::string> seen;
  seen.reserve(spec.n);
  const std::size_t max_attempts = 64 * spec.n + 1024;
  std::size_t attempts = 0;
  for (std::size_t i = 0; i < spec.n;) {
    if (++attempts > max_attempts) {
      throw InvalidInput("distinct generation did not converge; universe too "
                         "small for the requested distribution");
    }
    auto row = std::span<Symbol>(symbols).subspan(i * length, length);
    source.fill(row);
    std::string key(reinterpret_cast<const char*>(row.data()),
                    row.size() * sizeof(Symbol));
    if (seen.insert(std::move(key)).second) ++i;
  }
  return Dataset(alphabet, length, std::move(symbols));
}

std::vector<Sequence> generate_queries(const Dataset& dataset,
                                       std::size_t count,
                                       std::uint32_t prefix_len,
                                       std::uint64_t seed) {
  Rng rng(seed);
  const std::uint32_t length = dataset.length();
  const std::uint32_t sigma = dataset.alphabet().size();
  const std::uint32_t keep = std::min(prefix_len, length);
  std::vector<Sequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Sequence q(length);
    std::uint32_t j = 0;
    if (keep > 0 && !dataset.empty()) {
      const SequenceView src = dataset.item(rng.below(dataset.size()));
      for (; j < keep; ++j) q[j] = src[j];
    }
    for (; j < length; ++j) q[j] = static_cast<Symbol>(rng.below(sigma));
    out.push_back(std::move(q));
  }
  return out;
}

nanoseconds nearest_rank(std::span<const nanoseconds> sorted, double percentile) {
  if (sorted.empty()) return nanoseconds{0};
  const double rank = std::ceil(percentile / 100.0 * static_cast<double>(sorted.size()));
  const auto idx = static_cast<std::size_t>(std::max(rank, 1.0)) - 1;
  return sorted[std::min(idx, sorted.size() - 1)];
}

LatencyStats latency_stats(std::vector<nanoseconds> samples, nanoseconds elapsed) {
  std::sort(samples.begin(), samples.end());
  LatencyStats s;
  s.total_queries = samples.size();
  s.p50 = nearest_rank(samples, 50);
  s.p95 = nearest_rank(samples, 95);
  s.p99 = nearest_rank(samples, 99);
  s.max = samples.empty() ? nanoseconds{0} : samples.back();
  const double seconds = std::chrono::duration<double>(elapsed).count();
  s.qps = seconds > 0 ? static_cast<double>(s.total_queries) / seconds : 0;
  return s;
}

MemoryEstimate memory_wall(std::uint64_t n, std::uint64_t budget_bytes,
                           std::optional<std::uint64_t> index_bytes) {
  if (n == 0) throw InvalidInput("n must be positive");
  if (n > 0xFFFFFFFFull) throw InvalidInput("n too large for 64-bit byte counts");
  MemoryEstimate m;
  m.n = n;
  m.materialization_bytes = n * n * kMaterializationEntryBytes;
  m.budget_bytes = budget_bytes;
  m.feasible = m.materialization_bytes <= budget_bytes;
  if (index_bytes) {
    m.index_bytes_measured = index_bytes;
    m.ratio = *index_bytes == 0
                  ? std::numeric_limits<double>::infinity()
                  : static_cast<double>(m.materialization_bytes) /
                        static_cast<double>(*index_bytes);
  }
  return m;
}

std::string format_gib(std::uint64_t bytes) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f GiB",
                static_cast<double>(bytes) / static_cast<double>(kGiB));
  return buf;
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::kSustained: return "sustained";
    case Scenario::kGnc: return "gnc";
    case Scenario::kTalSweep: return "tal_sweep";
    case Scenario::kMemo: return "memo";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Config parsing

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class LineError {
 public:
  LineError(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + " (" + key_ +
                      "): " + what);
  }
 private:
  std::size_t line_;
  std::string key_;
};

std::uint64_t parse_uint(std::string_view text, const LineError& where) {
  std::string digits;
  for (char c : text) {
    if (c != ',' && c != '_') digits.push_back(c);
  }
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    where.fail("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, const LineError& where) {
  std::string s(text);
  s.erase(std::remove(s.begin(), s.end(), ','), s.end());
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(s.substr(0, slash), &used);
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0) where.fail("zero denominator");
      return num / den;
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) where.fail("trailing characters in '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    where.fail("expected a number, got '" + s + "'");
  }
}

std::uint64_t positive(std::uint64_t v, const LineError& where) {
  if (v == 0) where.fail("must be positive");
  return v;
}

std::uint32_t narrow32(std::uint64_t v, const LineError& where) {
  if (v > 0xFFFFFFFFull) where.fail("value too large");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::string_view text) {
  ScenarioConfig c;
  bool have_scenario = false;
  bool have_seed = false;
  bool have_cluster_depth = false;
  std::set<std::string> seen_keys;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of(":=");
    if (sep == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key: value'");
    }
    const std::string key(trim(line.substr(0, sep)));
    const std::string_view value = trim(line.substr(sep + 1));
    const LineError where(line_no, key);
    if (value.empty()) where.fail("missing value");
    if (!seen_keys.insert(key).second) where.fail("duplicate key");

    if (key == "scenario") {
      if (value == "sustained") c.scenario = Scenario::kSustained;
      else if (value == "gnc") c.scenario = Scenario::kGnc;
      else if (value == "tal_sweep") c.scenario = Scenario::kTalSweep;
      else if (value == "memo") c.scenario = Scenario::kMemo;
      else where.fail("unknown scenario '" + std::string(value) +
                      "' (expected sustained, gnc, tal_sweep or memo)");
      have_scenario = true;
    } else if (key == "seed") {
      c.seed = parse_uint(value, where);
      have_seed = true;
    } else if (key == "n_items" || key == "n_candidates") {
      c.n_items = positive(parse_uint(value, where), where);
    } else if (key == "seq_len" || key == "max_len") {
      c.seq_len = narrow32(positive(parse_uint(value, where), where), where);
    } else if (key == "alphabet" || key == "sigma") {
      c.alphabet = narrow32(parse_uint(value, where), where);
      if (c.alphabet < Alphabet::kMinSize || c.alphabet > Alphabet::kMaxSize) {
        where.fail("alphabet must be in [2, 65536]");
      }
    } else if (key == "k" || key == "top_k") {
      c.k = positive(parse_uint(value, where), where);
    } else if (key == "query_mode") {
      try {
        c.query_mode = parse_query_mode(value);
      } catch (const ConfigError& e) {
        where.fail(e.what());
      }
    } else if (key == "bucket_count") {
      c.bucket_count = positive(parse_uint(value, where), where);
    } else if (key == "buckets") {
      std::string list(value);
      std::replace(list.begin(), list.end(), ',', ' ');
      std::istringstream items(list);
      std::string item;
      while (items >> item) {
        c.buckets.push_back(positive(parse_uint(item, where), where));
      }
      if (c.buckets.empty()) where.fail("empty bucket list");
    } else if (key == "queries") {
      c.queries = positive(parse_uint(value, where), where);
    } else if (key == "run_seconds_target" || key == "duration_s") {
      c.run_seconds_target = parse_real(value, where);
      if (c.run_seconds_target < 0) where.fail("must be non-negative");
    } else if (key == "warmup_s") {
      c.warmup_s = parse_real(value, where);
      if (c.warmup_s < 0) where.fail("must be non-negative");
    } else if (key == "prefix_len") {
      c.prefix_len = narrow32(parse_uint(value, where), where);
    } else if (key == "simulation_steps" || key == "steps") {
      c.simulation_steps = positive(parse_uint(value, where), where);
    } else if (key == "distribution") {
      try {
        c.distribution = parse_distribution(value);
      } catch (const ConfigError& e) {
        where.fail(e.what());
      }
    } else if (key == "zipf_s") {
      c.zipf_exponent = parse_real(value, where);
      if (!(c.zipf_exponent > 0)) where.fail("must be positive");
    } else if (key == "cluster_depth") {
      c.cluster_depth = narrow32(positive(parse_uint(value, where), where), where);
      have_cluster_depth = true;
    } else if (key == "workers") {
      c.workers = positive(parse_uint(value, where), where);
    } else if (key == "index_path") {
      c.index_path = std::string(value);
    } else if (key == "mode" || key == "sensors" || key == "update_rate" ||
               key == "range_fraction") {
      c.informational[key] = std::string(value);
    } else {
      where.fail("unknown key");
    }
  }
  if (!have_scenario) throw ConfigError("config is missing 'scenario'");
  if (!have_seed) throw ConfigError("config is missing 'seed'");
  if (!have_cluster_depth) c.cluster_depth = std::min<std::uint32_t>(8, c.seq_len);
  if (c.prefix_len > c.seq_len) {
    throw ConfigError("prefix_len " + std::to_string(c.prefix_len) +
                      " exceeds seq_len " + std::to_string(c.seq_len));
  }
  return c;
}

std::vector<std::uint64_t> ScenarioConfig::sweep_buckets() const {
  if (!buckets.empty()) return buckets;
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = 1; b < bucket_count; b *= 4) out.push_back(b);
  out.push_back(bucket_count);
  return out;
}

GeneratorSpec ScenarioConfig::generator() const {
  GeneratorSpec g;
  g.n = n_items;
  g.length = seq_len;
  g.alphabet = alphabet;
  g.seed = seed;
  g.distribution = distribution;
  g.zipf_exponent = zipf_exponent;
  g.cluster_depth = cluster_depth;
  return g;
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(scenario);
  j["seed"] = seed;
  j["n_items"] = n_items;
  j["seq_len"] = seq_len;
  j["alphabet"] = alphabet;
  j["k"] = k;
  j["query_mode"] = lcpindex::to_string(query_mode);
  j["distribution"] = to_string(distribution);
  if (distribution == Distribution::kClustered) {
    j["zipf_s"] = zipf_exponent;
    j["cluster_depth"] = cluster_depth;
  }
  j["queries"] = queries;
  j["prefix_len"] = prefix_len;
  j["workers"] = workers;
  switch (scenario) {
    case Scenario::kSustained:
      j["run_seconds_target"] = run_seconds_target;
      j["warmup_s"] = warmup_s;
      break;
    case Scenario::kGnc:
      j["simulation_steps"] = simulation_steps;
      break;
    case Scenario::kTalSweep:
      j["buckets"] = sweep_buckets();
      break;
    case Scenario::kMemo:
      break;
  }
  if (index_path) j["index_path"] = *index_path;
  for (const auto& [key, value] : informational) j["informational"][key] = value;
  return j;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double millis(nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }
double seconds(nanoseconds d) { return std::chrono::duration<double>(d).count(); }

nlohmann::ordered_json work_json(const WorkReport& w) {
  nlohmann::ordered_json j;
  j["queries"] = w.queries;
  j["cache_hits"] = w.cache_hits;
  j["symbols_compared"] = w.symbols_compared;
  j["items_scanned"] = w.items_scanned;
  j["nodes_visited"] = w.nodes_visited;
  j["energy_proxy_work_units"] = w.energy_proxy_joules();
  return j;
}

void render_text(const nlohmann::ordered_json& node, const std::string& path,
                 std::ostringstream& out) {
  std::vector<std::pair<std::string, const nlohmann::ordered_json*>> nested;
  for (auto it = node.begin(); it != node.end(); ++it) {
    const auto& value = it.value();
    if (value.is_object()) {
      nested.emplace_back(it.key(), &value);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        nested.emplace_back(it.key() + "." + std::to_string(i), &value[i]);
      }
    } else if (value.is_array()) {
      out << it.key() << " = ";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << (i ? ", " : "") << value[i].dump();
      }
      out << "\n";
    } else if (value.is_string()) {
      out << it.key() << " = " << value.get<std::string>() << "\n";
    } else {
      out << it.key() << " = " << value.dump() << "\n";
    }
  }
  for (const auto& [key, child] : nested) {
    const std::string section = path.empty() ? key : path + "." + key;
    out << "\n[" << section << "]\n";
    render_text(*child, section, out);
  }
}

}  // namespace

nlohmann::ordered_json ScenarioReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = "lcpindex-scenario";
  j["config"] = config.to_json();
  j["work_model"] = {{"item_cost", work.model.item_cost},
                     {"symbol_cost", work.model.symbol_cost},
                     {"unit", "work units (energy proxy, not measured joules)"}};

  auto& det = j["deterministic"];
  det["dataset_digest"] = hex64(dataset_digest);
  det["result_digest"] = hex64(result_digest);
  det["determinism"] = {{"samples", determinism_samples},
                        {"identical", deterministic}};
  auto& timing = j["timing"];
  timing["elapsed_s"] = seconds(elapsed);

  switch (config.scenario) {
    case Scenario::kSustained:
    case Scenario::kGnc:
    case Scenario::kMemo:
      det["node_count"] = node_count;
      det["index_bytes"] = index_bytes;
      det["work"] = work_json(work);
      break;
    case Scenario::kTalSweep:
      break;
  }

  if (config.scenario == Scenario::kSustained || config.scenario == Scenario::kGnc) {
    timing["latency"] = {{"p50_ms", millis(latency.p50)},
                         {"p95_ms", millis(latency.p95)},
                         {"p99_ms", millis(latency.p99)},
                         {"max_ms", millis(latency.max)},
                         {"qps", latency.qps},
                         {"total_queries", latency.total_queries}};
  }
  if (memory) {
    det["memory"] = {{"n", memory->n},
                     {"materialization_bytes", memory->materialization_bytes},
                     {"materialization", format_gib(memory->materialization_bytes)},
                     {"budget_bytes", memory->budget_bytes},
                     {"feasible", memory->feasible}};
    if (memory->index_bytes_measured) {
      det["memory"]["index_bytes_measured"] = *memory->index_bytes_measured;
      det["memory"]["ratio"] = *memory->ratio;
    }
  }
  if (config.scenario == Scenario::kTalSweep) {
    auto rows = nlohmann::ordered_json::array();
    for (const SweepRow& r : sweep) {
      nlohmann::ordered_json row;
      row["requested_buckets"] = r.requested_buckets;
      row["effective_buckets"] = r.effective_buckets;
      row["bucket_depth"] = r.bucket_depth;
      row["work"] = work_json(r.work);
      row["reduction"] = r.unbounded ? nlohmann::ordered_json("inf")
                                     : nlohmann::ordered_json(r.reduction);
      row["mean_scanned_fraction"] = r.mean_scanned_fraction;
      row["max_bucket_size"] = r.max_bucket_size;
      rows.push_back(std::move(row));
    }
    det["tal_sweep"] = std::move(rows);
  }
  if (config.scenario == Scenario::kMemo) {
    det["hot_work"] = work_json(hot_work);
    det["hot_results_identical"] = hot_results_identical;
    timing["cold_s"] = seconds(cold_time);
    timing["hot_s"] = seconds(hot_time);
    timing["speedup"] = memo_speedup;
  }
  if (config.scenario == Scenario::kGnc) {
    det["steps"] = steps;
    timing["steps_per_second"] = steps_per_second;
  }
  return j;
}

std::string ScenarioReport::to_text() const {
  std::ostringstream out;
  out << "# lcpindex scenario report\n";
  render_text(to_json(), "", out);
  return out.str();
}

// ---------------------------------------------------------------------------
// Scenario runner

namespace {

std::uint64_t dataset_digest(const Dataset& d) {
  std::string header;
  for (std::uint64_t v : {std::uint64_t{d.size()}, std::uint64_t{d.length()},
                          std::uint64_t{d.alphabet().size()}}) {
    for (int i = 0; i < 8; ++i) header.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  std::string body;
  body.reserve(d.symbols().size() * 2);
  for (Symbol s : d.symbols()) {
    body.push_back(static_cast<char>(s & 0xFF));
    body.push_back(static_cast<char>(s >> 8));
  }
  return fnv1a(body, fnv1a(header));
}

std::uint64_t results_digest(const std::vector<QueryResult>& results) {
  std::uint64_t h = fnv1a("");
  for (const auto& r : results) h = fnv1a(serialize(r), h);
  return h;
}

// Every 100th position: a deterministic 1% sample, never empty.
std::vector<std::size_t> replay_sample(std::size_t count) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; i += 100) out.push_back(i);
  return out;
}

TrieIndex obtain_index(const ScenarioConfig& config, const Dataset& dataset) {
  if (!config.index_path) return TrieIndex::build(dataset);
  const std::filesystem::path path(*config.index_path);
  if (!std::filesystem::exists(path)) {
    throw InvalidState("index snapshot '" + *config.index_path +
                       "' does not exist; build it before running the scenario");
  }
  std::ifstream in(path, std::ios::binary);
  TrieIndex index = TrieIndex::load(in);
  if (index.size() != dataset.size() || index.length() != dataset.length() ||
      index.alphabet_size() != dataset.alphabet().size()) {
    throw InvalidInput("index snapshot '" + *config.index_path +
                       "' does not match the configured dataset shape");
  }
  return index;
}

struct WorkerOutput {
  std::vector<nanoseconds> samples;
  WorkReport work;
};

// Runs queries[lo, hi) once, storing results; then keeps cycling (timing
// only) until `deadline`.
void run_worker(const TrieIndex& index, const std::vector<Sequence>& queries,
                std::size_t lo, std::size_t hi, const ScenarioConfig& config,
                std::vector<QueryResult>& results, Clock::time_point deadline,
                WorkerOutput& out) {
  out.work = WorkReport(WorkModel::for_length(index.length()));
  for (std::size_t i = lo; i < hi; ++i) {
    const auto t0 = Clock::now();
    results[i] = index.query(queries[i], config.k, config.query_mode, &out.work);
    out.samples.push_back(Clock::now() - t0);
  }
  if (lo == hi) return;
  while (Clock::now() < deadline) {
    for (std::size_t i = lo; i < hi && Clock::now() < deadline; ++i) {
      const auto t0 = Clock::now();
      auto r = index.query(queries[i], config.k, config.query_mode);
      out.samples.push_back(Clock::now() - t0);
      if (r.hits.size() > config.k) throw InvariantViolation("k exceeded");
    }
  }
}

void run_sustained(const ScenarioConfig& config, const Dataset& dataset,
                   ScenarioReport& report) {
  const TrieIndex index = obtain_index(config, dataset);
  report.node_count = index.node_count();
  report.index_bytes = index.memory_bytes();
  report.memory = memory_wall(dataset.size(), 80 * kGiB, index.memory_bytes());
  const auto queries =
      generate_queries(dataset, config.queries, config.prefix_len, config.seed + 1);

  if (config.warmup_s > 0) {
    const auto until = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double>(config.warmup_s));
    for (std::size_t i = 0; Clock::now() < until; i = (i + 1) % queries.size()) {
      (void)index.query(queries[i], config.k, config.query_mode);
    }
  }

  std::vector<QueryResult> results(queries.size());
  std::vector<WorkerOutput> outputs(config.workers);
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(config.run_seconds_target));
  const std::size_t w = config.workers;
  if (w == 1) {
    run_worker(index, queries, 0, queries.size(), config, results, deadline, outputs[0]);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(w);
    for (std::size_t t = 0; t < w; ++t) {
      threads.emplace_back([&, t] {
        try {
          run_worker(index, queries, t * queries.size() / w,
                     (t + 1) * queries.size() / w, config, results, deadline,
                     outputs[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : threads) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  report.elapsed = Clock::now() - start;

  // Merge in worker-id order.
  std::vector<nanoseconds> samples;
  report.work = WorkReport(WorkModel::for_length(dataset.length()));
  for (const auto& o : outputs) {
    samples.insert(samples.end(), o.samples.begin(), o.samples.end());
    report.work.merge(o.work);
  }
  report.work.elapsed = report.elapsed;
  report.latency = latency_stats(std::move(samples), report.elapsed);
  report.result_digest = results_digest(results);

  for (std::size_t i : replay_sample(queries.size())) {
    ++report.determinism_samples;
    const auto again = index.query(queries[i], config.k, config.query_mode);
    if (serialize(again) != serialize(results[i])) report.deterministic = false;
  }
}

void run_gnc(const ScenarioConfig& config, const Dataset& dataset,
             ScenarioReport& report) {
  // The pattern history is the (static) dataset; observations are
  // pre-generated perturbations of historical patterns.
  const TrieIndex index = obtain_index(config, dataset);
  report.node_count = index.node_count();
  report.index_bytes = index.memory_bytes();
  const auto observations = generate_queries(dataset, config.simulation_steps,
                                             config.prefix_len, config.seed + 2);
  std::vector<QueryResult> results(observations.size());
  std::vector<nanoseconds> samples;
  samples.reserve(observations.size());
  report.work = WorkReport(WorkModel::for_length(dataset.length()));
  const auto start = Clock::now();
  for (std::size_t step = 0; step < observations.size(); ++step) {
    const auto t0 = Clock::now();
    results[step] = index.query(observations[step], config.k, config.query_mode,
                                &report.work);
    samples.push_back(Clock::now() - t0);
  }
  report.elapsed = Clock::now() - start;
  report.work.elapsed = report.elapsed;
  report.steps = observations.size();
  report.steps_per_second =
      static_cast<double>(report.steps) / std::max(seconds(report.elapsed), 1e-12);
  report.latency = latency_stats(std::move(samples), report.elapsed);
  report.result_digest = results_digest(results);
  for (std::size_t i : replay_sample(observations.size())) {
    ++report.determinism_samples;
    const auto again = index.query(observations[i], config.k, config.query_mode);
    if (serialize(again) != serialize(results[i])) report.deterministic = false;
  }
}

std::uint64_t max_bucket_size(const TalEngine& engine) {
  std::uint64_t best = 0;
  std::size_t run_start = 0;
  const std::uint32_t d = engine.bucket_depth();
  for (std::size_t pos = 1; pos <= engine.size(); ++pos) {
    const bool boundary =
        pos == engine.size() ||
        !std::ranges::equal(engine.sorted_item(pos).first(d),
                            engine.sorted_item(run_start).first(d));
    if (boundary) {
      best = std::max<std::uint64_t>(best, pos - run_start);
      run_start = pos;
    }
  }
  return best;
}

WorkReport run_tal(const TalEngine& engine, const std::vector<Sequence>& queries,
                   std::size_t k, std::vector<QueryResult>* results) {
  WorkReport total(engine.work_model());
  for (const auto& q : queries) {
    auto [result, work] = engine.query(q, k);
    total.merge(work);
    if (results != nullptr) results->push_back(std::move(result));
  }
  return total;
}

void run_tal_sweep(const ScenarioConfig& config, const Dataset& dataset,
                   ScenarioReport& report) {
  const auto queries =
      generate_queries(dataset, config.queries, config.prefix_len, config.seed + 1);
  const auto start = Clock::now();
  const TalEngine full = TalEngine::build(dataset, 1);
  const WorkReport baseline = run_tal(full, queries, config.k, nullptr);
  report.work = baseline;
  std::uint64_t digest = fnv1a("");
  for (std::uint64_t b : config.sweep_buckets()) {
    const TalEngine engine = TalEngine::build(dataset, b);
    std::vector<QueryResult> results;
    SweepRow row;
    row.requested_buckets = b;
    row.effective_buckets = engine.bucket_count();
    row.bucket_depth = engine.bucket_depth();
    row.work = run_tal(engine, queries, config.k, &results);
    const WorkReduction red = work_reduction(baseline, row.work);
    row.reduction = red.factor;
    row.unbounded = red.unbounded;
    row.mean_scanned_fraction =
        dataset.empty() ? 0.0
                        : static_cast<double>(row.work.items_scanned) /
                              (static_cast<double>(queries.size()) *
                               static_cast<double>(dataset.size()));
    row.max_bucket_size = max_bucket_size(engine);
    for (std::size_t i : replay_sample(queries.size())) {
      ++report.determinism_samples;
      if (serialize(engine.query(queries[i], config.k).first) !=
          serialize(results[i])) {
        report.deterministic = false;
      }
    }
    digest = fnv1a(std::to_string(b), digest);
    for (const auto& r : results) digest = fnv1a(serialize(r), digest);
    report.sweep.push_back(std::move(row));
  }
  report.result_digest = digest;
  report.elapsed = Clock::now() - start;
}

void run_memo(const ScenarioConfig& config, const Dataset& dataset,
              ScenarioReport& report) {
  const TrieIndex index = obtain_index(config, dataset);
  report.node_count = index.node_count();
  report.index_bytes = index.memory_bytes();
  auto pool = generate_queries(dataset, config.queries, config.prefix_len, config.seed + 1);
  {  // first occurrences only, so the cold pass never hits the cache
    std::set<Sequence> seen;
    std::erase_if(pool, [&](const Sequence& q) { return !seen.insert(q).second; });
  }
  QueryCache cache;
  const WorkModel model = WorkModel::for_length(dataset.length());
  report.work = WorkReport(model);
  report.hot_work = WorkReport(model);
  std::vector<QueryResult> cold(pool.size());
  std::vector<QueryResult> hot(pool.size());

  const auto start = Clock::now();
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    cold[i] = memoized_query(index, pool[i], config.k, config.query_mode, cache,
                             &report.work);
  }
  report.cold_time = Clock::now() - t0;
  t0 = Clock::now();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    hot[i] = memoized_query(index, pool[i], config.k, config.query_mode, cache,
                            &report.hot_work);
  }
  report.hot_time = Clock::now() - t0;
  report.elapsed = Clock::now() - start;
  report.work.elapsed = report.cold_time;
  report.hot_work.elapsed = report.hot_time;
  report.memo_speedup = report.hot_time.count() > 0
                            ? static_cast<double>(report.cold_time.count()) /
                                  static_cast<double>(report.hot_time.count())
                            : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (serialize(cold[i]) != serialize(hot[i])) report.hot_results_identical = false;
  }
  report.result_digest = results_digest(cold);
  for (std::size_t i : replay_sample(pool.size())) {
    ++report.determinism_samples;
    if (serialize(index.query(pool[i], config.k, config.query_mode)) !=
        serialize(cold[i])) {
      report.deterministic = false;
    }
  }
}

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config) {
  ScenarioReport report;
  report.config = config;
  const Dataset dataset = generate_dataset(config.generator());
  report.dataset_digest = dataset_digest(dataset);
  report.work = WorkReport(WorkModel::for_length(dataset.length()));
  switch (config.scenario) {
    case Scenario::kSustained: run_sustained(config, dataset, report); break;
    case Scenario::kGnc: run_gnc(config, dataset, report); break;
    case Scenario::kTalSweep: run_tal_sweep(config, dataset, report); break;
    case Scenario::kMemo: run_memo(config, dataset, report); break;
  }
  return report;
}

}  // namespace lcpindex::bench
