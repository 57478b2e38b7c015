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

#include "lcpindex/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcpindex/bench.hpp"
#include "lcpindex/dataset_io.hpp"
#include "lcpindex/errors.hpp"
#include "lcpindex/oracle.hpp"
#include "lcpindex/tal.hpp"
#include "lcpindex/trie_index.hpp"

namespace lcpindex::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";

  // generate
  std::string out_path;
  std::size_t n = 1000;
  std::uint32_t length = 16;
  std::uint32_t alphabet = 4;
  std::uint64_t seed = 1;
  std::string distribution = "uniform";
  double zipf_s = 1.1;
  std::uint32_t cluster_depth = 8;
  bool distinct = false;
  bool text_out = false;

  // build
  std::string dataset_path;
  bool tokens = false;
  std::string vocab_path;
  std::optional<std::uint32_t> text_alphabet;
  std::optional<std::uint32_t> text_length;

  // query
  std::string index_path;
  std::string query_literal;
  std::string query_file;
  std::size_t k = 10;
  std::string mode = "complete";
  bool verify_oracle = false;

  // bench
  std::string config_path;
  std::string report_prefix;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed_override;

  // memwall
  std::vector<std::uint64_t> memwall_n;
  double budget_gib = 80;

  // verify
  std::size_t verify_queries = 200;
  std::uint64_t verify_buckets = 16;
};

std::ifstream open_in(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + std::string(what) + " '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path, const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + std::string(what) + " '" + path + "'");
  return out;
}

void emit(std::ostream& out, const std::string& format, const Json& j) {
  if (format == "machine") {
    out << j.dump(2) << "\n";
    return;
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    out << it.key() << " = "
        << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
        << "\n";
  }
}

struct LoadedDataset {
  Dataset dataset;
  std::optional<io::Vocabulary> vocabulary;
};

LoadedDataset load_dataset(const Options& o) {
  auto in = open_in(o.dataset_path, "dataset");
  if (io::looks_binary(in)) return {io::read_dataset(in), std::nullopt};
  io::TextOptions text{o.text_alphabet, o.text_length};
  try {
    if (o.tokens) {
      auto t = io::read_token_text(in, text);
      return {std::move(t.dataset), std::move(t.vocabulary)};
    }
    return {io::read_integer_text(in, text), std::nullopt};
  } catch (const InvalidInput& e) {
    throw InvalidInput(o.dataset_path + ": " + e.what());
  }
}

TrieIndex load_index(const std::string& path) {
  auto in = open_in(path, "index");
  try {
    return TrieIndex::load(in);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

bench::GeneratorSpec generator_spec(const Options& o) {
  bench::GeneratorSpec g;
  g.n = o.n;
  g.length = o.length;
  g.alphabet = o.alphabet;
  g.seed = o.seed;
  g.distribution = bench::parse_distribution(o.distribution);
  g.zipf_exponent = o.zipf_s;
  g.cluster_depth = std::min(o.cluster_depth, o.length);
  g.distinct = o.distinct;
  return g;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const Dataset d = bench::generate_dataset(generator_spec(o));
  auto file = open_out(o.out_path, "dataset");
  if (o.text_out) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      const SequenceView row = d.item(i);
      for (std::size_t j = 0; j < row.size(); ++j) file << (j ? " " : "") << row[j];
      file << "\n";
    }
  } else {
    io::write_dataset(file, d);
  }
  emit(out, o.format,
       Json{{"dataset", o.out_path}, {"N", d.size()}, {"L", d.length()},
            {"sigma", d.alphabet().size()}, {"seed", o.seed}});
  return kOk;
}

int cmd_build(const Options& o, std::ostream& out) {
  LoadedDataset loaded = load_dataset(o);
  const auto t0 = std::chrono::steady_clock::now();
  const TrieIndex index = TrieIndex::build(loaded.dataset);
  const auto seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  {
    auto file = open_out(o.out_path, "index");
    index.save(file);
  }
  Json j{{"N", index.size()},
         {"L", index.length()},
         {"sigma", index.alphabet_size()},
         {"node_count", index.node_count()},
         {"build_seconds", seconds},
         {"index_bytes", index.memory_bytes()},
         {"snapshot", o.out_path}};
  if (loaded.vocabulary) {
    const std::string vocab_path =
        o.vocab_path.empty() ? o.out_path + ".vocab" : o.vocab_path;
    auto file = open_out(vocab_path, "vocabulary");
    loaded.vocabulary->write(file);
    j["vocabulary"] = vocab_path;
  }
  emit(out, o.format, j);
  return kOk;
}

// Strict results are the oracle top-k restricted to lcp >= matched depth;
// complete results are the oracle top-k itself.
std::vector<Hit> expected_hits(const Dataset& d, SequenceView q, std::size_t k,
                               const QueryResult& r) {
  auto hits = oracle::top_k(d, q, k);
  if (r.mode == QueryMode::kStrict) {
    std::erase_if(hits, [&](const Hit& h) { return h.lcp < r.matched_depth; });
  }
  return hits;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  const TrieIndex index = load_index(o.index_path);
  const QueryMode mode = parse_query_mode(o.mode);
  std::optional<io::Vocabulary> vocab;
  if (!o.vocab_path.empty()) {
    auto in = open_in(o.vocab_path, "vocabulary");
    vocab = io::Vocabulary::read(in);
  }
  std::vector<std::string> lines;
  if (!o.query_literal.empty()) lines.push_back(o.query_literal);
  if (!o.query_file.empty()) {
    auto in = open_in(o.query_file, "query file");
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    }
  }
  if (lines.empty()) throw ConfigError("no query given (use --q or --query-file)");

  std::vector<Sequence> queries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Sequence q;
    try {
      q = vocab ? io::parse_tokens(lines[i], *vocab) : io::parse_symbols(lines[i]);
    } catch (const InvalidInput& e) {
      throw InvalidInput("query " + std::to_string(i) + ": " + e.what());
    }
    if (q.size() != index.length()) {
      throw InvalidInput("query " + std::to_string(i) + " has length " +
                         std::to_string(q.size()) + ", expected " +
                         std::to_string(index.length()));
    }
    queries.push_back(std::move(q));
  }

  std::optional<Dataset> reference;
  if (o.verify_oracle) {
    if (o.dataset_path.empty()) {
      reference = index.reconstruct_dataset();
    } else {
      reference = load_dataset(o).dataset;
    }
  }

  Json machine = Json::array();
  bool all_match = true;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    QueryResult r;
    try {
      r = index.query(queries[i], o.k, mode);
    } catch (const InvalidInput& e) {
      throw InvalidInput("query " + std::to_string(i) + ": " + e.what());
    }
    if (reference && r.hits != expected_hits(*reference, queries[i], o.k, r)) {
      all_match = false;
      err << "oracle mismatch on query " << i << "\n";
    }
    if (o.format == "machine") {
      Json hits = Json::array();
      for (const Hit& h : r.hits) hits.push_back({h.item, h.lcp});
      machine.push_back(
          {{"query", i}, {"matched_depth", r.matched_depth}, {"hits", hits}});
    } else {
      if (queries.size() > 1) {
        out << "# query " << i << " matched_depth=" << r.matched_depth << "\n";
      }
      for (const Hit& h : r.hits) out << h.item << " " << h.lcp << "\n";
    }
  }
  if (o.format == "machine") out << machine.dump(2) << "\n";
  if (o.verify_oracle) {
    if (!all_match) return kInvariant;
    out << "OK\n";
  }
  return kOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::stringstream text;
  {
    auto in = open_in(o.config_path, "config");
    text << in.rdbuf();
  }
  bench::ScenarioConfig config;
  try {
    config = bench::ScenarioConfig::parse(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(o.config_path + ": " + e.what());
  }
  if (o.workers) config.workers = *o.workers;
  if (o.seed_override) config.seed = *o.seed_override;
  const bench::ScenarioReport report = bench::run_scenario(config);
  const std::string text_report = report.to_text();
  const std::string machine_report = report.to_json().dump(2) + "\n";
  if (!o.report_prefix.empty()) {
    open_out(o.report_prefix + ".txt", "report") << text_report;
    open_out(o.report_prefix + ".json", "report") << machine_report;
  }
  out << (o.format == "machine" ? machine_report : text_report);
  if (!report.deterministic || !report.hot_results_identical) {
    throw InvariantViolation("replayed queries produced different bytes");
  }
  return kOk;
}

int cmd_memwall(const Options& o, std::ostream& out) {
  std::optional<std::uint64_t> index_bytes;
  if (!o.index_path.empty()) index_bytes = load_index(o.index_path).memory_bytes();
  const auto budget = static_cast<std::uint64_t>(o.budget_gib * static_cast<double>(bench::kGiB));
  Json rows = Json::array();
  for (std::uint64_t n : o.memwall_n) {
    const auto m = bench::memory_wall(n, budget, index_bytes);
    if (o.format == "machine") {
      Json row{{"n", m.n},
               {"materialization_bytes", m.materialization_bytes},
               {"materialization_gib", m.materialization_gib()},
               {"budget_bytes", m.budget_bytes},
               {"feasible", m.feasible}};
      if (m.ratio) {
        row["index_bytes_measured"] = *m.index_bytes_measured;
        row["ratio"] = *m.ratio;
      }
      rows.push_back(std::move(row));
      continue;
    }
    out << "n=" << m.n << " materialization=" << bench::format_gib(m.materialization_bytes)
        << " budget=" << bench::format_gib(m.budget_bytes) << " "
        << (m.feasible ? "feasible" : "infeasible");
    if (m.ratio) {
      char ratio[32];
      std::snprintf(ratio, sizeof(ratio), "%.1f", *m.ratio);
      out << " index_bytes=" << *m.index_bytes_measured << " ratio=" << ratio;
    }
    out << "\n";
  }
  if (o.format == "machine") out << rows.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify: oracle equivalence plus structural checks on one dataset.

class Checker {
 public:
  void expect(bool ok, const std::string& check, const std::string& detail) {
    auto& [passed, failed] = counts_[check];
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (failures_.size() < 20) failures_.push_back(check + ": " + detail);
    }
  }

  bool report(std::ostream& out) const {
    bool ok = true;
    for (const auto& [check, c] : counts_) {
      out << check << ": " << (c.second == 0 ? "ok" : "FAILED") << " (" << c.first
          << " passed, " << c.second << " failed)\n";
      ok = ok && c.second == 0;
    }
    for (const auto& f : failures_) out << "  " << f << "\n";
    out << (ok ? "OK" : "FAILED") << "\n";
    return ok;
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts_;
  std::vector<std::string> failures_;
};

int cmd_verify(const Options& o, std::ostream& out) {
  Dataset dataset = [&] {
    if (!o.dataset_path.empty()) return load_dataset(o).dataset;
    return bench::generate_dataset(generator_spec(o));
  }();
  Checker check;
  const TrieIndex index = TrieIndex::build(dataset);
  for (const auto& v : index.check_invariants()) check.expect(false, "trie structure", v);
  check.expect(true, "trie structure", "");

  {
    std::stringstream snap(index.snapshot_bytes());
    const TrieIndex reloaded = TrieIndex::load(snap);
    check.expect(reloaded.snapshot_bytes() == snap.str(), "snapshot round trip",
                 "reloaded snapshot differs");
  }

  const std::size_t n = dataset.size();
  const std::uint32_t length = dataset.length();
  std::vector<Sequence> queries =
      bench::generate_queries(dataset, o.verify_queries / 2, length / 2, o.seed + 11);
  auto random_queries =
      bench::generate_queries(dataset, o.verify_queries - queries.size(), 0, o.seed + 12);
  queries.insert(queries.end(), random_queries.begin(), random_queries.end());
  const std::vector<std::size_t> ks{1, 5, 50, std::max<std::size_t>(n, 1)};

  std::uint64_t buckets = o.verify_buckets;
  {  // clamp to sigma^L
    std::uint64_t universe = 1;
    for (std::uint32_t j = 0; j < length && universe < buckets; ++j) universe *= dataset.alphabet().size();
    buckets = std::min(buckets, universe);
  }
  const TalEngine tal = TalEngine::build(dataset, buckets);
  const TalEngine full_scan = TalEngine::build(dataset, 1);
  {
    std::size_t expect_lo = 0;
    bool partition = true;
    if (tal.has_directory()) {
      for (std::uint64_t id = 0; id < tal.bucket_count(); ++id) {
        const auto [lo, hi] = tal.directory_range(id);
        partition = partition && lo == expect_lo && hi >= lo;
        expect_lo = hi;
      }
      partition = partition && expect_lo == n;
    }
    check.expect(partition, "tal partition", "bucket ranges do not partition [0, N)");
    for (std::size_t pos = 0; pos < n; ++pos) {
      const SequenceView prefix = tal.sorted_item(pos);
      const auto by_search = tal.search_range(prefix);
      check.expect(by_search == tal.bucket_range(prefix) && by_search.first <= pos &&
                       pos < by_search.second,
                   "tal directory/search agreement", "position " + std::to_string(pos));
    }
  }

  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Sequence& q = queries[qi];
    const std::string where = "query " + std::to_string(qi);
    const auto everything = oracle::top_k(dataset, q, std::max<std::size_t>(n, 1));
    const Descent desc = index.descend(q);
    const auto at_least_d = std::count_if(everything.begin(), everything.end(),
                                          [&](const Hit& h) { return h.lcp >= desc.depth; });
    check.expect(n == 0 || static_cast<std::size_t>(at_least_d) == index.subtree_size(desc.node),
                 "descent correctness", where);
    for (std::size_t k : ks) {
      const auto expected = oracle::top_k(dataset, q, k);
      WorkReport work(WorkModel::for_length(length));
      const auto complete = index.query(q, k, QueryMode::kComplete, &work);
      check.expect(complete.hits == expected, "complete == oracle",
                   where + " k=" + std::to_string(k));
      check.expect(work.symbols_compared <= length && complete.hits.size() <= k,
                   "query work bounds", where);
      const auto strict = index.query(q, k, QueryMode::kStrict);
      check.expect(strict.hits == expected_hits(dataset, q, k, strict),
                   "strict == oracle within matched subtree", where);
      const auto [tal_result, tal_work] = tal.query(q, k);
      auto tal_expected = expected;
      std::erase_if(tal_expected,
                    [&](const Hit& h) { return h.lcp < tal.bucket_depth(); });
      check.expect(tal_result.hits == tal_expected, "tal == oracle within bucket", where);
      const auto range = tal.bucket_range(q);
      check.expect(tal_work.items_scanned == range.second - range.first,
                   "tal scan bound", where);
      check.expect(full_scan.query(q, k).first.hits == expected, "full scan == oracle",
                   where);
    }
  }
  out << "dataset: N=" << n << " L=" << length << " sigma=" << dataset.alphabet().size()
      << " nodes=" << index.node_count() << " queries=" << queries.size()
      << " buckets=" << tal.bucket_count() << "\n";
  return check.report(out) ? kOk : kInvariant;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Deterministic top-k retrieval under longest-common-prefix similarity"};
  app.name(args.empty() ? "lcpindex" : args[0]);
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "machine"}));

  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset");
  gen->add_option("-o,--out", o.out_path, "Output dataset file")->required();
  gen->add_option("--n", o.n, "Number of items");
  gen->add_option("--length", o.length, "Sequence length L")->check(CLI::PositiveNumber);
  gen->add_option("--alphabet", o.alphabet, "Alphabet size")->check(CLI::Range(2, 65536));
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--distribution", o.distribution, "uniform or clustered");
  gen->add_option("--zipf-s", o.zipf_s, "Zipf exponent for clustered data");
  gen->add_option("--cluster-depth", o.cluster_depth, "Zipf-distributed prefix length");
  gen->add_flag("--distinct", o.distinct, "Reject duplicate sequences");
  gen->add_flag("--text", o.text_out, "Write integer text instead of binary");

  auto* build = app.add_subcommand("build", "Build an index snapshot from a dataset");
  build->add_option("dataset", o.dataset_path, "Dataset file (binary or text)")->required();
  build->add_option("-o,--out", o.out_path, "Index snapshot to write")->required();
  build->add_flag("--tokens", o.tokens, "Text rows are arbitrary tokens, not integers");
  build->add_option("--vocab-out", o.vocab_path, "Vocabulary file for --tokens");
  build->add_option("--alphabet", o.text_alphabet, "Alphabet size for text input");
  build->add_option("--length", o.text_length, "Sequence length for empty text input");

  auto* query = app.add_subcommand("query", "Query an index snapshot");
  query->add_option("index", o.index_path, "Index snapshot")->required();
  query->add_option("--q", o.query_literal, "Query symbols, whitespace separated");
  query->add_option("--query-file", o.query_file, "One query per line");
  query->add_option("-k,--k", o.k, "Number of results")->check(CLI::PositiveNumber);
  query->add_option("--mode", o.mode, "strict or complete")
      ->check(CLI::IsMember({"strict", "complete"}));
  query->add_option("--vocab", o.vocab_path, "Vocabulary for token queries");
  query->add_flag("--verify-oracle", o.verify_oracle, "Check every answer against brute force");
  query->add_option("--dataset", o.dataset_path, "Dataset for --verify-oracle");

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark scenario");
  bench_cmd->add_option("config", o.config_path, "Scenario config file")->required();
  bench_cmd->add_option("--out", o.report_prefix, "Write PREFIX.txt and PREFIX.json");
  bench_cmd->add_option("--workers", o.workers, "Worker contexts")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", o.seed_override, "Override the config seed");

  auto* memwall = app.add_subcommand("memwall", "Pairwise materialization memory");
  memwall->add_option("--n", o.memwall_n, "Dataset sizes")->required();
  memwall->add_option("--budget-gib", o.budget_gib, "Device memory budget in GiB");
  memwall->add_option("--index", o.index_path, "Index snapshot for measured bytes");

  auto* verify = app.add_subcommand("verify", "Oracle equivalence and invariant checks");
  verify->add_option("--dataset", o.dataset_path, "Dataset file; generated if omitted");
  verify->add_option("--n", o.n, "Generated items");
  verify->add_option("--length", o.length, "Generated length")->check(CLI::PositiveNumber);
  verify->add_option("--alphabet", o.alphabet, "Generated alphabet")->check(CLI::Range(2, 65536));
  verify->add_option("--seed", o.seed, "Generator seed");
  verify->add_option("--distribution", o.distribution, "uniform or clustered");
  verify->add_option("--queries", o.verify_queries, "Number of queries")->check(CLI::PositiveNumber);
  verify->add_option("--buckets", o.verify_buckets, "Bucket count for the range-scan checks")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--tokens", o.tokens, "Text rows are arbitrary tokens");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*gen) return cmd_generate(o, out);
    if (*build) return cmd_build(o, out);
    if (*query) return cmd_query(o, out, err);
    if (*bench_cmd) return cmd_bench(o, out);
    if (*memwall) return cmd_memwall(o, out);
    if (*verify) return cmd_verify(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kInvariant;
  }
  return kUsage;
}

}  // namespace lcpindex::cli
