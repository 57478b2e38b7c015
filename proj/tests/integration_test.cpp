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

// End-to-end flows across modules: files on disk, the installed executable,
// shared caches under concurrency, and agreement between the two engines.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lcpindex/bench.hpp"
#include "lcpindex/dataset_io.hpp"
#include "lcpindex/oracle.hpp"
#include "lcpindex/query_cache.hpp"
#include "lcpindex/tal.hpp"
#include "lcpindex/trie_index.hpp"

namespace lcpindex {
namespace {

namespace fs = std::filesystem;

struct Exec {
  int status;
  std::string out;
};

Exec exec(const std::string& command) {
  Exec r{0, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "lcpindex_integration";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  const std::string cli_ = LCPINDEX_CLI_PATH;
  fs::path dir_;
};

TEST_F(Pipeline, ExecutableExitCodes) {
  EXPECT_EQ(exec(cli_ + " nonsense").status, 2);
  EXPECT_EQ(exec(cli_ + " build " + path("absent.txt") + " -o " + path("x.idx")).status, 3);
  const Exec ok = exec(cli_ + " memwall --n 500000");
  EXPECT_EQ(ok.status, 0);
  EXPECT_NE(ok.out.find("465.66 GiB"), std::string::npos);
  EXPECT_NE(ok.out.find("infeasible"), std::string::npos);
}

TEST_F(Pipeline, TextAndBinaryInputsGiveTheSameSnapshot) {
  ASSERT_EQ(exec(cli_ + " generate -o " + path("d.txt") +
                 " --text --n 500 --length 12 --alphabet 5 --seed 2").status, 0);
  ASSERT_EQ(exec(cli_ + " generate -o " + path("d.bin") +
                 " --n 500 --length 12 --alphabet 5 --seed 2").status, 0);
  ASSERT_EQ(exec(cli_ + " build " + path("d.txt") + " --alphabet 5 -o " + path("t.idx")).status, 0);
  ASSERT_EQ(exec(cli_ + " build " + path("d.bin") + " -o " + path("b.idx")).status, 0);
  std::ifstream a(path("t.idx"), std::ios::binary), b(path("b.idx"), std::ios::binary);
  const std::string sa{std::istreambuf_iterator<char>(a), {}}, sb{std::istreambuf_iterator<char>(b), {}};
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
}

TEST_F(Pipeline, LoadedSnapshotAnswersLikeFreshBuild) {
  bench::GeneratorSpec spec{.n = 5000, .length = 20, .alphabet = 4, .seed = 6};
  spec.distribution = bench::Distribution::kClustered;
  const Dataset d = bench::generate_dataset(spec);
  {
    std::ofstream out(path("d.bin"), std::ios::binary);
    io::write_dataset(out, d);
  }
  ASSERT_EQ(exec(cli_ + " build " + path("d.bin") + " -o " + path("d.idx")).status, 0);
  std::ifstream in(path("d.idx"), std::ios::binary);
  const TrieIndex loaded = TrieIndex::load(in);
  const TrieIndex fresh = TrieIndex::build(d);
  for (const auto& q : bench::generate_queries(d, 300, 10, 7)) {
    EXPECT_EQ(serialize(loaded.query(q, 25, QueryMode::kComplete)),
              serialize(fresh.query(q, 25, QueryMode::kComplete)));
  }
  const Exec verify = exec(cli_ + " verify --dataset " + path("d.bin") + " --queries 60");
  EXPECT_EQ(verify.status, 0) << verify.out;
}

TEST(Engines, RangeScanMatchesStrictTrieWhenDescentReachesBucketDepth) {
  const Dataset d = bench::generate_dataset({.n = 20000, .length = 16, .alphabet = 4, .seed = 8});
  const TrieIndex t = TrieIndex::build(d);
  const TalEngine tal = TalEngine::build(d, 64);
  std::size_t compared = 0;
  for (const auto& q : bench::generate_queries(d, 500, 5, 9)) {
    const auto strict = t.query(q, 10, QueryMode::kStrict);
    if (strict.matched_depth < tal.bucket_depth()) continue;
    ++compared;
    auto hits = tal.query(q, 10).first.hits;
    std::erase_if(hits, [&](const Hit& h) { return h.lcp < strict.matched_depth; });
    EXPECT_EQ(hits, strict.hits);
  }
  EXPECT_GT(compared, 400u);
}

TEST(Engines, SharedCacheUnderConcurrency) {
  const Dataset d = bench::generate_dataset({.n = 20000, .length = 24, .alphabet = 4, .seed = 10});
  const TrieIndex t = TrieIndex::build(d);
  const auto queries = bench::generate_queries(d, 200, 8, 11);
  QueryCache cache;
  std::vector<std::thread> threads;
  std::vector<WorkReport> reports(4, WorkReport(WorkModel::for_length(24)));
  std::vector<int> wrong(4, 0);
  for (int w = 0; w < 4; ++w) {
    threads.emplace_back([&, w] {
      for (int pass = 0; pass < 3; ++pass) {
        for (const auto& q : queries) {
          const auto r = memoized_query(t, q, 12, QueryMode::kComplete, cache, &reports[w]);
          if (r.hits != oracle::top_k(d, q, 12)) ++wrong[w];
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  WorkReport total(WorkModel::for_length(24));
  for (const auto& r : reports) total.merge(r);
  EXPECT_EQ(wrong, std::vector<int>(4, 0));
  EXPECT_EQ(total.queries, 4u * 3u * queries.size());
  EXPECT_LE(cache.size(), queries.size());
  EXPECT_GE(total.cache_hits, total.queries - 4 * queries.size());
}

}  // namespace
}  // namespace lcpindex
