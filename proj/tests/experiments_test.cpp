// Copyright 2026 The planckangle Authors
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

#include "planckangle/cli/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace planckangle::cli;

namespace {

ExperimentConfig parse_or_die(const std::string& text) {
  ParseOutcome out = parse_config(text);
  if (!out.ok()) throw std::runtime_error(out.errors.front());
  return *out.config;
}

const Cell& summary(const RunReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.summary)
    if (k == key) return v;
  throw std::out_of_range(key);
}

double real(const Cell& c) { return std::get<double>(c); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(RunBound, MatchesAnalytic) {
  const RunReport rep = run(parse_or_die("[bound]\nr = 1\n"));
  ASSERT_EQ(rep.table.rows.size(), 3u);
  EXPECT_EQ(rep.table.columns.front(), "r");
  EXPECT_NEAR(real(rep.table.rows[0][4]), 0.7103064960284637, 1e-12);
  for (const auto& row : rep.table.rows) EXPECT_LT(real(row[7]), 0.01);
  EXPECT_NEAR(real(summary(rep, "analytic_delta_phi")), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(RunDistinguish, CurvesAndDemo) {
  const RunReport rep = run(parse_or_die("[distinguish]\nmesh = 64\n"));
  EXPECT_EQ(rep.table.rows.size(), 17u);
  EXPECT_LT(real(summary(rep, "max_abs_diff")), 1e-2);
  EXPECT_GE(real(summary(rep, "demo_unchanged_fraction")), 0.99);
  EXPECT_LE(real(summary(rep, "mesh_diameter")), 0.1);
}

TEST(RunLattice, Summary) {
  const RunReport rep = run(parse_or_die("[lattice]\nrandom_states = 50\n"));
  EXPECT_NEAR(real(rep.table.rows[0][3]), 0.5, 0.005);
  EXPECT_GE(real(summary(rep, "random_min_product")), 0.49);
  EXPECT_NEAR(real(summary(rep, "gaussian_commutator_im")), 1.0, 0.01);
  EXPECT_LT(real(summary(rep, "trace_abs_n256")), 1e-8);
  EXPECT_EQ(real(summary(rep, "canonical_trace_im_n256")), 256.0);
}

TEST(RunCircle, SlopeAndLinearity) {
  const RunReport rep = run(parse_or_die("[circle]\n"));
  EXPECT_EQ(rep.table.rows.size(), 3u);
  EXPECT_LT(real(summary(rep, "slope_relative_error")), 0.02);
  EXPECT_GT(real(summary(rep, "r_squared")), 0.999);
  for (const auto& row : rep.table.rows) EXPECT_LT(real(row[4]), 0.02);
}

TEST(RunHolography, DefaultSlope) {
  const RunReport rep = run(parse_or_die("[holography]\ntrials = 2000\nr = 10\n"));
  EXPECT_EQ(rep.table.rows.size(), 5u);
  const double s = real(summary(rep, "slope_over_eps2"));
  EXPECT_GE(s, 0.95);
  EXPECT_LE(s, 1.05);
  EXPECT_EQ(std::get<std::uint64_t>(summary(rep, "capacity")), 100u);
}

TEST(RunHolography, SaturationRowIsSorted) {
  const RunReport rep = run(parse_or_die("[holography]\ntrials = 200\nsaturation_n = 20\nsaturation_trials = 100\n"));
  ASSERT_EQ(rep.table.rows.size(), 6u);
  EXPECT_EQ(std::get<std::uint64_t>(rep.table.rows[1][0]), 20u);
}

TEST(Determinism, EveryExperimentRendersIdentically) {
  for (const char* text : {"[bound]\nr = 10\nrefinements = 1\n", "seed = 5\n[distinguish]\nmesh = 16\n",
                           "seed = 5\n[lattice]\nn_sites = 256\nlength = 40\nsigma = 2\nrandom_states = 20\n",
                           "[circle]\nn_sites = 256\n", "seed = 5\n[holography]\ntrials = 300\n"}) {
    const ExperimentConfig c = parse_or_die(text);
    for (auto f : {OutputFormat::kCsv, OutputFormat::kJsonLines}) {
      EXPECT_EQ(render_table(run(c).table, f), render_table(run(c).table, f)) << text;
    }
  }
}

TEST(RenderTable, CsvAndJsonLines) {
  Table t{{"a", "b", "c"}, {{1.5, std::int64_t{2}, true}, {0.1, std::int64_t{-3}, false}}};
  EXPECT_EQ(render_table(t, OutputFormat::kCsv), "a,b,c\n1.5,2,true\n0.1,-3,false\n");
  EXPECT_EQ(render_table(t, OutputFormat::kJsonLines),
            "{\"a\":1.5,\"b\":2,\"c\":true}\n{\"a\":0.1,\"b\":-3,\"c\":false}\n");
}

TEST(WriteReport, WritesTableAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "planckangle_write_report";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bound.csv";
  const RunReport rep = run(parse_or_die("[bound]\nr = 1\nrefinements = 1\n"));
  write_report(rep, path, OutputFormat::kCsv);
  EXPECT_EQ(slurp(path), render_table(rep.table, OutputFormat::kCsv));
  const auto meta = nlohmann::json::parse(slurp(dir / "bound.csv.meta.json"));
  EXPECT_EQ(meta["experiment"], "bound");
  EXPECT_EQ(meta["seed"], 42);
  EXPECT_EQ(meta["constants_hash"], planckangle::constants_hash());
  EXPECT_EQ(meta["tool_version"], "0.1.0");
  EXPECT_TRUE(meta["summary"].contains("analytic_delta_phi"));
  EXPECT_FALSE(std::filesystem::exists(dir / "bound.csv.tmp"));
  std::filesystem::remove_all(dir);
}

TEST(WriteReport, MissingDirectoryIsIoError) {
  const RunReport rep = run(parse_or_die("[bound]\nr = 1\nrefinements = 1\n"));
  EXPECT_THROW(write_report(rep, "/nonexistent-dir/x/out.csv", OutputFormat::kCsv), IoError);
}
