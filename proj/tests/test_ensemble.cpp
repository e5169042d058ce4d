// Copyright 2026 The purify Authors
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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "purify/ensemble.hpp"
#include "purify/error.hpp"

using namespace purify;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("purify_test_" + name);
}

}  // namespace

TEST_CASE("summaries") {
  const std::vector<double> constant(100, 3.0);
  const auto s = summarize("x", constant);
  CHECK(s.mean == 3.0);
  CHECK(s.std_error == 0.0);
  CHECK(s.count == 100);
  CHECK(std::isnan(summarize("y", std::vector<double>{1.0}).std_error));

  const std::vector<double> v{1, 2, 3, 4};
  const auto t = summarize("z", v);
  CHECK(t.mean == 2.5);
  CHECK(t.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));

  std::vector<double> many;
  for (int k = 0; k < 1000; ++k) many.push_back(0.1 * k);
  CHECK(pairwise_sum(many) == doctest::Approx(49950.0));
}

TEST_CASE("worker count does not change results") {
  RunConfig c;
  c.num_qubits = 12;
  c.p = 0.12;
  c.samples = 40;
  c.profile_lmax = 4;
  c.seed = 77;
  const auto one = run_ensemble(c, {1, true});
  const auto eight = run_ensemble(c, {8, true});
  CHECK(one.observables == eight.observables);
  CHECK(one.samples == eight.samples);
  CHECK(one.find("profile_4") != nullptr);
  CHECK(one.find("missing") == nullptr);
}

TEST_CASE("two phases separate at L=16") {
  RunConfig c;
  c.num_qubits = 16;
  c.observables = ObservableSelection::Purity;
  c.samples = 100;
  c.p = 0.05;
  const auto mixed = *run_ensemble(c).find("purity");
  c.p = 0.30;
  const auto pure = *run_ensemble(c).find("purity");
  CHECK(mixed.mean - pure.mean > 5.0 * std::hypot(mixed.std_error, pure.std_error));
}

TEST_CASE("sweep cardinality, isolation and seeds") {
  RunConfig tmpl;
  tmpl.observables = ObservableSelection::Purity;
  tmpl.samples = 4;
  const std::vector<std::size_t> sizes{8, 16};
  const std::vector<double> ps{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  const auto rows = sweep(make_grid(sizes, ps), tmpl);
  CHECK(rows.size() == 12);
  std::unordered_set<std::uint64_t> point_seeds;
  for (const auto& r : rows) {
    REQUIRE(r.result);
    CHECK(r.error.empty());
    point_seeds.insert(r.result->config.seed);
  }
  CHECK(point_seeds.size() == 12);

  const std::vector<GridPoint> bad{{8, 0.1}, {8, 1.5}, {7, 0.1}};
  const auto mixed = sweep(bad, tmpl);
  CHECK(mixed[0].result);
  CHECK_FALSE(mixed[1].result);
  CHECK(mixed[1].error.find("p out of [0,1]") != std::string::npos);
  CHECK_FALSE(mixed[2].result);
  CHECK_THROWS_AS(sweep({}, tmpl), ValidationError);

  std::unordered_set<std::uint64_t> seeds;
  for (std::size_t s = 0; s < 100000; ++s) seeds.insert(trajectory_seed(5, s));
  CHECK(seeds.size() == 100000);
}

TEST_CASE("resumed sweep equals an uninterrupted one") {
  RunConfig tmpl;
  tmpl.observables = ObservableSelection::Both;
  tmpl.samples = 6;
  tmpl.seed = 31;
  const std::vector<std::size_t> sizes{8, 12};
  const std::vector<double> ps{0.1, 0.2, 0.3};
  const auto grid = make_grid(sizes, ps);
  const auto reference = sweep(grid, tmpl);

  const auto ckpt = temp_path("resume.jsonl");
  std::filesystem::remove(ckpt);
  SweepOptions opt;
  opt.checkpoint_path = ckpt.string();
  const std::vector<GridPoint> first_half(grid.begin(), grid.begin() + 3);
  sweep(first_half, tmpl, opt);
  {
    std::ofstream torn(ckpt, std::ios::app);
    torn << "{\"key\": \"trunc";
  }
  std::size_t fresh = 0;
  opt.on_point = [&](std::size_t, const EnsembleResult&) { ++fresh; };
  const auto resumed = sweep(grid, tmpl, opt);
  CHECK(fresh == grid.size());
  REQUIRE(resumed.size() == reference.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(resumed[i].point == reference[i].point);
    CHECK(resumed[i].result->observables == reference[i].result->observables);
  }
  std::ostringstream a, b;
  write_ensemble_csv(a, to_json(tmpl), reference);
  write_ensemble_csv(b, to_json(tmpl), resumed);
  CHECK(a.str() == b.str());
  std::filesystem::remove(ckpt);
}

TEST_CASE("mean measurement probability tracks pbar") {
  RunConfig tmpl;
  tmpl.circuit_case = CircuitCase::II;
  const auto cfg = point_config(tmpl, {16, 0.25});
  CHECK(cfg.exponent == doctest::Approx(3.0));
  std::vector<double> means;
  for (std::size_t s = 0; s < 2000; ++s) {
    Rng rng(trajectory_seed(cfg.seed, s));
    const auto mp = power_random_profile(16, cfg.exponent, rng);
    double sum = 0.0;
    for (double p : mp.p) sum += p;
    means.push_back(sum / 16.0);
  }
  const auto s = summarize("pbar", means);
  CHECK(std::abs(s.mean - 0.25) < 3.0 * s.std_error);
}

TEST_CASE("serialization") {
  RunConfig c;
  c.num_qubits = 8;
  c.samples = 3;
  c.profile_lmax = 3;
  c.record_every = 4;
  c.circuit_case = CircuitCase::III;
  c.amplitude = 0.4;
  const auto r = run_ensemble(c, {1, true});
  const auto back = ensemble_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back.observables == r.observables);
  CHECK(back.samples == r.samples);
  CHECK(to_json(back.config) == to_json(c));
  CHECK(to_json(c).at("log_base") == 2);

  std::vector<SweepRow> rows{{{8, 0.4}, r, ""}};
  std::ostringstream csv, jsonl;
  write_ensemble_csv(csv, to_json(c), rows);
  write_samples_jsonl(jsonl, to_json(c), rows);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# config: {", 0) == 0);
  std::getline(in, line);
  CHECK(line == "L,case,param,observable,mean,stderr,N,seed");
  std::size_t data_lines = 0;
  while (std::getline(in, line)) ++data_lines;
  CHECK(data_lines == r.observables.size());

  std::istringstream jin(jsonl.str());
  std::size_t lines = 0;
  while (std::getline(jin, line)) {
    const auto j = nlohmann::json::parse(line);
    if (lines == 0) CHECK(j.contains("config"));
    else CHECK(j.at("param") == 0.4);
    ++lines;
  }
  CHECK(lines == 4);
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
