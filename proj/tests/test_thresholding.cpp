#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "bitext/rng.hpp"
#include "bitext/thresholding.hpp"

using namespace bitext;

namespace {

std::vector<ScoreRecord> make_scores(const std::vector<double>& values) {
  std::vector<ScoreRecord> scores;
  for (size_t i = 0; i < values.size(); ++i) {
    scores.push_back({i, "test", values[i]});
  }
  return scores;
}

std::set<uint64_t> kept_ids(const std::vector<FilterDecision>& decisions) {
  std::set<uint64_t> ids;
  for (const auto& d : decisions) {
    if (d.keep) ids.insert(d.pair_id);
  }
  return ids;
}

// Independent reference: sort everything and take the top k.
std::set<uint64_t> reference_top_k(const std::vector<ScoreRecord>& scores,
                                   uint64_t k) {
  std::vector<ScoreRecord> sorted = scores;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoreRecord& a, const ScoreRecord& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.pair_id < b.pair_id;
            });
  std::set<uint64_t> ids;
  for (uint64_t i = 0; i < k && i < sorted.size(); ++i) {
    ids.insert(sorted[i].pair_id);
  }
  return ids;
}

}  // namespace

TEST_CASE("top fraction keeps the k greatest") {
  auto scores = make_scores({0.9, 0.1, 0.5, 0.7});
  auto result = select_top_fraction(scores, 4, 0.5);
  CHECK(result.n_kept == 2);
  CHECK(result.threshold == 0.7);
  CHECK(kept_ids(result.decisions) == std::set<uint64_t>{0, 3});
}

TEST_CASE("ties break by ascending id") {
  auto scores = make_scores({0.5, 0.5, 0.5, 0.5});
  auto result = select_top_fraction(scores, 4, 0.5);
  CHECK(result.n_kept == 2);
  CHECK(kept_ids(result.decisions) == std::set<uint64_t>{0, 1});
}

TEST_CASE("empty corpus and coverage gaps are errors") {
  CHECK_THROWS_AS(select_top_fraction({}, 0, 0.5), ThresholdError);
  auto scores = make_scores({0.1, 0.2});
  CHECK_THROWS_AS(select_top_fraction(scores, 3, 0.5), ThresholdError);
  scores.push_back({0, "test", 0.3});  // duplicate id
  CHECK_THROWS_WITH_AS(select_top_fraction(scores, 3, 0.5),
                       doctest::Contains("duplicate"), ThresholdError);
}

TEST_CASE("10001 random scores match the full-sort reference") {
  Rng rng(555);
  std::vector<double> values;
  for (int i = 0; i < 10001; ++i) values.push_back(rng.uniform01());
  auto scores = make_scores(values);
  auto result = select_top_fraction(scores, scores.size(), 0.5);
  CHECK(result.n_kept == 5001);
  CHECK(kept_ids(result.decisions) == reference_top_k(scores, 5001));
}

TEST_CASE("absolute threshold is inclusive") {
  auto decisions = select_absolute(make_scores({0.7, 0.69}), 0.7);
  CHECK(decisions[0].keep);
  CHECK_FALSE(decisions[1].keep);
}

TEST_CASE("reported threshold reapplies consistently") {
  Rng rng(808);
  std::vector<double> values;
  for (int i = 0; i < 997; ++i) values.push_back(rng.uniform01());
  auto scores = make_scores(values);
  auto fraction = select_top_fraction(scores, scores.size(), 0.3);
  auto absolute = select_absolute(scores, fraction.threshold);
  // Distinct uniform doubles: no boundary ties, so the sets agree exactly.
  CHECK(kept_ids(absolute) == kept_ids(fraction.decisions));
}

TEST_CASE("median split keeps exactly half") {
  CHECK_THROWS_AS(median_split(make_scores({0.5}), 1), ThresholdError);

  auto three = median_split(make_scores({0.1, 0.2, 0.3}), 3);
  CHECK(three.n_kept == 2);
  CHECK(kept_ids(three.decisions) == std::set<uint64_t>{1, 2});

  Rng rng(4040);
  std::vector<double> values;
  for (int i = 0; i < 40000; ++i) values.push_back(rng.uniform01());
  auto big = median_split(make_scores(values), values.size());
  CHECK(big.n_kept == 20000);
}

TEST_CASE("median split with oracle scores keeps the clean half") {
  // ids 0..49 clean (1.0), 50..99 noisy (0.0)
  std::vector<double> values(100, 0.0);
  for (int i = 0; i < 50; ++i) values[i] = 1.0;
  auto result = median_split(make_scores(values), 100);
  std::set<uint64_t> expected;
  for (uint64_t i = 0; i < 50; ++i) expected.insert(i);
  CHECK(kept_ids(result.decisions) == expected);
}

TEST_CASE("random select cardinality and determinism") {
  auto a = random_select(4, 0.5, 9);
  CHECK(kept_ids(a).size() == 2);
  auto b = random_select(4, 0.5, 9);
  CHECK(kept_ids(a) == kept_ids(b));
  CHECK(kept_ids(random_select(4, 0.5, 10)).size() == 2);
}

TEST_CASE("random select frequencies are uniform across seeds") {
  const uint64_t n = 100000;
  const int runs = 100;
  std::vector<uint32_t> counts(n, 0);
  for (int seed = 0; seed < runs; ++seed) {
    for (const auto& d : random_select(n, 0.5, seed)) {
      if (d.keep) ++counts[d.pair_id];
    }
  }
  // Per-id frequency is binomial(100, 0.5), sd 5%. Check a hard 4-sd
  // window, bound how many ids fall outside it (expect ~6 of 100k),
  // and pin the global mean tightly.
  uint64_t outliers = 0;
  for (uint64_t id = 0; id < n; ++id) {
    const double freq = double(counts[id]) / runs;
    CHECK(freq >= 0.20);
    CHECK(freq <= 0.80);
    if (freq < 0.30 || freq > 0.70) ++outliers;
  }
  CHECK(outliers <= 30);
  double mean = 0.0;
  for (auto c : counts) mean += c;
  mean /= double(n) * runs;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("exactness property across random N and p") {
  Rng rng(31415);
  for (int trial = 0; trial < 300; ++trial) {
    const uint64_t n = 1 + rng.bounded(2000);
    const double p = std::nextafter(rng.uniform01(), 1.0);
    if (p <= 0.0) continue;
    std::vector<double> values;
    for (uint64_t i = 0; i < n; ++i) values.push_back(rng.uniform01());
    auto result = select_top_fraction(make_scores(values), n, p);
    const uint64_t expected = uint64_t(std::floor(p * double(n) + 0.5));
    CHECK(kept_ids(result.decisions).size() == expected);
  }
}

TEST_CASE("permutation invariance of the keep set") {
  Rng rng(2718);
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) values.push_back(rng.bounded(50) / 10.0);
  auto scores = make_scores(values);
  auto baseline = kept_ids(select_top_fraction(scores, 500, 0.4).decisions);
  for (int trial = 0; trial < 5; ++trial) {
    rng.shuffle(scores);
    CHECK(kept_ids(select_top_fraction(scores, 500, 0.4).decisions) ==
          baseline);
  }
}

TEST_CASE("keep sets are nested in p") {
  Rng rng(161803);
  std::vector<double> values;
  for (int i = 0; i < 400; ++i) values.push_back(rng.uniform01());
  auto scores = make_scores(values);
  std::set<uint64_t> previous;
  for (double p : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    auto current = kept_ids(select_top_fraction(scores, 400, p).decisions);
    CHECK(std::includes(current.begin(), current.end(), previous.begin(),
                        previous.end()));
    previous = std::move(current);
  }
}

TEST_CASE("strictly increasing transforms leave the keep set unchanged") {
  Rng rng(42424);
  std::vector<double> values;
  for (int i = 0; i < 300; ++i) values.push_back(rng.uniform(-3.0, 3.0));
  auto scores = make_scores(values);
  auto baseline = kept_ids(select_top_fraction(scores, 300, 0.5).decisions);

  auto transformed = scores;
  for (auto& s : transformed) s.score = std::exp(s.score) * 2.0 + 1.0;
  CHECK(kept_ids(select_top_fraction(transformed, 300, 0.5).decisions) ==
        baseline);
}

TEST_CASE("quantile sketch tracks an exact sort on uniform data") {
  Rng rng(99991);
  std::vector<double> values;
  for (int i = 0; i < 1000000; ++i) values.push_back(rng.uniform01());
  const double t = estimate_quantile(values, 0.5, 1 << 20);
  CHECK(t >= 0.498);
  CHECK(t <= 0.502);

  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double exact = sorted[sorted.size() / 2];
  CHECK(std::fabs(t - exact) < 0.002);
}

TEST_CASE("realized kept fraction within the documented bound") {
  Rng rng(1234321);
  std::vector<double> values;
  for (int i = 0; i < 1000000; ++i) {
    values.push_back(-std::log(1.0 - rng.uniform01()));  // Exp(1)
  }
  const double t = estimate_quantile(values, 0.9, 1 << 20);
  uint64_t kept = 0;
  for (double v : values) kept += v >= t ? 1 : 0;
  const double realized = double(kept) / values.size();
  CHECK(std::fabs(realized - 0.1) <= 0.001);
}

TEST_CASE("constant scores return the constant") {
  std::vector<double> values(10000, 3.25);
  CHECK(estimate_quantile(values, 0.5, 1 << 20) == 3.25);
}

TEST_CASE("too-small budget names the minimum") {
  CHECK_THROWS_WITH_AS(estimate_quantile({1.0}, 0.5, 100),
                       doctest::Contains("need at least"), ThresholdError);
  CHECK(QuantileSketch::min_budget_bytes(0.001) == 3 * 2000 * sizeof(double));
}

TEST_CASE("decisions file round-trip") {
  auto decisions = select_absolute(make_scores({0.9, 0.2, 0.7}), 0.5);
  const auto path =
      (std::filesystem::temp_directory_path() / "decisions_rt.tsv").string();
  write_decisions(decisions, path);
  auto back = read_decisions(path);
  REQUIRE(back.size() == decisions.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].pair_id == decisions[i].pair_id);
    CHECK(back[i].keep == decisions[i].keep);
  }
}
