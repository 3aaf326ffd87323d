#include <algorithm>
#include <cstring>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "angio/core.hpp"

using namespace angio;

TEST_CASE("bounds reject degenerate or mismatched limits") {
    CHECK_THROWS_AS(Bounds({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({1.0}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Bounds({}, {}), std::invalid_argument);
    const Bounds b = Bounds::uniform_box(3, -2.0, 2.0);
    CHECK(b.dimension() == 3);
    CHECK(b.range(1) == 4.0);
}

TEST_CASE("clamp_to_bounds saturates and fixes interior/boundary points") {
    const Bounds b = Bounds::uniform_box(2, -100.0, 100.0);
    CHECK(clamp_to_bounds(std::vector{150.0, -150.0}, b) == std::vector{100.0, -100.0});
    CHECK(clamp_to_bounds(std::vector{0.0, 0.0}, b) == std::vector{0.0, 0.0});
    CHECK(clamp_to_bounds(std::vector{-100.0, 100.0}, b) == std::vector{-100.0, 100.0});
    CHECK_THROWS_AS(clamp_to_bounds(std::vector{1.0}, b), std::invalid_argument);
}

TEST_CASE("random source draws lie in [0,1) and replay bit-exactly") {
    RandomSource a(123456789), b(123456789);
    for (int i = 0; i < 10000; ++i) {
        const double u = a.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.next_unit());
    }
    RandomSource c(987);
    CHECK(a.next_unit() != c.next_unit());
}

TEST_CASE("trial seeds depend only on master seed and index") {
    CHECK(RandomSource::trial_seed(42, 0) == RandomSource::trial_seed(42, 0));
    CHECK(RandomSource::trial_seed(42, 0) != RandomSource::trial_seed(42, 1));
    CHECK(RandomSource::trial_seed(42, 0) != RandomSource::trial_seed(43, 0));
    RandomSource a = RandomSource::for_trial(7, 3);
    RandomSource b = RandomSource::for_trial(7, 3);
    CHECK(a.seed() == b.seed());
    CHECK(a.next_unit() == b.next_unit());
}

TEST_CASE("uniform_in_box is deterministic per seed and stays inside") {
    const Bounds b = Bounds::uniform_box(2, -1.0, 1.0);
    RandomSource r1(55), r2(55);
    const auto x1 = uniform_in_box(r1, b);
    const auto x2 = uniform_in_box(r2, b);
    CHECK(x1 == x2);
    CHECK(b.contains(x1));
}

TEST_CASE("uniform_in_box sample mean matches the uniform expectation") {
    const Bounds b = Bounds::uniform_box(1, 0.0, 1.0);
    RandomSource rng(2024);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += uniform_in_box(rng, b)[0];
    CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(0.5, 0.01));
}

namespace {
RunRecord record_with_final(double f) {
    RunRecord r;
    r.final_best_fitness = f;
    r.best_fitness_trace = {f};
    return r;
}
}  // namespace

TEST_CASE("summarize computes best, mean and population std") {
    const std::vector<RunRecord> constant = {record_with_final(1), record_with_final(1),
                                             record_with_final(1)};
    StatsSummary s = summarize(constant);
    CHECK(s.best == 1.0);
    CHECK(s.mean == 1.0);
    CHECK(s.std == 0.0);
    CHECK(s.n_trials == 3);

    const std::vector<RunRecord> two = {record_with_final(0), record_with_final(2)};
    s = summarize(two);
    CHECK(s.best == 0.0);
    CHECK(s.mean == 1.0);
    CHECK(s.std == 1.0);

    const std::vector<RunRecord> four = {record_with_final(3), record_with_final(4),
                                         record_with_final(5), record_with_final(6)};
    s = summarize(four);
    CHECK(s.best == 3.0);
    CHECK(s.mean == 4.5);
    CHECK_THAT(s.std, Catch::Matchers::WithinAbs(1.118033988749895, 1e-12));

    CHECK_THROWS_AS(summarize(std::vector<RunRecord>{}), std::invalid_argument);
}

TEST_CASE("summarize is permutation-invariant") {
    std::vector<RunRecord> records;
    RandomSource rng(99);
    for (int i = 0; i < 20; ++i) records.push_back(record_with_final(rng.uniform(-5.0, 5.0)));
    const StatsSummary before = summarize(records);
    std::mt19937 shuffler(7);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(records.begin(), records.end(), shuffler);
        const StatsSummary after = summarize(records);
        CHECK(after.best == before.best);
        CHECK_THAT(after.mean, Catch::Matchers::WithinRel(before.mean, 1e-12));
        CHECK_THAT(after.std, Catch::Matchers::WithinRel(before.std, 1e-12));
    }
}
