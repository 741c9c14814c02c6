#include "erasure_bandit/env.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace erasure_bandit;

TEST_CASE("make_instance computes best arm and gaps")
{
    SUBCASE("explicit vector")
    {
        const auto inst = make_instance(RewardKind::Deterministic, {0, 1, 0});
        CHECK(inst.best_arm() == 1);
        CHECK(std::vector<double>(inst.gaps().begin(), inst.gaps().end()) == std::vector<double>{1, 0, 1});
    }
    SUBCASE("ties go to the lowest index")
    {
        const auto inst = make_instance(RewardKind::GaussianUnitVariance, {0.2, 0.9, 0.9});
        CHECK(inst.best_arm() == 1);
        CHECK(inst.gap(0) == doctest::Approx(0.7));
        CHECK(inst.gap(1) == 0.0);
        CHECK(inst.gap(2) == 0.0);
    }
    SUBCASE("gaussian means may leave [0, 1]")
    {
        const auto inst = make_instance(RewardKind::GaussianUnitVariance, {-1.0, 3.0});
        CHECK(inst.best_arm() == 1);
        CHECK(inst.gap(0) == 4.0);
    }
}

TEST_CASE("make_instance rejects invalid input")
{
    CHECK_THROWS_AS(make_instance(RewardKind::Bernoulli, {0.3}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance(RewardKind::Bernoulli, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance(RewardKind::Bernoulli, {0.3, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance(RewardKind::Deterministic, {-0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_instance(RewardKind::GaussianUnitVariance, {0.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("gap invariants hold for random instances")
{
    RngStream rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto k = 2 + rng.uniform_index(30);
        const auto inst = make_instance(RewardKind::Bernoulli, sample_uniform_means(k, rng));
        const double best = *std::max_element(inst.means().begin(), inst.means().end());
        REQUIRE(inst.gap(inst.best_arm()) == 0.0);
        for (ArmIndex a = 0; a < k; ++a) {
            REQUIRE(inst.gap(a) >= 0.0);
            REQUIRE(inst.gap(a) == best - inst.mean(a));
            if (a < inst.best_arm())
                REQUIRE(inst.mean(a) < best);
        }
    }
}

TEST_CASE("sample_uniform_means")
{
    SUBCASE("K = 50 values in [0, 1]")
    {
        RngStream rng(1);
        const auto means = sample_uniform_means(50, rng);
        CHECK(means.size() == 50);
        CHECK(std::all_of(means.begin(), means.end(), [](double m) { return m >= 0.0 && m <= 1.0; }));
    }
    SUBCASE("deterministic for a fixed seed")
    {
        RngStream a(17), b(17);
        CHECK(sample_uniform_means(2, a) == sample_uniform_means(2, b));
    }
    SUBCASE("law of large numbers")
    {
        RngStream rng(3);
        const auto means = sample_uniform_means(100000, rng);
        double sum = 0.0;
        for (double m : means)
            sum += m;
        CHECK(std::abs(sum / 100000.0 - 0.5) < 0.01);
    }
    SUBCASE("too few arms")
    {
        RngStream rng(3);
        CHECK_THROWS_AS(sample_uniform_means(1, rng), std::invalid_argument);
    }
}

TEST_CASE("draw_reward")
{
    RngStream rng(8);
    SUBCASE("deterministic hard instance")
    {
        const auto nu2 = hard_instance(3, 2);
        CHECK(draw_reward(nu2, 2, rng) == 1.0);
        CHECK(draw_reward(nu2, 0, rng) == 0.0);
        CHECK(draw_reward(nu2, 1, rng) == 0.0);
    }
    SUBCASE("gaussian mean and variance")
    {
        const auto inst = make_instance(RewardKind::GaussianUnitVariance, {0.5, 0.0});
        constexpr int n = 100000;
        double sum = 0.0, sum_sq = 0.0;
        bool left_unit_interval = false;
        for (int i = 0; i < n; ++i) {
            const double r = draw_reward(inst, 0, rng);
            sum += r;
            sum_sq += r * r;
            left_unit_interval |= (r < 0.0 || r > 1.0);
        }
        const double mean = sum / n;
        const double var = (sum_sq - n * mean * mean) / (n - 1);
        CHECK(std::abs(mean - 0.5) < 0.02);
        CHECK(std::abs(var - 1.0) < 0.05);
        CHECK(left_unit_interval); // not clipped
    }
    SUBCASE("bernoulli values and mean")
    {
        const auto inst = make_instance(RewardKind::Bernoulli, {0.3, 0.7});
        constexpr int n = 100000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = draw_reward(inst, 0, rng);
            REQUIRE((r == 0.0 || r == 1.0));
            sum += r;
        }
        CHECK(std::abs(sum / n - 0.3) < 0.01);
    }
    SUBCASE("arm out of range")
    {
        const auto inst = make_instance(RewardKind::Bernoulli, {0.3, 0.7});
        CHECK_THROWS_AS(draw_reward(inst, 2, rng), std::out_of_range);
    }
}

TEST_CASE("deterministic rewards are a pure function of (instance, arm)")
{
    const auto inst = make_instance(RewardKind::Deterministic, {0.25, 0.75});
    RngStream a(1), b(999);
    for (int i = 0; i < 10; ++i) {
        CHECK(draw_reward(inst, 0, a) == draw_reward(inst, 0, b));
        CHECK(draw_reward(inst, 1, a) == 0.75);
    }
}

TEST_CASE("hard_instance")
{
    const auto nu = hard_instance(3, 1);
    CHECK(std::vector<double>(nu.means().begin(), nu.means().end()) == std::vector<double>{0, 1, 0});
    CHECK(nu.kind() == RewardKind::Deterministic);

    const auto small = hard_instance(2, 0);
    CHECK(std::vector<double>(small.means().begin(), small.means().end()) == std::vector<double>{1, 0});
    CHECK(std::vector<double>(small.gaps().begin(), small.gaps().end()) == std::vector<double>{0, 1});

    CHECK_THROWS_AS(hard_instance(5, 5), std::out_of_range);
    CHECK_THROWS_AS(hard_instance(1, 0), std::invalid_argument);
}

TEST_CASE("shuffled permutes means and is reproducible")
{
    const auto inst = make_instance(RewardKind::Bernoulli, {0.1, 0.2, 0.3, 0.4, 0.5});
    RngStream a(4), b(4);
    const auto s1 = shuffled(inst, a);
    const auto s2 = shuffled(inst, b);
    CHECK(std::vector<double>(s1.means().begin(), s1.means().end()) ==
          std::vector<double>(s2.means().begin(), s2.means().end()));
    auto sorted = std::vector<double>(s1.means().begin(), s1.means().end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(s1.mean(s1.best_arm()) == 0.5);
}

TEST_CASE("reward kind names round-trip")
{
    for (auto k : {RewardKind::Bernoulli, RewardKind::GaussianUnitVariance, RewardKind::Deterministic})
        CHECK(parse_reward_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_reward_kind("cauchy"), std::invalid_argument);
}
