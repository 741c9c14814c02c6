#include "erasure_bandit/episode.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace erasure_bandit;

namespace {

EpisodeStreams streams_for(std::uint64_t seed)
{
    const RngStream root(seed);
    return {root.substream(Purpose::Rewards), root.substream(Purpose::Erasures)};
}

// Records everything it is shown.
class SpyPolicy final : public Policy {
public:
    SpyPolicy(std::size_t k, bool feedback) : k_(k), feedback_(feedback) {}
    std::string_view name() const override { return "spy"; }
    bool uses_feedback() const override { return feedback_; }
    std::size_t arm_count() const override { return k_; }
    ArmIndex next_request(Round t) override { return static_cast<ArmIndex>(t % k_); }
    void observe(Round, const Feedback& fb) override { seen.push_back(fb); }
    std::vector<ArmIndex> active_arms() const override { return {0, 1}; }

    std::vector<Feedback> seen;

private:
    std::size_t k_;
    bool feedback_;
};

} // namespace

TEST_CASE("curve_length")
{
    CHECK(curve_length(1000, 1) == 1000);
    CHECK(curve_length(1000, 1000) == 1);
    CHECK(curve_length(1000, 300) == 4);
}

TEST_CASE("optimal fixed arm on a noiseless channel has zero regret")
{
    const auto inst = make_instance(RewardKind::Deterministic, {1.0, 0.0});
    FixedArmPolicy p(2, 0);
    const auto trace = run_episode(p, inst, 0.0, 500, streams_for(1), {10, false});
    CHECK(trace.regret_curve.size() == 50);
    for (double r : trace.regret_curve)
        CHECK(r == 0.0);
    CHECK(trace.final_regret == 0.0);
}

TEST_CASE("worst fixed arm pays T up to the round-1 fallback")
{
    const auto inst = make_instance(RewardKind::Deterministic, {1.0, 0.0});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FixedArmPolicy p(2, 1);
        const auto trace = run_episode(p, inst, 0.5, 1000, streams_for(seed), {1, true});
        // Only the leading erased rounds can play a fallback of arm 0.
        Round leading_zero = 0;
        for (const auto& rec : trace.records) {
            if (rec.played != 0)
                break;
            ++leading_zero;
        }
        CHECK(trace.final_regret == doctest::Approx(1000.0 - double(leading_zero)));
        CHECK(trace.final_regret >= 1000.0 - 20);
    }
}

TEST_CASE("same streams give bit-identical traces")
{
    const auto inst = make_instance(RewardKind::GaussianUnitVariance, {0.3, 0.6, 0.5});
    auto p1 = sos_sae_policy(3, 20000);
    auto p2 = sos_sae_policy(3, 20000);
    const auto a = run_episode(p1, inst, 0.7, 20000, streams_for(4), {7, true});
    const auto b = run_episode(p2, inst, 0.7, 20000, streams_for(4), {7, true});
    CHECK(a.records == b.records);
    CHECK(a.regret_curve == b.regret_curve);
    CHECK(a.overhead_rounds == b.overhead_rounds);
}

TEST_CASE("trace invariants")
{
    const auto inst = make_instance(RewardKind::Bernoulli, {0.3, 0.6, 0.5, 0.2});
    auto p = sos_sae_policy(4, 30000);
    const auto trace = run_episode(p, inst, 0.8, 30000, streams_for(6), {1000, true});
    REQUIRE(trace.records.size() == 30000);
    CHECK(trace.regret_curve.size() == 30);

    double regret = 0.0;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const auto& rec = trace.records[i];
        REQUIRE(rec.t == i + 1);
        if (!rec.erased)
            REQUIRE(rec.played == rec.requested);
        else if (i > 0)
            REQUIRE(rec.played == trace.records[i - 1].played);
        regret += inst.gap(rec.played);
        if ((i + 1) % 1000 == 0)
            REQUIRE(trace.regret_curve[(i + 1) / 1000 - 1] == regret);
    }
    for (std::size_t k = 1; k < trace.regret_curve.size(); ++k)
        CHECK(trace.regret_curve[k] >= trace.regret_curve[k - 1]);
    CHECK(trace.final_regret == regret);
}

TEST_CASE("feedback is masked for policies that do not use it")
{
    const auto inst = make_instance(RewardKind::Bernoulli, {0.3, 0.6});
    SpyPolicy blind(2, false), sighted(2, true);
    const auto a = run_episode(blind, inst, 0.5, 200, streams_for(2), {1, true});
    const auto b = run_episode(sighted, inst, 0.5, 200, streams_for(2), {1, true});
    for (std::size_t i = 0; i < 200; ++i) {
        CHECK_FALSE(blind.seen[i].played.has_value());
        CHECK_FALSE(blind.seen[i].erased.has_value());
        CHECK(blind.seen[i].reward == a.records[i].reward);
        REQUIRE(sighted.seen[i].played.has_value());
        CHECK(*sighted.seen[i].played == b.records[i].played);
        CHECK(*sighted.seen[i].erased == b.records[i].erased);
    }
}

TEST_CASE("rewards are paired by (round, played arm)")
{
    const auto inst = make_instance(RewardKind::GaussianUnitVariance, {0.0, 0.0, 0.0});
    FixedArmPolicy fixed(3, 1);
    SpyPolicy cycling(3, true);
    const auto a = run_episode(fixed, inst, 0.0, 300, streams_for(3), {1, true});
    const auto b = run_episode(cycling, inst, 0.0, 300, streams_for(3), {1, true});
    for (std::size_t i = 0; i < 300; ++i)
        if (b.records[i].played == 1)
            CHECK(a.records[i].reward == b.records[i].reward);
}

TEST_CASE("run_episode rejects mismatched dimensions")
{
    const auto inst = make_instance(RewardKind::Bernoulli, {0.3, 0.6});
    auto p = sos_sae_policy(3, 100);
    CHECK_THROWS_AS(run_episode(p, inst, 0.5, 100, streams_for(1)), std::invalid_argument);
    auto q = sos_sae_policy(2, 100);
    CHECK_THROWS_AS(run_episode(q, inst, 0.5, 100, streams_for(1), {0, false}), std::invalid_argument);
}
