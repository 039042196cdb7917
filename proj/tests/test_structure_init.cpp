#include "fnnseq/error.hpp"
#include "fnnseq/training.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace fnnseq;

namespace {

TrainingSequence seq1d(const std::vector<double>& xs, std::string label)
{
    TrainingSequence s;
    s.label = std::move(label);
    for (double x : xs)
        s.samples.push_back({x});
    return s;
}

NetworkConfig cfg1d(std::size_t T, std::size_t d, std::size_t n, double sigma, double theta)
{
    NetworkConfig c;
    c.T = T;
    c.d = d;
    c.n = n;
    c.sigma1 = c.sigma2 = sigma;
    c.theta1 = c.theta2 = theta;
    return c;
}

} // namespace

TEST_CASE("a constant sequence needs one set of each kind and one rule")
{
    // Memory keeps moving toward c, so the widths must cover the whole approach.
    Network net(cfg1d(5, 3, 1, 10.0, 0.3));
    const auto rep = initialize(net, {seq1d(std::vector<double>(30, 0.7), "const")});
    CHECK(rep.seq_sets_added == 1);
    CHECK(rep.samp_sets_added == 1);
    CHECK(rep.rules_added == 1);
    CHECK(net.rules()[0].weight[0] == 0.7);
    CHECK(rep.traces.size() == 1);
    CHECK(rep.traces[0].coverage.size() == 25);
    CHECK(rep.traces[0].coverage.front().first == 5);
    CHECK(rep.warnings.empty());
}

TEST_CASE("shared samples behind different prefixes are split by sequence set")
{
    std::vector<double> tail;
    for (int k = 0; k < 40; ++k)
        tail.push_back(std::sin(0.3 * k));
    auto a = std::vector<double>{1.0, 1.0, 1.0, 1.0};
    auto b = std::vector<double>{-1.0, -1.0, -1.0, -1.0};
    a.insert(a.end(), tail.begin(), tail.end());
    b.insert(b.end(), tail.begin(), tail.end());

    Network net(cfg1d(4, 4, 1, 0.1, 0.3));
    const auto rep = initialize(net, {seq1d(a, "a"), seq1d(b, "b")});
    CHECK(rep.seq_sets_added == 2);
    CHECK(rep.traces[0].seq_set == 0);
    CHECK(rep.traces[1].seq_set == 1);
    const std::size_t M = rep.samp_sets_added;
    CHECK(rep.rules_added >= 2);
    CHECK(rep.rules_added <= 2 * M);

    // Once the memory has forgotten the prefix both sequences visit the
    // same sample sets, so some sample set must carry a rule for each.
    std::set<std::size_t> from_a, from_b;
    for (const auto& r : net.rules())
        (r.seq_set == 0 ? from_a : from_b).insert(r.sample_set);
    bool shared = false;
    for (auto m : from_a)
        shared = shared || from_b.count(m) > 0;
    CHECK(shared);
}

TEST_CASE("a repeated sequence binds to the existing sequence set with a warning")
{
    std::vector<double> xs;
    for (int k = 0; k < 20; ++k)
        xs.push_back(0.05 * k);
    Network net(cfg1d(5, 3, 1, 0.1, 0.3));
    const auto rep = initialize(net, {seq1d(xs, "first"), seq1d(xs, "again")});
    CHECK(rep.seq_sets_added == 1);
    CHECK_FALSE(rep.traces[1].new_sequence_set);
    CHECK(rep.warnings.size() == 1);
}

TEST_CASE("structure matches a term-by-term reference on random streams")
{
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 12; ++rep) {
        const auto c = cfg1d(4 + rep % 4, 2 + rep % 3, 1 + rep % 2, 0.15 + 0.05 * (rep % 3), 0.2 + 0.05 * (rep % 4));
        std::vector<std::vector<double>> streams;
        std::vector<TrainingSequence> seqs;
        for (int s = 0; s < 3; ++s) {
            streams.push_back(oracle::uniform_stream(rng, 25, -1.0, 1.0));
            seqs.push_back(seq1d(streams.back(), "s" + std::to_string(s)));
        }
        const auto ref = oracle::structure_learning(streams, c);

        Network net(c);
        initialize(net, seqs);
        REQUIRE(net.sequence_sets().size() == ref.seq_centers.size());
        REQUIRE(net.sample_sets().size() == ref.samp_centers.size());
        REQUIRE(net.rule_count() == ref.rules.size());
        for (std::size_t j = 0; j < ref.seq_centers.size(); ++j) {
            for (std::size_t k = 0; k < ref.seq_centers[j].size(); ++k)
                CHECK(net.sequence_sets()[j].center[k] == doctest::Approx(ref.seq_centers[j][k]).epsilon(1e-12));
        }
        for (std::size_t j = 0; j < ref.samp_centers.size(); ++j) {
            for (std::size_t k = 0; k < ref.samp_centers[j].size(); ++k)
                CHECK(net.sample_sets()[j].center[k] == doctest::Approx(ref.samp_centers[j][k]).epsilon(1e-12));
        }
        for (std::size_t i = 0; i < ref.rules.size(); ++i) {
            CHECK(net.rules()[i].seq_set == ref.rules[i].p);
            CHECK(net.rules()[i].sample_set == ref.rules[i].m);
            CHECK(net.rules()[i].weight[0] == ref.rules[i].w);
        }
    }
}

TEST_CASE("initialization leaves the network ready to prime")
{
    std::vector<double> xs(15, 0.2);
    Network net(cfg1d(5, 3, 1, 0.1, 0.3));
    initialize(net, {seq1d(xs, "x")});
    CHECK(net.state().t == 0);
    CHECK(net.state().mode == Mode::Priming);
}

TEST_CASE("bad training data is rejected")
{
    Network net(cfg1d(5, 3, 1, 0.1, 0.3));
    CHECK_THROWS_AS(initialize(net, {}), InputError);
    CHECK_THROWS_AS(initialize(net, {seq1d(std::vector<double>(6, 0.0), "short")}), InputError);
    auto bad = seq1d(std::vector<double>(10, 0.0), "nan");
    bad.samples[7][0] = std::nan("");
    CHECK_THROWS_AS(initialize(net, {bad}), InputError);
    auto mixed = seq1d(std::vector<double>(10, 0.0), "mixed");
    mixed.samples[3] = {0.0, 0.0};
    CHECK_THROWS_AS(initialize(net, {mixed}), InputError);
    CHECK(net.rule_count() == 0);
}

TEST_CASE("report text lists counts and traces")
{
    Network net(cfg1d(5, 3, 1, 0.1, 0.3));
    const auto rep = initialize(net, {seq1d(std::vector<double>(12, 0.5), "flat")});
    const auto text = to_text(rep);
    CHECK(text.find("seq_sets_added=1\n") != std::string::npos);
    CHECK(text.find("sequence=flat seq_set=0 new=1 coverage=5:0;") != std::string::npos);
}
