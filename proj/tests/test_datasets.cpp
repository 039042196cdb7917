#include "fnnseq/datasets.hpp"
#include "fnnseq/error.hpp"
#include "fnnseq/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace fnnseq;

namespace {

std::filesystem::path work_file(const std::string& name, const std::string& body)
{
    const auto dir = std::filesystem::path(FNNSEQ_TEST_WORK_DIR) / "datasets";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p;
}

double dist(const Sample& a, const Sample& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

} // namespace

TEST_CASE("intersected pair: one common window, distinct prefixes and tails")
{
    const auto ds = gen_intersected_pair(160, 10);
    REQUIRE(ds.sequences.size() == 2);
    CHECK(ds.dim == 2);
    const auto& a = ds.sequences[0].samples;
    const auto& b = ds.sequences[1].samples;
    CHECK(a.size() == 160);
    CHECK(b.size() == 160);
    REQUIRE(ds.shared_window.has_value());
    const auto [first, last] = *ds.shared_window;
    CHECK(first > 10);
    CHECK(last < 160);

    for (std::size_t i = 0; i < 160; ++i) {
        const bool inside = i >= first && i < last;
        if (inside)
            CHECK(dist(a[i], b[i]) < 1e-12);
        else
            CHECK(dist(a[i], b[i]) > 1e-6);
    }
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(dist(a[i], b[i]) >= 0.2);

    // The curves meet without jumps.
    for (std::size_t i = 1; i < 160; ++i) {
        CHECK(dist(a[i], a[i - 1]) < 0.1);
        CHECK(dist(b[i], b[i - 1]) < 0.1);
    }
    CHECK_THROWS_AS(gen_intersected_pair(11, 10), InputError);
}

TEST_CASE("waveforms")
{
    const auto ds = gen_waveforms(20, 3, 0.0);
    REQUIRE(ds.sequences.size() == 4);
    CHECK(ds.sequences[0].label == "sine");
    for (const auto& s : ds.sequences)
        CHECK(s.samples.size() == 60);

    const auto& sine = ds.sequences[0].samples;
    CHECK(sine[0][0] == 0.0);
    CHECK(sine[5][0] == doctest::Approx(1.0));
    CHECK(sine[10][0] == 0.0);
    for (const auto& v : ds.sequences[1].samples)
        CHECK(std::abs(v[0]) == 1.0);
    const auto& tri = ds.sequences[2].samples;
    CHECK(tri[0][0] == doctest::Approx(0.0));
    CHECK(tri[5][0] == doctest::Approx(1.0));
    CHECK(tri[15][0] == doctest::Approx(-1.0));
    const auto& saw = ds.sequences[3].samples;
    CHECK(saw[0][0] == doctest::Approx(0.0));
    CHECK(saw[9][0] == doctest::Approx(0.9));
    CHECK(saw[10][0] == doctest::Approx(-1.0));

    const auto shifted = gen_waveform("sine", 20, 3, std::numbers::pi);
    for (std::size_t i = 0; i < 60; ++i)
        CHECK(shifted.samples[i][0] == doctest::Approx(-sine[i][0]).epsilon(1e-12));
    const auto quarter = gen_waveform("sine", 20, 1, std::numbers::pi / 2);
    CHECK(quarter.samples[0][0] == doctest::Approx(1.0));

    CHECK_THROWS_AS(gen_waveform("noise", 20, 1, 0.0), ContractError);
    CHECK_THROWS_AS(gen_waveform("sine", 4, 1, 0.0), ContractError);
}

TEST_CASE("bundled character fixture")
{
    const auto ds = load_trajectories(default_data_dir() / "characters.csv", {}, 180);
    REQUIRE(ds.sequences.size() == 9);
    const char* expected[] = {"a", "c", "d", "e", "g", "o", "p", "q", "u"};
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(ds.sequences[i].label == expected[i]);
        CHECK(ds.sequences[i].samples.size() == 180);
        CHECK(ds.sequences[i].samples[0] == Sample{0.0, 0.0});
    }
    const auto two = load_trajectories(default_data_dir() / "characters.csv", {"q", "a"}, 50);
    CHECK(two.sequences[0].label == "q");
    CHECK(two.sequences[1].samples.size() == 50);
}

TEST_CASE("trajectory loader errors")
{
    CHECK_THROWS_AS(load_trajectories("/nonexistent/file.csv", {}), InputError);
    CHECK_THROWS_AS(load_trajectories(work_file("hdr.csv", "name,t,x,y\n"), {}), InputError);
    CHECK_THROWS_AS(load_trajectories(work_file("cols.csv", "label,t,x,y\na,0,1\n"), {}), InputError);
    CHECK_THROWS_AS(load_trajectories(work_file("num.csv", "label,t,x,y\na,0,1,zz\n"), {}), InputError);
    CHECK_THROWS_AS(load_trajectories(work_file("gap.csv", "label,t,x,y\na,0,1,1\na,2,1,1\n"), {}), InputError);
    CHECK_THROWS_AS(load_trajectories(work_file("start.csv", "label,t,x,y\na,3,1,1\n"), {}), InputError);
    const auto ok = work_file("ok.csv", "label,t,x,y\na,0,1,1\na,1,2,3\n\nb,0,0,0\nb,1,1,0\na,0,9,9\na,1,9,9\n");
    CHECK_THROWS_AS(load_trajectories(ok, {"z"}), InputError);

    const auto ds = load_trajectories(ok, {}, 3);
    REQUIRE(ds.sequences.size() == 2);
    // The first block of a repeated label wins; samples start at the origin.
    CHECK(ds.sequences[0].samples[1] == Sample{0.5, 1.0});
    CHECK(ds.sequences[0].samples[2] == Sample{1.0, 2.0});
}

TEST_CASE("linear resampling keeps the end points")
{
    const std::vector<Sample> s{{0.0}, {1.0}, {4.0}};
    const auto r = resample_linear(s, 5);
    CHECK(r.front()[0] == 0.0);
    CHECK(r[1][0] == 0.5);
    CHECK(r[3][0] == 2.5);
    CHECK(r.back()[0] == 4.0);
    CHECK_THROWS_AS(resample_linear({}, 4), InputError);
}

TEST_CASE("uniform noise")
{
    const auto clean = gen_waveforms(20, 2, 0.0);
    const auto a = add_noise(clean, {-0.3, 0.3, 7});
    const auto b = add_noise(clean, {-0.3, 0.3, 7});
    const auto c = add_noise(clean, {-0.3, 0.3, 8});
    bool differs = false;
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t i = 0; i < 40; ++i) {
            const double e = a.sequences[s].samples[i][0] - clean.sequences[s].samples[i][0];
            CHECK(e >= -0.3);
            CHECK(e < 0.3);
            CHECK(a.sequences[s].samples[i] == b.sequences[s].samples[i]);
            differs = differs || a.sequences[s].samples[i] != c.sequences[s].samples[i];
        }
    }
    CHECK(differs);
    CHECK(a.noise == "uniform(-0.29999999999999999,0.29999999999999999) seed=7");

    const double eps = 1e-9;
    const auto tiny = add_noise(clean, {-eps, eps, 1});
    for (std::size_t i = 0; i < 40; ++i)
        CHECK(std::abs(tiny.sequences[0].samples[i][0] - clean.sequences[0].samples[i][0]) <= eps);
    CHECK_THROWS_AS(add_noise(clean, {0.3, -0.3, 1}), ContractError);
}

TEST_CASE("scaling")
{
    const auto ds = gen_waveforms(20, 1, 0.0);
    const auto s = scaled(ds, 3.0);
    CHECK(s.sequences[1].samples[0][0] == 3.0);
    const auto r = rescale(s, 0.5);
    CHECK(r.sequences[1].samples[0][0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(scaled(ds, 0.0), ContractError);
    CHECK_THROWS_AS(scaled(ds, INFINITY), ContractError);
}
