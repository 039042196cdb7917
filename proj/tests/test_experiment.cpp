#include "fnnseq/error.hpp"
#include "fnnseq/experiment.hpp"
#include "fnnseq/model_io.hpp"
#include "fnnseq/plot.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fnnseq;
namespace fs = std::filesystem;

namespace {

fs::path work_dir(const std::string& name)
{
    const auto dir = fs::path(FNNSEQ_TEST_WORK_DIR) / "experiment" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("key=value parsing")
{
    const auto kv = parse_key_values("# comment\n  T = 12 \n\nsigma=0.2 # trailing\n");
    REQUIRE(kv.size() == 2);
    CHECK(kv[0] == std::make_pair(std::string("T"), std::string("12")));
    CHECK(kv[1].second == "0.2");
    CHECK_THROWS_AS(parse_key_values("no equals sign\n"), InputError);
    CHECK_THROWS_AS(parse_key_values("=5\n"), InputError);
}

TEST_CASE("overrides")
{
    auto c = ExperimentConfig::preset(ExperimentKind::Patterns);
    c.set("sigma", "0.25");
    CHECK(c.net.sigma1 == 0.25);
    CHECK(c.net.sigma2 == 0.25);
    c.set("noise", "-0.1,0.2");
    CHECK(c.noise == std::make_pair(-0.1, 0.2));
    c.set("noise", "none");
    CHECK_FALSE(c.noise.has_value());
    c.set("periods", "3");
    CHECK(c.eval_periods == 4);
    c.set("model", "baseline");
    CHECK(c.model == ModelKind::Baseline);

    CHECK_THROWS_AS(c.set("bogus", "1"), InputError);
    CHECK_THROWS_AS(c.set("T", "ten"), InputError);
    CHECK_THROWS_AS(c.set("experiment", "characters"), InputError);
    CHECK_THROWS_AS(c.set("model", "lstm"), InputError);
    CHECK_THROWS_AS(parse_experiment("mnist"), InputError);
}

TEST_CASE("reference presets")
{
    const auto a = ExperimentConfig::preset(ExperimentKind::Intersected);
    CHECK(a.net.T == 10);
    CHECK(a.net.d == 5);
    CHECK(a.net.n == 1);
    CHECK(a.net.iter_max == 20);
    CHECK(a.net.theta3 == 0.01);
    const auto b = ExperimentConfig::preset(ExperimentKind::Patterns);
    CHECK(b.net.T == 20);
    CHECK(b.net.d == 20);
    CHECK(b.net.n == 2);
    CHECK(b.net.theta1 == 0.4);
    CHECK(b.net.theta2 == 0.1);
    const auto c = ExperimentConfig::preset(ExperimentKind::Characters);
    CHECK(c.net.T == 30);
    CHECK(c.net.d == 30);
    CHECK(c.net.sigma1 == 0.2);
    CHECK(c.labels.size() == 9);
}

TEST_CASE("config text round trip")
{
    for (auto kind : {ExperimentKind::Intersected, ExperimentKind::Patterns, ExperimentKind::Characters}) {
        auto c = ExperimentConfig::preset(kind);
        c.set("seed", "42");
        c.set("eta0", "0.07");
        c.set("epochs", "3");
        const auto text = c.to_text();
        auto back = ExperimentConfig::preset(kind);
        back.apply(parse_key_values(text));
        CHECK(back.to_text() == text);
        CHECK(back.seed == 42);
        CHECK(back.tune_config().epochs == 3);
    }
}

TEST_CASE("validation catches unusable configs")
{
    auto c = ExperimentConfig::preset(ExperimentKind::Patterns);
    c.train_periods = 0;
    CHECK_THROWS(c.validate());
    auto d = ExperimentConfig::preset(ExperimentKind::Custom);
    CHECK_THROWS_AS(d.validate(), InputError);
}

TEST_CASE("a run writes every output file and equal runs write equal metrics")
{
    auto cfg = ExperimentConfig::preset(ExperimentKind::Patterns);
    cfg.train_periods = 2;
    cfg.eval_periods = 2;
    cfg.fine_tune = false;
    cfg.out = work_dir("run1");
    cfg.plot = true;
    const auto r1 = run_experiment(cfg);
    for (const char* f : {"config.txt", "metrics.json", "timing.json", "model.txt", "init.txt", "tune.txt",
                          "seq_sine.csv", "seq_sine.svg", "seq_sine_phase180.csv"})
        CHECK(fs::exists(cfg.out / f));

    const auto j = nlohmann::json::parse(slurp(cfg.out / "metrics.json"));
    CHECK(j["experiment"] == "patterns");
    CHECK(j["structure"]["sequence_sets"] == r1.metrics.sequence_sets);
    CHECK(j["episodes"].size() == 6);
    CHECK_FALSE(j.contains("seconds"));

    const auto csv = slurp(cfg.out / "seq_square.csv");
    CHECK(csv.rfind("t,target_0,output_0\n2,", 0) == 0);
    CHECK(count(csv, "\n") == 1 + 39);

    const auto first = slurp(cfg.out / "metrics.json");
    cfg.out = work_dir("run2");
    run_experiment(cfg);
    CHECK(first == slurp(cfg.out / "metrics.json"));

    std::ifstream in(cfg.out / "config.txt");
    auto again = ExperimentConfig::preset(ExperimentKind::Patterns);
    again.apply(read_config_file(cfg.out / "config.txt"));
    CHECK(again.train_periods == 2);
}

TEST_CASE("model dump round trip")
{
    auto cfg = ExperimentConfig::preset(ExperimentKind::Intersected);
    cfg.samples_per_seq = 60;
    cfg.fine_tune = false;
    const auto res = run_experiment(cfg);

    std::ostringstream os;
    write_model(os, res.model);
    std::istringstream is(os.str());
    const auto back = read_model(is);
    std::ostringstream again;
    write_model(again, back);
    CHECK(again.str() == os.str());

    auto net = to_network(back);
    CHECK(net.rule_count() == res.metrics.rules);
    CHECK(net.sequence_sets().size() == 2);
    CHECK_THROWS_AS(to_baseline(back), InputError);
    CHECK(describe(back).find("sequence sets: 2\n") != std::string::npos);

    auto broken = os.str();
    broken.replace(broken.find("sigma1 "), 7, "sigma9 ");
    std::istringstream bad(broken);
    CHECK_THROWS_AS(read_model(bad), InputError);
    std::istringstream cut(os.str().substr(0, os.str().size() / 2));
    CHECK_THROWS_AS(read_model(cut), InputError);
}

TEST_CASE("baseline dumps reload as baselines")
{
    auto cfg = ExperimentConfig::preset(ExperimentKind::Intersected);
    cfg.samples_per_seq = 60;
    cfg.model = ModelKind::Baseline;
    cfg.fine_tune = false;
    const auto res = run_experiment(cfg);
    std::ostringstream os;
    write_model(os, res.model);
    CHECK(os.str().find("\n- 0 ") != std::string::npos);
    std::istringstream is(os.str());
    const auto back = read_model(is);
    CHECK(to_baseline(back).rule_count() == res.metrics.rules);
    CHECK_THROWS_AS(to_network(back), InputError);
}

TEST_CASE("plots")
{
    const auto empty = work_dir("plots_empty");
    CHECK_THROWS_AS(emit_plots(empty), InputError);
    CHECK_THROWS_AS(emit_plots(empty / "missing"), InputError);

    const auto dir = work_dir("plots");
    std::ofstream(dir / "seq_x.csv") << "t,target_0,output_0\n2,0.1,0.2\n3,0.3,0.25\n4,0.5,0.4\n";
    const auto out = emit_plots(dir);
    REQUIRE(out.size() == 1);
    const auto svg = slurp(out[0]);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count(svg, "<polyline") == 2);
    const auto at = svg.find("points=\"") + 8;
    const auto pts = svg.substr(at, svg.find('"', at) - at);
    CHECK(count(pts, ",") == 3);

    const auto table = read_series_csv(dir / "seq_x.csv");
    CHECK(table.t.size() == 3);
    CHECK(table.dim == 1);

    std::ofstream(dir / "seq_bad.csv") << "t,target_0\n2,0.1\n";
    CHECK_THROWS_AS(emit_plots(dir), InputError);
}

TEST_CASE("label sanitizing")
{
    CHECK(sanitize_label("sine_phase90") == "sine_phase90");
    CHECK(sanitize_label("a/b c") == "a_b_c");
}
