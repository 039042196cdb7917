// fnnseq: train and evaluate the sequence-learning fuzzy network.
//
//   fnnseq run --experiment patterns --out runs/patterns --plot
//   fnnseq run --config my.cfg --set sigma=0.2 --noise -0.3,0.3
//   fnnseq plot --run runs/patterns
//   fnnseq inspect --run runs/patterns

#include "fnnseq/error.hpp"
#include "fnnseq/experiment.hpp"
#include "fnnseq/model_io.hpp"
#include "fnnseq/plot.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct RunArgs {
    std::string experiment;
    std::string config;
    std::string model;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string noise;
    std::string data;
    std::string labels;
    std::vector<std::string> sets;
    bool plot = false;
};

int cmd_run(const RunArgs& a)
{
    using namespace fnnseq;
    std::vector<std::pair<std::string, std::string>> file;
    if (!a.config.empty())
        file = read_config_file(a.config);

    std::string name = a.experiment;
    if (name.empty()) {
        for (const auto& [k, v] : file) {
            if (k == "experiment")
                name = v;
        }
    }
    if (name.empty())
        throw InputError("choose an experiment with --experiment or experiment= in the config");

    auto cfg = ExperimentConfig::preset(parse_experiment(name));
    cfg.apply(file);
    for (const auto& s : a.sets) {
        const auto kv = parse_key_values(s);
        if (kv.size() != 1)
            throw InputError("--set expects KEY=VALUE, got '" + s + "'");
        cfg.set(kv[0].first, kv[0].second);
    }
    if (!a.model.empty())
        cfg.set("model", a.model);
    if (a.seed)
        cfg.seed = *a.seed;
    if (!a.noise.empty())
        cfg.set("noise", a.noise);
    if (!a.data.empty())
        cfg.set("data", a.data);
    if (!a.labels.empty())
        cfg.set("labels", a.labels);
    if (!a.out.empty())
        cfg.out = a.out;
    if (a.plot)
        cfg.plot = true;

    const auto res = run_experiment(cfg);
    const auto& m = res.metrics;
    std::printf("%s/%s: %zu sequence sets, %zu sample sets, %zu rules (%.2f s)\n", m.experiment.c_str(),
                m.model.c_str(), m.sequence_sets, m.sample_sets, m.rules, m.seconds);
    for (const auto& e : m.episodes) {
        std::printf("  %-14s rmse_max %.6f  max_abs %.6f", e.label.c_str(), e.rmse_max, e.max_abs_error);
        if (e.identified_seq_set)
            std::printf("  identified %s", e.identified() ? "yes" : "NO");
        std::printf("\n");
    }
    if (!cfg.out.empty())
        std::printf("wrote %s\n", cfg.out.string().c_str());
    return 0;
}

int cmd_plot(const std::string& run)
{
    for (const auto& p : fnnseq::emit_plots(run))
        std::printf("%s\n", p.string().c_str());
    return 0;
}

int cmd_inspect(const std::string& run)
{
    const auto path = std::filesystem::path(run) / "model.txt";
    std::ifstream in(path);
    if (!in)
        throw fnnseq::InputError("cannot open " + path.string());
    std::cout << fnnseq::describe(fnnseq::read_model(in));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-part fuzzy neural network for sequence learning"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run = app.add_subcommand("run", "train on an experiment and evaluate closed-loop generation");
    run->add_option("--experiment", ra.experiment, "intersected | patterns | characters | custom");
    run->add_option("--config", ra.config, "key=value config file")->check(CLI::ExistingFile);
    run->add_option("--model", ra.model, "proposed | baseline");
    run->add_option("--seed", ra.seed, "noise seed");
    run->add_option("--out", ra.out, "run directory");
    run->add_option("--noise", ra.noise, "LOW,HIGH uniform noise on priming inputs, or none");
    run->add_option("--data", ra.data, "trajectory CSV (label,t,x,y)");
    run->add_option("--labels", ra.labels, "comma-separated trajectory labels");
    run->add_option("--set", ra.sets, "override one config key, KEY=VALUE (repeatable)");
    run->add_flag("--plot", ra.plot, "write an SVG per sequence");

    std::string plot_dir;
    auto* plot = app.add_subcommand("plot", "render SVGs for every seq_<label>.csv of a run");
    plot->add_option("--run", plot_dir, "run directory")->required();

    std::string inspect_dir;
    auto* inspect = app.add_subcommand("inspect", "print structure counts and the rule table of a run");
    inspect->add_option("--run", inspect_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(ra);
        if (*plot)
            return cmd_plot(plot_dir);
        return cmd_inspect(inspect_dir);
    } catch (const fnnseq::Error& e) {
        std::fprintf(stderr, "fnnseq: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fnnseq: %s\n", e.what());
        return 2;
    }
}
