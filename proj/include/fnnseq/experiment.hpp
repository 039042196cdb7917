#pragma once

// Experiment harness: dataset construction, training, closed-loop
// evaluation and run-directory output for the three reference experiments
// and for ad-hoc trajectory files.

#include "fnnseq/datasets.hpp"
#include "fnnseq/model_io.hpp"
#include "fnnseq/network.hpp"
#include "fnnseq/training.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fnnseq {

enum class ExperimentKind { Intersected, Patterns, Characters, Custom };
enum class ModelKind { Proposed, Baseline };

std::string to_string(ExperimentKind kind);
std::string to_string(ModelKind kind);
ExperimentKind parse_experiment(const std::string& name);
ModelKind parse_model(const std::string& name);

/// Flat `key=value` lines; '#' starts a comment. Throws InputError on a
/// line without '=' or an empty key.
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Intersected;
    ModelKind model = ModelKind::Proposed;
    NetworkConfig net;
    std::optional<std::size_t> epochs;    // outer fine-tune passes; iter_max when unset
    bool fine_tune = true;
    std::uint64_t seed = 0;
    std::optional<std::pair<double, double>> noise;  // uniform noise on evaluation priming inputs
    double scale = 1.0;                   // multiplies every coordinate of the dataset
    bool plot = false;

    std::size_t samples_per_seq = 160;    // intersected

    std::size_t period_samples = 20;      // patterns
    std::size_t train_periods = 4;
    std::size_t eval_periods = 4;
    std::vector<double> phase_shifts_deg; // extra sine episodes

    std::filesystem::path data;           // characters, custom
    std::vector<std::string> labels;
    std::size_t length = 180;

    std::filesystem::path out;            // run directory; nothing is written when empty

    /// Reference parameters for each experiment.
    static ExperimentConfig preset(ExperimentKind kind);

    /// Applies one override. Throws InputError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    void apply(const std::vector<std::pair<std::string, std::string>>& pairs);

    /// Canonical `key=value` form; feeding it back through apply() on the
    /// same preset reproduces this config.
    std::string to_text() const;

    /// Throws ContractError or InputError when the config cannot run.
    void validate() const;
    TuneConfig tune_config() const;
};

/// Directory holding the bundled trajectory fixture.
std::filesystem::path default_data_dir();

struct EpisodeMetrics {
    std::string label;
    std::string source;                   // training sequence the episode should reproduce
    std::size_t dim = 0;
    std::vector<double> rmse;             // per coordinate over t = T+1 .. T_f
    double rmse_max = 0.0;
    double max_abs_error = 0.0;
    std::size_t compared = 0;
    std::optional<std::size_t> expected_seq_set;
    std::optional<std::size_t> identified_seq_set;

    std::vector<Sample> targets;          // clean x(2) .. x(T_f)
    std::vector<Sample> outputs;          // y(1) .. y(T_f - 1), the network's x(2) .. x(T_f)

    bool identified() const { return expected_seq_set && expected_seq_set == identified_seq_set; }
};

struct RunMetrics {
    std::string experiment;
    std::string model;
    std::uint64_t seed = 0;
    std::string noise;
    std::size_t sequence_sets = 0;
    std::size_t sample_sets = 0;
    std::size_t rules = 0;
    std::size_t init_warnings = 0;
    std::size_t tune_aborted = 0;
    std::vector<EpisodeMetrics> episodes;
    double seconds = 0.0;                 // wall clock; kept out of metrics.json

    const EpisodeMetrics& episode(const std::string& label) const;
    /// Deterministic JSON text: equal runs give equal bytes.
    std::string to_json() const;
};

struct RunResult {
    RunMetrics metrics;
    ModelDump model;
    InitReport init;
    TuneReport tune;
};

/// Build data, initialize, fine-tune, evaluate. When cfg.out is set, also
/// writes config.txt, metrics.json, timing.json, model.txt, init.txt,
/// tune.txt and one seq_<label>.csv per episode (plus SVGs with cfg.plot).
RunResult run_experiment(const ExperimentConfig& cfg);

/// Training data of the experiment, after scaling.
Dataset training_data(const ExperimentConfig& cfg);

/// File-name-safe form of a label.
std::string sanitize_label(const std::string& label);

} // namespace fnnseq
