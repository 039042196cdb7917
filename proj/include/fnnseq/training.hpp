#pragma once

#include "fnnseq/layers.hpp"
#include "fnnseq/network.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fnnseq {

struct TrainingSequence {
    std::vector<Sample> samples;
    std::string label;
};

/// Throws InputError unless the sequence has more than T + 1 samples of
/// uniform dimension `dim` with finite entries.
void validate_sequence(const TrainingSequence& seq, std::size_t dim, std::size_t T);

// ---------------------------------------------------------------------------
// Structure learning

struct InitTrace {
    std::string label;
    std::size_t seq_set = 0;                               // sequence set the samples were bound to
    bool new_sequence_set = false;
    std::vector<std::pair<std::size_t, double>> coverage;  // (t, sample-layer coverage before any addition)
};

struct InitReport {
    std::size_t seq_sets_added = 0;
    std::size_t samp_sets_added = 0;
    std::size_t rules_added = 0;
    std::vector<InitTrace> traces;
    std::vector<std::string> warnings;
};

/// Coverage-driven growth of sequence sets, sample sets and rules from
/// correct training data. The memory layer is teacher-forced throughout.
InitReport initialize(Network& net, const std::vector<TrainingSequence>& sequences);

/// Structured text form of the report, one `key=value` field per line.
std::string to_text(const InitReport& report);

// ---------------------------------------------------------------------------
// Fine-tuning

struct TuneConfig {
    double eta0 = 0.1;
    double beta = 0.99;
    double theta3 = 0.01;
    std::size_t iter_max = 20;       // inner iterations per sample
    std::size_t epochs = 20;         // outer passes per sequence

    void validate() const;
    static TuneConfig from(const NetworkConfig& cfg);
};

struct TuneStep {
    std::size_t t = 0;
    double error = 0.0;              // squared error after the last inner iteration
    std::size_t iterations = 0;      // weight updates applied to this sample
};

struct SequenceTuneReport {
    std::string label;
    std::size_t epochs = 0;          // outer passes actually run
    double final_eta = 0.0;
    std::vector<TuneStep> steps;     // from the last pass
    bool aborted = false;
    std::string abort_reason;
};

struct TuneReport {
    std::vector<SequenceTuneReport> sequences;
};

/// Gradient step on every rule: w_i -= eta * (y - target) * phi_i.
void weight_update(Network& net, std::span<const double> phi, std::span<const double> y,
                   std::span<const double> target, double eta);

/// Squared Euclidean error between two samples.
double squared_error(std::span<const double> y, std::span<const double> target);

/// Closed-loop gradual fine-tuning of the rule weights. Each sample's
/// error is driven below theta3 (or iter_max updates are spent) before the
/// network feeds its output back and moves to the next sample.
TuneReport fine_tune(Network& net, const std::vector<TrainingSequence>& sequences, const TuneConfig& cfg);

std::string to_text(const TuneReport& report);

} // namespace fnnseq
