#pragma once

#include "fnnseq/layers.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fnnseq {

/// Hyperparameters of one network.
struct NetworkConfig {
    std::size_t dim = 1;       // input dimensionality
    std::size_t T = 10;        // priming samples fed to the identifier
    std::size_t d = 5;         // memory neurons
    std::size_t n = 1;         // highest power accumulated by the discrimination layer
    double sigma1 = 0.1;       // sequence fuzzy-set width
    double sigma2 = 0.1;       // sample fuzzy-set width
    double theta1 = 0.3;       // sequence-layer coverage threshold
    double theta2 = 0.3;       // sample-layer coverage threshold
    double theta3 = 0.01;      // fine-tune squared-error threshold
    std::size_t iter_max = 20;
    double eta0 = 0.1;
    double beta = 0.99;

    /// Throws ContractError if any field is out of range.
    void validate() const;

    std::size_t identity_size() const noexcept { return n * dim; }
    std::size_t memory_size() const noexcept { return d * dim; }
};

/// Binds one sequence fuzzy set to one sample fuzzy set; `weight` is the
/// rule's consequent (a predicted next sample).
struct Rule {
    std::size_t seq_set = 0;
    std::size_t sample_set = 0;
    std::vector<double> weight;
};

enum class Mode { Priming, Autonomous };

/// Recurrent state of one episode.
struct NetworkState {
    std::size_t t = 0;                 // samples consumed so far
    std::vector<double> o1;            // identity accumulators, n * dim
    std::vector<double> o3;            // memory filters, d * dim
    std::optional<Sample> last_output;
    Mode mode = Mode::Priming;
};

/// The two-part fuzzy network: a power-sum sequence identifier and a
/// low-pass-filter sequence locator, joined by product rules.
///
/// Priming: step(x) feeds x to both parts for the first T samples.
/// Autonomous: step() feeds the previous output back into the memory
/// layer while the identity accumulators stay frozen.
class Network {
public:
    explicit Network(NetworkConfig config);

    const NetworkConfig& config() const noexcept { return config_; }
    const NetworkState& state() const noexcept { return state_; }

    std::span<const FuzzySet> sequence_sets() const noexcept { return seq_sets_; }
    std::span<const FuzzySet> sample_sets() const noexcept { return samp_sets_; }
    std::span<const Rule> rules() const noexcept { return rules_; }
    std::size_t rule_count() const noexcept { return rules_.size(); }

    /// Structure editing. Each returns the index of the new element.
    std::size_t add_sequence_set(std::vector<double> center);
    std::size_t add_sample_set(std::vector<double> center);
    /// Throws ContractError on invalid indices or a duplicate (seq, sample) pair.
    std::size_t add_rule(std::size_t seq_set, std::size_t sample_set, Sample weight);
    std::optional<std::size_t> find_rule(std::size_t seq_set, std::size_t sample_set) const;
    std::span<double> weight(std::size_t rule);

    /// Zero the recurrent state; structure and weights are kept.
    void reset_episode();
    /// Replace the recurrent state wholesale (used to rewind an episode).
    void restore(NetworkState state);

    /// One priming step with an external sample. Throws ModeError in autonomous mode.
    Sample step(std::span<const double> input);
    /// One autonomous step driven by the previous output. Throws ModeError while priming.
    Sample step();

    /// Teacher-forced advance used during structure learning: the identity
    /// accumulators update only while t <= T, the memory always sees `x`,
    /// and no output is computed.
    void observe(std::span<const double> x);

    /// Raw product activations mu_i for the current state.
    std::vector<double> fire_rules() const;
    /// Normalized activations phi for the current state, computed in the log domain.
    std::vector<double> activations() const;
    /// Convex combination of rule weights under `phi`.
    Sample output(std::span<const double> phi) const;

    /// Activations used for the most recent step() output.
    std::span<const double> last_activations() const noexcept { return last_phi_; }

    /// Index of the sequence set whose membership of the current identity vector is largest.
    std::size_t identified_sequence() const;

private:
    Sample forward();

    NetworkConfig config_;
    std::vector<FuzzySet> seq_sets_;
    std::vector<FuzzySet> samp_sets_;
    std::vector<Rule> rules_;
    NetworkState state_;
    std::vector<double> last_phi_;
};

} // namespace fnnseq
