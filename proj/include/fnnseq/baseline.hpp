#pragma once

// Locator-only comparator: the proposed network with the discrimination
// layer and sequence fuzzy sets removed. Firing strength is the sample-set
// membership alone, with one rule per sample set.

#include "fnnseq/layers.hpp"
#include "fnnseq/network.hpp"
#include "fnnseq/training.hpp"

#include <span>
#include <vector>

namespace fnnseq {

struct BaselineRule {
    std::size_t sample_set = 0;
    std::vector<double> weight;
};

class BaselineNetwork {
public:
    /// Uses dim, T, d, sigma2, theta2; n, sigma1 and theta1 are ignored.
    explicit BaselineNetwork(NetworkConfig config);

    const NetworkConfig& config() const noexcept { return config_; }
    const NetworkState& state() const noexcept { return state_; }
    std::span<const FuzzySet> sample_sets() const noexcept { return samp_sets_; }
    std::span<const BaselineRule> rules() const noexcept { return rules_; }
    std::size_t rule_count() const noexcept { return rules_.size(); }

    /// Adds a sample set together with its rule; returns the rule index.
    std::size_t add_rule(std::vector<double> center, Sample weight);
    std::span<double> weight(std::size_t rule);

    void reset_episode();
    void restore(NetworkState state);

    Sample step(std::span<const double> input);
    Sample step();
    void observe(std::span<const double> x);

    std::vector<double> activations() const;
    Sample output(std::span<const double> phi) const;
    std::span<const double> last_activations() const noexcept { return last_phi_; }

private:
    Sample forward();

    NetworkConfig config_;
    std::vector<FuzzySet> samp_sets_;
    std::vector<BaselineRule> rules_;
    NetworkState state_;   // o1 stays empty
    std::vector<double> last_phi_;
};

InitReport baseline_initialize(BaselineNetwork& net, const std::vector<TrainingSequence>& sequences);
TuneReport baseline_fine_tune(BaselineNetwork& net, const std::vector<TrainingSequence>& sequences,
                              const TuneConfig& cfg);

} // namespace fnnseq
