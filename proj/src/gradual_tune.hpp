#pragma once

// Closed-loop gradual fine-tuning shared by Network and BaselineNetwork.

#include "fnnseq/error.hpp"
#include "fnnseq/training.hpp"

#include <utility>
#include <vector>

namespace fnnseq::detail {

template <typename Net>
void apply_update(Net& net, std::span<const double> phi, std::span<const double> y,
                  std::span<const double> target, double eta)
{
    const std::size_t dim = net.config().dim;
    if (phi.size() != net.rule_count())
        throw ContractError("activation vector length differs from the rule count");
    if (y.size() != dim || target.size() != dim)
        throw ContractError("output or target has the wrong dimension");
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] == 0.0)
            continue;
        auto w = net.weight(i);
        for (std::size_t k = 0; k < dim; ++k)
            w[k] -= eta * (y[k] - target[k]) * phi[i];
    }
}

// One pass over a sequence. Activations depend only on the recurrent state,
// never on the weights, so rewinding to the sample's starting state and
// repeating the forward pass reduces to re-evaluating the output layer with
// the same phi. Returns whether any weight changed.
template <typename Net>
bool tune_pass(Net& net, const TrainingSequence& seq, const TuneConfig& cfg, double& eta,
               SequenceTuneReport& out)
{
    const std::size_t T = net.config().T;
    bool updated = false;
    out.steps.clear();

    net.reset_episode();
    for (std::size_t t = 1; t < T; ++t)
        net.step(seq.samples[t - 1]);

    // y(T), the output of the last priming step, is tuned like every
    // autonomous output since it is the first value fed back.
    for (std::size_t t = T; t + 1 <= seq.samples.size(); ++t) {
        Sample y = t == T ? net.step(seq.samples[t - 1]) : net.step();
        const std::vector<double> phi(net.last_activations().begin(), net.last_activations().end());
        const Sample& target = seq.samples[t];

        TuneStep st{t, squared_error(y, target), 0};
        while (st.iterations < cfg.iter_max && st.error > cfg.theta3) {
            apply_update(net, phi, y, target, eta);
            y = net.output(phi);
            st.error = squared_error(y, target);
            eta *= cfg.beta;
            ++st.iterations;
            updated = true;
        }
        out.steps.push_back(st);

        // Commit the converged output as the value fed back next step.
        if (st.iterations > 0) {
            NetworkState s = net.state();
            s.last_output = std::move(y);
            net.restore(std::move(s));
        }
    }
    return updated;
}

template <typename Net>
TuneReport gradual_tune(Net& net, const std::vector<TrainingSequence>& sequences, const TuneConfig& cfg)
{
    cfg.validate();
    if (net.rule_count() == 0)
        throw EmptyRulebaseError("fine_tune needs an initialized network");
    for (const auto& seq : sequences)
        validate_sequence(seq, net.config().dim, net.config().T);

    TuneReport report;
    for (const auto& seq : sequences) {
        SequenceTuneReport sr;
        sr.label = seq.label;
        double eta = cfg.eta0;
        try {
            for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
                ++sr.epochs;
                // A pass without any update would be replayed identically by
                // every later pass.
                if (!tune_pass(net, seq, cfg, eta, sr))
                    break;
            }
        } catch (const DegenerateActivationError& e) {
            sr.aborted = true;
            sr.abort_reason = e.what();
        }
        sr.final_eta = eta;
        report.sequences.push_back(std::move(sr));
    }
    net.reset_episode();
    return report;
}

} // namespace fnnseq::detail
