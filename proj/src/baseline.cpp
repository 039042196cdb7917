#include "fnnseq/baseline.hpp"

#include "fnnseq/error.hpp"
#include "gradual_tune.hpp"

#include <string>
#include <utility>

namespace fnnseq {

BaselineNetwork::BaselineNetwork(NetworkConfig config) : config_(config)
{
    config_.validate();
    reset_episode();
}

std::size_t BaselineNetwork::add_rule(std::vector<double> center, Sample weight)
{
    if (center.size() != config_.memory_size())
        throw ContractError("sample set center has the wrong length");
    if (weight.size() != config_.dim)
        throw ContractError("rule weight has the wrong length");
    require_finite(center, "sample set center");
    require_finite(weight, "rule weight");
    samp_sets_.push_back({std::move(center), config_.sigma2});
    rules_.push_back({samp_sets_.size() - 1, std::move(weight)});
    return rules_.size() - 1;
}

std::span<double> BaselineNetwork::weight(std::size_t rule)
{
    if (rule >= rules_.size())
        throw ContractError("rule index out of range");
    return rules_[rule].weight;
}

void BaselineNetwork::reset_episode()
{
    state_ = NetworkState{};
    state_.o3.assign(config_.memory_size(), 0.0);
    last_phi_.clear();
}

void BaselineNetwork::restore(NetworkState state)
{
    if (state.o3.size() != config_.memory_size())
        throw ContractError("restored state does not match the network shape");
    state_ = std::move(state);
}

void BaselineNetwork::observe(std::span<const double> x)
{
    if (x.size() != config_.dim)
        throw ContractError("sample has the wrong dimension");
    ++state_.t;
    update_filters(state_.o3, x);
    if (state_.t >= config_.T)
        state_.mode = Mode::Autonomous;
}

Sample BaselineNetwork::step(std::span<const double> input)
{
    if (state_.mode != Mode::Priming)
        throw ModeError("external input given in autonomous mode (t = " + std::to_string(state_.t) + ")");
    if (rules_.empty())
        throw EmptyRulebaseError("network has no rules");
    observe(input);
    return forward();
}

Sample BaselineNetwork::step()
{
    if (state_.mode != Mode::Autonomous)
        throw ModeError("autonomous step requested while priming (t = " + std::to_string(state_.t) + ")");
    if (!state_.last_output)
        throw ModeError("autonomous step has no previous output to feed back");
    ++state_.t;
    update_filters(state_.o3, *state_.last_output);
    return forward();
}

Sample BaselineNetwork::forward()
{
    last_phi_ = activations();
    Sample y = output(last_phi_);
    state_.last_output = y;
    return y;
}

std::vector<double> BaselineNetwork::activations() const
{
    if (rules_.empty())
        throw EmptyRulebaseError("network has no rules");
    std::vector<double> log_mu(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i)
        log_mu[i] = -scaled_sq_distance(samp_sets_[rules_[i].sample_set], state_.o3);
    return normalize_log(log_mu);
}

Sample BaselineNetwork::output(std::span<const double> phi) const
{
    if (phi.size() != rules_.size())
        throw ContractError("activation vector length differs from the rule count");
    Sample y(config_.dim, 0.0);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        for (std::size_t k = 0; k < config_.dim; ++k)
            y[k] += phi[i] * rules_[i].weight[k];
    }
    return y;
}

InitReport baseline_initialize(BaselineNetwork& net, const std::vector<TrainingSequence>& sequences)
{
    const auto& cfg = net.config();
    if (sequences.empty())
        throw InputError("no training sequences");
    for (const auto& seq : sequences)
        validate_sequence(seq, cfg.dim, cfg.T);

    InitReport report;
    const std::size_t before = net.rule_count();
    for (const auto& seq : sequences) {
        InitTrace trace;
        trace.label = seq.label;
        net.reset_episode();
        for (std::size_t t = 1; t <= cfg.T; ++t)
            net.observe(seq.samples[t - 1]);
        for (std::size_t t = cfg.T; t + 1 <= seq.samples.size(); ++t) {
            if (t > cfg.T)
                net.observe(seq.samples[t - 1]);
            const auto& memory = net.state().o3;
            const double cov = coverage(net.sample_sets(), memory);
            trace.coverage.emplace_back(t, cov);
            if (cov <= cfg.theta2)
                net.add_rule(memory, seq.samples[t]);
        }
        report.traces.push_back(std::move(trace));
    }
    net.reset_episode();
    report.samp_sets_added = net.rule_count() - before;
    report.rules_added = report.samp_sets_added;
    return report;
}

TuneReport baseline_fine_tune(BaselineNetwork& net, const std::vector<TrainingSequence>& sequences,
                              const TuneConfig& cfg)
{
    return detail::gradual_tune(net, sequences, cfg);
}

} // namespace fnnseq
