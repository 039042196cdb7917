#include "fnnseq/network.hpp"

#include "fnnseq/error.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace fnnseq {

void NetworkConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw ContractError("invalid network config: " + msg); };
    if (dim == 0) fail("dim must be positive");
    if (T == 0) fail("T must be positive");
    if (d == 0) fail("d must be positive");
    if (n == 0) fail("n must be positive");
    if (d > T) fail("d must not exceed T");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) fail("fuzzy-set widths must be positive");
    if (!(theta1 > 0.0 && theta1 < 1.0)) fail("theta1 must lie in (0,1)");
    if (!(theta2 > 0.0 && theta2 < 1.0)) fail("theta2 must lie in (0,1)");
    if (!(theta3 > 0.0)) fail("theta3 must be positive");
    if (iter_max == 0) fail("iter_max must be positive");
    if (!(eta0 > 0.0)) fail("eta0 must be positive");
    if (!(beta > 0.0 && beta < 1.0)) fail("beta must lie in (0,1)");
}

Network::Network(NetworkConfig config) : config_(config)
{
    config_.validate();
    reset_episode();
}

std::size_t Network::add_sequence_set(std::vector<double> center)
{
    if (center.size() != config_.identity_size())
        throw ContractError("sequence set center has the wrong length");
    require_finite(center, "sequence set center");
    seq_sets_.push_back({std::move(center), config_.sigma1});
    return seq_sets_.size() - 1;
}

std::size_t Network::add_sample_set(std::vector<double> center)
{
    if (center.size() != config_.memory_size())
        throw ContractError("sample set center has the wrong length");
    require_finite(center, "sample set center");
    samp_sets_.push_back({std::move(center), config_.sigma2});
    return samp_sets_.size() - 1;
}

std::size_t Network::add_rule(std::size_t seq_set, std::size_t sample_set, Sample weight)
{
    if (seq_set >= seq_sets_.size() || sample_set >= samp_sets_.size())
        throw ContractError("rule refers to a missing fuzzy set");
    if (weight.size() != config_.dim)
        throw ContractError("rule weight has the wrong length");
    if (find_rule(seq_set, sample_set))
        throw ContractError("duplicate rule (" + std::to_string(seq_set) + ", " + std::to_string(sample_set) + ")");
    require_finite(weight, "rule weight");
    rules_.push_back({seq_set, sample_set, std::move(weight)});
    return rules_.size() - 1;
}

std::optional<std::size_t> Network::find_rule(std::size_t seq_set, std::size_t sample_set) const
{
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i].seq_set == seq_set && rules_[i].sample_set == sample_set)
            return i;
    }
    return std::nullopt;
}

std::span<double> Network::weight(std::size_t rule)
{
    if (rule >= rules_.size())
        throw ContractError("rule index out of range");
    return rules_[rule].weight;
}

void Network::reset_episode()
{
    state_ = NetworkState{};
    state_.o1.assign(config_.identity_size(), 0.0);
    state_.o3.assign(config_.memory_size(), 0.0);
    last_phi_.clear();
}

void Network::restore(NetworkState state)
{
    if (state.o1.size() != config_.identity_size() || state.o3.size() != config_.memory_size())
        throw ContractError("restored state does not match the network shape");
    state_ = std::move(state);
}

void Network::observe(std::span<const double> x)
{
    if (x.size() != config_.dim)
        throw ContractError("sample has the wrong dimension");
    require_finite(x, "sample");
    ++state_.t;
    if (state_.t <= config_.T)
        accumulate_powers(state_.o1, x, config_.n);
    update_filters(state_.o3, x);
    if (state_.t >= config_.T)
        state_.mode = Mode::Autonomous;
}

Sample Network::step(std::span<const double> input)
{
    if (state_.mode != Mode::Priming)
        throw ModeError("external input given in autonomous mode (t = " + std::to_string(state_.t) + ")");
    if (rules_.empty())
        throw EmptyRulebaseError("network has no rules");
    if (input.size() != config_.dim)
        throw ContractError("sample has the wrong dimension");
    require_finite(input, "sample");
    ++state_.t;
    accumulate_powers(state_.o1, input, config_.n);
    update_filters(state_.o3, input);
    Sample y = forward();
    if (state_.t >= config_.T)
        state_.mode = Mode::Autonomous;
    return y;
}

Sample Network::step()
{
    if (state_.mode != Mode::Autonomous)
        throw ModeError("autonomous step requested while priming (t = " + std::to_string(state_.t) + ")");
    if (!state_.last_output)
        throw ModeError("autonomous step has no previous output to feed back");
    ++state_.t;
    update_filters(state_.o3, *state_.last_output);
    return forward();
}

Sample Network::forward()
{
    last_phi_ = activations();
    Sample y = output(last_phi_);
    state_.last_output = y;
    return y;
}

std::vector<double> Network::fire_rules() const
{
    if (rules_.empty())
        throw EmptyRulebaseError("network has no rules");
    std::vector<double> seq_mu(seq_sets_.size());
    for (std::size_t j = 0; j < seq_sets_.size(); ++j)
        seq_mu[j] = membership(seq_sets_[j], state_.o1);
    std::vector<double> samp_mu(samp_sets_.size());
    for (std::size_t k = 0; k < samp_sets_.size(); ++k)
        samp_mu[k] = membership(samp_sets_[k], state_.o3);
    std::vector<double> mu(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i)
        mu[i] = seq_mu[rules_[i].seq_set] * samp_mu[rules_[i].sample_set];
    return mu;
}

std::vector<double> Network::activations() const
{
    if (rules_.empty())
        throw EmptyRulebaseError("network has no rules");
    // log(mu_i) = -(d1_j + d2_k); evaluated per set once, then per rule.
    std::vector<double> seq_log(seq_sets_.size());
    for (std::size_t j = 0; j < seq_sets_.size(); ++j)
        seq_log[j] = -scaled_sq_distance(seq_sets_[j], state_.o1);
    std::vector<double> samp_log(samp_sets_.size());
    for (std::size_t k = 0; k < samp_sets_.size(); ++k)
        samp_log[k] = -scaled_sq_distance(samp_sets_[k], state_.o3);
    std::vector<double> log_mu(rules_.size());
    for (std::size_t i = 0; i < rules_.size(); ++i)
        log_mu[i] = seq_log[rules_[i].seq_set] + samp_log[rules_[i].sample_set];
    return normalize_log(log_mu);
}

Sample Network::output(std::span<const double> phi) const
{
    if (phi.size() != rules_.size())
        throw ContractError("activation vector length differs from the rule count");
    Sample y(config_.dim, 0.0);
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (phi[i] == 0.0)
            continue;
        for (std::size_t k = 0; k < config_.dim; ++k)
            y[k] += phi[i] * rules_[i].weight[k];
    }
    return y;
}

std::size_t Network::identified_sequence() const
{
    return best_match(seq_sets_, state_.o1);
}

} // namespace fnnseq
