#include "fnnseq/layers.hpp"

#include "fnnseq/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fnnseq {

void require_finite(std::span<const double> v, const char* what)
{
    for (double x : v) {
        if (!std::isfinite(x))
            throw InputError(std::string(what) + " contains a non-finite value");
    }
}

double scaled_sq_distance(const FuzzySet& fs, std::span<const double> v)
{
    if (v.size() != fs.center.size()) {
        throw ContractError("fuzzy set expects a vector of length " + std::to_string(fs.center.size()) +
                            ", got " + std::to_string(v.size()));
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double diff = v[k] - fs.center[k];
        acc += diff * diff;
    }
    return acc / (fs.width * fs.width);
}

double membership(const FuzzySet& fs, std::span<const double> v)
{
    return std::exp(-scaled_sq_distance(fs, v));
}

double coverage(std::span<const FuzzySet> sets, std::span<const double> v)
{
    double total = 0.0;
    for (const auto& fs : sets)
        total += membership(fs, v);
    return total;
}

std::size_t best_match(std::span<const FuzzySet> sets, std::span<const double> v)
{
    if (sets.empty())
        throw ContractError("best_match on an empty set list");
    // Compare distances rather than memberships so ties far from every
    // center (both memberships underflowing to 0) still resolve to the nearest.
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const double dist = scaled_sq_distance(sets[i], v);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

void accumulate_powers(std::span<double> o1, std::span<const double> x, std::size_t order)
{
    const std::size_t dim = x.size();
    if (o1.size() != order * dim)
        throw ContractError("discrimination accumulator has the wrong length");
    require_finite(x, "discrimination input");
    for (std::size_t k = 0; k < dim; ++k) {
        double power = 1.0;
        for (std::size_t i = 0; i < order; ++i) {
            power *= x[k];
            o1[i * dim + k] += power;
        }
    }
}

void update_filters(std::span<double> o3, std::span<const double> input)
{
    const std::size_t dim = input.size();
    if (dim == 0 || o3.size() % dim != 0)
        throw ContractError("memory layer size is not a multiple of the input dimension");
    require_finite(input, "memory input");
    const std::size_t neurons = o3.size() / dim;
    for (std::size_t i = 1; i <= neurons; ++i) {
        const double lambda = memory_lambda(i);
        double* row = o3.data() + (i - 1) * dim;
        for (std::size_t k = 0; k < dim; ++k)
            row[k] = lambda * row[k] + (1.0 - lambda) * input[k];
    }
}

std::vector<double> normalize(std::span<const double> mu)
{
    double total = 0.0;
    for (double m : mu) {
        if (!(m >= 0.0) || !std::isfinite(m))
            throw ContractError("rule activations must be finite and non-negative");
        total += m;
    }
    if (total <= 0.0)
        throw DegenerateActivationError("all rule activations are zero");
    std::vector<double> phi(mu.begin(), mu.end());
    for (double& p : phi)
        p /= total;
    return phi;
}

std::vector<double> normalize_log(std::span<const double> log_mu)
{
    if (log_mu.empty())
        throw EmptyRulebaseError("no rule activations to normalize");
    double top = -std::numeric_limits<double>::infinity();
    for (double l : log_mu) {
        if (std::isnan(l) || l == std::numeric_limits<double>::infinity())
            throw ContractError("log activations must be finite or -inf");
        top = std::max(top, l);
    }
    if (!std::isfinite(top))
        throw DegenerateActivationError("all rule activations are zero");
    std::vector<double> phi(log_mu.size());
    double total = 0.0;
    for (std::size_t i = 0; i < log_mu.size(); ++i) {
        phi[i] = std::exp(log_mu[i] - top);
        total += phi[i];
    }
    for (double& p : phi)
        p /= total;
    return phi;
}

} // namespace fnnseq
