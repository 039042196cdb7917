#pragma once

// Stateless building blocks shared by the proposed network and the
// locator-only baseline.

#include <cstddef>
#include <span>
#include <vector>

namespace fnnseq {

using Sample = std::vector<double>;

/// Gaussian fuzzy set with a diagonal covariance sigma^2 * I.
struct FuzzySet {
    std::vector<double> center;
    double width = 1.0;
};

/// Squared distance over width squared, i.e. minus the log membership.
double scaled_sq_distance(const FuzzySet& fs, std::span<const double> v);

/// exp(-|v - center|^2 / width^2). Throws ContractError on size mismatch.
double membership(const FuzzySet& fs, std::span<const double> v);

/// Sum of memberships of `v` over `sets`; zero for an empty list.
double coverage(std::span<const FuzzySet> sets, std::span<const double> v);

/// Index of the set with the largest membership of `v`. Requires non-empty `sets`.
std::size_t best_match(std::span<const FuzzySet> sets, std::span<const double> v);

/// Discrimination layer update: accumulator (k, i) += x_k^(i+1).
///
/// `o1` is laid out power-major: o1[i * dim + k] holds the sum of the
/// (i+1)-th power of dimension k.
void accumulate_powers(std::span<double> o1, std::span<const double> x, std::size_t order);

/// Forgetting factor of memory neuron `i` (1-based): i / (i + 1).
constexpr double memory_lambda(std::size_t i) noexcept
{
    return static_cast<double>(i) / static_cast<double>(i + 1);
}

/// Memory layer update: each of the d filters moves toward `input`.
///
/// `o3` is laid out neuron-major: o3[(i-1) * dim + k].
void update_filters(std::span<double> o3, std::span<const double> input);

/// Divides activations by their sum. Throws DegenerateActivationError when
/// every entry is zero and ContractError on negative or non-finite entries.
std::vector<double> normalize(std::span<const double> mu);

/// Same result as exp(log_mu) followed by normalize(), computed with the
/// max subtracted first so that tiny activations do not underflow to zero.
std::vector<double> normalize_log(std::span<const double> log_mu);

void require_finite(std::span<const double> v, const char* what);

} // namespace fnnseq
