#pragma once

#include "fnnseq/training.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fnnseq {

struct NoiseSpec {
    double low = -0.3;
    double high = 0.3;
    std::uint64_t seed = 0;

    void validate() const;
    std::string describe() const;
};

struct Dataset {
    std::string name;
    std::size_t dim = 0;
    std::vector<TrainingSequence> sequences;
    std::string noise = "none";
    /// Half-open sample-index range [first, last) where all sequences coincide.
    std::optional<std::pair<std::size_t, std::size_t>> shared_window;
};

/// Shape of the two intersecting 2-D curves. Each sequence leaves its own
/// start point, joins a common wavy arc from (-shared_halfwidth, 0) to
/// (+shared_halfwidth, 0), then leaves for its own end point. Heads and tails
/// are cubic Hermite segments whose tangents match the arc at the joints.
struct IntersectedParams {
    std::size_t samples_per_seq = 160;
    double head_fraction = 0.2;     // share of samples before the common arc
    double shared_fraction = 0.6;   // share of samples on the common arc
    double offset = 0.8;            // vertical offset of start and end points
    double shared_halfwidth = 0.6;
    double bulge = 0.4;             // amplitude of the common arc
    double cycles = 1.5;            // oscillations along the common arc
    double min_separation = 0.2;    // required gap between the two priming prefixes
};

/// Throws InputError for zero-length shared segments or fewer than `T + 2` samples.
Dataset gen_intersected_pair(const IntersectedParams& params, std::size_t T);
Dataset gen_intersected_pair(std::size_t samples_per_seq, std::size_t T);

/// Sine, square, triangle and sawtooth at unit amplitude, `periods` periods
/// of `period_samples` samples each. `phase` shifts the sampling origin.
Dataset gen_waveforms(std::size_t period_samples, std::size_t periods, double phase);

/// Single waveform by name ("sine", "square", "triangle", "sawtooth").
TrainingSequence gen_waveform(const std::string& kind, std::size_t period_samples, std::size_t periods,
                              double phase);

/// Reads the `label,t,x,y` trajectory CSV. One sequence per requested label
/// (first block of rows carrying that label), translated to start at the
/// origin and linearly resampled to `length` samples. An empty filter
/// selects every label in file order.
Dataset load_trajectories(const std::filesystem::path& path, const std::vector<std::string>& labels,
                          std::size_t length = 180);

/// Linear resampling along the sample index to exactly `length` samples.
std::vector<Sample> resample_linear(const std::vector<Sample>& samples, std::size_t length);

/// Copy with independent uniform noise on every coordinate of every sample.
Dataset add_noise(const Dataset& ds, const NoiseSpec& spec);

/// Uniform scaling so the largest absolute coordinate equals `target`.
Dataset rescale(const Dataset& ds, double target);

/// Every coordinate multiplied by `factor` (> 0).
Dataset scaled(const Dataset& ds, double factor);

} // namespace fnnseq
