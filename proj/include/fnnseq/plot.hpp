#pragma once

#include "fnnseq/layers.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fnnseq {

/// Contents of one seq_<label>.csv: header `t,target_0..,output_0..`.
struct SeriesTable {
    std::size_t dim = 0;
    std::vector<long> t;
    std::vector<Sample> target;
    std::vector<Sample> output;
};

/// Throws InputError on a missing file, a bad header or a malformed row.
SeriesTable read_series_csv(const std::filesystem::path& path);

/// Target (solid) and output (dashed) polylines, one point per row. 2-D
/// series are drawn in the plane; other dimensions are drawn against t.
std::string render_svg(const SeriesTable& table, const std::string& title);

/// Writes seq_<label>.svg next to every seq_<label>.csv in `run_dir` and
/// returns the written paths in name order. Throws InputError when the
/// directory holds no series CSV.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& run_dir);

} // namespace fnnseq
