#include "fnnseq/datasets.hpp"

#include "fnnseq/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace fnnseq {

void NoiseSpec::validate() const
{
    if (!std::isfinite(low) || !std::isfinite(high) || !(low < high))
        throw ContractError("noise range must satisfy low < high");
}

std::string NoiseSpec::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "uniform(" << low << ',' << high << ") seed=" << seed;
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

struct Point {
    double x;
    double y;
};

// Cubic Hermite interpolation on u in [0,1] with end tangents m0, m1.
Point hermite(Point p0, Point m0, Point p1, Point m1, double u)
{
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return {h00 * p0.x + h10 * m0.x + h01 * p1.x + h11 * m1.x,
            h00 * p0.y + h10 * m0.y + h01 * p1.y + h11 * m1.y};
}

} // namespace

Dataset gen_intersected_pair(const IntersectedParams& p, std::size_t T)
{
    const std::size_t n = p.samples_per_seq;
    if (n < T + 2)
        throw InputError("intersected pair needs more than T + 1 samples per sequence");
    const auto head = static_cast<std::size_t>(std::lround(p.head_fraction * static_cast<double>(n)));
    const auto shared = static_cast<std::size_t>(std::lround(p.shared_fraction * static_cast<double>(n)));
    if (shared < 2)
        throw InputError("intersected pair needs a shared segment of at least two samples");
    if (head == 0 || head + shared >= n)
        throw InputError("intersected pair needs distinct heads and tails");
    if (!(2.0 * p.offset >= p.min_separation))
        throw InputError("priming prefixes would be closer than the required separation");

    const std::size_t last_shared = head + shared - 1;
    const auto head_len = static_cast<double>(head);
    const auto tail_len = static_cast<double>(n - 1 - last_shared);
    const double span = static_cast<double>(shared - 1);
    const double omega = 2.0 * std::numbers::pi * p.cycles;

    // Common arc, parameterized by s in [0,1] over the shared samples.
    auto arc = [&](double s) {
        return Point{p.shared_halfwidth * (2.0 * s - 1.0), p.bulge * std::sin(omega * s)};
    };
    // Arc velocity per sample.
    auto arc_velocity = [&](double s) {
        return Point{2.0 * p.shared_halfwidth / span, p.bulge * omega * std::cos(omega * s) / span};
    };
    const Point join = arc(0.0);
    const Point leave = arc(1.0);
    const Point v_join = arc_velocity(0.0);
    const Point v_leave = arc_velocity(1.0);

    Dataset ds;
    ds.name = "intersected";
    ds.dim = 2;
    ds.shared_window = std::make_pair(head, head + shared);

    const double signs[2] = {1.0, -1.0};
    const char* labels[2] = {"first", "second"};
    for (int s = 0; s < 2; ++s) {
        const Point start{-1.0, signs[s] * p.offset};
        const Point end{1.0, -signs[s] * p.offset};
        const Point head_chord{(join.x - start.x), (join.y - start.y)};
        const Point tail_chord{(end.x - leave.x), (end.y - leave.y)};

        TrainingSequence seq;
        seq.label = labels[s];
        seq.samples.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            Point q{};
            if (k < head) {
                const double u = static_cast<double>(k) / head_len;
                q = hermite(start, head_chord, join, {v_join.x * head_len, v_join.y * head_len}, u);
            } else if (k <= last_shared) {
                q = arc(static_cast<double>(k - head) / span);
            } else {
                const double u = static_cast<double>(k - last_shared) / tail_len;
                q = hermite(leave, {v_leave.x * tail_len, v_leave.y * tail_len}, end, tail_chord, u);
            }
            seq.samples.push_back({q.x, q.y});
        }
        ds.sequences.push_back(std::move(seq));
    }
    return ds;
}

Dataset gen_intersected_pair(std::size_t samples_per_seq, std::size_t T)
{
    IntersectedParams p;
    p.samples_per_seq = samples_per_seq;
    return gen_intersected_pair(p, T);
}

// ---------------------------------------------------------------------------

namespace {

double wrap_unit(double v)
{
    return v - std::floor(v);
}

double waveform_value(const std::string& kind, double theta)
{
    const double cycles = theta / (2.0 * std::numbers::pi);
    if (kind == "sine")
        return std::sin(theta);
    if (kind == "square")
        return wrap_unit(cycles) < 0.5 ? 1.0 : -1.0;
    if (kind == "triangle") {
        // 0 at the origin, +1 a quarter period later, in phase with the sine.
        const double u = wrap_unit(cycles + 0.25);
        return u < 0.5 ? -1.0 + 4.0 * u : 3.0 - 4.0 * u;
    }
    if (kind == "sawtooth")
        return 2.0 * wrap_unit(cycles + 0.5) - 1.0;
    throw ContractError("unknown waveform '" + kind + "'");
}

} // namespace

TrainingSequence gen_waveform(const std::string& kind, std::size_t period_samples, std::size_t periods,
                              double phase)
{
    if (period_samples < 8)
        throw ContractError("waveforms need at least 8 samples per period");
    if (periods == 0)
        throw ContractError("waveforms need at least one period");
    TrainingSequence seq;
    seq.label = kind;
    const std::size_t total = period_samples * periods;
    seq.samples.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        const double theta =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(period_samples) + phase;
        double v = waveform_value(kind, theta);
        // Snap rounding noise around exact zeros (e.g. sin(pi)).
        if (std::abs(v) < 1e-12)
            v = 0.0;
        seq.samples.push_back({v});
    }
    return seq;
}

Dataset gen_waveforms(std::size_t period_samples, std::size_t periods, double phase)
{
    Dataset ds;
    ds.name = "patterns";
    ds.dim = 1;
    for (const char* kind : {"sine", "square", "triangle", "sawtooth"})
        ds.sequences.push_back(gen_waveform(kind, period_samples, periods, phase));
    return ds;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string trim(std::string s)
{
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

template <typename V>
bool parse_number(const std::string& text, V& out)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

} // namespace

std::vector<Sample> resample_linear(const std::vector<Sample>& samples, std::size_t length)
{
    if (samples.empty() || length == 0)
        throw InputError("cannot resample an empty trajectory");
    std::vector<Sample> out;
    out.reserve(length);
    const std::size_t n = samples.size();
    for (std::size_t j = 0; j < length; ++j) {
        if (n == 1 || length == 1) {
            out.push_back(samples.front());
            continue;
        }
        const double pos = static_cast<double>(j) * static_cast<double>(n - 1) / static_cast<double>(length - 1);
        const auto lo = std::min(static_cast<std::size_t>(pos), n - 2);
        const double frac = pos - static_cast<double>(lo);
        Sample s(samples[lo].size());
        for (std::size_t k = 0; k < s.size(); ++k)
            s[k] = (1.0 - frac) * samples[lo][k] + frac * samples[lo + 1][k];
        out.push_back(std::move(s));
    }
    return out;
}

Dataset load_trajectories(const std::filesystem::path& path, const std::vector<std::string>& labels,
                          std::size_t length)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open trajectory file " + path.string());

    std::string line;
    if (!std::getline(in, line) || trim(line) != "label,t,x,y")
        throw InputError(path.string() + ": expected header 'label,t,x,y'");

    std::map<std::string, std::vector<Sample>> blocks;
    std::vector<std::string> order;
    std::string current;
    long prev_t = -1;
    bool skipping = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const auto cells = split_csv(trim(line));
        long t = 0;
        double x = 0.0;
        double y = 0.0;
        if (cells.size() != 4 || trim(cells[0]).empty() || !parse_number(trim(cells[1]), t) ||
            !parse_number(trim(cells[2]), x) || !parse_number(trim(cells[3]), y) || t < 0 ||
            !std::isfinite(x) || !std::isfinite(y)) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        const std::string label = trim(cells[0]);
        const bool new_block = label != current || t <= prev_t;
        if (new_block) {
            if (t != 0)
                throw InputError(path.string() + ":" + std::to_string(line_no) + ": block must start at t = 0");
            current = label;
            skipping = blocks.contains(label);
            if (!skipping) {
                blocks[label];
                order.push_back(label);
            }
        } else if (t != prev_t + 1) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": t must increase by one");
        }
        prev_t = t;
        if (!skipping)
            blocks[label].push_back({x, y});
    }

    const std::vector<std::string>& wanted = labels.empty() ? order : labels;
    Dataset ds;
    ds.name = "trajectories";
    ds.dim = 2;
    for (const auto& label : wanted) {
        auto it = blocks.find(label);
        if (it == blocks.end())
            throw InputError(path.string() + ": no trajectory labelled '" + label + "'");
        TrainingSequence seq;
        seq.label = label;
        seq.samples = resample_linear(it->second, length);
        const Sample origin = seq.samples.front();
        for (auto& s : seq.samples) {
            for (std::size_t k = 0; k < s.size(); ++k)
                s[k] -= origin[k];
        }
        ds.sequences.push_back(std::move(seq));
    }
    return ds;
}

// ---------------------------------------------------------------------------

Dataset add_noise(const Dataset& ds, const NoiseSpec& spec)
{
    spec.validate();
    Dataset out = ds;
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> dist(spec.low, spec.high);
    for (auto& seq : out.sequences) {
        for (auto& s : seq.samples) {
            for (double& v : s)
                v += dist(rng);
        }
    }
    out.noise = spec.describe();
    return out;
}

Dataset rescale(const Dataset& ds, double target)
{
    if (!(target > 0.0))
        throw ContractError("rescale target must be positive");
    double peak = 0.0;
    for (const auto& seq : ds.sequences) {
        for (const auto& s : seq.samples) {
            for (double v : s)
                peak = std::max(peak, std::abs(v));
        }
    }
    if (peak == 0.0)
        return ds;
    return scaled(ds, target / peak);
}

Dataset scaled(const Dataset& ds, double factor)
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw ContractError("scale factor must be positive and finite");
    Dataset out = ds;
    for (auto& seq : out.sequences) {
        for (auto& s : seq.samples) {
            for (double& v : s)
                v *= factor;
        }
    }
    return out;
}

} // namespace fnnseq
