#include "fnnseq/plot.hpp"

#include "fnnseq/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fnnseq {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <typename V>
bool parse(const std::string& s, V& out)
{
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

struct Box {
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    double y1 = -std::numeric_limits<double>::infinity();

    void add(double x, double y)
    {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
};

using Curve = std::vector<std::pair<double, double>>;

constexpr double kWidth = 480;
constexpr double kHeight = 360;
constexpr double kMargin = 30;

std::string polyline(const Curve& c, const Box& b, const char* style)
{
    const double sx = (kWidth - 2 * kMargin) / std::max(b.x1 - b.x0, 1e-12);
    const double sy = (kHeight - 2 * kMargin) / std::max(b.y1 - b.y0, 1e-12);
    std::string pts;
    char buf[64];
    for (const auto& [x, y] : c) {
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", pts.empty() ? "" : " ", kMargin + (x - b.x0) * sx,
                      kHeight - kMargin - (y - b.y0) * sy);
        pts += buf;
    }
    return "  <polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

SeriesTable read_series_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw InputError(path.string() + ": empty file");
    const auto head = split(line);
    if (head.size() < 3 || head[0] != "t" || (head.size() - 1) % 2 != 0)
        throw InputError(path.string() + ": expected header t,target_0..,output_0..");
    SeriesTable tab;
    tab.dim = (head.size() - 1) / 2;
    for (std::size_t k = 0; k < tab.dim; ++k) {
        if (head[1 + k] != "target_" + std::to_string(k) || head[1 + tab.dim + k] != "output_" + std::to_string(k))
            throw InputError(path.string() + ": expected header t,target_0..,output_0..");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto cells = split(line);
        long t = 0;
        Sample target(tab.dim);
        Sample output(tab.dim);
        bool ok = cells.size() == head.size() && parse(cells[0], t);
        for (std::size_t k = 0; ok && k < tab.dim; ++k) {
            ok = parse(cells[1 + k], target[k]) && parse(cells[1 + tab.dim + k], output[k]) &&
                 std::isfinite(target[k]) && std::isfinite(output[k]);
        }
        if (!ok)
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        tab.t.push_back(t);
        tab.target.push_back(std::move(target));
        tab.output.push_back(std::move(output));
    }
    if (tab.t.empty())
        throw InputError(path.string() + ": no rows");
    return tab;
}

std::string render_svg(const SeriesTable& tab, const std::string& title)
{
    std::vector<Curve> targets;
    std::vector<Curve> outputs;
    Box box;
    if (tab.dim == 2) {
        Curve tc, oc;
        for (std::size_t r = 0; r < tab.t.size(); ++r) {
            tc.emplace_back(tab.target[r][0], tab.target[r][1]);
            oc.emplace_back(tab.output[r][0], tab.output[r][1]);
        }
        targets.push_back(std::move(tc));
        outputs.push_back(std::move(oc));
    } else {
        for (std::size_t k = 0; k < tab.dim; ++k) {
            Curve tc, oc;
            for (std::size_t r = 0; r < tab.t.size(); ++r) {
                const auto t = static_cast<double>(tab.t[r]);
                tc.emplace_back(t, tab.target[r][k]);
                oc.emplace_back(t, tab.output[r][k]);
            }
            targets.push_back(std::move(tc));
            outputs.push_back(std::move(oc));
        }
    }
    for (const auto* set : {&targets, &outputs}) {
        for (const auto& c : *set) {
            for (const auto& [x, y] : c)
                box.add(x, y);
        }
    }
    if (tab.dim == 2) {
        // Equal axis scales so shapes are not distorted.
        const double span = std::max(box.x1 - box.x0, box.y1 - box.y0);
        const double cx = 0.5 * (box.x0 + box.x1);
        const double cy = 0.5 * (box.y0 + box.y1);
        const double aspect = (kWidth - 2 * kMargin) / (kHeight - 2 * kMargin);
        box = {cx - 0.5 * span * aspect, cx + 0.5 * span * aspect, cy - 0.5 * span, cy + 0.5 * span};
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "  <text x=\"" << kMargin << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
       << escape(title) << "  (target solid, output dashed)</text>\n";
    for (const auto& c : targets)
        os << polyline(c, box, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    for (const auto& c : outputs)
        os << polyline(c, box, "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"");
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& run_dir)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(run_dir))
        throw InputError("run directory " + run_dir.string() + " does not exist");
    std::vector<fs::path> csvs;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("seq_") && name.ends_with(".csv"))
            csvs.push_back(entry.path());
    }
    if (csvs.empty())
        throw InputError("no seq_<label>.csv files in " + run_dir.string());
    std::sort(csvs.begin(), csvs.end());

    std::vector<fs::path> written;
    for (const auto& csv : csvs) {
        const auto tab = read_series_csv(csv);
        auto svg = csv;
        svg.replace_extension(".svg");
        const auto stem = csv.stem().string();
        std::ofstream out(svg);
        out << render_svg(tab, stem.substr(4));
        if (!out)
            throw InputError("cannot write " + svg.string());
        written.push_back(svg);
    }
    return written;
}

} // namespace fnnseq
