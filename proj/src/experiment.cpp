#include "fnnseq/experiment.hpp"

#include "fnnseq/baseline.hpp"
#include "fnnseq/error.hpp"
#include "fnnseq/plot.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#ifndef FNNSEQ_DATA_DIR
#define FNNSEQ_DATA_DIR "data"
#endif

namespace fnnseq {

namespace fs = std::filesystem;

std::string to_string(ExperimentKind kind)
{
    switch (kind) {
    case ExperimentKind::Intersected: return "intersected";
    case ExperimentKind::Patterns: return "patterns";
    case ExperimentKind::Characters: return "characters";
    case ExperimentKind::Custom: return "custom";
    }
    return "?";
}

std::string to_string(ModelKind kind)
{
    return kind == ModelKind::Proposed ? "proposed" : "baseline";
}

ExperimentKind parse_experiment(const std::string& name)
{
    for (auto k : {ExperimentKind::Intersected, ExperimentKind::Patterns, ExperimentKind::Characters,
                   ExperimentKind::Custom}) {
        if (to_string(k) == name)
            return k;
    }
    throw InputError("unknown experiment '" + name + "' (intersected, patterns, characters, custom)");
}

ModelKind parse_model(const std::string& name)
{
    if (name == "proposed")
        return ModelKind::Proposed;
    if (name == "baseline")
        return ModelKind::Baseline;
    throw InputError("unknown model '" + name + "' (proposed, baseline)");
}

fs::path default_data_dir()
{
    return FNNSEQ_DATA_DIR;
}

// ---------------------------------------------------------------------------
// key=value configuration

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ','))
        out.push_back(trim(item));
    return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want)
{
    throw InputError("config key '" + key + "': '" + value + "' is not " + want);
}

template <typename V>
V parse_number(const std::string& key, const std::string& value, const char* want)
{
    V out{};
    const auto v = trim(value);
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size())
        bad_value(key, value, want);
    return out;
}

std::size_t as_count(const std::string& key, const std::string& value)
{
    return parse_number<std::size_t>(key, value, "a non-negative integer");
}

double as_real(const std::string& key, const std::string& value)
{
    const auto v = parse_number<double>(key, value, "a number");
    if (!std::isfinite(v))
        bad_value(key, value, "a finite number");
    return v;
}

bool as_bool(const std::string& key, const std::string& value)
{
    const auto v = trim(value);
    if (v == "1" || v == "true" || v == "yes" || v == "on")
        return true;
    if (v == "0" || v == "false" || v == "no" || v == "off")
        return false;
    bad_value(key, value, "a boolean");
}

// Shortest text that reads back to the same double.
std::string fmt(double v)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items)
        out += (out.empty() ? "" : ",") + s;
    return out;
}

} // namespace

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
        auto key = trim(line.substr(0, eq));
        if (key.empty())
            throw InputError("config line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

ExperimentConfig ExperimentConfig::preset(ExperimentKind kind)
{
    ExperimentConfig c;
    c.experiment = kind;
    auto& n = c.net;
    switch (kind) {
    case ExperimentKind::Intersected:
    case ExperimentKind::Custom:
        n.dim = 2;
        n.iter_max = 20;
        n.theta1 = 0.3;
        n.theta2 = 0.3;
        n.theta3 = 0.01;
        n.sigma1 = n.sigma2 = 0.1;
        n.T = 10;
        n.d = 5;
        n.n = 1;
        c.scale = kind == ExperimentKind::Intersected ? 4.0 : 1.0;
        break;
    case ExperimentKind::Patterns:
        n.dim = 1;
        n.iter_max = 20;
        n.theta1 = 0.4;
        n.theta2 = 0.1;
        n.theta3 = 0.01;
        n.sigma1 = n.sigma2 = 0.1;
        n.T = 20;
        n.d = 20;
        n.n = 2;
        c.scale = 3.0;
        c.phase_shifts_deg = {90.0, 180.0};
        break;
    case ExperimentKind::Characters:
        n.dim = 2;
        n.iter_max = 20;
        n.theta1 = 0.2;
        n.theta2 = 0.2;
        n.theta3 = 0.01;
        n.sigma1 = n.sigma2 = 0.2;
        n.T = 30;
        n.d = 30;
        n.n = 2;
        c.scale = 0.8;
        c.noise = std::make_pair(-0.3, 0.3);
        c.data = default_data_dir() / "characters.csv";
        c.labels = {"a", "c", "d", "e", "g", "o", "p", "q", "u"};
        break;
    }
    return c;
}

void ExperimentConfig::set(const std::string& key, const std::string& value)
{
    const auto v = trim(value);
    if (key == "experiment") {
        if (parse_experiment(v) != experiment)
            throw InputError("config sets experiment=" + v + " but the run is '" + to_string(experiment) + "'");
    } else if (key == "model") {
        model = parse_model(v);
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, v, "a non-negative integer");
    } else if (key == "T") {
        net.T = as_count(key, v);
    } else if (key == "d") {
        net.d = as_count(key, v);
    } else if (key == "n") {
        net.n = as_count(key, v);
    } else if (key == "sigma") {
        net.sigma1 = net.sigma2 = as_real(key, v);
    } else if (key == "sigma1") {
        net.sigma1 = as_real(key, v);
    } else if (key == "sigma2") {
        net.sigma2 = as_real(key, v);
    } else if (key == "theta1") {
        net.theta1 = as_real(key, v);
    } else if (key == "theta2") {
        net.theta2 = as_real(key, v);
    } else if (key == "theta3") {
        net.theta3 = as_real(key, v);
    } else if (key == "iter_max") {
        net.iter_max = as_count(key, v);
    } else if (key == "eta0") {
        net.eta0 = as_real(key, v);
    } else if (key == "beta") {
        net.beta = as_real(key, v);
    } else if (key == "epochs") {
        epochs = as_count(key, v);
    } else if (key == "fine_tune") {
        fine_tune = as_bool(key, v);
    } else if (key == "noise") {
        if (v == "none") {
            noise.reset();
        } else {
            const auto parts = split_list(v);
            if (parts.size() != 2)
                bad_value(key, value, "'none' or LOW,HIGH");
            noise = std::make_pair(as_real(key, parts[0]), as_real(key, parts[1]));
        }
    } else if (key == "scale") {
        scale = as_real(key, v);
    } else if (key == "plot") {
        plot = as_bool(key, v);
    } else if (key == "samples_per_seq") {
        samples_per_seq = as_count(key, v);
    } else if (key == "period_samples") {
        period_samples = as_count(key, v);
    } else if (key == "train_periods") {
        train_periods = as_count(key, v);
    } else if (key == "eval_periods" || key == "periods") {
        // `periods` counts generated periods after the priming one.
        eval_periods = as_count(key, v) + (key == "periods" ? 1 : 0);
    } else if (key == "phase_shifts") {
        phase_shifts_deg.clear();
        if (v != "none" && !v.empty()) {
            for (const auto& p : split_list(v))
                phase_shifts_deg.push_back(as_real(key, p));
        }
    } else if (key == "data") {
        data = v;
    } else if (key == "labels") {
        labels = v.empty() ? std::vector<std::string>{} : split_list(v);
    } else if (key == "length") {
        length = as_count(key, v);
    } else if (key == "out") {
        out = v;
    } else {
        throw InputError("unknown config key '" + key + "'");
    }
}

void ExperimentConfig::apply(const std::vector<std::pair<std::string, std::string>>& pairs)
{
    for (const auto& [k, v] : pairs)
        set(k, v);
}

std::string ExperimentConfig::to_text() const
{
    std::ostringstream os;
    os << "experiment=" << to_string(experiment) << '\n'
       << "model=" << to_string(model) << '\n'
       << "seed=" << seed << '\n'
       << "T=" << net.T << '\n'
       << "d=" << net.d << '\n'
       << "n=" << net.n << '\n'
       << "sigma1=" << fmt(net.sigma1) << '\n'
       << "sigma2=" << fmt(net.sigma2) << '\n'
       << "theta1=" << fmt(net.theta1) << '\n'
       << "theta2=" << fmt(net.theta2) << '\n'
       << "theta3=" << fmt(net.theta3) << '\n'
       << "iter_max=" << net.iter_max << '\n'
       << "eta0=" << fmt(net.eta0) << '\n'
       << "beta=" << fmt(net.beta) << '\n'
       << "epochs=" << tune_config().epochs << '\n'
       << "fine_tune=" << (fine_tune ? 1 : 0) << '\n'
       << "noise=" << (noise ? fmt(noise->first) + "," + fmt(noise->second) : "none") << '\n'
       << "scale=" << fmt(scale) << '\n';
    switch (experiment) {
    case ExperimentKind::Intersected:
        os << "samples_per_seq=" << samples_per_seq << '\n';
        break;
    case ExperimentKind::Patterns: {
        std::vector<std::string> ph;
        for (double p : phase_shifts_deg)
            ph.push_back(fmt(p));
        os << "period_samples=" << period_samples << '\n'
           << "train_periods=" << train_periods << '\n'
           << "eval_periods=" << eval_periods << '\n'
           << "phase_shifts=" << (ph.empty() ? "none" : join(ph)) << '\n';
        break;
    }
    case ExperimentKind::Characters:
    case ExperimentKind::Custom:
        os << "data=" << data.string() << '\n'
           << "labels=" << join(labels) << '\n'
           << "length=" << length << '\n';
        break;
    }
    return os.str();
}

void ExperimentConfig::validate() const
{
    NetworkConfig probe = net;
    probe.dim = 1;
    probe.validate();
    tune_config().validate();
    if (!(scale > 0.0))
        throw ContractError("scale must be positive");
    if (noise)
        NoiseSpec{noise->first, noise->second, seed}.validate();
    switch (experiment) {
    case ExperimentKind::Intersected:
        if (samples_per_seq <= net.T + 1)
            throw ContractError("samples_per_seq must exceed T + 1");
        break;
    case ExperimentKind::Patterns:
        if (train_periods * period_samples <= net.T + 1 || eval_periods * period_samples <= net.T + 1)
            throw ContractError("pattern sequences must be longer than T + 1 samples");
        break;
    case ExperimentKind::Characters:
    case ExperimentKind::Custom:
        if (data.empty())
            throw InputError("experiment '" + to_string(experiment) + "' needs data=PATH");
        if (!fs::exists(data))
            throw InputError("data file " + data.string() + " does not exist");
        if (length <= net.T + 1)
            throw ContractError("length must exceed T + 1");
        break;
    }
}

TuneConfig ExperimentConfig::tune_config() const
{
    TuneConfig tc = TuneConfig::from(net);
    if (epochs)
        tc.epochs = *epochs;
    return tc;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

struct EvalCase {
    TrainingSequence clean;
    TrainingSequence primer;   // clean or noisy; only the first T samples are used
    std::string source;
};

Dataset eval_data(const ExperimentConfig& cfg, const Dataset& train)
{
    if (cfg.experiment != ExperimentKind::Patterns)
        return train;
    Dataset ev = scaled(gen_waveforms(cfg.period_samples, cfg.eval_periods, 0.0), cfg.scale);
    for (double deg : cfg.phase_shifts_deg) {
        auto s = gen_waveform("sine", cfg.period_samples, cfg.eval_periods, deg * std::numbers::pi / 180.0);
        for (auto& x : s.samples)
            x[0] *= cfg.scale;
        char label[48];
        std::snprintf(label, sizeof label, "sine_phase%g", deg);
        s.label = label;
        ev.sequences.push_back(std::move(s));
    }
    return ev;
}

std::string source_of(const std::string& label)
{
    return label.starts_with("sine_phase") ? "sine" : label;
}

template <typename Net>
EpisodeMetrics run_episode(Net& net, const EvalCase& ec)
{
    const std::size_t T = net.config().T;
    const std::size_t dim = net.config().dim;
    EpisodeMetrics m;
    m.label = ec.clean.label;
    m.source = ec.source;
    m.dim = dim;

    net.reset_episode();
    for (std::size_t t = 1; t <= T; ++t)
        m.outputs.push_back(net.step(ec.primer.samples[t - 1]));
    if constexpr (requires { net.identified_sequence(); })
        m.identified_seq_set = net.identified_sequence();
    while (m.outputs.size() + 1 < ec.clean.samples.size())
        m.outputs.push_back(net.step());
    m.targets.assign(ec.clean.samples.begin() + 1, ec.clean.samples.end());

    std::vector<double> acc(dim, 0.0);
    for (std::size_t i = T - 1; i < m.outputs.size(); ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            const double e = m.outputs[i][k] - m.targets[i][k];
            acc[k] += e * e;
            m.max_abs_error = std::max(m.max_abs_error, std::abs(e));
        }
        ++m.compared;
    }
    for (double a : acc) {
        m.rmse.push_back(std::sqrt(a / static_cast<double>(m.compared)));
        m.rmse_max = std::max(m.rmse_max, m.rmse.back());
    }
    return m;
}

void write_series(const fs::path& path, const EpisodeMetrics& m)
{
    std::ofstream out(path);
    out << 't';
    for (std::size_t k = 0; k < m.dim; ++k)
        out << ",target_" << k;
    for (std::size_t k = 0; k < m.dim; ++k)
        out << ",output_" << k;
    out << '\n';
    for (std::size_t i = 0; i < m.targets.size(); ++i) {
        out << i + 2;
        for (double v : m.targets[i])
            out << ',' << fmt(v);
        for (double v : m.outputs[i])
            out << ',' << fmt(v);
        out << '\n';
    }
    if (!out)
        throw InputError("cannot write " + path.string());
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    out << text;
    if (!out)
        throw InputError("cannot write " + path.string());
}

template <typename Net>
void evaluate(Net& net, const std::vector<EvalCase>& cases, RunMetrics& metrics)
{
    for (const auto& ec : cases)
        metrics.episodes.push_back(run_episode(net, ec));
}

} // namespace

std::string sanitize_label(const std::string& label)
{
    std::string out;
    for (unsigned char ch : label)
        out += (std::isalnum(ch) || ch == '-' || ch == '_') ? static_cast<char>(ch) : '_';
    return out.empty() ? "_" : out;
}

Dataset training_data(const ExperimentConfig& cfg)
{
    Dataset ds;
    switch (cfg.experiment) {
    case ExperimentKind::Intersected:
        ds = gen_intersected_pair(cfg.samples_per_seq, cfg.net.T);
        break;
    case ExperimentKind::Patterns:
        ds = gen_waveforms(cfg.period_samples, cfg.train_periods, 0.0);
        break;
    case ExperimentKind::Characters:
    case ExperimentKind::Custom:
        ds = load_trajectories(cfg.data, cfg.labels, cfg.length);
        break;
    }
    return scaled(ds, cfg.scale);
}

const EpisodeMetrics& RunMetrics::episode(const std::string& label) const
{
    for (const auto& e : episodes) {
        if (e.label == label)
            return e;
    }
    throw ContractError("no episode labelled '" + label + "'");
}

std::string RunMetrics::to_json() const
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["experiment"] = experiment;
    j["model"] = model;
    j["seed"] = seed;
    j["noise"] = noise;
    j["structure"] = {{"sequence_sets", sequence_sets}, {"sample_sets", sample_sets}, {"rules", rules}};
    j["init_warnings"] = init_warnings;
    j["tune_aborted"] = tune_aborted;
    ordered_json eps = ordered_json::array();
    for (const auto& e : episodes) {
        ordered_json je;
        je["label"] = e.label;
        je["source"] = e.source;
        je["compared"] = e.compared;
        je["rmse"] = e.rmse;
        je["rmse_max"] = e.rmse_max;
        je["max_abs_error"] = e.max_abs_error;
        je["expected_seq_set"] = e.expected_seq_set ? ordered_json(*e.expected_seq_set) : ordered_json();
        je["identified_seq_set"] = e.identified_seq_set ? ordered_json(*e.identified_seq_set) : ordered_json();
        je["identified"] = e.identified_seq_set ? ordered_json(e.identified()) : ordered_json();
        eps.push_back(std::move(je));
    }
    j["episodes"] = std::move(eps);
    return j.dump(2) + "\n";
}

RunResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const Dataset train = training_data(cfg);
    const Dataset eval = eval_data(cfg, train);
    const Dataset primers =
        cfg.noise ? add_noise(eval, NoiseSpec{cfg.noise->first, cfg.noise->second, cfg.seed}) : eval;

    std::vector<EvalCase> cases;
    for (std::size_t i = 0; i < eval.sequences.size(); ++i)
        cases.push_back({eval.sequences[i], primers.sequences[i], source_of(eval.sequences[i].label)});

    NetworkConfig nc = cfg.net;
    nc.dim = train.dim;

    RunResult res;
    auto& m = res.metrics;
    m.experiment = to_string(cfg.experiment);
    m.model = to_string(cfg.model);
    m.seed = cfg.seed;
    m.noise = primers.noise;

    if (cfg.model == ModelKind::Proposed) {
        Network net(nc);
        res.init = initialize(net, train.sequences);
        if (cfg.fine_tune)
            res.tune = fine_tune(net, train.sequences, cfg.tune_config());
        evaluate(net, cases, m);
        std::map<std::string, std::size_t> bound;
        for (const auto& tr : res.init.traces)
            bound.emplace(tr.label, tr.seq_set);
        for (auto& e : m.episodes) {
            if (auto it = bound.find(e.source); it != bound.end())
                e.expected_seq_set = it->second;
        }
        m.sequence_sets = net.sequence_sets().size();
        m.sample_sets = net.sample_sets().size();
        m.rules = net.rule_count();
        res.model = dump(net);
    } else {
        BaselineNetwork net(nc);
        res.init = baseline_initialize(net, train.sequences);
        if (cfg.fine_tune)
            res.tune = baseline_fine_tune(net, train.sequences, cfg.tune_config());
        evaluate(net, cases, m);
        m.sample_sets = net.sample_sets().size();
        m.rules = net.rule_count();
        res.model = dump(net);
    }
    m.init_warnings = res.init.warnings.size();
    m.tune_aborted = static_cast<std::size_t>(std::count_if(
        res.tune.sequences.begin(), res.tune.sequences.end(), [](const auto& s) { return s.aborted; }));
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!cfg.out.empty()) {
        fs::create_directories(cfg.out);
        write_text(cfg.out / "config.txt", cfg.to_text());
        write_text(cfg.out / "metrics.json", m.to_json());
        {
            nlohmann::ordered_json t;
            t["seconds"] = m.seconds;
            write_text(cfg.out / "timing.json", t.dump(2) + "\n");
        }
        {
            std::ostringstream os;
            write_model(os, res.model);
            write_text(cfg.out / "model.txt", os.str());
        }
        write_text(cfg.out / "init.txt", to_text(res.init));
        write_text(cfg.out / "tune.txt", to_text(res.tune));
        std::map<std::string, std::string> files;
        for (const auto& e : m.episodes) {
            const auto name = "seq_" + sanitize_label(e.label) + ".csv";
            if (auto [it, fresh] = files.emplace(name, e.label); !fresh)
                throw InputError("labels '" + it->second + "' and '" + e.label + "' share the file " + name);
            write_series(cfg.out / name, e);
        }
        if (cfg.plot)
            emit_plots(cfg.out);
    }
    return res;
}

} // namespace fnnseq
