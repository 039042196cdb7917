#include "fnnseq/model_io.hpp"

#include "fnnseq/error.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace fnnseq {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void write_set(std::ostream& os, const FuzzySet& fs)
{
    os << fmt(fs.width);
    for (double c : fs.center)
        os << ' ' << fmt(c);
    os << '\n';
}

class Reader {
public:
    explicit Reader(std::istream& is) : is_(is) {}

    std::istringstream line()
    {
        std::string text;
        if (!std::getline(is_, text))
            fail("unexpected end of model");
        ++line_no_;
        return std::istringstream(text);
    }

    template <typename V>
    V field(const char* key)
    {
        auto ls = line();
        std::string k;
        if (!(ls >> k) || k != key)
            fail(std::string("expected '") + key + " <value>'");
        V v{};
        if constexpr (std::is_same_v<V, double>) {
            v = number(ls);
        } else if (!(ls >> v)) {
            fail(std::string("expected '") + key + " <value>'");
        }
        if (!(ls >> std::ws).eof())
            fail("trailing data");
        return v;
    }

    double number(std::istringstream& ls)
    {
        std::string tok;
        if (!(ls >> tok))
            fail("too few numbers");
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail("bad number '" + tok + "'");
        return v;
    }

    std::vector<double> numbers(std::istringstream& ls, std::size_t count)
    {
        std::vector<double> out(count);
        for (auto& v : out)
            v = number(ls);
        if (!(ls >> std::ws).eof())
            fail("trailing data");
        return out;
    }

    FuzzySet set(std::size_t len)
    {
        auto ls = line();
        FuzzySet fs;
        fs.width = number(ls);
        fs.center = numbers(ls, len);
        return fs;
    }

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError("model line " + std::to_string(line_no_) + ": " + msg);
    }

private:
    std::istream& is_;
    std::size_t line_no_ = 0;
};

} // namespace

ModelDump dump(const Network& net)
{
    ModelDump m;
    m.kind = "proposed";
    m.config = net.config();
    m.seq_sets.assign(net.sequence_sets().begin(), net.sequence_sets().end());
    m.samp_sets.assign(net.sample_sets().begin(), net.sample_sets().end());
    for (const auto& r : net.rules())
        m.rules.push_back({r.seq_set, r.sample_set, r.weight});
    return m;
}

ModelDump dump(const BaselineNetwork& net)
{
    ModelDump m;
    m.kind = "baseline";
    m.config = net.config();
    m.samp_sets.assign(net.sample_sets().begin(), net.sample_sets().end());
    for (const auto& r : net.rules())
        m.rules.push_back({std::nullopt, r.sample_set, r.weight});
    return m;
}

void write_model(std::ostream& os, const ModelDump& m)
{
    const auto& c = m.config;
    os << "fnnseq-model 1\n"
       << "kind " << m.kind << '\n'
       << "dim " << c.dim << '\n'
       << "T " << c.T << '\n'
       << "d " << c.d << '\n'
       << "n " << c.n << '\n'
       << "sigma1 " << fmt(c.sigma1) << '\n'
       << "sigma2 " << fmt(c.sigma2) << '\n'
       << "theta1 " << fmt(c.theta1) << '\n'
       << "theta2 " << fmt(c.theta2) << '\n'
       << "theta3 " << fmt(c.theta3) << '\n'
       << "iter_max " << c.iter_max << '\n'
       << "eta0 " << fmt(c.eta0) << '\n'
       << "beta " << fmt(c.beta) << '\n';
    os << "sequence_sets " << m.seq_sets.size() << '\n';
    for (const auto& fs : m.seq_sets)
        write_set(os, fs);
    os << "sample_sets " << m.samp_sets.size() << '\n';
    for (const auto& fs : m.samp_sets)
        write_set(os, fs);
    os << "rules " << m.rules.size() << '\n';
    for (const auto& r : m.rules) {
        if (r.seq_set)
            os << *r.seq_set;
        else
            os << '-';
        os << ' ' << r.sample_set;
        for (double w : r.weight)
            os << ' ' << fmt(w);
        os << '\n';
    }
    os << "end\n";
}

ModelDump read_model(std::istream& is)
{
    Reader rd(is);
    {
        auto ls = rd.line();
        std::string magic;
        int version = 0;
        if (!(ls >> magic >> version) || magic != "fnnseq-model" || version != 1)
            rd.fail("not an fnnseq-model version 1 dump");
    }
    ModelDump m;
    m.kind = rd.field<std::string>("kind");
    if (m.kind != "proposed" && m.kind != "baseline")
        rd.fail("unknown model kind '" + m.kind + "'");
    auto& c = m.config;
    c.dim = rd.field<std::size_t>("dim");
    c.T = rd.field<std::size_t>("T");
    c.d = rd.field<std::size_t>("d");
    c.n = rd.field<std::size_t>("n");
    c.sigma1 = rd.field<double>("sigma1");
    c.sigma2 = rd.field<double>("sigma2");
    c.theta1 = rd.field<double>("theta1");
    c.theta2 = rd.field<double>("theta2");
    c.theta3 = rd.field<double>("theta3");
    c.iter_max = rd.field<std::size_t>("iter_max");
    c.eta0 = rd.field<double>("eta0");
    c.beta = rd.field<double>("beta");
    try {
        c.validate();
    } catch (const ContractError& e) {
        rd.fail(e.what());
    }

    const auto seq_count = rd.field<std::size_t>("sequence_sets");
    for (std::size_t i = 0; i < seq_count; ++i)
        m.seq_sets.push_back(rd.set(c.identity_size()));
    const auto samp_count = rd.field<std::size_t>("sample_sets");
    for (std::size_t i = 0; i < samp_count; ++i)
        m.samp_sets.push_back(rd.set(c.memory_size()));
    const auto rule_count = rd.field<std::size_t>("rules");
    for (std::size_t i = 0; i < rule_count; ++i) {
        auto ls = rd.line();
        std::string seq;
        ModelDump::Entry e;
        if (!(ls >> seq >> e.sample_set))
            rd.fail("malformed rule");
        if (seq != "-") {
            std::size_t idx = 0;
            std::istringstream ss(seq);
            if (!(ss >> idx) || !(ss >> std::ws).eof())
                rd.fail("malformed rule sequence set '" + seq + "'");
            e.seq_set = idx;
        }
        e.weight = rd.numbers(ls, c.dim);
        m.rules.push_back(std::move(e));
    }
    {
        auto ls = rd.line();
        std::string word;
        if (!(ls >> word) || word != "end")
            rd.fail("expected 'end'");
    }
    return m;
}

Network to_network(const ModelDump& m)
{
    if (m.kind != "proposed")
        throw InputError("model kind '" + m.kind + "' is not a proposed network");
    Network net(m.config);
    try {
        for (const auto& fs : m.seq_sets) {
            if (fs.width != m.config.sigma1)
                throw InputError("sequence set width differs from sigma1");
            net.add_sequence_set(fs.center);
        }
        for (const auto& fs : m.samp_sets) {
            if (fs.width != m.config.sigma2)
                throw InputError("sample set width differs from sigma2");
            net.add_sample_set(fs.center);
        }
        for (const auto& r : m.rules) {
            if (!r.seq_set)
                throw InputError("proposed-network rule without a sequence set");
            net.add_rule(*r.seq_set, r.sample_set, r.weight);
        }
    } catch (const ContractError& e) {
        throw InputError(std::string("inconsistent model: ") + e.what());
    }
    return net;
}

BaselineNetwork to_baseline(const ModelDump& m)
{
    if (m.kind != "baseline")
        throw InputError("model kind '" + m.kind + "' is not a baseline network");
    if (!m.seq_sets.empty())
        throw InputError("baseline model with sequence sets");
    if (m.rules.size() != m.samp_sets.size())
        throw InputError("baseline model needs exactly one rule per sample set");
    BaselineNetwork net(m.config);
    try {
        for (std::size_t i = 0; i < m.rules.size(); ++i) {
            const auto& r = m.rules[i];
            if (r.seq_set || r.sample_set != i)
                throw InputError("baseline rule " + std::to_string(i) + " is out of order");
            if (m.samp_sets[i].width != m.config.sigma2)
                throw InputError("sample set width differs from sigma2");
            net.add_rule(m.samp_sets[i].center, r.weight);
        }
    } catch (const ContractError& e) {
        throw InputError(std::string("inconsistent model: ") + e.what());
    }
    return net;
}

std::string describe(const ModelDump& m)
{
    std::ostringstream os;
    os << "kind: " << m.kind << '\n'
       << "sequence sets: " << m.seq_sets.size() << '\n'
       << "sample sets: " << m.samp_sets.size() << '\n'
       << "rules: " << m.rules.size() << '\n'
       << "rule  seq  sample  weight\n";
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
        const auto& r = m.rules[i];
        char head[64];
        std::snprintf(head, sizeof head, "%4zu  %3s  %6zu ", i,
                      r.seq_set ? std::to_string(*r.seq_set).c_str() : "-", r.sample_set);
        os << head;
        for (double w : r.weight) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.6g", w);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace fnnseq
