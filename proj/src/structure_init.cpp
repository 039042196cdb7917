#include "fnnseq/error.hpp"
#include "fnnseq/training.hpp"

#include <cmath>
#include <sstream>

namespace fnnseq {

void validate_sequence(const TrainingSequence& seq, std::size_t dim, std::size_t T)
{
    if (seq.samples.size() <= T + 1) {
        throw InputError("sequence '" + seq.label + "' has " + std::to_string(seq.samples.size()) +
                         " samples; need more than T + 1 = " + std::to_string(T + 1));
    }
    for (const auto& s : seq.samples) {
        if (s.size() != dim)
            throw InputError("sequence '" + seq.label + "' mixes sample dimensions");
        require_finite(s, "training sample");
    }
}

InitReport initialize(Network& net, const std::vector<TrainingSequence>& sequences)
{
    const auto& cfg = net.config();
    if (sequences.empty())
        throw InputError("no training sequences");
    for (const auto& seq : sequences)
        validate_sequence(seq, cfg.dim, cfg.T);

    InitReport report;
    const std::size_t seq_before = net.sequence_sets().size();
    const std::size_t samp_before = net.sample_sets().size();
    const std::size_t rules_before = net.rule_count();

    for (const auto& seq : sequences) {
        InitTrace trace;
        trace.label = seq.label;

        net.reset_episode();
        for (std::size_t t = 1; t <= cfg.T; ++t)
            net.observe(seq.samples[t - 1]);

        const std::vector<double> identity = net.state().o1;
        std::size_t p = 0;
        if (coverage(net.sequence_sets(), identity) <= cfg.theta1) {
            p = net.add_sequence_set(identity);
            trace.new_sequence_set = true;
        } else {
            p = best_match(net.sequence_sets(), identity);
            report.warnings.push_back("sequence '" + seq.label + "' is covered by sequence set " +
                                      std::to_string(p) + "; treated as a repeat");
        }
        trace.seq_set = p;

        // Memory has seen x(1..t); x(t+1) is the consequent. Starting at
        // t = T gives the last priming state, whose output is the first
        // value fed back in autonomous mode, a rule of its own.
        for (std::size_t t = cfg.T; t + 1 <= seq.samples.size(); ++t) {
            if (t > cfg.T)
                net.observe(seq.samples[t - 1]);
            const auto& memory = net.state().o3;
            const Sample& next = seq.samples[t];

            const double cov = coverage(net.sample_sets(), memory);
            trace.coverage.emplace_back(t, cov);
            if (cov <= cfg.theta2) {
                const std::size_t m = net.add_sample_set(memory);
                net.add_rule(p, m, next);
            }
            const std::size_t best = best_match(net.sample_sets(), memory);
            if (!net.find_rule(p, best))
                net.add_rule(p, best, next);
        }
        report.traces.push_back(std::move(trace));
    }
    net.reset_episode();

    report.seq_sets_added = net.sequence_sets().size() - seq_before;
    report.samp_sets_added = net.sample_sets().size() - samp_before;
    report.rules_added = net.rule_count() - rules_before;
    return report;
}

std::string to_text(const InitReport& report)
{
    std::ostringstream os;
    os.precision(17);
    os << "seq_sets_added=" << report.seq_sets_added << '\n'
       << "samp_sets_added=" << report.samp_sets_added << '\n'
       << "rules_added=" << report.rules_added << '\n';
    for (const auto& tr : report.traces) {
        os << "sequence=" << tr.label << " seq_set=" << tr.seq_set
           << " new=" << (tr.new_sequence_set ? 1 : 0) << " coverage=";
        for (std::size_t i = 0; i < tr.coverage.size(); ++i)
            os << (i ? ";" : "") << tr.coverage[i].first << ':' << tr.coverage[i].second;
        os << '\n';
    }
    for (const auto& w : report.warnings)
        os << "warning=" << w << '\n';
    return os.str();
}

} // namespace fnnseq
