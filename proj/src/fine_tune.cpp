#include "gradual_tune.hpp"

#include <sstream>

namespace fnnseq {

void TuneConfig::validate() const
{
    if (!(eta0 > 0.0)) throw ContractError("eta0 must be positive");
    if (!(beta > 0.0 && beta < 1.0)) throw ContractError("beta must lie in (0,1)");
    if (!(theta3 > 0.0)) throw ContractError("theta3 must be positive");
    if (iter_max == 0) throw ContractError("iter_max must be positive");
    if (epochs == 0) throw ContractError("epochs must be positive");
}

TuneConfig TuneConfig::from(const NetworkConfig& cfg)
{
    TuneConfig tc;
    tc.eta0 = cfg.eta0;
    tc.beta = cfg.beta;
    tc.theta3 = cfg.theta3;
    tc.iter_max = cfg.iter_max;
    tc.epochs = cfg.iter_max;
    return tc;
}

double squared_error(std::span<const double> y, std::span<const double> target)
{
    if (y.size() != target.size())
        throw ContractError("output and target dimensions differ");
    double e = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double diff = y[k] - target[k];
        e += diff * diff;
    }
    return e;
}

void weight_update(Network& net, std::span<const double> phi, std::span<const double> y,
                   std::span<const double> target, double eta)
{
    detail::apply_update(net, phi, y, target, eta);
}

TuneReport fine_tune(Network& net, const std::vector<TrainingSequence>& sequences, const TuneConfig& cfg)
{
    return detail::gradual_tune(net, sequences, cfg);
}

std::string to_text(const TuneReport& report)
{
    std::ostringstream os;
    os.precision(17);
    for (const auto& sr : report.sequences) {
        os << "sequence=" << sr.label << " epochs=" << sr.epochs << " final_eta=" << sr.final_eta
           << " aborted=" << (sr.aborted ? 1 : 0);
        if (sr.aborted)
            os << " reason=" << sr.abort_reason;
        os << " steps=";
        for (std::size_t i = 0; i < sr.steps.size(); ++i)
            os << (i ? ";" : "") << sr.steps[i].t << ':' << sr.steps[i].error << ':' << sr.steps[i].iterations;
        os << '\n';
    }
    return os.str();
}

} // namespace fnnseq
