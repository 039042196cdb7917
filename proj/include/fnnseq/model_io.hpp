#pragma once

// Plain-text model dump. Layout, one item per line:
//
//   fnnseq-model 1  (numbers in shortest round-trip form)
//   kind proposed|baseline
//   dim T d n sigma1 sigma2 theta1 theta2 theta3 iter_max eta0 beta
//     (one "key value" line each, in that order)
//   sequence_sets <count>      then <count> lines: width c_0 .. c_{n*dim-1}
//   sample_sets <count>        then <count> lines: width c_0 .. c_{d*dim-1}
//   rules <count>              then <count> lines: seq_set sample_set w_0 .. w_{dim-1}
//   end
//
// Baseline dumps have zero sequence sets and write "-" for seq_set.

#include "fnnseq/baseline.hpp"
#include "fnnseq/network.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fnnseq {

struct ModelDump {
    std::string kind = "proposed";
    NetworkConfig config;
    std::vector<FuzzySet> seq_sets;
    std::vector<FuzzySet> samp_sets;
    struct Entry {
        std::optional<std::size_t> seq_set;
        std::size_t sample_set = 0;
        Sample weight;
    };
    std::vector<Entry> rules;
};

ModelDump dump(const Network& net);
ModelDump dump(const BaselineNetwork& net);

void write_model(std::ostream& os, const ModelDump& model);
/// Throws InputError on any deviation from the layout above.
ModelDump read_model(std::istream& is);

/// Rebuild a network from a dump; throws InputError if the kind does not match.
Network to_network(const ModelDump& model);
BaselineNetwork to_baseline(const ModelDump& model);

/// Human-readable counts plus one line per rule.
std::string describe(const ModelDump& model);

} // namespace fnnseq
