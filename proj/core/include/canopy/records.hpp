#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "canopy/experiments.hpp"
#include "canopy/multigraph.hpp"

namespace canopy {

inline constexpr const char* kCsvHeader =
    "model,b,size,lambda,replicate,seed,cluster_size,edges,connected,isolated,truncated";

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);

// One object per record plus a trailing metadata object carrying the master
// seed and library version. Timing never goes here: the stream must be
// byte-identical for identical (config, seed).
void write_json(std::ostream& os, const std::vector<SweepRecord>& records,
                std::uint64_t master_seed);

// "b n root" header then one line per edge "u v multiplicity", endpoints as
// dotted coordinate strings ("0" for the identity). Uses graph labels when
// present, otherwise decodes leaf indices of the depth-n tree.
void dump_graph(std::ostream& os, const RootedMultiGraph& g, int b, int n);

std::string format_double(double x);

}  // namespace canopy
