#ifndef MEMNET_IO_HPP
#define MEMNET_IO_HPP

#include <iosfwd>
#include <string>

#include "memnet/memorizer.hpp"
#include "memnet/network.hpp"

namespace memnet {

// Rejection-samples N rational points in the unit ball with exact pairwise
// separation >= delta and uniform labels in [1, C]. Deterministic per seed.
// Throws when the requested packing is implausible (N*(delta/2)^d > 2^d) or
// when sampling stalls.
LabeledDataset gen_dataset(int N, int d, int C, const Rat& delta, unsigned long seed);

// Line-oriented text formats; byte-exact round-trips. Errors carry the
// offending line number.
void write_dataset(std::ostream& os, const LabeledDataset& ds);
LabeledDataset read_dataset(std::istream& is);
void write_dataset_file(const std::string& path, const LabeledDataset& ds);
LabeledDataset read_dataset_file(const std::string& path);

void write_network(std::ostream& os, const ReluNetwork& net);
ReluNetwork read_network(std::istream& is);
void write_network_file(const std::string& path, const ReluNetwork& net);
ReluNetwork read_network_file(const std::string& path);

}  // namespace memnet

#endif
