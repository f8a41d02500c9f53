#ifndef MEMNET_MEMORIZER_HPP
#define MEMNET_MEMORIZER_HPP

#include <string>
#include <vector>

#include "memnet/network.hpp"
#include "memnet/rat.hpp"

namespace memnet {

struct LabeledDataset {
    int d = 0;
    int C = 0;
    Rat delta{0};
    std::vector<std::vector<Rat>> points;
    std::vector<int> labels;  // in [1, C]

    int N() const { return static_cast<int>(points.size()); }
};

// Exact invariant check: points in the unit ball, pairwise separation >=
// delta, labels in range. Throws std::invalid_argument naming the violation.
void validate_dataset(const LabeledDataset& ds);

struct ConstructionParams {
    int N = 0, d = 0, C = 0;
    Rat delta{0};
    int S = 0, T = 0;
    Rat R{0};
    int rho = 0, c = 0;
    int W1 = 0;  // least W with W^2*S^2*(T+3) >= N
    int L1 = 0;  // S*(T+3)
    Int target_W{0};
    int target_L = 0;
    bool bounded_width_choice = false;  // first width term <= second
};

ConstructionParams derive_params(int N, int d, int C, const Rat& delta, int S, int T);

struct Mismatch {
    int index;
    Rat expected;
    Rat got;
};

struct MemorizationReport {
    ConstructionParams params;
    int achieved_W = 0;
    int achieved_L = 0;
    Int param_count{0};  // (L-1)W^2 + (L+2)W + 1 at achieved sizes
    bool verified = false;
    std::vector<Mismatch> mismatches;
    int projection_trials = 0;
    bool strict_constants_ok = false;
    int W1_used = 0;  // possibly enlarged beyond params.W1 by the realizer
    std::string width_note;
};

struct ConstructOptions {
    unsigned long seed = 1;
    int max_trials = 64;
    bool strict_constants = false;
    int threads = 0;  // 0: MEMNET_THREADS env or hardware default
};

// Full pipeline: project to 1-D, sort, encode blocks, block lookup, segment
// lookup, undo the label shift. The returned report includes the exact
// verification result over the dataset.
std::pair<ReluNetwork, MemorizationReport> construct(const LabeledDataset& ds, int S, int T,
                                                     const ConstructOptions& opt = {});

// Exact evaluation of net on every dataset point against its label.
// Parallelizes over points (threads as in ConstructOptions.threads).
MemorizationReport verify(const ReluNetwork& net, const LabeledDataset& ds, int threads = 0);

struct SweepRow {
    int S = 0, T = 0;
    Int target_W{0};
    int target_L = 0;
    Int WL_sq{0};  // (target_W * target_L)^2
    Int param_count{0};
    bool bounded_width_choice = false;
    bool verified = false;
    std::string error;  // empty when the row succeeded
};

struct SweepOptions {
    unsigned long seed = 1;
    int max_trials = 64;
    // Rows whose target width exceeds this are reported analytically without
    // building the (physically enormous) network.
    Int max_build_width{2000};
    int threads = 0;
};

std::vector<SweepRow> sweep(const LabeledDataset& ds, const std::vector<int>& S_list,
                            const std::vector<int>& T_list, const SweepOptions& opt = {});

}  // namespace memnet

#endif
