#ifndef MEMNET_PROJECTOR_HPP
#define MEMNET_PROJECTOR_HPP

#include <vector>

#include "memnet/network.hpp"
#include "memnet/rat.hpp"

namespace memnet {

// One-dimensional embedding of the dataset: x -> sigma(a * (v.x) + b),
// landing every point in [0, R] with pairwise gaps >= 2.
struct ProjectionResult {
    std::vector<Rat> direction;  // v, one entry per coordinate
    Rat a{0};
    Rat b{0};
    ReluNetwork net;          // width 1, depth 1
    std::vector<Rat> projected;  // sorted ascending
    std::vector<int> order;      // projected[k] belongs to points[order[k]]
    int trials_used = 0;
};

// Rational upper bound for 10*N^2*delta^-1*sqrt(pi*d): the square root is
// rounded up to within 2^-20.
Rat compute_R(int N, const Rat& delta, int d);

// Verified randomized search for a projection direction. Deterministic in
// (seed, inputs); trial t uses the sub-seed (seed, t). Throws when the
// points violate the unit-ball or delta-separation preconditions (naming
// the offender) or when max_trials trials all fail (reporting the best
// relative gap found).
ProjectionResult project(const std::vector<std::vector<Rat>>& points, const Rat& delta,
                         const Rat& R, unsigned long seed, int max_trials = 64);

}  // namespace memnet

#endif
