#ifndef MEMNET_PWL_HPP
#define MEMNET_PWL_HPP

#include <vector>

#include "memnet/rat.hpp"

namespace memnet {

// Continuous piecewise-linear function R -> R.
//
// With breakpoints present: strictly increasing xs, function value ys[i] at
// xs[i], linear interpolation between consecutive breakpoints, and the two
// unbounded end pieces use left_slope / right_slope.
//
// Without breakpoints the function is affine: x -> base + left_slope * x,
// and left_slope == right_slope is required.
struct PwlFunction {
    std::vector<Rat> xs;
    std::vector<Rat> ys;
    Rat left_slope{0};
    Rat right_slope{0};
    Rat base{0};  // used only when xs is empty

    int piece_count() const { return static_cast<int>(xs.size()) + 1; }
};

// Validates the representation invariants; throws std::invalid_argument.
void validate_pwl(const PwlFunction& g);

// Exact evaluation.
Rat pwl_eval(const PwlFunction& g, const Rat& x);

// Interpolating PWL through strictly increasing (x, y) points with flat
// (zero-slope) end pieces. Consecutive duplicate-x points must agree in y.
PwlFunction pwl_through_points(std::vector<std::pair<Rat, Rat>> pts);

}  // namespace memnet

#endif
