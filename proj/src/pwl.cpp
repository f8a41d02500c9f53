#include "memnet/pwl.hpp"

#include <algorithm>
#include <stdexcept>

namespace memnet {

void validate_pwl(const PwlFunction& g) {
    if (g.xs.size() != g.ys.size())
        throw std::invalid_argument("pwl: xs/ys length mismatch");
    for (std::size_t i = 1; i < g.xs.size(); ++i)
        if (!(g.xs[i - 1] < g.xs[i]))
            throw std::invalid_argument("pwl: breakpoints not strictly increasing");
    if (g.xs.empty() && g.left_slope != g.right_slope)
        throw std::invalid_argument("pwl: affine function needs equal end slopes");
}

Rat pwl_eval(const PwlFunction& g, const Rat& x) {
    if (g.xs.empty()) return g.base + g.left_slope * x;
    if (x <= g.xs.front()) return g.ys.front() + g.left_slope * (x - g.xs.front());
    if (x >= g.xs.back()) return g.ys.back() + g.right_slope * (x - g.xs.back());
    // First breakpoint strictly right of x.
    const auto it = std::upper_bound(g.xs.begin(), g.xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - g.xs.begin());
    const std::size_t lo = hi - 1;
    const Rat t = (x - g.xs[lo]) / (g.xs[hi] - g.xs[lo]);
    return g.ys[lo] + t * (g.ys[hi] - g.ys[lo]);
}

namespace {

PwlFunction pwlthrough_dedupe(std::vector<std::pair<Rat, Rat>>& pts) {
    PwlFunction g;
    for (const auto& [x, y] : pts) {
        if (!g.xs.empty() && x == g.xs.back()) {
            if (y != g.ys.back())
                throw std::invalid_argument("pwl_through_points: conflicting values at a point");
            continue;
        }
        g.xs.push_back(x);
        g.ys.push_back(y);
    }
    return g;
}

}  // namespace

PwlFunction pwl_through_points(std::vector<std::pair<Rat, Rat>> pts) {
    if (pts.empty()) throw std::invalid_argument("pwl_through_points: no points");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    PwlFunction g = pwlthrough_dedupe(pts);
    if (g.xs.size() == 1) {
        // Degenerate: constant function through a single point.
        g.base = g.ys[0];
        g.xs.clear();
        g.ys.clear();
    }
    validate_pwl(g);
    return g;
}

}  // namespace memnet
