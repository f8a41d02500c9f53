#include "memnet/projector.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace memnet {

Rat compute_R(int N, const Rat& delta, int d) {
    if (N < 1 || d < 1 || delta <= 0) throw std::invalid_argument("compute_R: bad arguments");
    return Rat(10) * N * N / delta * sqrt_upper(pi_upper() * d, 22);
}

namespace {

std::vector<Rat> draw_direction(unsigned long seed, int trial, int d) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(ss);
    std::uniform_int_distribution<long long> dist(-(1LL << 31), (1LL << 31) - 1);
    std::vector<Rat> v(d);
    const Int den = int_pow2(32);
    for (int i = 0; i < d; ++i) v[i] = make_rat(Int(static_cast<long>(dist(rng))), den);
    return v;
}

}  // namespace

ProjectionResult project(const std::vector<std::vector<Rat>>& points, const Rat& delta,
                         const Rat& R, unsigned long seed, int max_trials) {
    const int N = static_cast<int>(points.size());
    if (N < 1) throw std::invalid_argument("project: empty point set");
    const int d = static_cast<int>(points[0].size());
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(points[i].size()) != d)
            throw std::invalid_argument("project: ragged point dimensions");
        Rat sq(0);
        for (const Rat& c : points[i]) sq += c * c;
        if (sq > 1)
            throw std::invalid_argument("project: point " + std::to_string(i) +
                                        " lies outside the unit ball");
    }
    const Rat delta_sq = delta * delta;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            Rat sq(0);
            for (int k = 0; k < d; ++k) {
                const Rat diff = points[i][k] - points[j][k];
                sq += diff * diff;
            }
            if (sq < delta_sq)
                throw std::invalid_argument("project: points " + std::to_string(i) + " and " +
                                            std::to_string(j) + " violate the separation delta");
        }

    auto finish = [&](std::vector<Rat> v, const Rat& a, const Rat& b, std::vector<Rat> projected,
                      std::vector<int> order, int trials) {
        AffineLayer h = zero_layer(1, d);
        for (int k = 0; k < d; ++k) h.weight[0][k] = a * v[k];
        h.bias[0] = b;
        ProjectionResult res{std::move(v), a,     b,
                             ReluNetwork({h, identity_layer(1)}), std::move(projected),
                             std::move(order),                    trials};
        return res;
    };

    if (N == 1) {
        std::vector<Rat> v(d, Rat(0));
        v[0] = 1;
        Rat z = points[0][0];
        return finish(std::move(v), Rat(1), -z, {Rat(0)}, {0}, 0);
    }

    bool have_best = false;
    Rat best_needed_R(0);
    for (int trial = 0; trial < max_trials; ++trial) {
        std::vector<Rat> v = draw_direction(seed, trial, d);
        std::vector<Rat> z(N, Rat(0));
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < d; ++k)
                if (v[k] != 0) z[i] += v[k] * points[i][k];
        std::vector<int> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int i, int j) { return z[i] < z[j]; });
        bool tie = false;
        Rat gap(0);
        for (int k = 1; k < N; ++k) {
            const Rat diff = z[order[k]] - z[order[k - 1]];
            if (diff == 0) {
                tie = true;
                break;
            }
            if (k == 1 || diff < gap) gap = diff;
        }
        if (tie) continue;
        const Rat span = z[order[N - 1]] - z[order[0]];
        const Rat needed = 2 * span / gap;  // max of the mapped values
        if (!have_best || needed < best_needed_R) {
            best_needed_R = needed;
            have_best = true;
        }
        if (needed <= R) {
            const Rat a = Rat(2) / gap;
            const Rat b = -a * z[order[0]];
            std::vector<Rat> projected(N);
            for (int k = 0; k < N; ++k) projected[k] = a * z[order[k]] + b;
            return finish(std::move(v), a, b, std::move(projected), std::move(order), trial + 1);
        }
    }
    std::string best = have_best ? ("best trial needed R >= " + rat_to_string(best_needed_R))
                                 : "every trial produced an exact collision";
    throw std::runtime_error("project: no accepted direction after " +
                             std::to_string(max_trials) + " trials (" + best + ")");
}

}  // namespace memnet
