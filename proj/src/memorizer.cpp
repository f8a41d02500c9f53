#include "memnet/memorizer.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

#include "memnet/bit_codec.hpp"
#include "memnet/bit_extractor.hpp"
#include "memnet/projector.hpp"
#include "memnet/pwl_realizer.hpp"

namespace memnet {

void validate_dataset(const LabeledDataset& ds) {
    const int N = ds.N();
    if (N < 1) throw std::invalid_argument("dataset: no points");
    if (ds.d < 1) throw std::invalid_argument("dataset: dimension must be >= 1");
    if (ds.C < 2) throw std::invalid_argument("dataset: need at least 2 label classes");
    if (ds.delta <= 0) throw std::invalid_argument("dataset: separation must be positive");
    if (static_cast<int>(ds.labels.size()) != N)
        throw std::invalid_argument("dataset: label count differs from point count");
    for (int i = 0; i < N; ++i) {
        if (static_cast<int>(ds.points[i].size()) != ds.d)
            throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                        " has wrong dimension");
        Rat sq(0);
        for (const Rat& v : ds.points[i]) sq += v * v;
        if (sq > 1)
            throw std::invalid_argument("dataset: point " + std::to_string(i) +
                                        " lies outside the unit ball");
        if (ds.labels[i] < 1 || ds.labels[i] > ds.C)
            throw std::invalid_argument("dataset: label " + std::to_string(i) + " out of range");
    }
    const Rat dsq = ds.delta * ds.delta;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            Rat sq(0);
            for (int k = 0; k < ds.d; ++k) {
                const Rat diff = ds.points[i][k] - ds.points[j][k];
                sq += diff * diff;
            }
            if (sq < dsq)
                throw std::invalid_argument("dataset: points " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are closer than delta");
        }
}

ConstructionParams derive_params(int N, int d, int C, const Rat& delta, int S, int T) {
    if (N < 1 || d < 1) throw std::invalid_argument("derive_params: need N, d >= 1");
    if (C < 2) throw std::invalid_argument("derive_params: need C >= 2");
    if (delta <= 0) throw std::invalid_argument("derive_params: need delta > 0");
    if (T < 1) throw std::invalid_argument("derive_params: need T >= 1");
    if (S < 1 || S >= N) throw std::invalid_argument("derive_params: need 1 <= S < N");

    ConstructionParams p;
    p.N = N;
    p.d = d;
    p.C = C;
    p.delta = delta;
    p.S = S;
    p.T = T;
    p.R = compute_R(N, delta, d);
    p.rho = static_cast<int>(std::max(1L, ceil_log2(p.R)));
    p.c = static_cast<int>(std::max(1L, ceil_log2(Rat(C))));
    p.L1 = S * (T + 3);
    // Least W1 with W1^2 * S^2 * (T+3) >= N, i.e. W1 >= sqrt(N)/(S*sqrt(T+3)).
    int W1 = 1;
    while (Int(W1) * W1 * S * S * (T + 3) < N) ++W1;
    p.W1 = W1;
    const Int term1 = Int(12) * W1 + 5;
    const Int term2 =
        Int(4) * (int_pow2((p.rho + T - 1) / T) + int_pow2((p.c + T - 1) / T) + 1);
    p.target_W = term1 > term2 ? term1 : term2;
    p.target_L = 3 * S * (T + 3) + 1;
    p.bounded_width_choice = term1 <= term2;
    return p;
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MEMNET_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

Int formula_param_count(const Int& W, int L) {
    return (Int(L) - 1) * W * W + (Int(L) + 2) * W + 1;
}

}  // namespace

MemorizationReport verify(const ReluNetwork& net, const LabeledDataset& ds, int threads) {
    if (net.input_dim() != ds.d)
        throw std::invalid_argument("verify: network input dimension differs from dataset");
    const int N = ds.N();
    const int workers = std::min(resolve_threads(threads), N);
    std::vector<std::vector<Mismatch>> found(workers);
    auto run = [&](int w) {
        for (int i = w; i < N; i += workers) {
            const Rat got = net.eval(ds.points[i])[0];
            if (got != ds.labels[i]) found[w].push_back({i, Rat(ds.labels[i]), got});
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    MemorizationReport rep;
    for (auto& part : found)
        rep.mismatches.insert(rep.mismatches.end(), part.begin(), part.end());
    std::sort(rep.mismatches.begin(), rep.mismatches.end(),
              [](const Mismatch& a, const Mismatch& b) { return a.index < b.index; });
    rep.verified = rep.mismatches.empty();
    rep.achieved_W = net.width();
    rep.achieved_L = net.depth();
    rep.param_count = formula_param_count(Int(rep.achieved_W), rep.achieved_L);
    return rep;
}

std::pair<ReluNetwork, MemorizationReport> construct(const LabeledDataset& ds, int S, int T,
                                                     const ConstructOptions& opt) {
    validate_dataset(ds);
    ConstructionParams params = derive_params(ds.N(), ds.d, ds.C, ds.delta, S, T);

    ProjectionResult proj =
        project(ds.points, ds.delta, params.R, opt.seed, opt.max_trials);

    const int N = ds.N();
    std::vector<Int> floors(N);
    std::vector<Int> labels0(N);
    for (int k = 0; k < N; ++k) {
        floors[k] = rat_floor(proj.projected[k]);
        labels0[k] = ds.labels[proj.order[k]] - 1;
    }
    BlockEncoding enc = encode_blocks(floors, labels0, S, params.rho, params.c);

    // The block-lookup step functions have at most 2B+1 pieces; enlarge W1
    // if the realizer's piece capacity (linear in W*L, not the quadratic
    // budget assumed by the target-width formula) needs it.
    const int B = static_cast<int>(enc.u.size());
    int W1_used = params.W1;
    while (Int(3) * W1_used * W1_used * params.L1 < B ||
           realize_capacity(W1_used, params.L1) < 2 * B + 1)
        ++W1_used;

    ReluNetwork f2 = build_f2(proj.projected, enc, W1_used, params.L1);
    ReluNetwork f3 = build_f3(params.rho, params.c, S, T);
    AffineLayer plus1 = zero_layer(1, 1);
    plus1.weight[0][0] = 1;
    plus1.bias[0] = 1;  // undo the internal label shift to {0..C-1}

    ReluNetwork net =
        compose(compose(compose(proj.net, f2), f3), affine_net(plus1));

    MemorizationReport rep = verify(net, ds, opt.threads);
    rep.params = params;
    rep.projection_trials = proj.trials_used;
    rep.W1_used = W1_used;
    rep.strict_constants_ok = Int(rep.achieved_W) <= params.target_W;
    if (W1_used > params.W1)
        rep.width_note = "block-lookup realizer enlarged W1 from " +
                         std::to_string(params.W1) + " to " + std::to_string(W1_used);
    if (!rep.strict_constants_ok) {
        const std::string msg =
            "achieved width " + std::to_string(rep.achieved_W) + " exceeds target " +
            params.target_W.get_str() +
            (rep.width_note.empty() ? "" : " (" + rep.width_note + ")");
        if (opt.strict_constants) throw std::runtime_error("construct: " + msg);
        rep.width_note = rep.width_note.empty() ? msg : rep.width_note + "; " + msg;
    }
    return {std::move(net), std::move(rep)};
}

std::vector<SweepRow> sweep(const LabeledDataset& ds, const std::vector<int>& S_list,
                            const std::vector<int>& T_list, const SweepOptions& opt) {
    std::vector<SweepRow> rows;
    unsigned long row_seed = opt.seed;
    for (int S : S_list)
        for (int T : T_list) {
            SweepRow row;
            row.S = S;
            row.T = T;
            ++row_seed;
            try {
                ConstructionParams p = derive_params(ds.N(), ds.d, ds.C, ds.delta, S, T);
                row.target_W = p.target_W;
                row.target_L = p.target_L;
                row.WL_sq = p.target_W * p.target_L * p.target_W * p.target_L;
                row.param_count = formula_param_count(p.target_W, p.target_L);
                row.bounded_width_choice = p.bounded_width_choice;
                if (p.target_W > opt.max_build_width) {
                    row.error = "target width exceeds the build limit; analytic row only";
                } else {
                    ConstructOptions copt;
                    copt.seed = row_seed;
                    copt.max_trials = opt.max_trials;
                    copt.threads = opt.threads;
                    auto [net, rep] = construct(ds, S, T, copt);
                    row.verified = rep.verified;
                    if (!rep.verified) row.error = "verification mismatches";
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

}  // namespace memnet
