#include "memnet/network.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace memnet {

AffineLayer zero_layer(int out_dim, int in_dim) {
    AffineLayer l;
    l.weight.assign(out_dim, std::vector<Rat>(in_dim, Rat(0)));
    l.bias.assign(out_dim, Rat(0));
    return l;
}

AffineLayer identity_layer(int dim) {
    AffineLayer l = zero_layer(dim, dim);
    for (int i = 0; i < dim; ++i) l.weight[i][i] = 1;
    return l;
}

ReluNetwork::ReluNetwork(std::vector<AffineLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("ReluNetwork: no layers");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const AffineLayer& l = layers_[i];
        if (l.weight.size() != l.bias.size())
            throw std::invalid_argument("ReluNetwork: weight rows != bias length");
        for (const auto& row : l.weight)
            if (row.size() != l.weight[0].size())
                throw std::invalid_argument("ReluNetwork: ragged weight matrix");
        if (i > 0 && l.in_dim() != layers_[i - 1].out_dim())
            throw std::invalid_argument("ReluNetwork: layer dimensions do not chain");
        if (l.out_dim() == 0 || l.in_dim() == 0)
            throw std::invalid_argument("ReluNetwork: empty layer");
    }
}

int ReluNetwork::width() const {
    int w = 0;
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i)
        w = std::max(w, layers_[i].out_dim());
    return w;
}

namespace {

std::vector<Rat> apply_affine(const AffineLayer& l, const std::vector<Rat>& x) {
    std::vector<Rat> out(l.bias);
    for (int r = 0; r < l.out_dim(); ++r) {
        const auto& row = l.weight[r];
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) out[r] += row[c] * x[c];
    }
    return out;
}

void relu_inplace(std::vector<Rat>& v) {
    for (Rat& t : v)
        if (t < 0) t = 0;
}

}  // namespace

std::vector<Rat> ReluNetwork::eval(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != input_dim())
        throw std::invalid_argument("eval: input dimension mismatch");
    std::vector<Rat> cur = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        cur = apply_affine(layers_[i], cur);
        if (i + 1 < layers_.size()) relu_inplace(cur);
    }
    return cur;
}

std::vector<std::vector<Rat>> ReluNetwork::eval_trace(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != input_dim())
        throw std::invalid_argument("eval_trace: input dimension mismatch");
    std::vector<std::vector<Rat>> trace;
    std::vector<Rat> cur = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        cur = apply_affine(layers_[i], cur);
        if (i + 1 < layers_.size()) relu_inplace(cur);
        trace.push_back(cur);
    }
    return trace;
}

ReluNetwork identity_affine(int dim) {
    return ReluNetwork({identity_layer(dim)});
}

ReluNetwork affine_net(AffineLayer layer) {
    return ReluNetwork({std::move(layer)});
}

namespace {

// f2.first_layer composed with f1.output_affine.
AffineLayer merge_affine(const AffineLayer& outer, const AffineLayer& inner) {
    AffineLayer m = zero_layer(outer.out_dim(), inner.in_dim());
    for (int r = 0; r < outer.out_dim(); ++r) {
        m.bias[r] = outer.bias[r];
        for (int k = 0; k < outer.in_dim(); ++k) {
            const Rat& w = outer.weight[r][k];
            if (w == 0) continue;
            m.bias[r] += w * inner.bias[k];
            for (int c = 0; c < inner.in_dim(); ++c)
                if (inner.weight[k][c] != 0) m.weight[r][c] += w * inner.weight[k][c];
        }
    }
    return m;
}

// Appends identity carry layers so the net has exactly L hidden layers.
ReluNetwork extend_depth(const ReluNetwork& net, int L, bool nonneg_certificate) {
    if (net.depth() > L) throw std::invalid_argument("extend_depth: shrinking request");
    if (net.depth() == L) return net;

    std::vector<AffineLayer> layers;
    if (net.depth() >= 1) {
        // Carry the last hidden activations (>= 0 after ReLU) across extra layers.
        const auto& in = net.layers();
        layers.assign(in.begin(), in.end() - 1);
        const int carry = layers.back().out_dim();
        for (int i = net.depth(); i < L; ++i) layers.push_back(identity_layer(carry));
        layers.push_back(in.back());
        return ReluNetwork(std::move(layers));
    }

    const AffineLayer& aff = net.layers()[0];
    const int k = aff.out_dim();
    if (nonneg_certificate) {
        layers.push_back(aff);  // sigma is the identity on certified values
        for (int i = 1; i < L; ++i) layers.push_back(identity_layer(k));
        layers.push_back(identity_layer(k));
        return ReluNetwork(std::move(layers));
    }
    // Signed pair channels: sigma(t) and sigma(-t) per output.
    AffineLayer split = zero_layer(2 * k, aff.in_dim());
    for (int r = 0; r < k; ++r) {
        split.weight[r] = aff.weight[r];
        split.bias[r] = aff.bias[r];
        for (int c = 0; c < aff.in_dim(); ++c) split.weight[k + r][c] = -aff.weight[r][c];
        split.bias[k + r] = -aff.bias[r];
    }
    layers.push_back(std::move(split));
    for (int i = 1; i < L; ++i) layers.push_back(identity_layer(2 * k));
    AffineLayer join = zero_layer(k, 2 * k);
    for (int r = 0; r < k; ++r) {
        join.weight[r][r] = 1;
        join.weight[r][k + r] = -1;
    }
    layers.push_back(std::move(join));
    return ReluNetwork(std::move(layers));
}

}  // namespace

ReluNetwork compose(const ReluNetwork& f1, const ReluNetwork& f2) {
    if (f1.output_dim() != f2.input_dim())
        throw std::invalid_argument("compose: dimension mismatch");
    std::vector<AffineLayer> layers(f1.layers().begin(), f1.layers().end() - 1);
    layers.push_back(merge_affine(f2.layers().front(), f1.layers().back()));
    layers.insert(layers.end(), f2.layers().begin() + 1, f2.layers().end());
    return ReluNetwork(std::move(layers));
}

ReluNetwork parallel_block(int in_dim, const std::vector<BlockPart>& parts) {
    if (parts.empty()) throw std::invalid_argument("parallel_block: no parts");
    int Lmax = 0;
    for (const auto& p : parts) {
        if (static_cast<int>(p.inputs.size()) != p.net.input_dim())
            throw std::invalid_argument("parallel_block: input selection size mismatch");
        for (int idx : p.inputs)
            if (idx < 0 || idx >= in_dim)
                throw std::invalid_argument("parallel_block: input index out of range");
        Lmax = std::max(Lmax, p.net.depth());
    }
    std::vector<ReluNetwork> nets;
    nets.reserve(parts.size());
    for (const auto& p : parts) nets.push_back(extend_depth(p.net, Lmax, p.nonneg));

    std::vector<AffineLayer> layers;
    for (int ell = 0; ell <= Lmax; ++ell) {
        int rows = 0, prev_cols = 0;
        for (const auto& n : nets) {
            rows += n.layers()[ell].out_dim();
            prev_cols += n.layers()[ell].in_dim();
        }
        AffineLayer combined = zero_layer(rows, ell == 0 ? in_dim : prev_cols);
        int ro = 0, co = 0;
        for (std::size_t pi = 0; pi < nets.size(); ++pi) {
            const AffineLayer& l = nets[pi].layers()[ell];
            for (int r = 0; r < l.out_dim(); ++r) {
                combined.bias[ro + r] = l.bias[r];
                for (int c = 0; c < l.in_dim(); ++c) {
                    const int col = (ell == 0) ? parts[pi].inputs[c] : co + c;
                    combined.weight[ro + r][col] += l.weight[r][c];
                }
            }
            ro += l.out_dim();
            co += l.in_dim();
        }
        layers.push_back(std::move(combined));
    }
    return ReluNetwork(std::move(layers));
}

ReluNetwork concat(const ReluNetwork& f1, const ReluNetwork& f2, bool nonneg_certificate) {
    if (f1.input_dim() != f2.input_dim())
        throw std::invalid_argument("concat: input dimensions differ");
    std::vector<int> all(f1.input_dim());
    std::iota(all.begin(), all.end(), 0);
    return parallel_block(f1.input_dim(),
                          {{f1, all, nonneg_certificate}, {f2, all, nonneg_certificate}});
}

ReluNetwork pad_to(const ReluNetwork& net, int W, int L, bool nonneg_certificate) {
    if (W < net.width() || L < net.depth())
        throw std::invalid_argument("pad_to: shrinking request");
    ReluNetwork out = extend_depth(net, L, nonneg_certificate);
    if (out.width() > W)
        throw std::invalid_argument("pad_to: depth padding exceeded the width budget");
    if (out.depth() >= 1 && out.width() < W) {
        // Dead units on the first hidden layer raise the structural width.
        std::vector<AffineLayer> layers = out.layers();
        const int add = W - out.width();
        const int old = layers[0].out_dim();
        for (int i = 0; i < add; ++i) {
            layers[0].weight.push_back(std::vector<Rat>(layers[0].in_dim(), Rat(0)));
            layers[0].bias.push_back(Rat(0));
        }
        for (auto& row : layers[1].weight) row.resize(old + add, Rat(0));
        out = ReluNetwork(std::move(layers));
    }
    return out;
}

namespace {

// Channels over a shared breakpoint grid during 1-D propagation.
struct PwlState {
    std::vector<Rat> xs;  // nonempty, sorted
    std::vector<std::vector<Rat>> vals;
    std::vector<Rat> ls, rs;
};

Rat channel_eval(const PwlState& s, std::size_t ch, const Rat& x) {
    const auto& v = s.vals[ch];
    if (x <= s.xs.front()) return v.front() + s.ls[ch] * (x - s.xs.front());
    if (x >= s.xs.back()) return v.back() + s.rs[ch] * (x - s.xs.back());
    const auto it = std::upper_bound(s.xs.begin(), s.xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - s.xs.begin());
    const Rat t = (x - s.xs[hi - 1]) / (s.xs[hi] - s.xs[hi - 1]);
    return v[hi - 1] + t * (v[hi] - v[hi - 1]);
}

void state_affine(PwlState& s, const AffineLayer& l) {
    const std::size_t n = s.xs.size();
    std::vector<std::vector<Rat>> vals(l.out_dim(), std::vector<Rat>(n));
    std::vector<Rat> ls(l.out_dim(), Rat(0)), rs(l.out_dim(), Rat(0));
    for (int r = 0; r < l.out_dim(); ++r) {
        for (std::size_t i = 0; i < n; ++i) vals[r][i] = l.bias[r];
        for (int c = 0; c < l.in_dim(); ++c) {
            const Rat& w = l.weight[r][c];
            if (w == 0) continue;
            for (std::size_t i = 0; i < n; ++i) vals[r][i] += w * s.vals[c][i];
            ls[r] += w * s.ls[c];
            rs[r] += w * s.rs[c];
        }
    }
    s.vals = std::move(vals);
    s.ls = std::move(ls);
    s.rs = std::move(rs);
}

void state_relu(PwlState& s) {
    std::vector<Rat> cross;
    for (std::size_t ch = 0; ch < s.vals.size(); ++ch) {
        const auto& v = s.vals[ch];
        const Rat& l = s.ls[ch];
        const Rat& r = s.rs[ch];
        if ((l > 0 && v.front() > 0) || (l < 0 && v.front() < 0))
            cross.push_back(s.xs.front() - v.front() / l);
        for (std::size_t i = 0; i + 1 < s.xs.size(); ++i) {
            if ((v[i] > 0 && v[i + 1] < 0) || (v[i] < 0 && v[i + 1] > 0))
                cross.push_back(s.xs[i] - v[i] * (s.xs[i + 1] - s.xs[i]) / (v[i + 1] - v[i]));
        }
        if ((r < 0 && v.back() > 0) || (r > 0 && v.back() < 0))
            cross.push_back(s.xs.back() - v.back() / r);
    }
    if (!cross.empty()) {
        std::vector<Rat> xs = s.xs;
        xs.insert(xs.end(), cross.begin(), cross.end());
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<std::vector<Rat>> vals(s.vals.size(), std::vector<Rat>(xs.size()));
        for (std::size_t ch = 0; ch < s.vals.size(); ++ch)
            for (std::size_t i = 0; i < xs.size(); ++i)
                vals[ch][i] = channel_eval(s, ch, xs[i]);
        s.xs = std::move(xs);
        s.vals = std::move(vals);
    }
    for (std::size_t ch = 0; ch < s.vals.size(); ++ch) {
        auto& v = s.vals[ch];
        // End rays keep their slope only on the nonnegative side.
        if (!(s.ls[ch] <= 0 && v.front() >= 0)) s.ls[ch] = 0;
        if (!(s.rs[ch] >= 0 && v.back() >= 0)) s.rs[ch] = 0;
        for (Rat& t : v)
            if (t < 0) t = 0;
    }
}

}  // namespace

PwlFunction to_pwl(const ReluNetwork& net) {
    if (net.input_dim() != 1 || net.output_dim() != 1)
        throw std::invalid_argument("to_pwl: requires a 1-D net");
    PwlState s;
    s.xs = {Rat(0)};
    s.vals = {{Rat(0)}};
    s.ls = {Rat(1)};
    s.rs = {Rat(1)};
    const auto& layers = net.layers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        state_affine(s, layers[i]);
        if (i + 1 < layers.size()) state_relu(s);
    }

    // Keep only genuine breakpoints (slope actually changes).
    const std::size_t n = s.xs.size();
    std::vector<Rat> slopes;  // n+1 piece slopes
    slopes.push_back(s.ls[0]);
    for (std::size_t i = 1; i < n; ++i)
        slopes.push_back((s.vals[0][i] - s.vals[0][i - 1]) / (s.xs[i] - s.xs[i - 1]));
    slopes.push_back(s.rs[0]);

    PwlFunction g;
    for (std::size_t i = 0; i < n; ++i) {
        if (slopes[i] != slopes[i + 1]) {
            g.xs.push_back(s.xs[i]);
            g.ys.push_back(s.vals[0][i]);
        }
    }
    if (g.xs.empty()) {
        g.left_slope = g.right_slope = s.ls[0];
        g.base = s.vals[0][0] - s.ls[0] * s.xs[0];
    } else {
        g.left_slope = s.ls[0];
        g.right_slope = s.rs[0];
    }
    validate_pwl(g);
    return g;
}

}  // namespace memnet
