#ifndef MEMNET_NETWORK_HPP
#define MEMNET_NETWORK_HPP

#include <vector>

#include "memnet/pwl.hpp"
#include "memnet/rat.hpp"

namespace memnet {

struct AffineLayer {
    // weight is out_dim x in_dim, bias has out_dim entries.
    std::vector<std::vector<Rat>> weight;
    std::vector<Rat> bias;

    int out_dim() const { return static_cast<int>(bias.size()); }
    int in_dim() const { return weight.empty() ? 0 : static_cast<int>(weight[0].size()); }
};

AffineLayer zero_layer(int out_dim, int in_dim);
AffineLayer identity_layer(int dim);

// Sequence of affine layers; ReLU after every layer except the last.
// Depth L = layer count - 1 (number of hidden layers). Depth 0 means a pure
// affine map; those are internal building blocks only.
class ReluNetwork {
  public:
    explicit ReluNetwork(std::vector<AffineLayer> layers);

    int input_dim() const { return layers_.front().in_dim(); }
    int output_dim() const { return layers_.back().out_dim(); }
    int depth() const { return static_cast<int>(layers_.size()) - 1; }
    int width() const;  // max hidden out_dim; 0 for depth-0 nets
    const std::vector<AffineLayer>& layers() const { return layers_; }

    std::vector<Rat> eval(const std::vector<Rat>& x) const;
    // Hidden activations layer by layer (post-ReLU), then the output.
    std::vector<std::vector<Rat>> eval_trace(const std::vector<Rat>& x) const;

  private:
    std::vector<AffineLayer> layers_;
};

// Depth-0 identity map.
ReluNetwork identity_affine(int dim);
// Depth-0 general affine map.
ReluNetwork affine_net(AffineLayer layer);

// f2 after f1; width max(W1,W2), depth L1+L2 (f1's output affine is merged
// into f2's first layer).
ReluNetwork compose(const ReluNetwork& f1, const ReluNetwork& f2);

// x -> (f1(x), f2(x)). The shallower branch is depth-padded; see pad_to for
// how nonneg_certificate affects depth-0 branches.
ReluNetwork concat(const ReluNetwork& f1, const ReluNetwork& f2,
                   bool nonneg_certificate = false);

// Eval-preserving embedding into declared width W and depth L (dead units /
// identity carry layers). Padding the depth of a net with at least one hidden
// layer carries the last hidden activations (nonnegative post-ReLU, so always
// sound). A depth-0 net needs either the caller's certificate that its values
// are nonnegative on all inputs of interest (single sigma channels) or, when
// sign is unknown, paired sigma(t)/sigma(-t) channels.
ReluNetwork pad_to(const ReluNetwork& net, int W, int L,
                   bool nonneg_certificate = false);

// One sub-network (or carry) inside a parallel row: `net` consumes the row
// inputs selected by `inputs`, in order. `nonneg` certifies the part's values
// for depth padding of depth-0 parts.
struct BlockPart {
    ReluNetwork net;
    std::vector<int> inputs;
    bool nonneg = false;
};

// Runs the parts side by side on a shared in_dim-dimensional input; output is
// the concatenation of part outputs. Depth = max part depth.
ReluNetwork parallel_block(int in_dim, const std::vector<BlockPart>& parts);

// Exact piecewise-linear function computed by a 1-D net (breakpoint
// propagation with exact zero-crossing insertion). Collinear pieces merged.
PwlFunction to_pwl(const ReluNetwork& net);

}  // namespace memnet

#endif
