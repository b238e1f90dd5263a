#pragma once

#include <cstdint>
#include <vector>

#include "labelrefine/tensor.hpp"

namespace lr::nn {

enum class LayerKind : uint8_t {
    Conv = 1,
    UpsampleConv = 2, // nearest x2 followed by a conv
    Activation = 3,
    Normalization = 4,
    Concat = 5,
};

enum class ActKind : uint8_t { None = 0, LeakyRelu = 1, Relu = 2, Sigmoid = 3 };

struct LayerSpec {
    LayerKind kind;
    int kernel = 0;
    int stride = 0;
    int pad = 0;
    int in_ch = 0;
    int out_ch = 0;
    ActKind act = ActKind::None;
    double slope = 0.0;
};

// U-Net refiner: `depth` stride-2 4x4 conv stages down, `depth` nearest-x2 +
// 3x3 conv stages up with skip concatenations (the raw input serves as the
// full-resolution skip), instance norm throughout, leaky ReLU (0.2) in the
// encoder, ReLU in the decoder, 1-channel 3x3 sigmoid head. Output matches
// the input spatially; sides must be divisible by 2^depth.
class Generator {
public:
    Generator(int in_channels, int depth, int base_channels, uint64_t seed);

    Tensor forward(const Tensor& x) const;

    // Declaration order: encoder stages (w, b, gain, bias) shallow to deep,
    // then decoder stages deep to shallow, then the head (w, b).
    std::vector<Tensor> parameters() const;
    size_t parameter_count() const;

    const std::vector<LayerSpec>& layers() const { return layers_; }
    int in_channels() const { return in_channels_; }
    int depth() const { return depth_; }
    int base_channels() const { return base_channels_; }

private:
    struct Stage {
        Tensor w, b, gain, bias;
        int stride = 1, pad = 1;
    };
    int in_channels_, depth_, base_channels_;
    std::vector<Stage> enc_;
    std::vector<Stage> dec_;
    Tensor head_w_, head_b_;
    std::vector<LayerSpec> layers_;
};

// PatchGAN critic: exactly 5 conv layers, all 4x4 kernels, strides
// (2,2,2,1,1), pads 1, leaky ReLU (0.2) between layers, instance norm on the
// middle three, sigmoid on the final 1-channel score map.
class Discriminator {
public:
    Discriminator(int in_channels, int base_channels, uint64_t seed);

    Tensor forward(const Tensor& x) const;

    std::vector<Tensor> parameters() const;
    size_t parameter_count() const;

    const std::vector<LayerSpec>& layers() const { return layers_; }
    int in_channels() const { return in_channels_; }
    int base_channels() const { return base_channels_; }

private:
    struct Layer {
        Tensor w, b, gain, bias; // gain/bias undefined when not normalized
        int stride = 1;
        bool normed = false;
    };
    int in_channels_, base_channels_;
    std::vector<Layer> conv_;
    std::vector<LayerSpec> layers_;
};

} // namespace lr::nn
