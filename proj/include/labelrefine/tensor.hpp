#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "labelrefine/errors.hpp"

namespace lr::nn {

// All tensors are 4-D NCHW. Scalars are (1,1,1,1), biases and per-channel
// affines (1,C,1,1), conv weights (Cout,Cin,Kh,Kw).
struct Shape {
    int n = 1, c = 1, h = 1, w = 1;

    size_t numel() const {
        return static_cast<size_t>(n) * c * static_cast<size_t>(h) * w;
    }
    bool operator==(const Shape&) const = default;
    std::string str() const;
};

struct TensorImpl;

// Value-semantics handle over a graph node. Ops record a backward closure
// and hold their inputs alive; backward() runs reverse-mode accumulation
// from a scalar loss. Double precision throughout.
class Tensor {
public:
    Tensor() = default;

    static Tensor zeros(const Shape& s, bool requires_grad = false);
    static Tensor full(const Shape& s, double value, bool requires_grad = false);
    static Tensor from_data(const Shape& s, std::vector<double> data,
                            bool requires_grad = false);
    static Tensor scalar(double value);

    bool defined() const { return impl_ != nullptr; }
    const Shape& shape() const;
    size_t numel() const { return shape().numel(); }

    std::vector<double>& data();
    const std::vector<double>& data() const;

    // Gradient accumulator; allocated zeroed on first access.
    std::vector<double>& grad();
    bool has_grad() const;
    void zero_grad();

    bool requires_grad() const;
    void set_requires_grad(bool rg);

    // Scalar extraction; throws unless numel() == 1.
    double item() const;

    // Copy of the data as a fresh leaf, cut off from the graph.
    Tensor detach() const;

    bool is_leaf() const;

    TensorImpl* impl() const { return impl_.get(); }
    std::shared_ptr<TensorImpl> impl_ptr() const { return impl_; }
    explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<TensorImpl> impl_;
};

struct TensorImpl {
    Shape shape;
    std::vector<double> data;
    std::vector<double> grad; // empty until needed
    bool requires_grad = false;
    std::vector<std::shared_ptr<TensorImpl>> parents;
    std::function<void(TensorImpl&)> backward_fn; // null for leaves

    void ensure_grad() {
        if (grad.size() != shape.numel()) grad.assign(shape.numel(), 0.0);
    }
};

// Reverse-mode accumulation from a scalar loss. Gradients of leaves
// accumulate across calls; interior nodes are reset each call. Throws
// DataError when loss is not scalar or reaches no differentiable leaf.
void backward(const Tensor& loss);

// --- ops --------------------------------------------------------------------

// Cross-correlation with zero padding; out = floor((in + 2p - k)/s) + 1.
// x (N,Ci,H,W), w (Co,Ci,Kh,Kw), b (1,Co,1,1). Per-output accumulation runs
// bias first, then ascending (ci,kh,kw); the fixed order makes serial runs
// bit-reproducible.
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad);

Tensor leaky_relu(const Tensor& x, double slope);
Tensor sigmoid(const Tensor& x);

// Per-(sample,channel) normalization with affine gain/bias, both (1,C,1,1).
Tensor instance_norm(const Tensor& x, const Tensor& gain, const Tensor& bias,
                     double eps = 1e-5);

// Nearest-neighbor 2x upsampling.
Tensor upsample_nearest2(const Tensor& x);

// Channel concatenation of same-(N,H,W) tensors.
Tensor concat_channels(const Tensor& a, const Tensor& b);

Tensor mean_all(const Tensor& x);

// Mean binary cross-entropy; pred is clamped to [1e-7, 1-1e-7] before the
// logs, matching the clamp the gradient sees.
Tensor bce_loss(const Tensor& pred, const Tensor& target);

// Elementwise arithmetic on same-shape tensors.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
Tensor add_const(const Tensor& a, double c);
Tensor neg(const Tensor& a);
Tensor log(const Tensor& a);
// Clamp to [lo,hi]; gradient passes only strictly inside the interval.
Tensor clamp(const Tensor& a, double lo, double hi);

inline Tensor operator+(const Tensor& a, const Tensor& b) { return add(a, b); }
inline Tensor operator-(const Tensor& a, const Tensor& b) { return sub(a, b); }
inline Tensor operator*(const Tensor& a, const Tensor& b) { return mul(a, b); }
inline Tensor operator*(double c, const Tensor& a) { return scale(a, c); }
inline Tensor operator*(const Tensor& a, double c) { return scale(a, c); }
inline Tensor operator+(const Tensor& a, double c) { return add_const(a, c); }
inline Tensor operator-(const Tensor& a) { return neg(a); }

} // namespace lr::nn
