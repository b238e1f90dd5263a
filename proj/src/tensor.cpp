#include "labelrefine/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace lr::nn {

std::string Shape::str() const {
    return "(" + std::to_string(n) + "," + std::to_string(c) + "," + std::to_string(h) +
           "," + std::to_string(w) + ")";
}

// --- Tensor handle -----------------------------------------------------------

Tensor Tensor::zeros(const Shape& s, bool requires_grad) {
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = s;
    impl->data.assign(s.numel(), 0.0);
    impl->requires_grad = requires_grad;
    return Tensor(std::move(impl));
}

Tensor Tensor::full(const Shape& s, double value, bool requires_grad) {
    Tensor t = zeros(s, requires_grad);
    std::fill(t.data().begin(), t.data().end(), value);
    return t;
}

Tensor Tensor::from_data(const Shape& s, std::vector<double> data, bool requires_grad) {
    if (data.size() != s.numel())
        throw DataError("Tensor: data length does not match shape " + s.str());
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = s;
    impl->data = std::move(data);
    impl->requires_grad = requires_grad;
    return Tensor(std::move(impl));
}

Tensor Tensor::scalar(double value) { return full(Shape{1, 1, 1, 1}, value); }

const Shape& Tensor::shape() const { return impl_->shape; }
std::vector<double>& Tensor::data() { return impl_->data; }
const std::vector<double>& Tensor::data() const { return impl_->data; }

std::vector<double>& Tensor::grad() {
    impl_->ensure_grad();
    return impl_->grad;
}

bool Tensor::has_grad() const { return impl_ && !impl_->grad.empty(); }

void Tensor::zero_grad() {
    if (impl_) impl_->grad.assign(impl_->shape.numel(), 0.0);
}

bool Tensor::requires_grad() const { return impl_ && impl_->requires_grad; }
void Tensor::set_requires_grad(bool rg) { impl_->requires_grad = rg; }

double Tensor::item() const {
    if (!impl_ || impl_->shape.numel() != 1)
        throw DataError("Tensor::item: tensor is not scalar");
    return impl_->data[0];
}

Tensor Tensor::detach() const {
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = impl_->shape;
    impl->data = impl_->data;
    return Tensor(std::move(impl));
}

bool Tensor::is_leaf() const { return impl_ && !impl_->backward_fn; }

// --- graph -----------------------------------------------------------------

namespace {

Tensor make_node(const Shape& s, std::vector<std::shared_ptr<TensorImpl>> parents) {
    auto impl = std::make_shared<TensorImpl>();
    impl->shape = s;
    impl->data.assign(s.numel(), 0.0);
    impl->parents = std::move(parents);
    return Tensor(std::move(impl));
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!(a.shape() == b.shape()))
        throw DataError(std::string(op) + ": shape mismatch " + a.shape().str() + " vs " +
                        b.shape().str());
}

} // namespace

void backward(const Tensor& loss) {
    if (!loss.defined() || loss.numel() != 1)
        throw DataError("backward: loss must be a defined scalar");

    // Iterative post-order DFS over parents.
    std::vector<TensorImpl*> topo;
    std::unordered_set<TensorImpl*> visited;
    struct Frame {
        TensorImpl* node;
        size_t next_parent;
    };
    std::vector<Frame> stack{{loss.impl(), 0}};
    visited.insert(loss.impl());
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_parent < f.node->parents.size()) {
            TensorImpl* p = f.node->parents[f.next_parent++].get();
            if (visited.insert(p).second) stack.push_back({p, 0});
        } else {
            topo.push_back(f.node);
            stack.pop_back();
        }
    }

    bool connected = false;
    for (TensorImpl* node : topo)
        if (node->requires_grad) connected = true;
    if (!connected)
        throw DataError("backward: graph reaches no tensor with requires_grad");

    // Interior gradients are scratch space per call; leaves accumulate.
    for (TensorImpl* node : topo) {
        if (node->backward_fn)
            node->grad.assign(node->shape.numel(), 0.0);
        else
            node->ensure_grad();
    }
    loss.impl()->grad[0] += 1.0;

    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        if ((*it)->backward_fn) (*it)->backward_fn(**it);
}

// --- conv2d ------------------------------------------------------------------

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad) {
    if (!x.defined() || !w.defined() || !b.defined())
        throw DataError("conv2d: undefined input");
    if (stride < 1) throw DataError("conv2d: stride must be >= 1");
    if (pad < 0) throw DataError("conv2d: negative padding");
    const Shape xs = x.shape(), ws = w.shape(), bs = b.shape();
    if (ws.c != xs.c)
        throw DataError("conv2d: channel mismatch, input " + xs.str() + " weights " +
                        ws.str());
    if (!(bs == Shape{1, ws.n, 1, 1}))
        throw DataError("conv2d: bias shape must be (1,Cout,1,1)");
    const int ho = (xs.h + 2 * pad - ws.h) / stride + 1;
    const int wo = (xs.w + 2 * pad - ws.w) / stride + 1;
    if (xs.h + 2 * pad < ws.h || xs.w + 2 * pad < ws.w || ho < 1 || wo < 1)
        throw DataError("conv2d: kernel larger than padded input");

    Shape os{xs.n, ws.n, ho, wo};
    Tensor out = make_node(os, {x.impl_ptr(), w.impl_ptr(), b.impl_ptr()});

    const double* X = x.data().data();
    const double* W = w.data().data();
    const double* B = b.data().data();
    double* Y = out.data().data();

    const size_t x_n = static_cast<size_t>(xs.c) * xs.h * xs.w;
    const size_t x_c = static_cast<size_t>(xs.h) * xs.w;
    const size_t y_n = static_cast<size_t>(os.c) * ho * wo;
    const size_t y_c = static_cast<size_t>(ho) * wo;
    const size_t w_co = static_cast<size_t>(ws.c) * ws.h * ws.w;

    // Plane accumulation: bias first, then scalar-times-shifted-plane for
    // each (ci,kh,kw). Every output element sees contributions in the same
    // ascending (ci,kh,kw) order regardless of loop blocking.
    for (int n = 0; n < xs.n; ++n) {
        for (int co = 0; co < os.c; ++co) {
            double* y_plane = Y + n * y_n + co * y_c;
            for (size_t i = 0; i < y_c; ++i) y_plane[i] = B[co];
            for (int ci = 0; ci < xs.c; ++ci) {
                const double* x_plane = X + n * x_n + ci * x_c;
                for (int kh = 0; kh < ws.h; ++kh) {
                    for (int kw = 0; kw < ws.w; ++kw) {
                        const double wv = W[co * w_co + (ci * ws.h + kh) * ws.w + kw];
                        if (wv == 0.0) continue;
                        for (int oy = 0; oy < ho; ++oy) {
                            const int iy = oy * stride - pad + kh;
                            if (iy < 0 || iy >= xs.h) continue;
                            double* yrow = y_plane + static_cast<size_t>(oy) * wo;
                            const double* xrow = x_plane + static_cast<size_t>(iy) * xs.w;
                            for (int ox = 0; ox < wo; ++ox) {
                                const int ix = ox * stride - pad + kw;
                                if (ix < 0 || ix >= xs.w) continue;
                                yrow[ox] += wv * xrow[ix];
                            }
                        }
                    }
                }
            }
        }
    }

    out.impl()->backward_fn = [xs, ws, os, stride, pad, ho, wo, x_n, x_c, y_n, y_c,
                               w_co](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        TensorImpl& wi = *self.parents[1];
        TensorImpl& bi = *self.parents[2];
        xi.ensure_grad();
        wi.ensure_grad();
        bi.ensure_grad();
        const double* GY = self.grad.data();
        const double* X = xi.data.data();
        const double* W = wi.data.data();
        double* GX = xi.grad.data();
        double* GW = wi.grad.data();
        double* GB = bi.grad.data();

        for (int n = 0; n < xs.n; ++n) {
            for (int co = 0; co < os.c; ++co) {
                const double* gy_plane = GY + n * y_n + co * y_c;
                double gb = 0.0;
                for (size_t i = 0; i < y_c; ++i) gb += gy_plane[i];
                GB[co] += gb;
                for (int ci = 0; ci < xs.c; ++ci) {
                    const double* x_plane = X + n * x_n + ci * x_c;
                    double* gx_plane = GX + n * x_n + ci * x_c;
                    for (int kh = 0; kh < ws.h; ++kh) {
                        for (int kw = 0; kw < ws.w; ++kw) {
                            const size_t wofs = co * w_co + (ci * ws.h + kh) * ws.w + kw;
                            const double wv = W[wofs];
                            double gw = 0.0;
                            for (int oy = 0; oy < ho; ++oy) {
                                const int iy = oy * stride - pad + kh;
                                if (iy < 0 || iy >= xs.h) continue;
                                const double* gyrow = gy_plane + static_cast<size_t>(oy) * wo;
                                const double* xrow = x_plane + static_cast<size_t>(iy) * xs.w;
                                double* gxrow = gx_plane + static_cast<size_t>(iy) * xs.w;
                                for (int ox = 0; ox < wo; ++ox) {
                                    const int ix = ox * stride - pad + kw;
                                    if (ix < 0 || ix >= xs.w) continue;
                                    const double g = gyrow[ox];
                                    gw += g * xrow[ix];
                                    gxrow[ix] += g * wv;
                                }
                            }
                            GW[wofs] += gw;
                        }
                    }
                }
            }
        }
    };
    return out;
}

// --- activations -------------------------------------------------------------

Tensor leaky_relu(const Tensor& x, double slope) {
    Tensor out = make_node(x.shape(), {x.impl_ptr()});
    const auto& xd = x.data();
    auto& yd = out.data();
    for (size_t i = 0; i < xd.size(); ++i) yd[i] = xd[i] > 0.0 ? xd[i] : slope * xd[i];
    out.impl()->backward_fn = [slope](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        xi.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i)
            xi.grad[i] += self.grad[i] * (xi.data[i] > 0.0 ? 1.0 : slope);
    };
    return out;
}

Tensor sigmoid(const Tensor& x) {
    Tensor out = make_node(x.shape(), {x.impl_ptr()});
    const auto& xd = x.data();
    auto& yd = out.data();
    for (size_t i = 0; i < xd.size(); ++i) {
        const double v = xd[i];
        if (v >= 0.0) {
            yd[i] = 1.0 / (1.0 + std::exp(-v));
        } else {
            const double e = std::exp(v);
            yd[i] = e / (1.0 + e);
        }
    }
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        xi.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            const double y = self.data[i];
            xi.grad[i] += self.grad[i] * y * (1.0 - y);
        }
    };
    return out;
}

// --- instance norm -------------------------------------------------------------

Tensor instance_norm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps) {
    const Shape xs = x.shape();
    if (!(gain.shape() == Shape{1, xs.c, 1, 1}) || !(bias.shape() == Shape{1, xs.c, 1, 1}))
        throw DataError("instance_norm: affine shapes must be (1,C,1,1)");
    Tensor out = make_node(xs, {x.impl_ptr(), gain.impl_ptr(), bias.impl_ptr()});

    const size_t plane = static_cast<size_t>(xs.h) * xs.w;
    const double* X = x.data().data();
    const double* G = gain.data().data();
    const double* B = bias.data().data();
    double* Y = out.data().data();

    // Means and inverse stddevs are recomputed in backward; cache them.
    auto stats = std::make_shared<std::vector<double>>(2 * static_cast<size_t>(xs.n) * xs.c);
    for (int n = 0; n < xs.n; ++n) {
        for (int c = 0; c < xs.c; ++c) {
            const double* xp = X + (static_cast<size_t>(n) * xs.c + c) * plane;
            double* yp = Y + (static_cast<size_t>(n) * xs.c + c) * plane;
            double mean = 0.0;
            for (size_t i = 0; i < plane; ++i) mean += xp[i];
            mean /= static_cast<double>(plane);
            double var = 0.0;
            for (size_t i = 0; i < plane; ++i) {
                const double d = xp[i] - mean;
                var += d * d;
            }
            var /= static_cast<double>(plane);
            const double istd = 1.0 / std::sqrt(var + eps);
            (*stats)[2 * (static_cast<size_t>(n) * xs.c + c)] = mean;
            (*stats)[2 * (static_cast<size_t>(n) * xs.c + c) + 1] = istd;
            for (size_t i = 0; i < plane; ++i)
                yp[i] = G[c] * ((xp[i] - mean) * istd) + B[c];
        }
    }

    out.impl()->backward_fn = [xs, plane, stats](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        TensorImpl& gi = *self.parents[1];
        TensorImpl& bi = *self.parents[2];
        xi.ensure_grad();
        gi.ensure_grad();
        bi.ensure_grad();
        const double* X = xi.data.data();
        const double* G = gi.data.data();
        const double* GY = self.grad.data();
        const double m = static_cast<double>(plane);
        for (int n = 0; n < xs.n; ++n) {
            for (int c = 0; c < xs.c; ++c) {
                const size_t o = (static_cast<size_t>(n) * xs.c + c) * plane;
                const double mean = (*stats)[2 * (static_cast<size_t>(n) * xs.c + c)];
                const double istd = (*stats)[2 * (static_cast<size_t>(n) * xs.c + c) + 1];
                double sum_gy = 0.0, sum_gy_xhat = 0.0;
                for (size_t i = 0; i < plane; ++i) {
                    const double xhat = (X[o + i] - mean) * istd;
                    sum_gy += GY[o + i];
                    sum_gy_xhat += GY[o + i] * xhat;
                }
                bi.grad[c] += sum_gy;
                gi.grad[c] += sum_gy_xhat;
                const double g = G[c];
                for (size_t i = 0; i < plane; ++i) {
                    const double xhat = (X[o + i] - mean) * istd;
                    xi.grad[o + i] +=
                        g * istd * (GY[o + i] - sum_gy / m - xhat * sum_gy_xhat / m);
                }
            }
        }
    };
    return out;
}

// --- upsample / concat ---------------------------------------------------------

Tensor upsample_nearest2(const Tensor& x) {
    const Shape xs = x.shape();
    Shape os{xs.n, xs.c, xs.h * 2, xs.w * 2};
    Tensor out = make_node(os, {x.impl_ptr()});
    const double* X = x.data().data();
    double* Y = out.data().data();
    const size_t planes = static_cast<size_t>(xs.n) * xs.c;
    for (size_t p = 0; p < planes; ++p) {
        const double* xp = X + p * xs.h * xs.w;
        double* yp = Y + p * os.h * os.w;
        for (int y = 0; y < xs.h; ++y)
            for (int x2 = 0; x2 < xs.w; ++x2) {
                const double v = xp[static_cast<size_t>(y) * xs.w + x2];
                double* d = yp + static_cast<size_t>(2 * y) * os.w + 2 * x2;
                d[0] = v;
                d[1] = v;
                d[os.w] = v;
                d[os.w + 1] = v;
            }
    }
    out.impl()->backward_fn = [xs, os](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        xi.ensure_grad();
        const double* GY = self.grad.data();
        const size_t planes = static_cast<size_t>(xs.n) * xs.c;
        for (size_t p = 0; p < planes; ++p) {
            const double* gyp = GY + p * os.h * os.w;
            double* gxp = xi.grad.data() + p * xs.h * xs.w;
            for (int y = 0; y < xs.h; ++y)
                for (int x2 = 0; x2 < xs.w; ++x2) {
                    const double* s = gyp + static_cast<size_t>(2 * y) * os.w + 2 * x2;
                    gxp[static_cast<size_t>(y) * xs.w + x2] +=
                        s[0] + s[1] + s[os.w] + s[os.w + 1];
                }
        }
    };
    return out;
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
    const Shape as = a.shape(), bs = b.shape();
    if (as.n != bs.n || as.h != bs.h || as.w != bs.w)
        throw DataError("concat_channels: spatial/batch mismatch " + as.str() + " vs " +
                        bs.str());
    Shape os{as.n, as.c + bs.c, as.h, as.w};
    Tensor out = make_node(os, {a.impl_ptr(), b.impl_ptr()});
    const size_t plane = static_cast<size_t>(as.h) * as.w;
    const double* A = a.data().data();
    const double* B = b.data().data();
    double* Y = out.data().data();
    for (int n = 0; n < as.n; ++n) {
        std::copy(A + static_cast<size_t>(n) * as.c * plane,
                  A + static_cast<size_t>(n + 1) * as.c * plane,
                  Y + static_cast<size_t>(n) * os.c * plane);
        std::copy(B + static_cast<size_t>(n) * bs.c * plane,
                  B + static_cast<size_t>(n + 1) * bs.c * plane,
                  Y + static_cast<size_t>(n) * os.c * plane + static_cast<size_t>(as.c) * plane);
    }
    out.impl()->backward_fn = [as, bs, os, plane](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        TensorImpl& bi = *self.parents[1];
        ai.ensure_grad();
        bi.ensure_grad();
        const double* GY = self.grad.data();
        for (int n = 0; n < as.n; ++n) {
            const double* src = GY + static_cast<size_t>(n) * os.c * plane;
            double* ga = ai.grad.data() + static_cast<size_t>(n) * as.c * plane;
            double* gb = bi.grad.data() + static_cast<size_t>(n) * bs.c * plane;
            for (size_t i = 0; i < static_cast<size_t>(as.c) * plane; ++i) ga[i] += src[i];
            for (size_t i = 0; i < static_cast<size_t>(bs.c) * plane; ++i)
                gb[i] += src[static_cast<size_t>(as.c) * plane + i];
        }
    };
    return out;
}

// --- reductions / losses -------------------------------------------------------

Tensor mean_all(const Tensor& x) {
    Tensor out = make_node(Shape{1, 1, 1, 1}, {x.impl_ptr()});
    double sum = 0.0;
    for (double v : x.data()) sum += v;
    const double m = static_cast<double>(x.numel());
    out.data()[0] = sum / m;
    out.impl()->backward_fn = [m](TensorImpl& self) {
        TensorImpl& xi = *self.parents[0];
        xi.ensure_grad();
        const double g = self.grad[0] / m;
        for (double& gv : xi.grad) gv += g;
    };
    return out;
}

Tensor bce_loss(const Tensor& pred, const Tensor& target) {
    check_same_shape(pred, target, "bce_loss");
    constexpr double kEps = 1e-7;
    Tensor out = make_node(Shape{1, 1, 1, 1}, {pred.impl_ptr(), target.impl_ptr()});
    const auto& p = pred.data();
    const auto& t = target.data();
    const double m = static_cast<double>(p.size());
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        const double pc = std::clamp(p[i], kEps, 1.0 - kEps);
        acc += t[i] * std::log(pc) + (1.0 - t[i]) * std::log(1.0 - pc);
    }
    out.data()[0] = -acc / m;
    out.impl()->backward_fn = [m](TensorImpl& self) {
        TensorImpl& pi = *self.parents[0];
        TensorImpl& ti = *self.parents[1];
        pi.ensure_grad();
        ti.ensure_grad();
        const double g = self.grad[0];
        for (size_t i = 0; i < pi.data.size(); ++i) {
            const double pv = pi.data[i];
            const double tv = ti.data[i];
            if (pv > kEps && pv < 1.0 - kEps)
                pi.grad[i] += g * (-(tv / pv) + (1.0 - tv) / (1.0 - pv)) / m;
            const double pc = std::clamp(pv, kEps, 1.0 - kEps);
            ti.grad[i] += g * (std::log(1.0 - pc) - std::log(pc)) / m;
        }
    };
    return out;
}

// --- elementwise ---------------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "add");
    Tensor out = make_node(a.shape(), {a.impl_ptr(), b.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        TensorImpl& bi = *self.parents[1];
        ai.ensure_grad();
        bi.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            ai.grad[i] += self.grad[i];
            bi.grad[i] += self.grad[i];
        }
    };
    return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "sub");
    Tensor out = make_node(a.shape(), {a.impl_ptr(), b.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        TensorImpl& bi = *self.parents[1];
        ai.ensure_grad();
        bi.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            ai.grad[i] += self.grad[i];
            bi.grad[i] -= self.grad[i];
        }
    };
    return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
    check_same_shape(a, b, "mul");
    Tensor out = make_node(a.shape(), {a.impl_ptr(), b.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] * b.data()[i];
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        TensorImpl& bi = *self.parents[1];
        ai.ensure_grad();
        bi.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) {
            ai.grad[i] += self.grad[i] * bi.data[i];
            bi.grad[i] += self.grad[i] * ai.data[i];
        }
    };
    return out;
}

Tensor scale(const Tensor& a, double c) {
    Tensor out = make_node(a.shape(), {a.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = c * a.data()[i];
    out.impl()->backward_fn = [c](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        ai.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) ai.grad[i] += c * self.grad[i];
    };
    return out;
}

Tensor add_const(const Tensor& a, double c) {
    Tensor out = make_node(a.shape(), {a.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] + c;
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        ai.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i) ai.grad[i] += self.grad[i];
    };
    return out;
}

Tensor neg(const Tensor& a) { return scale(a, -1.0); }

Tensor log(const Tensor& a) {
    Tensor out = make_node(a.shape(), {a.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i) out.data()[i] = std::log(a.data()[i]);
    out.impl()->backward_fn = [](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        ai.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i)
            ai.grad[i] += self.grad[i] / ai.data[i];
    };
    return out;
}

Tensor clamp(const Tensor& a, double lo, double hi) {
    Tensor out = make_node(a.shape(), {a.impl_ptr()});
    for (size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = std::clamp(a.data()[i], lo, hi);
    out.impl()->backward_fn = [lo, hi](TensorImpl& self) {
        TensorImpl& ai = *self.parents[0];
        ai.ensure_grad();
        for (size_t i = 0; i < self.grad.size(); ++i)
            if (ai.data[i] > lo && ai.data[i] < hi) ai.grad[i] += self.grad[i];
    };
    return out;
}

} // namespace lr::nn
