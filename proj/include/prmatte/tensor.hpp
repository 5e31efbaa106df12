#pragma once

#include "prmatte/types.hpp"

#include <Eigen/Core>

#include <vector>

namespace prmatte {

// Dense NCHW tensor over a flat Eigen array. The network, losses and their
// gradients all run on this type in double precision.
struct Tensor {
  int n = 0, c = 0, h = 0, w = 0;
  Eigen::ArrayXd v;

  Tensor() = default;
  Tensor(int n_, int c_, int h_, int w_)
      : n(n_), c(c_), h(h_), w(w_), v(Eigen::ArrayXd::Zero(Eigen::Index(n_) * c_ * h_ * w_)) {}

  static Tensor constant(int n, int c, int h, int w, double value) {
    Tensor t(n, c, h, w);
    t.v.setConstant(value);
    return t;
  }

  Eigen::Index size() const { return v.size(); }
  bool same_shape(const Tensor& o) const {
    return n == o.n && c == o.c && h == o.h && w == o.w;
  }

  Eigen::Index offset(int in, int ic, int iy, int ix) const {
    return ((Eigen::Index(in) * c + ic) * h + iy) * w + ix;
  }
  double& at(int in, int ic, int iy, int ix) { return v[offset(in, ic, iy, ix)]; }
  double at(int in, int ic, int iy, int ix) const { return v[offset(in, ic, iy, ix)]; }

  // (h, w) view of one channel of one sample.
  Eigen::Map<Plane> plane(int in, int ic) {
    return Eigen::Map<Plane>(v.data() + offset(in, ic, 0, 0), h, w);
  }
  Eigen::Map<const Plane> plane(int in, int ic) const {
    return Eigen::Map<const Plane>(v.data() + offset(in, ic, 0, 0), h, w);
  }
};

inline Tensor tensor_from_plane(const Plane& p) {
  Tensor t(1, 1, int(p.rows()), int(p.cols()));
  t.plane(0, 0) = p;
  return t;
}

// Stacks per-sample planes into an (N,1,H,W) tensor.
inline Tensor tensor_from_planes(const std::vector<Plane>& ps) {
  Tensor t(int(ps.size()), 1, int(ps[0].rows()), int(ps[0].cols()));
  for (size_t i = 0; i < ps.size(); ++i) t.plane(int(i), 0) = ps[i];
  return t;
}

// --- plain numeric kernels (no gradients) --------------------------------
// The autodiff ops wrap these; ground-truth preprocessing reuses them.

struct ConvSpec {
  int stride = 1;
  int dilation = 1;
  int pad = 1;
};

// x:(N,Cin,H,W) * w:(Cout,Cin,kh,kw) + b:(1,Cout,1,1), zero padding.
Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Tensor* b, const ConvSpec& spec);
void conv2d_backward(const Tensor& x, const Tensor& w, const ConvSpec& spec, const Tensor& gy,
                     Tensor* gx, Tensor* gw, Tensor* gb);

// Half-pixel bilinear resize of every plane.
Tensor resize_bilinear(const Tensor& x, int oh, int ow);
void resize_bilinear_backward(const Tensor& gy, int ih, int iw, Tensor* gx);

// 5-tap binomial blur along one axis with replicate borders.
Tensor blur5(const Tensor& x, bool horizontal);
void blur5_backward(const Tensor& gy, bool horizontal, Tensor* gx);

// Keep every second pixel starting at index 0.
Tensor downsample2(const Tensor& x);
void downsample2_backward(const Tensor& gy, int ih, int iw, Tensor* gx);

}  // namespace prmatte
