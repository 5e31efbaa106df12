#include "prmatte/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace prmatte {

namespace {

using MatRM = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<MatRM>;
using CMapRM = Eigen::Map<const MatRM>;

int out_extent(int in, int k, const ConvSpec& s) {
  return (in + 2 * s.pad - s.dilation * (k - 1) - 1) / s.stride + 1;
}

// Gathers conv patches of sample `in` into a (Cin*kh*kw) x (Ho*Wo) matrix.
void im2col(const Tensor& x, int in, int kh, int kw, const ConvSpec& s, int ho, int wo,
            MatRM& col) {
  const int ci_n = x.c;
  col.resize(Eigen::Index(ci_n) * kh * kw, Eigen::Index(ho) * wo);
  for (int ci = 0; ci < ci_n; ++ci) {
    for (int ky = 0; ky < kh; ++ky) {
      for (int kx = 0; kx < kw; ++kx) {
        const Eigen::Index r = (Eigen::Index(ci) * kh + ky) * kw + kx;
        for (int oy = 0; oy < ho; ++oy) {
          const int y = oy * s.stride - s.pad + ky * s.dilation;
          const bool y_ok = (y >= 0 && y < x.h);
          const double* src = y_ok ? &x.v[x.offset(in, ci, y, 0)] : nullptr;
          double* dst = &col(r, Eigen::Index(oy) * wo);
          for (int ox = 0; ox < wo; ++ox) {
            const int xx = ox * s.stride - s.pad + kx * s.dilation;
            dst[ox] = (y_ok && xx >= 0 && xx < x.w) ? src[xx] : 0.0;
          }
        }
      }
    }
  }
}

void col2im_add(const MatRM& col, int in, int kh, int kw, const ConvSpec& s, int ho, int wo,
                Tensor& gx) {
  for (int ci = 0; ci < gx.c; ++ci) {
    for (int ky = 0; ky < kh; ++ky) {
      for (int kx = 0; kx < kw; ++kx) {
        const Eigen::Index r = (Eigen::Index(ci) * kh + ky) * kw + kx;
        for (int oy = 0; oy < ho; ++oy) {
          const int y = oy * s.stride - s.pad + ky * s.dilation;
          if (y < 0 || y >= gx.h) continue;
          const double* src = &col(r, Eigen::Index(oy) * wo);
          double* dst = &gx.v[gx.offset(in, ci, y, 0)];
          for (int ox = 0; ox < wo; ++ox) {
            const int xx = ox * s.stride - s.pad + kx * s.dilation;
            if (xx >= 0 && xx < gx.w) dst[xx] += src[ox];
          }
        }
      }
    }
  }
}

}  // namespace

Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Tensor* b, const ConvSpec& spec) {
  if (x.c != w.c) throw ShapeError("conv2d: channel mismatch");
  const int ho = out_extent(x.h, w.h, spec);
  const int wo = out_extent(x.w, w.w, spec);
  Tensor y(x.n, w.n, ho, wo);
  CMapRM wmat(w.v.data(), w.n, Eigen::Index(w.c) * w.h * w.w);
  MatRM col;
  for (int in = 0; in < x.n; ++in) {
    im2col(x, in, w.h, w.w, spec, ho, wo, col);
    MapRM ymat(y.v.data() + y.offset(in, 0, 0, 0), w.n, Eigen::Index(ho) * wo);
    ymat.noalias() = wmat * col;
    if (b)
      for (int co = 0; co < w.n; ++co) ymat.row(co).array() += b->v[co];
  }
  return y;
}

void conv2d_backward(const Tensor& x, const Tensor& w, const ConvSpec& spec, const Tensor& gy,
                     Tensor* gx, Tensor* gw, Tensor* gb) {
  const int ho = gy.h;
  const int wo = gy.w;
  CMapRM wmat(w.v.data(), w.n, Eigen::Index(w.c) * w.h * w.w);
  MatRM col;
  for (int in = 0; in < x.n; ++in) {
    CMapRM gymat(gy.v.data() + gy.offset(in, 0, 0, 0), w.n, Eigen::Index(ho) * wo);
    if (gw || gx) im2col(x, in, w.h, w.w, spec, ho, wo, col);
    if (gw) {
      MapRM gwmat(gw->v.data(), w.n, Eigen::Index(w.c) * w.h * w.w);
      gwmat.noalias() += gymat * col.transpose();
    }
    if (gb)
      for (int co = 0; co < w.n; ++co) gb->v[co] += gymat.row(co).sum();
    if (gx) {
      MatRM gcol = wmat.transpose() * gymat;
      col2im_add(gcol, in, w.h, w.w, spec, ho, wo, *gx);
    }
  }
}

namespace {

struct LinTap {
  int i0, i1;
  double t;
};

// Half-pixel source coordinates, clamped; out = a + t*(b-a) keeps constant
// plateaus bit-exact.
std::vector<LinTap> linear_taps(int in, int out) {
  std::vector<LinTap> taps(size_t(out));
  const double scale = double(in) / double(out);
  for (int o = 0; o < out; ++o) {
    double f = (double(o) + 0.5) * scale - 0.5;
    f = std::clamp(f, 0.0, double(in - 1));
    const int i0 = int(std::floor(f));
    const int i1 = std::min(i0 + 1, in - 1);
    taps[size_t(o)] = {i0, i1, f - double(i0)};
  }
  return taps;
}

}  // namespace

Tensor resize_bilinear(const Tensor& x, int oh, int ow) {
  if (x.h == oh && x.w == ow) return x;
  Tensor y(x.n, x.c, oh, ow);
  const auto ty = linear_taps(x.h, oh);
  const auto tx = linear_taps(x.w, ow);
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      auto src = x.plane(in, ic);
      auto dst = y.plane(in, ic);
      for (int oy = 0; oy < oh; ++oy) {
        const auto& r = ty[size_t(oy)];
        for (int ox = 0; ox < ow; ++ox) {
          const auto& cc = tx[size_t(ox)];
          const double top = src(r.i0, cc.i0) + cc.t * (src(r.i0, cc.i1) - src(r.i0, cc.i0));
          const double bot = src(r.i1, cc.i0) + cc.t * (src(r.i1, cc.i1) - src(r.i1, cc.i0));
          dst(oy, ox) = top + r.t * (bot - top);
        }
      }
    }
  }
  return y;
}

void resize_bilinear_backward(const Tensor& gy, int ih, int iw, Tensor* gx) {
  if (gy.h == ih && gy.w == iw) {
    gx->v += gy.v;
    return;
  }
  const auto ty = linear_taps(ih, gy.h);
  const auto tx = linear_taps(iw, gy.w);
  for (int in = 0; in < gy.n; ++in) {
    for (int ic = 0; ic < gy.c; ++ic) {
      auto g = gy.plane(in, ic);
      auto out = gx->plane(in, ic);
      for (int oy = 0; oy < gy.h; ++oy) {
        const auto& r = ty[size_t(oy)];
        for (int ox = 0; ox < gy.w; ++ox) {
          const auto& cc = tx[size_t(ox)];
          const double gv = g(oy, ox);
          out(r.i0, cc.i0) += (1.0 - r.t) * (1.0 - cc.t) * gv;
          out(r.i0, cc.i1) += (1.0 - r.t) * cc.t * gv;
          out(r.i1, cc.i0) += r.t * (1.0 - cc.t) * gv;
          out(r.i1, cc.i1) += r.t * cc.t * gv;
        }
      }
    }
  }
}

namespace {
// 1/16 * [1 4 6 4 1]; exactly representable, sums to one.
constexpr double kBlur5[5] = {0.0625, 0.25, 0.375, 0.25, 0.0625};
}  // namespace

Tensor blur5(const Tensor& x, bool horizontal) {
  Tensor y(x.n, x.c, x.h, x.w);
  const int extent = horizontal ? x.w : x.h;
  for (int in = 0; in < x.n; ++in) {
    for (int ic = 0; ic < x.c; ++ic) {
      auto src = x.plane(in, ic);
      auto dst = y.plane(in, ic);
      for (int yy = 0; yy < x.h; ++yy) {
        for (int xx = 0; xx < x.w; ++xx) {
          double acc = 0.0;
          for (int t = -2; t <= 2; ++t) {
            const int i = std::clamp((horizontal ? xx : yy) + t, 0, extent - 1);
            acc += kBlur5[t + 2] * (horizontal ? src(yy, i) : src(i, xx));
          }
          dst(yy, xx) = acc;
        }
      }
    }
  }
  return y;
}

void blur5_backward(const Tensor& gy, bool horizontal, Tensor* gx) {
  const int extent = horizontal ? gy.w : gy.h;
  for (int in = 0; in < gy.n; ++in) {
    for (int ic = 0; ic < gy.c; ++ic) {
      auto g = gy.plane(in, ic);
      auto out = gx->plane(in, ic);
      for (int yy = 0; yy < gy.h; ++yy) {
        for (int xx = 0; xx < gy.w; ++xx) {
          const double gv = g(yy, xx);
          for (int t = -2; t <= 2; ++t) {
            const int i = std::clamp((horizontal ? xx : yy) + t, 0, extent - 1);
            if (horizontal) out(yy, i) += kBlur5[t + 2] * gv;
            else out(i, xx) += kBlur5[t + 2] * gv;
          }
        }
      }
    }
  }
}

Tensor downsample2(const Tensor& x) {
  const int oh = (x.h + 1) / 2;
  const int ow = (x.w + 1) / 2;
  Tensor y(x.n, x.c, oh, ow);
  for (int in = 0; in < x.n; ++in)
    for (int ic = 0; ic < x.c; ++ic)
      for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox) y.at(in, ic, oy, ox) = x.at(in, ic, 2 * oy, 2 * ox);
  return y;
}

void downsample2_backward(const Tensor& gy, int ih, int iw, Tensor* gx) {
  (void)ih;
  (void)iw;
  for (int in = 0; in < gy.n; ++in)
    for (int ic = 0; ic < gy.c; ++ic)
      for (int oy = 0; oy < gy.h; ++oy)
        for (int ox = 0; ox < gy.w; ++ox)
          gx->at(in, ic, 2 * oy, 2 * ox) += gy.at(in, ic, oy, ox);
}

}  // namespace prmatte
