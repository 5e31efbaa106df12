#pragma once

#include "prmatte/types.hpp"

#include <algorithm>
#include <cmath>

namespace prmatte {

enum class ResampleMode { Bilinear, Nearest, Area };

template <typename Scalar>
PlaneT<Scalar> clamp01(const PlaneT<Scalar>& p) {
  return p.min(Scalar(1)).max(Scalar(0));
}

// I = alpha * F + (1 - alpha) * B, per pixel and channel.
template <typename Scalar>
ImageT<Scalar> composite(const PlaneT<Scalar>& alpha, const ImageT<Scalar>& fg,
                         const ImageT<Scalar>& bg) {
  if (alpha.rows() != fg.rows() || alpha.cols() != fg.cols() ||
      alpha.rows() != bg.rows() || alpha.cols() != bg.cols())
    throw ShapeError("composite: shape mismatch");
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c) out[c] = alpha * fg[c] + (Scalar(1) - alpha) * bg[c];
  return out;
}

namespace detail {

// a + t*(b-a). Exact when a == b, so constant plateaus survive resampling.
template <typename Scalar>
inline Scalar lerp(Scalar a, Scalar b, Scalar t) {
  return a + t * (b - a);
}

template <typename Scalar>
PlaneT<Scalar> resample_nearest(const PlaneT<Scalar>& src, Eigen::Index th, Eigen::Index tw) {
  const double sy = double(src.rows()) / double(th);
  const double sx = double(src.cols()) / double(tw);
  PlaneT<Scalar> out(th, tw);
  for (Eigen::Index y = 0; y < th; ++y) {
    const auto yy = std::min<Eigen::Index>(src.rows() - 1,
                                           Eigen::Index(std::floor((double(y) + 0.5) * sy)));
    for (Eigen::Index x = 0; x < tw; ++x) {
      const auto xx = std::min<Eigen::Index>(src.cols() - 1,
                                             Eigen::Index(std::floor((double(x) + 0.5) * sx)));
      out(y, x) = src(yy, xx);
    }
  }
  return out;
}

template <typename Scalar>
PlaneT<Scalar> resample_bilinear(const PlaneT<Scalar>& src, Eigen::Index th, Eigen::Index tw) {
  const double sy = double(src.rows()) / double(th);
  const double sx = double(src.cols()) / double(tw);
  PlaneT<Scalar> out(th, tw);
  for (Eigen::Index y = 0; y < th; ++y) {
    double fy = (double(y) + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, double(src.rows() - 1));
    const auto y0 = Eigen::Index(std::floor(fy));
    const auto y1 = std::min(y0 + 1, src.rows() - 1);
    const Scalar ty = Scalar(fy - double(y0));
    for (Eigen::Index x = 0; x < tw; ++x) {
      double fx = (double(x) + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, double(src.cols() - 1));
      const auto x0 = Eigen::Index(std::floor(fx));
      const auto x1 = std::min(x0 + 1, src.cols() - 1);
      const Scalar tx = Scalar(fx - double(x0));
      const Scalar top = lerp(src(y0, x0), src(y0, x1), tx);
      const Scalar bot = lerp(src(y1, x0), src(y1, x1), tx);
      out(y, x) = lerp(top, bot, ty);
    }
  }
  return out;
}

// Box-filter average over the exact fractional source footprint of each
// output pixel; valid for both down- and upsampling.
template <typename Scalar>
PlaneT<Scalar> resample_area(const PlaneT<Scalar>& src, Eigen::Index th, Eigen::Index tw) {
  const double sy = double(src.rows()) / double(th);
  const double sx = double(src.cols()) / double(tw);
  PlaneT<Scalar> out(th, tw);
  for (Eigen::Index y = 0; y < th; ++y) {
    const double y0 = double(y) * sy;
    const double y1 = double(y + 1) * sy;
    const auto iy0 = Eigen::Index(std::floor(y0));
    const auto iy1 = std::min<Eigen::Index>(src.rows() - 1, Eigen::Index(std::ceil(y1)) - 1);
    for (Eigen::Index x = 0; x < tw; ++x) {
      const double x0 = double(x) * sx;
      const double x1 = double(x + 1) * sx;
      const auto ix0 = Eigen::Index(std::floor(x0));
      const auto ix1 = std::min<Eigen::Index>(src.cols() - 1, Eigen::Index(std::ceil(x1)) - 1);
      double acc = 0.0, wsum = 0.0;
      for (Eigen::Index yy = iy0; yy <= iy1; ++yy) {
        const double wy = std::min(y1, double(yy + 1)) - std::max(y0, double(yy));
        for (Eigen::Index xx = ix0; xx <= ix1; ++xx) {
          const double wx = std::min(x1, double(xx + 1)) - std::max(x0, double(xx));
          acc += wy * wx * double(src(yy, xx));
          wsum += wy * wx;
        }
      }
      out(y, x) = Scalar(acc / wsum);
    }
  }
  return out;
}

}  // namespace detail

template <typename Scalar>
PlaneT<Scalar> resample(const PlaneT<Scalar>& src, Eigen::Index target_h, Eigen::Index target_w,
                        ResampleMode mode) {
  if (target_h < 1 || target_w < 1) throw ParamError("resample: target dims must be >= 1");
  if (src.rows() == target_h && src.cols() == target_w) return src;
  PlaneT<Scalar> out;
  switch (mode) {
    case ResampleMode::Nearest: out = detail::resample_nearest(src, target_h, target_w); break;
    case ResampleMode::Bilinear: out = detail::resample_bilinear(src, target_h, target_w); break;
    case ResampleMode::Area: out = detail::resample_area(src, target_h, target_w); break;
  }
  return clamp01(out);
}

template <typename Scalar>
ImageT<Scalar> resample(const ImageT<Scalar>& src, Eigen::Index target_h, Eigen::Index target_w,
                        ResampleMode mode) {
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c) out[c] = resample(src[c], target_h, target_w, mode);
  return out;
}

// Over-operator merge of two foreground layers with alpha-weighted color
// mixing. Where the merged alpha vanishes the color falls back to f2.
template <typename Scalar>
std::pair<PlaneT<Scalar>, ImageT<Scalar>> merge_foregrounds(const PlaneT<Scalar>& a1,
                                                            const ImageT<Scalar>& f1,
                                                            const PlaneT<Scalar>& a2,
                                                            const ImageT<Scalar>& f2) {
  if (a1.rows() != a2.rows() || a1.cols() != a2.cols())
    throw ShapeError("merge_foregrounds: shape mismatch");
  const Scalar eps = Scalar(1e-8);
  PlaneT<Scalar> alpha = clamp01<Scalar>(a1 + a2 * (Scalar(1) - a1));
  ImageT<Scalar> fg;
  for (int c = 0; c < 3; ++c) {
    PlaneT<Scalar> mixed = (a1 * f1[c] + (Scalar(1) - a1) * a2 * f2[c]) / alpha.max(eps);
    fg[c] = clamp01<Scalar>((alpha > Scalar(0)).select(mixed, f2[c]));
  }
  return {std::move(alpha), std::move(fg)};
}

}  // namespace prmatte
