#pragma once

#include "prmatte/types.hpp"

#include <algorithm>

namespace prmatte {

inline int round_up_to_odd(int k) { return (k % 2 == 0) ? k + 1 : k; }

namespace detail {

// Separable sliding-window extremum over a (2r+1)^2 square element.
// `pad` is the value assumed outside the image.
inline Mask window_extremum(const Mask& m, int radius, bool take_max, double pad) {
  const auto h = m.rows();
  const auto w = m.cols();
  Mask tmp(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double v = (x - radius < 0 || x + radius >= w) ? pad : m(y, x);
      const auto x0 = std::max<Eigen::Index>(0, x - radius);
      const auto x1 = std::min<Eigen::Index>(w - 1, x + radius);
      for (Eigen::Index xx = x0; xx <= x1; ++xx)
        v = take_max ? std::max(v, m(y, xx)) : std::min(v, m(y, xx));
      tmp(y, x) = v;
    }
  }
  Mask out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double v = (y - radius < 0 || y + radius >= h) ? pad : tmp(y, x);
      const auto y0 = std::max<Eigen::Index>(0, y - radius);
      const auto y1 = std::min<Eigen::Index>(h - 1, y + radius);
      for (Eigen::Index yy = y0; yy <= y1; ++yy)
        v = take_max ? std::max(v, tmp(yy, x)) : std::min(v, tmp(yy, x));
      out(y, x) = v;
    }
  }
  return out;
}

}  // namespace detail

// Dilation by square radius; out-of-bounds reads as 0.
inline Mask dilate_radius(const Mask& mask, int radius) {
  if (radius <= 0) return mask;
  return detail::window_extremum(mask, radius, /*take_max=*/true, 0.0);
}

inline Mask erode_radius(const Mask& mask, int radius) {
  if (radius <= 0) return mask;
  return detail::window_extremum(mask, radius, /*take_max=*/false, 1.0);
}

// Morphological dilation with a k x k square structuring element; k odd.
inline Mask dilate(const Mask& mask, int kernel) {
  if (kernel < 1 || kernel % 2 == 0) throw ParamError("dilate: kernel must be odd and >= 1");
  return dilate_radius(mask, (kernel - 1) / 2);
}

inline Mask erode(const Mask& mask, int kernel) {
  if (kernel < 1 || kernel % 2 == 0) throw ParamError("erode: kernel must be odd and >= 1");
  return erode_radius(mask, (kernel - 1) / 2);
}

}  // namespace prmatte
