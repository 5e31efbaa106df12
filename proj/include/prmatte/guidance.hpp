#pragma once

#include "prmatte/morphology.hpp"
#include "prmatte/rng.hpp"
#include "prmatte/types.hpp"

namespace prmatte {

// Guidance perturbation parameters (training-time mask corruption).
struct PerturbConfig {
  double threshold_lo = 0.0;  // binarization threshold ~ U(lo, hi)
  double threshold_hi = 1.0;
  int kernel_lo = 1;  // morphology kernel sizes, rounded up to odd
  int kernel_hi = 30;
  double cutmask_fraction_lo = 0.25;  // patch side as a fraction of each dimension
  double cutmask_fraction_hi = 0.5;
  uint64_t rng_seed = 0;
};

// pixel = 1 iff alpha > threshold (strict; ties go to background).
inline Mask binarize(const Plane& alpha, double threshold) {
  return (alpha > threshold).cast<double>();
}

enum class GuidanceMode { TrimapFG, TrimapSoft, Binary, SoftMatte };

GuidanceMode guidance_mode_from_string(const std::string& s);
std::string to_string(GuidanceMode m);

// Random binarization followed by dilation and/or erosion in random order.
Mask perturb_guidance(const Plane& alpha, const PerturbConfig& cfg, Rng& rng);

struct CutmaskRects {
  Eigen::Index src_y = 0, src_x = 0, dst_y = 0, dst_x = 0, side_h = 0, side_w = 0;
};

// Copies a random source patch over a random destination patch of the same
// size. Patch sides are drawn per axis as round(fraction * dimension).
Mask cutmask(const Mask& mask, double fraction_lo, double fraction_hi, Rng& rng,
             CutmaskRects* rects = nullptr);

inline Mask cutmask(const Mask& mask, double fraction, Rng& rng, CutmaskRects* rects = nullptr) {
  return cutmask(mask, fraction, fraction, rng, rects);
}

// Threshold a probability map into {fg, bg, unknown} and widen the unknown
// band by a square dilation of the given radius; the band overwrites
// adjacent fg/bg labels.
Trimap trimap_from_prob(const Plane& prob, double fg_thresh = 0.95, double bg_thresh = 0.05,
                        int unknown_dilate = 20);

// Normalize any accepted guidance source into the network's [0,1] input
// plane.
Plane encode_guidance(const Plane& source, GuidanceMode mode);

}  // namespace prmatte
