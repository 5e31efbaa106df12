#include "prmatte/guidance.hpp"

#include <cmath>

namespace prmatte {

GuidanceMode guidance_mode_from_string(const std::string& s) {
  if (s == "trimapfg") return GuidanceMode::TrimapFG;
  if (s == "trimap_soft") return GuidanceMode::TrimapSoft;
  if (s == "binary") return GuidanceMode::Binary;
  if (s == "soft_matte") return GuidanceMode::SoftMatte;
  throw ParamError("unknown guidance mode: " + s);
}

std::string to_string(GuidanceMode m) {
  switch (m) {
    case GuidanceMode::TrimapFG: return "trimapfg";
    case GuidanceMode::TrimapSoft: return "trimap_soft";
    case GuidanceMode::Binary: return "binary";
    case GuidanceMode::SoftMatte: return "soft_matte";
  }
  return "binary";
}

Mask perturb_guidance(const Plane& alpha, const PerturbConfig& cfg, Rng& rng) {
  const double t = uniform_real(rng, cfg.threshold_lo, cfg.threshold_hi);
  Mask mask = binarize(alpha, t);

  const auto draw_kernel = [&] {
    return round_up_to_odd(uniform_int(rng, cfg.kernel_lo, cfg.kernel_hi));
  };
  // At least one of dilate/erode is always applied.
  switch (uniform_int(rng, 0, 3)) {
    case 0: mask = dilate(mask, draw_kernel()); break;
    case 1: mask = erode(mask, draw_kernel()); break;
    case 2: mask = dilate(erode(mask, draw_kernel()), draw_kernel()); break;
    case 3: mask = erode(dilate(mask, draw_kernel()), draw_kernel()); break;
  }
  return mask;
}

Mask cutmask(const Mask& mask, double fraction_lo, double fraction_hi, Rng& rng,
             CutmaskRects* rects) {
  const auto h = mask.rows();
  const auto w = mask.cols();
  const double fh = uniform_real(rng, fraction_lo, fraction_hi);
  const double fw = uniform_real(rng, fraction_lo, fraction_hi);
  const auto side_h = std::min<Eigen::Index>(h, Eigen::Index(std::lround(fh * double(h))));
  const auto side_w = std::min<Eigen::Index>(w, Eigen::Index(std::lround(fw * double(w))));
  if (side_h < 1 || side_w < 1) throw ParamError("cutmask: patch smaller than one pixel");

  const auto src_y = Eigen::Index(uniform_int(rng, 0, int(h - side_h)));
  const auto src_x = Eigen::Index(uniform_int(rng, 0, int(w - side_w)));
  const auto dst_y = Eigen::Index(uniform_int(rng, 0, int(h - side_h)));
  const auto dst_x = Eigen::Index(uniform_int(rng, 0, int(w - side_w)));
  if (rects) *rects = {src_y, src_x, dst_y, dst_x, side_h, side_w};

  // Snapshot the source patch first so overlapping rectangles copy from the
  // original content.
  Mask patch = mask.block(src_y, src_x, side_h, side_w);
  Mask out = mask;
  out.block(dst_y, dst_x, side_h, side_w) = patch;
  return out;
}

Trimap trimap_from_prob(const Plane& prob, double fg_thresh, double bg_thresh,
                        int unknown_dilate) {
  if (fg_thresh <= bg_thresh) throw ParamError("trimap_from_prob: fg_thresh must exceed bg_thresh");
  Mask fg = (prob > fg_thresh).cast<double>();
  Mask bg = (prob < bg_thresh).cast<double>();
  Mask unknown = ((fg == 0.0) && (bg == 0.0)).cast<double>();
  unknown = dilate_radius(unknown, unknown_dilate);
  Trimap out(prob.rows(), prob.cols());
  out = (unknown == 1.0).select(Plane::Constant(prob.rows(), prob.cols(), 0.5),
                                (fg == 1.0).select(Plane::Ones(prob.rows(), prob.cols()),
                                                   Plane::Zero(prob.rows(), prob.cols())));
  return out;
}

Plane encode_guidance(const Plane& source, GuidanceMode mode) {
  switch (mode) {
    case GuidanceMode::TrimapFG:
      if (!is_trimap(source)) throw ParamError("encode_guidance: trimapfg expects a trimap");
      return (source == 1.0).cast<double>();
    case GuidanceMode::TrimapSoft:
      if (!is_trimap(source)) throw ParamError("encode_guidance: trimap_soft expects a trimap");
      return source;
    case GuidanceMode::Binary:
      if (!is_binary(source)) throw ParamError("encode_guidance: binary expects a binary mask");
      return source;
    case GuidanceMode::SoftMatte:
      if ((source < 0.0).any() || (source > 1.0).any())
        throw ParamError("encode_guidance: soft_matte expects values in [0,1]");
      return source;
  }
  throw ParamError("encode_guidance: bad mode");
}

}  // namespace prmatte
