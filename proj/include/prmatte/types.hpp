#pragma once

#include <Eigen/Core>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace prmatte {

// Dense row-major plane of scalars. Alpha mattes, masks and single color
// channels are all planes; semantics are carried by the free functions
// operating on them, not by wrapper classes.
template <typename Scalar>
using PlaneT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Plane = PlaneT<double>;

// Binary region mask. Values are exactly 0.0 or 1.0 so masks can take part
// in arithmetic expressions directly.
using Mask = Plane;

// Three-valued trimap: 0 background, 0.5 unknown, 1 foreground.
using Trimap = Plane;

template <typename Scalar>
struct ImageT {
  std::array<PlaneT<Scalar>, 3> ch;

  ImageT() = default;
  ImageT(Eigen::Index h, Eigen::Index w) {
    for (auto& c : ch) c = PlaneT<Scalar>::Zero(h, w);
  }
  static ImageT constant(Eigen::Index h, Eigen::Index w, Scalar v) {
    ImageT img;
    for (auto& c : img.ch) c = PlaneT<Scalar>::Constant(h, w, v);
    return img;
  }

  Eigen::Index rows() const { return ch[0].rows(); }
  Eigen::Index cols() const { return ch[0].cols(); }

  PlaneT<Scalar>& operator[](int i) { return ch[static_cast<size_t>(i)]; }
  const PlaneT<Scalar>& operator[](int i) const { return ch[static_cast<size_t>(i)]; }
};

using Image = ImageT<double>;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_same_shape(const Plane& a, const Plane& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch");
}

template <typename Scalar>
void require_same_shape(const ImageT<Scalar>& a, const PlaneT<Scalar>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": shape mismatch");
}

inline bool is_binary(const Mask& m) {
  return ((m == 0.0) || (m == 1.0)).all();
}

inline bool is_trimap(const Trimap& t) {
  return ((t == 0.0) || (t == 0.5) || (t == 1.0)).all();
}

// One training/evaluation record. All planes share the same size; for
// synthetic samples image == composite(alpha, foreground, background) up to
// floating-point roundoff.
struct MattingSample {
  Image image;
  Plane alpha;
  Image foreground;
  Image background;
  Plane guidance;
  std::optional<Mask> unknown_region;
  std::optional<Mask> detail_region;

  Eigen::Index rows() const { return alpha.rows(); }
  Eigen::Index cols() const { return alpha.cols(); }
};

}  // namespace prmatte
