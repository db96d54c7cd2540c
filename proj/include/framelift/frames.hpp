#pragma once

#include <vector>

#include "framelift/geometry.hpp"
#include "framelift/realify.hpp"

// Frame and fusion-frame bounds, a deterministic equal-norm Parseval
// generator, and the lifts that turn complex frames (or fusion frames) into
// fusion frames of doubled ambient dimension with the same bounds.

namespace framelift {

/// Eigenvalue extremes of a frame-type operator. `spans` is false when the
/// lower bound is numerically zero (not a frame), which is a representable
/// state rather than an error so that negative examples can be expressed.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool spans = false;
};

template <typename Scalar>
struct Frame {
  std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors;
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
  bool tight = false;
  bool parseval = false;
  bool equal_norm = false;
  bool unit_norm = false;

  Eigen::Index dim() const { return vectors.empty() ? 0 : vectors.front().size(); }
  int size() const { return static_cast<int>(vectors.size()); }
};

using RealFrame = Frame<double>;
using ComplexFrame = Frame<Complex>;

/// (lambda_min, lambda_max) of the frame operator sum_i v_i v_i^*.
template <typename Scalar>
FrameBounds frame_bounds(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol = {});

/// Computes bounds and classification flags for a vector family.
template <typename Scalar>
Frame<Scalar> analyze_frame(
    std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors,
    const Tolerance& tol = {});

/// Equal-norm Parseval frame of m vectors for C^n: rows of the m x m DFT
/// matrix restricted to the first n columns, scaled by 1/sqrt(m). Every
/// vector has squared norm n/m.
ComplexFrame harmonic_parseval(int m, int n, const Tolerance& tol = {});

template <typename Scalar>
struct FusionFrame {
  std::vector<Subspace<Scalar>> subspaces;
  std::vector<double> weights;
  double lower = 0.0;
  double upper = 0.0;
  bool is_frame = false;
  bool tight = false;

  Eigen::Index ambient_dim() const { return subspaces.front().ambient_dim(); }
  int size() const { return static_cast<int>(subspaces.size()); }
};

using RealFusionFrame = FusionFrame<double>;
using ComplexFusionFrame = FusionFrame<Complex>;

/// Eigenvalue extremes of sum_i a_i^2 P_i. Throws on nonpositive weights.
template <typename Scalar>
FrameBounds fusion_bounds(const std::vector<Subspace<Scalar>>& subspaces,
                          const std::vector<double>& weights,
                          const Tolerance& tol = {});

template <typename Scalar>
FusionFrame<Scalar> make_fusion_frame(std::vector<Subspace<Scalar>> subspaces,
                                      std::vector<double> weights,
                                      const Tolerance& tol = {});

/// A complex frame becomes a fusion frame of two-dimensional subspaces of
/// R^{2n}: subspace span{v', v''} with weight ||v|| per vector. The fusion
/// bounds coincide with the frame bounds.
RealFusionFrame lift_frame_to_fusion(const ComplexFrame& frame, const Tolerance& tol = {});

/// A complex fusion frame lifts subspace-wise (dimensions double, weights and
/// bounds carry over).
RealFusionFrame lift_fusion_to_fusion(const ComplexFusionFrame& fusion,
                                      const Tolerance& tol = {});

/// Tight fusion frame of m two-dimensional subspaces of R^{2n} for any
/// m >= n, built from the harmonic Parseval frame. Throws if the construction
/// fails to verify tight.
RealFusionFrame tight_fusion_existence(int m, int n, const Tolerance& tol = {});

}  // namespace framelift
