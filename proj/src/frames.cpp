#include "framelift/frames.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace framelift {

template <typename Scalar>
FrameBounds frame_bounds(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (vectors.empty()) throw std::invalid_argument("frame_bounds: empty family");
  const Eigen::Index n = vectors.front().size();
  Matrix op = Matrix::Zero(n, n);
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("frame_bounds: mixed dimensions");
    op += v * v.adjoint();
  }
  const auto [lo, hi] = symmetric_extremes(op, tol);
  FrameBounds out;
  out.upper = hi;
  out.spans = lo > tol.rank * hi;
  out.lower = std::max(lo, 0.0);
  return out;
}

template <typename Scalar>
Frame<Scalar> analyze_frame(
    std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> vectors,
    const Tolerance& tol) {
  Frame<Scalar> f;
  const FrameBounds b = frame_bounds(vectors, tol);
  f.vectors = std::move(vectors);
  f.lower = b.lower;
  f.upper = b.upper;
  f.is_frame = b.spans;
  f.tight = std::abs(f.upper - f.lower) <= tol.eq * f.upper;
  f.parseval = f.tight && std::abs(f.lower - 1.0) <= tol.eq;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_norm = 0.0;
  for (const auto& v : f.vectors) {
    min_norm = std::min(min_norm, v.norm());
    max_norm = std::max(max_norm, v.norm());
  }
  f.equal_norm = max_norm - min_norm <= tol.eq;
  f.unit_norm = f.equal_norm && std::abs(max_norm - 1.0) <= tol.eq;
  return f;
}

ComplexFrame harmonic_parseval(int m, int n, const Tolerance& tol) {
  if (n < 1 || m < n) {
    throw std::invalid_argument("harmonic_parseval: need m >= n >= 1");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<ComplexVector> vectors;
  vectors.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    ComplexVector v(n);
    for (int k = 0; k < n; ++k) {
      const long long e = static_cast<long long>(j) * k % m;
      v(k) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(e) / m);
    }
    vectors.push_back(std::move(v));
  }
  ComplexFrame f = analyze_frame(std::move(vectors), tol);
  if (!f.parseval) {
    throw std::logic_error("harmonic_parseval: construction failed to verify Parseval");
  }
  return f;
}

template <typename Scalar>
FrameBounds fusion_bounds(const std::vector<Subspace<Scalar>>& subspaces,
                          const std::vector<double>& weights,
                          const Tolerance& tol) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (subspaces.empty()) throw std::invalid_argument("fusion_bounds: empty family");
  if (subspaces.size() != weights.size()) {
    throw std::invalid_argument("fusion_bounds: weight count mismatch");
  }
  const Eigen::Index n = subspaces.front().ambient_dim();
  Matrix op = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (subspaces[i].ambient_dim() != n) {
      throw std::invalid_argument("fusion_bounds: mixed ambient dimensions");
    }
    if (!(weights[i] > 0.0)) {
      throw std::invalid_argument("fusion_bounds: weights must be positive");
    }
    op += Scalar(weights[i] * weights[i]) * subspaces[i].projection_matrix();
  }
  const auto [lo, hi] = symmetric_extremes(op, tol);
  FrameBounds out;
  out.upper = hi;
  out.spans = lo > tol.rank * hi;
  out.lower = std::max(lo, 0.0);
  return out;
}

template <typename Scalar>
FusionFrame<Scalar> make_fusion_frame(std::vector<Subspace<Scalar>> subspaces,
                                      std::vector<double> weights,
                                      const Tolerance& tol) {
  const FrameBounds b = fusion_bounds(subspaces, weights, tol);
  FusionFrame<Scalar> f;
  f.subspaces = std::move(subspaces);
  f.weights = std::move(weights);
  f.lower = b.lower;
  f.upper = b.upper;
  f.is_frame = b.spans;
  f.tight = std::abs(f.upper - f.lower) <= tol.eq * f.upper;
  return f;
}

RealFusionFrame lift_frame_to_fusion(const ComplexFrame& frame, const Tolerance& tol) {
  std::vector<RealSubspace> subspaces;
  std::vector<double> weights;
  subspaces.reserve(frame.vectors.size());
  for (const auto& v : frame.vectors) {
    const double norm = v.norm();
    if (norm <= tol.eq) {
      throw std::invalid_argument("lift_frame_to_fusion: zero vector in frame");
    }
    subspaces.push_back(rank2(v, tol).subspace);
    weights.push_back(norm);
  }
  return make_fusion_frame(std::move(subspaces), std::move(weights), tol);
}

RealFusionFrame lift_fusion_to_fusion(const ComplexFusionFrame& fusion,
                                      const Tolerance& tol) {
  std::vector<RealSubspace> subspaces;
  subspaces.reserve(fusion.subspaces.size());
  for (const auto& w : fusion.subspaces) {
    subspaces.push_back(lift_subspace(w, tol).lifted);
  }
  return make_fusion_frame(std::move(subspaces), fusion.weights, tol);
}

RealFusionFrame tight_fusion_existence(int m, int n, const Tolerance& tol) {
  const ComplexFrame parseval = harmonic_parseval(m, n, tol);
  RealFusionFrame fusion = lift_frame_to_fusion(parseval, tol);
  if (!fusion.tight || fusion.upper - fusion.lower > 1e-10 * fusion.upper) {
    throw std::logic_error("tight_fusion_existence: lifted frame failed the tightness check");
  }
  return fusion;
}

template FrameBounds frame_bounds(const std::vector<RealVector>&, const Tolerance&);
template FrameBounds frame_bounds(const std::vector<ComplexVector>&, const Tolerance&);
template Frame<double> analyze_frame(std::vector<RealVector>, const Tolerance&);
template Frame<Complex> analyze_frame(std::vector<ComplexVector>, const Tolerance&);
template FrameBounds fusion_bounds(const std::vector<RealSubspace>&,
                                   const std::vector<double>&, const Tolerance&);
template FrameBounds fusion_bounds(const std::vector<ComplexSubspace>&,
                                   const std::vector<double>&, const Tolerance&);
template FusionFrame<double> make_fusion_frame(std::vector<RealSubspace>,
                                               std::vector<double>, const Tolerance&);
template FusionFrame<Complex> make_fusion_frame(std::vector<ComplexSubspace>,
                                                std::vector<double>, const Tolerance&);

}  // namespace framelift
