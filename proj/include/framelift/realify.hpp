#pragma once

#include <optional>

#include "framelift/geometry.hpp"

// Lifting complex vectors and subspaces into R^{2n}. A vector v in C^n maps
// to an orthogonal pair of real vectors of the same norm, and hence to a
// rank-2 projection; a d-dimensional complex subspace maps to a
// 2d-dimensional real one. These maps carry Hermitian inner products,
// frame bounds, and angle data over to the real side.

namespace framelift {

/// Real images of a complex vector. `direct` interleaves real and imaginary
/// parts, `rotated` is the image of i*source. The two are orthogonal and
/// share the norm of the source.
struct LiftedPair {
  RealVector direct;
  RealVector rotated;
  ComplexVector source;
};

/// v = (a_1 + i b_1, ...) -> direct = (a_1, b_1, ..., a_n, b_n),
/// rotated = (-b_1, a_1, ..., -b_n, a_n).
LiftedPair lift(const ComplexVector& v);

/// Inverse of the direct lift: (a_1, b_1, ..., a_n, b_n) -> (a_1 + i b_1, ...).
/// Throws on odd dimension.
ComplexVector unlift(const RealVector& z);

/// Hermitian inner product recovered from the real lifts:
/// <w, v> = <w', v'> + i <w', v''> with the convention of hermitian_inner().
Complex lifted_inner(const ComplexVector& w, const ComplexVector& v);

/// Real image of (cos theta + i sin theta) * w, computed on the real side as
/// cos(theta) * w' + sin(theta) * w''.
RealVector rotated_lift(const ComplexVector& w, double theta);

/// The rank-2 projection of R^{2n} attached to a nonzero complex vector:
/// the projection onto span{v', v''}. Invariant under nonzero complex
/// scaling of the source.
struct RankTwoProjection {
  RealSubspace subspace;
  ComplexVector source;
};

RankTwoProjection rank2(const ComplexVector& v, const Tolerance& tol = {});

/// If v and w span the same complex line (rank of [v w] is 1), returns the
/// scalar c with v ~= c w; otherwise empty. Throws on numerically zero input.
std::optional<Complex> scalar_between(const ComplexVector& v, const ComplexVector& w,
                                      const Tolerance& tol = {});

/// Real image of a complex subspace: the span of the lifted pairs of any
/// orthonormal basis. Independent of the basis choice, with twice the dimension.
struct LiftedSubspace {
  ComplexSubspace source;
  RealSubspace lifted;
};

LiftedSubspace lift_subspace(const ComplexSubspace& w, const Tolerance& tol = {});

/// tr(P Q) for two rank-2 projections; equals 2 |<v, w>|^2 when the sources
/// are unit vectors.
double trace_pairing(const RankTwoProjection& p, const RankTwoProjection& q);

}  // namespace framelift
