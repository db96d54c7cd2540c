#include "framelift/realify.hpp"

#include <cmath>

namespace framelift {

LiftedPair lift(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  LiftedPair out;
  out.source = v;
  out.direct.resize(2 * n);
  out.rotated.resize(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double re = v(j).real();
    const double im = v(j).imag();
    out.direct(2 * j) = re;
    out.direct(2 * j + 1) = im;
    out.rotated(2 * j) = -im;
    out.rotated(2 * j + 1) = re;
  }
  return out;
}

ComplexVector unlift(const RealVector& z) {
  if (z.size() % 2 != 0) {
    throw std::invalid_argument("unlift: dimension must be even");
  }
  const Eigen::Index n = z.size() / 2;
  ComplexVector v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(j) = Complex(z(2 * j), z(2 * j + 1));
  }
  return v;
}

Complex lifted_inner(const ComplexVector& w, const ComplexVector& v) {
  if (w.size() != v.size()) {
    throw std::invalid_argument("lifted_inner: dimension mismatch");
  }
  const LiftedPair lw = lift(w);
  const LiftedPair lv = lift(v);
  return Complex(lw.direct.dot(lv.direct), lw.direct.dot(lv.rotated));
}

RealVector rotated_lift(const ComplexVector& w, double theta) {
  const LiftedPair lw = lift(w);
  return std::cos(theta) * lw.direct + std::sin(theta) * lw.rotated;
}

RankTwoProjection rank2(const ComplexVector& v, const Tolerance& tol) {
  const double norm = v.norm();
  if (norm <= tol.eq) {
    throw std::invalid_argument("rank2: zero vector has no attached projection");
  }
  const LiftedPair lp = lift(v);
  RealMatrix basis(2 * v.size(), 2);
  basis.col(0) = lp.direct / norm;
  basis.col(1) = lp.rotated / norm;
  return RankTwoProjection{RealSubspace(std::move(basis), tol), v};
}

std::optional<Complex> scalar_between(const ComplexVector& v, const ComplexVector& w,
                                      const Tolerance& tol) {
  if (v.size() != w.size()) {
    throw std::invalid_argument("scalar_between: dimension mismatch");
  }
  const double vn = v.norm();
  const double wn = w.norm();
  if (vn <= tol.eq || wn <= tol.eq) {
    throw std::invalid_argument("scalar_between: zero input");
  }
  ComplexMatrix joint(v.size(), 2);
  joint.col(0) = v;
  joint.col(1) = w;
  if (tolerant_rank(joint, tol) != 1) return std::nullopt;
  const Complex c = hermitian_inner(v, w) / (wn * wn);
  if ((v - c * w).norm() > tol.rank * (vn + wn)) return std::nullopt;
  return c;
}

LiftedSubspace lift_subspace(const ComplexSubspace& w, const Tolerance& tol) {
  const Eigen::Index n = w.ambient_dim();
  const Eigen::Index d = w.dim();
  RealMatrix basis(2 * n, 2 * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const LiftedPair lp = lift(w.basis().col(j));
    basis.col(2 * j) = lp.direct;
    basis.col(2 * j + 1) = lp.rotated;
  }
  // Orthonormality transfers from the complex basis, so this validates.
  return LiftedSubspace{w, RealSubspace(std::move(basis), tol)};
}

double trace_pairing(const RankTwoProjection& p, const RankTwoProjection& q) {
  if (p.subspace.ambient_dim() != q.subspace.ambient_dim()) {
    throw std::invalid_argument("trace_pairing: ambient dimension mismatch");
  }
  return projection_trace_product(p.subspace, q.subspace);
}

}  // namespace framelift
