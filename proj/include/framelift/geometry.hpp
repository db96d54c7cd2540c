#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

// Dense real/complex linear algebra with an explicit tolerance policy:
// orthonormalization, projections, tolerant rank, eigenvalue extremes.
// Everything here is a pure function on immutable values.

namespace framelift {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Tolerance policy used throughout the library.
///
/// `rank` is a relative singular-value threshold, `ortho` and `eq` are
/// absolute thresholds for orthogonality and scalar comparisons. Defaults
/// leave ample headroom in double precision for the dimensions this library
/// targets (n up to a few hundred).
struct Tolerance {
  double rank = 1e-8;
  double ortho = 1e-9;
  double eq = 1e-9;

  void validate() const {
    if (!(rank > 0.0 && rank < 1.0)) {
      throw std::invalid_argument("Tolerance: rank must be in (0, 1)");
    }
    if (!(ortho > 0.0) || !(eq > 0.0)) {
      throw std::invalid_argument("Tolerance: thresholds must be positive");
    }
  }
};

/// Inner product that is linear in the first argument and conjugates the
/// second: <w, v> = sum_j w_j * conj(v_j). For real vectors this is the
/// usual dot product.
inline Complex hermitian_inner(const ComplexVector& w, const ComplexVector& v) {
  if (w.size() != v.size()) {
    throw std::invalid_argument("hermitian_inner: dimension mismatch");
  }
  return v.dot(w);  // Eigen's dot() conjugates its *left* operand
}

/// A subspace of R^n or C^n stored as an orthonormal basis (one column per
/// basis vector). The stored basis induces the orthogonal projection
/// P = B B^H without ever forming the dense matrix unless asked to.
template <typename Scalar>
class Subspace {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Wraps an orthonormal basis. Throws if the columns fail the Gram test
  /// |B^H B - I| <= tol.ortho entrywise, or if the shape is degenerate.
  explicit Subspace(Matrix orthonormal_basis, const Tolerance& tol = {})
      : basis_(std::move(orthonormal_basis)) {
    if (basis_.rows() == 0 || basis_.cols() == 0) {
      throw std::invalid_argument("Subspace: empty basis");
    }
    if (basis_.cols() > basis_.rows()) {
      throw std::invalid_argument("Subspace: more basis vectors than ambient dimension");
    }
    Matrix gram = basis_.adjoint() * basis_;
    gram -= Matrix::Identity(basis_.cols(), basis_.cols());
    if (gram.cwiseAbs().maxCoeff() > tol.ortho) {
      throw std::invalid_argument("Subspace: basis is not orthonormal within tolerance");
    }
  }

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projection of x onto this subspace: P x = B (B^H x).
  /// Idempotent up to rounding because the basis is orthonormal.
  Vector project(const Vector& x) const {
    if (x.size() != basis_.rows()) {
      throw std::invalid_argument("Subspace::project: dimension mismatch");
    }
    return basis_ * (basis_.adjoint() * x);
  }

  /// Dense projection matrix B B^H. Only for trace computations and small
  /// diagnostics; prefer project() elsewhere.
  Matrix projection_matrix() const { return basis_ * basis_.adjoint(); }

 private:
  Matrix basis_;
};

using RealSubspace = Subspace<double>;
using ComplexSubspace = Subspace<Complex>;

/// Number of singular values above tol.rank times the largest one.
/// A zero matrix has rank 0.
template <typename Scalar>
Eigen::Index tolerant_rank(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& columns,
    const Tolerance& tol = {}) {
  if (columns.rows() == 0 || columns.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(columns);
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  if (!(largest > 0.0)) return 0;
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank * largest) ++r;
  return r;
}

template <typename Scalar>
Eigen::Index tolerant_rank(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol = {}) {
  if (vectors.empty()) {
    throw std::invalid_argument("tolerant_rank: empty input");
  }
  const Eigen::Index n = vectors.front().size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) {
      throw std::invalid_argument("tolerant_rank: mixed dimensions");
    }
    m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return tolerant_rank(m, tol);
}

/// Gram-Schmidt with one full reorthogonalization pass. Inputs whose
/// residual against the running basis falls below tol.rank times the largest
/// input norm are dropped. Throws when every input is numerically zero.
template <typename Scalar>
Subspace<Scalar> orthonormalize(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol = {}) {
  using Matrix = typename Subspace<Scalar>::Matrix;
  if (vectors.empty()) {
    throw std::invalid_argument("orthonormalize: empty input");
  }
  const Eigen::Index n = vectors.front().size();
  double max_norm = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != n) {
      throw std::invalid_argument("orthonormalize: mixed dimensions");
    }
    max_norm = std::max(max_norm, v.norm());
  }
  if (max_norm <= tol.eq) {
    throw std::invalid_argument("orthonormalize: all inputs are numerically zero");
  }
  Matrix basis(n, 0);
  for (const auto& v : vectors) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r = v;
    if (basis.cols() > 0) {
      r -= basis * (basis.adjoint() * r);
      r -= basis * (basis.adjoint() * r);  // second pass
    }
    const double rn = r.norm();
    if (rn < tol.rank * max_norm) continue;
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / rn;
  }
  if (basis.cols() == 0) {
    throw std::invalid_argument("orthonormalize: inputs span nothing within tolerance");
  }
  return Subspace<Scalar>(std::move(basis), tol);
}

namespace detail {
template <typename Scalar>
void require_self_adjoint(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    const Tolerance& tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("symmetric_extremes: matrix is not square");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol.ortho) {
    throw std::invalid_argument("symmetric_extremes: matrix is not self-adjoint within tolerance");
  }
}
}  // namespace detail

/// Extreme eigenvalues (min, max) of a symmetric/Hermitian operator.
template <typename Scalar>
std::pair<double, double> symmetric_extremes(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    const Tolerance& tol = {}) {
  detail::require_self_adjoint(m, tol);
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix sym = Scalar(0.5) * (m + Matrix(m.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric_extremes: eigensolver failed");
  }
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

/// Spectral-norm distance ||P_a - P_b||_2 between the induced projections.
/// Equals the sine of the largest principal angle when dims agree.
template <typename Scalar>
double subspace_distance(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument("subspace_distance: ambient dimension mismatch");
  }
  using Matrix = typename Subspace<Scalar>::Matrix;
  Matrix diff = a.projection_matrix() - b.projection_matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

/// Whether two subspaces coincide, decided by the rank of the concatenated
/// bases (basis-free, tolerance-controlled).
template <typename Scalar>
bool same_span(const Subspace<Scalar>& a, const Subspace<Scalar>& b,
               const Tolerance& tol = {}) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  typename Subspace<Scalar>::Matrix joint(a.ambient_dim(), a.dim() + b.dim());
  joint << a.basis(), b.basis();
  return tolerant_rank(joint, tol) == a.dim();
}

/// Orthonormal basis of the orthogonal complement, obtained from the trailing
/// columns of a full QR of the stored basis.
template <typename Scalar>
Subspace<Scalar> orthogonal_complement(const Subspace<Scalar>& s, const Tolerance& tol = {}) {
  if (s.dim() == s.ambient_dim()) {
    throw std::invalid_argument("orthogonal_complement: subspace is the whole space");
  }
  using Matrix = typename Subspace<Scalar>::Matrix;
  Eigen::HouseholderQR<Matrix> qr(s.basis());
  Matrix q = qr.householderQ();
  return Subspace<Scalar>(q.rightCols(s.ambient_dim() - s.dim()), tol);
}

/// Hilbert-Schmidt pairing tr(P_a P_b) of two induced projections,
/// computed as the squared Frobenius norm of A^H B.
template <typename Scalar>
double projection_trace_product(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument("projection_trace_product: ambient dimension mismatch");
  }
  return (a.basis().adjoint() * b.basis()).squaredNorm();
}

}  // namespace framelift
