#include <doctest.h>

#include <cmath>

#include "framelift/geometry.hpp"
#include "framelift/rng.hpp"

using namespace framelift;

namespace {

RealVector rv(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Minor-rank oracle: largest k such that some k-subset of the columns has a
// k x k Gram determinant bounded away from zero.
Eigen::Index det_rank_oracle(const std::vector<RealVector>& vectors, Eigen::Index n) {
  const int m = static_cast<int>(vectors.size());
  Eigen::Index best = 0;
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) idx.push_back(i);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    if (k > n || k <= best) continue;
    RealMatrix sub(n, k);
    for (Eigen::Index c = 0; c < k; ++c) sub.col(c) = vectors[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
    const double gram_det = (sub.transpose() * sub).determinant();
    if (std::abs(gram_det) > 1e-12) best = k;
  }
  return best;
}

}  // namespace

TEST_CASE("orthonormalize handles axis vectors") {
  const auto s = orthonormalize<double>({rv({1, 0}), rv({0, 2})});
  CHECK(s.dim() == 2);
  CHECK((s.basis().col(0) - rv({1, 0})).norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((s.basis().col(1) - rv({0, 1})).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("orthonormalize drops near-dependent inputs") {
  const auto s = orthonormalize<double>({rv({1, 0}), rv({1, 1e-16})});
  CHECK(s.dim() == 1);
  CHECK(std::abs(s.basis()(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("orthonormalize produces an orthonormal basis") {
  const auto s = orthonormalize<double>({rv({1, 1}), rv({1, 0})});
  CHECK(s.dim() == 2);
  const RealMatrix gram = s.basis().transpose() * s.basis();
  CHECK((gram - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("orthonormalize rejects an all-zero family") {
  CHECK_THROWS_AS(orthonormalize<double>({rv({0, 0}), rv({0, 0})}),
                  std::invalid_argument);
}

TEST_CASE("project onto coordinate plane") {
  RealMatrix basis = RealMatrix::Zero(4, 2);
  basis(0, 0) = 1;
  basis(1, 1) = 1;
  const RealSubspace s(basis);
  CHECK((s.project(rv({3, 4, 5, 6})) - rv({3, 4, 0, 0})).norm() < 1e-15);
}

TEST_CASE("project fixes points of the subspace and is idempotent") {
  auto rng = substream(11, "geometry.project");
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_real_subspace(rng, 6, 3);
    const RealVector inside = s.basis() * RealVector::Random(3);
    CHECK((s.project(inside) - inside).norm() < 1e-12);

    const RealVector x = random_unit_vector(rng, 6);
    const RealVector px = s.project(x);
    CHECK((s.project(px) - px).norm() < 1e-12);
    // orthogonality residual
    CHECK(std::abs((x - px).dot(px)) < 1e-10);
    // Pythagoras
    CHECK(x.squaredNorm() ==
          doctest::Approx(px.squaredNorm() + (x - px).squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("project is linear") {
  auto rng = substream(12, "geometry.linear");
  const auto s = random_real_subspace(rng, 5, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const RealVector x = random_unit_vector(rng, 5);
    const RealVector y = random_unit_vector(rng, 5);
    const double a = 0.3 + trial, b = -1.2 * trial;
    CHECK((s.project(a * x + b * y) - a * s.project(x) - b * s.project(y)).norm() < 1e-10);
  }
}

TEST_CASE("project rejects dimension mismatch") {
  RealMatrix basis = RealMatrix::Identity(3, 1);
  const RealSubspace s(basis);
  CHECK_THROWS_AS(s.project(rv({1, 2})), std::invalid_argument);
}

TEST_CASE("tolerant_rank on dependent family") {
  const std::vector<RealVector> vecs = {rv({1, 0, 0}), rv({0, 1, 0}), rv({1, 1, 0})};
  CHECK(tolerant_rank(vecs) == 2);
}

TEST_CASE("tolerant_rank of the zero vector is zero") {
  const std::vector<RealVector> vecs = {rv({0, 0, 0})};
  CHECK(tolerant_rank(vecs) == 0);
}

TEST_CASE("tolerant_rank matches the determinant oracle on random input") {
  auto rng = substream(13, "geometry.rank");
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<RealVector> vecs;
    for (int i = 0; i < 5; ++i) vecs.push_back(random_unit_vector(rng, 4));
    const Eigen::Index r = tolerant_rank(vecs);
    CHECK(r == 4);
    CHECK(det_rank_oracle(vecs, 4) == r);
  }
}

TEST_CASE("tolerant_rank is invariant under permutation and scaling") {
  auto rng = substream(14, "geometry.rank_invariance");
  std::vector<RealVector> vecs;
  for (int i = 0; i < 4; ++i) vecs.push_back(random_unit_vector(rng, 5));
  vecs.push_back(vecs[0] + vecs[1]);  // force a dependency
  const Eigen::Index r = tolerant_rank(vecs);

  std::vector<RealVector> shuffled = {vecs[4] * 3.0, vecs[2], vecs[0] * -0.25, vecs[3],
                                      vecs[1] * 1e3};
  CHECK(tolerant_rank(shuffled) == r);
}

TEST_CASE("symmetric_extremes of simple operators") {
  CHECK(symmetric_extremes<double>(RealMatrix::Identity(3, 3)) ==
        std::pair<double, double>{1.0, 1.0});
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(1, 1) = 5.0;
  const auto [lo, hi] = symmetric_extremes(d);
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(5.0));
}

TEST_CASE("symmetric_extremes of the three-vectors-at-120-degrees operator") {
  // Assemble sum v_i v_i^T explicitly for unit vectors at 0, 120, 240 degrees.
  std::vector<RealVector> mb;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * M_PI * k / 3.0;
    mb.push_back(rv({std::cos(a), std::sin(a)}));
  }
  RealMatrix op = RealMatrix::Zero(2, 2);
  for (const auto& v : mb) op += v * v.transpose();
  const auto [lo, hi] = symmetric_extremes(op);
  CHECK(lo == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(hi == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("symmetric_extremes rejects non-symmetric input") {
  RealMatrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(symmetric_extremes(m), std::invalid_argument);
}

TEST_CASE("symmetric_extremes brackets Rayleigh quotients") {
  auto rng = substream(15, "geometry.rayleigh");
  RealMatrix g(4, 4);
  std::normal_distribution<double> gauss;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) g(i, j) = gauss(rng);
  const RealMatrix sym = g + g.transpose();
  const auto [lo, hi] = symmetric_extremes(sym);
  for (int trial = 0; trial < 100; ++trial) {
    const RealVector x = random_unit_vector(rng, 4);
    const double rayleigh = x.dot(sym * x);
    CHECK(rayleigh >= lo - 1e-10);
    CHECK(rayleigh <= hi + 1e-10);
  }
}

TEST_CASE("subspace distance and same_span agree") {
  auto rng = substream(16, "geometry.distance");
  const auto s = random_real_subspace(rng, 6, 2);
  // same span, different basis
  RealMatrix rotated(6, 2);
  const double c = std::cos(0.7), sn = std::sin(0.7);
  rotated.col(0) = c * s.basis().col(0) + sn * s.basis().col(1);
  rotated.col(1) = -sn * s.basis().col(0) + c * s.basis().col(1);
  const RealSubspace t(rotated);
  CHECK(subspace_distance(s, t) < 1e-12);
  CHECK(same_span(s, t));

  const auto other = random_real_subspace(rng, 6, 2);
  CHECK(!same_span(s, other));
  CHECK(subspace_distance(s, other) > 1e-3);
}

TEST_CASE("orthogonal_complement splits the space") {
  auto rng = substream(17, "geometry.complement");
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_real_subspace(rng, 5, 2);
    const auto c = orthogonal_complement(s);
    CHECK(c.dim() == 3);
    CHECK((s.basis().transpose() * c.basis()).cwiseAbs().maxCoeff() < 1e-12);
    const auto back = orthogonal_complement(c);
    CHECK(subspace_distance(back, s) < 1e-10);
  }
  const RealSubspace full{RealMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(orthogonal_complement(full), std::invalid_argument);
}

TEST_CASE("hermitian_inner conjugates its second argument") {
  ComplexVector w(1), v(1);
  w(0) = Complex(0, 1);
  v(0) = Complex(0, 1);
  CHECK(hermitian_inner(w, v) == Complex(1, 0));
  v(0) = Complex(1, 0);
  CHECK(hermitian_inner(w, v) == Complex(0, 1));
}
