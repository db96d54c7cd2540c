#include <doctest.h>

#include <cmath>

#include "framelift/retrieval.hpp"
#include "framelift/rng.hpp"

using namespace framelift;

namespace {

RealVector rv(std::initializer_list<double> xs) {
  RealVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

std::vector<RealVector> random_real_vectors(std::mt19937_64& rng, int m, Eigen::Index n) {
  std::vector<RealVector> out;
  for (int i = 0; i < m; ++i) out.push_back(random_unit_vector(rng, n));
  return out;
}

std::vector<ComplexVector> random_complex_vectors(std::mt19937_64& rng, int m, Eigen::Index n) {
  std::vector<ComplexVector> out;
  for (int i = 0; i < m; ++i) out.push_back(random_unit_complex_vector(rng, n));
  return out;
}

// Hand oracle for the complement property: enumerate every bipartition and
// test both sides with Gram determinants.
bool complement_property_oracle(const std::vector<RealVector>& vecs, Eigen::Index n) {
  const int m = static_cast<int>(vecs.size());
  auto spans = [&](int mask) {
    std::vector<int> idx;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) idx.push_back(i);
    }
    if (static_cast<Eigen::Index>(idx.size()) < n) return false;
    RealMatrix sub(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
      sub.col(static_cast<Eigen::Index>(c)) = vecs[static_cast<std::size_t>(idx[c])];
    }
    return std::abs((sub * sub.transpose()).determinant()) > 1e-12;
  };
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (!spans(mask) && !spans(~mask & ((1 << m) - 1))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distinguishes on the coordinate-axes family") {
  const RealProjectionFamily f = rank_one_family<double>({rv({1, 0}), rv({0, 1})});

  const auto none = distinguishes(f, rv({1, 1}), rv({1, -1}));
  CHECK(!none.any());

  const auto first = distinguishes(f, rv({2, 0}), rv({1, 0}));
  REQUIRE(first.any());
  CHECK(*first.first_separating == 0);
  CHECK(first.separates[0]);
  CHECK(!first.separates[1]);
}

TEST_CASE("distinguishes: norm criterion agrees with the pairing form") {
  auto rng = substream(41, "retrieval.distinguish");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RealSubspace> members;
    for (int i = 0; i < 4; ++i) members.push_back(random_real_subspace(rng, 5, 1 + i % 3));
    const RealProjectionFamily f(members);
    const RealVector x = random_unit_vector(rng, 5);
    const RealVector y = random_unit_vector(rng, 5);
    const auto sep = distinguishes(f, x, y);
    for (std::size_t j = 0; j < sep.norm_gaps.size(); ++j) {
      const double gap = sep.norm_gaps[j];
      const double form = sep.pairing_forms[j];
      if (std::abs(gap) > 1e-7) {
        CHECK(std::abs(form) > 0.0);
        CHECK(gap * form > 0.0);  // same sign
      }
      if (std::abs(gap) < 1e-12) CHECK(std::abs(form) < 1e-10);
    }
  }
}

TEST_CASE("complement_property on small hand-checkable families") {
  const std::vector<RealVector> good = {rv({1, 0}), rv({0, 1}), rv({1, 1})};
  const auto rep = complement_property(good, 2);
  CHECK(rep.verdict == Verdict::PassExhaustive);
  CHECK(complement_property_oracle(good, 2));

  const std::vector<RealVector> bad = {rv({1, 0}), rv({0, 1})};
  const auto fail = complement_property(bad, 2);
  CHECK(fail.verdict == Verdict::CertifiedFail);
  REQUIRE(fail.violating_subset.has_value());
  CHECK(*fail.violating_subset == std::vector<int>{0});
  CHECK(!complement_property_oracle(bad, 2));
}

TEST_CASE("complement_property holds for 2n-1 generic vectors") {
  auto rng = substream(42, "retrieval.cp");
  const auto vecs = random_real_vectors(rng, 5, 3);
  CHECK(complement_property(vecs, 3).verdict == Verdict::PassExhaustive);
}

TEST_CASE("complement_property refuses oversized exhaustive checks") {
  auto rng = substream(43, "retrieval.cp_guard");
  const auto vecs = random_real_vectors(rng, 25, 3);
  CHECK_THROWS_AS(complement_property(vecs, 3), std::invalid_argument);
}

TEST_CASE("full_spark detects repeated vectors") {
  const std::vector<RealVector> good = {rv({1, 0}), rv({0, 1}), rv({1, 1})};
  CHECK(full_spark(good, 2).full_spark);

  const std::vector<RealVector> bad = {rv({1, 0}), rv({0, 1}), rv({1, 0})};
  const auto rep = full_spark(bad, 2);
  CHECK(!rep.full_spark);
  REQUIRE(rep.defective_subset.has_value());
  CHECK(*rep.defective_subset == std::vector<int>{0, 2});
}

TEST_CASE("full_spark on random Gaussian vectors, with determinant oracle") {
  auto rng = substream(44, "retrieval.spark");
  const auto vecs = random_real_vectors(rng, 6, 3);
  const auto rep = full_spark(vecs, 3);
  CHECK(rep.full_spark);
  CHECK(rep.subsets_checked == 20);
  // oracle: every 3-subset has a nonzero determinant
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        RealMatrix sub(3, 3);
        sub.col(0) = vecs[static_cast<std::size_t>(a)];
        sub.col(1) = vecs[static_cast<std::size_t>(b)];
        sub.col(2) = vecs[static_cast<std::size_t>(c)];
        CHECK(std::abs(sub.determinant()) > 1e-8);
      }
}

TEST_CASE("full_spark guards the subset explosion") {
  auto rng = substream(45, "retrieval.spark_guard");
  const auto vecs = random_real_vectors(rng, 40, 10);
  CHECK_THROWS_AS(full_spark(vecs, 10), std::invalid_argument);
}

TEST_CASE("edidin_check certifies the two-axes counterexample") {
  const RealProjectionFamily f = rank_one_family<double>({rv({1, 0}), rv({0, 1})});
  const auto rep = edidin_check(f);
  CHECK(rep.verdict == Verdict::CertifiedFail);
  REQUIRE(rep.witness_x.has_value());
  REQUIRE(rep.witness_y.has_value());
  const auto sep = distinguishes(f, *rep.witness_x, *rep.witness_y);
  CHECK(!sep.any());
  CHECK((*rep.witness_x - *rep.witness_y).norm() > 1e-6);
  CHECK((*rep.witness_x + *rep.witness_y).norm() > 1e-6);
}

TEST_CASE("edidin_check passes the three-vector frame, matching the exhaustive oracle") {
  const std::vector<RealVector> vecs = {rv({1, 0}), rv({0, 1}), rv({1, 1})};
  const auto rep = edidin_check(rank_one_family(vecs));
  CHECK(rep.verdict == Verdict::PassProbabilistic);
  CHECK(complement_property(vecs, 2).verdict == Verdict::PassExhaustive);
  CHECK(rep.min_sampled_span_dim == 2);
}

TEST_CASE("edidin_check fails two 2-dimensional subspaces of R^3") {
  auto rng = substream(46, "retrieval.edidin_r3");
  std::vector<RealSubspace> members = {random_real_subspace(rng, 3, 2),
                                       random_real_subspace(rng, 3, 2)};
  const RealProjectionFamily f(members);
  const auto rep = edidin_check(f);
  CHECK(rep.verdict == Verdict::CertifiedFail);
  REQUIRE(rep.witness_x.has_value());
  const auto sep = distinguishes(f, *rep.witness_x, *rep.witness_y);
  CHECK(!sep.any());
}

TEST_CASE("edidin_check agrees with the complement-property oracle on random rank-1 families") {
  auto rng = substream(47, "retrieval.edidin_consistency");
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    std::vector<RealVector> vecs;
    const int mode = trial % 3;
    if (mode == 0) {
      vecs = random_real_vectors(rng, 2 * n - 1, n);  // full spark, passes
    } else if (mode == 1) {
      vecs = random_real_vectors(rng, 2 * n - 2, n);  // too few, fails
    } else {
      // all vectors inside a hyperplane: fails badly
      const auto plane = random_real_subspace(rng, n, n - 1);
      for (int i = 0; i < 2 * n; ++i) {
        RealVector coeff = random_unit_vector(rng, n - 1);
        RealVector v = plane.basis() * coeff;
        vecs.push_back(v / v.norm());
      }
    }
    const bool cp = complement_property(vecs, n).verdict == Verdict::PassExhaustive;
    const auto rep = edidin_check(rank_one_family(vecs), SearchBudget{64, 16, 7 + trial});
    CHECK(rep.passed() == cp);
    if (rep.certified_fail()) {
      const auto sep = distinguishes(rank_one_family(vecs), *rep.witness_x, *rep.witness_y);
      CHECK(!sep.any());
    }
  }
}

TEST_CASE("indistinguishable_pair on a single line in the plane") {
  const RealProjectionFamily f = rank_one_family<double>({rv({1, 0})});
  const auto pair = indistinguishable_pair(f, rv({1, 0}));
  REQUIRE(pair.has_value());
  CHECK((pair->first - rv({0.5, 0.5})).norm() < 1e-12);
  CHECK((pair->second - rv({0.5, -0.5})).norm() < 1e-12);
}

TEST_CASE("indistinguishable_pair is empty for spanning images") {
  const RealProjectionFamily f =
      rank_one_family<double>({rv({1, 0}), rv({0, 1}), rv({1, 1})});
  CHECK(!indistinguishable_pair(f, rv({0.6, 0.8})).has_value());
  CHECK_THROWS_AS(indistinguishable_pair(f, rv({0, 0})), std::invalid_argument);
}

TEST_CASE("indistinguishable_pair self-verifies on a deficient family in R^4") {
  auto rng = substream(48, "retrieval.pair_r4");
  // three projections cannot span R^4 from a single point
  std::vector<RealSubspace> members = {random_real_subspace(rng, 4, 2),
                                       random_real_subspace(rng, 4, 1),
                                       random_real_subspace(rng, 4, 2)};
  const RealProjectionFamily f(members);
  const RealVector x = random_unit_vector(rng, 4);
  const auto pair = indistinguishable_pair(f, x);
  REQUIRE(pair.has_value());
  const auto sep = distinguishes(f, pair->first, pair->second);
  CHECK(!sep.any());
}

TEST_CASE("complex_pr_check passes four generic vectors in C^2") {
  auto rng = substream(49, "retrieval.cpx4");
  const auto vecs = random_complex_vectors(rng, 4, 2);
  const auto rep = complex_pr_check(vecs, SearchBudget{200, 16, 3});
  CHECK(rep.verdict == Verdict::PassProbabilistic);
  CHECK(rep.min_sampled_span_dim == 3);  // hyperplane in R^4 at every sample
  CHECK(rep.max_lift_ortho < 1e-10);
  CHECK(rep.spotcheck_ok);
}

TEST_CASE("complex_pr_check certifies three vectors in C^2 with a complex witness") {
  auto rng = substream(50, "retrieval.cpx3");
  for (int trial = 0; trial < 3; ++trial) {
    const auto vecs = random_complex_vectors(rng, 3, 2);
    const auto rep = complex_pr_check(vecs, SearchBudget{64, 16, 11 + trial});
    REQUIRE(rep.verdict == Verdict::CertifiedFail);
    REQUIRE(rep.witness_cx.has_value());
    REQUIRE(rep.witness_cy.has_value());
    // equal measurement moduli
    for (const auto& v : vecs) {
      CHECK(std::abs(std::abs(hermitian_inner(*rep.witness_cx, v)) -
                     std::abs(hermitian_inner(*rep.witness_cy, v))) < 1e-8);
    }
    // not a unimodular multiple
    if (rep.witness_cx->norm() > 1e-9 && rep.witness_cy->norm() > 1e-9) {
      const auto c = scalar_between(*rep.witness_cx, *rep.witness_cy);
      if (c.has_value()) CHECK(std::abs(std::abs(*c) - 1.0) > 1e-9);
    }
  }
}

TEST_CASE("the rotated lift is orthogonal to every projected image") {
  auto rng = substream(51, "retrieval.ortho");
  for (int trial = 0; trial < 10; ++trial) {
    const auto vecs = random_complex_vectors(rng, 3 + trial % 3, 3);
    std::vector<RealSubspace> lifted;
    for (const auto& v : vecs) lifted.push_back(rank2(v).subspace);
    const RealVector x = random_unit_vector(rng, 6);
    const RealVector xdd = lift(unlift(x)).rotated;
    for (const auto& p : lifted) {
      CHECK(std::abs(p.project(x).dot(xdd)) < 1e-10);
    }
  }
}

TEST_CASE("complex_projection_pr_check matches complex_pr_check on rank-1 families") {
  auto rng = substream(52, "retrieval.proj_consistency");
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 3 + trial % 3;  // 3 fails, 4 and 5 pass in C^2
    const auto vecs = random_complex_vectors(rng, m, 2);
    std::vector<ComplexSubspace> subs;
    for (const auto& v : vecs) {
      ComplexMatrix b(2, 1);
      b.col(0) = v;
      subs.emplace_back(std::move(b));
    }
    const SearchBudget budget{64, 16, 100 + trial};
    const auto via_vectors = complex_pr_check(vecs, budget);
    const auto via_subspaces = complex_projection_pr_check(subs, budget);
    CHECK(via_vectors.certified_fail() == via_subspaces.certified_fail());
  }
}

TEST_CASE("complex_projection_pr_check fails the full space") {
  std::vector<ComplexSubspace> subs = {ComplexSubspace{ComplexMatrix::Identity(2, 2)}};
  const auto rep = complex_projection_pr_check(subs);
  CHECK(rep.verdict == Verdict::CertifiedFail);
}

TEST_CASE("complex_projection_pr_check fails six one-dimensional subspaces of C^3") {
  auto rng = substream(53, "retrieval.c3");
  const auto vecs = random_complex_vectors(rng, 6, 3);
  std::vector<ComplexSubspace> subs;
  for (const auto& v : vecs) {
    ComplexMatrix b(3, 1);
    b.col(0) = v;
    subs.emplace_back(std::move(b));
  }
  const auto rep = complex_projection_pr_check(subs, SearchBudget{64, 24, 5});
  CHECK(rep.verdict == Verdict::CertifiedFail);
}

TEST_CASE("nonvanishing_support_stats counts and spans") {
  std::vector<ComplexVector> basis;
  basis.push_back(ComplexVector::Zero(2));
  basis.back()(0) = 1;
  basis.push_back(ComplexVector::Zero(2));
  basis.back()(1) = 1;

  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1;
  const auto stats = nonvanishing_support_stats(basis, e1);
  CHECK(stats.support_size == 1);
  CHECK(stats.support_span_dim == 1);

  auto rng = substream(54, "retrieval.support");
  const auto family = random_complex_vectors(rng, 4, 2);
  const auto generic = nonvanishing_support_stats(family, random_unit_complex_vector(rng, 2));
  CHECK(generic.support_size >= 3);
  CHECK(generic.support_span_dim == 2);

  // x orthogonal to everything: vectors live in span{e1, e2} of C^3
  std::vector<ComplexVector> planar;
  for (int i = 0; i < 3; ++i) {
    ComplexVector v = ComplexVector::Zero(3);
    v(0) = Complex(1 + i, 0);
    v(1) = Complex(0, 1);
    planar.push_back(v);
  }
  ComplexVector e3 = ComplexVector::Zero(3);
  e3(2) = 1;
  const auto zero = nonvanishing_support_stats(planar, e3);
  CHECK(zero.support_size == 0);
  CHECK(zero.support_span_dim == 0);

  CHECK_THROWS_AS(nonvanishing_support_stats(planar, ComplexVector::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("norm_retrieval_check passes orthonormal bases and fails a single line") {
  std::vector<RealVector> onb;
  for (int i = 0; i < 3; ++i) {
    RealVector e = RealVector::Zero(3);
    e(i) = 1;
    onb.push_back(e);
  }
  CHECK(norm_retrieval_check(rank_one_family(onb)).passed());

  const RealProjectionFamily single = rank_one_family<double>({rv({1, 0})});
  const auto rep = norm_retrieval_check(single);
  CHECK(rep.verdict == Verdict::CertifiedFail);
  REQUIRE(rep.witness_x.has_value());
  const auto sep = distinguishes(single, *rep.witness_x, *rep.witness_y);
  CHECK(!sep.any());
  CHECK(std::abs(rep.witness_x->norm() - rep.witness_y->norm()) > 1e-9);
}

TEST_CASE("phase retrieval implies norm retrieval on a random passing family") {
  auto rng = substream(55, "retrieval.pr_implies_nr");
  const auto vecs = random_real_vectors(rng, 5, 3);
  const RealProjectionFamily f = rank_one_family(vecs);
  REQUIRE(edidin_check(f).passed());
  CHECK(norm_retrieval_check(f).passed());
}

TEST_CASE("complement_transfer_check on the orthonormal basis family") {
  std::vector<RealVector> onb = {rv({1, 0}), rv({0, 1})};
  const auto rep = complement_transfer_check(rank_one_family(onb), 20, 2);
  CHECK(rep.holds_at_all_samples);
  for (const auto& s : rep.samples) {
    REQUIRE(s.solution.has_value());
    CHECK(s.solution->kind == CoefficientSolution::Kind::Reproducing);
    CHECK(std::abs(s.solution->sum - 2.0) < 1e-8);
    CHECK(s.solution->residual < 1e-10);
  }
}

TEST_CASE("complement_transfer_check fails for the identity projection") {
  const RealProjectionFamily full{{RealSubspace{RealMatrix::Identity(2, 2)}}};
  const auto rep = complement_transfer_check(full, 10, 3);
  CHECK(!rep.holds_at_all_samples);
  for (const auto& s : rep.samples) CHECK(!s.solution.has_value());
}

TEST_CASE("transfer condition + norm retrieval pass to the complement family") {
  auto rng = substream(56, "retrieval.transfer");
  // orthogonal decomposition of R^4 into two planes
  const auto w = random_real_subspace(rng, 4, 2);
  const auto wc = orthogonal_complement(w);
  const RealProjectionFamily f{{w, wc}};
  REQUIRE(norm_retrieval_check(f).passed());
  REQUIRE(complement_transfer_check(f, 50, 4).holds_at_all_samples);
  const auto complements = complement_family(f);
  CHECK(norm_retrieval_check(complements).passed());
}

TEST_CASE("complement_family inverts itself and dimensions add up") {
  std::vector<RealSubspace> members;
  RealMatrix e1 = RealMatrix::Zero(3, 1);
  e1(0, 0) = 1;
  members.emplace_back(e1);
  const auto comp = complement_family(RealProjectionFamily(members));
  CHECK(comp[0].dim() == 2);
  CHECK(comp[0].basis().col(0)(0) == doctest::Approx(0.0));

  auto rng = substream(57, "retrieval.complement");
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 3 + trial % 3;
    const Eigen::Index d = 1 + trial % static_cast<int>(n - 1);
    const auto s = random_real_subspace(rng, n, d);
    const RealProjectionFamily f{{s}};
    const auto c = complement_family(f);
    CHECK(c[0].dim() + s.dim() == n);
    const auto back = complement_family(c);
    CHECK(subspace_distance(back[0], s) < 1e-10);
  }
}
