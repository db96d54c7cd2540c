#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "framelift/geometry.hpp"
#include "framelift/realify.hpp"

// Phase-retrieval and norm-retrieval certification for vector frames and
// projection families, real and complex. Failures are certified: the returned
// witness pair is re-verified through an independent formula before a
// CERTIFIED_FAIL verdict is issued. Passes obtained by sampling and local
// optimization are labelled probabilistic, since "for all x != 0" cannot be
// exhausted numerically.

namespace framelift {

enum class Verdict { CertifiedFail, PassExhaustive, PassProbabilistic };

const char* to_string(Verdict v);

/// Search effort and root seed for the stochastic checks; echoed in reports
/// so results can be reproduced exactly.
struct SearchBudget {
  int samples = 64;
  int restarts = 16;
  std::uint64_t seed = 0;
};

struct CheckReport {
  Verdict verdict = Verdict::PassProbabilistic;

  // Certified failures carry a witness pair (real side) and, for the complex
  // checks, the reconstructed complex pair.
  std::optional<RealVector> witness_x;
  std::optional<RealVector> witness_y;
  std::optional<ComplexVector> witness_cx;
  std::optional<ComplexVector> witness_cy;
  std::optional<Eigen::Index> deficient_span_dim;
  std::optional<std::vector<int>> violating_subset;

  int samples_used = 0;
  int restarts_used = 0;
  std::uint64_t seed = 0;

  // Best search score: smallest relative singular value seen for the span
  // checks, largest normalized residual for norm retrieval, or the witness
  // re-verification gap for certified failures.
  double residual = 0.0;

  // Diagnostics recorded by the lifted (complex) checks.
  Eigen::Index min_sampled_span_dim = -1;
  double max_lift_ortho = 0.0;
  bool spotcheck_ok = true;

  bool certified_fail() const { return verdict == Verdict::CertifiedFail; }
  bool passed() const { return verdict != Verdict::CertifiedFail; }
};

/// A nonempty family of subspaces of a common ambient space.
template <typename Scalar>
class ProjectionFamily {
 public:
  explicit ProjectionFamily(std::vector<Subspace<Scalar>> members)
      : members_(std::move(members)) {
    if (members_.empty()) {
      throw std::invalid_argument("ProjectionFamily: empty family");
    }
    for (const auto& s : members_) {
      if (s.ambient_dim() != members_.front().ambient_dim()) {
        throw std::invalid_argument("ProjectionFamily: mixed ambient dimensions");
      }
    }
  }

  Eigen::Index ambient_dim() const { return members_.front().ambient_dim(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Subspace<Scalar>>& members() const { return members_; }
  const Subspace<Scalar>& operator[](int i) const { return members_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<Subspace<Scalar>> members_;
};

using RealProjectionFamily = ProjectionFamily<double>;
using ComplexProjectionFamily = ProjectionFamily<Complex>;

/// Family of spans of the given (nonzero) vectors, one rank-1 subspace each.
template <typename Scalar>
ProjectionFamily<Scalar> rank_one_family(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    const Tolerance& tol = {});

/// Per-index separation data for a pair (x, y): which members see different
/// projection norms. The pairing form Re<x-y, P_j(x+y)> equals the squared
/// norm gap and is kept as an independent cross-check.
struct SeparationResult {
  std::vector<bool> separates;
  std::vector<double> norm_gaps;
  std::vector<double> pairing_forms;
  std::optional<int> first_separating;

  bool any() const { return first_separating.has_value(); }
};

template <typename Scalar>
SeparationResult distinguishes(const ProjectionFamily<Scalar>& family,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y,
                               const Tolerance& tol = {});

/// Exhaustive complement-property check over all bipartitions (refuses
/// m > 24). CERTIFIED_FAIL carries the violating index set, for which neither
/// side spans.
template <typename Scalar>
CheckReport complement_property(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    Eigen::Index dim, const Tolerance& tol = {});

struct SparkReport {
  bool full_spark = false;
  std::optional<std::vector<int>> defective_subset;
  std::uint64_t subsets_checked = 0;
};

/// Checks that every dim-subset spans (guarded at 10^6 subsets).
template <typename Scalar>
SparkReport full_spark(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    Eigen::Index dim, const Tolerance& tol = {});

/// Phase-retrieval check for real projection families via the span
/// criterion: searches for a nonzero x whose projected images fail to span.
/// A certified failure returns the indistinguishable pair built from x and
/// a unit vector orthogonal to the deficient span.
CheckReport edidin_check(const RealProjectionFamily& family,
                         const SearchBudget& budget = {}, const Tolerance& tol = {});

/// If span{P_i x} is deficient, returns the pair ((x+y)/2, (x-y)/2) for the
/// deterministic choice of unit y orthogonal to the span; empty otherwise.
std::optional<std::pair<RealVector, RealVector>> indistinguishable_pair(
    const RealProjectionFamily& family, const RealVector& x, const Tolerance& tol = {});

/// Phase-retrieval check for complex vector frames via the lifted hyperplane
/// criterion on R^{2n}: passes require every sampled point to produce a span
/// of dimension exactly 2n-1 whose orthogonal complement is spanned by the
/// rotated lift of the sample. Certified failures reconstruct a complex
/// witness pair with equal measurement moduli that is not a unimodular
/// multiple.
CheckReport complex_pr_check(const std::vector<ComplexVector>& vectors,
                             const SearchBudget& budget = {}, const Tolerance& tol = {});

/// Same hyperplane criterion for families of complex subspaces, lifted to
/// subspaces of twice the dimension.
CheckReport complex_projection_pr_check(const std::vector<ComplexSubspace>& subspaces,
                                        const SearchBudget& budget = {},
                                        const Tolerance& tol = {});

/// Size and span dimension of {i : <x, v_i> != 0}.
struct SupportStats {
  int support_size = 0;
  Eigen::Index support_span_dim = 0;
  std::vector<int> support;
};

SupportStats nonvanishing_support_stats(const std::vector<ComplexVector>& vectors,
                                        const ComplexVector& x, const Tolerance& tol = {});

/// Norm-retrieval check for real projection families: searches for x lying
/// outside span{P_i x}. A certified failure returns a pair with equal
/// projection norms but different lengths.
CheckReport norm_retrieval_check(const RealProjectionFamily& family,
                                 const SearchBudget& budget = {}, const Tolerance& tol = {});

/// Coefficients solving sum_i a_i P_i y = y (reproducing) or = 0
/// (annihilating) with the sum condition attached to each kind.
struct CoefficientSolution {
  enum class Kind { Reproducing, Annihilating };
  RealVector coefficients;
  double sum = 0.0;
  Kind kind = Kind::Reproducing;
  double residual = 0.0;
};

struct TransferSample {
  RealVector y;
  std::optional<CoefficientSolution> solution;  // empty: condition fails at y
};

/// Sampled check of the coefficient condition under which norm retrieval
/// passes to the complementary family: at each sampled unit y, look for
/// coefficients with sum != 1 reproducing y, or an annihilating combination
/// with nonzero sum.
struct TransferReport {
  std::vector<TransferSample> samples;
  bool holds_at_all_samples = true;
  std::uint64_t seed = 0;
};

TransferReport complement_transfer_check(const RealProjectionFamily& family,
                                         int samples, std::uint64_t seed = 0,
                                         const Tolerance& tol = {});

/// The family of orthogonal complements, member by member.
template <typename Scalar>
ProjectionFamily<Scalar> complement_family(const ProjectionFamily<Scalar>& family,
                                           const Tolerance& tol = {});

}  // namespace framelift
