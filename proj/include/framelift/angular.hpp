#pragma once

#include <vector>

#include "framelift/frames.hpp"
#include "framelift/geometry.hpp"
#include "framelift/realify.hpp"

// Mutually unbiased bases, their rank-2 projection transfers, and k-angular
// classification of vector frames and projection families.

namespace framelift {

/// A family of orthonormal bases of C^n with all cross-basis overlaps
/// |<e_i, e_j'>|^2 = 1/n. Each basis is stored as a unitary matrix whose
/// columns are the basis vectors.
struct MubFamily {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> bases;

  int count() const { return static_cast<int>(bases.size()); }
};

struct MubVerification {
  bool ok = false;
  double worst_deviation = 0.0;
};

/// For a prime p, the standard basis of C^p plus p bases with entries
/// omega^(k l^2 + j l)/sqrt(p) (p odd; p = 2 uses the explicit three-basis
/// family). The result is verified to deviation < 1e-10 before returning,
/// giving p + 1 mutually unbiased bases.
MubFamily mub_construct(int p, const Tolerance& tol = {});

/// Checks within-basis orthonormality and all cross-basis overlaps, and
/// reports the worst deviation seen.
MubVerification verify_mub(const std::vector<ComplexMatrix>& bases,
                           const Tolerance& tol = {});

/// Rank-2 projection transfer of a MUB family: within one basis the pairwise
/// trace pairings vanish, across bases they all equal 2/n.
struct MubTransfer {
  std::vector<std::vector<RankTwoProjection>> projections;  // one set per basis
  double max_within_deviation = 0.0;
  double max_cross_deviation = 0.0;
  bool verified = false;
};

MubTransfer transfer_mub(const MubFamily& family, const Tolerance& tol = {});

/// Clustered multiset of pairwise angle values. Levels are strictly
/// decreasing; multiplicities sum to the number of unordered pairs.
/// `gap_warning` is set when the smallest inter-cluster gap is within a
/// factor 10 of the cluster width, i.e. the classification is fragile.
struct AngleSpectrum {
  std::vector<double> levels;
  std::vector<int> multiplicities;
  double cluster_width = 0.0;
  double min_gap = 0.0;
  bool gap_warning = false;

  int count() const { return static_cast<int>(levels.size()); }
  bool equiangular() const { return count() == 1; }
  bool biangular() const { return count() == 2; }
};

/// Spectrum of {|<v_i, v_j>| : i < j} for unit vectors.
template <typename Scalar>
AngleSpectrum angle_spectrum_vectors(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    double cluster_width = 1e-6, const Tolerance& tol = {});

/// Spectrum of {tr(P_i P_j) : i < j} for a family of subspaces.
template <typename Scalar>
AngleSpectrum angle_spectrum_projections(const std::vector<Subspace<Scalar>>& subspaces,
                                         double cluster_width = 1e-6);

/// Lifts a unit-norm tight complex frame to a tight fusion frame and checks
/// that the projection spectrum levels equal 2 x (vector levels)^2 with the
/// same cluster count.
struct KAngularTransfer {
  RealFusionFrame fusion;
  AngleSpectrum vector_spectrum;
  AngleSpectrum projection_spectrum;
  bool levels_match = false;
  double max_level_deviation = 0.0;
};

KAngularTransfer transfer_kangular(const ComplexFrame& frame,
                                   double cluster_width = 1e-6,
                                   const Tolerance& tol = {});

}  // namespace framelift
