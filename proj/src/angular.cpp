#include "framelift/angular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace framelift {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

AngleSpectrum cluster_values(std::vector<double> values, double width) {
  AngleSpectrum out;
  out.cluster_width = width;
  out.min_gap = std::numeric_limits<double>::infinity();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());

  std::vector<double> sums;
  std::vector<int> counts;
  std::vector<double> cluster_min, cluster_max;
  double prev = values.front();
  sums.push_back(0.0);
  counts.push_back(0);
  cluster_min.push_back(prev);
  cluster_max.push_back(prev);
  for (double v : values) {
    if (v - prev >= width) {
      sums.push_back(0.0);
      counts.push_back(0);
      cluster_min.push_back(v);
      cluster_max.push_back(v);
    }
    sums.back() += v;
    counts.back() += 1;
    cluster_max.back() = v;
    prev = v;
  }
  for (std::size_t k = 1; k < sums.size(); ++k) {
    out.min_gap = std::min(out.min_gap, cluster_min[k] - cluster_max[k - 1]);
  }
  // descending levels
  for (std::size_t k = sums.size(); k-- > 0;) {
    out.levels.push_back(sums[k] / counts[k]);
    out.multiplicities.push_back(counts[k]);
  }
  out.gap_warning = sums.size() > 1 && out.min_gap < 10.0 * width;
  return out;
}

}  // namespace

MubFamily mub_construct(int p, const Tolerance& tol) {
  if (!is_prime(p)) {
    throw std::invalid_argument("mub_construct: p must be prime");
  }
  if (p > 101) {
    throw std::invalid_argument("mub_construct: p > 101 refused");
  }

  MubFamily family;
  family.dim = p;
  family.bases.push_back(ComplexMatrix::Identity(p, p));

  if (p == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix hadamard(2, 2);
    hadamard << Complex(s, 0), Complex(s, 0), Complex(s, 0), Complex(-s, 0);
    ComplexMatrix circular(2, 2);
    circular << Complex(s, 0), Complex(s, 0), Complex(0, s), Complex(0, -s);
    family.bases.push_back(hadamard);
    family.bases.push_back(circular);
  } else {
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (int k = 0; k < p; ++k) {
      ComplexMatrix basis(p, p);
      for (int j = 0; j < p; ++j) {
        for (int l = 0; l < p; ++l) {
          const long long e =
              (static_cast<long long>(k) * l * l + static_cast<long long>(j) * l) % p;
          basis(l, j) = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(e) / p);
        }
      }
      family.bases.push_back(std::move(basis));
    }
  }

  const MubVerification check = verify_mub(family.bases, tol);
  if (check.worst_deviation >= 1e-10) {
    throw std::logic_error("mub_construct: construction failed overlap verification");
  }
  return family;
}

MubVerification verify_mub(const std::vector<ComplexMatrix>& bases, const Tolerance& tol) {
  if (bases.empty()) throw std::invalid_argument("verify_mub: no bases");
  const Eigen::Index n = bases.front().rows();
  MubVerification out;
  for (const auto& b : bases) {
    if (b.rows() != n || b.cols() != n) {
      throw std::invalid_argument("verify_mub: bases must be square of a common dimension");
    }
    ComplexMatrix gram = b.adjoint() * b;
    gram -= ComplexMatrix::Identity(n, n);
    out.worst_deviation = std::max(out.worst_deviation, gram.cwiseAbs().maxCoeff());
  }
  const double target = 1.0 / static_cast<double>(n);
  for (std::size_t a = 0; a < bases.size(); ++a) {
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      const ComplexMatrix overlaps = bases[a].adjoint() * bases[b];
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          const double dev = std::abs(std::norm(overlaps(i, j)) - target);
          out.worst_deviation = std::max(out.worst_deviation, dev);
        }
      }
    }
  }
  out.ok = out.worst_deviation <= tol.eq;
  return out;
}

MubTransfer transfer_mub(const MubFamily& family, const Tolerance& tol) {
  const MubVerification check = verify_mub(family.bases, tol);
  if (!check.ok) {
    throw std::invalid_argument("transfer_mub: input fails MUB verification");
  }
  const double cross_target = 2.0 / static_cast<double>(family.dim);

  MubTransfer out;
  for (const auto& basis : family.bases) {
    std::vector<RankTwoProjection> set;
    set.reserve(static_cast<std::size_t>(family.dim));
    for (Eigen::Index j = 0; j < family.dim; ++j) {
      set.push_back(rank2(basis.col(j), tol));
    }
    out.projections.push_back(std::move(set));
  }
  for (std::size_t a = 0; a < out.projections.size(); ++a) {
    const auto& set_a = out.projections[a];
    for (std::size_t i = 0; i < set_a.size(); ++i) {
      for (std::size_t j = i + 1; j < set_a.size(); ++j) {
        const double t = trace_pairing(set_a[i], set_a[j]);
        out.max_within_deviation = std::max(out.max_within_deviation, std::abs(t));
      }
      for (std::size_t b = a + 1; b < out.projections.size(); ++b) {
        for (const auto& q : out.projections[b]) {
          const double t = trace_pairing(set_a[i], q);
          out.max_cross_deviation =
              std::max(out.max_cross_deviation, std::abs(t - cross_target));
        }
      }
    }
  }
  out.verified = out.max_within_deviation <= 1e-10 && out.max_cross_deviation <= 1e-10;
  return out;
}

template <typename Scalar>
AngleSpectrum angle_spectrum_vectors(
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& vectors,
    double cluster_width, const Tolerance& tol) {
  if (vectors.size() < 2) {
    throw std::invalid_argument("angle_spectrum_vectors: need at least two vectors");
  }
  for (const auto& v : vectors) {
    if (std::abs(v.norm() - 1.0) > tol.eq) {
      throw std::invalid_argument("angle_spectrum_vectors: vectors must have unit norm");
    }
  }
  std::vector<double> values;
  values.reserve(vectors.size() * (vectors.size() - 1) / 2);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      values.push_back(std::abs(vectors[j].dot(vectors[i])));
    }
  }
  return cluster_values(std::move(values), cluster_width);
}

template <typename Scalar>
AngleSpectrum angle_spectrum_projections(const std::vector<Subspace<Scalar>>& subspaces,
                                         double cluster_width) {
  if (subspaces.size() < 2) {
    throw std::invalid_argument("angle_spectrum_projections: need at least two subspaces");
  }
  const Eigen::Index n = subspaces.front().ambient_dim();
  std::vector<double> values;
  values.reserve(subspaces.size() * (subspaces.size() - 1) / 2);
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (subspaces[i].ambient_dim() != n) {
      throw std::invalid_argument("angle_spectrum_projections: mixed ambient dimensions");
    }
    for (std::size_t j = i + 1; j < subspaces.size(); ++j) {
      values.push_back(projection_trace_product(subspaces[i], subspaces[j]));
    }
  }
  return cluster_values(std::move(values), cluster_width);
}

KAngularTransfer transfer_kangular(const ComplexFrame& frame, double cluster_width,
                                   const Tolerance& tol) {
  if (!frame.unit_norm) {
    throw std::invalid_argument("transfer_kangular: frame must be unit norm");
  }
  if (!frame.tight) {
    throw std::invalid_argument("transfer_kangular: frame must be tight");
  }
  KAngularTransfer out;
  out.fusion = lift_frame_to_fusion(frame, tol);
  out.vector_spectrum = angle_spectrum_vectors(frame.vectors, cluster_width, tol);
  out.projection_spectrum = angle_spectrum_projections(out.fusion.subspaces, cluster_width);
  out.levels_match = out.vector_spectrum.count() == out.projection_spectrum.count();
  if (out.levels_match) {
    for (int k = 0; k < out.vector_spectrum.count(); ++k) {
      const double alpha = out.vector_spectrum.levels[static_cast<std::size_t>(k)];
      const double expected = 2.0 * alpha * alpha;
      const double dev =
          std::abs(out.projection_spectrum.levels[static_cast<std::size_t>(k)] - expected);
      out.max_level_deviation = std::max(out.max_level_deviation, dev);
    }
    out.levels_match = out.max_level_deviation <= 1e-10;
  }
  return out;
}

template AngleSpectrum angle_spectrum_vectors(const std::vector<RealVector>&, double,
                                              const Tolerance&);
template AngleSpectrum angle_spectrum_vectors(const std::vector<ComplexVector>&, double,
                                              const Tolerance&);
template AngleSpectrum angle_spectrum_projections(const std::vector<RealSubspace>&, double);
template AngleSpectrum angle_spectrum_projections(const std::vector<ComplexSubspace>&, double);

}  // namespace framelift
