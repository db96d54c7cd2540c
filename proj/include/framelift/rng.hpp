#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "framelift/geometry.hpp"

// Seeded randomness. Every stochastic routine in the library draws from a
// named substream derived from one root seed, so runs are reproducible and
// independent loops can be reordered without changing results.

namespace framelift {

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 1469598103934665603ull);

/// Deterministic substream: (root seed, stream name, index) -> generator.
std::mt19937_64 substream(std::uint64_t root, std::string_view name,
                          std::uint64_t index = 0);

RealVector random_unit_vector(std::mt19937_64& rng, Eigen::Index dim);
ComplexVector random_complex_vector(std::mt19937_64& rng, Eigen::Index dim);
ComplexVector random_unit_complex_vector(std::mt19937_64& rng, Eigen::Index dim);

/// Uniform-ish random d-dimensional subspace (QR of a Gaussian matrix).
RealSubspace random_real_subspace(std::mt19937_64& rng, Eigen::Index ambient,
                                  Eigen::Index dim);
ComplexSubspace random_complex_subspace(std::mt19937_64& rng, Eigen::Index ambient,
                                        Eigen::Index dim);

/// Random unitary matrix (QR of a complex Gaussian matrix).
ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index dim);

}  // namespace framelift
