#include "framelift/rng.hpp"

namespace framelift {

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 substream(std::uint64_t root, std::string_view name,
                          std::uint64_t index) {
  const std::uint64_t tag = fnv1a(name);
  std::seed_seq seq{
      static_cast<std::uint32_t>(root), static_cast<std::uint32_t>(root >> 32),
      static_cast<std::uint32_t>(tag),  static_cast<std::uint32_t>(tag >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

RealVector random_unit_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealVector v(dim);
  do {
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = gauss(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

ComplexVector random_complex_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

ComplexVector random_unit_complex_vector(std::mt19937_64& rng, Eigen::Index dim) {
  ComplexVector v;
  do {
    v = random_complex_vector(rng, dim);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

RealSubspace random_real_subspace(std::mt19937_64& rng, Eigen::Index ambient,
                                  Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  RealMatrix g(ambient, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < ambient; ++i) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  return RealSubspace(q.leftCols(dim));
}

ComplexSubspace random_complex_subspace(std::mt19937_64& rng, Eigen::Index ambient,
                                        Eigen::Index dim) {
  ComplexMatrix g(ambient, dim);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < ambient; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  return ComplexSubspace(q.leftCols(dim));
}

ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  return random_complex_subspace(rng, dim, dim).basis();
}

}  // namespace framelift
