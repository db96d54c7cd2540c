#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "framelift/angular.hpp"
#include "framelift/frames.hpp"
#include "framelift/geometry.hpp"
#include "framelift/retrieval.hpp"

// Text file formats: a family file describes vectors, subspaces, or weighted
// fusion families over R or C; complex numbers are always [re, im] pairs.
// Report serialization keeps every numeric field bit-reproducible for a
// fixed seed.

namespace framelift {

enum class FieldTag { Real, Complex };
enum class FamilyKind { Vectors, Subspaces, Fusion };

struct FamilyFile {
  FieldTag field = FieldTag::Real;
  Eigen::Index dim = 0;
  FamilyKind kind = FamilyKind::Vectors;

  // Payload for the matching (field, kind) combination; the others are empty.
  std::vector<RealVector> real_vectors;
  std::vector<ComplexVector> complex_vectors;
  std::vector<RealMatrix> real_bases;
  std::vector<ComplexMatrix> complex_bases;
  std::vector<double> weights;  // fusion kind only

  nlohmann::json metadata;  // free-form; may be null

  int entry_count() const;
};

FamilyFile family_from_json(const nlohmann::json& j);
nlohmann::json family_to_json(const FamilyFile& f);

FamilyFile load_family(const std::filesystem::path& path);
void save_family(const FamilyFile& f, const std::filesystem::path& path);

/// Subspace views of a family file (throws unless field/kind match and the
/// stored bases are orthonormal).
std::vector<RealSubspace> as_real_subspaces(const FamilyFile& f, const Tolerance& tol = {});
std::vector<ComplexSubspace> as_complex_subspaces(const FamilyFile& f,
                                                  const Tolerance& tol = {});

nlohmann::json real_vector_json(const RealVector& v);
nlohmann::json complex_vector_json(const ComplexVector& v);
nlohmann::json real_basis_json(const RealMatrix& basis);
nlohmann::json complex_basis_json(const ComplexMatrix& basis);

nlohmann::json tolerance_json(const Tolerance& t);
nlohmann::json check_report_json(const CheckReport& rep);
nlohmann::json angle_spectrum_json(const AngleSpectrum& s);

/// FNV-1a digest of raw file bytes, as a hex string.
std::string content_digest(const std::string& bytes);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace framelift
