#include "framelift/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "framelift/rng.hpp"

namespace framelift {

namespace {

using nlohmann::json;

double finite_number(const json& j, const char* where) {
  if (!j.is_number()) {
    throw std::runtime_error(std::string("family file: expected a number in ") + where);
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string("family file: non-finite entry in ") + where);
  }
  return v;
}

RealVector parse_real_vector(const json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw std::runtime_error("family file: vector length does not match dim");
  }
  RealVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = finite_number(j[static_cast<std::size_t>(i)], "vector");
  }
  return v;
}

ComplexVector parse_complex_vector(const json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    throw std::runtime_error("family file: vector length does not match dim");
  }
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2) {
      throw std::runtime_error("family file: complex entries must be [re, im] pairs");
    }
    v(i) = Complex(finite_number(e[0], "complex entry"), finite_number(e[1], "complex entry"));
  }
  return v;
}

RealMatrix parse_real_basis(const json& j, Eigen::Index dim) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("family file: basis must be a nonempty list of vectors");
  }
  RealMatrix basis(dim, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = parse_real_vector(j[c], dim);
  }
  return basis;
}

ComplexMatrix parse_complex_basis(const json& j, Eigen::Index dim) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("family file: basis must be a nonempty list of vectors");
  }
  ComplexMatrix basis(dim, static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = parse_complex_vector(j[c], dim);
  }
  return basis;
}

}  // namespace

int FamilyFile::entry_count() const {
  switch (kind) {
    case FamilyKind::Vectors:
      return static_cast<int>(field == FieldTag::Real ? real_vectors.size()
                                                      : complex_vectors.size());
    case FamilyKind::Subspaces:
    case FamilyKind::Fusion:
      return static_cast<int>(field == FieldTag::Real ? real_bases.size()
                                                      : complex_bases.size());
  }
  return 0;
}

FamilyFile family_from_json(const nlohmann::json& j) {
  FamilyFile f;
  if (!j.is_object()) throw std::runtime_error("family file: root must be an object");

  const std::string field = j.value("field", std::string());
  if (field == "R") {
    f.field = FieldTag::Real;
  } else if (field == "C") {
    f.field = FieldTag::Complex;
  } else {
    throw std::runtime_error("family file: field must be \"R\" or \"C\"");
  }

  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw std::runtime_error("family file: missing integer dim");
  }
  f.dim = j["dim"].get<Eigen::Index>();
  if (f.dim < 1) throw std::runtime_error("family file: dim must be positive");

  const std::string kind = j.value("kind", std::string());
  if (kind == "vectors") {
    f.kind = FamilyKind::Vectors;
  } else if (kind == "subspaces") {
    f.kind = FamilyKind::Subspaces;
  } else if (kind == "fusion") {
    f.kind = FamilyKind::Fusion;
  } else {
    throw std::runtime_error("family file: kind must be vectors, subspaces, or fusion");
  }

  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty()) {
    throw std::runtime_error("family file: entries must be a nonempty array");
  }
  for (const json& entry : j["entries"]) {
    switch (f.kind) {
      case FamilyKind::Vectors:
        if (f.field == FieldTag::Real) {
          f.real_vectors.push_back(parse_real_vector(entry, f.dim));
        } else {
          f.complex_vectors.push_back(parse_complex_vector(entry, f.dim));
        }
        break;
      case FamilyKind::Subspaces:
        if (f.field == FieldTag::Real) {
          f.real_bases.push_back(parse_real_basis(entry, f.dim));
        } else {
          f.complex_bases.push_back(parse_complex_basis(entry, f.dim));
        }
        break;
      case FamilyKind::Fusion: {
        if (!entry.is_object() || !entry.contains("weight") || !entry.contains("basis")) {
          throw std::runtime_error("family file: fusion entries need weight and basis");
        }
        const double w = finite_number(entry["weight"], "weight");
        if (!(w > 0.0)) throw std::runtime_error("family file: weights must be positive");
        f.weights.push_back(w);
        if (f.field == FieldTag::Real) {
          f.real_bases.push_back(parse_real_basis(entry["basis"], f.dim));
        } else {
          f.complex_bases.push_back(parse_complex_basis(entry["basis"], f.dim));
        }
        break;
      }
    }
  }
  if (j.contains("metadata")) f.metadata = j["metadata"];
  return f;
}

nlohmann::json real_vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

nlohmann::json complex_vector_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  }
  return out;
}

nlohmann::json real_basis_json(const RealMatrix& basis) {
  json out = json::array();
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    out.push_back(real_vector_json(basis.col(c)));
  }
  return out;
}

nlohmann::json complex_basis_json(const ComplexMatrix& basis) {
  json out = json::array();
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    out.push_back(complex_vector_json(basis.col(c)));
  }
  return out;
}

nlohmann::json family_to_json(const FamilyFile& f) {
  json j;
  j["field"] = (f.field == FieldTag::Real) ? "R" : "C";
  j["dim"] = f.dim;
  json entries = json::array();
  switch (f.kind) {
    case FamilyKind::Vectors:
      j["kind"] = "vectors";
      if (f.field == FieldTag::Real) {
        for (const auto& v : f.real_vectors) entries.push_back(real_vector_json(v));
      } else {
        for (const auto& v : f.complex_vectors) entries.push_back(complex_vector_json(v));
      }
      break;
    case FamilyKind::Subspaces:
      j["kind"] = "subspaces";
      if (f.field == FieldTag::Real) {
        for (const auto& b : f.real_bases) entries.push_back(real_basis_json(b));
      } else {
        for (const auto& b : f.complex_bases) entries.push_back(complex_basis_json(b));
      }
      break;
    case FamilyKind::Fusion:
      j["kind"] = "fusion";
      for (std::size_t i = 0; i < f.weights.size(); ++i) {
        json entry;
        entry["weight"] = f.weights[i];
        entry["basis"] = (f.field == FieldTag::Real)
                             ? real_basis_json(f.real_bases[i])
                             : complex_basis_json(f.complex_bases[i]);
        entries.push_back(std::move(entry));
      }
      break;
  }
  j["entries"] = std::move(entries);
  if (!f.metadata.is_null()) j["metadata"] = f.metadata;
  return j;
}

FamilyFile load_family(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("family file: invalid JSON: ") + e.what());
  }
  return family_from_json(j);
}

void save_family(const FamilyFile& f, const std::filesystem::path& path) {
  write_text_file(path, family_to_json(f).dump(2) + "\n");
}

std::vector<RealSubspace> as_real_subspaces(const FamilyFile& f, const Tolerance& tol) {
  if (f.field != FieldTag::Real) {
    throw std::runtime_error("family file: expected a real family");
  }
  std::vector<RealSubspace> out;
  if (f.kind == FamilyKind::Vectors) {
    for (const auto& v : f.real_vectors) {
      const double n = v.norm();
      if (n <= tol.eq) throw std::runtime_error("family file: zero vector");
      RealMatrix basis(v.size(), 1);
      basis.col(0) = v / n;
      out.emplace_back(std::move(basis), tol);
    }
  } else {
    for (const auto& b : f.real_bases) out.emplace_back(b, tol);
  }
  return out;
}

std::vector<ComplexSubspace> as_complex_subspaces(const FamilyFile& f, const Tolerance& tol) {
  if (f.field != FieldTag::Complex) {
    throw std::runtime_error("family file: expected a complex family");
  }
  std::vector<ComplexSubspace> out;
  if (f.kind == FamilyKind::Vectors) {
    for (const auto& v : f.complex_vectors) {
      const double n = v.norm();
      if (n <= tol.eq) throw std::runtime_error("family file: zero vector");
      ComplexMatrix basis(v.size(), 1);
      basis.col(0) = v / n;
      out.emplace_back(std::move(basis), tol);
    }
  } else {
    for (const auto& b : f.complex_bases) out.emplace_back(b, tol);
  }
  return out;
}

nlohmann::json tolerance_json(const Tolerance& t) {
  return json{{"rank", t.rank}, {"ortho", t.ortho}, {"eq", t.eq}};
}

nlohmann::json check_report_json(const CheckReport& rep) {
  json j;
  j["verdict"] = to_string(rep.verdict);
  j["samples_used"] = rep.samples_used;
  j["restarts_used"] = rep.restarts_used;
  j["seed"] = rep.seed;
  j["residual"] = rep.residual;
  if (rep.witness_x) j["witness_x"] = real_vector_json(*rep.witness_x);
  if (rep.witness_y) j["witness_y"] = real_vector_json(*rep.witness_y);
  if (rep.witness_cx) j["witness_cx"] = complex_vector_json(*rep.witness_cx);
  if (rep.witness_cy) j["witness_cy"] = complex_vector_json(*rep.witness_cy);
  if (rep.deficient_span_dim) j["deficient_span_dim"] = *rep.deficient_span_dim;
  if (rep.violating_subset) j["violating_subset"] = *rep.violating_subset;
  if (rep.min_sampled_span_dim >= 0) j["min_sampled_span_dim"] = rep.min_sampled_span_dim;
  if (rep.max_lift_ortho > 0.0) j["max_lift_ortho"] = rep.max_lift_ortho;
  j["spotcheck_ok"] = rep.spotcheck_ok;
  return j;
}

nlohmann::json angle_spectrum_json(const AngleSpectrum& s) {
  json j;
  j["levels"] = s.levels;
  j["multiplicities"] = s.multiplicities;
  j["cluster_width"] = s.cluster_width;
  j["count"] = s.count();
  if (std::isfinite(s.min_gap)) j["min_gap"] = s.min_gap;
  j["gap_warning"] = s.gap_warning;
  return j;
}

std::string content_digest(const std::string& bytes) {
  const std::uint64_t h = fnv1a(bytes);
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  out << content;
}

}  // namespace framelift
