#pragma once

// JSON file formats. Doubles are written in the shortest form that reads back
// to the identical bit pattern.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mingeo/curves.hpp"

namespace mingeo::io {

using Json = nlohmann::ordered_json;

enum class MatrixKind { Hermitian, Unitary, Positive, Projection, General };

constexpr std::string_view to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::Hermitian: return "hermitian";
    case MatrixKind::Unitary: return "unitary";
    case MatrixKind::Positive: return "positive";
    case MatrixKind::Projection: return "projection";
    case MatrixKind::General: return "general";
  }
  return "?";
}

inline MatrixKind parse_kind(std::string_view text) {
  for (MatrixKind k : {MatrixKind::Hermitian, MatrixKind::Unitary, MatrixKind::Positive, MatrixKind::Projection,
                       MatrixKind::General}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown matrix kind '" + std::string(text) + "'");
}

inline MatrixKind kind_of(SpaceTag s) {
  switch (s) {
    case SpaceTag::Hermitian: return MatrixKind::Hermitian;
    case SpaceTag::Unitary: return MatrixKind::Unitary;
    case SpaceTag::Positive: return MatrixKind::Positive;
    case SpaceTag::Grassmann: return MatrixKind::Projection;
  }
  return MatrixKind::General;
}

/// Row-major n x n array of [re, im] pairs.
inline Json entries_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix entries_from_json(const Json& rows, Index n) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw Error(ErrorCode::ParseError, "entries must be an array of " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const Json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Index j = 0; j < n; ++j) {
      const Json& z = row[static_cast<size_t>(j)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw Error(ErrorCode::ParseError, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not [re, im]");
      }
      m(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

/// Throws the matching validation error when m violates the kind invariant.
inline void validate_kind(MatrixKind kind, const Matrix& m) {
  switch (kind) {
    case MatrixKind::Hermitian: (void)HermitianMatrix(m); return;
    case MatrixKind::Unitary: (void)UnitaryMatrix(m); return;
    case MatrixKind::Positive: (void)PositiveDefiniteMatrix(m); return;
    case MatrixKind::Projection: (void)OrthogonalProjection(m); return;
    case MatrixKind::General: require_square(m, "matrix"); return;
  }
}

struct MatrixFile {
  MatrixKind kind = MatrixKind::General;
  Matrix matrix;
};

inline Json to_json(const MatrixFile& f) {
  Json j;
  j["n"] = f.matrix.rows();
  j["kind"] = std::string(to_string(f.kind));
  j["entries"] = entries_to_json(f.matrix);
  return j;
}

inline MatrixFile matrix_file_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("kind") || !j.contains("entries")) {
    throw Error(ErrorCode::ParseError, "matrix file needs n, kind and entries");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) throw Error(ErrorCode::ParseError, "n must be a positive integer");
  if (!j["kind"].is_string()) throw Error(ErrorCode::ParseError, "kind must be a string");
  MatrixFile f;
  f.kind = parse_kind(j["kind"].get<std::string>());
  f.matrix = entries_from_json(j["entries"], static_cast<Index>(j["n"].get<long long>()));
  validate_kind(f.kind, f.matrix);
  return f;
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, origin + ": " + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

inline MatrixFile load_matrix(const std::string& path) { return matrix_file_from_json(parse_json_text(read_text(path), path)); }

inline void save_matrix(const std::string& path, const MatrixFile& f) { write_text(path, to_json(f).dump(2) + "\n"); }

struct CurveFile {
  SampledCurve curve;
  SchattenIndex p_norm = SchattenIndex::inf();
  Json metadata = Json::object();
};

inline Json to_json(const CurveFile& f) {
  Json j;
  j["space"] = std::string(to_string(f.curve.space));
  j["p_norm"] = f.p_norm.str();
  j["grid"] = f.curve.grid;
  Json mats = Json::array();
  for (const Matrix& m : f.curve.points) mats.push_back(entries_to_json(m));
  j["matrices"] = std::move(mats);
  j["metadata"] = f.metadata;
  return j;
}

inline CurveFile curve_file_from_json(const Json& j) {
  for (const char* key : {"space", "p_norm", "grid", "matrices"}) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("curve file misses '") + key + "'");
  }
  CurveFile f;
  try {
    f.curve.space = parse_space(j["space"].get<std::string>());
    f.p_norm = SchattenIndex::parse(j["p_norm"].get<std::string>());
    f.curve.grid = j["grid"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  const Json& mats = j["matrices"];
  if (!mats.is_array() || mats.empty()) throw Error(ErrorCode::ParseError, "matrices must be a non-empty array");
  const Index n = static_cast<Index>(mats[0].size());
  for (const Json& m : mats) f.curve.points.push_back(entries_from_json(m, n));
  if (j.contains("metadata")) f.metadata = j["metadata"];
  try {
    require_curve_shape(f.curve);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  for (size_t k = 0; k < f.curve.points.size(); ++k) {
    try {
      require_point(f.curve.space, f.curve.points[k], tol::kRepairFactor);
    } catch (const Error& e) {
      throw Error(ErrorCode::OffSpacePoint, "node " + std::to_string(k) + ": " + e.what());
    }
  }
  return f;
}

inline CurveFile load_curve(const std::string& path) { return curve_file_from_json(parse_json_text(read_text(path), path)); }

inline void save_curve(const std::string& path, const CurveFile& f) { write_text(path, to_json(f).dump(1) + "\n"); }

}  // namespace mingeo::io
