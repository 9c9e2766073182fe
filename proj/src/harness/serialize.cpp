#include "essmod/harness/serialize.hpp"

#include "essmod/error.hpp"

namespace essmod::harness {

using algebra::AlgebraElement;
using algebra::AlgebraShape;
using numeric::CMatrix;
using numeric::Complex;

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) schema_error(std::string(what) + " must be an array");
  return j;
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    schema_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    schema_error("complex entries are [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const Json& rows, std::size_t r, std::size_t c) {
  array(rows, "matrix");
  if (rows.size() != r) schema_error("matrix has wrong number of rows");
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) schema_error("matrix has wrong number of columns");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = complex_from_json(rows[i][j]);
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AlgebraElement> coords_from_json(const AlgebraShape& shape, const Json& j, std::size_t k) {
  array(j, "coords");
  if (j.size() != k) schema_error("coordinate count differs from k");
  std::vector<AlgebraElement> out;
  for (const auto& c : j) out.push_back(blocks_from_json(shape, c));
  return out;
}

Json coords_to_json(const algebra::ModuleElement& m) {
  Json out = Json::array();
  for (const auto& c : m.coords()) out.push_back(blocks_to_json(c));
  return out;
}

}  // namespace

void require_schema(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kSchema) {
    schema_error(std::string("document must carry \"schema\": \"") + kSchema + "\"");
  }
}

Json to_json(const AlgebraShape& shape) { return shape.block_dims(); }

AlgebraShape shape_from_json(const Json& j) {
  array(j, "shape");
  std::vector<std::size_t> dims;
  for (const auto& d : j) dims.push_back(count(d, "block dimension"));
  try {
    return AlgebraShape(std::move(dims));
  } catch (const Error& e) {
    schema_error(std::string("bad shape: ") + e.what());
  }
}

Json blocks_to_json(const AlgebraElement& a) {
  Json out = Json::array();
  for (const auto& b : a.blocks()) out.push_back(matrix_to_json(b));
  return out;
}

AlgebraElement blocks_from_json(const AlgebraShape& shape, const Json& j) {
  array(j, "blocks");
  if (j.size() != shape.block_count()) schema_error("block count differs from shape");
  std::vector<CMatrix> blocks;
  for (std::size_t i = 0; i < j.size(); ++i) {
    blocks.push_back(matrix_from_json(j[i], shape.block_dim(i), shape.block_dim(i)));
  }
  return AlgebraElement(shape, std::move(blocks));
}

Json to_json(const AlgebraElement& a) { return {{"shape", to_json(a.shape())}, {"blocks", blocks_to_json(a)}}; }

AlgebraElement element_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  return blocks_from_json(shape, field(j, "blocks"));
}

Json to_json(const algebra::RightIdeal& ideal, const std::vector<AlgebraElement>& generators) {
  Json gens = Json::array();
  for (const auto& g : generators) gens.push_back(blocks_to_json(g));
  return {{"shape", to_json(ideal.shape())},
          {"support_projection", blocks_to_json(ideal.support_projection())},
          {"generators", gens}};
}

std::vector<AlgebraElement> ideal_generators_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  std::vector<AlgebraElement> out;
  if (j.contains("generators")) {
    for (const auto& g : array(j["generators"], "generators")) out.push_back(blocks_from_json(shape, g));
  }
  return out;
}

algebra::RightIdeal ideal_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  const auto gens = ideal_generators_from_json(j);
  if (!gens.empty()) return algebra::ideal_support_projection(gens);
  try {
    return algebra::ideal_from_projection(blocks_from_json(shape, field(j, "support_projection")));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotProjection) schema_error(e.what());
    throw;
  }
}

Json to_json(const algebra::ModuleElement& m) {
  return {{"shape", to_json(m.shape())}, {"k", m.k()}, {"coords", coords_to_json(m)}};
}

algebra::ModuleElement module_element_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  const std::size_t k = count(field(j, "k"), "k");
  return algebra::ModuleElement(shape, coords_from_json(shape, field(j, "coords"), k));
}

Json to_json(const algebra::Submodule& n) {
  Json gens = Json::array();
  for (const auto& g : n.generators()) gens.push_back(coords_to_json(g));
  return {{"shape", to_json(n.shape())}, {"k", n.k()}, {"generators", gens}};
}

algebra::Submodule submodule_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  const std::size_t k = count(field(j, "k"), "k");
  if (k == 0) schema_error("k must be positive");
  std::vector<algebra::ModuleElement> gens;
  for (const auto& g : array(field(j, "generators"), "generators")) {
    gens.emplace_back(shape, coords_from_json(shape, g, k));
  }
  return algebra::Submodule(shape, k, std::move(gens));
}

Json to_json(const algebra::CompactOperator& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.k(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < t.k(); ++j) row.push_back(blocks_to_json(t.entry(i, j)));
    rows.push_back(std::move(row));
  }
  return {{"shape", to_json(t.shape())}, {"k", t.k()}, {"matrix", rows}};
}

algebra::CompactOperator operator_from_json(const Json& j) {
  const auto shape = shape_from_json(field(j, "shape"));
  const std::size_t k = count(field(j, "k"), "k");
  const auto& rows = array(field(j, "matrix"), "matrix");
  if (rows.size() != k) schema_error("operator matrix must be k x k");
  std::vector<AlgebraElement> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != k) schema_error("operator matrix must be k x k");
    for (const auto& e : row) entries.push_back(blocks_from_json(shape, e));
  }
  return algebra::CompactOperator(shape, k, std::move(entries));
}

Json to_json(const fields::GaussianRational& z) { return {fields::to_string(z.re), fields::to_string(z.im)}; }

fields::Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return fields::Rational(j.get<long>());
  if (!j.is_string()) schema_error("exact scalars are strings \"p/q\"");
  return fields::parse_rational(j.get<std::string>());
}

fields::GaussianRational gaussian_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return {rational_from_json(j[0]), rational_from_json(j[1])};
  return fields::GaussianRational(rational_from_json(j));
}

Json to_json(const fields::Interval& iv) {
  return {{"lo", fields::to_string(iv.lo)},
          {"hi", fields::to_string(iv.hi)},
          {"lo_closed", iv.lo_closed},
          {"hi_closed", iv.hi_closed}};
}

Json to_json(const fields::SymbolicSubset& s) {
  Json points = Json::array();
  Json intervals = Json::array();
  for (const auto& c : s.components()) {
    if (c.is_point()) {
      points.push_back(fields::to_string(c.lo));
    } else {
      intervals.push_back(to_json(c));
    }
  }
  return {{"points", points}, {"intervals", intervals}};
}

fields::SymbolicSubset subset_from_json(const Json& j) {
  std::vector<fields::Rational> points;
  std::vector<fields::Interval> intervals;
  if (j.contains("points")) {
    for (const auto& p : array(j["points"], "points")) points.push_back(rational_from_json(p));
  }
  if (j.contains("intervals")) {
    for (const auto& iv : array(j["intervals"], "intervals")) {
      const auto bool_at = [&](const char* key) {
        const auto& b = field(iv, key);
        if (!b.is_boolean()) schema_error(std::string(key) + " must be a boolean");
        return b.get<bool>();
      };
      intervals.push_back({rational_from_json(field(iv, "lo")), rational_from_json(field(iv, "hi")),
                           bool_at("lo_closed"), bool_at("hi_closed")});
    }
  }
  try {
    return fields::SymbolicSubset::from_pieces(points, std::move(intervals));
  } catch (const Error& e) {
    schema_error(std::string("bad subset: ") + e.what());
  }
}

Json to_json(const fields::PiecewiseSection& s) {
  Json breaks = Json::array();
  for (const auto& t : s.breakpoints()) breaks.push_back(fields::to_string(t));
  Json pieces = Json::array();
  for (const auto& piece : s.pieces()) {
    Json coords = Json::array();
    for (const auto& poly : piece) {
      Json coeffs = Json::array();
      for (const auto& c : poly.coeffs()) coeffs.push_back(to_json(c));
      coords.push_back(std::move(coeffs));
    }
    pieces.push_back(std::move(coords));
  }
  return {{"breakpoints", breaks}, {"pieces", pieces}};
}

fields::PiecewiseSection section_from_json(std::size_t d, const Json& j) {
  std::vector<fields::Rational> breaks;
  for (const auto& t : array(field(j, "breakpoints"), "breakpoints")) breaks.push_back(rational_from_json(t));
  std::vector<std::vector<fields::GPoly>> pieces;
  for (const auto& piece : array(field(j, "pieces"), "pieces")) {
    std::vector<fields::GPoly> coords;
    for (const auto& poly : array(piece, "piece")) {
      std::vector<fields::GaussianRational> coeffs;
      for (const auto& c : array(poly, "polynomial")) coeffs.push_back(gaussian_from_json(c));
      coords.emplace_back(std::move(coeffs));
    }
    pieces.push_back(std::move(coords));
  }
  try {
    return fields::PiecewiseSection(d, std::move(breaks), std::move(pieces));
  } catch (const Error& e) {
    schema_error(std::string("bad section: ") + e.what());
  }
}

Json to_json(const fields::FieldModuleSpec& spec) {
  Json partition = Json::array();
  Json bases = Json::array();
  for (const auto& piece : spec.subfield.pieces()) {
    partition.push_back(to_json(piece.region));
    Json cols = Json::array();
    for (std::size_t c = 0; c < piece.basis.cols(); ++c) {
      Json col = Json::array();
      for (const auto& z : piece.basis.column(c)) col.push_back(to_json(z));
      cols.push_back(std::move(col));
    }
    bases.push_back(std::move(cols));
  }
  Json gens = Json::array();
  for (const auto& g : spec.generators) gens.push_back(to_json(g));
  return {{"d", spec.d},
          {"partition", partition},
          {"subspace_bases", bases},
          {"generators", gens},
          {"vanish_at_boundary", spec.vanish_at_boundary}};
}

fields::FieldModuleSpec field_spec_from_json(const Json& j) {
  fields::FieldModuleSpec spec;
  spec.d = count(field(j, "d"), "d");
  if (spec.d == 0) schema_error("d must be positive");
  const auto& partition = array(field(j, "partition"), "partition");
  const auto& bases = array(field(j, "subspace_bases"), "subspace_bases");
  if (partition.size() != bases.size()) schema_error("partition and subspace_bases differ in length");
  std::vector<std::pair<fields::SymbolicSubset, fields::GMatrix>> pieces;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    std::vector<std::vector<fields::GaussianRational>> cols;
    for (const auto& col : array(bases[i], "subspace basis")) {
      std::vector<fields::GaussianRational> v;
      for (const auto& z : array(col, "basis vector")) v.push_back(gaussian_from_json(z));
      if (v.size() != spec.d) schema_error("basis vectors must have d entries");
      cols.push_back(std::move(v));
    }
    pieces.emplace_back(subset_from_json(partition[i]), fields::GMatrix::from_columns(spec.d, cols));
  }
  try {
    spec.subfield = fields::SubspaceField(spec.d, std::move(pieces));
  } catch (const Error& e) {
    schema_error(std::string("bad subspace field: ") + e.what());
  }
  for (const auto& g : array(field(j, "generators"), "generators")) {
    spec.generators.push_back(section_from_json(spec.d, g));
  }
  if (j.contains("vanish_at_boundary")) {
    if (!j["vanish_at_boundary"].is_boolean()) schema_error("vanish_at_boundary must be a boolean");
    spec.vanish_at_boundary = j["vanish_at_boundary"].get<bool>();
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    schema_error(std::string("inconsistent field spec: ") + e.what());
  }
  return spec;
}

}  // namespace essmod::harness
