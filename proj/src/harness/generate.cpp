#include "essmod/harness/generate.hpp"

#include <algorithm>
#include <set>

#include "essmod/error.hpp"
#include "essmod/numeric/linalg.hpp"

namespace essmod::harness {

using algebra::AlgebraElement;
using algebra::AlgebraShape;
using fields::GaussianRational;
using fields::GMatrix;
using fields::GPoly;
using fields::Rational;
using fields::SymbolicSubset;
using numeric::CMatrix;
using numeric::Complex;

Defect parse_defect(const std::string& text) {
  if (text == "none") return Defect::None;
  if (text == "points") return Defect::Points;
  if (text == "interval") return Defect::Interval;
  throw Error(ErrorCode::SchemaError, "defect must be none, points or interval");
}

std::string to_string(Defect d) {
  switch (d) {
    case Defect::None: return "none";
    case Defect::Points: return "points";
    case Defect::Interval: return "interval";
  }
  return "none";
}

AlgebraShape random_shape(CounterRng& rng, std::size_t max_blocks, std::size_t max_dim) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_blocks))));
  for (auto& n : dims) n = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_dim)));
  return AlgebraShape(std::move(dims));
}

AlgebraElement random_element(const AlgebraShape& shape, CounterRng& rng) {
  std::vector<CMatrix> blocks;
  for (std::size_t n : shape.block_dims()) {
    CMatrix m(n, n);
    for (auto& z : m.entries()) z = rng.complex_uniform();
    blocks.push_back(std::move(m));
  }
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement random_hermitian(const AlgebraShape& shape, CounterRng& rng) {
  const auto x = random_element(shape, rng);
  return (x + x.adjoint()) * Complex(0.5);
}

namespace {

CMatrix random_range_projector(std::size_t n, std::size_t r, CounterRng& rng) {
  std::vector<std::vector<Complex>> cols(r, std::vector<Complex>(n));
  for (auto& c : cols) {
    for (auto& z : c) z = rng.complex_uniform();
  }
  return numeric::projector_onto(numeric::orthonormal_basis(cols, n));
}

}  // namespace

AlgebraElement random_projection(const AlgebraShape& shape, CounterRng& rng) {
  std::vector<CMatrix> blocks;
  for (std::size_t n : shape.block_dims()) {
    const auto r = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n)));
    blocks.push_back(random_range_projector(n, r, rng));
  }
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement random_low_rank(const AlgebraShape& shape, CounterRng& rng) {
  const auto forced = static_cast<std::size_t>(rng.integer(0, static_cast<long>(shape.block_count()) - 1));
  std::vector<CMatrix> blocks;
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const std::size_t n = shape.block_dim(b);
    const auto r = static_cast<std::size_t>(rng.integer(b == forced ? 1 : 0, static_cast<long>(n)));
    CMatrix left(n, r);
    CMatrix right(r, n);
    for (auto& z : left.entries()) z = rng.complex_uniform();
    for (auto& z : right.entries()) z = rng.complex_uniform();
    blocks.push_back(r == 0 ? CMatrix(n, n) : left * right);
  }
  return AlgebraElement(shape, std::move(blocks));
}

algebra::ModuleElement random_module_element(const AlgebraShape& shape, std::size_t k, CounterRng& rng) {
  std::vector<AlgebraElement> coords;
  for (std::size_t i = 0; i < k; ++i) coords.push_back(random_element(shape, rng));
  return algebra::ModuleElement(shape, std::move(coords));
}

algebra::Submodule random_submodule(const AlgebraShape& shape, std::size_t k, CounterRng& rng,
                                    std::size_t max_generators) {
  const auto count = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_generators)));
  std::vector<algebra::ModuleElement> gens;
  for (std::size_t i = 0; i < count; ++i) {
    auto g = random_module_element(shape, k, rng);
    if (rng.coin()) g = g * random_projection(shape, rng);
    gens.push_back(std::move(g));
  }
  return algebra::Submodule(shape, k, std::move(gens));
}

Rational random_unit_rational(CounterRng& rng, long denominator) {
  Rational q(rng.integer(1, denominator - 1), denominator);
  q.canonicalize();
  return q;
}

GaussianRational random_gaussian(CounterRng& rng) {
  const long den = rng.integer(1, 4);
  Rational re(rng.integer(-3, 3), den);
  Rational im(rng.integer(-3, 3), den);
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

namespace {

std::vector<Rational> random_grid(std::size_t pieces, CounterRng& rng) {
  std::set<Rational> inner;
  while (inner.size() + 1 < pieces) inner.insert(random_unit_rational(rng, 64));
  std::vector<Rational> grid{Rational(0)};
  grid.insert(grid.end(), inner.begin(), inner.end());
  grid.emplace_back(1);
  return grid;
}

// Linear interpolation between v0 at t0 and v1 at t1, plus c (x - t0)(t1 - x).
GPoly segment(const Rational& t0, const Rational& t1, const GaussianRational& v0, const GaussianRational& v1,
              const GaussianRational& c) {
  const GaussianRational slope = (v1 - v0) / GaussianRational(Rational(t1 - t0));
  const GaussianRational c0 = v0 - slope * GaussianRational(t0) - c * GaussianRational(Rational(t0 * t1));
  const GaussianRational c1 = slope + c * GaussianRational(Rational(t0 + t1));
  const GaussianRational c2 = -c;
  return GPoly({c0, c1, c2});
}

}  // namespace

fields::PiecewiseSection random_section(std::size_t d, std::size_t pieces, CounterRng& rng) {
  const auto grid = random_grid(pieces, rng);
  std::vector<std::vector<GaussianRational>> values(grid.size(), std::vector<GaussianRational>(d));
  for (auto& row : values) {
    for (auto& v : row) v = random_gaussian(rng);
  }
  std::vector<std::vector<GPoly>> polys;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    std::vector<GPoly> coords;
    for (std::size_t c = 0; c < d; ++c) {
      const GaussianRational curve = rng.coin() ? random_gaussian(rng) : GaussianRational();
      coords.push_back(segment(grid[i], grid[i + 1], values[i][c], values[i + 1][c], curve));
    }
    polys.push_back(std::move(coords));
  }
  return fields::PiecewiseSection(d, grid, std::move(polys));
}

fields::PiecewiseSection random_scalar(std::size_t pieces, CounterRng& rng) {
  const auto grid = random_grid(pieces, rng);
  std::vector<GaussianRational> values(grid.size());
  for (auto& v : values) {
    Rational q(rng.integer(0, 8), 8);
    q.canonicalize();
    v = GaussianRational(q);
  }
  std::vector<std::vector<GPoly>> polys;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    polys.push_back({segment(grid[i], grid[i + 1], values[i], values[i + 1], GaussianRational())});
  }
  return fields::PiecewiseSection(1, grid, std::move(polys));
}

namespace {

GMatrix random_proper_basis(std::size_t d, CounterRng& rng) {
  const auto r = static_cast<std::size_t>(rng.integer(0, static_cast<long>(d) - 1));
  std::vector<std::vector<GaussianRational>> cols(r, std::vector<GaussianRational>(d));
  for (auto& c : cols) {
    for (auto& z : c) z = random_gaussian(rng);
  }
  return GMatrix::from_columns(d, cols);
}

FieldInstance attempt_field(std::size_t d, std::size_t pieces, std::size_t generators, Defect defect,
                            CounterRng& rng) {
  FieldInstance inst;
  std::vector<std::pair<SymbolicSubset, GMatrix>> regions;
  SymbolicSubset planted;
  auto plant = [&](const SymbolicSubset& region) {
    regions.emplace_back(region, random_proper_basis(d, rng));
    planted = planted.unite(region);
  };
  if (defect == Defect::Interval) {
    Rational lo = random_unit_rational(rng, 16);
    Rational hi = random_unit_rational(rng, 16);
    while (hi == lo) hi = random_unit_rational(rng, 16);
    if (hi < lo) std::swap(lo, hi);
    plant(SymbolicSubset::interval(lo, hi, rng.coin(), rng.coin()));
  }
  if (defect != Defect::None) {
    const long points = defect == Defect::Points ? rng.integer(1, 3) : rng.integer(0, 2);
    for (long i = 0; i < points; ++i) {
      const Rational x = random_unit_rational(rng, 64);
      if (!planted.contains(x)) plant(SymbolicSubset::point(x));
    }
  }
  regions.emplace_back(SymbolicSubset::whole().minus(planted), GMatrix::identity(d));

  inst.spec.d = d;
  inst.spec.subfield = fields::SubspaceField(d, std::move(regions));
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<GaussianRational> e(d);
    e[i] = GaussianRational(1L);
    inst.spec.generators.push_back(fields::PiecewiseSection::constant(e));
  }
  for (std::size_t i = d; i < generators; ++i) inst.spec.generators.push_back(random_section(d, pieces, rng));
  inst.planted = planted;
  inst.expected_essential = defect != Defect::Interval;
  return inst;
}

}  // namespace

FieldInstance random_field_instance(std::size_t d, std::size_t pieces, std::size_t generators, Defect defect,
                                    CounterRng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto inst = attempt_field(d, pieces, generators, defect, rng);
    try {
      (void)fields::total_defect_set(inst.spec);
      return inst;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrrationalRoot) throw;
    }
  }
  throw Error(ErrorCode::PreconditionFailed, "could not generate a field instance with rational defect boundary");
}

void check_caps(const GenOptions& opts) {
  auto cap = [](const char* what, std::size_t value, std::size_t limit, std::size_t floor) {
    if (value < floor || value > limit) {
      throw Error(ErrorCode::SizeCap, std::string(what) + " = " + std::to_string(value) + " outside [" +
                                          std::to_string(floor) + ", " + std::to_string(limit) + "]");
    }
  };
  if (opts.blocks.empty()) throw Error(ErrorCode::SizeCap, "need at least one block");
  for (std::size_t n : opts.blocks) cap("block dimension", n, kMaxBlockDim, 1);
  cap("k", opts.k, kMaxK, 1);
  cap("d", opts.d, kMaxD, 1);
  cap("pieces", opts.pieces, kMaxPieces, 1);
  cap("generators", opts.generators, kMaxGenerators, 1);
}

Json generate_instance(const GenOptions& opts) {
  check_caps(opts);
  auto rng = CounterRng::stream(opts.seed, opts.kind);
  Json doc{{"schema", kSchema}, {"kind", opts.kind}, {"seed", opts.seed}};
  if (opts.kind == "right_ideal") {
    const AlgebraShape shape(opts.blocks);
    const auto p = random_projection(shape, rng);
    std::vector<AlgebraElement> gens;
    for (std::size_t i = 0; i < opts.generators; ++i) gens.push_back(p * random_element(shape, rng));
    doc["params"] = {{"blocks", opts.blocks}, {"generators", opts.generators}};
    doc["payload"] = to_json(algebra::ideal_support_projection(gens), gens);
  } else if (opts.kind == "module_submodule") {
    const AlgebraShape shape(opts.blocks);
    doc["params"] = {{"blocks", opts.blocks}, {"k", opts.k}, {"generators", opts.generators}};
    doc["payload"] = to_json(random_submodule(shape, opts.k, rng, opts.generators));
  } else if (opts.kind == "field") {
    const auto inst = random_field_instance(opts.d, opts.pieces, std::max(opts.generators, opts.d), opts.defect, rng);
    doc["params"] = {{"d", opts.d},
                     {"pieces", opts.pieces},
                     {"generators", std::max(opts.generators, opts.d)},
                     {"defect", to_string(opts.defect)}};
    doc["payload"] = to_json(inst.spec);
    doc["expected"] = {{"essential", inst.expected_essential}, {"planted", to_json(inst.planted)}};
  } else {
    throw Error(ErrorCode::SchemaError, "kind must be right_ideal, module_submodule or field");
  }
  return doc;
}

}  // namespace essmod::harness
