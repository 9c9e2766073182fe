#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "essmod/algebra/cstar.hpp"
#include "essmod/algebra/hilbert.hpp"
#include "essmod/fields/field.hpp"
#include "essmod/harness/rng.hpp"
#include "essmod/harness/serialize.hpp"

namespace essmod::harness {

inline constexpr std::size_t kMaxBlockDim = 6;
inline constexpr std::size_t kMaxK = 4;
inline constexpr std::size_t kMaxD = 4;
inline constexpr std::size_t kMaxPieces = 16;
inline constexpr std::size_t kMaxGenerators = 8;

enum class Defect { None, Points, Interval };
Defect parse_defect(const std::string& text);
std::string to_string(Defect d);

// Random objects. Complex entries are uniform in the unit square.
algebra::AlgebraShape random_shape(CounterRng& rng, std::size_t max_blocks = 3, std::size_t max_dim = 4);
algebra::AlgebraElement random_element(const algebra::AlgebraShape& shape, CounterRng& rng);
algebra::AlgebraElement random_hermitian(const algebra::AlgebraShape& shape, CounterRng& rng);
/// Orthogonal projection of uniformly random rank in [0, n] per block.
algebra::AlgebraElement random_projection(const algebra::AlgebraShape& shape, CounterRng& rng);
/// Nonzero element of random rank per block (at least one block has rank >= 1).
algebra::AlgebraElement random_low_rank(const algebra::AlgebraShape& shape, CounterRng& rng);
algebra::ModuleElement random_module_element(const algebra::AlgebraShape& shape, std::size_t k, CounterRng& rng);
/// Between 1 and max_generators generators, each cut down by a random projection half the time.
algebra::Submodule random_submodule(const algebra::AlgebraShape& shape, std::size_t k, CounterRng& rng,
                                    std::size_t max_generators = 4);

fields::Rational random_unit_rational(CounterRng& rng, long denominator);
fields::GaussianRational random_gaussian(CounterRng& rng);
/// Continuous piecewise polynomial section of degree <= 2 on `pieces` pieces.
fields::PiecewiseSection random_section(std::size_t d, std::size_t pieces, CounterRng& rng);
/// Scalar section with values in [0, 1] on `pieces` pieces.
fields::PiecewiseSection random_scalar(std::size_t pieces, CounterRng& rng);

struct FieldInstance {
  fields::FieldModuleSpec spec;
  bool expected_essential = true;
  fields::SymbolicSubset planted;  // where L_x was made proper
};

/// Generators are the d constant unit sections plus `generators - d` random ones.
/// Retries (same stream) until Y has only rational boundary points.
FieldInstance random_field_instance(std::size_t d, std::size_t pieces, std::size_t generators, Defect defect,
                                    CounterRng& rng);

struct GenOptions {
  std::string kind = "field";
  std::vector<std::size_t> blocks{2, 3};
  std::size_t k = 2;
  std::size_t d = 2;
  std::size_t pieces = 4;
  std::size_t generators = 3;
  Defect defect = Defect::None;
  std::uint64_t seed = 0;
};

/// Throws SizeCap when a size parameter exceeds its cap.
void check_caps(const GenOptions& opts);

/// Instance document {schema, kind, seed, params, payload[, expected]}.
Json generate_instance(const GenOptions& opts);

}  // namespace essmod::harness
