#pragma once
// Continuous fields over X = [0, 1] with constant fibers H_x = C^d. A closed
// submodule N of M = C([0, 1], C^d) is given by a field of subspaces L_x,
// piecewise constant on a finite rational partition:
//   N = { m : m(x) in L_x for every x }.
// Everything here is exact; nothing is decided up to a tolerance.

#include <optional>
#include <stop_token>
#include <utility>
#include <vector>

#include "essmod/fields/exact_matrix.hpp"
#include "essmod/fields/section.hpp"
#include "essmod/fields/subset.hpp"

namespace essmod::fields {

struct FieldPiece {
  SymbolicSubset region;
  GMatrix basis;      // d x r spanning matrix of L_x on the region
  GMatrix projector;  // exact orthogonal projector onto its column span
  std::size_t rank = 0;
};

class SubspaceField {
 public:
  /// Regions must partition [0, 1]; throws PreconditionFailed otherwise and
  /// DimensionMismatch for bases with the wrong number of rows.
  SubspaceField(std::size_t d, std::vector<std::pair<SymbolicSubset, GMatrix>> pieces);

  /// L_x = C^d everywhere.
  static SubspaceField full(std::size_t d);

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] const std::vector<FieldPiece>& pieces() const noexcept { return pieces_; }
  [[nodiscard]] const FieldPiece& piece_at(const Rational& x) const;
  [[nodiscard]] bool contains_at(const Rational& x, const std::vector<GaussianRational>& v) const;
  /// {x : L_x != C^d}, read off the partition.
  [[nodiscard]] SymbolicSubset deficient_set() const;

 private:
  std::size_t d_;
  std::vector<FieldPiece> pieces_;
};

/// The module data: finitely many generating sections of M and the field L.
struct FieldModuleSpec {
  std::size_t d = 0;
  std::vector<PiecewiseSection> generators;
  SubspaceField subfield = SubspaceField::full(1);
  /// Restrict to sections vanishing at 0 and 1 (emulates X = (0, 1)).
  bool vanish_at_boundary = false;

  /// Throws DimensionMismatch / PreconditionFailed on inconsistent data.
  void validate() const;
};

/// Y_m = {x : m(x) not in L_x}. Throws DimensionMismatch, IrrationalRoot,
/// Cancelled (checked between pieces).
SymbolicSubset residual_set(const PiecewiseSection& m, const SubspaceField& field,
                            std::stop_token stop = {});

struct DefectReport {
  SymbolicSubset total;                     // union of the generator residual sets
  std::vector<SymbolicSubset> per_generator;
  SymbolicSubset direct;                    // {x : L_x != C^d} from the partition
  bool matches_direct = false;
  bool spanning_ok = true;                  // generators span C^d at every probe outside Y
  std::vector<Rational> failed_probes;
};

DefectReport total_defect_set(const FieldModuleSpec& spec, std::stop_token stop = {});

struct FieldEssentiality {
  bool essential = false;
  SymbolicSubset defect;  // Y
  DefectReport report;
};

/// N is essential iff Y is nowhere dense. Throws GeneratorsNotSpanning when
/// the generators do not span the fiber at some probe point outside Y.
FieldEssentiality is_essential_field(const FieldModuleSpec& spec, std::stop_token stop = {});

struct EssentialWitness {
  Rational alpha;
  Rational beta;
  PiecewiseSection a = PiecewiseSection::zero(1);
  PiecewiseSection ma = PiecewiseSection::zero(1);
  SymbolicSubset support;   // Z_m
  SymbolicSubset residual;  // Y_m
  bool ma_in_submodule = false;
  bool ma_nonzero = false;
};

/// For nowhere dense Y_m: a bump a supported in Z_m minus closure(Y_m) with
/// m a in N and m a != 0. Throws ZeroInput, PreconditionFailed, NoRoom.
EssentialWitness essential_witness(const PiecewiseSection& m, const SubspaceField& field);

struct NonEssentialWitness {
  Interval window;  // U' inside interior(closure(Y_m))
  PiecewiseSection a = PiecewiseSection::zero(1);
  PiecewiseSection ma = PiecewiseSection::zero(1);
  SymbolicSubset support;   // Z_{ma}
  SymbolicSubset residual;  // Y_{ma}
  bool ma_nonzero = false;
  bool closure_equal = false;  // closure(Z_{ma}) == closure(Y_{ma})
  std::size_t probe_count = 0;
  bool probes_ok = false;      // every probe b with m a b in N has m a b = 0
};

/// For Y_m with dense-in-an-interval closure: the cyclic submodule (m a)A
/// meets N trivially. Throws PreconditionFailed when interior(closure(Y_m)) is empty.
NonEssentialWitness non_essential_witness(const PiecewiseSection& m, const SubspaceField& field);

struct InductiveWitness {
  PiecewiseSection m = PiecewiseSection::zero(1);
  std::vector<Rational> samples;
  std::vector<Rational> lambdas;
  std::vector<std::size_t> picks;  // generator index k_j per sample
  std::vector<PiecewiseSection> bumps;
  bool postcondition_ok = false;   // m(x_j) not in L_{x_j} for every j
  bool lambda_bounds_ok = false;   // 0 < lambda_j <= 2^-j
  std::optional<bool> term_bound_ok;           // sup |lambda_j g a_j| <= 2^-j, when generators have sup norm <= 1
  std::optional<bool> residual_has_interior;   // absent if Y_m has an irrational boundary point
};

/// Dyadic points of `window` in breadth-first order, keeping the first
/// `count` that lie in `defect`. Throws SampleNotInDefect if fewer exist
/// down to depth 20.
std::vector<Rational> default_samples(const Interval& window, const SymbolicSubset& defect, std::size_t count);

/// Builds m = sum_j lambda_j g_{k_j} a_j with m(x_j) not in L_{x_j} for all
/// samples. `window` must lie in closure(Y). Throws PreconditionFailed,
/// SampleNotInDefect, NoGeneratorDefect.
InductiveWitness inductive_witness_section(const FieldModuleSpec& spec, const Interval& window,
                                           std::optional<std::vector<Rational>> samples, std::size_t count);

/// m <n, n> == n <n, m> as exact sections.
bool commutative_limit_identity(const PiecewiseSection& m, const PiecewiseSection& n);

}  // namespace essmod::fields
