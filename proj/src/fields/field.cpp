#include "essmod/fields/field.hpp"

#include <algorithm>
#include <set>

#include "essmod/error.hpp"

namespace essmod::fields {

namespace {

void check_stop(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Error(ErrorCode::Cancelled, "operation interrupted");
}

bool in_span(const GMatrix& projector, const std::vector<GaussianRational>& v) {
  return projector.apply(v) == v;
}

SymbolicSubset as_subset(const Interval& iv) {
  return SymbolicSubset::interval(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed);
}

}  // namespace

SubspaceField::SubspaceField(std::size_t d, std::vector<std::pair<SymbolicSubset, GMatrix>> pieces) : d_(d) {
  if (d_ == 0) throw Error(ErrorCode::DimensionMismatch, "fiber dimension must be positive");
  SymbolicSubset covered;
  for (auto& [region, basis] : pieces) {
    if (region.empty()) continue;
    if (!covered.intersect(region).empty()) {
      throw Error(ErrorCode::PreconditionFailed, "partition pieces overlap at " + to_string(covered.intersect(region)));
    }
    covered = covered.unite(region);
    if (basis.cols() > 0 && basis.rows() != d_) {
      throw Error(ErrorCode::DimensionMismatch, "subspace basis must have d rows");
    }
    FieldPiece piece;
    piece.region = std::move(region);
    piece.basis = basis.cols() == 0 ? GMatrix(d_, 0) : std::move(basis);
    piece.projector = orthogonal_projector(piece.basis, d_);
    piece.rank = piece.basis.rank();
    if (!(piece.projector * piece.projector == piece.projector) || !(piece.projector.adjoint() == piece.projector)) {
      throw Error(ErrorCode::NotProjection, "computed projector is not an exact orthogonal projection");
    }
    pieces_.push_back(std::move(piece));
  }
  if (!(covered == SymbolicSubset::whole())) {
    throw Error(ErrorCode::PreconditionFailed, "partition does not cover [0,1]; covered " + to_string(covered));
  }
}

SubspaceField SubspaceField::full(std::size_t d) {
  return SubspaceField(d, {{SymbolicSubset::whole(), GMatrix::identity(d)}});
}

const FieldPiece& SubspaceField::piece_at(const Rational& x) const {
  for (const auto& p : pieces_) {
    if (p.region.contains(x)) return p;
  }
  throw Error(ErrorCode::OutOfRange, "point " + to_string(x) + " outside [0,1]");
}

bool SubspaceField::contains_at(const Rational& x, const std::vector<GaussianRational>& v) const {
  if (v.size() != d_) throw Error(ErrorCode::DimensionMismatch, "vector of wrong fiber dimension");
  return in_span(piece_at(x).projector, v);
}

SymbolicSubset SubspaceField::deficient_set() const {
  SymbolicSubset out;
  for (const auto& p : pieces_) {
    if (p.rank < d_) out = out.unite(p.region);
  }
  return out;
}

void FieldModuleSpec::validate() const {
  if (d == 0 || subfield.dim() != d) throw Error(ErrorCode::DimensionMismatch, "field and module dimensions differ");
  if (generators.empty()) throw Error(ErrorCode::PreconditionFailed, "need at least one generator");
  for (const auto& g : generators) {
    if (g.dim() != d) throw Error(ErrorCode::DimensionMismatch, "generator of wrong fiber dimension");
    if (g.is_zero()) throw Error(ErrorCode::PreconditionFailed, "generators must be nonzero");
    if (vanish_at_boundary) {
      for (const auto& z : g(Rational(0))) {
        if (!z.is_zero()) throw Error(ErrorCode::PreconditionFailed, "generator does not vanish at 0");
      }
      for (const auto& z : g(Rational(1))) {
        if (!z.is_zero()) throw Error(ErrorCode::PreconditionFailed, "generator does not vanish at 1");
      }
    }
  }
}

SymbolicSubset residual_set(const PiecewiseSection& m, const SubspaceField& field, std::stop_token stop) {
  if (m.dim() != field.dim()) throw Error(ErrorCode::DimensionMismatch, "section and field dimensions differ");
  const std::size_t d = m.dim();
  const auto& bps = m.breakpoints();
  SymbolicSubset out;
  for (const auto& piece : field.pieces()) {
    if (piece.rank == d) continue;
    for (std::size_t i = 0; i < m.piece_count(); ++i) {
      check_stop(stop);
      const auto cell = piece.region.intersect(SymbolicSubset::closed_interval(bps[i], bps[i + 1]));
      if (cell.empty()) continue;
      // (I - P) m on this cell
      const auto& coords = m.pieces()[i];
      std::vector<GPoly> residual;
      for (std::size_t r = 0; r < d; ++r) {
        GPoly acc = coords[r];
        for (std::size_t c = 0; c < d; ++c) {
          if (!piece.projector(r, c).is_zero()) acc -= coords[c] * piece.projector(r, c);
        }
        residual.push_back(std::move(acc));
      }
      for (const auto& comp : cell.components()) {
        if (comp.is_point()) {
          const bool off = std::any_of(residual.begin(), residual.end(),
                                       [&](const GPoly& r) { return !r(comp.lo).is_zero(); });
          if (off) out = out.unite(SymbolicSubset::point(comp.lo));
          continue;
        }
        const auto part = as_subset(comp);
        out = out.unite(part.minus(common_zero_set(residual, comp.lo, comp.hi)));
      }
    }
  }
  return out;
}

DefectReport total_defect_set(const FieldModuleSpec& spec, std::stop_token stop) {
  spec.validate();
  DefectReport report;
  for (const auto& g : spec.generators) {
    report.per_generator.push_back(residual_set(g, spec.subfield, stop));
    report.total = report.total.unite(report.per_generator.back());
  }
  report.direct = spec.subfield.deficient_set();
  report.matches_direct = report.total == report.direct;

  std::vector<Rational> grid{Rational(0), Rational(1)};
  for (const auto& g : spec.generators) grid = merge_grids(grid, g.breakpoints());
  for (const auto& piece : spec.subfield.pieces()) {
    for (const auto& iv : piece.region.components()) grid = merge_grids(grid, {iv.lo, iv.hi});
  }
  std::vector<Rational> probes = grid;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) probes.push_back((grid[i] + grid[i + 1]) / 2);
  for (const auto& x : probes) {
    check_stop(stop);
    if (report.total.contains(x)) continue;
    if (spec.vanish_at_boundary && (sgn(x) == 0 || x == 1)) continue;
    std::vector<std::vector<GaussianRational>> values;
    for (const auto& g : spec.generators) values.push_back(g(x));
    if (GMatrix::from_columns(spec.d, values).rank() < spec.d) {
      report.spanning_ok = false;
      report.failed_probes.push_back(x);
    }
  }
  return report;
}

FieldEssentiality is_essential_field(const FieldModuleSpec& spec, std::stop_token stop) {
  FieldEssentiality out;
  out.report = total_defect_set(spec, stop);
  if (!out.report.spanning_ok) {
    throw Error(ErrorCode::GeneratorsNotSpanning,
                "generators do not span the fiber at x = " + to_string(out.report.failed_probes.front()));
  }
  out.defect = out.report.total;
  out.essential = out.defect.is_nowhere_dense();
  return out;
}

EssentialWitness essential_witness(const PiecewiseSection& m, const SubspaceField& field) {
  if (m.is_zero()) throw Error(ErrorCode::ZeroInput, "essential_witness needs m != 0");
  EssentialWitness w;
  w.residual = residual_set(m, field);
  if (!w.residual.is_nowhere_dense()) {
    throw Error(ErrorCode::PreconditionFailed, "Y_m = " + to_string(w.residual) + " is not nowhere dense");
  }
  w.support = m.support_set();
  const auto room = w.support.minus(w.residual.closure());
  const Interval* best = nullptr;
  for (const auto& iv : room.components()) {
    if (iv.is_point()) continue;
    if (best == nullptr || iv.hi - iv.lo >= best->hi - best->lo) best = &iv;
  }
  if (best == nullptr) throw Error(ErrorCode::NoRoom, "Z_m minus closure(Y_m) has no interval");
  w.alpha = best->lo;
  w.beta = best->hi;
  w.a = PiecewiseSection::bump(w.alpha, w.beta);
  w.ma = m * w.a;
  w.ma_in_submodule = residual_set(w.ma, field).empty();
  w.ma_nonzero = !w.ma.is_zero();
  return w;
}

NonEssentialWitness non_essential_witness(const PiecewiseSection& m, const SubspaceField& field) {
  const auto residual = residual_set(m, field);
  const auto dense_region = residual.closure().interior();
  const Interval* window = nullptr;
  for (const auto& iv : dense_region.components()) {
    if (!iv.is_point()) {
      window = &iv;
      break;
    }
  }
  if (window == nullptr) {
    throw Error(ErrorCode::PreconditionFailed, "interior(closure(Y_m)) is empty for Y_m = " + to_string(residual));
  }
  NonEssentialWitness w;
  w.window = Interval{window->lo, window->hi, false, false};
  w.a = PiecewiseSection::bump(window->lo, window->hi);
  w.ma = m * w.a;
  w.ma_nonzero = !w.ma.is_zero();
  w.support = w.ma.support_set();
  w.residual = residual_set(w.ma, field);
  w.closure_equal = w.support.closure() == w.residual.closure();

  // Probe b: bumps on thirds of each component of Z_{ma}. m a b in N must force m a b = 0.
  w.probes_ok = true;
  const auto region = w.support.interior();
  for (const auto& iv : region.components()) {
    if (iv.is_point()) continue;
    const Rational step = (iv.hi - iv.lo) / 3;
    for (int i = 0; i < 3; ++i) {
      const auto b = PiecewiseSection::bump(iv.lo + step * i, iv.lo + step * (i + 1));
      const auto mab = w.ma * b;
      ++w.probe_count;
      if (residual_set(mab, field).empty() && !mab.is_zero()) w.probes_ok = false;
    }
  }
  w.probes_ok = w.probes_ok && w.probe_count > 0;
  return w;
}

std::vector<Rational> default_samples(const Interval& window, const SymbolicSubset& defect, std::size_t count) {
  std::vector<Rational> out;
  if (!(window.lo < window.hi)) throw Error(ErrorCode::PreconditionFailed, "sample window must have length");
  const Rational width = window.hi - window.lo;
  for (unsigned depth = 1; depth <= 20 && out.size() < count; ++depth) {
    const Rational step = width * pow2_neg(depth);
    const unsigned long cells = 1UL << depth;
    for (unsigned long i = 1; i < cells && out.size() < count; i += 2) {
      const Rational x = window.lo + step * static_cast<long>(i);
      if (defect.contains(x)) out.push_back(x);
    }
  }
  if (out.size() < count) throw Error(ErrorCode::SampleNotInDefect, "not enough dyadic samples inside Y");
  return out;
}

InductiveWitness inductive_witness_section(const FieldModuleSpec& spec, const Interval& window,
                                           std::optional<std::vector<Rational>> samples, std::size_t count) {
  const auto defect = total_defect_set(spec).total;
  if (!as_subset(window).is_subset_of(defect.closure()) || !(window.lo < window.hi)) {
    throw Error(ErrorCode::PreconditionFailed, "window is not an interval inside closure(Y)");
  }
  InductiveWitness w;
  if (samples) {
    w.samples = std::move(*samples);
    for (const auto& x : w.samples) {
      if (!defect.contains(x)) throw Error(ErrorCode::SampleNotInDefect, to_string(x) + " is not in Y");
    }
    const std::set<Rational> distinct(w.samples.begin(), w.samples.end());
    if (distinct.size() != w.samples.size()) throw Error(ErrorCode::PreconditionFailed, "samples must be distinct");
  } else {
    w.samples = default_samples(window, defect, count);
  }

  const std::size_t d = spec.d;
  std::vector<PiecewiseSection> terms;
  for (std::size_t j = 0; j < w.samples.size(); ++j) {
    const Rational& xj = w.samples[j];
    const GMatrix& projector = spec.subfield.piece_at(xj).projector;

    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < spec.generators.size(); ++k) {
      if (!in_span(projector, spec.generators[k](xj))) {
        pick = k;
        break;
      }
    }
    if (!pick) throw Error(ErrorCode::NoGeneratorDefect, "no generator leaves L at " + to_string(xj));
    const auto gj = spec.generators[*pick](xj);

    // Bump of height 1 at x_j, vanishing at the earlier samples (and at 0, 1).
    std::optional<Rational> radius;
    auto shrink = [&](const Rational& r) {
      if (sgn(r) > 0 && (!radius || r < *radius)) radius = r;
    };
    for (std::size_t i = 0; i < j; ++i) shrink(abs(xj - w.samples[i]));
    shrink(xj);
    shrink(Rational(1 - xj));
    const Rational r = radius.value_or(Rational(1, 2));
    auto bump = PiecewiseSection::bump(xj - r, xj + r, Rational(1 / (r * r)));

    std::vector<GaussianRational> partial(d);
    for (std::size_t i = 0; i < j; ++i) {
      const GaussianRational weight = GaussianRational(w.lambdas[i]) * w.bumps[i](xj)[0];
      const auto gi = spec.generators[w.picks[i]](xj);
      for (std::size_t c = 0; c < d; ++c) partial[c] += weight * gi[c];
    }
    auto candidate = [&](const Rational& lambda) {
      std::vector<GaussianRational> v = partial;
      for (std::size_t c = 0; c < d; ++c) v[c] += GaussianRational(lambda) * gj[c];
      return v;
    };
    // At most one lambda puts the partial sum into L, since g_{k_j}(x_j) is not in L.
    Rational lambda = pow2_neg(static_cast<unsigned>(j + 1));
    if (in_span(projector, candidate(lambda))) lambda = pow2_neg(static_cast<unsigned>(j + 2));

    w.picks.push_back(*pick);
    w.lambdas.push_back(lambda);
    terms.push_back(spec.generators[*pick] * bump * GaussianRational(lambda));
    w.bumps.push_back(std::move(bump));
  }

  w.m = PiecewiseSection::zero(d);
  for (const auto& t : terms) w.m = w.m + t;

  w.postcondition_ok = true;
  w.lambda_bounds_ok = true;
  for (std::size_t j = 0; j < w.samples.size(); ++j) {
    if (spec.subfield.contains_at(w.samples[j], w.m(w.samples[j]))) w.postcondition_ok = false;
    if (!(sgn(w.lambdas[j]) > 0 && w.lambdas[j] <= pow2_neg(static_cast<unsigned>(j + 1)))) w.lambda_bounds_ok = false;
  }

  const std::set<std::size_t> used(w.picks.begin(), w.picks.end());
  const bool normalized = std::all_of(used.begin(), used.end(), [&](std::size_t k) {
    return spec.generators[k].sup_norm_at_most(Rational(1));
  });
  if (normalized) {
    bool ok = true;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      ok = ok && terms[j].sup_norm_at_most(pow2_neg(static_cast<unsigned>(j + 1)));
    }
    w.term_bound_ok = ok;
  }
  try {
    w.residual_has_interior = !residual_set(w.m, spec.subfield).is_nowhere_dense();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IrrationalRoot) throw;
  }
  return w;
}

bool commutative_limit_identity(const PiecewiseSection& m, const PiecewiseSection& n) {
  if (m.dim() != n.dim()) throw Error(ErrorCode::DimensionMismatch, "sections of different dimension");
  return m * inner(n, n) == n * inner(n, m);
}

}  // namespace essmod::fields
