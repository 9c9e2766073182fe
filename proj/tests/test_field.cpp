#include <doctest.h>

#include <optional>
#include <stop_token>

#include "essmod/error.hpp"
#include "essmod/fields/field.hpp"
#include "essmod/harness/generate.hpp"
#include "essmod/harness/rng.hpp"

using namespace essmod;
using namespace essmod::fields;
using S = SymbolicSubset;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

GaussianRational g(long re, long den = 1) { return GaussianRational(q(re, den)); }

GPoly gp(std::vector<GaussianRational> c) { return GPoly(std::move(c)); }

GMatrix cols(std::size_t d, std::vector<std::vector<GaussianRational>> c) { return GMatrix::from_columns(d, c); }

GMatrix none(std::size_t d) { return GMatrix(d, 0); }

PiecewiseSection constant(std::vector<GaussianRational> v) { return PiecewiseSection::constant(v); }

// Field equal to span(basis) on `region` and C^d elsewhere.
SubspaceField defect_on(std::size_t d, const S& region, const GMatrix& basis) {
  std::vector<std::pair<S, GMatrix>> pieces;
  if (!region.empty()) pieces.emplace_back(region, basis);
  const auto rest = region.complement();
  if (!rest.empty()) pieces.emplace_back(rest, GMatrix::identity(d));
  return SubspaceField(d, pieces);
}

FieldModuleSpec standard_spec(std::size_t d, SubspaceField field) {
  FieldModuleSpec spec;
  spec.d = d;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<GaussianRational> e(d, g(0));
    e[i] = g(1);
    spec.generators.push_back(constant(e));
  }
  spec.subfield = std::move(field);
  return spec;
}

std::optional<ErrorCode> code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

const Interval kWhole{q(0), q(1), true, true};

}  // namespace

TEST_CASE("subspace field partition checks") {
  CHECK(code_of([] { (void)SubspaceField(1, {{S::closed_interval(q(0), q(1, 2)), GMatrix::identity(1)}}); }) ==
        ErrorCode::PreconditionFailed);
  CHECK(code_of([] {
          (void)SubspaceField(1, {{S::closed_interval(q(0), q(1, 2)), GMatrix::identity(1)},
                                  {S::closed_interval(q(1, 2), q(1)), GMatrix::identity(1)}});
        }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([] { (void)SubspaceField(2, {{S::whole(), GMatrix::identity(3)}}); }) == ErrorCode::DimensionMismatch);

  const auto f = defect_on(2, S::open_interval(q(3, 10), q(2, 5)), cols(2, {{g(0), g(1)}}));
  CHECK(f.deficient_set() == S::open_interval(q(3, 10), q(2, 5)));
  CHECK(f.piece_at(q(7, 20)).rank == 1);
  CHECK(f.contains_at(q(7, 20), {g(0), g(5)}));
  CHECK_FALSE(f.contains_at(q(7, 20), {g(1), g(0)}));
  CHECK(f.contains_at(q(1, 2), {g(1), g(0)}));
}

TEST_CASE("residual set examples") {
  // d = 1, L = 0 on [0, 1/2], m = x.
  const auto f1 = defect_on(1, S::closed_interval(q(0), q(1, 2)), none(1));
  const auto x = PiecewiseSection::polynomial({gp({g(0), g(1)})});
  CHECK(residual_set(x, f1) == S::interval(q(0), q(1, 2), false, true));

  // d = 2, L = span(e1) everywhere, m = (x, x - 1/2).
  const SubspaceField f2(2, {{S::whole(), cols(2, {{g(1), g(0)}})}});
  const auto m = PiecewiseSection::polynomial({gp({g(0), g(1)}), gp({g(-1, 2), g(1)})});
  CHECK(residual_set(m, f2) == S::whole().minus(S::point(q(1, 2))));

  CHECK(code_of([&] { (void)residual_set(PiecewiseSection::zero(3), f2); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("residual set honours cancellation") {
  std::stop_source src;
  src.request_stop();
  const auto f = defect_on(1, S::closed_interval(q(0), q(1, 2)), none(1));
  CHECK(code_of([&] { (void)residual_set(constant({g(1)}), f, src.get_token()); }) == ErrorCode::Cancelled);
}

TEST_CASE("essentiality criterion") {
  const GMatrix e1 = cols(2, {{g(1), g(0)}});
  const auto points = S::from_pieces({q(1, 4), q(1, 2), q(3, 4)}, {});
  const auto ess = is_essential_field(standard_spec(2, defect_on(2, points, e1)));
  CHECK(ess.essential);
  CHECK(ess.defect == points);
  CHECK(ess.report.matches_direct);

  const auto gap = S::open_interval(q(3, 10), q(2, 5));
  const auto non = is_essential_field(standard_spec(2, defect_on(2, gap, e1)));
  CHECK_FALSE(non.essential);
  CHECK(non.defect == gap);
  CHECK(non.report.per_generator.size() == 2);
  CHECK(non.report.per_generator[0].empty());
  CHECK(non.report.per_generator[1] == gap);

  auto thin = standard_spec(2, SubspaceField::full(2));
  thin.generators.pop_back();
  CHECK(code_of([&] { (void)is_essential_field(thin); }) == ErrorCode::GeneratorsNotSpanning);
}

TEST_CASE("essential witness") {
  const auto f = defect_on(1, S::point(q(1, 2)), none(1));
  const auto w = essential_witness(constant({g(1)}), f);
  CHECK(w.residual == S::point(q(1, 2)));
  CHECK(w.alpha >= q(1, 2));
  CHECK(w.beta <= q(1));
  CHECK(w.a.support_set().is_subset_of(S::interval(q(1, 2), q(1), false, true)));
  CHECK(w.ma_in_submodule);
  CHECK(w.ma_nonzero);
  CHECK(residual_set(w.ma, f).empty());

  // m vanishes on [0, 1/2], L is defective on (0, 1/4).
  const PiecewiseSection m(1, {q(0), q(1, 2), q(1)}, {{gp({g(0)})}, {gp({g(-1, 2), g(1)})}});
  const auto f2 = defect_on(1, S::open_interval(q(0), q(1, 4)), none(1));
  const auto w2 = essential_witness(m, f2);
  CHECK(w2.support == S::interval(q(1, 2), q(1), false, true));
  CHECK(w2.residual.empty());
  CHECK(w2.alpha >= q(1, 2));
  CHECK(w2.ma_in_submodule);
  CHECK(w2.ma_nonzero);

  CHECK(code_of([] { (void)essential_witness(PiecewiseSection::zero(1), SubspaceField::full(1)); }) ==
        ErrorCode::ZeroInput);
  CHECK(code_of([] {
          (void)essential_witness(constant({g(1)}), defect_on(1, S::open_interval(q(0), q(1, 2)), none(1)));
        }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("non-essential witness") {
  const GMatrix e2 = cols(2, {{g(0), g(1)}});
  const auto gap = S::open_interval(q(3, 10), q(2, 5));
  const auto w = non_essential_witness(constant({g(1), g(0)}), defect_on(2, gap, e2));
  CHECK(S::interval(w.window.lo, w.window.hi, w.window.lo_closed, w.window.hi_closed).is_subset_of(gap));
  CHECK(w.ma_nonzero);
  CHECK(w.closure_equal);
  CHECK(w.support.closure() == w.residual.closure());
  CHECK(w.probe_count > 0);
  CHECK(w.probes_ok);

  const auto x0 = PiecewiseSection::polynomial({gp({g(0), g(1)}), gp({g(0)})});
  const auto w2 = non_essential_witness(x0, defect_on(2, S::open_interval(q(0), q(1)), e2));
  CHECK(w2.ma_nonzero);
  CHECK(w2.closure_equal);
  CHECK(w2.probes_ok);

  CHECK(code_of([] {
          (void)non_essential_witness(constant({g(1)}), defect_on(1, S::point(q(1, 2)), none(1)));
        }) == ErrorCode::PreconditionFailed);
}

TEST_CASE("inductive witness: single sample") {
  const auto spec = standard_spec(1, defect_on(1, S::open_interval(q(3, 10), q(2, 5)), none(1)));
  const Interval window{q(3, 10), q(2, 5), false, false};
  const auto w = inductive_witness_section(spec, window, std::nullopt, 1);
  REQUIRE(w.samples.size() == 1);
  CHECK(window.contains(w.samples[0]));
  CHECK(w.lambdas[0] == q(1, 2));
  CHECK(w.postcondition_ok);
  CHECK(w.lambda_bounds_ok);
  CHECK_FALSE(spec.subfield.contains_at(w.samples[0], w.m(w.samples[0])));
}

TEST_CASE("inductive witness: shared generator halves each step") {
  const auto spec = standard_spec(1, defect_on(1, S::open_interval(q(3, 10), q(2, 5)), none(1)));
  const Interval window{q(3, 10), q(2, 5), false, false};
  const auto w = inductive_witness_section(spec, window, std::nullopt, 8);
  REQUIRE(w.samples.size() == 8);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(w.picks[j] == 0);
    CHECK(w.lambdas[j] == q(1, 1L << (j + 1)));
    CHECK(window.contains(w.samples[j]));
  }
  CHECK(w.postcondition_ok);
  CHECK(w.lambda_bounds_ok);
  REQUIRE(w.term_bound_ok.has_value());
  CHECK(*w.term_bound_ok);
  REQUIRE(w.residual_has_interior.has_value());
  CHECK(*w.residual_has_interior);
}

TEST_CASE("inductive witness: a bad lambda is halved") {
  // L = span(2, 3) on [0, 3/8), span(e1) on [3/8, 1]; generators e1, e2.
  // Sample 1/2 picks e2 with lambda 1/2 and a bump of value 3/4 at 1/4. At
  // 1/4 the partial sum is (0, 3/8), so lambda = 1/4 on e1 lands in L.
  const SubspaceField f(2, {{S::interval(q(0), q(3, 8), true, false), cols(2, {{g(2), g(3)}})},
                            {S::closed_interval(q(3, 8), q(1)), cols(2, {{g(1), g(0)}})}});
  const auto spec = standard_spec(2, f);
  const auto w = inductive_witness_section(spec, kWhole, std::vector<Rational>{q(1, 2), q(1, 4)}, 2);
  REQUIRE(w.lambdas.size() == 2);
  CHECK(w.picks == std::vector<std::size_t>{1, 0});
  CHECK(w.lambdas[0] == q(1, 2));
  CHECK(w.lambdas[1] == q(1, 8));
  CHECK(w.bumps[0](q(1, 4))[0] == g(3, 4));
  CHECK(w.postcondition_ok);
  CHECK(w.lambda_bounds_ok);
}

TEST_CASE("inductive witness preconditions") {
  const auto spec = standard_spec(1, defect_on(1, S::open_interval(q(3, 10), q(2, 5)), none(1)));
  CHECK(code_of([&] { (void)inductive_witness_section(spec, kWhole, std::nullopt, 2); }) ==
        ErrorCode::PreconditionFailed);
  const Interval window{q(3, 10), q(2, 5), false, false};
  CHECK(code_of([&] { (void)inductive_witness_section(spec, window, std::vector<Rational>{q(1, 2)}, 1); }) ==
        ErrorCode::SampleNotInDefect);
  CHECK(code_of([&] { (void)default_samples(window, S::point(q(1, 3)), 1); }) == ErrorCode::SampleNotInDefect);
  const auto dyadic = default_samples(kWhole, S::whole(), 3);
  CHECK(dyadic == std::vector<Rational>{q(1, 2), q(1, 4), q(3, 4)});
}

TEST_CASE("commutative identity") {
  const auto m = PiecewiseSection::polynomial({gp({g(1), g(1)}), gp({g(0), g(-2)})});
  const auto x = PiecewiseSection::polynomial({gp({g(0), g(1)})});
  CHECK(commutative_limit_identity(m, m));
  CHECK(commutative_limit_identity(m, m * x));
  CHECK(commutative_limit_identity(m, m * GaussianRational(q(1, 3), q(-2))));
  CHECK_FALSE(commutative_limit_identity(constant({g(1), g(0)}), constant({g(0), g(1)})));

  harness::CounterRng rng{11, 0};
  for (int t = 0; t < 20; ++t) {
    const auto mm = harness::random_section(2, 3, rng);
    const auto c = harness::random_scalar(3, rng);
    CHECK(commutative_limit_identity(mm, mm * c));
  }
}

TEST_CASE("random instances decide their planted truth") {
  harness::CounterRng rng{2024, 0};
  for (auto defect : {harness::Defect::None, harness::Defect::Points, harness::Defect::Interval}) {
    for (int t = 0; t < 10; ++t) {
      const auto inst = harness::random_field_instance(2, 4, 3, defect, rng);
      const auto res = is_essential_field(inst.spec);
      CHECK(res.essential == inst.expected_essential);
      CHECK(inst.planted.is_subset_of(res.defect));
      CHECK(res.report.matches_direct);
      CHECK(res.defect.interior() == res.report.direct.interior());
    }
  }
}
