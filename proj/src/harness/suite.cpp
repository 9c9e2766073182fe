#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>

#include "essmod/error.hpp"
#include "essmod/harness/commands.hpp"
#include "essmod/numeric/kernels.hpp"
#include "essmod/numeric/linalg.hpp"

namespace essmod::harness {

using algebra::AlgebraElement;
using algebra::AlgebraShape;
using algebra::ModuleElement;
using fields::Rational;
using fields::SymbolicSubset;
using numeric::CMatrix;
using numeric::Complex;

namespace {

using Outcome = std::optional<std::string>;  // failure description
using PropertyFn = std::function<Outcome(CounterRng&, const SuiteOptions&)>;

struct Property {
  std::string name;
  PropertyFn run;
};

Outcome fail_if(bool bad, const std::string& what) { return bad ? Outcome(what) : std::nullopt; }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CMatrix random_square(std::size_t n, CounterRng& rng) {
  CMatrix m(n, n);
  for (auto& z : m.entries()) z = rng.complex_uniform();
  return m;
}

CMatrix random_hermitian_matrix(std::size_t n, CounterRng& rng, double scale = 1.0) {
  const auto m = random_square(n, rng);
  CMatrix h = m + m.adjoint();
  h *= Complex(0.5 * scale);
  return h;
}

std::size_t small_dim(CounterRng& rng, long max = 6) { return static_cast<std::size_t>(rng.integer(1, max)); }

AlgebraElement normalized_hermitian(const AlgebraShape& shape, CounterRng& rng) {
  auto h = random_hermitian(shape, rng);
  const double n = h.norm();
  return n > 0 ? h * Complex(1.0 / n) : h;
}

// Polynomial with random real coefficients in [-1, 1], degree <= 3.
std::vector<double> random_poly(CounterRng& rng) {
  std::vector<double> c(static_cast<std::size_t>(rng.integer(1, 4)));
  for (auto& x : c) x = rng.uniform(-1.0, 1.0);
  return c;
}

double eval_poly(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// ---- numeric_kernel ----

Outcome eig_reconstruction(CounterRng& rng, const SuiteOptions&) {
  const auto a = random_hermitian_matrix(small_dim(rng, 8), rng);
  const auto eig = numeric::herm_eig(a);
  const auto rebuilt = eig.vectors * CMatrix::diagonal(eig.eigenvalues) * eig.vectors.adjoint();
  const double err = numeric::op_norm(rebuilt - a);
  return fail_if(err > 1e-10 * (1.0 + numeric::op_norm(a)), "reconstruction error " + num(err));
}

Outcome norm_submultiplicative(CounterRng& rng, const SuiteOptions&) {
  const std::size_t n = small_dim(rng, 8);
  const auto a = random_square(n, rng);
  const auto b = random_square(n, rng);
  const double lhs = numeric::op_norm(a * b);
  const double rhs = numeric::op_norm(a) * numeric::op_norm(b) + 1e-10;
  return fail_if(lhs > rhs, "||ab|| = " + num(lhs) + " > " + num(rhs));
}

Outcome psd_both_signs(CounterRng& rng, const SuiteOptions&) {
  static constexpr double kScales[] = {1e-13, 1e-11, 1e-10, 1.0};
  const double scale = kScales[rng.integer(0, 3)];
  const auto h = random_hermitian_matrix(small_dim(rng), rng, scale);
  CMatrix neg = h;
  neg *= Complex(-1.0);
  if (numeric::is_psd(h) && numeric::is_psd(neg)) {
    const double n = numeric::op_norm(h);
    return fail_if(n > 2 * numeric::kDefaultTol, "+-psd but ||h|| = " + num(n));
  }
  return std::nullopt;
}

Outcome kernel_equivalence(CounterRng& rng, const SuiteOptions&) {
#ifdef ESSMOD_HAVE_AVX2_KERNELS
  namespace k = numeric::kernels;
  if (!k::avx2_available()) return std::nullopt;
  const auto m = small_dim(rng, 9), inner = small_dim(rng, 9), n = small_dim(rng, 9);
  std::vector<Complex> a(m * inner), b(inner * n), c1(m * n), c2(m * n);
  for (auto& z : a) z = rng.complex_uniform();
  for (auto& z : b) z = rng.complex_uniform();
  k::scalar::gemm(a.data(), b.data(), c1.data(), m, inner, n);
  k::avx2::gemm(a.data(), b.data(), c2.data(), m, inner, n);
  double err = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i) err = std::max(err, std::abs(c1[i] - c2[i]));
  const Complex d1 = k::scalar::dotc(a.data(), a.data() + (a.size() - inner), inner);
  const Complex d2 = k::avx2::dotc(a.data(), a.data() + (a.size() - inner), inner);
  err = std::max(err, std::abs(d1 - d2));
  std::vector<Complex> y1(b.begin(), b.end()), y2(b.begin(), b.end());
  const Complex alpha = rng.complex_uniform();
  k::scalar::axpy(alpha, a.data(), y1.data(), std::min(a.size(), b.size()));
  k::avx2::axpy(alpha, a.data(), y2.data(), std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < y1.size(); ++i) err = std::max(err, std::abs(y1[i] - y2[i]));
  return fail_if(err > 1e-12, "scalar/avx2 mismatch " + num(err));
#else
  (void)rng;
  return std::nullopt;
#endif
}

// ---- cstar_algebra ----

Outcome calculus_homomorphism(CounterRng& rng, const SuiteOptions&) {
  const auto a = normalized_hermitian(random_shape(rng), rng);
  const auto f = random_poly(rng);
  const auto g = random_poly(rng);
  const auto fa = algebra::calculus(a, {[&](double t) { return eval_poly(f, t); }});
  const auto ga = algebra::calculus(a, {[&](double t) { return eval_poly(g, t); }});
  const auto fga = algebra::calculus(a, {[&](double t) { return eval_poly(f, t) * eval_poly(g, t); }});
  const double err = algebra::max_abs_diff(fga, fa * ga);
  return fail_if(err > 1e-9, "calculus(fg) differs by " + num(err));
}

Outcome monotone_convergence(CounterRng& rng, const SuiteOptions&) {
  const auto a = normalized_hermitian(random_shape(rng), rng);
  double eps = rng.uniform(0.1, 0.9);
  for (const auto& block : algebra::spectrum(a)) {
    for (double lambda : block) {
      if (std::abs(lambda - eps) < 1e-6) eps += 2e-6;
    }
  }
  const auto chi = algebra::spectral_projection(a, eps);
  double previous_dist = std::numeric_limits<double>::infinity();
  auto previous = algebra::lower_approximant(a, eps, 1.0);
  for (double n = 2.0; n <= 1 << 22; n *= 2.0) {
    const auto g = algebra::lower_approximant(a, eps, n);
    const auto diff = g - previous;
    for (const auto& b : diff.blocks()) {
      if (!numeric::is_psd(b, 1e-12)) return "g_2n - g_n not psd at n = " + num(n);
    }
    const double dist = (g - chi).norm();
    if (dist > previous_dist + 1e-12) return "distance increased at n = " + num(n);
    previous_dist = dist;
    previous = g;
  }
  return fail_if(previous_dist > 1e-5, "no convergence: " + num(previous_dist));
}

Outcome subideal_pipeline(CounterRng& rng, const SuiteOptions&) {
  const auto x = random_low_rank(random_shape(rng), rng);
  const auto w = algebra::closed_subideal(x);
  if (w.K.is_zero()) return "K is zero";
  if (!w.fa_p_ok) return "fa p != p: " + num(w.fa_p_residual);
  if (!w.probes_ok) return "probe residual " + num(w.max_probe_residual);
  const AlgebraElement xs[] = {x};
  const auto principal = algebra::ideal_support_projection(xs);
  for (const auto& b : w.K.spanning_set()) {
    if (!principal.contains(b, 1e-8)) return "K not inside xA";
  }
  return std::nullopt;
}

Outcome ideal_roundtrip(CounterRng& rng, const SuiteOptions&) {
  const auto shape = random_shape(rng);
  const auto p = random_projection(shape, rng);
  const auto spanning = algebra::RightIdeal(shape, p).spanning_set();
  const auto back = algebra::ideal_support_projection(spanning);
  const double err = algebra::max_abs_diff(back.support_projection(), p);
  return fail_if(err > 1e-9, "support projection moved by " + num(err));
}

Outcome essential_vs_falsification(CounterRng& rng, const SuiteOptions&) {
  const auto shape = random_shape(rng);
  // Bias toward essential ideals so both outcomes are exercised.
  const auto p = rng.coin() ? AlgebraElement::identity(shape) : random_projection(shape, rng);
  const auto ideal = algebra::ideal_from_projection(p);
  const auto res = algebra::is_essential_right_ideal(ideal);
  bool falsified = false;
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const std::size_t n = shape.block_dim(b);
    CMatrix v(n, 1);
    for (auto& z : v.entries()) z = rng.complex_uniform();
    std::vector<CMatrix> blocks;
    for (std::size_t c = 0; c < shape.block_count(); ++c) {
      blocks.push_back(c == b ? v * v.adjoint() : CMatrix(shape.block_dim(c), shape.block_dim(c)));
    }
    const algebra::RightIdeal q(shape, AlgebraElement(shape, std::move(blocks)));
    if (algebra::intersection_dimension(ideal, q) == 0) falsified = true;
  }
  if (res.essential == falsified) return "decision disagrees with random rank-one probes";
  if (res.certificate) {
    const algebra::RightIdeal q(shape, res.certificate->q);
    if (algebra::intersection_dimension(ideal, q) != 0 || q.is_zero()) return "certificate does not verify";
  }
  return std::nullopt;
}

// ---- hilbert_module ----

struct ModuleSetup {
  AlgebraShape shape;
  std::size_t k;
};

ModuleSetup module_setup(CounterRng& rng) {
  return {random_shape(rng, 2, 3), static_cast<std::size_t>(rng.integer(1, 3))};
}

Outcome theta_action(CounterRng& rng, const SuiteOptions&) {
  const auto [shape, k] = module_setup(rng);
  const auto x = random_module_element(shape, k, rng);
  const auto y = random_module_element(shape, k, rng);
  const auto z = random_module_element(shape, k, rng);
  const double err = algebra::max_abs_diff(algebra::theta(x, y).apply(z), x * algebra::inner_product(y, z));
  return fail_if(err > 1e-10 * (1.0 + x.norm() * y.norm() * z.norm()), "theta(x,y)z differs by " + num(err));
}

Outcome theta_lipschitz(CounterRng& rng, const SuiteOptions& opts) {
  const auto [shape, k] = module_setup(rng);
  const auto x = random_module_element(shape, k, rng);
  const auto y = random_module_element(shape, k, rng);
  const double scale = rng.coin() ? 1e-3 : 1.0;
  const auto x2 = x + random_module_element(shape, k, rng) * Complex(scale);
  const auto y2 = y + random_module_element(shape, k, rng) * Complex(scale);
  const double lhs = (algebra::theta(x, y) - algebra::theta(x2, y2)).norm();
  const double rhs = x.norm() * (y - y2).norm() + (x - x2).norm() * y2.norm() + 1e-9;
  bool ok = lhs <= rhs;
  if (opts.fault == Fault::ThetaNorm) ok = !ok;
  return fail_if(!ok, "||Theta - Theta'|| = " + num(lhs) + " vs bound " + num(rhs));
}

Outcome theta_definite(CounterRng& rng, const SuiteOptions&) {
  const auto [shape, k] = module_setup(rng);
  auto x = random_module_element(shape, k, rng);
  x = x * Complex(1.0 / x.norm());
  const double n = algebra::theta(x, x).norm();
  return fail_if(n < 1e-8, "unit x with ||Theta_xx|| = " + num(n));
}

algebra::CompactOperator random_operator(const AlgebraShape& shape, std::size_t k, CounterRng& rng) {
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < k * k; ++i) entries.push_back(random_element(shape, rng));
  return algebra::CompactOperator(shape, k, std::move(entries));
}

Outcome theta_compression(CounterRng& rng, const SuiteOptions&) {
  const auto [shape, k] = module_setup(rng);
  const auto t = random_operator(shape, k, rng);
  const auto ma = random_module_element(shape, k, rng) * random_element(shape, rng);
  const auto tma = t.apply(ma);
  const auto lhs = t * algebra::theta(ma, tma);
  const auto rhs = algebra::theta(tma, tma);
  const double err = algebra::max_abs_diff(lhs, rhs);
  return fail_if(err > 1e-9 * (1.0 + rhs.norm()), "T Theta(ma, Tma) differs by " + num(err));
}

Outcome left_module_identity(CounterRng& rng, const SuiteOptions&) {
  const auto [shape, k] = module_setup(rng);
  const auto x = random_module_element(shape, k, rng);
  const auto y = random_module_element(shape, k, rng);
  const auto u = random_module_element(shape, k, rng);
  const auto v = random_module_element(shape, k, rng);
  const auto lhs = algebra::theta(x, y) * algebra::theta(u, v);
  const auto rhs = algebra::theta(x * algebra::inner_product(y, u), v);
  const double err = algebra::max_abs_diff(lhs, rhs);
  return fail_if(err > 1e-9 * (1.0 + rhs.norm()), "Theta products differ by " + num(err));
}

Outcome correspondence_roundtrip(CounterRng& rng, const SuiteOptions&) {
  const auto shape = random_shape(rng, 2, 3);
  const auto k = static_cast<std::size_t>(rng.integer(1, 4));
  const auto n = random_submodule(shape, k, rng);
  const auto back = algebra::submodule_of_ideal(algebra::ideal_of_submodule(n), shape, k);
  return fail_if(!back.same_span(n), "roundtrip changed the span: dim " + std::to_string(n.dimension()) + " -> " +
                                         std::to_string(back.dimension()));
}

Outcome correspondence_essentiality(CounterRng& rng, const SuiteOptions&) {
  const auto shape = random_shape(rng, 2, 3);
  const auto k = static_cast<std::size_t>(rng.integer(1, 4));
  const auto n = random_submodule(shape, k, rng);
  const auto res = algebra::is_essential_submodule(n);
  const auto ideal = algebra::is_essential_right_ideal(algebra::ideal_of_submodule(n));
  if (res.essential != ideal.essential) return "submodule and J_N decisions differ";
  if (!res.flags_agree) return "E and TE flags differ";
  if (!res.essential && !res.certificate_verified) return "certificate not verified";
  return std::nullopt;
}

Outcome decision_vs_probe(CounterRng& rng, const SuiteOptions&) {
  const auto [shape, k] = module_setup(rng);
  const auto n = random_submodule(shape, k, rng);
  const auto res = algebra::is_essential_submodule(n);
  if (!res.essential) {
    if (!res.certificate) return "non-essential without certificate";
    return fail_if(algebra::reformulation_probe(*res.certificate, n).found, "certificate m meets N");
  }
  for (int i = 0; i < 20; ++i) {
    const auto m = random_module_element(shape, k, rng);
    if (!algebra::reformulation_probe(m, n).found) return "essential N missed by a random m";
  }
  return std::nullopt;
}

// ---- continuous_fields ----

SymbolicSubset random_subset(CounterRng& rng) {
  std::vector<Rational> points;
  std::vector<fields::Interval> intervals;
  for (long i = rng.integer(0, 3); i > 0; --i) points.push_back(Rational(rng.integer(0, 16), 16));
  for (long i = rng.integer(0, 3); i > 0; --i) {
    Rational lo(rng.integer(0, 16), 16);
    Rational hi(rng.integer(0, 16), 16);
    if (hi < lo) std::swap(lo, hi);
    if (lo == hi) {
      points.push_back(lo);
      continue;
    }
    intervals.push_back({lo, hi, rng.coin(), rng.coin()});
  }
  for (auto& p : points) p.canonicalize();
  for (auto& iv : intervals) {
    iv.lo.canonicalize();
    iv.hi.canonicalize();
  }
  return SymbolicSubset::from_pieces(points, std::move(intervals));
}

Outcome set_algebra(CounterRng& rng, const SuiteOptions&) {
  const auto s = random_subset(rng);
  const auto closure = s.closure();
  if (!s.interior().is_subset_of(s) || !s.is_subset_of(closure)) return "interior/closure sandwich fails for " + to_string(s);
  if (s.is_nowhere_dense() != closure.interior().empty()) return "nowhere-density routes disagree for " + to_string(s);
  const auto comp = s.complement();
  if (!(s.unite(comp) == SymbolicSubset::whole()) || !s.intersect(comp).empty()) return "complement broken";
  const auto t = random_subset(rng);
  if (!(s.minus(t) == s.intersect(t.complement()))) return "difference broken";
  return std::nullopt;
}

Defect random_defect(CounterRng& rng) { return static_cast<Defect>(rng.integer(0, 2)); }

FieldInstance suite_field(CounterRng& rng, Defect defect) {
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  const auto extra = static_cast<std::size_t>(rng.integer(0, 2));
  return random_field_instance(d, static_cast<std::size_t>(rng.integer(1, 4)), d + extra, defect, rng);
}

// m = sum_i c_i g_i a_i over a random subset of generators, with scalar a_i.
fields::PiecewiseSection random_combination(const fields::FieldModuleSpec& spec, CounterRng& rng, bool scalar_coeffs) {
  auto m = fields::PiecewiseSection::zero(spec.d);
  for (const auto& g : spec.generators) {
    if (!rng.coin()) continue;
    auto term = g * random_gaussian(rng);
    if (scalar_coeffs) term = term * random_scalar(static_cast<std::size_t>(rng.integer(1, 3)), rng);
    m = m + term;
  }
  return m;
}

Outcome residual_within_total(CounterRng& rng, const SuiteOptions&) {
  const auto inst = suite_field(rng, random_defect(rng));
  const auto total = fields::total_defect_set(inst.spec).total;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const auto m = random_combination(inst.spec, rng, true);
    try {
      const auto y = fields::residual_set(m, inst.spec.subfield);
      return fail_if(!y.is_subset_of(total), "Y_m = " + to_string(y) + " not inside Y = " + to_string(total));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrrationalRoot) throw;
    }
  }
  return std::nullopt;
}

Outcome criterion_coherence(CounterRng& rng, const SuiteOptions&) {
  const auto inst = suite_field(rng, random_defect(rng));
  const auto res = fields::is_essential_field(inst.spec);
  if (res.essential != inst.expected_essential) return "decision differs from planted truth";
  if (res.essential) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto m = random_combination(inst.spec, rng, false);
      if (m.is_zero()) continue;
      try {
        const auto w = fields::essential_witness(m, inst.spec.subfield);
        return fail_if(!w.ma_in_submodule || !w.ma_nonzero, "essential_witness check failed");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IrrationalRoot) throw;
      }
    }
    return std::nullopt;
  }
  for (const auto& g : inst.spec.generators) {
    const auto y = fields::residual_set(g, inst.spec.subfield);
    if (y.closure().interior().empty()) continue;
    const auto w = fields::non_essential_witness(g, inst.spec.subfield);
    if (w.ma_nonzero && w.closure_equal && w.probes_ok) return std::nullopt;
  }
  const auto window = res.defect.closure().interior().components().front();
  const auto ind = fields::inductive_witness_section(
      inst.spec, {window.lo, window.hi, false, false}, std::nullopt, 8);
  return fail_if(!ind.residual_has_interior.value_or(false), "no non-essentiality witness");
}

std::optional<fields::InductiveWitness> inductive_on_interval_instance(CounterRng& rng) {
  const auto inst = suite_field(rng, Defect::Interval);
  const auto y = fields::total_defect_set(inst.spec).total;
  const auto region = y.closure().interior();
  for (const auto& iv : region.components()) {
    if (iv.is_point()) continue;
    return fields::inductive_witness_section(inst.spec, {iv.lo, iv.hi, false, false}, std::nullopt, 8);
  }
  return std::nullopt;
}

Outcome inductive_postcondition(CounterRng& rng, const SuiteOptions&) {
  const auto w = inductive_on_interval_instance(rng);
  if (!w) return "interval instance without dense window";
  if (!w->postcondition_ok) return "m(x_j) in L at some sample";
  return fail_if(!w->lambda_bounds_ok, "lambda_j outside (0, 2^-j]");
}

Outcome term_norm_bound(CounterRng& rng, const SuiteOptions&) {
  const auto w = inductive_on_interval_instance(rng);
  if (!w) return "interval instance without dense window";
  if (!w->term_bound_ok) return "picked generators are not sup-normalized";
  return fail_if(!*w->term_bound_ok, "some term exceeds 2^-j");
}

Outcome commutative_identity(CounterRng& rng, const SuiteOptions&) {
  const auto d = static_cast<std::size_t>(rng.integer(1, 3));
  const auto m = random_section(d, static_cast<std::size_t>(rng.integer(1, 4)), rng);
  auto c = random_scalar(static_cast<std::size_t>(rng.integer(1, 4)), rng);
  c = c * random_gaussian(rng);
  return fail_if(!fields::commutative_limit_identity(m, m * c), "m<n,n> != n<n,m> for n = m c");
}

// ---- cli_harness ----

GenOptions random_gen_options(CounterRng& rng) {
  static const char* kKinds[] = {"right_ideal", "module_submodule", "field"};
  GenOptions o;
  o.kind = kKinds[rng.integer(0, 2)];
  o.blocks.assign(static_cast<std::size_t>(rng.integer(1, 3)), 0);
  for (auto& n : o.blocks) n = static_cast<std::size_t>(rng.integer(1, 4));
  o.k = static_cast<std::size_t>(rng.integer(1, 3));
  o.d = static_cast<std::size_t>(rng.integer(1, 3));
  o.pieces = static_cast<std::size_t>(rng.integer(1, 4));
  o.generators = static_cast<std::size_t>(rng.integer(1, 4));
  o.defect = random_defect(rng);
  o.seed = rng.next_u64();
  return o;
}

Outcome gen_determinism(CounterRng& rng, const SuiteOptions&) {
  const auto o = random_gen_options(rng);
  return fail_if(cmd_gen(o).dump() != cmd_gen(o).dump(), "gen output differs for " + o.kind);
}

Outcome gen_check_roundtrip(CounterRng& rng, const SuiteOptions&) {
  const auto o = random_gen_options(rng);
  const Json doc = Json::parse(cmd_gen(o).dump());
  const auto res = cmd_check(doc);
  return fail_if(res.exit_code != kExitPass, "check failed on generated " + o.kind);
}

std::vector<Property> all_properties() {
  return {
      {"numeric.eig_reconstruction", eig_reconstruction},
      {"numeric.norm_submultiplicative", norm_submultiplicative},
      {"numeric.psd_both_signs", psd_both_signs},
      {"numeric.kernel_equivalence", kernel_equivalence},
      {"cstar.calculus_homomorphism", calculus_homomorphism},
      {"cstar.monotone_convergence", monotone_convergence},
      {"cstar.subideal_pipeline", subideal_pipeline},
      {"cstar.ideal_roundtrip", ideal_roundtrip},
      {"cstar.essential_vs_falsification", essential_vs_falsification},
      {"hilbert.theta_action", theta_action},
      {"hilbert.theta_lipschitz", theta_lipschitz},
      {"hilbert.theta_definite", theta_definite},
      {"hilbert.theta_compression", theta_compression},
      {"hilbert.left_module_identity", left_module_identity},
      {"hilbert.correspondence_roundtrip", correspondence_roundtrip},
      {"hilbert.correspondence_essentiality", correspondence_essentiality},
      {"hilbert.decision_vs_probe", decision_vs_probe},
      {"fields.set_algebra", set_algebra},
      {"fields.residual_within_total", residual_within_total},
      {"fields.criterion_coherence", criterion_coherence},
      {"fields.inductive_postcondition", inductive_postcondition},
      {"fields.term_norm_bound", term_norm_bound},
      {"fields.commutative_identity", commutative_identity},
      {"harness.gen_determinism", gen_determinism},
      {"harness.gen_check_roundtrip", gen_check_roundtrip},
  };
}

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<std::string> counterexample;
  double ms = 0.0;
};

PropertyResult run_property(const Property& p, const SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  PropertyResult r;
  r.name = p.name;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    auto rng = CounterRng::stream(opts.seed, p.name, t);
    Outcome outcome;
    try {
      outcome = p.run(rng, opts);
    } catch (const std::exception& e) {
      outcome = std::string("exception: ") + e.what();
    }
    if (outcome) {
      ++r.failed;
      if (!r.counterexample) r.counterexample = "trial " + std::to_string(t) + ": " + *outcome;
    } else {
      ++r.passed;
    }
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

Fault parse_fault(const std::string& text) {
  if (text.empty() || text == "none") return Fault::None;
  if (text == "theta-norm") return Fault::ThetaNorm;
  throw Error(ErrorCode::SchemaError, "unknown fault '" + text + "'");
}

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : all_properties()) out.push_back(p.name);
  return out;
}

CommandResult cmd_suite(const SuiteOptions& opts) {
  if (opts.trials == 0) throw Error(ErrorCode::SchemaError, "trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const auto props = all_properties();
  std::vector<PropertyResult> results(props.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(props.size(), opts.threads ? opts.threads : std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < props.size(); i = next++) results[i] = run_property(props[i], opts);
      });
    }
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

  CommandResult out;
  Json& report = out.report;
  Json list = Json::array();
  Json timing = Json::object();
  bool all_pass = true;
  for (const auto& r : results) {
    Json entry{{"name", r.name}, {"trials", r.passed + r.failed}, {"passed", r.passed}, {"failed", r.failed},
               {"pass", r.failed == 0}};
    entry["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    list.push_back(std::move(entry));
    timing[r.name] = r.ms;
    all_pass = all_pass && r.failed == 0;
  }
  report = {{"schema", kSchema},
            {"command", "suite"},
            {"seed", opts.seed},
            {"trials", opts.trials},
            {"fault", opts.fault == Fault::ThetaNorm ? "theta-norm" : "none"},
            {"properties", list},
            {"all_pass", all_pass}};
  seal(report);
  report["timing_ms"] = {
      {"total", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()},
      {"per_property", timing}};
  out.exit_code = all_pass ? kExitPass : kExitFailure;
  return out;
}

}  // namespace essmod::harness
