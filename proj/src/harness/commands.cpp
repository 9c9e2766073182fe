#include "essmod/harness/commands.hpp"

#include <chrono>
#include <cstdio>

#include "essmod/error.hpp"

namespace essmod::harness {

using numeric::Complex;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json complex_vector(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::string instance_kind(const Json& instance) {
  require_schema(instance);
  if (!instance.contains("kind") || !instance["kind"].is_string()) {
    throw Error(ErrorCode::SchemaError, "instance needs a string \"kind\"");
  }
  if (!instance.contains("payload")) throw Error(ErrorCode::SchemaError, "instance needs a \"payload\"");
  return instance["kind"].get<std::string>();
}

Json report_header(const char* command, const std::string& kind, const Json& instance) {
  return {{"schema", kSchema},
          {"command", command},
          {"kind", kind},
          {"instance_digest", hex64(fnv1a64(instance.dump()))}};
}

int finish(Json& report, const Json& checks, Clock::time_point start) {
  bool ok = true;
  for (const auto& [name, value] : checks.items()) ok = ok && value.get<bool>();
  report["checks"] = checks;
  report["all_checks_pass"] = ok;
  report["timing_ms"] = elapsed_ms(start);
  seal(report);
  return ok ? kExitPass : kExitFailure;
}

[[noreturn]] void unknown_kind(const std::string& kind) {
  throw Error(ErrorCode::SchemaError, "unknown instance kind '" + kind + "'");
}

// First non-degenerate component of interior(closure(Y)).
std::optional<fields::Interval> dense_window(const fields::SymbolicSubset& y) {
  const auto region = y.closure().interior();
  for (const auto& iv : region.components()) {
    if (!iv.is_point()) return fields::Interval{iv.lo, iv.hi, false, false};
  }
  return std::nullopt;
}

}  // namespace

std::string digest_of(const Json& report) {
  Json copy = report;
  if (copy.is_object()) {
    copy.erase("timing_ms");
    copy.erase("digest");
  }
  return hex64(fnv1a64(copy.dump()));
}

void seal(Json& report) { report["digest"] = digest_of(report); }

Json cmd_gen(const GenOptions& opts) { return generate_instance(opts); }

CommandResult cmd_check(const Json& instance) {
  const auto start = Clock::now();
  const auto kind = instance_kind(instance);
  const Json& payload = instance["payload"];
  CommandResult out;
  out.report = report_header("check", kind, instance);
  Json& report = out.report;
  Json checks = Json::object();

  if (kind == "right_ideal") {
    const auto ideal = ideal_from_json(payload);
    const auto res = algebra::is_essential_right_ideal(ideal);
    report["decision"] = res.essential;
    report["block_ranks"] = ideal.block_ranks();
    if (res.certificate) {
      report["certificate"] = {{"block", res.certificate->block},
                               {"v", complex_vector(res.certificate->v)},
                               {"intersection_dim", res.certificate->intersection_dim}};
      checks["certificate_meets_trivially"] = res.certificate->intersection_dim == 0;
    } else {
      report["certificate"] = {{"support_is_identity", true}};
    }
  } else if (kind == "module_submodule") {
    const auto n = submodule_from_json(payload);
    const auto res = algebra::is_essential_submodule(n);
    const auto ideal_res = algebra::is_essential_right_ideal(algebra::ideal_of_submodule(n));
    report["decision"] = res.essential;
    report["essential_flag"] = res.essential_flag;
    report["topologically_essential"] = res.topologically_essential;
    report["dimension"] = n.dimension();
    report["ambient_dimension"] = n.ambient_dimension();
    checks["flags_agree"] = res.flags_agree;
    checks["correspondence"] = ideal_res.essential == res.essential;
    if (res.certificate) {
      report["certificate"] = to_json(*res.certificate);
      checks["certificate_verified"] = res.certificate_verified;
    } else {
      report["certificate"] = nullptr;
    }
  } else if (kind == "field") {
    const auto spec = field_spec_from_json(payload);
    const auto res = fields::is_essential_field(spec);
    report["decision"] = res.essential;
    report["Y"] = to_json(res.defect);
    report["closure_Y_interior"] = to_json(res.defect.closure().interior());
    Json per = Json::array();
    for (const auto& y : res.report.per_generator) per.push_back(to_json(y));
    report["Y_per_generator"] = per;
    checks["generator_union_matches_partition"] = res.report.matches_direct;
    if (instance.contains("expected")) {
      const Json& expected = instance["expected"];
      if (expected.contains("essential")) checks["matches_expected"] = expected["essential"] == res.essential;
      if (expected.contains("planted")) {
        checks["planted_inside_Y"] = subset_from_json(expected["planted"]).is_subset_of(res.defect);
      }
    }
  } else {
    unknown_kind(kind);
  }
  out.exit_code = finish(report, checks, start);
  return out;
}

CommandResult cmd_witness(const Json& instance, const WitnessOptions& opts) {
  const auto start = Clock::now();
  const auto kind = instance_kind(instance);
  const Json& payload = instance["payload"];
  CommandResult out;
  out.report = report_header("witness", kind, instance);
  Json& report = out.report;
  Json checks = Json::object();

  if (kind == "right_ideal") {
    auto gens = ideal_generators_from_json(payload);
    if (gens.empty()) gens.push_back(ideal_from_json(payload).support_projection());
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& x = gens[i];
      if (x.norm() <= numeric::kDefaultTol) continue;
      const auto w = algebra::closed_subideal(x);
      const algebra::AlgebraElement xs[] = {x};
      const auto principal = algebra::ideal_support_projection(xs);
      bool inside = !w.K.is_zero();
      for (const auto& b : w.K.spanning_set()) inside = inside && principal.contains(b, 1e-8);
      witnesses.push_back({{"generator", i},
                           {"eps", w.eps},
                           {"p", blocks_to_json(w.p)},
                           {"K_block_ranks", w.K.block_ranks()},
                           {"fa_p_residual", w.fa_p_residual},
                           {"max_probe_residual", w.max_probe_residual},
                           {"probe_count", w.probe_count}});
      const std::string tag = "generator_" + std::to_string(i);
      checks[tag + "_fa_p"] = w.fa_p_ok;
      checks[tag + "_probes"] = w.probes_ok;
      checks[tag + "_K_inside_xA"] = inside;
    }
    if (witnesses.empty()) throw Error(ErrorCode::PreconditionFailed, "zero ideal has no nonzero generator");
    report["subideals"] = witnesses;
  } else if (kind == "module_submodule") {
    const auto n = submodule_from_json(payload);
    const auto res = algebra::is_essential_submodule(n);
    report["decision"] = res.essential;
    Json probes = Json::array();
    for (std::size_t i = 0; i < n.generators().size(); ++i) {
      const auto& g = n.generators()[i];
      if (g.norm() <= numeric::kDefaultTol) continue;
      const auto probe = algebra::reformulation_probe(g, n);
      probes.push_back({{"generator", i}, {"found", probe.found}, {"solution_dim", probe.solution_dim}});
      checks["generator_" + std::to_string(i) + "_probe_found"] = probe.found;
    }
    report["generator_probes"] = probes;
    if (res.certificate) {
      const auto probe = algebra::reformulation_probe(*res.certificate, n);
      report["certificate"] = to_json(*res.certificate);
      checks["certificate_probe_empty"] = !probe.found;
    }
  } else if (kind == "field") {
    const auto spec = field_spec_from_json(payload);
    const auto res = fields::is_essential_field(spec);
    report["decision"] = res.essential;
    report["Y"] = to_json(res.defect);
    if (res.essential) {
      Json witnesses = Json::array();
      for (std::size_t i = 0; i < spec.generators.size(); ++i) {
        const auto w = fields::essential_witness(spec.generators[i], spec.subfield);
        witnesses.push_back({{"generator", i},
                             {"alpha", fields::to_string(w.alpha)},
                             {"beta", fields::to_string(w.beta)},
                             {"a", to_json(w.a)},
                             {"Z_m", to_json(w.support)},
                             {"Y_m", to_json(w.residual)}});
        const std::string tag = "generator_" + std::to_string(i);
        checks[tag + "_ma_in_N"] = w.ma_in_submodule;
        checks[tag + "_ma_nonzero"] = w.ma_nonzero;
      }
      report["essential_witnesses"] = witnesses;
    } else {
      const auto window = dense_window(res.defect);
      if (!window) throw Error(ErrorCode::PreconditionFailed, "closure(Y) has empty interior");
      const auto ind = fields::inductive_witness_section(spec, *window, std::nullopt, opts.samples);
      Json samples = Json::array();
      Json lambdas = Json::array();
      for (const auto& x : ind.samples) samples.push_back(fields::to_string(x));
      for (const auto& l : ind.lambdas) lambdas.push_back(fields::to_string(l));
      report["inductive"] = {{"window", to_json(*window)},
                             {"samples", samples},
                             {"lambdas", lambdas},
                             {"picks", ind.picks},
                             {"m", to_json(ind.m)}};
      if (ind.residual_has_interior) report["inductive"]["Y_m_has_dense_interval"] = *ind.residual_has_interior;
      checks["inductive_postcondition"] = ind.postcondition_ok;
      checks["inductive_lambda_bounds"] = ind.lambda_bounds_ok;
      if (ind.term_bound_ok) checks["inductive_term_bound"] = *ind.term_bound_ok;

      std::optional<std::size_t> dense_generator;
      for (std::size_t i = 0; i < spec.generators.size() && !dense_generator; ++i) {
        if (dense_window(fields::residual_set(spec.generators[i], spec.subfield))) dense_generator = i;
      }
      if (dense_generator) {
        const auto ne = fields::non_essential_witness(spec.generators[*dense_generator], spec.subfield);
        report["non_essential"] = {{"generator", *dense_generator},
                                   {"window", to_json(ne.window)},
                                   {"Z_ma", to_json(ne.support)},
                                   {"Y_ma", to_json(ne.residual)},
                                   {"probe_count", ne.probe_count}};
        checks["non_essential_ma_nonzero"] = ne.ma_nonzero;
        checks["non_essential_closure_equal"] = ne.closure_equal;
        checks["non_essential_probes"] = ne.probes_ok;
      }
    }
  } else {
    unknown_kind(kind);
  }
  out.exit_code = finish(report, checks, start);
  return out;
}

}  // namespace essmod::harness
