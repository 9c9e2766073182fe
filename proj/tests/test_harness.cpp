#include <doctest.h>

#include <set>

#include "essmod/error.hpp"
#include "essmod/harness/commands.hpp"
#include "essmod/harness/generate.hpp"
#include "essmod/harness/rng.hpp"
#include "essmod/harness/serialize.hpp"

using namespace essmod;
using namespace essmod::harness;

namespace {

std::optional<ErrorCode> code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
  // Reference SplitMix64 started from state 0.
  CounterRng rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next_u64() == 0x06C45D188009454FULL);
  CHECK(rng.counter() == 3);
  // Counter-based: jumping to a counter gives the same value as stepping there.
  CounterRng jumped(0, 2);
  CHECK(jumped.next_u64() == 0x06C45D188009454FULL);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xCBF29CE484222325ULL);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8CULL);
  CHECK(fnv1a64("foobar") == 0x85944171F73967E8ULL);
}

TEST_CASE("rng streams and ranges") {
  auto a = CounterRng::stream(42, "cstar.x", 0);
  auto b = CounterRng::stream(42, "cstar.x", 1);
  auto c = CounterRng::stream(42, "cstar.y", 0);
  const auto va = a.next_u64();
  CHECK(va != b.next_u64());
  CHECK(va != c.next_u64());
  CHECK(CounterRng::stream(42, "cstar.x", 0).next_u64() == va);

  CounterRng r(9);
  std::set<long> seen;
  for (int i = 0; i < 2000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const long k = r.integer(-2, 3);
    CHECK(k >= -2);
    CHECK(k <= 3);
    seen.insert(k);
    const auto z = r.complex_uniform();
    CHECK(std::abs(z.real()) <= 1.0);
    CHECK(std::abs(z.imag()) <= 1.0);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("json roundtrips") {
  auto rng = CounterRng::stream(5, "roundtrip");
  for (int t = 0; t < 20; ++t) {
    const auto shape = random_shape(rng);
    CHECK(to_json(shape_from_json(to_json(shape))) == to_json(shape));
    const auto a = random_element(shape, rng);
    CHECK(to_json(element_from_json(to_json(a))) == to_json(a));
    const auto m = random_module_element(shape, 2, rng);
    CHECK(to_json(module_element_from_json(to_json(m))) == to_json(m));
    const auto n = random_submodule(shape, 2, rng);
    CHECK(to_json(submodule_from_json(to_json(n))) == to_json(n));
    const auto s = random_section(2, 3, rng);
    CHECK(to_json(section_from_json(2, to_json(s))) == to_json(s));
    CHECK(section_from_json(2, to_json(s)) == s);
    const auto inst = random_field_instance(2, 4, 3, Defect::Interval, rng);
    const auto spec_json = to_json(inst.spec);
    CHECK(to_json(field_spec_from_json(spec_json)) == spec_json);
    CHECK(subset_from_json(to_json(inst.planted)) == inst.planted);
  }
  CHECK(rational_from_json(Json("3/6")) == fields::Rational(1, 2));
  CHECK(rational_from_json(Json(4)) == fields::Rational(4));
}

TEST_CASE("malformed documents are schema errors") {
  CHECK(code_of([] { require_schema(Json::object()); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { require_schema(Json{{"schema", "other/2"}}); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { (void)rational_from_json(Json("1/0")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { (void)rational_from_json(Json("half")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { (void)shape_from_json(Json("x")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { (void)cmd_check(Json{{"schema", kSchema}, {"kind", "torus"}}); }) == ErrorCode::SchemaError);
}

TEST_CASE("size caps") {
  GenOptions opts;
  opts.kind = "right_ideal";
  opts.blocks = {7};
  CHECK(code_of([&] { check_caps(opts); }) == ErrorCode::SizeCap);
  opts.blocks = {2};
  opts.k = 5;
  CHECK(code_of([&] { check_caps(opts); }) == ErrorCode::SizeCap);
  opts.k = 2;
  opts.pieces = 17;
  CHECK(code_of([&] { check_caps(opts); }) == ErrorCode::SizeCap);
  opts.pieces = 4;
  opts.d = 5;
  CHECK(code_of([&] { (void)generate_instance(opts); }) == ErrorCode::SizeCap);
}

TEST_CASE("generation is deterministic per seed") {
  for (const std::string kind : {"right_ideal", "module_submodule", "field"}) {
    GenOptions opts;
    opts.kind = kind;
    opts.seed = 77;
    opts.defect = Defect::Points;
    const auto first = generate_instance(opts);
    CHECK(first.dump() == generate_instance(opts).dump());
    opts.seed = 78;
    CHECK(first.dump() != generate_instance(opts).dump());
  }
}

TEST_CASE("digest ignores timing") {
  Json r{{"a", 1}, {"b", {1, 2}}};
  const auto d = digest_of(r);
  CHECK(d.size() == 16);
  r["timing_ms"] = 12.5;
  CHECK(digest_of(r) == d);
  seal(r);
  CHECK(r["digest"] == d);
  r["b"] = Json::array({2, 1});
  CHECK(digest_of(r) != d);
}

TEST_CASE("generated instances check clean") {
  for (const std::string kind : {"right_ideal", "module_submodule", "field"}) {
    for (auto defect : {Defect::None, Defect::Points, Defect::Interval}) {
      GenOptions opts;
      opts.kind = kind;
      opts.defect = defect;
      opts.seed = 1000 + static_cast<int>(defect);
      const auto inst = generate_instance(opts);
      const auto res = cmd_check(inst);
      CHECK(res.exit_code == kExitPass);
      CHECK(res.report.contains("decision"));
      if (kind == "field") CHECK(res.report["decision"] == inst["expected"]["essential"]);
      const auto wit = cmd_witness(inst, {});
      CHECK(wit.exit_code == kExitPass);
    }
  }
}

TEST_CASE("suite") {
  SuiteOptions opts;
  opts.trials = 3;
  const auto a = cmd_suite(opts);
  const auto b = cmd_suite(opts);
  CHECK(a.exit_code == kExitPass);
  CHECK(a.report["digest"] == b.report["digest"]);
  CHECK(a.report["properties"].size() == property_names().size());

  opts.fault = parse_fault("theta-norm");
  const auto faulty = cmd_suite(opts);
  CHECK(faulty.exit_code == kExitFailure);
  std::vector<std::string> failed;
  for (const auto& p : faulty.report["properties"]) {
    if (!p["pass"].get<bool>()) failed.push_back(p["name"]);
  }
  CHECK(failed == std::vector<std::string>{"hilbert.theta_lipschitz"});
  CHECK(code_of([] { (void)parse_fault("nonsense"); }) == ErrorCode::SchemaError);
}
