#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "essmod/error.hpp"
#include "essmod/harness/commands.hpp"

namespace h = essmod::harness;

namespace {

h::Json read_instance(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw essmod::Error(essmod::ErrorCode::SchemaError, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return h::Json::parse(text);
  } catch (const h::Json::parse_error& e) {
    throw essmod::Error(essmod::ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what());
  }
}

void write_json(const h::Json& doc, const std::string& path, bool pretty) {
  const std::string text = doc.dump(pretty ? 2 : -1) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw essmod::Error(essmod::ErrorCode::SchemaError, "cannot write " + path);
  out << text;
}

std::vector<std::size_t> parse_blocks(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw essmod::Error(essmod::ErrorCode::SchemaError, "--blocks expects comma-separated sizes, got '" + text + "'");
    }
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Essentiality checks for right ideals, Hilbert module submodules and continuous fields"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  bool pretty = false;
  std::uint64_t seed = 0;
  std::size_t trials = 100;

  h::GenOptions gen;
  std::string kind_flag;
  std::string kind_pos;
  std::string blocks = "2,3";
  std::string defect = "none";
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("kind_positional", kind_pos, "right_ideal | module_submodule | field");
  gen_cmd->add_option("--kind", kind_flag, "right_ideal | module_submodule | field");
  gen_cmd->add_option("--seed", seed, "Seed");
  gen_cmd->add_option("--blocks", blocks, "Block sizes, e.g. 2,3");
  gen_cmd->add_option("--k", gen.k, "Module rank");
  gen_cmd->add_option("--d", gen.d, "Fiber dimension");
  gen_cmd->add_option("--pieces", gen.pieces, "Pieces per random section");
  gen_cmd->add_option("--generators", gen.generators, "Number of generators");
  gen_cmd->add_option("--defect", defect, "none | points | interval");
  gen_cmd->add_option("--out", out_path, "Output path (default stdout)");
  gen_cmd->add_flag("--json-pretty", pretty, "Indent JSON output");

  auto* check_cmd = app.add_subcommand("check", "Decide essentiality of an instance");
  check_cmd->add_option("--in", in_path, "Instance path (default stdin)");
  check_cmd->add_option("--out", out_path, "Report path (default stdout)");
  check_cmd->add_flag("--json-pretty", pretty, "Indent JSON output");

  h::WitnessOptions witness;
  auto* witness_cmd = app.add_subcommand("witness", "Construct and verify witness objects");
  witness_cmd->add_option("--in", in_path, "Instance path (default stdin)");
  witness_cmd->add_option("--out", out_path, "Report path (default stdout)");
  witness_cmd->add_option("--samples", witness.samples, "Samples for the inductive section (J)")->check(CLI::PositiveNumber);
  witness_cmd->add_flag("--json-pretty", pretty, "Indent JSON output");

  h::SuiteOptions suite;
  std::string fault;
  auto* suite_cmd = app.add_subcommand("suite", "Run every property with a fixed seed");
  suite_cmd->add_option("--seed", seed, "Seed");
  suite_cmd->add_option("--trials", trials, "Trials per property");
  suite_cmd->add_option("--threads", suite.threads, "Worker threads (0: all cores)");
  suite_cmd->add_option("--inject-fault", fault, "Deliberately break a property: theta-norm");
  suite_cmd->add_option("--out", out_path, "Report path (default stdout)");
  suite_cmd->add_flag("--json-pretty", pretty, "Indent JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return h::kExitInputError;
  }

  try {
    if (*gen_cmd) {
      gen.kind = !kind_flag.empty() ? kind_flag : (!kind_pos.empty() ? kind_pos : "field");
      gen.blocks = parse_blocks(blocks);
      gen.defect = h::parse_defect(defect);
      gen.seed = seed;
      write_json(h::cmd_gen(gen), out_path, pretty);
      return h::kExitPass;
    }
    h::CommandResult result;
    if (*check_cmd) {
      result = h::cmd_check(read_instance(in_path));
    } else if (*witness_cmd) {
      result = h::cmd_witness(read_instance(in_path), witness);
    } else {
      suite.seed = seed;
      suite.trials = trials;
      suite.fault = h::parse_fault(fault);
      result = h::cmd_suite(suite);
    }
    write_json(result.report, out_path, pretty);
    return result.exit_code;
  } catch (const essmod::Error& e) {
    const h::Json err{{"schema", h::kSchema}, {"error", essmod::to_string(e.code())}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return h::kExitInputError;
  }
}
