// conekit: command-line front end.
//
//   conekit apply     --kernel k.csv | --spec s.json | --gen NAME  --input f.json
//   conekit norm      --kernel k.csv | --spec s.json | --gen NAME  [--trials N] [--seed S]
//   conekit lipschitz (same as norm)
//   conekit verify    (same as norm) [--inject-bad monotone|subadditive|homogeneous|fundamental]
//   conekit ubp       --count N --bound B [--gen random|zero|continuous|mixed] [--seed S]
//
// Exit codes: 0 ok, 1 property failure, 2 parse/argument error,
// 3 domain mismatch, 4 cone violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include <CLI11.hpp>

#include "conekit/conekit.hpp"

namespace {

using conekit::Json;

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kBadInput = 2, kDomainMismatch = 3, kConeViolation = 4 };

struct RunConfig {
  std::string command;
  std::optional<std::string> kernel;
  std::optional<std::string> spec;
  std::optional<std::string> input;
  std::optional<std::string> gen;
  std::size_t count = 100;
  std::optional<double> bound;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<std::string> inject_bad;
};

Json to_json(const RunConfig& c) {
  auto opt = [](const auto& o) -> Json { return o ? Json(*o) : Json(nullptr); };
  Json j;
  j["command"] = c.command;
  j["kernel"] = opt(c.kernel);
  j["spec"] = opt(c.spec);
  j["input"] = opt(c.input);
  j["gen"] = opt(c.gen);
  j["count"] = c.count;
  j["bound"] = opt(c.bound);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["inject_bad"] = opt(c.inject_bad);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw conekit::ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedOperator {
  conekit::FamilyMember op;
  Json descriptor;
};

LoadedOperator load_operator(const RunConfig& c) {
  const int sources = (c.kernel ? 1 : 0) + (c.spec ? 1 : 0) + (c.gen ? 1 : 0);
  if (sources != 1) throw conekit::InvalidArgument("give exactly one of --kernel, --spec, --gen");
  Json d;
  if (c.kernel) {
    std::ifstream in(*c.kernel);
    if (!in) throw conekit::ParseError(*c.kernel, "cannot open file");
    auto k = conekit::parse_kernel_csv(in, *c.kernel);
    d["class"] = "sup_kernel";
    d["source"] = *c.kernel;
    d["domain"] = conekit::to_json(k.domain());
    return {conekit::SupKernelOperator(std::move(k)), d};
  }
  if (c.spec) {
    auto s = conekit::parse_continuous_spec(read_file(*c.spec), *c.spec);
    d["class"] = "max_kernel";
    d["source"] = *c.spec;
    d["domain"] = conekit::to_json(s.grid());
    return {conekit::MaxKernelOperator(std::move(s)), d};
  }
  auto k = conekit::generate_finite_kernel(*c.gen, c.seed, c.bound.value_or(10.0));
  d["class"] = "sup_kernel";
  d["source"] = "gen:" + *c.gen;
  d["domain"] = conekit::to_json(k.domain());
  return {conekit::SupKernelOperator(std::move(k)), d};
}

// ---------------------------------------------------------------------------
// Text rendering.

void render_text(const Json& j, std::ostream& os, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_structured() && !(v.is_array() && !v.empty() && v.front().is_primitive()))
        render_text(v, os, key);
      else
        os << key << ": " << v.dump() << "\n";
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], os, prefix + "[" + std::to_string(i) + "]");
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const RunConfig& c, const Json& doc) {
  std::ostringstream body;
  if (c.format == "text")
    render_text(doc, body);
  else
    body << doc.dump(2) << "\n";
  if (c.out) {
    std::ofstream f(*c.out, std::ios::binary);
    if (!f) throw conekit::ParseError(*c.out, "cannot write output file");
    f << body.str();
  } else {
    std::cout << body.str();
  }
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_apply(const RunConfig& c) {
  if (!c.input) throw conekit::InvalidArgument("apply needs --input");
  const auto loaded = load_operator(c);
  const auto f = conekit::parse_sampled_function(read_file(*c.input), *c.input);
  const auto result = conekit::apply_member(loaded.op, f);
  emit(c, conekit::to_json(result));
  return kOk;
}

int cmd_norm(const RunConfig& c, bool lipschitz) {
  if (c.trials == 0) throw conekit::InvalidArgument("--trials must be positive");
  const auto loaded = load_operator(c);
  const double exact = conekit::exact_norm(loaded.op);
  const auto est = std::visit(
      [&](const auto& op) {
        return lipschitz ? conekit::empirical_lip_seminorm(op, c.trials, c.seed)
                         : conekit::empirical_op_norm(op, c.trials, c.seed);
      },
      loaded.op);
  Json doc;
  doc["command"] = c.command;
  doc["operator"] = loaded.descriptor;
  doc["exact"] = exact;
  doc["empirical"] = conekit::to_json(est);
  doc["config"] = to_json(c);
  emit(c, doc);
  return kOk;
}

int cmd_verify(const RunConfig& c) {
  if (c.trials == 0) throw conekit::InvalidArgument("--trials must be positive");
  std::optional<conekit::Axiom> inject;
  if (c.inject_bad) {
    inject = conekit::parse_axiom(*c.inject_bad);
    if (!inject) throw conekit::ParseError("--inject-bad", "unknown property '" + *c.inject_bad + "'");
  }
  const auto loaded = load_operator(c);
  const auto reports =
      std::visit([&](const auto& op) { return conekit::run_suite(op, c.trials, c.seed, inject); }, loaded.op);
  const bool ok = conekit::all_passed(reports);
  Json doc;
  doc["command"] = c.command;
  doc["operator"] = loaded.descriptor;
  doc["reports"] = Json::array();
  for (const auto& r : reports) doc["reports"].push_back(conekit::to_json(r));
  doc["overall"] = ok ? "pass" : "fail";
  doc["config"] = to_json(c);
  emit(c, doc);
  return ok ? kOk : kPropertyFailure;
}

int cmd_ubp(const RunConfig& c) {
  conekit::FamilySpec spec;
  spec.count = c.count;
  spec.seed = c.seed;
  spec.bound = c.bound.value_or(7.0);
  if (c.gen) spec.generator = conekit::parse_family_generator(*c.gen);
  const auto result = conekit::ubp_experiment(spec);
  Json doc;
  doc["command"] = c.command;
  Json fam;
  fam["count"] = spec.count;
  fam["generator"] = conekit::to_string(spec.generator);
  fam["bound"] = spec.bound;
  fam["size"] = spec.size;
  fam["seed"] = spec.seed;
  doc["family"] = fam;
  doc["probe_bounds"] = result.probe_bounds;
  doc["certified_bound"] = result.certified_bound;
  doc["sup_lipschitz"] = result.sup_lipschitz;
  doc["report"] = conekit::to_json(result.report);
  doc["overall"] = result.report.passed ? "pass" : "fail";
  doc["config"] = to_json(c);
  emit(c, doc);
  return result.report.passed ? kOk : kPropertyFailure;
}

int dispatch(const RunConfig& c) {
  if (c.command == "apply") return cmd_apply(c);
  if (c.command == "norm") return cmd_norm(c, false);
  if (c.command == "lipschitz") return cmd_norm(c, true);
  if (c.command == "verify") return cmd_verify(c);
  return cmd_ubp(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-type kernel operators on cones: norms, Lipschitz seminorms, property checks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--kernel", cfg.kernel, "finite kernel CSV");
    sub->add_option("--spec", cfg.spec, "continuous kernel spec JSON");
    sub->add_option("--input", cfg.input, "SampledFunction JSON");
    sub->add_option("--gen", cfg.gen, "named generator");
    sub->add_option("--count", cfg.count, "family size (ubp)");
    sub->add_option("--bound", cfg.bound, "kernel entry cap");
    sub->add_option("--trials", cfg.trials, "random trials")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
#ifdef CONEKIT_INJECT_BAD
    sub->add_option("--inject-bad", cfg.inject_bad, "swap a known-bad double into one axiom check");
#endif
  };
  const std::pair<const char*, const char*> commands[] = {
      {"apply", "apply an operator to a function"},
      {"norm", "exact and sampled operator norm"},
      {"lipschitz", "exact norm and sampled Lipschitz seminorm"},
      {"verify", "run the property suite"},
      {"ubp", "uniform boundedness experiment over a family"},
  };
  for (const auto& [name, about] : commands) {
    auto* sub = app.add_subcommand(name, about);
    add_common(sub);
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    return dispatch(cfg);
  } catch (const conekit::DomainMismatch& e) {
    std::cerr << "domain mismatch: " << e.what() << "\n";
    return kDomainMismatch;
  } catch (const conekit::ConeViolation& e) {
    std::cerr << "cone violation: " << e.what() << "\n";
    return kConeViolation;
  } catch (const conekit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const conekit::Error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kBadInput;
  }
}
