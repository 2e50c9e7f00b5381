// Copyright 2026 The symbreak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "symbreak/cli.hpp"

#include <cstdio>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include <yaml-cpp/yaml.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "symbreak/demos.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/io.hpp"
#include "symbreak/suite.hpp"
#include "symbreak/symmetry.hpp"
#include "symbreak/verify.hpp"

namespace symbreak::cli {

namespace {

using groups::GroupSpec;

void require_keys(const YAML::Node& node, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ParseError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(where + ": bad value");
  }
}

GroupSpec parse_group(const YAML::Node& node, const std::string& where) {
  require_keys(node, where, {"kind", "n", "factors"});
  if (!node["kind"]) throw ParseError(where + ": missing kind");
  const auto kind = scalar<std::string>(node["kind"], where + ".kind");
  if (kind == "product") {
    const auto& f = node["factors"];
    if (!f || !f.IsSequence() || f.size() != 2) {
      throw ParseError(where + ": product needs exactly two factors");
    }
    return GroupSpec::product(parse_group(f[0], where + ".factors[0]"),
                              parse_group(f[1], where + ".factors[1]"));
  }
  if (!node["n"]) throw ParseError(where + ": missing n");
  const int n = scalar<int>(node["n"], where + ".n");
  if (kind == "cyclic") return GroupSpec::cyclic(n);
  if (kind == "dihedral") return GroupSpec::dihedral(n);
  if (kind == "symmetric") return GroupSpec::symmetric(n);
  throw ParseError(where + ": unknown group kind '" + kind + "'");
}

solver::Mode parse_mode(const std::string& s) {
  if (s == "standard") return solver::Mode::kStandard;
  if (s == "relaxed") return solver::Mode::kRelaxed;
  throw ParseError("unknown layer mode '" + s + "'");
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() ? p : base / p;
}

reps::RepPtr build_rep(const std::string& name, const RunConfig& cfg,
                       const groups::GroupPtr& group,
                       std::map<std::string, reps::RepPtr>& done,
                       std::set<std::string>& active) {
  if (auto it = done.find(name); it != done.end()) return it->second;
  const auto spec = cfg.representations.find(name);
  if (spec == cfg.representations.end()) {
    throw ParseError("undefined representation '" + name + "'");
  }
  if (!active.insert(name).second) {
    throw ParseError("representation '" + name + "' refers to itself");
  }
  reps::RepPtr rep;
  const auto& rc = spec->second;
  if (rc.type == "permutation") {
    rep = reps::permutation_rep(group);
  } else if (rc.type == "regular") {
    rep = reps::regular_rep(group);
  } else if (rc.type == "direct_sum") {
    if (rc.of.empty()) throw ParseError("direct_sum '" + name + "' has no parts");
    std::vector<reps::RepPtr> parts;
    for (const auto& p : rc.of) parts.push_back(build_rep(p, cfg, group, done, active));
    rep = reps::direct_sum(parts);
  } else if (rc.type == "custom") {
    rep = io::read_representation_csv(rc.file, group);
  } else {
    throw ParseError("representation '" + name + "': unknown type '" + rc.type + "'");
  }
  active.erase(name);
  done.emplace(name, rep);
  return rep;
}

// ---------------------------------------------------------------------------
// Commands.

struct Context {
  RunConfig config;
  bool have_config = false;
  std::ostream& out;
  std::ostream& err;
};

fs::path layer_dir(const fs::path& root, std::size_t i) {
  return root / ("layer_" + std::to_string(i));
}

solver::WeightBasis checked_solve(const solver::ConstraintSystem& sys, std::size_t i) {
  auto basis = solver::solve_basis(sys);
  if (!basis.rank_is_stable()) {
    throw NumericalError("layer " + std::to_string(i) +
                         ": rank decision is unstable at the null-space threshold");
  }
  if (basis.max_residual() > solver::kResidualTol) {
    throw NumericalError("layer " + std::to_string(i) + ": basis residual too large");
  }
  return basis;
}

int cmd_solve(Context& ctx) {
  if (!ctx.have_config) throw ParseError("solve needs --config");
  if (ctx.config.layers.empty()) throw ParseError("config defines no layers");
  const Built built = build(ctx.config);
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t i = 0; i < built.systems.size(); ++i) {
    const auto basis = checked_solve(built.systems[i], i);
    const auto dir = layer_dir(ctx.config.output, i);
    io::export_basis(basis, dir);
    ctx.out << "layer " << i << ": mode=" << solver::to_string(basis.system.mode)
            << " r=" << basis.rank() << " blocks=" << basis.system.blocks.size()
            << " m=" << basis.system.m() << " n=" << basis.system.n() << "\n";
    layers.push_back({{"mode", solver::to_string(basis.system.mode)},
                      {"rank", basis.rank()},
                      {"blocks", basis.system.blocks.size()},
                      {"max_residual", basis.max_residual()},
                      {"dir", dir.filename().string()}});
  }
  io::write_text(ctx.config.output / "solve.json",
                 nlohmann::json{{"group", built.group->name()},
                                {"order", built.group->order()},
                                {"layers", layers}}
                         .dump(2) +
                     "\n");
  return kExitOk;
}

// Suite entries for the configured layers: residual round trip against an
// in-process solve, then the relaxed certificate (or Curie for standard
// layers).
void add_layer_entries(const Context& ctx, const Built& built,
                       std::vector<verify::SuiteEntry>& entries) {
  const auto& cfg = ctx.config;
  for (std::size_t i = 0; i < built.systems.size(); ++i) {
    const auto& sys = built.systems[i];
    auto fresh = std::make_shared<solver::WeightBasis>(checked_solve(sys, i));
    std::shared_ptr<solver::WeightBasis> used = fresh;
    if (cfg.check.basis_dir) {
      try {
        used = std::make_shared<solver::WeightBasis>(
            io::load_basis(layer_dir(*cfg.check.basis_dir, i), sys.rep_in, sys.rep_out));
      } catch (const ParseError& e) {
        throw NumericalError(std::string("corrupted basis: ") + e.what());
      }
      if (used->max_residual() > solver::kResidualTol) {
        throw NumericalError("layer " + std::to_string(i) +
                             ": reloaded basis violates its constraints");
      }
      if (used->rank() != fresh->rank()) {
        throw NumericalError("layer " + std::to_string(i) +
                             ": reloaded basis rank differs from a fresh solve");
      }
    }
    const std::string tag = "layer" + std::to_string(i);
    entries.push_back({tag + "_roundtrip", true, [fresh, used] {
                         CheckReport r("", 1e-12);
                         for (std::size_t j = 0; j < fresh->rank(); ++j) {
                           const double a = fresh->system.residual(fresh->matrices[j]);
                           const double b = used->system.residual(used->matrices[j]);
                           r.observe(std::abs(a - b) +
                                         (fresh->matrices[j] - used->matrices[j])
                                             .cwiseAbs()
                                             .maxCoeff(),
                                     Witness{"residual drift in basis matrix " +
                                                 std::to_string(j),
                                             {}, {}, 0});
                         }
                         return r.finalize();
                       }});
    const auto k = sys.subgroup_k ? *sys.subgroup_k
                                  : groups::trivial_subgroup(sys.rep_in->group());
    const auto cls = groups::conjugacy_class_of_subgroup(k);
    const auto seed = cfg.seed + 1000 * (i + 1);
    entries.push_back({tag + "_theorem4", true, [used, cls, seed] {
                         return solver::verify_theorem4(*used, cls, 200, seed);
                       }});
    if (sys.mode == solver::Mode::kStandard) {
      const double tol = cfg.tolerance;
      entries.push_back({tag + "_curie", true, [used, seed, tol] {
                           const auto& rin = *used->system.rep_in;
                           std::vector<Eigen::VectorXd> inputs{
                               Eigen::VectorXd::Ones(rin.dim())};
                           std::uint64_t s = seed;
                           for (const auto& c : groups::subgroup_classes(rin.group())) {
                             for (auto& x : solver::sample_orbit_type(rin, c, 4, ++s)) {
                               inputs.push_back(x);
                             }
                           }
                           std::mt19937_64 rng(seed);
                           std::normal_distribution<double> normal(0.0, 1.0);
                           std::vector<double> c(used->rank());
                           for (auto& v : c) v = normal(rng);
                           const Eigen::MatrixXd w = solver::assemble_weight(*used, c);
                           const verify::VectorMap fn = [w](const Eigen::VectorXd& x) {
                             Eigen::VectorXd y = w * x;
                             return y;
                           };
                           return verify::check_curie(fn, rin, *used->system.rep_out,
                                                      inputs, tol);
                         }});
    }
  }
}

int cmd_check(Context& ctx) {
  const auto& cfg = ctx.config;
  const auto& fx = cfg.check.fixtures;
  if (fx != "default" && fx != "layers" && fx != "all") {
    throw ParseError("check.fixtures must be default, layers or all");
  }
  std::vector<verify::SuiteEntry> entries;
  if (fx == "default" || fx == "all") {
    suite::SuiteOptions o;
    o.seed = cfg.seed;
    o.tol = cfg.tolerance;
    o.measure_zero_samples = cfg.check.measure_zero_samples;
    entries = suite::default_suite(o);
  }
  if (fx == "layers" || fx == "all") {
    if (cfg.layers.empty()) throw ParseError("check.fixtures needs layers in the config");
    add_layer_entries(ctx, build(cfg), entries);
  }
  const auto result = verify::run_all(entries);
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    const bool met = r.passed == result.expected[i];
    char line[256];
    std::snprintf(line, sizeof(line), "%-5s %-48s %s max_violation=%.3e tol=%.1e\n",
                  met ? "ok" : "FAIL", r.name.c_str(),
                  r.skipped ? "skipped" : (r.passed ? "passed" : "failed"),
                  r.max_violation, r.tolerance);
    ctx.out << line;
  }
  auto bundle = verify::to_json(result);
  bundle["seed"] = cfg.seed;
  io::write_text(cfg.output / "report.json", bundle.dump(2) + "\n");
  ctx.out << (result.all_expected ? "all checks met their expectations\n"
                                  : "some checks missed their expectations\n");
  return result.all_expected ? kExitOk : kExitCheckFailed;
}

int cmd_demo(Context& ctx, const std::string& positional) {
  const std::string name =
      !positional.empty() ? positional : ctx.config.demo.value_or("");
  if (name.empty()) throw ParseError("demo needs a name");
  const auto& names = demos::demo_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ParseError("unknown demo '" + name + "'");
  }
  const auto o = demos::run_demo(name, ctx.config.seed);
  io::write_text(ctx.config.output / (name + ".json"), o.summary.dump(2) + "\n");
  io::write_text(ctx.config.output / (name + ".csv"), o.trace_csv);
  ctx.out << o.summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(Context& ctx, const fs::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_text(file));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  if (!j.contains("reports")) {
    ctx.out << j.dump(2) << "\n";
    return kExitOk;
  }
  std::size_t met = 0;
  for (const auto& r : j["reports"]) {
    const bool passed = r.value("passed", false);
    const bool expect = r.value("expect_pass", true);
    met += passed == expect;
    char line[256];
    std::snprintf(line, sizeof(line), "%-48s expect=%-4s got=%-7s trials=%-8lld max=%.3e\n",
                  r.value("name", std::string("?")).c_str(), expect ? "pass" : "fail",
                  r.value("skipped", false) ? "skipped" : (passed ? "pass" : "fail"),
                  static_cast<long long>(r.value("trials", std::int64_t{0})),
                  r.value("max_violation", 0.0));
    ctx.out << line;
  }
  ctx.out << met << "/" << j["reports"].size() << " reports met expectations\n";
  return kExitOk;
}

}  // namespace

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  require_keys(root, "config",
               {"group", "seed", "tolerance", "output", "representations", "layers",
                "check", "demo"});
  if (root["group"]) cfg.group = parse_group(root["group"], "group");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["tolerance"]) {
    cfg.tolerance = scalar<double>(root["tolerance"], "tolerance");
    if (!(cfg.tolerance > 0)) throw ParseError("tolerance must be positive");
  }
  if (root["output"]) {
    cfg.output = resolve(scalar<std::string>(root["output"], "output"), base_dir);
  } else {
    cfg.output = base_dir / "out";
  }
  if (const auto r = root["representations"]) {
    if (!r.IsMap()) throw ParseError("representations must be a mapping");
    for (const auto& kv : r) {
      const auto name = kv.first.as<std::string>();
      const std::string where = "representations." + name;
      require_keys(kv.second, where, {"type", "of", "file"});
      RepConfig rc;
      if (!kv.second["type"]) throw ParseError(where + ": missing type");
      rc.type = scalar<std::string>(kv.second["type"], where + ".type");
      if (kv.second["of"]) {
        rc.of = scalar<std::vector<std::string>>(kv.second["of"], where + ".of");
      }
      if (kv.second["file"]) {
        rc.file = resolve(scalar<std::string>(kv.second["file"], where + ".file"),
                          base_dir);
      }
      if (rc.type == "custom" && rc.file.empty()) {
        throw ParseError(where + ": custom representation needs a file");
      }
      cfg.representations.emplace(name, std::move(rc));
    }
  }
  // Permutation is always available under its own name.
  cfg.representations.try_emplace("permutation", RepConfig{"permutation", {}, {}});
  if (const auto l = root["layers"]) {
    if (!l.IsSequence()) throw ParseError("layers must be a list");
    for (std::size_t i = 0; i < l.size(); ++i) {
      const std::string where = "layers[" + std::to_string(i) + "]";
      require_keys(l[i], where, {"in", "out", "mode", "K", "activation"});
      LayerConfig lc;
      lc.in = l[i]["in"] ? scalar<std::string>(l[i]["in"], where + ".in") : "permutation";
      lc.out = l[i]["out"] ? scalar<std::string>(l[i]["out"], where + ".out") : "permutation";
      if (l[i]["mode"]) lc.mode = parse_mode(scalar<std::string>(l[i]["mode"], where + ".mode"));
      if (l[i]["K"]) {
        lc.k_generators = scalar<std::vector<groups::Perm>>(l[i]["K"], where + ".K");
      }
      if (l[i]["activation"]) {
        lc.activation = network::activation_from_string(
            scalar<std::string>(l[i]["activation"], where + ".activation"));
      }
      if (lc.mode == solver::Mode::kStandard && !lc.k_generators.empty()) {
        throw ParseError(where + ": K is only meaningful for relaxed layers");
      }
      cfg.layers.push_back(std::move(lc));
    }
  }
  if (const auto c = root["check"]) {
    require_keys(c, "check", {"fixtures", "basis_dir", "measure_zero_samples"});
    if (c["fixtures"]) cfg.check.fixtures = scalar<std::string>(c["fixtures"], "check.fixtures");
    if (c["basis_dir"]) {
      cfg.check.basis_dir =
          resolve(scalar<std::string>(c["basis_dir"], "check.basis_dir"), base_dir);
    }
    if (c["measure_zero_samples"]) {
      cfg.check.measure_zero_samples =
          scalar<std::int64_t>(c["measure_zero_samples"], "check.measure_zero_samples");
      if (cfg.check.measure_zero_samples < 1) {
        throw ParseError("check.measure_zero_samples must be positive");
      }
    }
  }
  if (root["demo"]) cfg.demo = scalar<std::string>(root["demo"], "demo");
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  const auto base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_config(io::read_text(path), base);
}

Built build(const RunConfig& cfg) {
  Built b;
  try {
    b.group = groups::construct_group(cfg.group);
  } catch (const ValidationError& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
  std::set<std::string> active;
  for (const auto& [name, rc] : cfg.representations) {
    build_rep(name, cfg, b.group, b.reps, active);
  }
  for (std::size_t i = 0; i < cfg.layers.size(); ++i) {
    const auto& lc = cfg.layers[i];
    const std::string where = "layers[" + std::to_string(i) + "]";
    const auto in = b.reps.find(lc.in);
    const auto out = b.reps.find(lc.out);
    if (in == b.reps.end()) throw ParseError(where + ": undefined rep '" + lc.in + "'");
    if (out == b.reps.end()) throw ParseError(where + ": undefined rep '" + lc.out + "'");
    if (i > 0 && b.systems.back().m() != in->second->dim()) {
      throw ParseError(where + ": input dimension does not match the previous layer");
    }
    if (lc.mode == solver::Mode::kStandard) {
      b.systems.push_back(solver::build_standard(in->second, out->second));
      continue;
    }
    std::vector<groups::ElementIndex> gens;
    for (const auto& p : lc.k_generators) {
      std::optional<groups::ElementIndex> idx;
      if (p.size() == b.group->degree()) idx = b.group->index_of(p);
      if (!idx) throw ParseError(where + ": K generator is not an element of the group");
      gens.push_back(*idx);
    }
    b.systems.push_back(solver::build_relaxed(in->second, out->second,
                                              groups::subgroup_generate(b.group, gens)));
  }
  return b;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbreak: equivariant and relaxed-equivariant layer toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir, demo_name, report_file;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  app.add_option("--config", config_path, "YAML run configuration");
  app.add_option("--seed", seed, "Override the configured seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--tol", tol, "Relational tolerance for checks");
  auto* solve = app.add_subcommand("solve", "Solve and export weight bases");
  auto* check = app.add_subcommand("check", "Run the check suite");
  auto* demo = app.add_subcommand("demo", "Run a demo scenario");
  demo->add_option("name", demo_name, "square-break | graph-nodes | noise-baseline | relu-collapse");
  auto* report = app.add_subcommand("report", "Pretty-print a JSON report bundle");
  report->add_option("file", report_file, "report.json")->required();
  for (auto* sub : {solve, check, demo, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Context ctx{RunConfig{}, false, out, err};
    if (!config_path.empty()) {
      ctx.config = load_config(config_path);
      ctx.have_config = true;
    } else {
      ctx.config.output = "out";
    }
    if (seed) ctx.config.seed = *seed;
    if (tol) {
      if (!(*tol > 0)) throw ParseError("--tol must be positive");
      ctx.config.tolerance = *tol;
    }
    if (!out_dir.empty()) ctx.config.output = out_dir;
    if (*solve) return cmd_solve(ctx);
    if (*check) return cmd_check(ctx);
    if (*demo) return cmd_demo(ctx, demo_name);
    return cmd_report(ctx, report_file);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GroupMismatchError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SizeError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace symbreak::cli
