// fractalmeter: generate dyadic test measures, analyze their energies,
// entropies, projections and pinned-distance pushforwards, run the full
// distance experiment, and execute the verification suites.
//
// Exit codes: 0 success, 2 usage, 3 validation, 4 failed assertion/verdict.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fm/experiment.hpp"
#include "fm/family.hpp"
#include "fm/generators.hpp"
#include "fm/measure_io.hpp"
#include "fm/report.hpp"
#include "fm/verify.hpp"
#include "fm/version.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitAssertion = 4;

std::vector<double> parse_pair(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.size() != 2) throw fm::validation_error(std::string(what) + ": expected x,y");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fm::format_error("cannot open '" + path + "' for writing");
  out << text;
}

ordered_json measure_echo(const std::string& path, const fm::LoadedMeasure& m) {
  ordered_json j;
  j["file"] = path;
  j["dim"] = m.dim();
  j["depth"] = m.depth();
  j["mode"] = m.mode == fm::NumericMode::Rational ? "rational" : "float";
  j["tree_hash"] = m.mode == fm::NumericMode::Rational ? fm::tree_hash(*m.exact)
                                                       : fm::tree_hash(*m.flt);
  return j;
}

// ---------------------------------------------------------------------------

int cmd_gen(const fm::GeneratorSpec& spec, const std::string& mode,
            const std::string& out_path) {
  if (mode == "rational") {
    if (!spec.exact_capable())
      throw fm::validation_error("gen: kind '" + spec.kind + "' supports float mode only");
    fm::save_measure(out_path, fm::generate_exact(spec));
  } else if (mode == "float") {
    fm::save_measure(out_path, fm::generate_float(spec));
  } else {
    throw fm::validation_error("gen: mode must be rational or float");
  }
  std::cerr << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_analyze_energy(const fm::LoadedMeasure& m, const std::string& path, double s,
                       int subdiv, bool euclid, const std::string& out,
                       const std::string& csv) {
  ordered_json j;
  j["tool_version"] = fm::kToolVersion;
  j["input"] = measure_echo(path, m);
  j["what"] = "energy";
  j["s"] = s;
  auto tree = m.as_float();
  j["dyadic_energy"] = fm::dyadic_energy(tree, s);
  auto profile = fm::correlation_profile(tree, fm::FloatExponent(s, tree.dim()));
  j["correlation_profile_levels"] = profile.size();
  if (m.mode == fm::NumericMode::Rational &&
      std::abs(s * 2 - std::round(s * 2)) < 1e-12) {
    auto e = fm::dyadic_energy(*m.exact,
                               fm::HalfExponent(static_cast<long>(std::llround(s * 2)),
                                                m.exact->dim()));
    j["dyadic_energy_exact"] = {{"a", fm::to_string(e.a)}, {"b_sqrt2", fm::to_string(e.b)}};
  }
  if (euclid) j["euclidean_energy"] = fm::euclidean_energy(tree, s, subdiv);
  if (!csv.empty()) write_text(csv, fm::csv_correlation_profile(profile));
  write_text(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_analyze_entropy(const fm::LoadedMeasure& m, const std::string& path, int level,
                        int coarse, const std::string& out) {
  auto tree = m.as_float();
  if (level < 0) level = tree.depth();
  ordered_json j;
  j["tool_version"] = fm::kToolVersion;
  j["input"] = measure_echo(path, m);
  j["what"] = "entropy";
  j["level"] = level;
  auto grid = fm::discretize(tree, level);
  j["entropy_bits"] = fm::partition_entropy(grid);
  if (level >= 1) {
    j["normalized_entropy"] = fm::normalized_entropy(grid);
    j["l2_lower_bound"] = fm::entropy_lower_bound_from_l2(grid);
  }
  if (coarse >= 0) {
    j["conditional_coarse_level"] = coarse;
    j["conditional_entropy"] = fm::conditional_entropy(tree, level, coarse);
  }
  write_text(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_analyze_project(const fm::LoadedMeasure& m, const std::string& path, double gamma,
                        int n_angles, int subdiv, const std::string& out,
                        const std::string& csv) {
  auto tree = m.as_float();
  if (tree.dim() != 2) throw fm::validation_error("project: needs a 2d measure");
  ordered_json j;
  j["tool_version"] = fm::kToolVersion;
  j["input"] = measure_echo(path, m);
  j["what"] = "project";
  j["gamma"] = gamma;
  j["n_angles"] = n_angles;
  auto res = fm::marstrand_integral(tree, gamma, n_angles, subdiv);
  j["sobolev_angle_average"] = res.lhs;
  j["dyadic_energy_s"] = 1.0 + 2.0 * gamma;
  j["dyadic_energy"] = res.rhs;
  j["ratio"] = res.ratio;
  j["subdiv_used"] = res.subdiv_used;
  if (!csv.empty()) write_text(csv, fm::csv_angle_sweep(fm::angle_sweep(tree, gamma, n_angles, subdiv)));
  write_text(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_analyze_pindist(const fm::LoadedMeasure& m, const std::string& path,
                        std::array<double, 2> y, int out_level, int subdiv,
                        const std::string& out, const std::string& csv) {
  auto tree = m.as_float();
  if (tree.dim() != 2) throw fm::validation_error("pindist: needs a 2d measure");
  if (out_level < 0) out_level = tree.depth();
  auto grid = fm::discretize(tree, tree.depth());
  auto push = fm::pinned_pushforward(grid, y, out_level, subdiv);
  ordered_json j;
  j["tool_version"] = fm::kToolVersion;
  j["input"] = measure_echo(path, m);
  j["what"] = "pindist";
  j["y"] = y;
  j["out_level"] = out_level;
  j["subdiv"] = subdiv;
  j["entropy_bits"] = push.entropy_bits();
  j["normalized_entropy"] = push.entropy_bits() / out_level;
  j["charged_bins"] = [&] {
    std::size_t n = 0;
    for (double v : push.masses()) n += v != 0;
    return n;
  }();
  if (!csv.empty()) write_text(csv, fm::csv_line_bins(push));
  write_text(out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const std::string& suite, const fm::verify::Options& opt,
               const std::string& out) {
  std::vector<fm::verify::Check> checks;
  if (suite == "identities" || suite == "all")
    for (auto& c : fm::verify::identities(opt)) checks.push_back(std::move(c));
  if (suite == "inequalities" || suite == "all")
    for (auto& c : fm::verify::inequalities(opt)) checks.push_back(std::move(c));
  if (suite == "pipeline" || suite == "all")
    for (auto& c : fm::verify::pipeline(opt)) checks.push_back(std::move(c));
  if (checks.empty()) throw fm::validation_error("verify: unknown suite '" + suite + "'");

  std::ostringstream lines;
  bool ok = true;
  for (const auto& c : checks) {
    ordered_json j;
    j["suite"] = c.suite;
    j["check"] = c.name;
    j["pass"] = c.pass;
    if (!c.detail.empty()) j["detail"] = c.detail;
    lines << j.dump() << "\n";
    if (!c.pass) {
      ok = false;
      std::cerr << "FAILED: " << c.suite << "/" << c.name << " " << c.detail << "\n";
    }
  }
  write_text(out, lines.str());
  return ok ? kExitOk : kExitAssertion;
}

int cmd_experiment(const std::string& spec_path, const std::string& out) {
  std::ifstream in(spec_path);
  if (!in) throw fm::format_error("cannot open '" + spec_path + "'");
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw fm::format_error(std::string("experiment spec: ") + e.what());
  }

  fm::ExperimentConfig cfg;
  cfg.t = spec.value("t", cfg.t);
  cfg.eps = spec.value("eps", cfg.eps);
  cfg.s = spec.value("s", cfg.s);
  cfg.j0 = spec.value("j0", cfg.j0);
  cfg.n_angles = spec.value("n_angles", cfg.n_angles);
  cfg.subdiv = spec.value("subdiv", cfg.subdiv);
  cfg.seed = spec.value("seed", cfg.seed);
  if (spec.contains("annulus_levels"))
    cfg.annulus_levels = spec["annulus_levels"].get<std::vector<int>>();
  cfg.n_random_subsets = spec.value("n_random_subsets", cfg.n_random_subsets);
  cfg.frostman_c_max = spec.value("frostman_c_max", cfg.frostman_c_max);
  cfg.separation = spec.value("separation", cfg.separation);
  if (spec.contains("candidates")) {
    for (const auto& c : spec["candidates"])
      cfg.candidates.push_back({c[0].get<double>(), c[1].get<double>()});
  } else {
    auto grid_spec = spec.value("candidate_grid", nlohmann::json::object());
    int n = grid_spec.value("n", 8);
    double x0 = grid_spec.value("x0", -1.0), y0 = grid_spec.value("y0", -1.0);
    double side = grid_spec.value("side", 1.0);
    for (int i = 0; i < n; ++i) {
      for (int jj = 0; jj < n; ++jj) {
        cfg.candidates.push_back({x0 + side * (i + 0.5) / n, y0 + side * (jj + 0.5) / n});
      }
    }
  }

  ordered_json echo;
  echo["spec_file"] = spec_path;
  echo["spec"] = spec;

  auto start = std::chrono::steady_clock::now();
  fm::ExperimentResult res;
  if (spec.contains("measure")) {
    auto m = fm::load_measure(spec["measure"].get<std::string>());
    echo["input"] = measure_echo(spec["measure"].get<std::string>(), m);
    res = m.mode == fm::NumericMode::Rational
              ? fm::run_distance_experiment(*m.exact, cfg)
              : fm::run_distance_experiment(*m.flt, cfg);
  } else if (spec.contains("generator")) {
    auto gspec = fm::GeneratorSpec::from_json_string(spec["generator"].dump());
    echo["generator"] = spec["generator"];
    if (gspec.exact_capable() && spec.value("mode", "rational") == "rational") {
      auto tree = fm::generate_exact(gspec);
      echo["tree_hash"] = fm::tree_hash(tree);
      res = fm::run_distance_experiment(tree, cfg);
    } else {
      auto tree = fm::generate_float(gspec);
      echo["tree_hash"] = fm::tree_hash(tree);
      res = fm::run_distance_experiment(tree, cfg);
    }
  } else {
    throw fm::validation_error("experiment spec needs 'measure' or 'generator'");
  }
  double wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();

  auto report = fm::experiment_report_json(cfg, res, echo, wall_ms);
  write_text(out, report.dump(2) + "\n");
  if (!res.frostman_ok)
    std::cerr << "note: Frostman constant " << res.frostman_c << " exceeds the bound\n";
  return res.verdict ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic-measure laboratory: energies, entropies, projections and "
               "pinned distance sets at finite resolution"};
  app.set_version_flag("--version", std::string(fm::kToolVersion));
  app.require_subcommand(1);

  // ---- gen
  auto* gen = app.add_subcommand("gen", "generate a measure file");
  fm::GeneratorSpec gspec;
  std::string gen_mode = "rational", gen_out, gen_pattern = "0,1,3", gen_center = "0.5,0.5";
  std::string gen_a = "0.25,0.5", gen_b = "0.75,0.5", gen_spec_json;
  gen->add_option("--kind", gspec.kind,
                  "branching | digits | beta | circle | line | product");
  gen->add_option("--spec", gen_spec_json, "full generator spec as JSON (overrides flags)");
  gen->add_option("--depth,--level", gspec.depth, "tree depth");
  gen->add_option("--dim", gspec.dim, "ambient dimension (digits/beta)");
  gen->add_option("--pattern", gen_pattern, "branching pattern, e.g. 0,1,3");
  gen->add_option("--blocked", gspec.blocked, "digits: squares | never | always | list");
  gen->add_option("--blocked-list", gspec.blocked_list, "digits: explicit blocked levels");
  gen->add_option("--p", gspec.p, "beta: survival probability");
  gen->add_option("--seed", gspec.seed, "beta: RNG seed");
  gen->add_option("--center", gen_center, "circle center x,y");
  gen->add_option("--radius", gspec.radius, "circle radius");
  gen->add_option("--a", gen_a, "line segment start x,y");
  gen->add_option("--b", gen_b, "line segment end x,y");
  gen->add_option("--mode", gen_mode, "rational | float");
  gen->add_option("--out", gen_out, "output measure file")->required();

  // ---- analyze
  auto* analyze = app.add_subcommand("analyze", "analyze a measure file");
  std::string an_what, an_file, an_out = "-", an_csv;
  double an_s = 1.0, an_gamma = 0.2;
  int an_level = -1, an_coarse = -1, an_angles = 32, an_subdiv = 3, an_outlevel = -1;
  std::string an_y = "-0.5,-0.5";
  bool an_euclid = false;
  analyze->add_option("what", an_what, "energy | entropy | project | pindist")->required();
  analyze->add_option("--measure,-m", an_file, "measure file")->required();
  analyze->add_option("--s", an_s, "energy exponent");
  analyze->add_flag("--euclidean", an_euclid, "also compute the Riesz energy");
  analyze->add_option("--gamma", an_gamma, "Sobolev exponent");
  analyze->add_option("--level", an_level, "entropy level (default: depth)");
  analyze->add_option("--coarse", an_coarse, "conditional entropy coarse level");
  analyze->add_option("--angles", an_angles, "number of angles");
  analyze->add_option("--subdiv", an_subdiv, "cell subdivision exponent");
  analyze->add_option("--y", an_y, "pin location x,y");
  analyze->add_option("--out-level", an_outlevel, "pushforward bin level");
  analyze->add_option("--out", an_out, "report path or - for stdout");
  analyze->add_option("--csv", an_csv, "CSV table path");

  // ---- verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite, v_size = "full", v_out = "-";
  std::uint64_t v_seed = 7;
  verify->add_option("suite", v_suite, "identities | inequalities | pipeline | all")
      ->required();
  verify->add_option("--seed", v_seed, "suite RNG seed");
  verify->add_option("--size", v_size, "small | full | explicit case count");
  verify->add_option("--out", v_out, "JSON-lines output path or -");

  // ---- experiment
  auto* exp = app.add_subcommand("experiment", "run the pinned-distance experiment");
  std::string e_spec, e_out = "-";
  exp->add_option("spec", e_spec, "experiment spec JSON file")->required();
  exp->add_option("--out", e_out, "report path or -");

  // ---- report
  auto* rep = app.add_subcommand("report", "summarize a stored experiment report");
  std::string r_file;
  rep->add_option("file", r_file, "report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (!gen_spec_json.empty()) {
        gspec = fm::GeneratorSpec::from_json_string(gen_spec_json);
      } else {
        gspec.pattern.clear();
        std::stringstream ss(gen_pattern);
        std::string item;
        while (std::getline(ss, item, ',')) gspec.pattern.push_back(std::stoi(item));
        auto c = parse_pair(gen_center, "--center");
        gspec.center = {c[0], c[1]};
        auto a = parse_pair(gen_a, "--a");
        auto b = parse_pair(gen_b, "--b");
        gspec.line_a = {a[0], a[1]};
        gspec.line_b = {b[0], b[1]};
      }
      if (gspec.kind.empty()) throw fm::validation_error("gen: --kind is required");
      if (!gspec.exact_capable() && gen_mode == "rational") gen_mode = "float";
      return cmd_gen(gspec, gen_mode, gen_out);
    }
    if (analyze->parsed()) {
      auto m = fm::load_measure(an_file);
      if (an_what == "energy")
        return cmd_analyze_energy(m, an_file, an_s, an_subdiv, an_euclid, an_out, an_csv);
      if (an_what == "entropy")
        return cmd_analyze_entropy(m, an_file, an_level, an_coarse, an_out);
      if (an_what == "project")
        return cmd_analyze_project(m, an_file, an_gamma, an_angles, an_subdiv, an_out,
                                   an_csv);
      if (an_what == "pindist") {
        auto y = parse_pair(an_y, "--y");
        return cmd_analyze_pindist(m, an_file, {y[0], y[1]}, an_outlevel, an_subdiv,
                                   an_out, an_csv);
      }
      throw fm::validation_error("analyze: unknown target '" + an_what + "'");
    }
    if (verify->parsed()) {
      fm::verify::Options opt;
      opt.seed = v_seed;
      if (v_size == "small") {
        opt.small = true;
      } else if (v_size != "full") {
        try {
          opt.count = std::stoi(v_size);
        } catch (const std::exception&) {
          opt.count = 0;
        }
        if (opt.count <= 0)
          throw fm::validation_error("verify: size must be small, full, or a case count");
      }
      return cmd_verify(v_suite, opt, v_out);
    }
    if (exp->parsed()) return cmd_experiment(e_spec, e_out);
    if (rep->parsed()) {
      std::string text;
      bool ok = fm::summarize_report(r_file, text);
      std::cout << text;
      return ok ? kExitOk : kExitAssertion;
    }
  } catch (const fm::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fm::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
