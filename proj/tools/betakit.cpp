// betakit command-line front end.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "betakit/coding.hpp"
#include "betakit/error.hpp"
#include "betakit/examples.hpp"
#include "betakit/graph.hpp"
#include "betakit/language.hpp"
#include "betakit/pressure.hpp"
#include "betakit/sequences.hpp"
#include "betakit/specification.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace betakit;

namespace {

struct RunConfig {
  std::string alpha = "0";
  std::string beta = "3";
  std::size_t n = 20;
  std::size_t depth = 0;  // 0: command default
  std::size_t scan = 400;
  long max_bits = 0;
  std::size_t budget = 50'000'000;
  unsigned jobs = 1;
  std::string out = ".";
};

// "eta-root" selects the example beta*; "1/beta" as alpha selects its reciprocal.
Parameters parameters(const RunConfig& cfg) {
  const CertifiedReal beta = cfg.beta == "eta-root" ? example_beta() : CertifiedReal::parse(cfg.beta);
  const CertifiedReal alpha = cfg.alpha == "1/beta" ? CertifiedReal::exact(1) / beta : CertifiedReal::parse(cfg.alpha);
  return Parameters::make(alpha, beta);
}

std::size_t depth_or(const RunConfig& cfg, std::size_t fallback) { return cfg.depth > 0 ? cfg.depth : fallback; }

void write_file(const RunConfig& cfg, const std::string& name, const std::string& text) {
  fs::create_directories(cfg.out);
  std::ofstream f(fs::path(cfg.out) / name, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + (fs::path(cfg.out) / name).string());
  f << text;
}

void emit(const RunConfig& cfg, const std::string& name, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (!name.empty()) write_file(cfg, name, text);
  std::cout << text;
}

int cmd_kneading(const RunConfig& cfg) {
  const KneadingPair kp = compute_kneading(parameters(cfg), cfg.n);
  emit(cfg, "kneading.json", to_json(kp));
  return 0;
}

int cmd_admissible(const RunConfig& cfg, const std::string& text) {
  const Word w = Word::parse(text);
  const KneadingPair kp = compute_kneading(parameters(cfg), std::max<std::size_t>(w.size(), 1));
  const AdmissibilityReport report = is_admissible(w, kp);
  json j = {{"word", w.str()}, {"admissible", report.admissible}};
  if (report.failing_window) {
    j["failing_window"] = {{"k", report.failing_window->k},
                           {"side", report.failing_window->side == WindowSide::Lower ? "lower" : "upper"}};
  } else {
    j["failing_window"] = nullptr;
    const auto [k1, k2] = k_coordinates(w, kp);
    j["k1"] = k1;
    j["k2"] = k2;
  }
  emit(cfg, "", j);
  return report.admissible ? 0 : 1;
}

int cmd_enumerate(const RunConfig& cfg, std::size_t n, bool count_only) {
  const KneadingPair kp = compute_kneading(parameters(cfg), std::max<std::size_t>(n, 1));
  std::string csv = "n,count\n";
  for (std::size_t m = 1; m <= n; ++m) csv += std::to_string(m) + "," + count_words(m, kp).get_str() + "\n";
  write_file(cfg, "counts.csv", csv);
  if (count_only) {
    std::cout << csv;
    return 0;
  }
  for (const Word& w : enumerate_words(n, kp, cfg.budget, cfg.jobs)) std::cout << w.str() << "\n";
  return 0;
}

int cmd_graph(const RunConfig& cfg) {
  const std::size_t depth = depth_or(cfg, 10);
  const KneadingPair kp = compute_kneading(parameters(cfg), depth + 1);
  const HofbauerGraph g = HofbauerGraph::build(kp, depth);
  write_file(cfg, "graph.dot", export_dot(g));
  emit(cfg, "graph.json", to_json(g));
  return 0;
}

int cmd_spec(const RunConfig& cfg) {
  const std::size_t depth = depth_or(cfg, 64);
  const KneadingPair kp = compute_kneading(parameters(cfg), std::max(cfg.scan, depth) + 1);
  const HofbauerGraph g = HofbauerGraph::build(kp, depth);
  emit(cfg, "spec.json", to_json(spec_verdict(kp, g, cfg.scan)));
  return 0;
}

int cmd_entropy(const RunConfig& cfg) {
  const std::size_t depth = depth_or(cfg, 40);
  const Parameters params = parameters(cfg);
  const KneadingPair kp = compute_kneading(params, std::max(depth, cfg.n) + 1);
  const HofbauerGraph g = HofbauerGraph::build(kp, depth);
  const Potential zero = Potential::constant(0.0, kp.ell);
  PressureEstimate estimate = pressure_by_counting(zero, kp, cfg.n, FullLanguage{}, cfg.budget);
  estimate.spectral = transfer_pressure_report(g, zero);
  estimate.method = "counting+transfer";
  write_file(cfg, "pressure.csv", to_csv(estimate));
  json j = to_json(estimate);
  j["log_beta"] = std::log(params.beta.approx());
  emit(cfg, "", j);
  return 0;
}

WordSubset parse_subset(const std::string& text) {
  if (text == "full") return FullLanguage{};
  if (text == "b") return BPrefixes{};
  if (text.rfind("gm:", 0) == 0) return GM{static_cast<std::size_t>(std::stoul(text.substr(3)))};
  throw Error(ErrorCode::InvalidArgument, "subset must be full, b or gm:<M>");
}

int cmd_pressure(const RunConfig& cfg, const std::string& potential_file, const std::string& subset_text) {
  const std::size_t depth = depth_or(cfg, 40);
  std::ifstream in(potential_file);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read potential file " + potential_file);
  json spec;
  try {
    spec = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("potential file: ") + e.what());
  }
  const KneadingPair kp = compute_kneading(parameters(cfg), std::max(depth, cfg.n) + 2);
  const Potential phi = Potential::from_json(spec, kp);
  const HofbauerGraph g = HofbauerGraph::build(kp, depth);
  PressureEstimate estimate = pressure_by_counting(phi, kp, cfg.n, parse_subset(subset_text), cfg.budget);
  estimate.spectral = transfer_pressure_report(g, phi);
  estimate.method = "counting+transfer";
  write_file(cfg, "pressure.csv", to_csv(estimate));
  json j = to_json(estimate);
  j["subset"] = describe(parse_subset(subset_text));
  j["bowen_constant"] = bowen_constant(phi);
  emit(cfg, "", j);
  return 0;
}

int cmd_sequences(const RunConfig& cfg) {
  const std::size_t depth = depth_or(cfg, 300);
  const KneadingPair kp = compute_kneading(parameters(cfg), std::max(depth, cfg.scan) + 2);
  const HofbauerGraph g = HofbauerGraph::build(kp, depth);
  const BDecomposition decomposition = decompose_b(kp, g, depth);
  const BCase which = classify_case(kp, g, depth);
  json j = {{"depth", depth}, {"decomposition", to_json(decomposition)}, {"c", build_c(kp, g, depth).str()}};
  j["case"] = to_string(which);
  json en = json::array();
  for (std::size_t n = depth / 4; n <= depth; n += std::max<std::size_t>(depth / 4, 1)) {
    en.push_back({{"n", n}, {"e_n", decompose_b(kp, g, n).reset_indices.size()}});
  }
  j["e_n"] = std::move(en);
  try {
    const DSequence d = build_d(kp, g, depth, cfg.scan);
    j["d"] = {{"word", d.d.str()}, {"L", d.l}, {"N", d.n}, {"eta", d.eta_word.str()}, {"blocks", d.blocks.size()}};
  } catch (const Error& e) {
    j["d"] = {{"error", to_string(e.code())}, {"message", e.what()}};
  }
  emit(cfg, "sequences.json", j);
  return 0;
}

int cmd_example(const RunConfig& cfg, double tol) {
  const std::size_t depth = depth_or(cfg, 200);
  const ExampleBeta beta = solve_example_beta(tol);
  const ExampleReport report = verify_example(depth);
  const Parameters three = Parameters::parse("1/3", "3");
  const TargetComparison guard = compare_b_with_target(three, std::min<std::size_t>(depth, 40));
  json j = {{"beta_star", to_json(beta)}, {"report", to_json(report)}};
  j["beta_three_guard"] = {{"b_prefix", guard.b_prefix.str()}, {"b_matches_c", guard.matches}};
  emit(cfg, "example.json", j);
  return report.ok() ? 0 : 1;
}

int cmd_perturb(const RunConfig& cfg, double tol, std::size_t budget) {
  const Parameters params = parameters(cfg);
  params.require_beta_above_two();
  const Perturbation p = perturb_to_periodic(params, tol, budget);
  json j = to_json(p);
  j["alpha"] = params.alpha.description();
  j["beta"] = params.beta.description();
  if (p.exact) {
    const std::size_t scan = std::max<std::size_t>(4 * p.period, 64);
    const KneadingPair kp = compute_kneading(Parameters::make(p.alpha_prime, params.beta), scan);
    j["max_Da_after"] = d_set(kp, DSetKind::Da, scan).max_found;
  }
  emit(cfg, "perturb.json", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics of intermediate beta transformations"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "alpha: decimal, p/q, or 1/beta")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "beta: decimal, p/q, or eta-root")->capture_default_str();
    sub->add_option("--max-bits", cfg.max_bits, "working precision ceiling in bits")->check(CLI::Range(64L, 1L << 20));
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
  };

  auto* kneading = app.add_subcommand("kneading", "kneading sequences a and b");
  common(kneading);
  kneading->add_option("-n", cfg.n, "number of symbols")->check(CLI::PositiveNumber);

  std::string word;
  auto* admissible = app.add_subcommand("admissible", "check a word against the language");
  common(admissible);
  admissible->add_option("word", word, "digit string")->required();

  std::size_t enum_n = 0;
  bool count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "list the words of length n");
  common(enumerate);
  enumerate->add_option("n", enum_n, "word length")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--budget", cfg.budget, "maximum number of words")->check(CLI::PositiveNumber);
  enumerate->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  enumerate->add_flag("--count-only", count_only, "print counts only");

  auto* graph = app.add_subcommand("graph", "Hofbauer graph as DOT and JSON");
  common(graph);
  graph->add_option("--depth", cfg.depth, "BFS depth")->check(CLI::PositiveNumber);

  auto* spec = app.add_subcommand("spec", "specification verdict");
  common(spec);
  spec->add_option("--scan", cfg.scan, "scan depth")->check(CLI::PositiveNumber);
  spec->add_option("--depth", cfg.depth, "graph depth")->check(CLI::PositiveNumber);

  auto* entropy = app.add_subcommand("entropy", "topological entropy estimates");
  common(entropy);
  entropy->add_option("-n", cfg.n, "largest word length")->check(CLI::PositiveNumber);
  entropy->add_option("--depth", cfg.depth, "graph depth")->check(CLI::PositiveNumber);
  entropy->add_option("--budget", cfg.budget, "state budget")->check(CLI::PositiveNumber);

  std::string potential_file;
  std::string subset = "full";
  auto* pressure = app.add_subcommand("pressure", "pressure of a locally constant potential");
  common(pressure);
  pressure->add_option("--potential", potential_file, "JSON potential file")->required();
  pressure->add_option("--subset", subset, "full, b or gm:<M>")->capture_default_str();
  pressure->add_option("-n", cfg.n, "largest word length")->check(CLI::PositiveNumber);
  pressure->add_option("--depth", cfg.depth, "graph depth")->check(CLI::PositiveNumber);
  pressure->add_option("--budget", cfg.budget, "state budget")->check(CLI::PositiveNumber);

  auto* sequences = app.add_subcommand("sequences", "comparison sequences c and d");
  common(sequences);
  sequences->add_option("--depth", cfg.depth, "prefix length")->check(CLI::PositiveNumber);
  sequences->add_option("--scan", cfg.scan, "D(a) scan depth")->check(CLI::PositiveNumber);

  double tol = 1e-12;
  auto* example = app.add_subcommand("example", "the eta(c)=1 example end to end");
  common(example);
  example->add_option("--depth", cfg.depth, "kneading depth")->check(CLI::PositiveNumber);
  example->add_option("--tol", tol, "bound on |eta(c) - 1|")->check(CLI::PositiveNumber);

  double perturb_tol = 1e-3;
  std::size_t orbit_budget = 400;
  auto* perturb = app.add_subcommand("perturb", "nearby alpha with a periodic orbit of 0");
  common(perturb);
  perturb->add_option("--tol", perturb_tol, "largest change of alpha")->check(CLI::PositiveNumber);
  perturb->add_option("--budget", orbit_budget, "orbit steps to scan")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  if (cfg.max_bits > 0) ::setenv("BETAKIT_MAX_BITS", std::to_string(cfg.max_bits).c_str(), 1);

  try {
    if (*kneading) return cmd_kneading(cfg);
    if (*admissible) return cmd_admissible(cfg, word);
    if (*enumerate) return cmd_enumerate(cfg, enum_n, count_only);
    if (*graph) return cmd_graph(cfg);
    if (*spec) return cmd_spec(cfg);
    if (*entropy) return cmd_entropy(cfg);
    if (*pressure) return cmd_pressure(cfg, potential_file, subset);
    if (*sequences) return cmd_sequences(cfg);
    if (*example) return cmd_example(cfg, tol);
    if (*perturb) return cmd_perturb(cfg, perturb_tol, orbit_budget);
  } catch (const Error& e) {
    std::cout << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
  return 0;
}
