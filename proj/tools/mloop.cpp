// mloop: command-line front end for the loop engine.
//
// Exit codes: 0 success, 1 a law or check failed, 2 usage, validation or
// guard error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mloop/error.hpp"
#include "mloop/loop.hpp"
#include "mloop/mult_group.hpp"
#include "mloop/normalizer.hpp"
#include "mloop/structure.hpp"
#include "mloop/verify.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace mloop;

struct Source {
  std::string input;
  std::string gen;
};

struct Options {
  Source source;
  std::string json_path;
  std::size_t max_order = 0;    // 0: environment or default
  std::size_t lattice_max = 0;  // 0: default
  std::uint64_t seed = 0;
  std::string subloop;
  std::string within;
  std::string suite = "all";
  bool oracle = false;
};

Limits make_limits(const Options& o) {
  Limits l = kDefaultLimits;
  if (const char* env = std::getenv("MLOOP_MAX_ORDER")) {
    try {
      l.max_order = std::stoul(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("MLOOP_MAX_ORDER is not a number: ") + env);
    }
  }
  if (o.max_order) l.max_order = o.max_order;
  if (o.lattice_max) l.lattice_order = o.lattice_max;
  return l;
}

CayleyLoop load(const Options& o, const Limits& limits) {
  if (!o.source.input.empty() && !o.source.gen.empty())
    throw std::invalid_argument("give either --input or --gen, not both");
  if (!o.source.gen.empty()) return loop_from_spec(o.source.gen, limits);
  if (o.source.input.empty()) throw std::invalid_argument("one of --input or --gen is required");
  std::ifstream in(o.source.input);
  if (!in) throw std::invalid_argument("cannot read " + o.source.input);
  std::stringstream ss;
  ss << in.rdbuf();
  CayleyLoop loop = parse_loop(ss.str(), limits);
  if (loop.name().empty()) return loop.renamed(std::filesystem::path(o.source.input).stem().string());
  return loop;
}

std::vector<Index> parse_indices(const std::string& text, std::size_t order) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size())
      throw std::invalid_argument("bad element index '" + tok + "'");
    if (v >= order)
      throw std::invalid_argument("element index " + tok + " out of range for order " +
                                  std::to_string(order));
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

void emit(const Options& o, const Json& j) {
  if (o.json_path.empty()) return;
  std::ofstream out(o.json_path);
  if (!out) throw std::invalid_argument("cannot write " + o.json_path);
  out << j.dump(2) << '\n';
}

int cmd_check(const Options& o) {
  const Limits limits = make_limits(o);
  const CayleyLoop loop = load(o, limits);
  const LoopDiagnostics d = diagnose(loop);
  std::cout << std::boolalpha << "loop: " << loop.name() << " (order " << loop.order() << ")\n"
            << "is_latin: " << d.is_latin << "\nhas_identity: " << d.has_identity
            << "\nis_commutative: " << d.is_commutative << "\nis_cml: " << d.is_cml
            << "\nis_associative: " << d.is_associative << '\n';
  Json j{{"name", loop.name()},
         {"order", loop.order()},
         {"is_latin", d.is_latin},
         {"has_identity", d.has_identity},
         {"is_commutative", d.is_commutative},
         {"is_cml", d.is_cml},
         {"is_associative", d.is_associative}};
  if (d.first_violation) {
    const auto& v = *d.first_violation;
    std::cout << "first_violation: " << v.law << " (" << v.triple[0] << "," << v.triple[1] << ","
              << v.triple[2] << ")\n";
    j["first_violation"] = {{"law", v.law}, {"triple", v.triple}};
  }
  emit(o, j);
  return d.is_cml ? 0 : 1;
}

int cmd_invariants(const Options& o) {
  const Limits limits = make_limits(o);
  const CayleyLoop loop = load(o, limits);
  if (!loop.is_cml()) throw Error(ErrorKind::NotCML, "invariants need a CML");
  const CentralSeries series = upper_central_series(loop);
  const std::size_t frattini = loop.order() == 1 ? 1 : frattini_subloop(loop).size();
  const MultGroupBundle b = multiplication_group(loop, limits);
  Json j;
  j["name"] = loop.name();
  j["order"] = loop.order();
  j["center"] = center(loop).size();
  j["associator_subloop"] = associator_subloop(loop).size();
  j["cube_subloop"] = cube_subloop(loop).size();
  j["nilpotency_class"] = series.nilpotency_class ? Json(*series.nilpotency_class) : Json(nullptr);
  j["frattini_subloop"] = frattini;
  j["mult_group"] = b.mult.order();
  j["inner_mapping_group"] = b.inner.order();
  j["mult_group_center"] = center_of_group(b.mult, limits).order();
  j["mult_group_derived"] = derived_subgroup(b.mult).order();
  j["mult_group_frattini"] = frattini_subgroup(b.mult, limits).order();
  Json terms = Json::array();
  for (const Subloop& t : series.terms) terms.push_back(t.to_string());
  j["upper_central_series"] = std::move(terms);
  for (const auto& [key, value] : j.items())
    if (key != "upper_central_series") std::cout << key << ": " << value.dump() << '\n';
  emit(o, j);
  return 0;
}

int cmd_normalizer(const Options& o) {
  const Limits limits = make_limits(o);
  const CayleyLoop loop = load(o, limits);
  if (!loop.is_cml()) throw Error(ErrorKind::NotCML, "normalizer needs a CML");
  const Subloop h = generate_subloop(loop, parse_indices(o.subloop, loop.order()));
  const Subloop k = o.within.empty() ? Subloop::whole(loop)
                                     : generate_subloop(loop, parse_indices(o.within, loop.order()));
  const NormalizerTrace t = normalizer(loop, k, h);
  std::cout << std::boolalpha << "H: " << h.to_string() << "\nK: " << k.to_string() << '\n';
  Json stages = Json::array();
  for (std::size_t i = 0; i < t.p_stages.size(); ++i) {
    std::cout << "P" << i + 1 << " (" << t.p_stages[i].size() << "), D" << i + 1 << " ("
              << t.d_stages[i].size() << ")\n";
    stages.push_back({{"P", t.p_stages[i]}, {"D", t.d_stages[i]}});
  }
  std::cout << "N: " << t.result.to_string() << " (order " << t.result.size() << ")\n"
            << "p_equals_d: " << t.p_equals_d << "\nd_closed: " << t.d_closed
            << "\nmonotone: " << t.monotone << "\nh_normal_in_result: " << t.h_normal_in_result
            << "\nmaximality_violations: " << t.maximality_violations.size() << '\n';
  Json j{{"H", h.to_string()},
         {"K", k.to_string()},
         {"stages", std::move(stages)},
         {"iterations", t.iterations},
         {"result", t.result.to_string()},
         {"p_equals_d", t.p_equals_d},
         {"d_closed", t.d_closed},
         {"monotone", t.monotone},
         {"h_normal_in_result", t.h_normal_in_result},
         {"maximality_violations", t.maximality_violations}};
  bool ok = t.healthy();
  if (o.oracle) {
    const OracleRuns runs = normalizer_oracle(loop, k, h, o.seed);
    Json results = Json::array();
    bool agree = runs.unanimous;
    for (const Subloop& s : runs.runs) {
      results.push_back(s.to_string());
      agree = agree && s == t.result;
    }
    std::cout << "oracle_runs: " << runs.runs.size() << "\noracle_agrees: " << agree << '\n';
    j["oracle"] = {{"runs", std::move(results)}, {"unanimous", runs.unanimous}, {"agrees", agree}};
    ok = ok && agree;
  }
  emit(o, j);
  return ok ? 0 : 1;
}

int cmd_verify(const Options& o) {
  const Limits limits = make_limits(o);
  const CayleyLoop loop = load(o, limits);
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.limits = limits;
  const VerdictReport r = run_suite(loop, o.suite, vo);
  for (const CheckOutcome& c : r.checks) {
    std::cout << to_string(c.status) << "  " << c.name;
    if (c.status != CheckStatus::Pass) std::cout << "  " << c.witness.dump();
    std::cout << '\n';
  }
  emit(o, r.to_json());
  return r.all_passed() ? 0 : 1;
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.source.input, "loop file");
  cmd->add_option("--gen", o.source.gen,
                  "generator spec: abelian:a,b,..., zassenhaus81, trivial, product:AxB");
  cmd->add_option("--json", o.json_path, "write a JSON report to this path");
  cmd->add_option("--max-order", o.max_order, "loop order guard (also MLOOP_MAX_ORDER)");
  cmd->add_option("--lattice-max", o.lattice_max, "subloop lattice guard");
  cmd->add_option("--seed", o.seed, "seed for sampled checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on finite commutative Moufang loops"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "validate a loop and print its diagnostics");
  add_source(check, o);
  auto* inv = app.add_subcommand("invariants", "print loop and multiplication-group invariants");
  add_source(inv, o);
  auto* norm = app.add_subcommand("normalizer", "normalizer of <subloop> within <within>");
  add_source(norm, o);
  norm->add_option("--subloop", o.subloop, "generators of H, e.g. 0,27")->required();
  norm->add_option("--within", o.within, "generators of K (default: the whole loop)");
  norm->add_flag("--oracle", o.oracle, "cross-check with greedy saturation");
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  add_source(ver, o);
  ver->add_option("--suite", o.suite, "suite name")
      ->check(CLI::IsMember(mloop::suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(o);
    if (*inv) return cmd_invariants(o);
    if (*norm) return cmd_normalizer(o);
    return cmd_verify(o);
  } catch (const mloop::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  }
}
