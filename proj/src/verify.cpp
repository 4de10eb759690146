#include "mloop/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "mloop/error.hpp"
#include "mloop/mult_group.hpp"
#include "mloop/normalizer.hpp"
#include "mloop/structure.hpp"

namespace mloop {

using Json = nlohmann::ordered_json;

// -------------------------------------------------------------- gen specs

CayleyLoop loop_from_spec(std::string_view spec, const Limits& limits) {
  auto bad = [&](const std::string& why) {
    return Error(ErrorKind::BadGeneratorSpec, "'" + std::string(spec) + "': " + why);
  };
  if (spec == "zassenhaus81") {
    if (limits.max_order < 81) {
      throw Error(ErrorKind::OrderOverflow,
                  "max-order guard: order 81 exceeds " + std::to_string(limits.max_order));
    }
    return gen_zassenhaus81();
  }
  if (spec == "trivial") return trivial_loop();
  constexpr std::string_view kAbelian = "abelian:";
  constexpr std::string_view kProduct = "product:";
  if (spec.starts_with(kAbelian)) {
    std::vector<int> moduli;
    std::string_view rest = spec.substr(kAbelian.size());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string token(rest.substr(0, comma));
      std::size_t used = 0;
      int m = 0;
      try {
        m = std::stoi(token, &used);
      } catch (const std::exception&) {
        throw bad("modulus '" + token + "' is not an integer");
      }
      if (used != token.size()) throw bad("modulus '" + token + "' is not an integer");
      moduli.push_back(m);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (moduli.empty()) throw bad("no moduli");
    return gen_abelian(moduli, limits);
  }
  if (spec.starts_with(kProduct)) {
    const std::string_view rest = spec.substr(kProduct.size());
    const auto x = rest.find('x');
    if (x == std::string_view::npos) throw bad("product needs <spec>x<spec>");
    const CayleyLoop a = loop_from_spec(rest.substr(0, x), limits);
    const CayleyLoop b = loop_from_spec(rest.substr(x + 1), limits);
    return direct_product(a, b, limits);
  }
  throw bad("unknown generator");
}

// ----------------------------------------------------------------- report

bool VerdictReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckOutcome& c) { return c.status != CheckStatus::Fail; });
}

Json VerdictReport::to_json() const {
  Json j;
  j["artifact_version"] = artifact_version;
  j["loop"] = {{"name", loop_name}, {"order", loop_order}};
  j["checks"] = Json::array();
  for (const CheckOutcome& c : checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = std::string(to_string(c.status));
    e["witness"] = c.witness;
    e["millis"] = c.millis;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

// ---------------------------------------------------------------- context

namespace {

CheckOutcome skipped(std::string name, const std::string& reason) {
  return CheckOutcome{std::move(name), CheckStatus::Skipped, Json{{"reason", reason}}, 0};
}

Json triple(Index a, Index b, Index c) { return Json::array({a, b, c}); }

// Lazily computed shared objects; every check sees the same instances.
class Context {
 public:
  Context(const CayleyLoop& loop, const VerifyOptions& opts) : loop(loop), opts(opts) {}

  const CayleyLoop& loop;
  const VerifyOptions& opts;

  const MultGroupBundle& bundle() {
    if (!bundle_) bundle_ = multiplication_group(loop, opts.limits);
    return *bundle_;
  }
  const std::vector<Subloop>& lattice() {
    if (!lattice_) lattice_ = all_subloops(loop, opts.limits);
    return *lattice_;
  }
  const Subloop& zl() {
    if (!center_) center_ = center(loop);
    return *center_;
  }
  const Subloop& lprime() {
    if (!lprime_) lprime_ = associator_subloop(loop);
    return *lprime_;
  }
  const CentralSeries& series() {
    if (!series_) series_ = upper_central_series(loop);
    return *series_;
  }
  const NormalizerCondition& condition() {
    if (!condition_) condition_ = normalizer_condition(loop, opts.limits);
    return *condition_;
  }
  const PermGroup& phi_m() {
    if (!phi_m_) phi_m_ = frattini_subgroup(bundle().mult, opts.limits);
    return *phi_m_;
  }

 private:
  std::optional<MultGroupBundle> bundle_;
  std::optional<std::vector<Subloop>> lattice_;
  std::optional<Subloop> center_;
  std::optional<Subloop> lprime_;
  std::optional<CentralSeries> series_;
  std::optional<NormalizerCondition> condition_;
  std::optional<PermGroup> phi_m_;
};

// --------------------------------------------------------------- identities

// L(x,y)z = z(z,y,x)
CheckOutcome check_inner_mapping_identity(Context& ctx) {
  const CayleyLoop& l = ctx.loop;
  const auto n = static_cast<Index>(l.order());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      const Index xy = l.mul(x, y);
      for (Index z = 0; z < n; ++z) {
        const Index lhs = l.left_div(xy, l.mul(x, l.mul(y, z)));
        const Index rhs = l.mul(z, l.associator(z, y, x));
        if (lhs != rhs) {
          return make_outcome("inner_mapping_identity", false,
                              Json{{"triple", triple(x, y, z)}, {"lhs", lhs}, {"rhs", rhs}});
        }
      }
    }
  return make_outcome("inner_mapping_identity", true, Json{{"triples", std::uint64_t{n} * n * n}});
}

// (x,y,z) = (y,z,x) = (y^-1,x,z) = (y,x,z)^-1
CheckOutcome check_associator_symmetries(Context& ctx) {
  const CayleyLoop& l = ctx.loop;
  const auto n = static_cast<Index>(l.order());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) {
        const Index a = l.associator(x, y, z);
        const Index cyc = l.associator(y, z, x);
        const Index inv_first = l.associator(l.inv(y), x, z);
        const Index swapped = l.inv(l.associator(y, x, z));
        if (a != cyc || a != inv_first || a != swapped) {
          return make_outcome("associator_symmetries", false,
                              Json{{"triple", triple(x, y, z)},
                                   {"values", Json::array({a, cyc, inv_first, swapped})}});
        }
      }
  return make_outcome("associator_symmetries", true, Json{{"triples", std::uint64_t{n} * n * n}});
}

// (xy,u,v) = ((x,u,v)((x,u,v),x,y)) ((y,u,v)((y,u,v),y,x))
CheckOutcome check_associator_expansion(Context& ctx) {
  const CayleyLoop& l = ctx.loop;
  const auto n = static_cast<Index>(l.order());
  auto holds = [&](Index x, Index y, Index u, Index v) {
    const Index a = l.associator(x, u, v);
    const Index b = l.associator(y, u, v);
    const Index rhs =
        l.mul(l.mul(a, l.associator(a, x, y)), l.mul(b, l.associator(b, y, x)));
    return l.associator(l.mul(x, y), u, v) == rhs;
  };
  auto fail = [&](Index x, Index y, Index u, Index v, const char* mode) {
    return make_outcome("associator_expansion", false,
                        Json{{"mode", mode}, {"quadruple", Json::array({x, y, u, v})}});
  };
  const std::uint64_t total = std::uint64_t{n} * n * n * n;
  if (total <= ctx.opts.eq4_exhaustive_max) {
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index u = 0; u < n; ++u)
          for (Index v = 0; v < n; ++v)
            if (!holds(x, y, u, v)) return fail(x, y, u, v, "exhaustive");
    return make_outcome("associator_expansion", true,
                        Json{{"mode", "exhaustive"}, {"quadruples", total}});
  }
  std::mt19937_64 rng(ctx.opts.seed);
  for (std::uint64_t s = 0; s < ctx.opts.eq4_samples; ++s) {
    const auto x = static_cast<Index>(rng() % n), y = static_cast<Index>(rng() % n);
    const auto u = static_cast<Index>(rng() % n), v = static_cast<Index>(rng() % n);
    if (!holds(x, y, u, v)) return fail(x, y, u, v, "sampled");
  }
  return make_outcome("associator_expansion", true,
                      Json{{"mode", "sampled"}, {"quadruples", ctx.opts.eq4_samples}});
}

// ------------------------------------------------------- loop and group laws

CheckOutcome check_coset_action_kernel(Context& ctx) {
  const MultGroupBundle& b = ctx.bundle();
  std::vector<Subloop> hs{Subloop::trivial(ctx.loop), ctx.lprime(), ctx.zl(),
                          Subloop::whole(ctx.loop)};
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  Json runs = Json::array();
  bool ok = true;
  for (const Subloop& h : hs) {
    CheckOutcome c = verify_lemma1(b, h, ctx.opts.limits);
    ok = ok && c.passed();
    runs.push_back(std::move(c.witness));
  }
  return make_outcome("coset_action_kernel", ok, Json{{"subloops", std::move(runs)}});
}

CheckOutcome check_cubes_central(Context& ctx) {
  const CayleyLoop& l = ctx.loop;
  const Subloop& z = ctx.zl();
  for (Index x = 0; x < l.order(); ++x) {
    const Index c = l.pow(x, 3);
    if (!z.contains(c)) {
      return make_outcome("cubes_central", false, Json{{"x", x}, {"cube", c}});
    }
  }
  const Subloop cubes = cube_subloop(l);
  return make_outcome("cubes_central", cubes.is_subset_of(z),
                      Json{{"cube_subloop", cubes.to_string()}, {"center", z.to_string()}});
}

CheckOutcome check_frattini_contains_derived_loop(Context& ctx) {
  if (ctx.loop.order() == 1) return skipped("frattini_contains_associator_subloop", "trivial loop has no maximal subloop");
  const Subloop f = frattini_subloop(ctx.loop);
  return make_outcome("frattini_contains_associator_subloop", ctx.lprime().is_subset_of(f),
                      Json{{"associator_subloop", ctx.lprime().to_string()},
                           {"frattini", f.to_string()}});
}

CheckOutcome check_frattini_contains_derived_group(Context& ctx) {
  const PermGroup& m = ctx.bundle().mult;
  const PermGroup derived = derived_subgroup(m);
  return make_outcome("group_frattini_contains_derived", derived.is_subgroup_of(ctx.phi_m()),
                      Json{{"order_M", m.order()},
                           {"order_M_derived", derived.order()},
                           {"order_Phi_M", ctx.phi_m().order()}});
}

// Finite form: F(L) = L and Phi(M) = M are both false for nontrivial L.
CheckOutcome check_frattini_proper(Context& ctx) {
  if (ctx.loop.order() == 1) return skipped("frattini_proper_iff_group_frattini_proper", "trivial loop");
  const bool loop_side = frattini_subloop(ctx.loop).is_whole();
  const bool group_side = ctx.phi_m().order() == ctx.bundle().mult.order();
  return make_outcome("frattini_proper_iff_group_frattini_proper", loop_side == group_side && !loop_side,
                      Json{{"F_L_equals_L", loop_side}, {"Phi_M_equals_M", group_side}});
}

CheckOutcome check_derived_four_way(Context& ctx) {
  return verify_lemma7(ctx.bundle(), ctx.opts.limits);
}

CheckOutcome check_center_isomorphism(Context& ctx) {
  return verify_prop1(ctx.bundle(), ctx.opts.limits);
}

// Every K' with H normal in K' lies in N_L(H), over seeded H samples.
CheckOutcome check_normalizer_containment(Context& ctx) {
  const auto& lattice = ctx.lattice();
  const Subloop whole = Subloop::whole(ctx.loop);
  std::vector<std::size_t> pick(lattice.size());
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  std::mt19937_64 rng(ctx.opts.seed);
  for (std::size_t i = pick.size(); i-- > 1;) std::swap(pick[i], pick[rng() % (i + 1)]);
  pick.resize(std::min(pick.size(), ctx.opts.containment_subloops));
  std::sort(pick.begin(), pick.end());

  std::size_t pairs = 0, violations = 0;
  Json first;
  for (std::size_t i : pick) {
    const Subloop& h = lattice[i];
    const Subloop n = normalizer(ctx.loop, whole, h, /*audit=*/false).result;
    for (const Subloop& k : lattice) {
      if (!h.is_subset_of(k) || !is_normal(h, k)) continue;
      ++pairs;
      if (k.is_subset_of(n)) continue;
      if (violations++ == 0) {
        first = Json{{"H", h.to_string()}, {"K", k.to_string()}, {"N", n.to_string()}};
      }
    }
  }
  Json w{{"sampled_subloops", pick.size()}, {"pairs", pairs}, {"violations", violations}};
  if (violations) w["first_violation"] = std::move(first);
  return make_outcome("normalizer_contains_normalizing_subloops", violations == 0, std::move(w));
}

CheckOutcome check_loop_chain_bound(Context& ctx) {
  const auto cls = ctx.series().nilpotency_class;
  if (!cls) return make_outcome("loop_normalizer_chain_bound", false, Json{{"failure", "not nilpotent"}});
  std::size_t longest = 0;
  Json worst;
  for (const Subloop& h : ctx.lattice()) {
    const std::size_t steps = normalizer_chain(ctx.loop, h).size() - 1;
    if (steps > longest || worst.is_null()) {
      longest = steps;
      worst = h.to_string();
    }
  }
  return make_outcome("loop_normalizer_chain_bound", longest <= static_cast<std::size_t>(*cls),
                      Json{{"class", *cls},
                           {"chains", ctx.lattice().size()},
                           {"longest", longest},
                           {"longest_from", worst}});
}

// Chains N_M(<g>), N_M(N_M(<g>)), ... over seeded cyclic subgroups of M.
CheckOutcome check_group_chain_bound(Context& ctx) {
  const auto cls = ctx.series().nilpotency_class;
  if (!cls) return make_outcome("group_normalizer_chain_bound", false, Json{{"failure", "not nilpotent"}});
  const PermGroup& m = ctx.bundle().mult;
  const auto elements = m.elements(ctx.opts.limits);
  const std::size_t bound = *cls == 0 ? 0 : static_cast<std::size_t>(2 * *cls - 1);

  std::mt19937_64 rng(ctx.opts.seed);
  std::vector<PermGroup> cyclic;
  std::vector<std::size_t> order(elements.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i-- > 1;) std::swap(order[i], order[rng() % (i + 1)]);
  for (std::size_t i : order) {
    if (cyclic.size() == ctx.opts.chain_cyclic_subgroups) break;
    PermGroup c = PermGroup::from_generators(m.degree(), {elements[i]});
    const bool fresh = std::none_of(cyclic.begin(), cyclic.end(),
                                    [&](const PermGroup& d) { return same_group(c, d); });
    if (fresh) cyclic.push_back(std::move(c));
  }
  std::size_t longest = 0;
  Json steps = Json::array();
  for (const PermGroup& c : cyclic) {
    const std::size_t s = subgroup_normalizer_chain(m, c, ctx.opts.limits).size() - 1;
    steps.push_back(s);
    longest = std::max(longest, s);
  }
  return make_outcome("group_normalizer_chain_bound", longest <= bound,
                      Json{{"class", *cls},
                           {"bound", bound},
                           {"subgroups", cyclic.size()},
                           {"longest", longest},
                           {"steps", std::move(steps)}});
}

CheckOutcome check_normalizer_condition(Context& ctx) {
  const NormalizerCondition& nc = ctx.condition();
  Json sizes = Json::array();
  for (std::size_t i = 0; i < nc.subloops.size(); ++i)
    sizes.push_back(Json{{"H", nc.subloops[i].to_string()}, {"N", nc.normalizer_sizes[i]}});
  Json w{{"proper_subloops", nc.subloops.size()}, {"normalizer_sizes", std::move(sizes)}};
  if (nc.witness) w["self_normalizing"] = nc.witness->to_string();
  return make_outcome("normalizer_condition", nc.holds, std::move(w));
}

// Z2 != Z1 forces L' != L.
CheckOutcome check_proper_associator_subloop(Context& ctx) {
  const auto& terms = ctx.series().terms;
  const bool z2_differs = terms.size() > 2;
  const bool ok = !z2_differs || !ctx.lprime().is_whole();
  return make_outcome("second_center_forces_proper_associator_subloop", ok,
                      Json{{"Z2_differs_from_Z1", z2_differs},
                           {"associator_subloop_is_L", ctx.lprime().is_whole()}});
}

// Z2 != Z1 forces the normalizer condition.
CheckOutcome check_second_center_condition(Context& ctx) {
  const bool z2_differs = ctx.series().terms.size() > 2;
  if (!z2_differs) return skipped("second_center_forces_normalizer_condition", "Z2 equals Z1");
  return make_outcome("second_center_forces_normalizer_condition", ctx.condition().holds, Json{{"Z2_differs_from_Z1", true}});
}

// ---------------------------------------------------------------- Frattini

CheckOutcome check_frattini_loop(Context& ctx) {
  if (ctx.loop.order() == 1) return skipped("maximal_subloops_match_lattice", "trivial loop");
  const auto maximal = maximal_subloops(ctx.loop);
  const auto oracle = maximal_elements(ctx.lattice());
  const Subloop f = frattini_subloop(ctx.loop);
  Subloop meet = Subloop::whole(ctx.loop);
  for (const Subloop& m : oracle) meet = intersect(meet, m);
  const auto nongen =
      sampled_non_generators(ctx.loop, ctx.opts.nongenerator_trials, ctx.opts.seed);
  const bool same_maximal = maximal == oracle;
  const bool same_meet = f == meet;
  const bool nongen_match =
      std::vector<Index>(f.elements().begin(), f.elements().end()) == nongen;
  return make_outcome("maximal_subloops_match_lattice", same_maximal && same_meet && nongen_match,
                      Json{{"maximal_subloops", maximal.size()},
                           {"lattice_maximal", oracle.size()},
                           {"frattini", f.to_string()},
                           {"lattice_intersection", meet.to_string()},
                           {"sampled_non_generators", nongen.size()}});
}

CheckOutcome check_frattini_group(Context& ctx) {
  const PermGroup& m = ctx.bundle().mult;
  if (m.order() > ctx.opts.limits.frattini_oracle) {
    return skipped("group_frattini_matches_oracle",
                   "order " + std::to_string(m.order()) + " exceeds frattini oracle guard");
  }
  const PermGroup oracle = frattini_subgroup_oracle(m, ctx.opts.limits);
  return make_outcome("group_frattini_matches_oracle", same_group(ctx.phi_m(), oracle),
                      Json{{"order_Phi_M", ctx.phi_m().order()}, {"oracle_order", oracle.order()}});
}

// The image of F(L) under L -> L/Z(L) lies in F(L/Z(L)).
CheckOutcome check_frattini_image(Context& ctx) {
  const Quotient q = quotient(ctx.loop, ctx.zl(), ctx.opts.limits);
  if (ctx.loop.order() == 1 || q.loop.order() == 1) {
    return skipped("frattini_image_under_quotient", "quotient by the center is trivial");
  }
  const Subloop f = frattini_subloop(ctx.loop);
  const Subloop fq = frattini_subloop(q.loop);
  bool ok = true;
  for (Index x : f.elements()) ok = ok && fq.contains(q.projection[x]);
  return make_outcome("frattini_image_under_quotient", ok,
                      Json{{"frattini", f.to_string()}, {"quotient_frattini", fq.to_string()}});
}

// ------------------------------------------------------------- divisibility

CheckOutcome check_loop_divisibility(Context& ctx) {
  const bool d = is_divisible(ctx.loop);
  return make_outcome("loop_divisibility", d == (ctx.loop.order() == 1),
                      Json{{"divisible", d}, {"order", ctx.loop.order()}});
}

// Finite M: the divisible part D is {e} and M = D x C with C = M.
CheckOutcome check_group_divisibility(Context& ctx) {
  const PermGroup& m = ctx.bundle().mult;
  const bool d = is_divisible_group(m, ctx.opts.limits);
  const PermGroup divisible_part = PermGroup::from_generators(m.degree(), {});
  const bool decomposes = same_group(join(divisible_part, m), m);
  return make_outcome("group_divisibility", d == (m.order() == 1) && decomposes,
                      Json{{"divisible", d},
                           {"order_M", m.order()},
                           {"divisible_part_order", divisible_part.order()},
                           {"complement_order", m.order()}});
}

// ---------------------------------------------------------------- registry

struct Registered {
  const char* suite;
  const char* name;
  std::function<CheckOutcome(Context&)> run;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r{
      {"identities", "inner_mapping_identity", check_inner_mapping_identity},
      {"identities", "associator_symmetries", check_associator_symmetries},
      {"identities", "associator_expansion", check_associator_expansion},
      {"lemma1", "coset_action_kernel", check_coset_action_kernel},
      {"lemma2", "cubes_central", check_cubes_central},
      {"lemma4", "frattini_contains_associator_subloop", check_frattini_contains_derived_loop},
      {"lemma4", "group_frattini_contains_derived", check_frattini_contains_derived_group},
      {"lemma6", "frattini_proper_iff_group_frattini_proper", check_frattini_proper},
      {"lemma7", "derived_subgroup_four_way", check_derived_four_way},
      {"prop1", "center_translation_isomorphism", check_center_isomorphism},
      {"prop3", "normalizer_contains_normalizing_subloops", check_normalizer_containment},
      {"prop4", "loop_normalizer_chain_bound", check_loop_chain_bound},
      {"prop4", "group_normalizer_chain_bound", check_group_chain_bound},
      {"theorem2", "normalizer_condition", check_normalizer_condition},
      {"theorem2", "second_center_forces_proper_associator_subloop", check_proper_associator_subloop},
      {"theorem2", "second_center_forces_normalizer_condition", check_second_center_condition},
      {"frattini", "maximal_subloops_match_lattice", check_frattini_loop},
      {"frattini", "group_frattini_matches_oracle", check_frattini_group},
      {"frattini", "frattini_image_under_quotient", check_frattini_image},
      {"divisible", "loop_divisibility", check_loop_divisibility},
      {"divisible", "group_divisibility", check_group_divisibility},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Registered& r : registry())
      if (std::find(out.begin(), out.end(), r.suite) == out.end()) out.emplace_back(r.suite);
    out.emplace_back("all");
    return out;
  }();
  return names;
}

std::vector<std::string> suite_checks(std::string_view suite) {
  std::vector<std::string> out;
  for (const Registered& r : registry())
    if (suite == "all" || suite == r.suite) out.emplace_back(r.name);
  return out;
}

VerdictReport run_suite(const CayleyLoop& loop, std::string_view suite,
                        const VerifyOptions& options) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  }
  if (!loop.is_cml()) throw Error(ErrorKind::NotCML, "verify needs a CML");
  Context ctx(loop, options);
  VerdictReport report;
  report.loop_name = loop.name();
  report.loop_order = loop.order();
  for (const Registered& r : registry()) {
    if (suite != "all" && suite != r.suite) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckOutcome c = r.run(ctx);
    c.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace mloop
