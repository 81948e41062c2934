#include "pmix/cli.hpp"

#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "pmix/certify.hpp"
#include "pmix/chartable.hpp"
#include "pmix/error.hpp"
#include "pmix/group.hpp"
#include "pmix/mixing.hpp"
#include "pmix/sampling.hpp"

namespace pmix
{

namespace
{

template<typename T>
T need(std::optional<T> const &v, char const *flag)
{
  if (!v)
    throw Error(ErrorCode::InvalidArgument, std::string("missing required option --") + flag);
  return *v;
}

struct Context
{
  RunConfig const &config;
  std::optional<GroupTable> group;
  std::optional<CharTable> table;

  GroupTable const &G()
  {
    if (!group) {
      if (config.group.empty())
        throw Error(ErrorCode::InvalidArgument, "missing required option --group");
      group = build_group(parse_group_file(config.group), config.max_order);
    }
    return *group;
  }

  CharTable const &T()
  {
    if (!table) {
      auto const &g = G();
      table = config.table ? parse_char_table_file(*config.table, g, config.tolerance)
                           : dixon_char_table(g);
    }
    return *table;
  }

  ElementSet set(std::optional<std::string> const &spec, char const *flag)
  {
    return materialize(parse_set_spec(need(spec, flag)), G());
  }
};

Json class_list(GroupTable const &G)
{
  Json out = Json::array();
  for (auto const &k : G.classes()) {
    Json c;
    c["index"] = k.index;
    c["size"] = k.size;
    c["representative"] = k.representative;
    c["representative_images"] = G.element(k.representative).images();
    c["element_order"] = G.element_order(k.representative);
    c["inverse_class"] = G.inverse_class(k.index);
    out.push_back(std::move(c));
  }
  return out;
}

Json sorted_classes(ElementSet const &X, GroupTable const &G)
{
  return contained_classes(X, G);
}

int exit_for(bool pass)
{
  return pass ? ExitPass : ExitFail;
}

RunResult run_classes(Context &ctx)
{
  auto const &G = ctx.G();
  Json r;
  r["order"] = G.order();
  r["num_classes"] = G.num_classes();
  r["exponent"] = G.exponent();
  r["class_number_exponent"] = class_number_exponent(G);
  r["simple"] = is_simple(G);
  r["classes"] = class_list(G);
  return {ExitPass, r, std::nullopt};
}

RunResult run_chartable(Context &ctx)
{
  auto const &T = ctx.T();
  return {ExitPass, char_table_document(T), export_char_table(T)};
}

RunResult run_zeta(Context &ctx)
{
  double const x = need(ctx.config.x, "x");
  if (!(x > 0))
    throw Error(ErrorCode::InvalidArgument, "--x must be positive");
  auto const &T = ctx.T();
  Json r;
  r["x"] = x;
  r["degrees"] = T.degrees;
  r["zeta"] = witten_zeta(T, x);
  return {ExitPass, r, std::nullopt};
}

RunResult run_mindeg(Context &ctx)
{
  auto const &T = ctx.T();
  Json r;
  r["degrees"] = T.degrees;
  r["min_degree"] = min_nontrivial_degree(T);
  return {ExitPass, r, std::nullopt};
}

Json sizes(ElementSet const &A, ElementSet const &B, ElementSet const &C)
{
  Json j;
  j["A"] = to_json(summarize(A));
  j["B"] = to_json(summarize(B));
  j["C"] = to_json(summarize(C));
  return j;
}

RunResult run_count(Context &ctx)
{
  auto const &G = ctx.G();
  auto A = ctx.set(ctx.config.A, "A");
  auto B = ctx.set(ctx.config.B, "B");
  auto C = ctx.set(ctx.config.C, "C");
  Json r = sizes(A, B, C);
  if (ctx.config.g) {
    if (*ctx.config.g >= G.order())
      throw Error(ErrorCode::InvalidArgument, "--g is not an element index");
    auto g = static_cast<Element>(*ctx.config.g);
    r["g"] = g;
    r["count"] = count_triples_g(A, B, C, g, G);
  } else {
    r["count"] = count_pairs(A, B, C, G);
  }
  return {ExitPass, r, std::nullopt};
}

RunResult run_prob(Context &ctx)
{
  auto const &G = ctx.G();
  auto A = ctx.set(ctx.config.A, "A");
  auto B = ctx.set(ctx.config.B, "B");
  auto C = ctx.set(ctx.config.C, "C");
  Json r = sizes(A, B, C);
  auto p = prob(A, B, C, G);
  r["count"] = count_pairs(A, B, C, G);
  r["prob"] = to_json(p);
  r["prob_approx"] = to_double(p);
  return {ExitPass, r, std::nullopt};
}

RunResult run_frobenius(Context &ctx)
{
  auto const &G = ctx.G();
  auto const &T = ctx.T();
  std::size_t const i = need(ctx.config.class_i, "i");
  std::size_t const j = need(ctx.config.class_j, "j");
  std::size_t const l = need(ctx.config.class_l, "l");
  if (i >= G.num_classes() || j >= G.num_classes() || l >= G.num_classes())
    throw Error(ErrorCode::InvalidArgument, "class index out of range");
  validate_against_group(T, G);

  auto ev = frobenius_evaluate(i, j, l, T);
  auto const brute = count_pairs(ElementSet::of_class(G, i), ElementSet::of_class(G, j),
                                 ElementSet::of_class(G, l), G);
  Json r;
  r["classes"] = Json::array({i, j, l});
  r["evaluation"] = to_json(ev);
  r["brute_force"] = brute;
  r["match"] = ev.count == brute;
  if (ctx.config.exponent)
    r["error_bound"] = to_json(frobenius_error_bound(i, j, l, T, *ctx.config.exponent));
  return {exit_for(ev.count == brute), r, std::nullopt};
}

std::vector<std::uint64_t> spec_seeds(RunConfig const &c)
{
  std::vector<std::uint64_t> seeds;
  for (auto const *s : {&c.A, &c.B, &c.C}) {
    if (!*s)
      continue;
    auto spec = parse_set_spec(**s);
    if (spec.kind == SetSpec::Kind::Random)
      seeds.push_back(spec.seed);
  }
  return seeds;
}

RunResult run_gowers(Context &ctx, bool trick)
{
  auto const &G = ctx.G();
  auto const &T = ctx.T();
  auto A = ctx.set(ctx.config.A, "A");
  auto B = ctx.set(ctx.config.B, "B");
  auto C = ctx.set(ctx.config.C, "C");
  MixReport rep;
  if (trick) {
    auto const g = need(ctx.config.g, "g");
    if (g >= G.order())
      throw Error(ErrorCode::InvalidArgument, "--g is not an element index");
    rep = gowers_trick_check(A, B, C, static_cast<Element>(g), G, T, ctx.config.eta);
  } else {
    rep = gowers_check(A, B, C, G, T, ctx.config.eta);
  }
  rep.seeds = spec_seeds(ctx.config);
  return {exit_for(rep.pass), to_json(rep), std::nullopt};
}

RunResult run_identities(Context &ctx)
{
  auto const &G = ctx.G();
  std::uint64_t const seed = ctx.config.seed.value_or(0);
  std::uint64_t const trials = ctx.config.trials.value_or(100);
  std::uint64_t const g_count = ctx.config.g_count.value_or(5);

  Sampler rng(seed);
  std::uint64_t triple_failures = 0;
  std::uint64_t cyclic_checks = 0;
  std::uint64_t rotate_checks = 0;
  std::uint64_t cyclic_failures = 0;
  Json first_failure = nullptr;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto A = rng.subset(G, rng.uniform());
    auto B = rng.subset(G, rng.uniform());
    auto C = rng.subset(G, rng.uniform());
    auto tr = verify_triple_identities(A, B, C, G);
    if (!tr.holds()) {
      ++triple_failures;
      if (first_failure.is_null())
        first_failure = {{"trial", t}, {"triple", to_json(tr)}};
    }

    auto X = rng.subset(G, rng.uniform());
    auto Y = t % 2 == 0 ? rng.normal_subset(G, rng.uniform()) : rng.subset(G, rng.uniform());
    auto Z = rng.normal_subset(G, rng.uniform());
    for (std::uint64_t k = 0; k < g_count; ++k) {
      auto cy = verify_cyclic_identities(X, Y, Z, rng.element(G), G);
      ++cyclic_checks;
      rotate_checks += cy.rotate_equal.has_value();
      if (!cy.holds()) {
        ++cyclic_failures;
        if (first_failure.is_null())
          first_failure = {{"trial", t}, {"cyclic", to_json(cy)}};
      }
    }
  }
  Json r;
  r["trials"] = trials;
  r["seed"] = seed;
  r["triple_failures"] = triple_failures;
  r["cyclic_checks"] = cyclic_checks;
  r["rotate_checks"] = rotate_checks;
  r["cyclic_failures"] = cyclic_failures;
  r["first_failure"] = first_failure;
  return {exit_for(triple_failures == 0 && cyclic_failures == 0), r, std::nullopt};
}

RunResult run_ratio_scan(Context &ctx)
{
  auto const &G = ctx.G();
  auto const &T = ctx.T();
  auto rows = character_ratio_scan(G, T, ctx.config.tolerance.value_or(1e-9));
  Json out = Json::array();
  for (auto const &row : rows) {
    Json j = to_json(row);
    if (ctx.config.target_exponent)
      j["within_target"] = !row.alpha || *row.alpha <= *ctx.config.target_exponent;
    out.push_back(std::move(j));
  }
  Json r;
  r["target_exponent"] = ctx.config.target_exponent ? Json(*ctx.config.target_exponent)
                                                    : Json(nullptr);
  r["rows"] = std::move(out);
  return {ExitPass, r, std::nullopt};
}

RunResult run_split(Context &ctx)
{
  auto const &G = ctx.G();
  auto X = ctx.set(ctx.config.X, "X");
  double const threshold = need(ctx.config.threshold, "threshold");
  auto [X1, X2] = split_by_class_size(X, threshold, G);
  auto large = contains_large_class(X, threshold, G);
  Json r;
  r["threshold"] = threshold;
  r["size"] = X.size();
  r["X1"] = {{"size", X1.size()}, {"classes", sorted_classes(X1, G)}};
  r["X2"] = {{"size", X2.size()}, {"classes", sorted_classes(X2, G)}};
  r["large_class"] = large ? Json(*large) : Json(nullptr);
  return {ExitPass, r, std::nullopt};
}

RunResult run_bounds(Context &ctx)
{
  auto const &G = ctx.G();
  auto A = ctx.set(ctx.config.A, "A");
  auto B = ctx.set(ctx.config.B, "B");
  auto C = ctx.set(ctx.config.C, "C");
  auto rep = normal_mix_bounds(A, B, C, need(ctx.config.alpha, "alpha"), need(ctx.config.eta, "eta"),
                               G, ctx.config.c_over_n);
  bool pass = true;
  for (auto v : {rep.three_normal, rep.x2_class_bound, rep.x2_small, rep.x1_large, rep.chain_lower,
                 rep.chain_upper, rep.asymptotic_upper, rep.star, rep.star_star})
    pass = pass && v != Verdict::Fails;
  return {exit_for(pass), to_json(rep), std::nullopt};
}

RunResult run_certify(Context &ctx, RunConfig &effective)
{
  if (effective.request) {
    auto req = parse_certify_request_file(*effective.request);
    effective.group = req.group;
    effective.epsilon = req.epsilon;
    effective.eta = req.eta;
    effective.i = req.i;
    effective.mode = std::string(mode_name(req.mode));
    effective.budget = req.budget;
    effective.seed = req.seed;
  }
  auto const mode = parse_mode(effective.mode.value_or("exhaustive-normal"));
  auto cert = certify_mixer(ctx.G(), need(effective.epsilon, "epsilon"), need(effective.eta, "eta"),
                            effective.i.value_or(3), mode, effective.budget.value_or(0),
                            effective.seed.value_or(0));
  return {exit_for(cert.outcome != MixerOutcome::Refuted), to_json(cert), std::nullopt};
}

RunResult run_propagate(Context &ctx)
{
  auto rep = verify_propagation(ctx.G(), need(ctx.config.epsilon, "epsilon"),
                                need(ctx.config.eta, "eta"), ctx.config.budget.value_or(2000),
                                ctx.config.seed.value_or(0));
  return {exit_for(rep.pass()), to_json(rep), std::nullopt};
}

RunResult run_report(Context &ctx)
{
  auto rep = end_to_end_report(ctx.G(), ctx.T(), need(ctx.config.delta, "delta"),
                               need(ctx.config.eta, "eta"), ctx.config.certify);
  bool pass = !rep.inapplicable;
  for (auto const &c : rep.checks)
    pass = pass && c.holds;
  if (rep.certification)
    pass = pass && *rep.certification != MixerOutcome::Refuted;
  return {exit_for(pass), to_json(rep), std::nullopt};
}

Json error_document(ErrorCode code, std::string const &message)
{
  Json e;
  e["code"] = error_code_name(code);
  e["message"] = message;
  Json doc;
  doc["tool"] = tool_version;
  doc["error"] = std::move(e);
  return doc;
}

} // namespace

Json config_echo(RunConfig const &c)
{
  Json j;
  auto put = [&](char const *key, auto const &v) {
    if (v)
      j[key] = *v;
  };
  j["command"] = c.command;
  if (!c.group.empty())
    j["group"] = c.group.generic_string();
  if (c.table)
    j["table"] = c.table->generic_string();
  if (c.request)
    j["request"] = c.request->generic_string();
  put("tolerance", c.tolerance);
  j["max_order"] = c.max_order;
  put("A", c.A);
  put("B", c.B);
  put("C", c.C);
  put("X", c.X);
  put("g", c.g);
  put("i_class", c.class_i);
  put("j_class", c.class_j);
  put("l_class", c.class_l);
  put("x", c.x);
  put("epsilon", c.epsilon);
  put("eta", c.eta);
  put("delta", c.delta);
  put("alpha", c.alpha);
  put("exponent", c.exponent);
  put("threshold", c.threshold);
  put("c_over_n", c.c_over_n);
  put("target_exponent", c.target_exponent);
  put("i", c.i);
  put("mode", c.mode);
  put("budget", c.budget);
  put("seed", c.seed);
  put("trials", c.trials);
  put("g_count", c.g_count);
  if (c.command == "report")
    j["certify"] = c.certify;
  return j;
}

RunResult run_command(RunConfig const &config)
{
  RunConfig effective = config;
  try {
    Context ctx{effective, std::nullopt, std::nullopt};
    auto const &cmd = config.command;
    RunResult res;
    if (cmd == "classes")
      res = run_classes(ctx);
    else if (cmd == "chartable")
      res = run_chartable(ctx);
    else if (cmd == "zeta")
      res = run_zeta(ctx);
    else if (cmd == "mindeg")
      res = run_mindeg(ctx);
    else if (cmd == "count")
      res = run_count(ctx);
    else if (cmd == "prob")
      res = run_prob(ctx);
    else if (cmd == "frobenius")
      res = run_frobenius(ctx);
    else if (cmd == "gowers")
      res = run_gowers(ctx, false);
    else if (cmd == "trick")
      res = run_gowers(ctx, true);
    else if (cmd == "identities")
      res = run_identities(ctx);
    else if (cmd == "ratio-scan")
      res = run_ratio_scan(ctx);
    else if (cmd == "split")
      res = run_split(ctx);
    else if (cmd == "bounds")
      res = run_bounds(ctx);
    else if (cmd == "certify")
      res = run_certify(ctx, effective);
    else if (cmd == "propagate")
      res = run_propagate(ctx);
    else if (cmd == "report")
      res = run_report(ctx);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown command \"" + cmd + "\"");
    if (!res.raw)
      res.document = report_document(cmd, config_echo(effective), std::move(res.document));
    return res;
  } catch (BudgetExceededError const &e) {
    Json doc = error_document(e.code(), e.what());
    doc["partial"] = to_json(e.partial());
    doc["config"] = config_echo(effective);
    return {ExitError, doc, std::nullopt};
  } catch (Error const &e) {
    Json doc = error_document(e.code(), e.what());
    doc["config"] = config_echo(effective);
    return {ExitError, doc, std::nullopt};
  } catch (std::exception const &e) {
    Json doc = error_document(ErrorCode::InvalidArgument, e.what());
    doc["config"] = config_echo(effective);
    return {ExitError, doc, std::nullopt};
  }
}

int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  RunConfig cfg;
  CLI::App app{"Character-theoretic product mixing toolkit", "pmix"};
  app.set_version_flag("--version", std::string(tool_version));
  app.require_subcommand(1);
  app.fallthrough();

  std::string group, table, request;
  app.add_option("--group", group, "group generator file");
  app.add_option("--table", table, "character table file (default: computed)");
  app.add_option("--output", cfg.output, "report destination, - for standard output");
  app.add_option("--tolerance", cfg.tolerance, "orthogonality tolerance for ingested tables");
  app.add_option("--max-order", cfg.max_order, "largest group order to enumerate");

  auto sub = [&](char const *name, char const *help) { return app.add_subcommand(name, help); };
  auto sets = [&](CLI::App *s, bool with_c = true) {
    s->add_option("--A", cfg.A, "set spec")->required();
    s->add_option("--B", cfg.B, "set spec")->required();
    if (with_c)
      s->add_option("--C", cfg.C, "set spec")->required();
  };

  sub("classes", "list conjugacy classes");
  sub("chartable", "emit the character table file");
  sub("zeta", "Witten zeta value")->add_option("--x", cfg.x, "exponent")->required();
  sub("mindeg", "minimal nontrivial character degree");

  auto *count = sub("count", "N(A,B,C), or the triple count with --g");
  sets(count);
  count->add_option("--g", cfg.g, "target element");
  sets(sub("prob", "Prob(A,B,C)"));

  auto *frob = sub("frobenius", "character-sum count for a class triple");
  frob->add_option("--i", cfg.class_i, "class index")->required();
  frob->add_option("--j", cfg.class_j, "class index")->required();
  frob->add_option("--l", cfg.class_l, "class index")->required();
  frob->add_option("--exponent", cfg.exponent, "zeta exponent for the error bound");

  auto *gowers = sub("gowers", "Gowers bound check");
  sets(gowers);
  gowers->add_option("--eta", cfg.eta, "window (default: implied eta)");
  auto *trick = sub("trick", "Gowers trick check");
  sets(trick);
  trick->add_option("--g", cfg.g, "target element")->required();
  trick->add_option("--eta", cfg.eta, "window (default: implied eta)");

  auto *ident = sub("identities", "seeded set-identity verification");
  ident->add_option("--seed", cfg.seed, "sampler seed");
  ident->add_option("--trials", cfg.trials, "random triples");
  ident->add_option("--g-count", cfg.g_count, "elements g per triple");

  sub("ratio-scan", "character ratio exponents per class")
    ->add_option("--target-exponent", cfg.target_exponent, "flag rows with alpha above this");

  auto *split = sub("split", "large-class split of a normal set");
  split->add_option("--X", cfg.X, "set spec")->required();
  split->add_option("--threshold", cfg.threshold, "class size threshold")->required();

  auto *bounds = sub("bounds", "decomposition inequalities for normal A, B, C");
  sets(bounds);
  bounds->add_option("--alpha", cfg.alpha)->required();
  bounds->add_option("--eta", cfg.eta)->required();
  bounds->add_option("--c-over-n", cfg.c_over_n);

  auto *cert = sub("certify", "(epsilon, eta, i)-mixer certification");
  cert->add_option("--request", request, "certification request file");
  cert->add_option("--epsilon", cfg.epsilon);
  cert->add_option("--eta", cfg.eta);
  cert->add_option("--i", cfg.i);
  cert->add_option("--mode", cfg.mode, "exhaustive-normal or sampled-general");
  cert->add_option("--budget", cfg.budget);
  cert->add_option("--seed", cfg.seed);

  auto *prop = sub("propagate", "two-normal window at epsilon'");
  prop->add_option("--epsilon", cfg.epsilon)->required();
  prop->add_option("--eta", cfg.eta)->required();
  prop->add_option("--budget", cfg.budget);
  prop->add_option("--seed", cfg.seed);

  auto *report = sub("report", "end-to-end inequality chain");
  report->add_option("--delta", cfg.delta)->required();
  report->add_option("--eta", cfg.eta)->required();
  bool no_certify = false;
  report->add_flag("--no-certify", no_certify, "skip the mixer certification");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return ExitPass;
  } catch (CLI::CallForVersion const &) {
    out << tool_version << "\n";
    return ExitPass;
  } catch (CLI::ParseError const &e) {
    err << dump(error_document(ErrorCode::InvalidArgument, e.what()));
    return ExitError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.group = group;
  if (!table.empty())
    cfg.table = table;
  if (!request.empty())
    cfg.request = request;
  cfg.certify = !no_certify;

  auto res = run_command(cfg);
  if (res.status == ExitError) {
    err << dump(res.document);
    return res.status;
  }
  std::string const text = res.raw ? *res.raw : dump(res.document);
  if (cfg.output == "-") {
    out << text;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!(file << text)) {
      err << dump(error_document(ErrorCode::IoError, "cannot write " + cfg.output));
      return ExitError;
    }
  }
  return res.status;
}

} // namespace pmix
