#include "pmix/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pmix/error.hpp"
#include "pmix/sampling.hpp"

namespace pmix
{

namespace
{

[[noreturn]] void syntax(std::string const &source, std::string const &what)
{
  throw Error(ErrorCode::SyntaxError, source + ": " + what);
}

template<typename F>
auto guarded(char const *what, F &&f)
{
  try {
    return f();
  } catch (nlohmann::json::exception const &e) {
    throw Error(ErrorCode::SyntaxError, std::string(what) + ": " + e.what());
  }
}

template<typename T>
T get(Json const &j, char const *key)
{
  return j.at(key).get<T>();
}

template<typename T>
Json opt(std::optional<T> const &v)
{
  return v ? Json(*v) : Json(nullptr);
}

template<typename T>
std::optional<T> get_opt(Json const &j, char const *key)
{
  auto const &v = j.at(key);
  if (v.is_null())
    return std::nullopt;
  return v.get<T>();
}

Json rational_opt(std::optional<Rational> const &v)
{
  return v ? to_json(*v) : Json(nullptr);
}

std::optional<Rational> get_rational_opt(Json const &j, char const *key)
{
  auto const &v = j.at(key);
  if (v.is_null())
    return std::nullopt;
  return from_json<Rational>(v);
}

Verdict get_verdict(Json const &j, char const *key)
{
  return parse_verdict(j.at(key).get<std::string>());
}

bool is_count(Json const &v)
{
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::size_t require_count(Json const &j, char const *key, std::string const &source)
{
  if (!j.contains(key))
    syntax(source, std::string("missing field \"") + key + "\"");
  if (!is_count(j[key]))
    syntax(source, std::string("field \"") + key + "\" must be a nonnegative integer");
  return j[key].get<std::size_t>();
}

double require_number(Json const &j, char const *key, std::string const &source)
{
  if (!j.contains(key))
    syntax(source, std::string("missing field \"") + key + "\"");
  if (!j[key].is_number())
    syntax(source, std::string("field \"") + key + "\" must be a number");
  return j[key].get<double>();
}

std::vector<std::size_t> count_list(Json const &v, std::string const &source, char const *what)
{
  if (!v.is_array())
    syntax(source, std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (auto const &x : v) {
    if (!is_count(x))
      syntax(source, std::string(what) + " entries must be nonnegative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Input files
// ---------------------------------------------------------------------------

std::string read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad())
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return os.str();
}

Json parse_json(std::string const &text, std::string const &source)
{
  try {
    return Json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    // e.byte is 1-based and points just past the last byte read
    std::size_t const stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos)
      what = what.substr(pos);
    throw Error(ErrorCode::SyntaxError, source + ":" + std::to_string(line) + ":" +
                                          std::to_string(column) + ": " + what);
  }
}

std::vector<Permutation> parse_group_text(std::string const &text, std::string const &source)
{
  Json const doc = parse_json(text, source);
  if (!doc.is_object())
    syntax(source, "top level must be an object");
  std::size_t const degree = require_count(doc, "degree", source);
  if (degree == 0)
    syntax(source, "degree must be positive");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    syntax(source, "field \"generators\" must be an array");
  auto const &gens = doc["generators"];
  if (gens.empty())
    syntax(source, "at least one generator is required");

  std::vector<Permutation> out;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto const &row = gens[g];
    if (!row.is_array())
      syntax(source, "generator " + std::to_string(g) + " must be an array");
    std::vector<Permutation::Point> images;
    for (auto const &x : row) {
      if (!is_count(x))
        syntax(source, "generator " + std::to_string(g) + " has a non-integer image");
      auto v = x.get<std::uint64_t>();
      if (v >= degree)
        throw Error(ErrorCode::NotABijection, source + ": generator " + std::to_string(g) +
                                                " maps to " + std::to_string(v) +
                                                ", outside 0.." + std::to_string(degree - 1));
      images.push_back(static_cast<Permutation::Point>(v));
    }
    if (images.size() != degree)
      throw Error(ErrorCode::NotABijection, source + ": generator " + std::to_string(g) + " has " +
                                              std::to_string(images.size()) + " images, degree is " +
                                              std::to_string(degree));
    if (!Permutation::is_bijection(images))
      throw Error(ErrorCode::NotABijection,
                  source + ": generator " + std::to_string(g) + " is not a bijection");
    out.emplace_back(std::move(images));
  }
  return out;
}

std::vector<Permutation> parse_group_file(std::filesystem::path const &path)
{
  return parse_group_text(read_file(path), path.string());
}

CharTable parse_char_table_text(std::string const &text, GroupTable const &G,
                                std::optional<double> tolerance, std::string const &source)
{
  Json const doc = parse_json(text, source);
  if (!doc.is_object())
    syntax(source, "top level must be an object");

  CharTable T;
  T.order = require_count(doc, "order", source);
  if (!doc.contains("class_sizes") || !doc.contains("class_reps") || !doc.contains("characters"))
    syntax(source, "class_sizes, class_reps and characters are required");
  T.class_sizes = count_list(doc["class_sizes"], source, "class_sizes");
  for (auto r : count_list(doc["class_reps"], source, "class_reps")) {
    if (r > std::numeric_limits<Element>::max())
      syntax(source, "class representative out of range");
    T.class_reps.push_back(static_cast<Element>(r));
  }

  auto const &chars = doc["characters"];
  if (!chars.is_array())
    syntax(source, "characters must be an array");
  for (auto const &row : chars) {
    if (!row.is_array())
      syntax(source, "each character must be an array of [re, im] pairs");
    std::vector<Complex> values;
    for (auto const &v : row) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        syntax(source, "character values must be [re, im] number pairs");
      values.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    T.values.push_back(std::move(values));
  }

  validate_against_group(T, G);

  // degrees from the identity column; the trivial row is the one nearest to all ones
  std::size_t const m = T.num_classes();
  std::size_t id_class = 0;
  while (id_class < m && T.class_reps[id_class] != G.identity())
    ++id_class;
  if (id_class == m)
    throw Error(ErrorCode::ValidationFailed, "shape: no class is represented by the identity");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < T.values.size(); ++c) {
    if (T.values[c].size() != m)
      throw Error(ErrorCode::ValidationFailed, "shape: character row length differs from class count");
    double const d = std::round(T.values[c][id_class].real());
    if (!(d >= 1) || d > double(T.order))
      throw Error(ErrorCode::ValidationFailed, "degree column: character " + std::to_string(c) +
                                                 " has no positive integer degree");
    T.degrees.push_back(static_cast<std::uint64_t>(d));
    double dev = 0;
    for (auto const &v : T.values[c])
      dev = std::max(dev, std::abs(v - Complex(1.0, 0.0)));
    if (dev < best) {
      best = dev;
      T.trivial_index = c;
    }
  }

  validate_char_table(T, tolerance.value_or(default_tolerance(T.order)));
  return T;
}

CharTable parse_char_table_file(std::filesystem::path const &path, GroupTable const &G,
                                std::optional<double> tolerance)
{
  return parse_char_table_text(read_file(path), G, tolerance, path.string());
}

Json char_table_document(CharTable const &T)
{
  Json chars = Json::array();
  for (auto const &row : T.values) {
    Json r = Json::array();
    for (auto const &v : row)
      r.push_back(Json::array({v.real(), v.imag()}));
    chars.push_back(std::move(r));
  }
  Json doc;
  doc["order"] = T.order;
  doc["class_sizes"] = T.class_sizes;
  doc["class_reps"] = T.class_reps;
  doc["characters"] = std::move(chars);
  return doc;
}

std::string export_char_table(CharTable const &T)
{
  return dump(char_table_document(T));
}

// ---------------------------------------------------------------------------
// Set specifications
// ---------------------------------------------------------------------------

SetSpec parse_set_spec(std::string_view text)
{
  std::string const source = "set spec \"" + std::string(text) + "\"";
  auto rest_after = [&](std::string_view prefix) -> std::optional<std::string> {
    if (text.substr(0, prefix.size()) == prefix)
      return std::string(text.substr(prefix.size()));
    return std::nullopt;
  };

  SetSpec spec;
  if (text == "all") {
    spec.kind = SetSpec::Kind::All;
  } else if (auto r = rest_after("class:")) {
    Json v = parse_json(*r, source);
    if (!is_count(v))
      syntax(source, "class index must be a nonnegative integer");
    spec.kind = SetSpec::Kind::Class;
    spec.indices = {v.get<std::size_t>()};
  } else if (auto r = rest_after("union:")) {
    spec.kind = SetSpec::Kind::Union;
    spec.indices = count_list(parse_json(*r, source), source, "union");
  } else if (auto r = rest_after("random:")) {
    Json v = parse_json(*r, source);
    if (!v.is_object())
      syntax(source, "random takes {\"density\": p, \"seed\": s}");
    spec.kind = SetSpec::Kind::Random;
    spec.density = require_number(v, "density", source);
    spec.seed = require_count(v, "seed", source);
    if (!(spec.density >= 0 && spec.density <= 1))
      syntax(source, "density must lie in [0, 1]");
  } else if (!text.empty() && text.front() == '[') {
    spec.kind = SetSpec::Kind::Elements;
    spec.indices = count_list(parse_json(std::string(text), source), source, "element list");
  } else {
    syntax(source, "expected class:, union:, random:, an element list or all");
  }
  return spec;
}

std::string to_string(SetSpec const &spec)
{
  switch (spec.kind) {
  case SetSpec::Kind::All:
    return "all";
  case SetSpec::Kind::Class:
    return "class:" + std::to_string(spec.indices.at(0));
  case SetSpec::Kind::Union:
    return "union:" + Json(spec.indices).dump();
  case SetSpec::Kind::Random: {
    Json v;
    v["density"] = spec.density;
    v["seed"] = spec.seed;
    return "random:" + v.dump();
  }
  case SetSpec::Kind::Elements:
    return Json(spec.indices).dump();
  }
  return {};
}

ElementSet materialize(SetSpec const &spec, GroupTable const &G)
{
  auto check = [](std::size_t i, std::size_t limit, char const *what) {
    if (i >= limit)
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " index " + std::to_string(i) + " out of range");
  };
  switch (spec.kind) {
  case SetSpec::Kind::All:
    return ElementSet::all(G);
  case SetSpec::Kind::Class:
  case SetSpec::Kind::Union:
    for (auto i : spec.indices)
      check(i, G.num_classes(), "class");
    return ElementSet::from_classes(G, spec.indices);
  case SetSpec::Kind::Random: {
    Sampler rng(spec.seed);
    return rng.subset(G, spec.density);
  }
  case SetSpec::Kind::Elements: {
    std::vector<Element> elems;
    for (auto i : spec.indices) {
      check(i, G.order(), "element");
      elems.push_back(static_cast<Element>(i));
    }
    return ElementSet::from_elements(G, elems);
  }
  }
  return ElementSet::empty(G);
}

// ---------------------------------------------------------------------------
// Certification requests
// ---------------------------------------------------------------------------

CertifyRequest parse_certify_request(std::string const &text, std::filesystem::path const &base_dir,
                                     std::string const &source)
{
  Json const doc = parse_json(text, source);
  if (!doc.is_object())
    syntax(source, "top level must be an object");
  CertifyRequest req;
  if (!doc.contains("group") || !doc["group"].is_string())
    syntax(source, "field \"group\" must be a path string");
  req.group = doc["group"].get<std::string>();
  if (req.group.is_relative() && !base_dir.empty())
    req.group = base_dir / req.group;
  req.epsilon = require_number(doc, "epsilon", source);
  req.eta = require_number(doc, "eta", source);
  req.i = static_cast<int>(require_count(doc, "i", source));
  if (doc.contains("mode")) {
    if (!doc["mode"].is_string())
      syntax(source, "field \"mode\" must be a string");
    try {
      req.mode = parse_mode(doc["mode"].get<std::string>());
    } catch (Error const &e) {
      syntax(source, e.what());
    }
  }
  if (doc.contains("budget"))
    req.budget = require_count(doc, "budget", source);
  if (doc.contains("seed"))
    req.seed = require_count(doc, "seed", source);
  return req;
}

CertifyRequest parse_certify_request_file(std::filesystem::path const &path)
{
  return parse_certify_request(read_file(path), path.parent_path(), path.string());
}

// ---------------------------------------------------------------------------
// Report documents
// ---------------------------------------------------------------------------

Json report_document(std::string const &command, Json config, Json result)
{
  Json doc;
  doc["tool"] = tool_version;
  doc["command"] = command;
  doc["config"] = std::move(config);
  doc["result"] = std::move(result);
  return doc;
}

std::string dump(Json const &doc)
{
  return doc.dump(2) + "\n";
}

Json to_json(Rational const &r)
{
  return to_string(r);
}

template<>
Rational from_json<Rational>(Json const &j)
{
  if (!j.is_string())
    throw Error(ErrorCode::SyntaxError, "rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

Json to_json(SetSummary const &s)
{
  Json j;
  j["size"] = s.size;
  j["normal"] = s.normal;
  return j;
}

template<>
SetSummary from_json<SetSummary>(Json const &j)
{
  return guarded("set summary", [&] {
    return SetSummary{get<std::size_t>(j, "size"), get<bool>(j, "normal")};
  });
}

Json to_json(MixReport const &r)
{
  Json j;
  j["kind"] = r.kind;
  j["group_order"] = r.group_order;
  j["min_degree"] = r.min_degree;
  j["A"] = to_json(r.A);
  j["B"] = to_json(r.B);
  j["C"] = to_json(r.C);
  j["g"] = opt(r.g);
  j["count"] = r.count;
  j["prob"] = to_json(r.prob);
  j["prob_approx"] = to_double(r.prob);
  j["target"] = to_json(r.target);
  j["eta_implied"] = r.eta_implied;
  j["eta"] = r.eta;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["pass"] = r.pass;
  j["seeds"] = r.seeds;
  return j;
}

template<>
MixReport from_json<MixReport>(Json const &j)
{
  return guarded("mix report", [&] {
    MixReport r;
    r.kind = get<std::string>(j, "kind");
    r.group_order = get<std::size_t>(j, "group_order");
    r.min_degree = get<std::uint64_t>(j, "min_degree");
    r.A = from_json<SetSummary>(j.at("A"));
    r.B = from_json<SetSummary>(j.at("B"));
    r.C = from_json<SetSummary>(j.at("C"));
    r.g = get_opt<Element>(j, "g");
    r.count = get<std::uint64_t>(j, "count");
    r.prob = from_json<Rational>(j.at("prob"));
    r.target = from_json<Rational>(j.at("target"));
    r.eta_implied = get<double>(j, "eta_implied");
    r.eta = get<double>(j, "eta");
    r.lower = get<double>(j, "lower");
    r.upper = get<double>(j, "upper");
    r.pass = get<bool>(j, "pass");
    r.seeds = get<std::vector<std::uint64_t>>(j, "seeds");
    return r;
  });
}

Json to_json(FrobeniusEvaluation const &r)
{
  Json j;
  j["count"] = r.count;
  j["raw"] = r.raw;
  j["drift"] = r.drift;
  return j;
}

template<>
FrobeniusEvaluation from_json<FrobeniusEvaluation>(Json const &j)
{
  return guarded("frobenius evaluation", [&] {
    return FrobeniusEvaluation{get<std::uint64_t>(j, "count"), get<double>(j, "raw"),
                               get<double>(j, "drift")};
  });
}

Json to_json(FrobeniusErrorBound const &r)
{
  Json j;
  j["count"] = r.count;
  j["expected"] = to_json(r.expected);
  j["deviation"] = to_json(r.deviation);
  j["zeta"] = r.zeta;
  j["bound"] = r.bound;
  j["within"] = r.within;
  return j;
}

template<>
FrobeniusErrorBound from_json<FrobeniusErrorBound>(Json const &j)
{
  return guarded("frobenius error bound", [&] {
    FrobeniusErrorBound r;
    r.count = get<std::uint64_t>(j, "count");
    r.expected = from_json<Rational>(j.at("expected"));
    r.deviation = from_json<Rational>(j.at("deviation"));
    r.zeta = get<double>(j, "zeta");
    r.bound = get<double>(j, "bound");
    r.within = get<bool>(j, "within");
    return r;
  });
}

Json to_json(TripleIdentityReport const &r)
{
  Json j;
  j["n_abc"] = r.n_abc;
  j["n_bca"] = r.n_bca;
  j["n_cab"] = r.n_cab;
  j["counts_equal"] = r.counts_equal;
  j["prob_abc"] = rational_opt(r.prob_abc);
  j["via_bca"] = rational_opt(r.via_bca);
  j["via_cab"] = rational_opt(r.via_cab);
  j["probs_equal"] = opt(r.probs_equal);
  j["holds"] = r.holds();
  return j;
}

template<>
TripleIdentityReport from_json<TripleIdentityReport>(Json const &j)
{
  return guarded("triple identity report", [&] {
    TripleIdentityReport r;
    r.n_abc = get<std::uint64_t>(j, "n_abc");
    r.n_bca = get<std::uint64_t>(j, "n_bca");
    r.n_cab = get<std::uint64_t>(j, "n_cab");
    r.counts_equal = get<bool>(j, "counts_equal");
    r.prob_abc = get_rational_opt(j, "prob_abc");
    r.via_bca = get_rational_opt(j, "via_bca");
    r.via_cab = get_rational_opt(j, "via_cab");
    r.probs_equal = get_opt<bool>(j, "probs_equal");
    return r;
  });
}

Json to_json(CyclicIdentityReport const &r)
{
  Json j;
  j["n_xyz"] = r.n_xyz;
  j["n_xzy"] = r.n_xzy;
  j["swap_equal"] = r.swap_equal;
  j["swap_bijection"] = r.swap_bijection;
  j["n_yzx"] = opt(r.n_yzx);
  j["rotate_equal"] = opt(r.rotate_equal);
  j["rotate_bijection"] = opt(r.rotate_bijection);
  j["holds"] = r.holds();
  return j;
}

template<>
CyclicIdentityReport from_json<CyclicIdentityReport>(Json const &j)
{
  return guarded("cyclic identity report", [&] {
    CyclicIdentityReport r;
    r.n_xyz = get<std::uint64_t>(j, "n_xyz");
    r.n_xzy = get<std::uint64_t>(j, "n_xzy");
    r.swap_equal = get<bool>(j, "swap_equal");
    r.swap_bijection = get<bool>(j, "swap_bijection");
    r.n_yzx = get_opt<std::uint64_t>(j, "n_yzx");
    r.rotate_equal = get_opt<bool>(j, "rotate_equal");
    r.rotate_bijection = get_opt<bool>(j, "rotate_bijection");
    return r;
  });
}

Json to_json(RatioScanRow const &r)
{
  Json j;
  j["class_index"] = r.class_index;
  j["class_size"] = r.class_size;
  j["alpha"] = r.alpha ? Json(*r.alpha) : Json("vanishing");
  j["witness"] = opt(r.witness);
  j["centralizer_exponent"] = r.centralizer_exponent;
  return j;
}

template<>
RatioScanRow from_json<RatioScanRow>(Json const &j)
{
  return guarded("ratio scan row", [&] {
    RatioScanRow r;
    r.class_index = get<std::size_t>(j, "class_index");
    r.class_size = get<std::size_t>(j, "class_size");
    auto const &a = j.at("alpha");
    if (a.is_string()) {
      if (a.get<std::string>() != "vanishing")
        throw Error(ErrorCode::SyntaxError, "alpha must be a number or \"vanishing\"");
    } else {
      r.alpha = a.get<double>();
    }
    r.witness = get_opt<std::size_t>(j, "witness");
    r.centralizer_exponent = get<double>(j, "centralizer_exponent");
    return r;
  });
}

Json to_json(PartSizes const &r)
{
  Json j;
  j["size"] = r.size;
  j["x1"] = r.x1;
  j["x2"] = r.x2;
  return j;
}

template<>
PartSizes from_json<PartSizes>(Json const &j)
{
  return guarded("part sizes", [&] {
    return PartSizes{get<std::size_t>(j, "size"), get<std::size_t>(j, "x1"),
                     get<std::size_t>(j, "x2")};
  });
}

Json to_json(DecompositionReport const &r)
{
  Json j;
  j["alpha"] = r.alpha;
  j["eta"] = r.eta;
  j["threshold"] = r.threshold;
  j["beta_max"] = r.beta_max;
  j["group_order"] = r.group_order;
  j["num_classes"] = r.num_classes;
  j["A"] = to_json(r.A);
  j["B"] = to_json(r.B);
  j["C"] = to_json(r.C);
  j["n_abc"] = r.n_abc;
  j["n_abc_1"] = r.n_abc_1;
  j["uniform"] = to_json(r.uniform);
  j["uniform_1"] = to_json(r.uniform_1);
  j["slack"] = r.slack;
  j["c_over_n"] = opt(r.c_over_n);
  j["asymptotic_slack"] = opt(r.asymptotic_slack);
  j["degenerate"] = r.degenerate;
  Json v;
  v["three_normal"] = verdict_name(r.three_normal);
  v["x2_class_bound"] = verdict_name(r.x2_class_bound);
  v["x2_small"] = verdict_name(r.x2_small);
  v["x1_large"] = verdict_name(r.x1_large);
  v["chain_lower"] = verdict_name(r.chain_lower);
  v["chain_upper"] = verdict_name(r.chain_upper);
  v["asymptotic_upper"] = verdict_name(r.asymptotic_upper);
  v["star"] = verdict_name(r.star);
  v["star_star"] = verdict_name(r.star_star);
  j["verdicts"] = std::move(v);
  return j;
}

template<>
DecompositionReport from_json<DecompositionReport>(Json const &j)
{
  return guarded("decomposition report", [&] {
    DecompositionReport r;
    r.alpha = get<double>(j, "alpha");
    r.eta = get<double>(j, "eta");
    r.threshold = get<double>(j, "threshold");
    r.beta_max = get<double>(j, "beta_max");
    r.group_order = get<std::size_t>(j, "group_order");
    r.num_classes = get<std::size_t>(j, "num_classes");
    r.A = from_json<PartSizes>(j.at("A"));
    r.B = from_json<PartSizes>(j.at("B"));
    r.C = from_json<PartSizes>(j.at("C"));
    r.n_abc = get<std::uint64_t>(j, "n_abc");
    r.n_abc_1 = get<std::uint64_t>(j, "n_abc_1");
    r.uniform = from_json<Rational>(j.at("uniform"));
    r.uniform_1 = from_json<Rational>(j.at("uniform_1"));
    r.slack = get<std::uint64_t>(j, "slack");
    r.c_over_n = get_opt<double>(j, "c_over_n");
    r.asymptotic_slack = get_opt<double>(j, "asymptotic_slack");
    r.degenerate = get<bool>(j, "degenerate");
    auto const &v = j.at("verdicts");
    r.three_normal = get_verdict(v, "three_normal");
    r.x2_class_bound = get_verdict(v, "x2_class_bound");
    r.x2_small = get_verdict(v, "x2_small");
    r.x1_large = get_verdict(v, "x1_large");
    r.chain_lower = get_verdict(v, "chain_lower");
    r.chain_upper = get_verdict(v, "chain_upper");
    r.asymptotic_upper = get_verdict(v, "asymptotic_upper");
    r.star = get_verdict(v, "star");
    r.star_star = get_verdict(v, "star_star");
    return r;
  });
}

Json to_json(SetRecord const &r)
{
  Json j;
  j["classes"] = opt(r.classes);
  j["elements"] = opt(r.elements);
  return j;
}

template<>
SetRecord from_json<SetRecord>(Json const &j)
{
  return guarded("set record", [&] {
    SetRecord r;
    r.classes = get_opt<std::vector<std::size_t>>(j, "classes");
    r.elements = get_opt<std::vector<Element>>(j, "elements");
    return r;
  });
}

Json to_json(Counterexample const &r)
{
  Json j;
  j["A"] = to_json(r.A);
  j["B"] = to_json(r.B);
  j["C"] = to_json(r.C);
  j["count"] = r.count;
  j["prob"] = to_json(r.prob);
  j["target"] = to_json(r.target);
  j["violated"] = r.violated;
  return j;
}

template<>
Counterexample from_json<Counterexample>(Json const &j)
{
  return guarded("counterexample", [&] {
    Counterexample r;
    r.A = from_json<SetRecord>(j.at("A"));
    r.B = from_json<SetRecord>(j.at("B"));
    r.C = from_json<SetRecord>(j.at("C"));
    r.count = get<std::uint64_t>(j, "count");
    r.prob = from_json<Rational>(j.at("prob"));
    r.target = from_json<Rational>(j.at("target"));
    r.violated = get<std::string>(j, "violated");
    return r;
  });
}

Json to_json(MixerCertificate const &r)
{
  Json j;
  j["group_order"] = r.group_order;
  j["epsilon"] = r.epsilon;
  j["eta"] = r.eta;
  j["i"] = r.i;
  j["mode"] = mode_name(r.mode);
  j["outcome"] = outcome_name(r.outcome);
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  j["trials"] = r.trials;
  j["exhaustive_trials"] = r.exhaustive_trials;
  j["sampled_trials"] = r.sampled_trials;
  j["rejected_draws"] = r.rejected_draws;
  j["qualifying_unions"] = r.qualifying_unions;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  return j;
}

template<>
MixerCertificate from_json<MixerCertificate>(Json const &j)
{
  return guarded("mixer certificate", [&] {
    MixerCertificate r;
    r.group_order = get<std::size_t>(j, "group_order");
    r.epsilon = get<double>(j, "epsilon");
    r.eta = get<double>(j, "eta");
    r.i = get<int>(j, "i");
    r.mode = parse_mode(get<std::string>(j, "mode"));
    r.outcome = parse_outcome(get<std::string>(j, "outcome"));
    if (!j.at("counterexample").is_null())
      r.counterexample = from_json<Counterexample>(j.at("counterexample"));
    r.trials = get<std::uint64_t>(j, "trials");
    r.exhaustive_trials = get<std::uint64_t>(j, "exhaustive_trials");
    r.sampled_trials = get<std::uint64_t>(j, "sampled_trials");
    r.rejected_draws = get<std::uint64_t>(j, "rejected_draws");
    r.qualifying_unions = get<std::uint64_t>(j, "qualifying_unions");
    r.budget = get<std::uint64_t>(j, "budget");
    r.seed = get<std::uint64_t>(j, "seed");
    return r;
  });
}

Json to_json(EpsilonPrime const &r)
{
  Json j;
  j["value"] = r.value;
  j["epsilon_bound"] = r.epsilon_bound;
  j["eta_too_large"] = r.eta_too_large;
  j["epsilon_too_large"] = r.epsilon_too_large;
  j["inapplicable"] = r.inapplicable;
  j["no_small_classes"] = r.no_small_classes;
  j["hypotheses_hold"] = r.hypotheses_hold();
  return j;
}

template<>
EpsilonPrime from_json<EpsilonPrime>(Json const &j)
{
  return guarded("epsilon prime", [&] {
    EpsilonPrime r;
    r.value = get<double>(j, "value");
    r.epsilon_bound = get<double>(j, "epsilon_bound");
    r.eta_too_large = get<bool>(j, "eta_too_large");
    r.epsilon_too_large = get<bool>(j, "epsilon_too_large");
    r.inapplicable = get<bool>(j, "inapplicable");
    r.no_small_classes = get<bool>(j, "no_small_classes");
    return r;
  });
}

Json to_json(PropagationReport const &r)
{
  Json j;
  j["epsilon"] = r.epsilon;
  j["eta"] = r.eta;
  j["k_eps"] = r.k_eps;
  j["epsilon_prime"] = r.epsilon_prime;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["rejected_draws"] = r.rejected_draws;
  Json acc;
  acc["general_C"] = r.accepted[0];
  acc["general_B"] = r.accepted[1];
  acc["general_A"] = r.accepted[2];
  j["accepted"] = std::move(acc);
  j["violations"] = r.violations;
  j["identity_mismatches"] = r.identity_mismatches;
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  j["pass"] = r.pass();
  return j;
}

template<>
PropagationReport from_json<PropagationReport>(Json const &j)
{
  return guarded("propagation report", [&] {
    PropagationReport r;
    r.epsilon = get<double>(j, "epsilon");
    r.eta = get<double>(j, "eta");
    r.k_eps = get<std::size_t>(j, "k_eps");
    r.epsilon_prime = get<double>(j, "epsilon_prime");
    r.budget = get<std::uint64_t>(j, "budget");
    r.seed = get<std::uint64_t>(j, "seed");
    r.trials = get<std::uint64_t>(j, "trials");
    r.rejected_draws = get<std::uint64_t>(j, "rejected_draws");
    auto const &acc = j.at("accepted");
    r.accepted = {get<std::uint64_t>(acc, "general_C"), get<std::uint64_t>(acc, "general_B"),
                  get<std::uint64_t>(acc, "general_A")};
    r.violations = get<std::uint64_t>(j, "violations");
    r.identity_mismatches = get<std::uint64_t>(j, "identity_mismatches");
    if (!j.at("counterexample").is_null())
      r.counterexample = from_json<Counterexample>(j.at("counterexample"));
    return r;
  });
}

Json to_json(Check const &r)
{
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["relation"] = r.relation;
  j["rhs"] = r.rhs;
  j["holds"] = r.holds;
  return j;
}

template<>
Check from_json<Check>(Json const &j)
{
  return guarded("check", [&] {
    return Check{get<std::string>(j, "name"), get<double>(j, "lhs"),
                 get<std::string>(j, "relation"), get<double>(j, "rhs"), get<bool>(j, "holds")};
  });
}

Json to_json(EndToEndReport const &r)
{
  Json j;
  j["group_order"] = r.group_order;
  j["num_classes"] = r.num_classes;
  j["delta"] = r.delta;
  j["eta"] = r.eta;
  j["min_degree"] = r.min_degree;
  j["size_threshold"] = r.size_threshold;
  j["epsilon"] = r.epsilon;
  j["inapplicable"] = r.inapplicable;
  j["k_eps"] = opt(r.k_eps);
  j["epsilon_prime"] = opt(r.epsilon_prime);
  j["final_target"] = r.final_target;
  j["certification"] =
    r.certification ? Json(outcome_name(*r.certification)) : Json(nullptr);
  Json checks = Json::array();
  for (auto const &c : r.checks)
    checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  return j;
}

template<>
EndToEndReport from_json<EndToEndReport>(Json const &j)
{
  return guarded("end-to-end report", [&] {
    EndToEndReport r;
    r.group_order = get<std::size_t>(j, "group_order");
    r.num_classes = get<std::size_t>(j, "num_classes");
    r.delta = get<double>(j, "delta");
    r.eta = get<double>(j, "eta");
    r.min_degree = get<std::uint64_t>(j, "min_degree");
    r.size_threshold = get<double>(j, "size_threshold");
    r.epsilon = get<double>(j, "epsilon");
    r.inapplicable = get<bool>(j, "inapplicable");
    r.k_eps = get_opt<std::size_t>(j, "k_eps");
    r.epsilon_prime = get_opt<double>(j, "epsilon_prime");
    r.final_target = get<double>(j, "final_target");
    if (auto c = get_opt<std::string>(j, "certification"))
      r.certification = parse_outcome(*c);
    for (auto const &c : j.at("checks"))
      r.checks.push_back(from_json<Check>(c));
    return r;
  });
}

} // namespace pmix
