#include "pmix/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "pmix/mixing.hpp"
#include "pmix/sampling.hpp"

namespace pmix
{

namespace
{

Verdict verdict(bool holds)
{
  return holds ? Verdict::Holds : Verdict::Fails;
}

void require_normal(ElementSet const &X, char const *what)
{
  if (!X.is_normal())
    throw Error(ErrorCode::NotNormal, std::string(what) + " is not a normal subset");
}

} // anonymous namespace

std::string_view verdict_name(Verdict v)
{
  switch (v) {
  case Verdict::Holds: return "holds";
  case Verdict::Fails: return "fails";
  case Verdict::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

Verdict parse_verdict(std::string_view name)
{
  for (auto v : {Verdict::Holds, Verdict::Fails, Verdict::NotApplicable}) {
    if (verdict_name(v) == name)
      return v;
  }
  throw Error(ErrorCode::SyntaxError, "unknown verdict \"" + std::string(name) + "\"");
}

std::string_view mode_name(MixerMode m)
{
  return m == MixerMode::ExhaustiveNormal ? "exhaustive-normal" : "sampled-general";
}

MixerMode parse_mode(std::string_view name)
{
  if (name == "exhaustive-normal")
    return MixerMode::ExhaustiveNormal;
  if (name == "sampled-general")
    return MixerMode::SampledGeneral;
  throw Error(ErrorCode::InvalidArgument, "unknown mode \"" + std::string(name) + "\"");
}

std::string_view outcome_name(MixerOutcome o)
{
  switch (o) {
  case MixerOutcome::Certified: return "certified";
  case MixerOutcome::CertifiedUpToBudget: return "certified-up-to-budget";
  case MixerOutcome::Refuted: return "refuted";
  }
  return "refuted";
}

MixerOutcome parse_outcome(std::string_view name)
{
  for (auto o : {MixerOutcome::Certified, MixerOutcome::CertifiedUpToBudget, MixerOutcome::Refuted}) {
    if (outcome_name(o) == name)
      return o;
  }
  throw Error(ErrorCode::SyntaxError, "unknown outcome \"" + std::string(name) + "\"");
}

std::pair<ElementSet, ElementSet> split_by_class_size(ElementSet const &X, double threshold,
                                                      GroupTable const &G)
{
  require_normal(X, "X");
  std::vector<std::size_t> large, small;
  for (auto i : contained_classes(X, G))
    (double(G.conj_class(i).size) > threshold ? large : small).push_back(i);
  return {ElementSet::from_classes(G, large), ElementSet::from_classes(G, small)};
}

std::optional<std::size_t> contains_large_class(ElementSet const &X, double threshold,
                                                GroupTable const &G)
{
  require_normal(X, "X");
  std::optional<std::size_t> best;
  for (auto i : contained_classes(X, G)) {
    std::size_t size = G.conj_class(i).size;
    if (double(size) > threshold && (!best || size > G.conj_class(*best).size))
      best = i;
  }
  return best;
}

DecompositionReport normal_mix_bounds(ElementSet const &A, ElementSet const &B,
                                      ElementSet const &C, double alpha, double eta,
                                      GroupTable const &G, std::optional<double> c_over_n)
{
  require_normal(A, "A");
  require_normal(B, "B");
  require_normal(C, "C");
  if (A.is_empty() || B.is_empty() || C.is_empty())
    throw Error(ErrorCode::EmptySet, "decomposition needs nonempty A, B, C");
  if (!(eta > 0 && eta < 1))
    throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");

  double const n = double(G.order());

  DecompositionReport r;
  r.alpha = alpha;
  r.eta = eta;
  r.group_order = G.order();
  r.num_classes = G.num_classes();
  r.threshold = std::pow(n, 1.0 - alpha) / (eta * eta);
  r.beta_max = 1.0 - std::cbrt(2.0 * (1.0 - eta) / (2.0 - eta));
  r.c_over_n = c_over_n;

  auto [A1, A2] = split_by_class_size(A, r.threshold, G);
  auto [B1, B2] = split_by_class_size(B, r.threshold, G);
  auto [C1, C2] = split_by_class_size(C, r.threshold, G);
  r.A = {A.size(), A1.size(), A2.size()};
  r.B = {B.size(), B1.size(), B2.size()};
  r.C = {C.size(), C1.size(), C2.size()};
  r.degenerate = A1.is_empty() || B1.is_empty() || C1.is_empty();

  ClassProductTable const products(G);
  auto const ca = contained_classes(A1, G), cb = contained_classes(B1, G),
             cc = contained_classes(C1, G);
  for (auto i : ca) {
    for (auto j : cb) {
      for (auto l : cc)
        r.n_abc_1 += products(i, j, l);
    }
  }
  r.n_abc = count_pairs(A, B, C, G);

  std::uint64_t const abc = A.size() * B.size() * C.size();
  std::uint64_t const abc_1 = A1.size() * B1.size() * C1.size();
  r.uniform = Rational(std::int64_t(abc), std::int64_t(G.order()));
  r.uniform_1 = Rational(std::int64_t(abc_1), std::int64_t(G.order()));
  r.slack = 7 * G.order() * std::max({A2.size(), B2.size(), C2.size()});

  if (!r.degenerate) {
    r.three_normal = verdict(above_lower(r.n_abc_1, 1, abc_1, G.order(), eta / 2) &&
                             below_upper(r.n_abc_1, 1, abc_1, G.order(), eta / 2));
  }

  double const class_cap = double(G.num_classes()) * r.threshold;
  bool x2_cap = true, x2_small = true, x1_large = true;
  for (auto const *p : {&r.A, &r.B, &r.C}) {
    x2_cap = x2_cap && double(p->x2) <= class_cap;
    x2_small = x2_small && double(p->x2) < r.beta_max * double(p->size);
    x1_large = x1_large && double(p->x1) > (1.0 - r.beta_max) * double(p->size);
  }
  r.x2_class_bound = verdict(x2_cap);
  r.x2_small = verdict(x2_small);
  r.x1_large = verdict(x1_large);

  r.chain_lower = verdict(r.n_abc_1 <= r.n_abc);
  r.chain_upper = verdict(r.n_abc <= r.n_abc_1 + r.slack);
  if (c_over_n) {
    r.asymptotic_slack = 7.0 * std::pow(n, 2.0 + *c_over_n - alpha) / (eta * eta);
    r.asymptotic_upper = verdict(double(r.n_abc) <= double(r.n_abc_1) + *r.asymptotic_slack);
  }

  r.star = verdict(above_lower(r.n_abc, 1, abc, G.order(), eta));
  r.star_star = verdict(below_upper(r.n_abc, 1, abc, G.order(), eta));
  return r;
}

ElementSet SetRecord::materialize(GroupTable const &G) const
{
  if (classes)
    return ElementSet::from_classes(G, *classes);
  if (elements)
    return ElementSet::from_elements(G, *elements);
  return ElementSet::empty(G);
}

namespace
{

struct Union
{
  std::uint32_t mask;
  std::size_t size;
};

// Bit b of a union mask stands for class m-1-b, so ascending masks visit the
// large classes first and the identity class last.
std::vector<std::size_t> mask_classes(std::uint32_t mask, std::size_t m)
{
  std::vector<std::size_t> out;
  for (std::size_t b = 0; mask != 0; ++b, mask >>= 1) {
    if (mask & 1u)
      out.push_back(m - 1 - b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Union> qualifying_unions(GroupTable const &G, double floor)
{
  std::size_t const m = G.num_classes();
  std::vector<Union> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) {
    std::size_t size = 0;
    for (auto i : mask_classes(mask, m))
      size += G.conj_class(i).size;
    if (double(size) >= floor)
      out.push_back({mask, size});
  }
  return out;
}

bool meets_floor(std::size_t size, double floor)
{
  return double(size) >= floor;
}

SetRecord record_of(ElementSet const &X, std::optional<std::uint32_t> mask, std::size_t m)
{
  SetRecord rec;
  if (mask)
    rec.classes = mask_classes(*mask, m);
  else
    rec.elements = X.elements();
  return rec;
}

Counterexample make_counterexample(SetRecord A, SetRecord B, SetRecord C, std::uint64_t count,
                                   std::size_t a, std::size_t b, std::size_t c, std::size_t n,
                                   double eta)
{
  Counterexample ce{std::move(A), std::move(B), std::move(C), count,
                    Rational(std::int64_t(count), std::int64_t(a * b)),
                    Rational(std::int64_t(c), std::int64_t(n)), ""};
  ce.violated = above_lower(count, a * b, c, n, eta) ? "upper" : "lower";
  return ce;
}

// One random set for a sampled slot; normal slots pick a qualifying union.
struct Draw
{
  ElementSet set;
  std::optional<std::uint32_t> mask;
};

Draw draw_normal(GroupTable const &G, std::vector<Union> const &unions, Sampler &rng)
{
  Union const &u = unions[rng.below(unions.size())];
  auto classes = mask_classes(u.mask, G.num_classes());
  return {ElementSet::from_classes(G, classes), u.mask};
}

Draw draw_general(GroupTable const &G, double floor_fraction, Sampler &rng)
{
  double const lo = std::clamp(floor_fraction, 0.0, 1.0);
  double const density = lo + (1.0 - lo) * rng.uniform();
  return {rng.subset(G, density), std::nullopt};
}

} // anonymous namespace

MixerCertificate certify_mixer(GroupTable const &G, double epsilon, double eta, int i,
                               MixerMode mode, std::uint64_t budget, std::uint64_t seed,
                               CertifyLimits const &limits)
{
  if (!(epsilon > 0))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(eta > 0 && eta < 1))
    throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
  if (i < 1 || i > 3)
    throw Error(ErrorCode::InvalidArgument, "i must be 1, 2 or 3");
  if (G.num_classes() > limits.max_classes)
    throw Error(ErrorCode::TooManyClasses,
                "k(G) = " + std::to_string(G.num_classes()) + " exceeds the class-union cap of " +
                  std::to_string(limits.max_classes));

  std::size_t const n = G.order();
  std::size_t const m = G.num_classes();
  double const floor = epsilon * double(n);

  MixerCertificate cert;
  cert.group_order = n;
  cert.epsilon = epsilon;
  cert.eta = eta;
  cert.i = i;
  cert.mode = mode;
  cert.budget = budget;
  cert.seed = seed;

  auto const unions = qualifying_unions(G, floor);
  cert.qualifying_unions = unions.size();

  if (mode == MixerMode::ExhaustiveNormal && !unions.empty()) {
    std::uint64_t const u = unions.size();
    if (u > limits.max_exhaustive_triples / u / u) {
      std::ostringstream os;
      os << u << " qualifying class unions give " << u << "^3 triples, above the limit of "
         << limits.max_exhaustive_triples;
      throw BudgetExceededError(os.str(), cert);
    }

    ClassProductTable const products(G);
    std::size_t const masks = std::size_t(1) << m;
    std::vector<std::uint64_t> per_class(m), by_mask(masks);

    for (auto const &a : unions) {
      for (auto const &b : unions) {
        std::fill(per_class.begin(), per_class.end(), 0);
        for (auto ci : mask_classes(a.mask, m)) {
          for (auto cj : mask_classes(b.mask, m)) {
            for (std::size_t l = 0; l < m; ++l)
              per_class[l] += products(ci, cj, l);
          }
        }
        // N(A, B, union) for every union, adding one class at a time
        by_mask[0] = 0;
        for (std::size_t mask = 1; mask < masks; ++mask)
          by_mask[mask] = by_mask[mask & (mask - 1)] + per_class[m - 1 - std::countr_zero(mask)];

        std::uint64_t const ab = std::uint64_t(a.size) * b.size;
        for (auto const &c : unions) {
          ++cert.exhaustive_trials;
          std::uint64_t const count = by_mask[c.mask];
          if (!strictly_inside_window(count, ab, c.size, n, eta)) {
            cert.trials = cert.exhaustive_trials;
            cert.outcome = MixerOutcome::Refuted;
            cert.counterexample = make_counterexample(
              SetRecord{mask_classes(a.mask, m), std::nullopt},
              SetRecord{mask_classes(b.mask, m), std::nullopt},
              SetRecord{mask_classes(c.mask, m), std::nullopt}, count, a.size, b.size, c.size, n, eta);
            return cert;
          }
        }
      }
    }
  }

  bool const sampled_phase = mode == MixerMode::SampledGeneral || i < 3;
  cert.trials = cert.exhaustive_trials;
  if (!sampled_phase || unions.empty()) {
    cert.outcome = MixerOutcome::Certified;
    return cert;
  }

  // placements of the normal slots, as bit sets over (A, B, C)
  std::vector<unsigned> placements;
  for (unsigned p = 0; p < 8; ++p) {
    if (std::popcount(p) == i)
      placements.push_back(p);
  }

  Sampler rng(seed);
  for (std::uint64_t t = 0; t < budget; ++t) {
    ++cert.sampled_trials;
    unsigned const p = placements[t % placements.size()];
    std::array<Draw, 3> slot;
    bool rejected = false;
    for (unsigned s = 0; s < 3; ++s) {
      slot[s] = (p >> s) & 1u ? draw_normal(G, unions, rng) : draw_general(G, epsilon, rng);
      rejected = rejected || !meets_floor(slot[s].set.size(), floor);
    }
    if (rejected) {
      ++cert.rejected_draws;
      continue;
    }

    auto const &[A, a_mask] = slot[0];
    auto const &[B, b_mask] = slot[1];
    auto const &[C, c_mask] = slot[2];
    std::uint64_t const count = count_pairs(A, B, C, G);
    if (!strictly_inside_window(count, A.size() * B.size(), C.size(), n, eta)) {
      cert.trials = cert.exhaustive_trials + cert.sampled_trials;
      cert.outcome = MixerOutcome::Refuted;
      cert.counterexample =
        make_counterexample(record_of(A, a_mask, m), record_of(B, b_mask, m), record_of(C, c_mask, m),
                            count, A.size(), B.size(), C.size(), n, eta);
      return cert;
    }
  }

  cert.trials = cert.exhaustive_trials + cert.sampled_trials;
  cert.outcome = MixerOutcome::CertifiedUpToBudget;
  return cert;
}

EpsilonPrime epsilon_prime(double epsilon, double eta, std::size_t k_eps)
{
  if (!(epsilon > 0) || !(eta > 0 && eta < 1))
    throw Error(ErrorCode::InvalidArgument, "epsilon_prime needs epsilon > 0 and eta in (0, 1)");

  EpsilonPrime r;
  r.value = std::sqrt(epsilon * double(k_eps) / eta);
  r.epsilon_bound = k_eps == 0
                      ? 1.0
                      : std::min(1.0, eta / (double(k_eps) * (1.0 - eta) * (1.0 - eta)));
  r.eta_too_large = !(eta < 0.5);
  r.epsilon_too_large = !(epsilon < r.epsilon_bound);
  r.inapplicable = !(r.value < 1.0);
  r.no_small_classes = k_eps == 0;
  return r;
}

PropagationReport two_normal_window_scan(GroupTable const &G, double floor_fraction,
                                         double window_eta, std::uint64_t budget,
                                         std::uint64_t seed)
{
  if (!(floor_fraction > 0 && floor_fraction <= 1) || !(window_eta > 0))
    throw Error(ErrorCode::InvalidArgument,
                "window scan needs a floor fraction in (0, 1] and a positive window");

  PropagationReport r;
  r.epsilon_prime = floor_fraction;
  r.budget = budget;
  r.seed = seed;

  std::size_t const n = G.order();
  std::size_t const m = G.num_classes();
  double const floor = floor_fraction * double(n);
  auto const unions = qualifying_unions(G, floor);
  if (unions.empty())
    return r;

  Sampler rng(seed);
  for (std::uint64_t t = 0; t < budget; ++t) {
    ++r.trials;
    // general slot: 0 -> C, 1 -> B, 2 -> A
    unsigned const placement = t % 3;
    unsigned const general = 2 - placement;
    std::array<Draw, 3> slot;
    bool rejected = false;
    for (unsigned s = 0; s < 3; ++s) {
      slot[s] = s == general ? draw_general(G, floor_fraction, rng) : draw_normal(G, unions, rng);
      rejected = rejected || !meets_floor(slot[s].set.size(), floor);
    }
    if (rejected) {
      ++r.rejected_draws;
      continue;
    }
    ++r.accepted[placement];

    auto const &A = slot[0].set;
    auto const &B = slot[1].set;
    auto const &C = slot[2].set;
    std::uint64_t const count = count_pairs(A, B, C, G);
    Rational const p(std::int64_t(count), std::int64_t(A.size() * B.size()));

    if (placement == 1) {
      Rational via = Rational(std::int64_t(C.size()), std::int64_t(B.size())) *
                     prob(inverse_set(C, G), A, inverse_set(B, G), G);
      r.identity_mismatches += via != p;
    } else if (placement == 2) {
      Rational via = Rational(std::int64_t(C.size()), std::int64_t(A.size())) *
                     prob(B, inverse_set(C, G), inverse_set(A, G), G);
      r.identity_mismatches += via != p;
    }

    if (!strictly_inside_window(count, A.size() * B.size(), C.size(), n, window_eta)) {
      ++r.violations;
      if (!r.counterexample)
        r.counterexample = make_counterexample(
          record_of(A, slot[0].mask, m), record_of(B, slot[1].mask, m),
          record_of(C, slot[2].mask, m), count, A.size(), B.size(), C.size(), n, window_eta);
    }
  }
  return r;
}

PropagationReport verify_propagation(GroupTable const &G, double epsilon, double eta,
                                     std::uint64_t budget, std::uint64_t seed)
{
  std::size_t const k_eps = k_epsilon(G, epsilon);
  auto const ep = epsilon_prime(epsilon, eta, k_eps);
  if (!ep.hypotheses_hold())
    throw Error(ErrorCode::PreconditionNotCertified,
                "epsilon' hypotheses fail (eta < 1/2, k_eps >= 1, epsilon bound, epsilon' < 1)");
  auto const cert = certify_mixer(G, epsilon, eta, 3, MixerMode::ExhaustiveNormal, 0, seed);
  if (cert.outcome != MixerOutcome::Certified)
    throw Error(ErrorCode::PreconditionNotCertified,
                "G is not an exhaustively certified (epsilon, eta, 3)-mixer");

  PropagationReport r = two_normal_window_scan(G, ep.value, 2 * eta, budget, seed);
  r.epsilon = epsilon;
  r.eta = eta;
  r.k_eps = k_eps;
  return r;
}

EndToEndReport end_to_end_report(GroupTable const &G, CharTable const &T, double delta,
                                 double eta, bool certify)
{
  if (!(delta >= 0) || !(eta > 0 && eta < 1))
    throw Error(ErrorCode::InvalidArgument, "end-to-end report needs delta >= 0 and eta in (0, 1)");
  validate_against_group(T, G);

  double const n = double(G.order());
  EndToEndReport r;
  r.group_order = G.order();
  r.num_classes = G.num_classes();
  r.delta = delta;
  r.eta = eta;
  r.size_threshold = std::pow(n, 1.0 - delta) / (eta * eta);
  r.epsilon = 4.0 * std::pow(n, -delta) / (eta * eta);
  r.final_target = std::pow(n, -delta / 3.0) / (eta * eta);

  auto check = [&](std::string name, double lhs, std::string rel, double rhs) {
    bool holds = rel == "<" ? lhs < rhs : rel == "<=" ? lhs <= rhs : lhs > rhs;
    r.checks.push_back({std::move(name), lhs, std::move(rel), rhs, holds});
  };

  check("eta_main_range", eta, "<", 0.25);
  check("eta_propagation_range", eta, "<", 0.5);
  if (T.num_classes() >= 2) {
    r.min_degree = min_nontrivial_degree(T);
    check("bounded_rank_route", double(r.min_degree), ">", std::pow(n, delta));
    check("zeta_error_term", witten_zeta(T, 0.7) - 1.0, "<", eta);
  }
  check("epsilon_below_one", r.epsilon, "<", 1.0);
  if (r.epsilon >= 1.0) {
    r.inapplicable = true;
    return r;
  }

  check("k_eps_nonzero", r.epsilon * n, ">", 1.0);
  r.k_eps = k_epsilon(G, r.epsilon);
  auto const ep = epsilon_prime(r.epsilon, eta, *r.k_eps);
  check("epsilon_hypothesis", r.epsilon, "<", ep.epsilon_bound);
  r.epsilon_prime = ep.value;
  check("epsilon_prime_below_one", ep.value, "<", 1.0);
  check("final_comparison", ep.value, "<=", r.final_target);

  if (certify && G.num_classes() <= CertifyLimits{}.max_classes)
    r.certification =
      certify_mixer(G, r.epsilon, eta / 2, 3, MixerMode::ExhaustiveNormal, 0, 0).outcome;
  return r;
}

} // namespace pmix
