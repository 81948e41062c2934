#ifndef PMIX_CERTIFY_HPP
#define PMIX_CERTIFY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chartable.hpp"
#include "element_set.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace pmix
{

// ---------------------------------------------------------------------------
// Large-class decomposition of normal sets
// ---------------------------------------------------------------------------

/// X1 = union of the classes in X of size > threshold, X2 = X \ X1.
/// Throws Error(NotNormal) unless X is normal.
std::pair<ElementSet, ElementSet> split_by_class_size(ElementSet const &X, double threshold,
                                                      GroupTable const &G);

/// The largest class inside X with size > threshold (lowest index on ties).
std::optional<std::size_t> contains_large_class(ElementSet const &X, double threshold,
                                                GroupTable const &G);

enum class Verdict { Holds, Fails, NotApplicable };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view name);

struct PartSizes
{
  std::size_t size = 0;
  std::size_t x1 = 0;
  std::size_t x2 = 0;

  friend bool operator==(PartSizes const &, PartSizes const &) = default;
};

struct DecompositionReport
{
  double alpha = 0;
  double eta = 0;
  double threshold = 0;    // |G|^(1-alpha) / eta^2
  double beta_max = 0;     // 1 - (2(1-eta)/(2-eta))^(1/3)
  std::size_t group_order = 0;
  std::size_t num_classes = 0;
  PartSizes A, B, C;
  std::uint64_t n_abc = 0;     // N(A,B,C), by enumeration
  std::uint64_t n_abc_1 = 0;   // N(A1,B1,C1), from class-triple counts
  Rational uniform;            // |A||B||C| / |G|
  Rational uniform_1;          // |A1||B1||C1| / |G|
  std::uint64_t slack = 0;     // 7 |G| max(|A2|,|B2|,|C2|)
  std::optional<double> c_over_n;
  std::optional<double> asymptotic_slack; // 7 |G|^(2 + c/n - alpha) / eta^2
  bool degenerate = false;     // some X1 is empty

  Verdict three_normal = Verdict::NotApplicable; // (1 -+ eta/2) window on N(A1,B1,C1)
  Verdict x2_class_bound = Verdict::NotApplicable; // |X2| <= k(G) threshold
  Verdict x2_small = Verdict::NotApplicable;       // |X2| < beta_max |X|
  Verdict x1_large = Verdict::NotApplicable;       // |X1| > (1 - beta_max) |X|
  Verdict chain_lower = Verdict::NotApplicable;    // N(A1,B1,C1) <= N(A,B,C)
  Verdict chain_upper = Verdict::NotApplicable;    // N(A,B,C) <= N(A1,B1,C1) + slack
  Verdict asymptotic_upper = Verdict::NotApplicable;
  Verdict star = Verdict::NotApplicable;           // N > (1 - eta) |A||B||C|/|G|
  Verdict star_star = Verdict::NotApplicable;      // N < (1 + eta) |A||B||C|/|G|

  friend bool operator==(DecompositionReport const &, DecompositionReport const &) = default;
};

/// Evaluates every inequality of the large-class argument for concrete
/// normal A, B, C. Throws Error(NotNormal), Error(EmptySet).
DecompositionReport normal_mix_bounds(ElementSet const &A, ElementSet const &B,
                                      ElementSet const &C, double alpha, double eta,
                                      GroupTable const &G,
                                      std::optional<double> c_over_n = std::nullopt);

// ---------------------------------------------------------------------------
// Mixer certification
// ---------------------------------------------------------------------------

enum class MixerMode { ExhaustiveNormal, SampledGeneral };
enum class MixerOutcome { Certified, CertifiedUpToBudget, Refuted };

std::string_view mode_name(MixerMode m);
MixerMode parse_mode(std::string_view name);
std::string_view outcome_name(MixerOutcome o);
MixerOutcome parse_outcome(std::string_view name);

/// A set inside a certificate: class unions are recorded by class index,
/// sampled sets by element list.
struct SetRecord
{
  std::optional<std::vector<std::size_t>> classes;
  std::optional<std::vector<Element>> elements;

  ElementSet materialize(GroupTable const &G) const;

  friend bool operator==(SetRecord const &, SetRecord const &) = default;
};

struct Counterexample
{
  SetRecord A, B, C;
  std::uint64_t count = 0;
  Rational prob;
  Rational target;       // |C| / |G|
  std::string violated;  // "lower" or "upper"

  friend bool operator==(Counterexample const &, Counterexample const &) = default;
};

struct MixerCertificate
{
  std::size_t group_order = 0;
  double epsilon = 0;
  double eta = 0;
  int i = 3;
  MixerMode mode = MixerMode::ExhaustiveNormal;
  MixerOutcome outcome = MixerOutcome::Certified;
  std::optional<Counterexample> counterexample;
  std::uint64_t trials = 0;           // triples examined
  std::uint64_t exhaustive_trials = 0;
  std::uint64_t sampled_trials = 0;   // includes rejected draws
  std::uint64_t rejected_draws = 0;
  std::uint64_t qualifying_unions = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;

  friend bool operator==(MixerCertificate const &, MixerCertificate const &) = default;
};

struct CertifyLimits
{
  std::size_t max_classes = 20;
  std::uint64_t max_exhaustive_triples = 2'000'000'000;
};

/// Thrown when the exhaustive phase would exceed its triple limit.
class BudgetExceededError : public Error
{
public:
  BudgetExceededError(std::string const &message, MixerCertificate partial)
  : Error(ErrorCode::BudgetExceeded, message), _partial(std::move(partial))
  {}

  MixerCertificate const &partial() const { return _partial; }

private:
  MixerCertificate _partial;
};

/// Decides (or samples) whether every triple of sets of size >= epsilon |G|,
/// i of them normal, satisfies (1-eta)|C|/|G| < Prob(A,B,C) < (1+eta)|C|/|G|.
///
/// Exhaustive-normal mode enumerates all triples of nonempty class unions in
/// ascending bitmask order and stops at the first violation; this decides the
/// i = 3 case. For i < 3, `budget` further trials place general subsets
/// (density-sampled, then filtered by the size floor) in the non-normal slots,
/// cycling through the placements. Sampled-general mode skips the exhaustive
/// phase.
MixerCertificate certify_mixer(GroupTable const &G, double epsilon, double eta, int i,
                               MixerMode mode, std::uint64_t budget, std::uint64_t seed,
                               CertifyLimits const &limits = {});

struct EpsilonPrime
{
  double value = 0;              // (epsilon k_eps / eta)^(1/2)
  double epsilon_bound = 0;      // min{1, eta / (k_eps (1 - eta)^2)}
  bool eta_too_large = false;    // eta >= 1/2
  bool epsilon_too_large = false; // epsilon >= epsilon_bound
  bool inapplicable = false;     // value >= 1
  bool no_small_classes = false; // k_eps == 0

  bool hypotheses_hold() const
  {
    return !eta_too_large && !epsilon_too_large && !inapplicable && !no_small_classes;
  }
};

EpsilonPrime epsilon_prime(double epsilon, double eta, std::size_t k_eps);

struct PropagationReport
{
  double epsilon = 0;
  double eta = 0;
  std::size_t k_eps = 0;
  double epsilon_prime = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t rejected_draws = 0;
  std::array<std::uint64_t, 3> accepted{}; // non-normal slot C, B, A
  std::uint64_t violations = 0;
  std::uint64_t identity_mismatches = 0;
  std::optional<Counterexample> counterexample;

  bool pass() const { return violations == 0 && identity_mismatches == 0; }
};

/// Samples `budget` triples with exactly two normal slots (cycling the general
/// slot through C, B, A), all of size >= floor_fraction |G|, and checks
/// |Prob - |C|/|G|| < window_eta |C|/|G|. Also cross-checks the permuted-triple
/// identities for the placements with a general A or B.
PropagationReport two_normal_window_scan(GroupTable const &G, double floor_fraction,
                                         double window_eta, std::uint64_t budget,
                                         std::uint64_t seed);

/// two_normal_window_scan at (epsilon', 2 eta). Throws Error(PreconditionNotCertified)
/// unless G is an exhaustively certified (epsilon, eta, 3)-mixer with the epsilon'
/// hypotheses clear.
PropagationReport verify_propagation(GroupTable const &G, double epsilon, double eta,
                                     std::uint64_t budget, std::uint64_t seed);

// ---------------------------------------------------------------------------
// End-to-end chain
// ---------------------------------------------------------------------------

struct Check
{
  std::string name;
  double lhs = 0;
  std::string relation; // "<", "<=", ">"
  double rhs = 0;
  bool holds = false;

  friend bool operator==(Check const &, Check const &) = default;
};

struct EndToEndReport
{
  std::size_t group_order = 0;
  std::size_t num_classes = 0;
  double delta = 0;
  double eta = 0;
  std::uint64_t min_degree = 0;
  double size_threshold = 0;   // |G|^(1-delta) / eta^2
  double epsilon = 0;          // 4 |G|^-delta / eta^2
  bool inapplicable = false;   // epsilon >= 1
  std::optional<std::size_t> k_eps;
  std::optional<double> epsilon_prime;
  double final_target = 0;     // |G|^(-delta/3) / eta^2
  std::optional<MixerOutcome> certification; // (epsilon, eta/2, 3), when feasible
  std::vector<Check> checks;

  friend bool operator==(EndToEndReport const &, EndToEndReport const &) = default;
};

EndToEndReport end_to_end_report(GroupTable const &G, CharTable const &T, double delta,
                                 double eta, bool certify = true);

} // namespace pmix

#endif // PMIX_CERTIFY_HPP
