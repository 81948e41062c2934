#ifndef PMIX_MIXING_HPP
#define PMIX_MIXING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chartable.hpp"
#include "element_set.hpp"
#include "rational.hpp"

namespace pmix
{

/// N(A,B,C) = #{(a,b) in A x B : ab in C}, by enumeration.
std::uint64_t count_pairs(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                          GroupTable const &G);

/// N(A,B,C) / (|A||B|). Throws Error(EmptySet) if A or B is empty.
Rational prob(ElementSet const &A, ElementSet const &B, ElementSet const &C, GroupTable const &G);

/// #{(x,y,z) in X x Y x Z : xyz = g}
std::uint64_t count_triples_g(ElementSet const &X, ElementSet const &Y, ElementSet const &Z,
                              Element g, GroupTable const &G);

using Triple = std::array<Element, 3>;

/// The triples counted by count_triples_g, in (x, y) lexicographic order.
std::vector<Triple> triples_g(ElementSet const &X, ElementSet const &Y, ElementSet const &Z,
                              Element g, GroupTable const &G);

/// N(K_i, K_j, K_l) for every class triple, from the class multiplication
/// coefficients: N = a_ijl |K_l|.
class ClassProductTable
{
public:
  explicit ClassProductTable(GroupTable const &G);

  std::size_t num_classes() const { return _m; }
  std::uint64_t operator()(std::size_t i, std::size_t j, std::size_t l) const
  { return _n[(i * _m + j) * _m + l]; }

private:
  std::size_t _m;
  std::vector<std::uint64_t> _n;
};

struct FrobeniusEvaluation
{
  std::uint64_t count = 0;
  double raw = 0;   // pre-rounding value of the character sum
  double drift = 0; // |raw - count|
};

/// Character-sum evaluation of N(K_i, K_j, K_l):
///   |K_i||K_j||K_l| / |G| * sum_chi chi(a) chi(b) conj(chi(c)) / chi(1).
/// Throws Error(RoundingDrift) if the value is farther than 1e-6 (1 + |value|)
/// from an integer.
FrobeniusEvaluation frobenius_evaluate(std::size_t i, std::size_t j, std::size_t l,
                                       CharTable const &T);

std::uint64_t frobenius_count(std::size_t i, std::size_t j, std::size_t l,
                              GroupTable const &G, CharTable const &T);

struct FrobeniusErrorBound
{
  std::uint64_t count = 0;
  Rational expected;  // |K_i||K_j||K_l| / |G|
  Rational deviation; // |N - expected|
  double zeta = 0;    // witten_zeta(T, exponent)
  double bound = 0;   // expected * (zeta - 1)
  bool within = false;
};

/// Compares the exact deviation from the uniform count against the
/// Witten-zeta error term. Reports, never throws on a failed bound.
FrobeniusErrorBound frobenius_error_bound(std::size_t i, std::size_t j, std::size_t l,
                                          CharTable const &T, double exponent);

struct SetSummary
{
  std::size_t size = 0;
  bool normal = false;

  friend bool operator==(SetSummary const &, SetSummary const &) = default;
};

SetSummary summarize(ElementSet const &X);

struct MixReport
{
  std::string kind; // "gowers" or "trick"
  std::size_t group_order = 0;
  std::uint64_t min_degree = 0;
  SetSummary A, B, C;
  std::optional<Element> g;
  std::uint64_t count = 0;   // N(A,B,C), or the triple count for "trick"
  Rational prob;             // count / (|A||B|)
  Rational target;           // |C| / |G|
  double eta_implied = 0;
  double eta = 0;
  double lower = 0;          // display only; the verdict is exact
  double upper = 0;
  bool pass = false;
  std::vector<std::uint64_t> seeds;

  friend bool operator==(MixReport const &, MixReport const &) = default;
};

/// sqrt(|G|^3 / (k |A||B||C|)): the eta at which the size hypothesis of the
/// Gowers bound holds with equality.
double gowers_eta(std::size_t order, std::uint64_t k, std::size_t a, std::size_t b, std::size_t c);

/// Checks (1-eta)|C|/|G| < Prob(A,B,C) < (1+eta)|C|/|G|. Without an explicit
/// eta, uses eta_implied * (1 + 1e-12). Throws Error(EmptySet).
MixReport gowers_check(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                       GroupTable const &G, CharTable const &T,
                       std::optional<double> eta = std::nullopt);

/// Checks (1-eta)|A||B||C|/|G| < #{abc = g} < (1+eta)|A||B||C|/|G|.
MixReport gowers_trick_check(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                             Element g, GroupTable const &G, CharTable const &T,
                             std::optional<double> eta = std::nullopt);

struct TripleIdentityReport
{
  std::uint64_t n_abc = 0;     // N(A, B, C)
  std::uint64_t n_bca = 0;     // N(B, C^-1, A^-1)
  std::uint64_t n_cab = 0;     // N(C^-1, A, B^-1)
  bool counts_equal = false;
  // present only when A, B, C are all nonempty
  std::optional<Rational> prob_abc;
  std::optional<Rational> via_bca; // |C|/|A| Prob(B, C^-1, A^-1)
  std::optional<Rational> via_cab; // |C|/|B| Prob(C^-1, A, B^-1)
  std::optional<bool> probs_equal;

  bool holds() const { return counts_equal && probs_equal.value_or(true); }
};

TripleIdentityReport verify_triple_identities(ElementSet const &A, ElementSet const &B,
                                              ElementSet const &C, GroupTable const &G);

struct CyclicIdentityReport
{
  std::uint64_t n_xyz = 0; // |N(X,Y,Z,g)|
  std::uint64_t n_xzy = 0; // |N(X,Z,Y,g)|
  bool swap_equal = false;
  bool swap_bijection = false;   // (x,y,z) -> (x, yzy^-1, y) is a bijection onto N(X,Z,Y,g)
  // present only when Y is normal as well
  std::optional<std::uint64_t> n_yzx; // |N(Y,Z,X,g)|
  std::optional<bool> rotate_equal;
  std::optional<bool> rotate_bijection; // (x,y,z) -> (xyx^-1, xzx^-1, x)

  bool holds() const
  {
    return swap_equal && swap_bijection && rotate_equal.value_or(true) &&
           rotate_bijection.value_or(true);
  }
};

/// Requires Z normal (throws Error(NotNormal)); the rotation check runs only
/// when Y is normal too.
CyclicIdentityReport verify_cyclic_identities(ElementSet const &X, ElementSet const &Y,
                                              ElementSet const &Z, Element g,
                                              GroupTable const &G);

} // namespace pmix

#endif // PMIX_MIXING_HPP
