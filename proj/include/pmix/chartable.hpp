#ifndef PMIX_CHARTABLE_HPP
#define PMIX_CHARTABLE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"

namespace pmix
{

using Complex = std::complex<double>;

/// Complex irreducible character table with classes in the owning group's
/// order. values[chi][i] is chi evaluated at the representative of class i.
struct CharTable
{
  std::size_t order = 0;
  std::vector<std::size_t> class_sizes;
  std::vector<Element> class_reps;
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<Complex>> values;
  std::size_t trivial_index = 0;

  std::size_t num_classes() const { return class_sizes.size(); }

  friend bool operator==(CharTable const &, CharTable const &) = default;
};

/// Orthogonality tolerance: 1e-9 up to order 1000, 1e-7 above.
double default_tolerance(std::size_t order);

struct DixonOptions
{
  std::uint64_t prime_limit = std::uint64_t(1) << 31;
};

/// Burnside-Dixon: common eigenvectors of the class matrices over GF(p) with
/// p = 1 (mod exponent) and p > 2 sqrt|G|, lifted to complex values.
///
/// Characters are sorted by degree, then by their (rounded) real parts in
/// descending lexicographic order, then imaginary parts likewise; the trivial
/// character therefore comes first.
CharTable dixon_char_table(GroupTable const &G, DixonOptions const &options = {});

/// Smallest prime p = 1 (mod exponent) with p > 2 sqrt(order), below `limit`.
/// Throws Error(PrimeSearchFailed).
std::uint64_t dixon_prime(std::size_t order, std::size_t exponent, std::uint64_t limit);

struct TableResiduals
{
  double trivial_row = 0;
  double degree_column = 0;
  double row_orthogonality = 0;
  double column_orthogonality = 0;
  std::int64_t degree_square_sum = 0;
};

TableResiduals table_residuals(CharTable const &T);

/// Checks every table invariant; throws Error(ValidationFailed) naming the
/// first violated one together with its residual.
void validate_char_table(CharTable const &T, double tolerance);

/// Checks that T's classes line up with G's (sizes and representatives).
void validate_against_group(CharTable const &T, GroupTable const &G);

/// Throws Error(TrivialGroup) for a one-class table.
std::uint64_t min_nontrivial_degree(CharTable const &T);

/// Witten zeta: sum of chi(1)^-x over the irreducible characters.
double witten_zeta(CharTable const &T, double x);

/// Number of conjugacy classes of size strictly below epsilon |G|.
std::size_t k_epsilon(GroupTable const &G, double epsilon);

/// log k(G) / log |G|
double class_number_exponent(GroupTable const &G);

struct RatioScanRow
{
  std::size_t class_index = 0;
  std::size_t class_size = 0;
  std::optional<double> alpha; // empty: every character of degree > 1 vanishes here
  std::optional<std::size_t> witness; // character attaining alpha
  double centralizer_exponent = 0; // log|C_G(g)| / log|G|
};

/// For each nonidentity class, the largest log|chi(g)| / log chi(1) over the
/// characters of degree > 1; values below `tolerance` in modulus are skipped.
std::vector<RatioScanRow> character_ratio_scan(GroupTable const &G, CharTable const &T,
                                               double tolerance = 1e-9);

} // namespace pmix

#endif // PMIX_CHARTABLE_HPP
