#ifndef PMIX_GROUP_HPP
#define PMIX_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "permutation.hpp"

namespace pmix
{

using Element = std::uint32_t;

inline constexpr std::size_t default_max_order = 20000;

struct ConjClass
{
  std::size_t index = 0;
  std::size_t size = 0;
  Element representative = 0;   // smallest member index
  std::vector<Element> members; // ascending
};

/// A finite group materialized as a Cayley table.
///
/// Elements are numbered in breadth-first order from the identity (index 0),
/// extending by generators in input order. Conjugacy classes are ordered by
/// (size, smallest member), so class 0 is always {e}.
class GroupTable
{
public:
  std::size_t order() const { return _order; }
  Element identity() const { return 0; }

  Element mul(Element a, Element b) const { return _mul[std::size_t(a) * _order + b]; }
  Element inv(Element a) const { return _inv[a]; }
  /// g^-1 x g
  Element conj(Element x, Element g) const { return mul(mul(_inv[g], x), g); }
  Element power(Element a, std::uint64_t k) const;

  std::size_t class_of(Element a) const { return _class_of[a]; }
  std::vector<ConjClass> const &classes() const { return _classes; }
  std::size_t num_classes() const { return _classes.size(); }
  ConjClass const &conj_class(std::size_t i) const { return _classes[i]; }
  /// Index of the class containing the inverses of class i.
  std::size_t inverse_class(std::size_t i) const { return _inverse_class[i]; }

  std::span<Element const> generators() const { return _generators; }
  Permutation const &element(Element a) const { return _elements[a]; }
  std::size_t degree() const { return _elements.front().degree(); }

  std::size_t element_order(Element a) const;
  std::size_t exponent() const;

private:
  friend GroupTable build_group(std::vector<Permutation> const &, std::size_t);

  GroupTable() = default;
  void compute_classes();

  std::size_t _order = 0;
  std::vector<Element> _mul;
  std::vector<Element> _inv;
  std::vector<Permutation> _elements;
  std::vector<Element> _generators;
  std::vector<std::size_t> _class_of;
  std::vector<ConjClass> _classes;
  std::vector<std::size_t> _inverse_class;
};

/// Throws Error(InvalidArgument) for an empty or mixed-degree generator list,
/// Error(OrderExceeded) once the closure grows past `max_order`.
GroupTable build_group(std::vector<Permutation> const &generators,
                       std::size_t max_order = default_max_order);

std::vector<ConjClass> const &conjugacy_classes(GroupTable const &G);

/// Class multiplication coefficients a[i][j][k] = #{(x,y) in K_i x K_j : xy = z_k}
/// for a fixed z_k in K_k, flattened as (i * m + j) * m + k.
std::vector<std::uint64_t> class_structure_constants(GroupTable const &G);

/// Advisory: every nontrivial class generates G as a normal subgroup.
bool is_simple(GroupTable const &G);

} // namespace pmix

#endif // PMIX_GROUP_HPP
