#ifndef PMIX_ELEMENT_SET_HPP
#define PMIX_ELEMENT_SET_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "group.hpp"

namespace pmix
{

/// A subset of a group's elements. Size and normality are computed once at
/// construction, which is why every factory takes the owning group.
class ElementSet
{
public:
  using Bits = boost::dynamic_bitset<>;

  ElementSet() = default;

  static ElementSet from_bits(GroupTable const &G, Bits bits);
  static ElementSet from_elements(GroupTable const &G, std::span<Element const> elements);
  static ElementSet from_classes(GroupTable const &G, std::span<std::size_t const> classes);
  static ElementSet of_class(GroupTable const &G, std::size_t class_index);
  static ElementSet empty(GroupTable const &G);
  static ElementSet all(GroupTable const &G);

  bool contains(Element a) const { return _bits.test(a); }
  std::size_t size() const { return _size; }
  bool is_empty() const { return _size == 0; }
  bool is_normal() const { return _is_normal; }
  Bits const &bits() const { return _bits; }
  std::size_t universe() const { return _bits.size(); }

  std::vector<Element> elements() const;

  template<typename F>
  void for_each(F &&f) const
  {
    for (auto i = _bits.find_first(); i != Bits::npos; i = _bits.find_next(i))
      f(static_cast<Element>(i));
  }

  bool is_subset_of(ElementSet const &other) const { return _bits.is_subset_of(other._bits); }

  friend bool operator==(ElementSet const &lhs, ElementSet const &rhs)
  { return lhs._bits == rhs._bits; }

private:
  ElementSet(GroupTable const &G, Bits bits);

  Bits _bits;
  std::size_t _size = 0;
  bool _is_normal = false;
};

/// X^-1 = { x^-1 : x in X }
ElementSet inverse_set(ElementSet const &X, GroupTable const &G);

/// Smallest conjugation-invariant superset of X.
ElementSet normal_closure(ElementSet const &X, GroupTable const &G);

/// gX = { g x : x in X }
ElementSet left_translate(Element g, ElementSet const &X, GroupTable const &G);

ElementSet set_union(ElementSet const &X, ElementSet const &Y, GroupTable const &G);
ElementSet set_difference(ElementSet const &X, ElementSet const &Y, GroupTable const &G);

/// Classes fully contained in X (for normal X these partition it).
std::vector<std::size_t> contained_classes(ElementSet const &X, GroupTable const &G);

} // namespace pmix

#endif // PMIX_ELEMENT_SET_HPP
