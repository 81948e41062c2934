#include "pmix/element_set.hpp"

#include <string>

#include "pmix/error.hpp"

namespace pmix
{

namespace
{

bool union_of_classes(GroupTable const &G, ElementSet::Bits const &bits)
{
  for (auto const &K : G.classes()) {
    bool first = bits.test(K.members.front());
    for (Element x : K.members) {
      if (bits.test(x) != first)
        return false;
    }
  }
  return true;
}

} // anonymous namespace

ElementSet::ElementSet(GroupTable const &G, Bits bits)
: _bits(std::move(bits))
{
  if (_bits.size() != G.order())
    throw Error(ErrorCode::InvalidArgument, "element set universe does not match group order");
  _size = _bits.count();
  _is_normal = union_of_classes(G, _bits);
}

ElementSet ElementSet::from_bits(GroupTable const &G, Bits bits)
{
  return ElementSet(G, std::move(bits));
}

ElementSet ElementSet::from_elements(GroupTable const &G, std::span<Element const> elements)
{
  Bits bits(G.order());
  for (Element x : elements) {
    if (x >= G.order())
      throw Error(ErrorCode::InvalidArgument,
                  "element index " + std::to_string(x) + " out of range");
    bits.set(x);
  }
  return ElementSet(G, std::move(bits));
}

ElementSet ElementSet::from_classes(GroupTable const &G, std::span<std::size_t const> classes)
{
  Bits bits(G.order());
  for (std::size_t i : classes) {
    if (i >= G.num_classes())
      throw Error(ErrorCode::InvalidArgument,
                  "class index " + std::to_string(i) + " out of range");
    for (Element x : G.conj_class(i).members)
      bits.set(x);
  }
  return ElementSet(G, std::move(bits));
}

ElementSet ElementSet::of_class(GroupTable const &G, std::size_t class_index)
{
  std::size_t const one[] = {class_index};
  return from_classes(G, one);
}

ElementSet ElementSet::empty(GroupTable const &G)
{
  return ElementSet(G, Bits(G.order()));
}

ElementSet ElementSet::all(GroupTable const &G)
{
  Bits bits(G.order());
  bits.set();
  return ElementSet(G, std::move(bits));
}

std::vector<Element> ElementSet::elements() const
{
  std::vector<Element> out;
  out.reserve(_size);
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

ElementSet inverse_set(ElementSet const &X, GroupTable const &G)
{
  ElementSet::Bits bits(G.order());
  X.for_each([&](Element x) { bits.set(G.inv(x)); });
  return ElementSet::from_bits(G, std::move(bits));
}

ElementSet normal_closure(ElementSet const &X, GroupTable const &G)
{
  ElementSet::Bits bits(G.order());
  for (auto const &K : G.classes()) {
    bool hit = false;
    for (Element x : K.members) {
      if (X.contains(x)) {
        hit = true;
        break;
      }
    }
    if (hit) {
      for (Element x : K.members)
        bits.set(x);
    }
  }
  return ElementSet::from_bits(G, std::move(bits));
}

ElementSet left_translate(Element g, ElementSet const &X, GroupTable const &G)
{
  ElementSet::Bits bits(G.order());
  X.for_each([&](Element x) { bits.set(G.mul(g, x)); });
  return ElementSet::from_bits(G, std::move(bits));
}

ElementSet set_union(ElementSet const &X, ElementSet const &Y, GroupTable const &G)
{
  return ElementSet::from_bits(G, X.bits() | Y.bits());
}

ElementSet set_difference(ElementSet const &X, ElementSet const &Y, GroupTable const &G)
{
  return ElementSet::from_bits(G, X.bits() - Y.bits());
}

std::vector<std::size_t> contained_classes(ElementSet const &X, GroupTable const &G)
{
  std::vector<std::size_t> out;
  for (auto const &K : G.classes()) {
    bool all_in = true;
    for (Element x : K.members) {
      if (!X.contains(x)) {
        all_in = false;
        break;
      }
    }
    if (all_in)
      out.push_back(K.index);
  }
  return out;
}

} // namespace pmix
