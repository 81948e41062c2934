#include "pmix/group.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "pmix/error.hpp"

namespace pmix
{

Element GroupTable::power(Element a, std::uint64_t k) const
{
  Element result = identity();
  Element base = a;
  while (k > 0) {
    if (k & 1u)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::size_t GroupTable::element_order(Element a) const
{
  std::size_t n = 1;
  for (Element x = a; x != identity(); x = mul(x, a))
    ++n;
  return n;
}

std::size_t GroupTable::exponent() const
{
  std::size_t e = 1;
  for (auto const &K : _classes)
    e = std::lcm(e, element_order(K.representative));
  return e;
}

void GroupTable::compute_classes()
{
  std::vector<bool> seen(_order, false);
  std::vector<ConjClass> found;

  for (Element x = 0; x < _order; ++x) {
    if (seen[x])
      continue;

    ConjClass K;
    K.members.push_back(x);
    seen[x] = true;
    for (std::size_t head = 0; head < K.members.size(); ++head) {
      Element y = K.members[head];
      for (Element g : _generators) {
        Element z = conj(y, g);
        if (!seen[z]) {
          seen[z] = true;
          K.members.push_back(z);
        }
      }
    }
    std::sort(K.members.begin(), K.members.end());
    K.size = K.members.size();
    K.representative = K.members.front();
    found.push_back(std::move(K));
  }

  std::sort(found.begin(), found.end(), [](ConjClass const &lhs, ConjClass const &rhs) {
    if (lhs.size != rhs.size)
      return lhs.size < rhs.size;
    return lhs.representative < rhs.representative;
  });

  _class_of.assign(_order, 0);
  for (std::size_t i = 0; i < found.size(); ++i) {
    found[i].index = i;
    for (Element x : found[i].members)
      _class_of[x] = i;
  }
  _classes = std::move(found);

  _inverse_class.resize(_classes.size());
  for (std::size_t i = 0; i < _classes.size(); ++i)
    _inverse_class[i] = _class_of[_inv[_classes[i].representative]];
}

GroupTable build_group(std::vector<Permutation> const &generators, std::size_t max_order)
{
  if (generators.empty())
    throw Error(ErrorCode::InvalidArgument, "generator list is empty");

  std::size_t const degree = generators.front().degree();
  for (auto const &g : generators) {
    if (g.degree() != degree)
      throw Error(ErrorCode::InvalidArgument, "generators have differing degrees");
    if (!Permutation::is_bijection(g.images()))
      throw Error(ErrorCode::InvalidPermutation, "generator is not a bijection");
  }

  std::size_t const ngens = generators.size();

  GroupTable G;
  std::unordered_map<Permutation, Element> index;
  std::vector<Element> parent{0};
  std::vector<std::size_t> via{0};
  std::vector<Element> right; // right[x * ngens + s] = x * generators[s]

  G._elements.emplace_back(degree);
  index.emplace(G._elements.front(), 0);

  for (std::size_t head = 0; head < G._elements.size(); ++head) {
    for (std::size_t s = 0; s < ngens; ++s) {
      Permutation y = G._elements[head] * generators[s];
      auto [it, inserted] = index.try_emplace(y, static_cast<Element>(G._elements.size()));
      if (inserted) {
        if (G._elements.size() >= max_order)
          throw Error(ErrorCode::OrderExceeded,
                      "group order exceeds max_order = " + std::to_string(max_order));
        G._elements.push_back(std::move(y));
        parent.push_back(static_cast<Element>(head));
        via.push_back(s);
      }
      right.push_back(it->second);
    }
  }

  std::size_t const n = G._elements.size();
  G._order = n;
  G._mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    Element *row = G._mul.data() + a * n;
    row[0] = static_cast<Element>(a);
    // b = parent(b) * gen, and parent(b) < b in BFS order
    for (std::size_t b = 1; b < n; ++b)
      row[b] = right[std::size_t(row[parent[b]]) * ngens + via[b]];
  }

  G._inv.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    Element const *row = G._mul.data() + a * n;
    G._inv[a] = static_cast<Element>(std::find(row, row + n, Element{0}) - row);
  }

  for (auto const &g : generators)
    G._generators.push_back(index.at(g));

  G.compute_classes();
  return G;
}

std::vector<ConjClass> const &conjugacy_classes(GroupTable const &G)
{
  return G.classes();
}

std::vector<std::uint64_t> class_structure_constants(GroupTable const &G)
{
  std::size_t const m = G.num_classes();
  std::vector<std::uint64_t> a(m * m * m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    Element z = G.conj_class(k).representative;
    for (Element x = 0; x < G.order(); ++x) {
      Element y = G.mul(G.inv(x), z);
      ++a[(G.class_of(x) * m + G.class_of(y)) * m + k];
    }
  }
  return a;
}

bool is_simple(GroupTable const &G)
{
  if (G.order() < 2)
    return false;

  for (std::size_t i = 1; i < G.num_classes(); ++i) {
    auto const &members = G.conj_class(i).members;
    std::vector<bool> in(G.order(), false);
    std::vector<Element> reached{G.identity()};
    in[G.identity()] = true;
    for (std::size_t head = 0; head < reached.size(); ++head) {
      for (Element c : members) {
        Element y = G.mul(reached[head], c);
        if (!in[y]) {
          in[y] = true;
          reached.push_back(y);
        }
      }
    }
    if (reached.size() != G.order())
      return false;
  }
  return true;
}

} // namespace pmix
