#include "pmix/sampling.hpp"

namespace pmix
{

std::size_t Sampler::below(std::size_t n)
{
  std::uint64_t const range = n;
  std::uint64_t const limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = _engine();
  } while (x >= limit);
  return static_cast<std::size_t>(x % range);
}

ElementSet Sampler::subset(GroupTable const &G, double density)
{
  ElementSet::Bits bits(G.order());
  for (std::size_t x = 0; x < G.order(); ++x) {
    if (bernoulli(density))
      bits.set(x);
  }
  return ElementSet::from_bits(G, std::move(bits));
}

ElementSet Sampler::normal_subset(GroupTable const &G, double density)
{
  ElementSet::Bits bits(G.order());
  for (auto const &K : G.classes()) {
    if (bernoulli(density)) {
      for (Element x : K.members)
        bits.set(x);
    }
  }
  return ElementSet::from_bits(G, std::move(bits));
}

} // namespace pmix
