#ifndef PMIX_SAMPLING_HPP
#define PMIX_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "element_set.hpp"

namespace pmix
{

/// Seeded source for every random choice in the toolkit. std::mt19937_64 is
/// fully specified by the standard; the mappings below avoid the library
/// distributions, whose output is implementation-defined.
class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : _engine(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return double(_engine() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n), n > 0.
  std::size_t below(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  /// Each element independently with probability `density`.
  ElementSet subset(GroupTable const &G, double density);

  /// Each conjugacy class independently with probability `density`.
  ElementSet normal_subset(GroupTable const &G, double density);

  Element element(GroupTable const &G) { return static_cast<Element>(below(G.order())); }

private:
  std::mt19937_64 _engine;
};

} // namespace pmix

#endif // PMIX_SAMPLING_HPP
