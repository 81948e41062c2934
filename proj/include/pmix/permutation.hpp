#ifndef PMIX_PERMUTATION_HPP
#define PMIX_PERMUTATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pmix
{

/// A bijection on {0, ..., degree-1}, stored as its image list.
///
/// Products act on the right: (p * q)[x] = q[p[x]], i.e. p is applied first.
class Permutation
{
public:
  using Point = std::uint32_t;

  explicit Permutation(std::size_t degree = 0);

  /// Throws Error(InvalidPermutation) unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static bool is_bijection(std::vector<Point> const &images);

  std::size_t degree() const { return _images.size(); }
  Point operator[](std::size_t x) const { return _images[x]; }
  std::vector<Point> const &images() const { return _images; }

  bool is_identity() const;
  Permutation inverse() const;

  friend Permutation operator*(Permutation const &lhs, Permutation const &rhs);
  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  std::vector<Point> _images;
};

} // namespace pmix

template<>
struct std::hash<pmix::Permutation>
{
  std::size_t operator()(pmix::Permutation const &perm) const noexcept;
};

#endif // PMIX_PERMUTATION_HPP
