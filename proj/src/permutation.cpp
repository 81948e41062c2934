#include "pmix/permutation.hpp"

#include <numeric>
#include <string>

#include "pmix/error.hpp"

namespace pmix
{

Permutation::Permutation(std::size_t degree)
: _images(degree)
{
  std::iota(_images.begin(), _images.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images)
: _images(std::move(images))
{
  if (!is_bijection(_images))
    throw Error(ErrorCode::InvalidPermutation,
                "image list of length " + std::to_string(_images.size()) +
                " is not a bijection");
}

bool Permutation::is_bijection(std::vector<Point> const &images)
{
  std::vector<bool> hit(images.size(), false);
  for (auto x : images) {
    if (x >= images.size() || hit[x])
      return false;
    hit[x] = true;
  }
  return true;
}

bool Permutation::is_identity() const
{
  for (std::size_t x = 0; x < _images.size(); ++x) {
    if (_images[x] != x)
      return false;
  }
  return true;
}

Permutation Permutation::inverse() const
{
  Permutation result(degree());
  for (std::size_t x = 0; x < _images.size(); ++x)
    result._images[_images[x]] = static_cast<Point>(x);
  return result;
}

Permutation operator*(Permutation const &lhs, Permutation const &rhs)
{
  Permutation result(lhs.degree());
  for (std::size_t x = 0; x < lhs.degree(); ++x)
    result._images[x] = rhs._images[lhs._images[x]];
  return result;
}

} // namespace pmix

std::size_t std::hash<pmix::Permutation>::operator()(pmix::Permutation const &perm) const noexcept
{
  // FNV-1a over the image list
  std::size_t h = 1469598103934665603ull;
  for (auto x : perm.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}
