#include "pmix/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "pmix/error.hpp"

namespace pmix
{

std::string to_string(Rational const &r)
{
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string const &text)
{
  auto slash = text.find('/');
  auto bad = [&] {
    return Error(ErrorCode::SyntaxError, "malformed rational \"" + text + "\"");
  };
  if (slash == std::string::npos)
    throw bad();

  std::int64_t p = 0, q = 0;
  auto const *first = text.data();
  auto const *mid = first + slash;
  auto const *last = first + text.size();
  auto r1 = std::from_chars(first, mid, p);
  auto r2 = std::from_chars(mid + 1, last, q);
  if (r1.ec != std::errc{} || r1.ptr != mid || r2.ec != std::errc{} || r2.ptr != last || q <= 0)
    throw bad();
  return Rational(p, q);
}

double to_double(Rational const &r)
{
  return boost::rational_cast<double>(r);
}

namespace
{

using u128 = unsigned __int128;

// dev < eta * base, exactly
bool scaled_less(u128 dev, u128 base, double eta)
{
  if (!(eta > 0.0) || base == 0)
    return false;
  if (std::isinf(eta))
    return true;

  // eta = mantissa * 2^exp exactly, mantissa < 2^53
  int exp = 0;
  double frac = std::frexp(eta, &exp);
  auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  exp -= 53;

  constexpr u128 word = std::numeric_limits<std::uint64_t>::max();
  if (dev <= word && base <= word && exp >= -63 && exp <= 10) {
    u128 lhs = dev, rhs = u128(mantissa) * base;
    if (exp >= 0)
      rhs <<= exp;
    else
      lhs <<= -exp;
    return lhs < rhs;
  }

  using boost::multiprecision::cpp_int;
  auto widen = [](u128 v) {
    cpp_int r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(v);
    return r;
  };
  cpp_int lhs = widen(dev);
  cpp_int rhs = cpp_int(mantissa) * widen(base);
  if (exp >= 0)
    rhs <<= exp;
  else
    lhs <<= -exp;
  return lhs < rhs;
}

} // anonymous namespace

bool below_scaled(std::uint64_t deviation, std::uint64_t base, double eta)
{
  return scaled_less(deviation, base, eta);
}

bool strictly_inside_window(std::uint64_t num, std::uint64_t den,
                            std::uint64_t tnum, std::uint64_t tden, double eta)
{
  // |num * tden - tnum * den| < eta * tnum * den
  u128 lhs = u128(num) * tden;
  u128 base = u128(tnum) * den;
  u128 dev = lhs > base ? lhs - base : base - lhs;
  return scaled_less(dev, base, eta);
}

bool above_lower(std::uint64_t num, std::uint64_t den,
                 std::uint64_t tnum, std::uint64_t tden, double eta)
{
  u128 lhs = u128(num) * tden;
  u128 base = u128(tnum) * den;
  if (lhs > base)
    return true;
  return scaled_less(base - lhs, base, eta);
}

bool below_upper(std::uint64_t num, std::uint64_t den,
                 std::uint64_t tnum, std::uint64_t tden, double eta)
{
  u128 lhs = u128(num) * tden;
  u128 base = u128(tnum) * den;
  if (lhs < base)
    return true;
  return scaled_less(lhs - base, base, eta);
}

} // namespace pmix
