#ifndef PMIX_RATIONAL_HPP
#define PMIX_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace pmix
{

using Rational = boost::rational<std::int64_t>;

/// "p/q" with q > 0; integers still carry "/1".
std::string to_string(Rational const &r);

/// Inverse of to_string. Throws Error(SyntaxError) on anything else.
Rational parse_rational(std::string const &text);

double to_double(Rational const &r);

/// Exact test of `deviation < eta * base` for nonnegative integers, with eta
/// taken as the exact binary value of the double.
bool below_scaled(std::uint64_t deviation, std::uint64_t base, double eta);

/// Exact test of (1 - eta) * target < value < (1 + eta) * target, where
/// value = num / den and target = tnum / tden are nonnegative fractions.
bool strictly_inside_window(std::uint64_t num, std::uint64_t den,
                            std::uint64_t tnum, std::uint64_t tden, double eta);

/// Exact one-sided tests: num/den > (1 - eta) tnum/tden and
/// num/den < (1 + eta) tnum/tden respectively, for eta >= 0.
bool above_lower(std::uint64_t num, std::uint64_t den,
                 std::uint64_t tnum, std::uint64_t tden, double eta);
bool below_upper(std::uint64_t num, std::uint64_t den,
                 std::uint64_t tnum, std::uint64_t tden, double eta);

} // namespace pmix

#endif // PMIX_RATIONAL_HPP
