#include "pmix/mixing.hpp"

#include <algorithm>
#include <cmath>

#include "pmix/error.hpp"

namespace pmix
{

std::uint64_t count_pairs(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                          GroupTable const &G)
{
  if (C.is_empty())
    return 0;
  auto const b_elements = B.elements();
  std::uint64_t n = 0;
  A.for_each([&](Element a) {
    for (Element b : b_elements)
      n += C.contains(G.mul(a, b));
  });
  return n;
}

Rational prob(ElementSet const &A, ElementSet const &B, ElementSet const &C, GroupTable const &G)
{
  if (A.is_empty() || B.is_empty())
    throw Error(ErrorCode::EmptySet, "Prob(A,B,C) is undefined for empty A or B");
  return Rational(std::int64_t(count_pairs(A, B, C, G)), std::int64_t(A.size() * B.size()));
}

std::uint64_t count_triples_g(ElementSet const &X, ElementSet const &Y, ElementSet const &Z,
                              Element g, GroupTable const &G)
{
  if (Z.is_empty())
    return 0;
  auto const y_elements = Y.elements();
  std::uint64_t n = 0;
  X.for_each([&](Element x) {
    for (Element y : y_elements) {
      // z is forced: z = (xy)^-1 g
      n += Z.contains(G.mul(G.inv(G.mul(x, y)), g));
    }
  });
  return n;
}

std::vector<Triple> triples_g(ElementSet const &X, ElementSet const &Y, ElementSet const &Z,
                              Element g, GroupTable const &G)
{
  std::vector<Triple> out;
  auto const y_elements = Y.elements();
  X.for_each([&](Element x) {
    for (Element y : y_elements) {
      Element z = G.mul(G.inv(G.mul(x, y)), g);
      if (Z.contains(z))
        out.push_back({x, y, z});
    }
  });
  return out;
}

ClassProductTable::ClassProductTable(GroupTable const &G)
: _m(G.num_classes()), _n(class_structure_constants(G))
{
  for (std::size_t i = 0; i < _m; ++i) {
    for (std::size_t j = 0; j < _m; ++j) {
      for (std::size_t l = 0; l < _m; ++l)
        _n[(i * _m + j) * _m + l] *= G.conj_class(l).size;
    }
  }
}

FrobeniusEvaluation frobenius_evaluate(std::size_t i, std::size_t j, std::size_t l,
                                       CharTable const &T)
{
  std::size_t const m = T.num_classes();
  if (i >= m || j >= m || l >= m)
    throw Error(ErrorCode::InvalidArgument, "class index out of range");

  Complex sum = 0;
  for (std::size_t chi = 0; chi < m; ++chi) {
    auto const &row = T.values[chi];
    sum += row[i] * row[j] * std::conj(row[l]) / double(T.degrees[chi]);
  }
  double const scale =
    double(T.class_sizes[i]) * double(T.class_sizes[j]) * double(T.class_sizes[l]) / double(T.order);

  FrobeniusEvaluation ev;
  ev.raw = scale * sum.real();
  double const imag = std::abs(scale * sum.imag());
  double const nearest = std::round(ev.raw);
  ev.drift = std::max(std::abs(ev.raw - nearest), imag);
  if (ev.drift > 1e-6 * (1.0 + std::abs(ev.raw)) || nearest < 0)
    throw Error(ErrorCode::RoundingDrift,
                "character sum " + std::to_string(ev.raw) + " is not near an integer");
  ev.count = static_cast<std::uint64_t>(nearest);
  return ev;
}

std::uint64_t frobenius_count(std::size_t i, std::size_t j, std::size_t l,
                              GroupTable const &G, CharTable const &T)
{
  validate_against_group(T, G);
  return frobenius_evaluate(i, j, l, T).count;
}

FrobeniusErrorBound frobenius_error_bound(std::size_t i, std::size_t j, std::size_t l,
                                          CharTable const &T, double exponent)
{
  if (!(exponent > 0))
    throw Error(ErrorCode::InvalidArgument, "exponent must be positive");

  FrobeniusErrorBound r;
  r.count = frobenius_evaluate(i, j, l, T).count;
  r.expected = Rational(std::int64_t(T.class_sizes[i] * T.class_sizes[j] * T.class_sizes[l]),
                        std::int64_t(T.order));
  Rational diff = Rational(std::int64_t(r.count)) - r.expected;
  r.deviation = diff < 0 ? -diff : diff;
  r.zeta = witten_zeta(T, exponent);
  r.bound = to_double(r.expected) * (r.zeta - 1.0);
  r.within = to_double(r.deviation) <= r.bound;
  return r;
}

SetSummary summarize(ElementSet const &X)
{
  return {X.size(), X.is_normal()};
}

double gowers_eta(std::size_t order, std::uint64_t k, std::size_t a, std::size_t b, std::size_t c)
{
  long double n = order;
  long double denom = (long double)k * a * b * c;
  return static_cast<double>(std::sqrt(n * n * n / denom));
}

namespace
{

MixReport prepare(char const *kind, ElementSet const &A, ElementSet const &B,
                  ElementSet const &C, GroupTable const &G, CharTable const &T,
                  std::optional<double> eta)
{
  if (A.is_empty() || B.is_empty() || C.is_empty())
    throw Error(ErrorCode::EmptySet, std::string(kind) + " check needs nonempty A, B, C");
  validate_against_group(T, G);

  MixReport r;
  r.kind = kind;
  r.group_order = G.order();
  r.min_degree = min_nontrivial_degree(T);
  r.A = summarize(A);
  r.B = summarize(B);
  r.C = summarize(C);
  r.target = Rational(std::int64_t(C.size()), std::int64_t(G.order()));
  r.eta_implied = gowers_eta(G.order(), r.min_degree, A.size(), B.size(), C.size());
  r.eta = eta.value_or(r.eta_implied * (1.0 + 1e-12));
  if (!(r.eta > 0))
    throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  return r;
}

} // anonymous namespace

MixReport gowers_check(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                       GroupTable const &G, CharTable const &T, std::optional<double> eta)
{
  MixReport r = prepare("gowers", A, B, C, G, T, eta);
  std::uint64_t const ab = A.size() * B.size();
  r.count = count_pairs(A, B, C, G);
  r.prob = Rational(std::int64_t(r.count), std::int64_t(ab));
  double const t = to_double(r.target);
  r.lower = (1.0 - r.eta) * t;
  r.upper = (1.0 + r.eta) * t;
  r.pass = strictly_inside_window(r.count, ab, C.size(), G.order(), r.eta);
  return r;
}

MixReport gowers_trick_check(ElementSet const &A, ElementSet const &B, ElementSet const &C,
                             Element g, GroupTable const &G, CharTable const &T,
                             std::optional<double> eta)
{
  if (g >= G.order())
    throw Error(ErrorCode::InvalidArgument, "element index out of range");
  MixReport r = prepare("trick", A, B, C, G, T, eta);
  r.g = g;
  std::uint64_t const ab = A.size() * B.size();
  std::uint64_t const abc = ab * C.size();
  r.count = count_triples_g(A, B, C, g, G);
  r.prob = Rational(std::int64_t(r.count), std::int64_t(ab));
  double const centre = double(abc) / double(G.order());
  r.lower = (1.0 - r.eta) * centre;
  r.upper = (1.0 + r.eta) * centre;
  r.pass = strictly_inside_window(r.count, 1, abc, G.order(), r.eta);
  return r;
}

TripleIdentityReport verify_triple_identities(ElementSet const &A, ElementSet const &B,
                                              ElementSet const &C, GroupTable const &G)
{
  auto const Ainv = inverse_set(A, G);
  auto const Binv = inverse_set(B, G);
  auto const Cinv = inverse_set(C, G);

  TripleIdentityReport r;
  r.n_abc = count_pairs(A, B, C, G);
  r.n_bca = count_pairs(B, Cinv, Ainv, G);
  r.n_cab = count_pairs(Cinv, A, Binv, G);
  r.counts_equal = r.n_abc == r.n_bca && r.n_abc == r.n_cab;

  if (!A.is_empty() && !B.is_empty() && !C.is_empty()) {
    auto const a = std::int64_t(A.size()), b = std::int64_t(B.size()), c = std::int64_t(C.size());
    r.prob_abc = prob(A, B, C, G);
    r.via_bca = Rational(c, a) * prob(B, Cinv, Ainv, G);
    r.via_cab = Rational(c, b) * prob(Cinv, A, Binv, G);
    r.probs_equal = *r.prob_abc == *r.via_bca && *r.prob_abc == *r.via_cab;
  }
  return r;
}

namespace
{

std::uint64_t encode(Triple const &t, std::uint64_t n)
{
  return (std::uint64_t(t[0]) * n + t[1]) * n + t[2];
}

// Applies `map` to every source triple and checks that it lands in `target`
// injectively and covers it.
template<typename Map>
bool is_bijection_onto(std::vector<Triple> const &source, std::vector<Triple> const &target,
                       ElementSet const &P, ElementSet const &Q, ElementSet const &R,
                       Element g, GroupTable const &G, Map map)
{
  std::uint64_t const n = G.order();
  std::vector<std::uint64_t> images;
  images.reserve(source.size());
  for (auto const &t : source) {
    Triple u = map(t);
    bool member = P.contains(u[0]) && Q.contains(u[1]) && R.contains(u[2]) &&
                  G.mul(G.mul(u[0], u[1]), u[2]) == g;
    if (!member)
      return false;
    images.push_back(encode(u, n));
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end())
    return false;
  return images.size() == target.size();
}

} // anonymous namespace

CyclicIdentityReport verify_cyclic_identities(ElementSet const &X, ElementSet const &Y,
                                              ElementSet const &Z, Element g,
                                              GroupTable const &G)
{
  if (!Z.is_normal())
    throw Error(ErrorCode::NotNormal, "cyclic identities need Z normal");
  if (g >= G.order())
    throw Error(ErrorCode::InvalidArgument, "element index out of range");

  auto const xyz = triples_g(X, Y, Z, g, G);
  auto const xzy = triples_g(X, Z, Y, g, G);

  CyclicIdentityReport r;
  r.n_xyz = xyz.size();
  r.n_xzy = xzy.size();
  r.swap_equal = r.n_xyz == r.n_xzy;
  r.swap_bijection = is_bijection_onto(xyz, xzy, X, Z, Y, g, G, [&](Triple const &t) {
    auto [x, y, z] = t;
    return Triple{x, G.mul(G.mul(y, z), G.inv(y)), y};
  });

  if (Y.is_normal()) {
    auto const yzx = triples_g(Y, Z, X, g, G);
    r.n_yzx = yzx.size();
    r.rotate_equal = r.n_xyz == *r.n_yzx;
    r.rotate_bijection = is_bijection_onto(xyz, yzx, Y, Z, X, g, G, [&](Triple const &t) {
      auto [x, y, z] = t;
      Element xi = G.inv(x);
      return Triple{G.mul(G.mul(x, y), xi), G.mul(G.mul(x, z), xi), x};
    });
  }
  return r;
}

} // namespace pmix
