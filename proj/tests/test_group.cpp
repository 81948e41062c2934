#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include <pmix/element_set.hpp>
#include <pmix/error.hpp>
#include <pmix/group.hpp>
#include <pmix/sampling.hpp>

#include "support.hpp"

using namespace pmix;

namespace
{

using Perm = std::vector<Permutation::Point>;

// conjugacy classes straight from the permutations, without the Cayley table
std::set<std::set<Permutation>> brute_force_classes(GroupTable const &G)
{
  std::vector<Permutation> elems;
  for (Element a = 0; a < G.order(); ++a)
    elems.push_back(G.element(a));
  std::set<std::set<Permutation>> out;
  std::set<Permutation> seen;
  for (auto const &x : elems) {
    if (seen.count(x))
      continue;
    std::set<Permutation> orbit;
    for (auto const &g : elems)
      orbit.insert(g.inverse() * x * g);
    seen.insert(orbit.begin(), orbit.end());
    out.insert(orbit);
  }
  return out;
}

std::size_t brute_force_centralizer(GroupTable const &G, Element x)
{
  auto const px = G.element(x);
  std::size_t n = 0;
  for (Element a = 0; a < G.order(); ++a) {
    auto const pa = G.element(a);
    n += pa * px == px * pa;
  }
  return n;
}

} // namespace

TEST_CASE("permutation basics")
{
  Permutation p(Perm{1, 2, 0});
  Permutation q(Perm{1, 0, 2});
  CHECK((p * q).images() == Perm{0, 2, 1}); // apply p, then q
  CHECK((p * p.inverse()).is_identity());
  CHECK(Permutation(3).is_identity());
  CHECK_FALSE(Permutation::is_bijection({0, 0}));
  CHECK_FALSE(Permutation::is_bijection({0, 2}));
  CHECK_THROWS_AS(Permutation(Perm{1, 1}), Error);
  try {
    Permutation bad(Perm{2, 0});
  } catch (Error const &e) {
    CHECK(e.code() == ErrorCode::InvalidPermutation);
  }
}

TEST_CASE("corpus orders, class counts and exponents")
{
  struct Row
  {
    char const *name;
    std::size_t order, classes, exponent;
    bool simple;
  };
  // orders and class counts cross-checked with an independent script
  Row const rows[] = {
    {"trivial", 1, 1, 1, false}, {"c2", 2, 2, 2, true},       {"s3", 6, 3, 6, false},
    {"s4", 24, 5, 12, false},    {"a4", 12, 4, 6, false},     {"a5", 60, 5, 30, true},
    {"psl2_7", 168, 6, 84, true}, {"sl2_8", 504, 9, 126, true},
  };
  for (auto const &r : rows) {
    CAPTURE(r.name);
    auto const &G = test::group(r.name);
    CHECK(G.order() == r.order);
    CHECK(G.num_classes() == r.classes);
    CHECK(G.exponent() == r.exponent);
    CHECK(is_simple(G) == r.simple);
  }
}

TEST_CASE("class sizes")
{
  auto sizes = [](GroupTable const &G) {
    std::vector<std::size_t> s;
    for (auto const &k : G.classes())
      s.push_back(k.size);
    return s;
  };
  CHECK(sizes(test::group("s3")) == std::vector<std::size_t>{1, 2, 3});
  CHECK(sizes(test::group("s4")) == std::vector<std::size_t>{1, 3, 6, 6, 8});
  CHECK(sizes(test::group("a4")) == std::vector<std::size_t>{1, 3, 4, 4});
  CHECK(sizes(test::group("a5")) == std::vector<std::size_t>{1, 12, 12, 15, 20});
  CHECK(sizes(test::group("psl2_7")) == std::vector<std::size_t>{1, 21, 24, 24, 42, 56});
  CHECK(sizes(test::group("sl2_8")) ==
        std::vector<std::size_t>{1, 56, 56, 56, 56, 63, 72, 72, 72});
}

TEST_CASE("group axioms hold exhaustively")
{
  for (auto name : {"s3", "s4", "a4", "a5", "psl2_7"}) {
    CAPTURE(name);
    auto const &G = test::group(name);
    auto const e = G.identity();
    CHECK(e == 0);
    CHECK(G.element(e).is_identity());
    bool ok = true;
    for (Element a = 0; a < G.order() && ok; ++a) {
      ok = G.mul(a, e) == a && G.mul(e, a) == a && G.mul(a, G.inv(a)) == e;
      for (Element b = 0; b < G.order() && ok; ++b) {
        ok = G.element(G.mul(a, b)) == G.element(a) * G.element(b);
        for (Element c = 0; c < G.order() && ok; ++c)
          ok = G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c));
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("multiplication matches permutations on the largest group")
{
  auto const &G = test::group("sl2_8");
  Sampler rng(3);
  for (int t = 0; t < 2000; ++t) {
    auto a = rng.element(G), b = rng.element(G), c = rng.element(G);
    REQUIRE(G.element(G.mul(a, b)) == G.element(a) * G.element(b));
    REQUIRE(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
  }
}

TEST_CASE("conjugacy classes agree with brute-force orbits")
{
  for (auto name : test::corpus) {
    CAPTURE(name);
    auto const &G = test::group(name);
    std::set<std::set<Permutation>> ours;
    std::size_t prev_size = 0;
    Element prev_min = 0;
    for (auto const &k : G.classes()) {
      std::set<Permutation> members;
      for (auto a : k.members) {
        members.insert(G.element(a));
        CHECK(G.class_of(a) == k.index);
      }
      ours.insert(members);
      CHECK(k.size == k.members.size());
      CHECK(G.order() % k.size == 0);
      CHECK(k.representative == *std::min_element(k.members.begin(), k.members.end()));
      CHECK(k.size * brute_force_centralizer(G, k.representative) == G.order());
      bool const ordered = k.index == 0 || prev_size < k.size ||
                           (prev_size == k.size && prev_min < k.representative);
      CHECK(ordered);
      prev_size = k.size;
      prev_min = k.representative;
    }
    CHECK(ours == brute_force_classes(G));
  }
}

TEST_CASE("inverse classes")
{
  auto const &G = test::group("a5");
  for (auto const &k : G.classes()) {
    auto const j = G.inverse_class(k.index);
    CHECK(G.class_of(G.inv(k.representative)) == j);
  }
}

TEST_CASE("class structure constants match pair counts")
{
  for (auto name : {"s3", "a4", "a5"}) {
    CAPTURE(name);
    auto const &G = test::group(name);
    auto const a = class_structure_constants(G);
    std::size_t const m = G.num_classes();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
          Element const z = G.conj_class(k).representative;
          std::uint64_t n = 0;
          for (auto x : G.conj_class(i).members)
            n += G.class_of(G.mul(G.inv(x), z)) == j;
          CHECK(a[(i * m + j) * m + k] == n);
        }
      }
    }
  }
}

TEST_CASE("build_group errors")
{
  auto s4 = parse_group_file(test::group_path("s4"));
  try {
    build_group(s4, 10);
    FAIL("expected OrderExceeded");
  } catch (Error const &e) {
    CHECK(e.code() == ErrorCode::OrderExceeded);
  }
  CHECK_THROWS_AS(build_group({}), Error);
  CHECK_THROWS_AS(build_group({Permutation(Perm{1, 0}), Permutation(Perm{1, 2, 0})}), Error);
}

TEST_CASE("element sets")
{
  auto const &G = test::group("s4");
  Sampler rng(11);
  for (int t = 0; t < 200; ++t) {
    auto X = rng.subset(G, rng.uniform());
    CHECK(X.size() == X.bits().count());

    auto Xi = inverse_set(X, G);
    CHECK(Xi.size() == X.size());
    X.for_each([&](Element x) { CHECK(Xi.contains(G.inv(x))); });

    auto N = normal_closure(X, G);
    CHECK(N.is_normal());
    CHECK(X.is_subset_of(N));
    bool normal = true;
    X.for_each([&](Element x) {
      for (Element g = 0; g < G.order(); ++g)
        normal = normal && X.contains(G.conj(x, g));
    });
    CHECK(X.is_normal() == normal);

    auto g = rng.element(G);
    auto gX = left_translate(g, X, G);
    CHECK(gX.size() == X.size());
    X.for_each([&](Element x) { CHECK(gX.contains(G.mul(g, x))); });

    auto Y = rng.normal_subset(G, 0.5);
    CHECK(Y.is_normal());
    std::size_t total = 0;
    for (auto i : contained_classes(Y, G))
      total += G.conj_class(i).size;
    CHECK(total == Y.size());
    std::size_t common = 0;
    X.for_each([&](Element x) { common += Y.contains(x); });
    CHECK(set_union(X, Y, G).size() == X.size() + Y.size() - common);
    CHECK(set_difference(Y, X, G).size() == Y.size() - common);
  }
  CHECK(ElementSet::all(G).is_normal());
  CHECK(ElementSet::empty(G).is_normal());
  CHECK(ElementSet::of_class(G, 3).is_normal());
  CHECK(ElementSet::of_class(G, 3).size() == G.conj_class(3).size);
}

TEST_CASE("power and element orders")
{
  auto const &G = test::group("psl2_7");
  std::multiset<std::size_t> orders;
  for (Element a = 0; a < G.order(); ++a) {
    auto const o = G.element_order(a);
    orders.insert(o);
    CHECK(G.power(a, o) == G.identity());
  }
  // PSL(2,7): 1 + 21 involutions + 56 of order 3 + 42 of order 4 + 48 of order 7
  CHECK(orders.count(1) == 1);
  CHECK(orders.count(2) == 21);
  CHECK(orders.count(3) == 56);
  CHECK(orders.count(4) == 42);
  CHECK(orders.count(7) == 48);
}
