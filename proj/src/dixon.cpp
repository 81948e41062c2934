#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "pmix/chartable.hpp"
#include "pmix/error.hpp"

namespace pmix
{

namespace
{

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

class Field
{
public:
  explicit Field(u64 p) : _p(p) {}

  u64 p() const { return _p; }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= _p ? s - _p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + _p - b; }
  u64 mul(u64 a, u64 b) const { return a * b % _p; }
  u64 neg(u64 a) const { return a == 0 ? 0 : _p - a; }
  u64 reduce(u64 a) const { return a % _p; }

  u64 pow(u64 a, u64 k) const
  {
    u64 r = 1;
    a %= _p;
    while (k > 0) {
      if (k & 1u)
        r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  u64 inv(u64 a) const { return pow(a, _p - 2); }

private:
  u64 _p;
};

bool is_prime(u64 n)
{
  if (n < 2)
    return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0)
      return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n)
{
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

u64 primitive_root(Field const &F)
{
  auto factors = prime_factors(F.p() - 1);
  for (u64 z = 2; z < F.p(); ++z) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](u64 q) { return F.pow(z, (F.p() - 1) / q) != 1; });
    if (ok)
      return z;
  }
  return 1; // p = 2
}

// Row-reduces `rows` in place; returns pivot columns. Zero rows are dropped.
std::vector<std::size_t> row_reduce(Mat &rows, Field const &F)
{
  std::vector<std::size_t> pivots;
  if (rows.empty())
    return pivots;

  std::size_t const cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0)
      ++r;
    if (r == rows.size())
      continue;
    std::swap(rows[r], rows[rank]);

    u64 s = F.inv(rows[rank][c]);
    for (auto &x : rows[rank])
      x = F.mul(x, s);

    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0)
        continue;
      u64 f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[rank][k]));
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

// Null space of a square matrix, as a list of vectors.
Mat kernel(Mat A, Field const &F)
{
  std::size_t const n = A.size();
  auto pivots = row_reduce(A, F);

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots)
    is_pivot[c] = true;

  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = F.neg(A[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial, coefficients from the constant term upwards,
// via reduction to upper Hessenberg form.
Vec char_poly(Mat H, Field const &F)
{
  std::size_t const n = H.size();

  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && H[i][m - 1] == 0)
      ++i;
    if (i == n)
      continue;
    if (i != m) {
      std::swap(H[i], H[m]);
      for (auto &row : H)
        std::swap(row[i], row[m]);
    }
    u64 pinv = F.inv(H[m][m - 1]);
    for (i = m + 1; i < n; ++i) {
      u64 u = F.mul(H[i][m - 1], pinv);
      if (u == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        H[i][j] = F.sub(H[i][j], F.mul(u, H[m][j]));
      for (std::size_t j = 0; j < n; ++j)
        H[j][m] = F.add(H[j][m], F.mul(u, H[j][i]));
    }
  }

  // polys[k] is the characteristic polynomial of the leading k x k block
  std::vector<Vec> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    Vec pk(k + 1, 0);
    // (x - h_kk) p_{k-1}
    for (std::size_t d = 0; d < polys[k - 1].size(); ++d) {
      pk[d + 1] = F.add(pk[d + 1], polys[k - 1][d]);
      pk[d] = F.sub(pk[d], F.mul(H[k - 1][k - 1], polys[k - 1][d]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = F.mul(t, H[k - i][k - i - 1]);
      u64 coeff = F.mul(t, H[k - i - 1][k - 1]);
      for (std::size_t d = 0; d < polys[k - i - 1].size(); ++d)
        pk[d] = F.sub(pk[d], F.mul(coeff, polys[k - i - 1][d]));
    }
    polys[k] = std::move(pk);
  }
  return polys[n];
}

struct Subspace
{
  Mat basis; // reduced row echelon form
  std::vector<std::size_t> pivots;
};

Subspace make_subspace(Mat rows, Field const &F)
{
  Subspace S;
  S.pivots = row_reduce(rows, F);
  S.basis = std::move(rows);
  return S;
}

// Splits S into the eigenspaces of `M` restricted to it.
std::vector<Subspace> split(Subspace const &S, Mat const &M, Field const &F)
{
  std::size_t const d = S.basis.size();
  std::size_t const m = M.size();

  // restricted[s][t]: coordinate s of M applied to basis vector t; RREF
  // coordinates are read off at the pivot columns.
  Mat restricted(d, Vec(d, 0));
  for (std::size_t t = 0; t < d; ++t) {
    for (std::size_t s = 0; s < d; ++s) {
      std::size_t row = S.pivots[s];
      u64 acc = 0;
      for (std::size_t k = 0; k < m; ++k)
        acc = F.add(acc, F.mul(M[row][k], S.basis[t][k]));
      restricted[s][t] = acc;
    }
  }

  Vec poly = char_poly(restricted, F);
  std::vector<Subspace> parts;
  std::size_t covered = 0;
  for (u64 lambda = 0; lambda < F.p() && covered < d; ++lambda) {
    u64 value = 0;
    for (std::size_t i = poly.size(); i-- > 0;)
      value = F.add(F.mul(value, lambda), poly[i]);
    if (value != 0)
      continue;

    Mat shifted = restricted;
    for (std::size_t s = 0; s < d; ++s)
      shifted[s][s] = F.sub(shifted[s][s], lambda);

    Mat vectors;
    for (auto const &coords : kernel(std::move(shifted), F)) {
      Vec v(m, 0);
      for (std::size_t t = 0; t < d; ++t) {
        if (coords[t] == 0)
          continue;
        for (std::size_t k = 0; k < m; ++k)
          v[k] = F.add(v[k], F.mul(coords[t], S.basis[t][k]));
      }
      vectors.push_back(std::move(v));
    }
    covered += vectors.size();
    parts.push_back(make_subspace(std::move(vectors), F));
  }

  if (covered != d)
    throw Error(ErrorCode::DegenerateEigenspace,
                "class matrix is not diagonalizable on a common eigenspace");
  return parts;
}

} // anonymous namespace

std::uint64_t dixon_prime(std::size_t order, std::size_t exponent, std::uint64_t limit)
{
  double const floor = 2.0 * std::sqrt(double(order));
  for (u64 p = u64(exponent) + 1; p < limit; p += exponent) {
    if (double(p) > floor && is_prime(p))
      return p;
  }
  throw Error(ErrorCode::PrimeSearchFailed,
              "no prime p = 1 (mod " + std::to_string(exponent) + ") with p > 2 sqrt(" +
              std::to_string(order) + ") below " + std::to_string(limit));
}

CharTable dixon_char_table(GroupTable const &G, DixonOptions const &options)
{
  std::size_t const m = G.num_classes();
  std::size_t const n = G.order();
  Field const F(dixon_prime(n, G.exponent(), options.prime_limit));

  auto const a = class_structure_constants(G);

  // Central characters w_k = |K_k| chi(g_k) / chi(1) are common right
  // eigenvectors: sum_k a[i][j][k] w_k = w_i w_j.
  std::vector<Subspace> spaces;
  {
    Mat identity(m, Vec(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      identity[i][i] = 1;
    spaces.push_back(make_subspace(std::move(identity), F));
  }

  for (std::size_t i = 1; i < m; ++i) {
    if (std::all_of(spaces.begin(), spaces.end(),
                    [](Subspace const &S) { return S.basis.size() == 1; }))
      break;

    Mat M(m, Vec(m, 0));
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k)
        M[j][k] = F.reduce(a[(i * m + j) * m + k]);
    }

    std::vector<Subspace> next;
    for (auto const &S : spaces) {
      if (S.basis.size() == 1) {
        next.push_back(S);
        continue;
      }
      for (auto &part : split(S, M, F))
        next.push_back(std::move(part));
    }
    spaces = std::move(next);
  }

  if (spaces.size() != m)
    throw Error(ErrorCode::DegenerateEigenspace,
                "common eigenspaces are not one-dimensional after all class matrices");

  // power maps: class of g_k^l
  std::vector<std::size_t> orders(m);
  std::vector<std::vector<std::size_t>> power_class(m);
  for (std::size_t k = 0; k < m; ++k) {
    Element g = G.conj_class(k).representative;
    orders[k] = G.element_order(g);
    Element x = G.identity();
    for (std::size_t l = 0; l < orders[k]; ++l) {
      power_class[k].push_back(G.class_of(x));
      x = G.mul(x, g);
    }
  }

  u64 const z = primitive_root(F);
  u64 const n_mod = F.reduce(n);

  CharTable T;
  T.order = n;
  for (auto const &K : G.classes()) {
    T.class_sizes.push_back(K.size);
    T.class_reps.push_back(K.representative);
  }

  struct Row
  {
    u64 degree;
    std::vector<Complex> values;
  };
  std::vector<Row> rows;

  for (auto const &S : spaces) {
    Vec w = S.basis.front();
    if (w[0] == 0)
      throw Error(ErrorCode::DegenerateEigenspace, "eigenvector vanishes at the identity class");
    u64 s = F.inv(w[0]);
    for (auto &x : w)
      x = F.mul(x, s);

    // chi(1)^2 = |G| / sum_k w_k w_{k*} / |K_k|
    u64 sum = 0;
    for (std::size_t k = 0; k < m; ++k) {
      u64 term = F.mul(w[k], w[G.inverse_class(k)]);
      sum = F.add(sum, F.mul(term, F.inv(F.reduce(T.class_sizes[k]))));
    }
    if (sum == 0)
      throw Error(ErrorCode::DegenerateEigenspace, "degenerate norm in degree recovery");
    u64 target = F.mul(n_mod, F.inv(sum));

    u64 degree = 0;
    for (u64 d = 1; d * d <= n; ++d) {
      if (F.mul(d, d) == target) {
        degree = d;
        break;
      }
    }
    if (degree == 0)
      throw Error(ErrorCode::DegenerateEigenspace, "no integral degree matches the eigenvector");

    // chi(g_k) mod p
    Vec theta(m);
    for (std::size_t k = 0; k < m; ++k)
      theta[k] = F.mul(F.mul(w[k], degree), F.inv(F.reduce(T.class_sizes[k])));

    Row row{degree, std::vector<Complex>(m)};
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t const o = orders[k];
      u64 const root = F.pow(z, (F.p() - 1) / o);
      u64 const o_inv = F.inv(F.reduce(o));

      // multiplicity of exp(2 pi i r / o) as an eigenvalue of g_k
      std::vector<u64> mult(o);
      u64 total = 0;
      for (std::size_t r = 0; r < o; ++r) {
        u64 acc = 0;
        for (std::size_t l = 0; l < o; ++l) {
          u64 e = (o - (r * l) % o) % o;
          acc = F.add(acc, F.mul(theta[power_class[k][l]], F.pow(root, e)));
        }
        mult[r] = F.mul(acc, o_inv);
        if (mult[r] > degree)
          throw Error(ErrorCode::DegenerateEigenspace, "eigenvalue multiplicity out of range");
        total += mult[r];
      }
      if (total != degree)
        throw Error(ErrorCode::DegenerateEigenspace, "eigenvalue multiplicities do not sum to the degree");

      bool real = true;
      for (std::size_t r = 1; r < o; ++r)
        real = real && mult[r] == mult[o - r];

      double re = 0, im = 0;
      for (std::size_t r = 0; r < o; ++r) {
        if (mult[r] == 0)
          continue;
        double angle = 2.0 * std::numbers::pi * double(r) / double(o);
        re += double(mult[r]) * std::cos(angle);
        im += double(mult[r]) * std::sin(angle);
      }
      row.values[k] = Complex(re, real ? 0.0 : im);
    }
    rows.push_back(std::move(row));
  }

  auto key = [](Row const &r) {
    std::vector<std::int64_t> re, im;
    for (auto const &v : r.values) {
      re.push_back(-std::llround(v.real() * 1e6));
      im.push_back(-std::llround(v.imag() * 1e6));
    }
    return std::tuple(r.degree, re, im);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](Row const &lhs, Row const &rhs) { return key(lhs) < key(rhs); });

  for (auto &r : rows) {
    T.degrees.push_back(r.degree);
    T.values.push_back(std::move(r.values));
  }
  T.trivial_index = 0;
  return T;
}

} // namespace pmix
