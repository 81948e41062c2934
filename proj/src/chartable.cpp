#include "pmix/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmix/error.hpp"

namespace pmix
{

double default_tolerance(std::size_t order)
{
  return order <= 1000 ? 1e-9 : 1e-7;
}

TableResiduals table_residuals(CharTable const &T)
{
  TableResiduals res;
  std::size_t const m = T.num_classes();
  double const n = double(T.order);

  for (auto d : T.degrees)
    res.degree_square_sum += std::int64_t(d) * std::int64_t(d);

  for (std::size_t i = 0; i < m; ++i)
    res.trivial_row = std::max(res.trivial_row, std::abs(T.values[T.trivial_index][i] - 1.0));

  // identity class is the one of size 1 holding element 0
  std::size_t e_class = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (T.class_reps[i] == 0)
      e_class = i;
  }
  for (std::size_t chi = 0; chi < m; ++chi)
    res.degree_column = std::max(
      res.degree_column, std::abs(T.values[chi][e_class] - double(T.degrees[chi])));

  for (std::size_t chi = 0; chi < m; ++chi) {
    for (std::size_t psi = chi; psi < m; ++psi) {
      Complex acc = 0;
      for (std::size_t i = 0; i < m; ++i)
        acc += double(T.class_sizes[i]) * T.values[chi][i] * std::conj(T.values[psi][i]);
      acc /= n;
      res.row_orthogonality =
        std::max(res.row_orthogonality, std::abs(acc - (chi == psi ? 1.0 : 0.0)));
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      Complex acc = 0;
      for (std::size_t chi = 0; chi < m; ++chi)
        acc += T.values[chi][i] * std::conj(T.values[chi][j]);
      double expected = i == j ? n / double(T.class_sizes[i]) : 0.0;
      res.column_orthogonality = std::max(res.column_orthogonality, std::abs(acc - expected));
    }
  }
  return res;
}

void validate_char_table(CharTable const &T, double tolerance)
{
  auto fail = [](std::string const &invariant, double residual) {
    std::ostringstream os;
    os.precision(17);
    os << invariant << " violated (residual " << residual << ")";
    return Error(ErrorCode::ValidationFailed, os.str());
  };

  std::size_t const m = T.num_classes();
  if (m == 0 || T.class_reps.size() != m || T.degrees.size() != m || T.values.size() != m)
    throw Error(ErrorCode::ValidationFailed, "shape: table dimensions disagree");
  for (auto const &row : T.values) {
    if (row.size() != m)
      throw Error(ErrorCode::ValidationFailed, "shape: character row length differs from class count");
  }
  if (T.trivial_index >= m)
    throw Error(ErrorCode::ValidationFailed, "shape: trivial_index out of range");

  std::size_t size_sum = 0;
  for (auto s : T.class_sizes) {
    if (s == 0 || T.order % s != 0)
      throw Error(ErrorCode::ValidationFailed, "class sizes: a size does not divide the order");
    size_sum += s;
  }
  if (size_sum != T.order)
    throw fail("class equation", double(size_sum) - double(T.order));

  auto r = table_residuals(T);
  if (r.degree_square_sum != std::int64_t(T.order))
    throw fail("degree square sum", double(r.degree_square_sum - std::int64_t(T.order)));
  if (r.trivial_row > tolerance)
    throw fail("trivial character", r.trivial_row);
  if (r.degree_column > tolerance)
    throw fail("degree column", r.degree_column);
  if (r.row_orthogonality > tolerance)
    throw fail("row orthogonality", r.row_orthogonality);
  if (r.column_orthogonality > tolerance)
    throw fail("column orthogonality", r.column_orthogonality);
}

void validate_against_group(CharTable const &T, GroupTable const &G)
{
  if (T.order != G.order())
    throw Error(ErrorCode::ValidationFailed, "table order " + std::to_string(T.order) +
                                               " differs from group order " + std::to_string(G.order()));
  if (T.num_classes() != G.num_classes())
    throw Error(ErrorCode::ValidationFailed, "table has " + std::to_string(T.num_classes()) +
                                               " classes, group has " + std::to_string(G.num_classes()));
  for (std::size_t i = 0; i < T.num_classes(); ++i) {
    if (T.class_reps[i] >= G.order() || G.class_of(T.class_reps[i]) != i)
      throw Error(ErrorCode::ValidationFailed,
                  "class representative " + std::to_string(i) + " is not in group class " + std::to_string(i));
    if (T.class_sizes[i] != G.conj_class(i).size)
      throw Error(ErrorCode::ValidationFailed, "class size " + std::to_string(i) + " disagrees with group");
  }
}

std::uint64_t min_nontrivial_degree(CharTable const &T)
{
  if (T.num_classes() < 2)
    throw Error(ErrorCode::TrivialGroup, "trivial group has no nontrivial character");
  std::uint64_t k = UINT64_MAX;
  for (std::size_t chi = 0; chi < T.num_classes(); ++chi) {
    if (chi != T.trivial_index)
      k = std::min(k, T.degrees[chi]);
  }
  return k;
}

double witten_zeta(CharTable const &T, double x)
{
  if (!(x > 0))
    throw Error(ErrorCode::InvalidArgument, "witten_zeta requires x > 0");
  double sum = 0;
  for (auto d : T.degrees)
    sum += std::pow(double(d), -x);
  return sum;
}

std::size_t k_epsilon(GroupTable const &G, double epsilon)
{
  if (!(epsilon > 0))
    throw Error(ErrorCode::InvalidArgument, "k_epsilon requires epsilon > 0");
  double const cutoff = epsilon * double(G.order());
  return std::count_if(G.classes().begin(), G.classes().end(),
                       [&](ConjClass const &K) { return double(K.size) < cutoff; });
}

double class_number_exponent(GroupTable const &G)
{
  if (G.order() < 2)
    throw Error(ErrorCode::TrivialGroup, "class number exponent needs |G| >= 2");
  return std::log(double(G.num_classes())) / std::log(double(G.order()));
}

std::vector<RatioScanRow> character_ratio_scan(GroupTable const &G, CharTable const &T,
                                               double tolerance)
{
  if (T.num_classes() < 2)
    throw Error(ErrorCode::TrivialGroup, "ratio scan needs a nontrivial group");

  double const log_order = std::log(double(G.order()));
  std::vector<RatioScanRow> rows;
  for (std::size_t i = 0; i < T.num_classes(); ++i) {
    if (T.class_reps[i] == G.identity())
      continue;

    RatioScanRow row;
    row.class_index = i;
    row.class_size = T.class_sizes[i];
    row.centralizer_exponent = std::log(double(G.order() / T.class_sizes[i])) / log_order;

    for (std::size_t chi = 0; chi < T.num_classes(); ++chi) {
      if (T.degrees[chi] <= 1)
        continue;
      double modulus = std::abs(T.values[chi][i]);
      if (modulus < tolerance)
        continue;
      double alpha = std::log(modulus) / std::log(double(T.degrees[chi]));
      if (!row.alpha || alpha > *row.alpha) {
        row.alpha = alpha;
        row.witness = chi;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace pmix
