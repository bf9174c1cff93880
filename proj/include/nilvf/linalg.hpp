#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nilvf/rational.hpp"

namespace nilvf {

using QVector = std::vector<Rational>;
/// Row-major dense matrix over K; every row has the same length.
using QMatrix = std::vector<QVector>;

bool is_zero(const QVector& v);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& c, const QVector& v);
QVector unit_vector(std::size_t dim, std::size_t index);

QMatrix transpose(const QMatrix& m, std::size_t cols);

struct Echelon {
  QMatrix rows;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Reduced row echelon form; pivots are chosen left to right.
Echelon reduced_echelon(QMatrix m, std::size_t cols);

std::size_t rank(const QMatrix& m, std::size_t cols);

/// Basis of {x : m x = 0}, one vector per free column in increasing order,
/// each with a 1 in its own free column.
std::vector<QVector> kernel(const QMatrix& m, std::size_t cols);

/// Incrementally built echelon basis of a subspace of K^dim.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return rows_.size(); }
  /// Adds v if it is independent of what is already present.
  bool add(const QVector& v);
  bool contains(const QVector& v) const;

 private:
  QVector reduce(QVector v) const;

  std::size_t dim_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Solves sum_i x_i basis[i] = target for every target at once. The basis
/// vectors must be independent (throws Precondition otherwise); nullopt
/// marks a target outside the span.
std::vector<std::optional<QVector>> solve_in_span(std::span<const QVector> basis,
                                                  std::span<const QVector> targets,
                                                  std::size_t dim);

}  // namespace nilvf
