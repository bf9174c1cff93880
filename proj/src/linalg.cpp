#include "nilvf/linalg.hpp"

#include "nilvf/error.hpp"

namespace nilvf {

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

QVector operator*(const Rational& c, const QVector& v) {
  QVector out(v);
  for (auto& x : out) x *= c;
  return out;
}

QVector unit_vector(std::size_t dim, std::size_t index) {
  QVector v(dim, Rational(0));
  v.at(index) = 1;
  return v;
}

QMatrix transpose(const QMatrix& m, std::size_t cols) {
  QMatrix t(cols, QVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

Echelon reduced_echelon(QMatrix m, std::size_t cols) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m, std::size_t cols) { return reduced_echelon(m, cols).pivots.size(); }

std::vector<QVector> kernel(const QMatrix& m, std::size_t cols) {
  const Echelon e = reduced_echelon(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

QVector SpanBuilder::reduce(QVector v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = v[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool SpanBuilder::add(const QVector& v) {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from span dimension");
  QVector w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && w[p] == 0) ++p;
  if (p == dim_) return false;
  const Rational inv = 1 / w[p];
  for (auto& x : w) x *= inv;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational f = rows_[r][p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] -= f * w[j];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

bool SpanBuilder::contains(const QVector& v) const { return is_zero(reduce(v)); }

std::vector<std::optional<QVector>> solve_in_span(std::span<const QVector> basis,
                                                  std::span<const QVector> targets,
                                                  std::size_t dim) {
  const std::size_t b = basis.size();
  const std::size_t t = targets.size();
  QMatrix aug(dim, QVector(b + t));
  for (std::size_t j = 0; j < b; ++j)
    for (std::size_t i = 0; i < dim; ++i) aug[i][j] = basis[j][i];
  for (std::size_t j = 0; j < t; ++j)
    for (std::size_t i = 0; i < dim; ++i) aug[i][b + j] = targets[j][i];
  const Echelon e = reduced_echelon(std::move(aug), b + t);

  std::size_t basis_pivots = 0;
  while (basis_pivots < e.pivots.size() && e.pivots[basis_pivots] < b) ++basis_pivots;
  if (basis_pivots != b) throw Error(ErrorCode::Precondition, "spanning vectors are linearly dependent");

  std::vector<std::optional<QVector>> out(t);
  for (std::size_t j = 0; j < t; ++j) {
    // Rows past the basis pivots vanish on basis columns; any nonzero entry
    // there in this target's column makes its system inconsistent.
    bool consistent = true;
    for (std::size_t r = b; r < e.rows.size() && consistent; ++r) consistent = e.rows[r][b + j] == 0;
    if (!consistent) continue;
    QVector x(b);
    for (std::size_t r = 0; r < b; ++r) x[r] = e.rows[r][b + j];
    out[j] = std::move(x);
  }
  return out;
}

}  // namespace nilvf
