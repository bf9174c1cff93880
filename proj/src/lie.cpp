#include "nilvf/lie.hpp"

#include <map>
#include <utility>

#include "nilvf/error.hpp"

namespace nilvf {

namespace {

std::vector<std::vector<RatFunc>> coefficient_rows(std::span<const Derivation> fields) {
  std::vector<std::vector<RatFunc>> rows;
  rows.reserve(fields.size());
  for (const auto& f : fields) rows.push_back(f.coeffs());
  return rows;
}

std::size_t first_nonzero(const QVector& v) {
  std::size_t p = 0;
  while (p < v.size() && v[p] == 0) ++p;
  return p;
}

QVector apply_matrix(const QMatrix& a, const QVector& x) {
  QVector y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0 && a[i][j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size();
  QMatrix c(n, QVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool is_zero_matrix(const QMatrix& a) {
  for (const auto& row : a)
    if (!is_zero(row)) return false;
  return true;
}

RatFunc determinant(std::vector<std::vector<RatFunc>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RatFunc det(m[0][0].nvars());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<RatFunc>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<RatFunc> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    RatFunc term = m[0][c] * determinant(std::move(minor));
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k, const auto& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Nilpotent Jordan chains of the operator with matrix `a` (columns are images
// of basis vectors). Heads are chosen from kernel bases in increasing
// free-column order, longest chains first.
std::vector<std::vector<QVector>> nilpotent_chains(const QMatrix& a) {
  const std::size_t n = a.size();
  std::vector<QMatrix> powers{QMatrix(n, QVector(n, Rational(0)))};
  for (std::size_t i = 0; i < n; ++i) powers[0][i][i] = 1;
  while (!is_zero_matrix(powers.back())) {
    if (powers.size() > n) throw Error(ErrorCode::NotNilpotentOperator, "operator is not nilpotent on the subspace");
    powers.push_back(multiply(powers.back(), a));
  }
  const std::size_t height = powers.size() - 1;

  std::vector<std::vector<QVector>> chains;
  for (std::size_t h = height; h >= 1; --h) {
    SpanBuilder existing(n);
    for (const auto& v : kernel(powers[h - 1], n)) existing.add(v);
    for (const auto& chain : chains)
      if (chain.size() > h) existing.add(chain[chain.size() - h]);
    for (const auto& candidate : kernel(powers[h], n)) {
      if (!existing.add(candidate)) continue;
      std::vector<QVector> chain{candidate};
      for (std::size_t k = 1; k < h; ++k) chain.push_back(apply_matrix(a, chain.back()));
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

}  // namespace

QMatrix expand_rows(std::span<const std::vector<RatFunc>> rows, std::size_t* width) {
  if (rows.empty()) {
    if (width) *width = 0;
    return {};
  }
  const std::size_t ncoords = rows.front().size();
  std::map<std::pair<std::size_t, MultiPoly::Exponent>, std::size_t> columns;
  std::vector<std::vector<MultiPoly>> scaled(rows.size());

  for (std::size_t c = 0; c < ncoords; ++c) {
    std::optional<MultiPoly> common;
    for (const auto& row : rows) {
      if (row.size() != ncoords) throw Error(ErrorCode::DimensionMismatch, "ragged rows in expansion");
      if (row[c].is_polynomial()) continue;
      common = common ? lcm(*common, row[c].den()) : row[c].den();
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const RatFunc& f = rows[r][c];
      MultiPoly p = f.num();
      if (common) p = p * *divide_exact(*common, f.den());
      for (const auto& [e, q] : p.terms()) columns.try_emplace({c, e}, 0);
      scaled[r].push_back(std::move(p));
    }
  }
  std::size_t next = 0;
  for (auto& [key, index] : columns) index = next++;

  QMatrix out(rows.size(), QVector(columns.size(), Rational(0)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ncoords; ++c)
      for (const auto& [e, q] : scaled[r][c].terms()) out[r][columns.at({c, e})] = q;
  if (width) *width = columns.size();
  return out;
}

QMatrix expand(std::span<const Derivation> fields, std::size_t* width) {
  const auto rows = coefficient_rows(fields);
  return expand_rows(rows, width);
}

std::vector<std::optional<QVector>> express_in_span(std::span<const Derivation> basis,
                                                    std::span<const Derivation> targets) {
  std::vector<Derivation> all(basis.begin(), basis.end());
  all.insert(all.end(), targets.begin(), targets.end());
  std::size_t width = 0;
  const QMatrix m = expand(all, &width);
  const std::span<const QVector> rows(m);
  return solve_in_span(rows.first(basis.size()), rows.subspan(basis.size()), width);
}

LieBasis::LieBasis(std::vector<Derivation> gens, std::size_t nvars) : gens_(std::move(gens)), nvars_(nvars) {
  for (const auto& g : gens_)
    if (g.nvars() != nvars_) throw Error(ErrorCode::DimensionMismatch, "generator over wrong variable count");
  std::size_t width = 0;
  const QMatrix m = expand(gens_, &width);
  if (rank(m, width) != gens_.size())
    throw Error(ErrorCode::Precondition, "generators are not K-linearly independent");
}

Derivation LieBasis::element(const QVector& coords) const {
  Derivation out(nvars_);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (coords.at(i) != 0) out += coords[i] * gens_[i];
  return out;
}

std::optional<QVector> LieBasis::coordinates(const Derivation& d) const {
  return express_in_span(gens_, std::span(&d, 1)).front();
}

LieBasis k_linear_reduce(std::span<const Derivation> fields, std::size_t nvars) {
  for (const auto& f : fields)
    if (f.nvars() != nvars) throw Error(ErrorCode::DimensionMismatch, "field over wrong variable count");
  std::size_t width = 0;
  const QMatrix m = expand(fields, &width);
  SpanBuilder span(width);
  std::vector<Derivation> kept;
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (span.add(m[i])) kept.push_back(fields[i]);
  return LieBasis(std::move(kept), nvars);
}

QVector StructureTensor::bracket(const QVector& x, const QVector& y) const {
  QVector out(dim_, Rational(0));
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0) continue;
      const Rational w = x[i] * y[j];
      for (std::size_t k = 0; k < dim_; ++k) {
        const Rational& c = (*this)(i, j, k);
        if (c != 0) out[k] += w * c;
      }
    }
  }
  return out;
}

bool StructureTensor::is_abelian() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

StructureTensor structure_constants(const LieBasis& l) {
  const std::size_t d = l.dim();
  std::vector<Derivation> brackets;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      brackets.push_back(bracket(l[i], l[j]));
      pairs.emplace_back(i, j);
    }
  const auto coords = express_in_span(l.gens(), brackets);
  StructureTensor t(d);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    if (!coords[p]) {
      throw Error(ErrorCode::NotClosed, "[" + l[i].to_string() + ", " + l[j].to_string() +
                                            "] = " + brackets[p].to_string() +
                                            " is not in the span (generators " + std::to_string(i + 1) +
                                            ", " + std::to_string(j + 1) + ")");
    }
    for (std::size_t k = 0; k < d; ++k) {
      t(i, j, k) = (*coords[p])[k];
      t(j, i, k) = -(*coords[p])[k];
    }
  }
  return t;
}

Subspace Subspace::span(std::size_t ambient, std::span<const QVector> vectors) {
  Subspace s(ambient);
  QMatrix m(vectors.begin(), vectors.end());
  for (const auto& v : m)
    if (v.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "vector outside ambient space");
  s.basis_ = reduced_echelon(std::move(m), ambient).rows;
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.basis_.push_back(unit_vector(ambient, i));
  return s;
}

bool Subspace::contains(const QVector& v) const {
  QVector w = v;
  for (const auto& row : basis_) {
    const Rational f = w[first_nonzero(row)];
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * row[j];
  }
  return is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

QVector Subspace::local_coordinates(const QVector& v) const {
  if (!contains(v)) throw Error(ErrorCode::Precondition, "vector is not in the subspace");
  QVector x;
  for (const auto& row : basis_) x.push_back(v[first_nonzero(row)]);
  return x;
}

std::vector<Derivation> elements(const LieBasis& l, const Subspace& s) {
  std::vector<Derivation> out;
  for (const auto& v : s.basis()) out.push_back(l.element(v));
  return out;
}

Subspace commutator(const StructureTensor& t, const Subspace& a, const Subspace& b) {
  std::vector<QVector> out;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) out.push_back(t.bracket(x, y));
  return Subspace::span(t.dim(), out);
}

bool is_ideal(const StructureTensor& t, const Subspace& s) {
  return s.contains(commutator(t, s, Subspace::whole(t.dim())));
}

CentralSeries lower_central_series(const StructureTensor& t) {
  CentralSeries series;
  const Subspace whole = Subspace::whole(t.dim());
  series.terms.push_back(whole);
  for (;;) {
    if (series.terms.back().dim() == 0) {
      series.nilpotent = true;
      series.nilpotency_class = series.terms.size() - 1;
      return series;
    }
    Subspace next = commutator(t, whole, series.terms.back());
    if (next.dim() == series.terms.back().dim()) return series;
    series.terms.push_back(std::move(next));
  }
}

CentralSeries lower_central_series(const LieBasis& l) { return lower_central_series(structure_constants(l)); }

Subspace centralizer(const StructureTensor& t, const Subspace& s) {
  const std::size_t d = t.dim();
  QMatrix rows;
  for (const auto& y : s.basis()) {
    std::vector<QVector> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(t.bracket(unit_vector(d, i), y));
    for (std::size_t k = 0; k < d; ++k) {
      QVector row(d);
      for (std::size_t i = 0; i < d; ++i) row[i] = images[i][k];
      rows.push_back(std::move(row));
    }
  }
  return Subspace::span(d, kernel(rows, d));
}

Subspace center(const StructureTensor& t) { return centralizer(t, Subspace::whole(t.dim())); }

Subspace center(const LieBasis& l) { return center(structure_constants(l)); }

Subspace central_modulo(const StructureTensor& t, const Subspace& s) {
  const std::size_t d = t.dim();
  const auto functionals = kernel(QMatrix(s.basis().begin(), s.basis().end()), d);
  QMatrix rows;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<QVector> images;
    for (std::size_t i = 0; i < d; ++i) images.push_back(t.bracket(unit_vector(d, i), unit_vector(d, j)));
    for (const auto& f : functionals) {
      QVector row(d, Rational(0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) row[i] += f[k] * images[i][k];
      rows.push_back(std::move(row));
    }
  }
  return Subspace::span(d, kernel(rows, d));
}

std::size_t rank_over_R(std::span<const Derivation> fields) {
  if (fields.empty()) return 0;
  const std::size_t n = fields.front().nvars();
  // Clear denominators row by row, then Bareiss elimination with exact division.
  std::vector<std::vector<MultiPoly>> m;
  for (const auto& f : fields) {
    if (f.nvars() != n) throw Error(ErrorCode::DimensionMismatch, "rank of mixed derivations");
    MultiPoly common = MultiPoly::constant(n, 1);
    for (const auto& c : f.coeffs())
      if (!c.is_polynomial()) common = lcm(common, c.den());
    std::vector<MultiPoly> row;
    for (const auto& c : f.coeffs()) row.push_back(c.num() * *divide_exact(common, c.den()));
    m.push_back(std::move(row));
  }
  MultiPoly prev = MultiPoly::constant(n, 1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        const MultiPoly num = m[r][col] * m[i][j] - m[i][col] * m[r][j];
        auto q = divide_exact(num, prev);
        if (!q) throw Error(ErrorCode::Internal, "fraction-free elimination lost exactness");
        m[i][j] = std::move(*q);
      }
      m[i][col] = MultiPoly(n);
    }
    prev = m[r][col];
    ++r;
  }
  return r;
}

std::size_t rank_over_R(const LieBasis& l) { return rank_over_R(l.gens()); }

Subspace r_span_cap(const LieBasis& l, const Subspace& s) {
  const std::size_t d = l.dim();
  const std::size_t n = l.nvars();
  const auto members = elements(l, s);
  const std::size_t r = rank_over_R(members);
  if (r == 0) return Subspace(d);
  if (r == n) return Subspace::whole(d);

  std::vector<Derivation> chosen;
  for (const auto& e : members) {
    chosen.push_back(e);
    if (rank_over_R(chosen) < chosen.size()) chosen.pop_back();
    if (chosen.size() == r) break;
  }

  // v lies in R<chosen> iff every (r+1)-minor of [chosen; v] vanishes; each
  // minor is K-linear in the coordinates of v.
  std::vector<std::vector<RatFunc>> minors(d);
  for_each_subset(n, r + 1, [&](const std::vector<std::size_t>& cols) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<std::vector<RatFunc>> block;
      for (const auto& c : chosen) {
        std::vector<RatFunc> row;
        for (auto k : cols) row.push_back(c[k]);
        block.push_back(std::move(row));
      }
      std::vector<RatFunc> last;
      for (auto k : cols) last.push_back(l[j][k]);
      block.push_back(std::move(last));
      minors[j].push_back(determinant(std::move(block)));
    }
  });
  std::size_t width = 0;
  const QMatrix e = expand_rows(minors, &width);
  return Subspace::span(d, kernel(transpose(e, width), d));
}

Subspace ideal_RI_cap_L(const LieBasis& l, const Subspace& ideal) {
  const StructureTensor t = structure_constants(l);
  if (!is_ideal(t, ideal)) throw Error(ErrorCode::Precondition, "subspace is not an ideal");
  Subspace out = r_span_cap(l, ideal);
  if (!out.contains(ideal) || !is_ideal(t, out))
    throw Error(ErrorCode::Internal, "RI ∩ L failed the ideal check");
  return out;
}

std::vector<JordanChain> jordan_chains(const LieBasis& l, const Subspace& v, const Derivation& d) {
  const std::size_t dim = v.dim();
  const auto fields = elements(l, v);
  std::vector<Derivation> images;
  for (const auto& f : fields) images.push_back(bracket(d, f));
  const auto coords = express_in_span(l.gens(), images);
  QMatrix a(dim, QVector(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    if (!coords[j] || !v.contains(*coords[j]))
      throw Error(ErrorCode::Precondition, "ad D does not preserve the subspace");
    const QVector local = v.local_coordinates(*coords[j]);
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = local[i];
  }
  std::vector<JordanChain> out;
  for (const auto& chain : nilpotent_chains(a)) {
    JordanChain jc;
    for (const auto& x : chain) {
      QVector global(l.dim(), Rational(0));
      for (std::size_t i = 0; i < dim; ++i)
        if (x[i] != 0) global = global + x[i] * v.basis()[i];
      jc.fields.push_back(l.element(global));
      jc.coords.push_back(std::move(global));
    }
    out.push_back(std::move(jc));
  }
  return out;
}

bool verify_rational_constants(const LieBasis& l, const RatFunc& r) {
  for (const auto& g : l.gens())
    if (!apply(g, r).is_zero()) return false;
  return r.is_constant();
}

}  // namespace nilvf
