#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nilvf/derivation.hpp"
#include "nilvf/linalg.hpp"

namespace nilvf {

/// Expands rows of rational functions into K-coordinates: each column is
/// brought to a common denominator and split by monomial. K-linear relations
/// between the rows are exactly the relations between the returned vectors.
QMatrix expand_rows(std::span<const std::vector<RatFunc>> rows, std::size_t* width = nullptr);

/// Same expansion for derivations (one row per derivation).
QMatrix expand(std::span<const Derivation> fields, std::size_t* width = nullptr);

/// K-coordinates of each target in the span of `basis` (which must be
/// K-linearly independent); nullopt for targets outside the span.
std::vector<std::optional<QVector>> express_in_span(std::span<const Derivation> basis,
                                                    std::span<const Derivation> targets);

/// K-linearly independent generators of a finite-dimensional Lie algebra.
class LieBasis {
 public:
  LieBasis() : nvars_(0) {}
  /// Throws Precondition if the generators are dependent or of mixed nvars.
  LieBasis(std::vector<Derivation> gens, std::size_t nvars);

  std::size_t dim() const { return gens_.size(); }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Derivation>& gens() const { return gens_; }
  const Derivation& operator[](std::size_t i) const { return gens_[i]; }

  /// sum_i coords[i] * gens[i].
  Derivation element(const QVector& coords) const;
  std::optional<QVector> coordinates(const Derivation& d) const;

 private:
  std::vector<Derivation> gens_;
  std::size_t nvars_;
};

/// Maximal K-linearly independent sublist, kept in input order.
LieBasis k_linear_reduce(std::span<const Derivation> fields, std::size_t nvars);

/// [gens_i, gens_j] = sum_k c(i, j, k) gens_k.
class StructureTensor {
 public:
  explicit StructureTensor(std::size_t dim = 0) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

  std::size_t dim() const { return dim_; }
  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  /// Coordinates of [x, y] for coordinate vectors x, y.
  QVector bracket(const QVector& x, const QVector& y) const;
  bool is_abelian() const;

  friend bool operator==(const StructureTensor&, const StructureTensor&) = default;

 private:
  std::size_t dim_;
  std::vector<Rational> c_;
};

/// Throws NotClosed naming the first pair whose bracket leaves the span.
StructureTensor structure_constants(const LieBasis& l);

/// K-subspace of an ambient algebra of dimension `ambient`, kept in reduced
/// echelon form so equal subspaces compare equal.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, std::span<const QVector> vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  bool contains(const QVector& v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of v with respect to basis(); requires contains(v).
  QVector local_coordinates(const QVector& v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_;
  std::vector<QVector> basis_;
};

std::vector<Derivation> elements(const LieBasis& l, const Subspace& s);

/// [A, B] as a subspace.
Subspace commutator(const StructureTensor& t, const Subspace& a, const Subspace& b);
bool is_ideal(const StructureTensor& t, const Subspace& s);

struct CentralSeries {
  std::vector<Subspace> terms;  // L, [L,L], [L,[L,L]], ... up to stabilization
  bool nilpotent = false;
  /// Number of steps to reach zero (1 for abelian, 0 for the zero algebra);
  /// meaningful only when nilpotent.
  std::size_t nilpotency_class = 0;
};

CentralSeries lower_central_series(const StructureTensor& t);
CentralSeries lower_central_series(const LieBasis& l);

Subspace center(const StructureTensor& t);
Subspace center(const LieBasis& l);

/// Elements of the algebra whose brackets with every element of `s` vanish.
Subspace centralizer(const StructureTensor& t, const Subspace& s);

/// {v : [v, L] subset of s}, the preimage of the center of L/s.
Subspace central_modulo(const StructureTensor& t, const Subspace& s);

/// Rank of the coefficient matrix over K(x1..xn), by fraction-free elimination.
std::size_t rank_over_R(std::span<const Derivation> fields);
std::size_t rank_over_R(const LieBasis& l);

/// (R span of `s`) intersected with L, for any subspace s.
Subspace r_span_cap(const LieBasis& l, const Subspace& s);

/// RI ∩ L for an ideal I; throws Precondition if I is not an ideal and
/// Internal if the result fails to be one.
Subspace ideal_RI_cap_L(const LieBasis& l, const Subspace& ideal);

struct JordanChain {
  /// v, (ad D)v, ..., (ad D)^{len-1} v as coordinates in L; the last one is
  /// annihilated by ad D.
  std::vector<QVector> coords;
  std::vector<Derivation> fields;

  std::size_t length() const { return coords.size(); }
};

/// Jordan chains of ad D on the invariant subspace V, longest first. Throws
/// Precondition if ad D does not preserve V and NotNilpotentOperator if it
/// is not nilpotent there.
std::vector<JordanChain> jordan_chains(const LieBasis& l, const Subspace& v, const Derivation& d);

/// True iff r is a rational number annihilated by every generator.
bool verify_rational_constants(const LieBasis& l, const RatFunc& r);

}  // namespace nilvf
