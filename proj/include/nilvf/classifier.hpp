#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nilvf/lie.hpp"

namespace nilvf {

enum class NormalFormTag { Rank1, Rank2Chain, Abelian3, Heisenberg3, L1, L2 };

std::string_view to_string(NormalFormTag tag);

struct Witnesses {
  std::optional<Derivation> d1, d2, d3;
  std::optional<RatFunc> a, b;
};

struct Verification {
  bool brackets = false;
  bool triangular = false;
  bool witnesses = false;

  bool all() const { return brackets && triangular && witnesses; }
};

/// Result of classifying a nilpotent algebra of rank <= 3.
///
/// `spanning` is the normal-form spanning set built from the witnesses (for
/// L1: D3, a^i/i! D1, a^i/i! D2) and `model` lists the matching fields of
/// the triangular algebra u_k in fresh variables x1..xk. Row j of
/// `correspondence` holds the coordinates of input generator j in
/// `spanning`; applying the same coordinates to `model` gives `embedded`.
struct NormalFormReport {
  NormalFormTag tag = NormalFormTag::Rank1;
  std::optional<std::uint32_t> n;  // also carries k of Rank2Chain(k)
  std::optional<std::uint32_t> m;
  Witnesses witnesses;

  LieBasis input;
  StructureTensor input_tensor;
  std::size_t rank = 0;
  std::size_t nilpotency_class = 0;
  std::size_t center_dim = 0;

  std::vector<Derivation> spanning;
  std::vector<Derivation> model;
  std::size_t model_nvars = 0;
  QMatrix correspondence;
  std::vector<Derivation> embedded;
  Verification verified;
};

/// Full pipeline: closure, nilpotency, rank, dispatch, embedding. Throws
/// ZeroAlgebra, NotClosed, NotNilpotent, RankTooHigh, NonRationalConstants,
/// or Internal when a post-hoc verification fails.
NormalFormReport classify(const LieBasis& l);

/// Reduces the fields to a K-basis first.
NormalFormReport classify(std::span<const Derivation> fields, std::size_t nvars);

/// Rank-specific stages; each expects a closed nilpotent algebra of that rank
/// and returns a report whose embedding has not been computed yet.
NormalFormReport classify_rank1(const LieBasis& l);
NormalFormReport classify_rank2(const LieBasis& l);
NormalFormReport classify_rank3(const LieBasis& l);

/// Images of the input generators in u_k. Throws Internal if any of the
/// three verifications fails.
LieBasis embed_into_triangular(const NormalFormReport& report);

/// Recomputes the three checks without throwing.
Verification verify(const NormalFormReport& report);

/// Coefficient i lies in K[x_{i+1}, ..., x_n]; the last one is a constant.
bool is_in_triangular(const Derivation& d);

/// Witness relations demanded by the report's tag.
bool witness_relations_hold(const NormalFormReport& report);

/// Normal-form spanning set and its u_k model for the given tag and witnesses.
std::vector<Derivation> normal_form_spanning(NormalFormTag tag, const Witnesses& w, std::uint32_t n, std::uint32_t m);
std::vector<Derivation> normal_form_model(NormalFormTag tag, std::uint32_t n, std::uint32_t m);

}  // namespace nilvf
