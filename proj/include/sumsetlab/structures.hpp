#ifndef SUMSETLAB_STRUCTURES_HPP
#define SUMSETLAB_STRUCTURES_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "sumsetlab/group.hpp"
#include "sumsetlab/pointset.hpp"

namespace sumsetlab {

/// Parameters of the near-extremal family with block profile (3, 2, ..., 2):
/// A_0 = {0, d, 2d} and A_{i+1} = A_1 + A_i shifted by mu_{i+1} steps of d.
struct MuSequence {
  Modulus mod;
  GroupElement d;   // nonzero AP difference, spans the subgroup H
  GroupElement a1;  // base point of A_1, must lie in coset 1 of <d>
  std::vector<int> mu;  // mu[k] is mu_{k+2}, k = 0..p-3

  MuSequence(const Modulus& m, GroupElement d, GroupElement a1,
             std::vector<int> mu);
};

/// The subgroup spanned by the sequence's difference d.
Subgroup mu_subgroup(const MuSequence& seq);

/// The 2p+1 point set described by the sequence; profile (3, 2, ..., 2).
PointSet build_mu_set(const MuSequence& seq);

/// Every valid MuSequence over the fixed subgroup <(1,0)>: all nonzero d in
/// it, all base points in coset 1, all admissible mu vectors.
std::vector<MuSequence> enumerate_mu_sequences(const Modulus& m);

struct Lemma213Report {
  int restricted_size = 0;          // |2^A|
  std::array<bool, 5> claims{};     // claims 1..5
  bool all_claims() const;
  /// The testable statement: |2^A| <= 4p-1 implies every claim.
  bool implication_holds = false;
};

Lemma213Report check_lemma_2_13(const PointSet& a, const Subgroup& h,
                                const GroupElement& d);

enum class TemplateKind { EkPPlus1, Conj43 };

/// The two structured extremal shapes: a coset plus one outside point
/// (|A| = p+1), or two cosets plus one point whose quotient image completes a
/// three-term progression (|A| = 2p+1).
struct ExtremalTemplate {
  TemplateKind kind;
  Subgroup z;
  std::vector<int> full_cosets;  // one coset index for EK, two for Conj43
  GroupElement extra;            // the single point outside the full cosets

  ExtremalTemplate(TemplateKind kind, Subgroup z, std::vector<int> full_cosets,
                   GroupElement extra);
};

ExtremalTemplate default_ek_template(const Modulus& m);
ExtremalTemplate default_conj43_template(const Modulus& m);

PointSet build_extremal(const ExtremalTemplate& t);

/// Subgroup Z and removable point a making A \ {a} a union of two Z-cosets
/// with a three-term progression image, if any.
std::optional<std::pair<Subgroup, GroupElement>> matches_conjecture_4_3(
    const PointSet& a);

/// Subgroup Z such that A is a Z-coset plus one outside point, if any.
std::optional<std::pair<Subgroup, GroupElement>> matches_theorem_4_2(
    const PointSet& a);

}  // namespace sumsetlab

#endif
