#ifndef SUMSETLAB_PROFILES_HPP
#define SUMSETLAB_PROFILES_HPP

#include <string>
#include <vector>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/group.hpp"
#include "sumsetlab/pointset.hpp"

namespace sumsetlab {

/// Intersection sizes of a set with the p cosets of an order-p subgroup,
/// rotated so a maximal entry sits at index 0. Ties are broken by rotating
/// the lexicographically greatest resulting vector into place.
class CosetProfile {
 public:
  static CosetProfile of(const PointSet& a, const Subgroup& h);
  static CosetProfile from_sizes(int p, std::vector<int> sizes);

  int p() const { return p_; }
  int total() const { return total_; }
  const std::vector<int>& sizes() const { return sizes_; }
  int max_size() const { return sizes_[0]; }
  /// Number of nonzero i >= 1 with sizes[i] > 0 (the paper's m).
  int nonzero_tail() const;

  bool operator==(const CosetProfile& o) const {
    return p_ == o.p_ && sizes_ == o.sizes_;
  }

  std::string to_string() const;

 private:
  CosetProfile(int p, std::vector<int> sizes);
  int p_;
  int total_;
  std::vector<int> sizes_;
};

enum class CaseTag { Case1A, Case1B, Case2 };

std::string to_string(CaseTag t);

/// Case 2 iff sizes[0] >= (p+3)/2; otherwise Case 1A when m >= (p+1)/2 and
/// Case 1B when m <= (p-1)/2.
CaseTag classify(const CosetProfile& profile);

/// C_w = number of cosets meeting the set in exactly w points (C_0 included).
struct CountVector {
  int p = 0;
  std::vector<int> c;  // c[w] for w = 0..p

  int total() const;  // sum of w * c[w]
};

CountVector count_vector(const CosetProfile& profile);

enum class LemmaTag {
  L2_1,
  L2_3_5_combo,
  EQ1_SUM,
  L3_2,
  L3_3,
  L3_4,
  L3_5,
  L3_6,
  L3_8,
  L3_10,
};

std::string to_string(LemmaTag t);

/// A lower bound on |2^A| valid for every set realizing the profile.
struct BoundCertificate {
  int value = 0;
  LemmaTag lemma = LemmaTag::EQ1_SUM;
  std::string inputs;
};

int pairwise_block_bound(const CosetProfile& profile, int i);

/// Sum of the per-coset pairwise block bounds over all indices.
BoundCertificate eq1_sum_bound(const CosetProfile& profile);

/// Case 1 bound: |2^A_0| term plus the coset-pair sums plus the
/// guaranteed-nonempty tail blocks (p-m-1 in 1A, m-2 in 1B).
BoundCertificate lemma_2_1_bound(const CosetProfile& profile);

/// Case 1A, max block size 3: the D'-telescoping bound assembled from the
/// D'_3, D'_4, D'_5 estimates.
BoundCertificate case1a_dprime_bounds(const CountVector& counts);

/// Case 2 bound dispatched on (l, s): number of blocks pairing with A_0 to
/// cover a full coset vs. the rest.
BoundCertificate case2_bound(const CosetProfile& profile);

/// Maximum over every certificate applicable to the profile.
BoundCertificate profile_lower_bound(const CosetProfile& profile);

/// Admissible bound for a partial set: the minimum of profile_lower_bound over
/// every way of distributing `remaining` further elements among the cosets.
/// `raw_sizes` are per-coset counts before rotation normalization.
int completion_lower_bound(int p, const std::vector<int>& raw_sizes,
                           int remaining);

std::string render(const CosetProfile& profile, const BoundCertificate& cert);

}  // namespace sumsetlab

#endif
