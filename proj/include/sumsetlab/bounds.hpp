#ifndef SUMSETLAB_BOUNDS_HPP
#define SUMSETLAB_BOUNDS_HPP

#include <optional>
#include <span>
#include <vector>

#include "sumsetlab/pointset.hpp"

namespace sumsetlab {

enum class BoundSource { CD, DSH, DSH_DISTINCT, MIN0 };

/// A named lower bound on a (restricted) sumset cardinality.
struct BoundValue {
  int value = 0;
  BoundSource source = BoundSource::MIN0;
};

/// max(0, min(x, cap)) — the paper's min_0 applied to {x, cap}.
inline int min0_capped(int x, int cap) {
  int v = x < cap ? x : cap;
  return v < 0 ? 0 : v;
}

/// Cauchy-Davenport: |A + B| >= min(|A| + |B| - 1, p) for nonempty A, B.
BoundValue cd_bound(int a, int b, int p);

/// Dias Da Silva-Hamidoune: |A ^+ B| >= min0(|A| + |B| - 3, p), improving to
/// -2 when the cardinalities differ.
BoundValue dsh_bound(int a, int b, int p, bool distinct_sizes);

/// max over j of min0{sizes[j] + sizes[i-j] - 1 - 2e, p} with e = 1 iff
/// 2j = i (mod p), over pairs of nonempty blocks. 0 if no such pair.
int pairwise_block_bound(std::span<const int> sizes, int i, int p);

/// Common difference of two rank-1 arithmetic progressions, if one exists.
/// Differences are normalized to [1, (p-1)/2]; the smallest shared one is
/// returned. Requires |A|, |B| >= 2.
std::optional<int> common_ap_difference(const PointSet& a, const PointSet& b);

/// Normalized admissible AP differences of a single rank-1 set.
std::vector<int> ap_differences(const PointSet& a);

}  // namespace sumsetlab

#endif
