#include "sumsetlab/bounds.hpp"

#include <algorithm>

namespace sumsetlab {

BoundValue cd_bound(int a, int b, int p) {
  if (a <= 0 || b <= 0) return {0, BoundSource::MIN0};  // empty-operand convention
  return {std::min(a + b - 1, p), BoundSource::CD};
}

BoundValue dsh_bound(int a, int b, int p, bool distinct_sizes) {
  int slack = distinct_sizes ? 2 : 3;
  return {min0_capped(a + b - slack, p),
          distinct_sizes ? BoundSource::DSH_DISTINCT : BoundSource::DSH};
}

int pairwise_block_bound(std::span<const int> sizes, int i, int p) {
  i = ((i % p) + p) % p;
  int best = 0;
  for (int j = 0; j < p; ++j) {
    int k = (i - j + p) % p;
    if (sizes[j] == 0 || sizes[k] == 0) continue;
    int eps = (j == k) ? 1 : 0;
    best = std::max(best, min0_capped(sizes[j] + sizes[k] - 1 - 2 * eps, p));
  }
  return best;
}

std::vector<int> ap_differences(const PointSet& a) {
  if (a.modulus().r() != 1)
    throw usage_error("ap_differences: rank 1 only");
  if (a.size() < 2) throw usage_error("ap_differences: need at least 2 elements");
  int p = a.modulus().p();
  int n = a.size();
  std::vector<int> out;
  for (int d = 1; d <= (p - 1) / 2; ++d) {
    bool hit = false;
    for (int sgn : {1, p - 1}) {
      int step = d * sgn % p;
      for (int s : a.elements()) {
        bool ok = true;
        int x = s;
        for (int k = 0; k < n; ++k) {
          if (!a.contains(x)) { ok = false; break; }
          x = (x + step) % p;
        }
        if (ok) { hit = true; break; }
      }
      if (hit) break;
    }
    if (hit) out.push_back(d);
  }
  return out;
}

std::optional<int> common_ap_difference(const PointSet& a, const PointSet& b) {
  if (a.modulus() != b.modulus())
    throw usage_error("common_ap_difference: mismatched moduli");
  std::vector<int> da = ap_differences(a);
  std::vector<int> db = ap_differences(b);
  std::vector<int> common;
  std::set_intersection(da.begin(), da.end(), db.begin(), db.end(),
                        std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  return common.front();
}

}  // namespace sumsetlab
