#include "sumsetlab/profiles.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace sumsetlab {

CosetProfile::CosetProfile(int p, std::vector<int> sizes)
    : p_(p), sizes_(std::move(sizes)) {
  total_ = std::accumulate(sizes_.begin(), sizes_.end(), 0);
}

CosetProfile CosetProfile::of(const PointSet& a, const Subgroup& h) {
  if (a.modulus() != h.modulus())
    throw usage_error("CosetProfile: mismatched moduli");
  int p = a.modulus().p();
  std::vector<int> sizes(p, 0);
  for (int f : a.elements()) ++sizes[h.coset_index_flat(f)];
  return from_sizes(p, std::move(sizes));
}

CosetProfile CosetProfile::from_sizes(int p, std::vector<int> sizes) {
  if (static_cast<int>(sizes.size()) != p)
    throw usage_error("CosetProfile: need exactly p sizes");
  for (int s : sizes)
    if (s < 0 || s > p) throw usage_error("CosetProfile: size out of [0, p]");
  int mx = *std::max_element(sizes.begin(), sizes.end());
  std::vector<int> best;
  for (int c = 0; c < p; ++c) {
    if (sizes[c] != mx) continue;
    std::vector<int> rot(p);
    for (int i = 0; i < p; ++i) rot[i] = sizes[(i + c) % p];
    if (best.empty() || rot > best) best = std::move(rot);
  }
  return CosetProfile(p, std::move(best));
}

int CosetProfile::nonzero_tail() const {
  int m = 0;
  for (int i = 1; i < p_; ++i)
    if (sizes_[i] > 0) ++m;
  return m;
}

std::string CosetProfile::to_string() const {
  std::string s = "p=" + std::to_string(p_) + " sizes=[";
  for (int i = 0; i < p_; ++i) {
    if (i) s += ",";
    s += std::to_string(sizes_[i]);
  }
  return s + "]";
}

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Case1A: return "1A";
    case CaseTag::Case1B: return "1B";
    case CaseTag::Case2: return "2";
  }
  return "?";
}

CaseTag classify(const CosetProfile& profile) {
  int p = profile.p();
  if (profile.max_size() >= (p + 3) / 2) return CaseTag::Case2;
  return profile.nonzero_tail() >= (p + 1) / 2 ? CaseTag::Case1A
                                               : CaseTag::Case1B;
}

int CountVector::total() const {
  int t = 0;
  for (int w = 0; w <= p; ++w) t += w * c[w];
  return t;
}

CountVector count_vector(const CosetProfile& profile) {
  CountVector cv;
  cv.p = profile.p();
  cv.c.assign(cv.p + 1, 0);
  for (int s : profile.sizes()) ++cv.c[s];
  return cv;
}

std::string to_string(LemmaTag t) {
  switch (t) {
    case LemmaTag::L2_1: return "L2.1";
    case LemmaTag::L2_3_5_combo: return "L2.3-2.5-combo";
    case LemmaTag::EQ1_SUM: return "EQ1-SUM";
    case LemmaTag::L3_2: return "L3.2";
    case LemmaTag::L3_3: return "L3.3";
    case LemmaTag::L3_4: return "L3.4";
    case LemmaTag::L3_5: return "L3.5";
    case LemmaTag::L3_6: return "L3.6";
    case LemmaTag::L3_8: return "L3.8";
    case LemmaTag::L3_10: return "L3.10";
  }
  return "?";
}

int pairwise_block_bound(const CosetProfile& profile, int i) {
  return pairwise_block_bound(profile.sizes(), i, profile.p());
}

BoundCertificate eq1_sum_bound(const CosetProfile& profile) {
  int v = 0;
  for (int i = 0; i < profile.p(); ++i) v += pairwise_block_bound(profile, i);
  return {v, LemmaTag::EQ1_SUM, profile.to_string()};
}

BoundCertificate lemma_2_1_bound(const CosetProfile& profile) {
  CaseTag tag = classify(profile);
  if (tag == CaseTag::Case2)
    throw usage_error("lemma_2_1_bound: Case 1 only");
  int p = profile.p();
  int a0 = profile.max_size();
  int m = profile.nonzero_tail();
  // |B_0| >= 2|A_0|-3 and |B_i| >= |A_0|+|A_i|-1 for i in S; Case 1 keeps
  // every pair sum below p so no cap is needed on the S terms.
  int v = min0_capped(2 * a0 - 3, p);
  for (int i = 1; i < p; ++i)
    if (profile.sizes()[i] > 0) v += a0 + profile.sizes()[i] - 1;
  int tail = (tag == CaseTag::Case1A) ? (p - m - 1) : std::max(0, m - 2);
  v += tail;
  std::ostringstream in;
  in << "A0=" << a0 << " m=" << m << " tail=" << tail;
  return {v, LemmaTag::L2_1, in.str()};
}

BoundCertificate case1a_dprime_bounds(const CountVector& counts) {
  int p = counts.p;
  for (int w = 4; w <= p; ++w)
    if (counts.c[w] > 0)
      throw usage_error("case1a_dprime_bounds: requires max block size 3");
  if (counts.c[3] == 0)
    throw usage_error("case1a_dprime_bounds: requires a block of size 3");
  int c1 = counts.c[1], c2 = counts.c[2], c3 = counts.c[3];
  int m = c1 + c2 + c3 - 1;
  if (m < (p + 1) / 2)
    throw usage_error("case1a_dprime_bounds: Case 1A only");
  int d3 = min0_capped(2 * c3 + c2 + c1 - 1, p);
  int d4 = min0_capped(c3 + c2 - 1, p);
  int d5 = min0_capped(2 * c3 - 3, p);
  // D'_1 = p in Case 1A and D'_2 >= D'_3.
  int v = p + d3 + d3 + d4 + d5;
  std::ostringstream in;
  in << "C3=" << c3 << " C2=" << c2 << " C1=" << c1 << " D'3>=" << d3
     << " D'4>=" << d4 << " D'5>=" << d5;
  return {v, LemmaTag::L2_3_5_combo, in.str()};
}

BoundCertificate case2_bound(const CosetProfile& profile) {
  if (classify(profile) != CaseTag::Case2)
    throw usage_error("case2_bound: Case 2 only");
  int p = profile.p();
  const auto& sizes = profile.sizes();
  int a0 = sizes[0];
  int l = 0, s = 0;
  for (int i = 1; i < p; ++i) {
    if (sizes[i] == 0) continue;
    if (a0 + sizes[i] - 1 >= p) ++l; else ++s;
  }
  // Blocks over S_0: B_0 is full (Lemma 3.1 regime), l-blocks are full, and
  // each s-block gets the Cauchy-Davenport pairing with A_0.
  int v = (l + 1) * p;
  for (int i = 1; i < p; ++i)
    if (sizes[i] > 0 && a0 + sizes[i] - 1 < p) v += a0 + sizes[i] - 1;
  // Tail: indices reachable as block sums but outside S_0 have nonempty B_i.
  std::vector<bool> in_s0(p, false), reachable(p, false);
  in_s0[0] = true;
  for (int i = 1; i < p; ++i) in_s0[i] = sizes[i] > 0;
  for (int j = 0; j < p; ++j) {
    if (!in_s0[j]) continue;
    for (int k = j; k < p; ++k) {
      if (!in_s0[k]) continue;
      if (j == k && sizes[j] < 2) continue;
      reachable[(j + k) % p] = true;
    }
  }
  for (int i = 0; i < p; ++i)
    if (reachable[i] && !in_s0[i]) v += pairwise_block_bound(profile, i);

  LemmaTag tag = LemmaTag::L3_2;
  if (l >= 3) tag = LemmaTag::L3_3;
  else if (l == 2) tag = s >= 2 ? LemmaTag::L3_4
                                : (s == 1 ? LemmaTag::L3_5 : LemmaTag::L3_6);
  else if (l == 1 && s == 2) tag = LemmaTag::L3_8;
  else if (l == 0) tag = LemmaTag::L3_10;
  std::ostringstream in;
  in << "l=" << l << " s=" << s << " A0=" << a0;
  return {v, tag, in.str()};
}

BoundCertificate profile_lower_bound(const CosetProfile& profile) {
  BoundCertificate best = eq1_sum_bound(profile);
  auto consider = [&](const BoundCertificate& c) {
    if (c.value > best.value) best = c;
  };
  CaseTag tag = classify(profile);
  if (tag != CaseTag::Case2) {
    consider(lemma_2_1_bound(profile));
    if (tag == CaseTag::Case1A && profile.max_size() == 3)
      consider(case1a_dprime_bounds(count_vector(profile)));
  } else {
    consider(case2_bound(profile));
  }
  return best;
}

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

int completion_min(int p, std::vector<int>& sizes, int coset, int remaining,
                   int best_so_far) {
  if (best_so_far == 0) return 0;
  if (coset == p) {
    if (remaining != 0) return best_so_far;
    return std::min(best_so_far,
                    profile_lower_bound(CosetProfile::from_sizes(p, sizes)).value);
  }
  // Capacity left in later cosets limits how few we may place here.
  int cap_here = p - sizes[coset];
  int cap_later = 0;
  for (int j = coset + 1; j < p; ++j) cap_later += p - sizes[j];
  int lo = std::max(0, remaining - cap_later);
  int hi = std::min(cap_here, remaining);
  for (int add = lo; add <= hi; ++add) {
    sizes[coset] += add;
    best_so_far = completion_min(p, sizes, coset + 1, remaining - add,
                                 best_so_far);
    sizes[coset] -= add;
    if (best_so_far == 0) break;
  }
  return best_so_far;
}

}  // namespace

int completion_lower_bound(int p, const std::vector<int>& raw_sizes,
                           int remaining) {
  if (static_cast<int>(raw_sizes.size()) != p)
    throw usage_error("completion_lower_bound: need exactly p sizes");
  if (remaining < 0) throw usage_error("completion_lower_bound: remaining < 0");
  static std::mutex mu;
  static std::unordered_map<std::vector<int>, int, VecHash> cache;
  std::vector<int> key = raw_sizes;
  key.push_back(remaining);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<int> sizes = raw_sizes;
  int v = completion_min(p, sizes, 0, remaining, std::numeric_limits<int>::max());
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), v);
  }
  return v;
}

std::string render(const CosetProfile& profile, const BoundCertificate& cert) {
  std::ostringstream os;
  os << profile.to_string() << " case=" << to_string(classify(profile))
     << " bound=" << cert.value << " lemma=" << to_string(cert.lemma);
  return os.str();
}

}  // namespace sumsetlab
