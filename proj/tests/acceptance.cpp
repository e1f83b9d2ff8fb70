// Acceptance gate: each numbered check prints exactly one PASS/FAIL line and
// the binary exits nonzero if any fail. Fixed seeds keep reruns identical.
#include <algorithm>
#include <cstdio>
#include <random>
#include <vector>

#include "sumsetlab/bounds.hpp"
#include "sumsetlab/profiles.hpp"
#include "sumsetlab/search.hpp"
#include "sumsetlab/structures.hpp"

#include "oracle.hpp"

using namespace sumsetlab;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
  if (!ok) ++failures;
}

PointSet from(const Modulus& m, const std::vector<int>& flats) {
  return PointSet(m, std::span<const int>(flats));
}

// 1. rank-1 table: rho = min(2m-3, p) for p in {5,7,11}, 2 <= m <= p.
void criterion_1() {
  bool ok = true;
  for (int p : {5, 7, 11})
    for (int m = 2; m <= p && ok; ++m) {
      SearchConfig c;
      c.p = p;
      c.r = 1;
      c.m = m;
      c.strategy = Strategy::Exhaustive;
      SearchWitness w = rho(c);
      ok = w.complete && w.best_value == std::min(2 * m - 3, p);
    }
  report(1, ok, "rank-1 minima equal min(2m-3, p) for p in {5,7,11}");
}

// 2. Z_5^2 table for m = 3..6. The classical 2m-3 value holds for
// m <= (p+3)/2 = 4; at m = p the full subgroup coset is closed under
// restricted doubling and gives p = 5 (strictly below 2m-3 = 7), and each
// search value is re-confirmed by the naive brute-force oracle.
void criterion_2() {
  const int expected[] = {3, 5, 5, 10};
  bool ok = true;
  for (int m = 3; m <= 6; ++m) {
    SearchConfig c;
    c.p = 5;
    c.r = 2;
    c.m = m;
    c.strategy = Strategy::Orbit;
    SearchWitness w = rho(c);
    ok = ok && w.complete && w.best_value == expected[m - 3] &&
         oracle::brute_rho(5, 2, m) == expected[m - 3];
  }
  report(2, ok, "Z_5^2 minima for m=3..6 are 3,5,5,10: 2m-3 up to m=4, the "
                "closed subgroup coset value 5 at m=p, then 10 at m=p+1");
}

// 3. p=5 theorem: complete verification, minimum exactly 20.
void criterion_3() {
  VerificationOptions opt;
  opt.threads = 8;
  VerificationReport rep = verify_theorem_1_4(5, opt);
  bool ok = rep.verified && rep.lower.complete && rep.lower.best_value == 20 &&
            rep.attainment_value == 20;
  report(3, ok, "p=5: minimum over all 11-subsets is exactly 20 (complete)");
}

// 4. p=7 theorem, attainment half plus sampling and pruning audit.
void criterion_4() {
  Modulus m(7, 2);
  PointSet witness = build_extremal(default_conj43_template(m));
  bool attain = double_restricted_size(witness) == 28;

  std::mt19937_64 rng(20240704);
  bool sampled = true;
  for (int t = 0; t < 1'000'000 && sampled; ++t) {
    auto flats = oracle::random_subset(rng, 49, 15);
    sampled = double_restricted_size(from(m, flats)) >= 28;
  }

  bool audit = true;
  for (auto [p, mm] : {std::pair{3, 6}, {3, 8}, {5, 7}, {5, 9}}) {
    SearchConfig c;
    c.p = p;
    c.r = 2;
    c.m = mm;
    c.strategy = Strategy::BnB;
    c.audit_pruning = true;
    SearchWitness w = rho(c);
    audit = audit && w.complete && w.audit_failures == 0;
  }
  report(4, attain && sampled && audit,
         "p=7: attainment 28, 10^6 random 15-subsets >= 28, pruning audit "
         "clean (full p=7 completeness not attempted at desk scale)");
}

// 5. CD and DSH soundness: exhaustive Z_5, random for larger primes.
void criterion_5() {
  bool ok = true;
  for (int maska = 1; maska < 32 && ok; ++maska)
    for (int maskb = 1; maskb < 32 && ok; ++maskb) {
      std::vector<int> fa, fb;
      for (int i = 0; i < 5; ++i) {
        if (maska & (1 << i)) fa.push_back(i);
        if (maskb & (1 << i)) fb.push_back(i);
      }
      int sum = static_cast<int>(oracle::naive_sumset(fa, fb, 5, 1).size());
      int res = static_cast<int>(oracle::naive_restricted(fa, fb, 5, 1).size());
      ok = sum >= cd_bound((int)fa.size(), (int)fb.size(), 5).value &&
           res >= dsh_bound((int)fa.size(), (int)fb.size(), 5,
                            fa.size() != fb.size()).value;
    }
  std::mt19937_64 rng(5);
  for (int p : {7, 11, 13}) {
    std::uniform_int_distribution<int> size(1, p);
    for (int t = 0; t < 100'000 && ok; ++t) {
      auto fa = oracle::random_subset(rng, p, size(rng));
      auto fb = oracle::random_subset(rng, p, size(rng));
      int sum = static_cast<int>(oracle::naive_sumset(fa, fb, p, 1).size());
      int res = static_cast<int>(oracle::naive_restricted(fa, fb, p, 1).size());
      ok = sum >= cd_bound((int)fa.size(), (int)fb.size(), p).value &&
           res >= dsh_bound((int)fa.size(), (int)fb.size(), p,
                            fa.size() != fb.size()).value;
    }
  }
  report(5, ok, "CD/DSH inequalities: exhaustive Z_5 pairs plus 10^5 random "
                "pairs each in Z_7, Z_11, Z_13");
}

// 6. profile bounds never exceed the true |2^A|, 10^5 sets per case class.
void criterion_6() {
  bool ok = true;
  std::mt19937_64 rng(6);
  for (int p : {5, 7}) {
    Modulus m(p, 2);
    Subgroup h(m, GroupElement(m, {1, 0}));
    long per_class[3] = {0, 0, 0};
    std::uniform_int_distribution<int> total_pick(2, 2 * p + 3);
    std::uniform_int_distribution<int> coset_pick(0, p - 1);
    while ((per_class[0] < 100'000 || per_class[1] < 100'000 ||
            per_class[2] < 100'000) && ok) {
      // sample a profile first so every class fills, then realize it
      int total = total_pick(rng);
      std::vector<int> sizes(p, 0);
      bool full = false;
      for (int k = 0; k < total && !full; ++k) {
        int c = coset_pick(rng), tries = 0;
        while (sizes[c] == p && tries++ < 4 * p) c = coset_pick(rng);
        if (sizes[c] == p) full = true;
        else ++sizes[c];
      }
      if (full) continue;
      CosetProfile prof = CosetProfile::from_sizes(p, sizes);
      int cls = static_cast<int>(classify(prof));
      if (per_class[cls] >= 100'000) continue;
      ++per_class[cls];
      std::vector<int> flats;
      for (int i = 0; i < p; ++i) {
        auto coset = h.coset_flats(i);
        for (int k = 0; k < sizes[i]; ++k) {
          std::uniform_int_distribution<int> pick(k, p - 1);
          std::swap(coset[k], coset[pick(rng)]);
          flats.push_back(coset[k]);
        }
      }
      PointSet a = from(m, flats);
      int truth = double_restricted_size(a);
      CosetProfile real = CosetProfile::of(a, h);
      ok = profile_lower_bound(real).value <= truth &&
           eq1_sum_bound(real).value <= truth;
      for (int i = 0; i < p && ok; ++i)
        ok = pairwise_block_bound(real, i) <= truth;
      if (!ok) break;
      if (classify(real) != CaseTag::Case2) {
        ok = lemma_2_1_bound(real).value <= truth;
        if (ok && classify(real) == CaseTag::Case1A && real.max_size() == 3)
          ok = case1a_dprime_bounds(count_vector(real)).value <= truth;
      } else {
        ok = case2_bound(real).value <= truth;
      }
    }
  }
  report(6, ok, "profile certificates admissible on 10^5 random sets per "
                "case class at p=5 and p=7");
}

// 7. structural identities: invariance, block partition, telescoping.
void criterion_7() {
  std::mt19937_64 rng(7);
  Modulus m(5, 2);
  bool ok = true;
  std::uniform_int_distribution<int> size(1, 14), pick(0, 24), coef(0, 4);
  for (int t = 0; t < 10'000 && ok; ++t) {
    PointSet a = from(m, oracle::random_subset(rng, 25, size(rng)));
    int v = double_restricted_size(a);
    ok = double_restricted_size(
             translate(a, GroupElement::from_flat(m, pick(rng)))) == v;
    if (!ok) break;
    int l0 = 0, l1 = 0, l2 = 0, l3 = 0;
    do {
      l0 = coef(rng); l1 = coef(rng); l2 = coef(rng); l3 = coef(rng);
    } while ((l0 * l3 - l1 * l2) % 5 == 0);
    AffineMap t2(m, {l0, l1, l2, l3},
                 GroupElement::from_flat(m, pick(rng)));
    ok = double_restricted_size(apply_affine(a, t2)) == v;
  }
  for (int t = 0; t < 1'000 && ok; ++t) {
    PointSet a = from(m, oracle::random_subset(rng, 25, size(rng)));
    PointSet b = double_restricted(a);
    for (const Subgroup& h : all_subgroups(m)) {
      int total = 0;
      for (int i = 0; i < 5; ++i)
        for (int f : h.coset_flats(i)) total += b.contains(f);
      ok = ok && total == b.size();
    }
  }
  std::uniform_int_distribution<int> len(1, 25), val(0, 12);
  for (int t = 0; t < 10'000 && ok; ++t) {
    int n = len(rng);
    std::vector<long long> d(n + 1);
    long long weighted = 0, tele = 0;
    for (int w = 1; w <= n; ++w) {
      d[w] = val(rng);
      weighted += w * d[w];
    }
    for (int w = 1; w <= n; ++w)
      for (int v2 = w; v2 <= n; ++v2) tele += d[v2];
    ok = weighted == tele;
  }
  report(7, ok, "translation/affine invariance, coset partition of 2^A, and "
                "the weighted-count telescoping identity");
}

// 8. mu-family sweep at p=5.
void criterion_8() {
  Modulus m(5, 2);
  auto seqs = enumerate_mu_sequences(m);
  bool ok = seqs.size() == 80;
  for (const MuSequence& seq : seqs) {
    int sum = 0;
    for (int v : seq.mu) sum += v;
    GroupElement ai = seq.a1;
    for (int i = 1; i < 4; ++i)
      ai = seq.a1 + ai + seq.d.scaled(seq.mu[i - 1]);
    ok = ok && sum == 1 && (seq.a1 + ai == seq.d) &&
         double_restricted_size(build_mu_set(seq)) >= 20;
  }
  report(8, ok, "all 80 mu-parameterized sets at p=5 close consistently and "
                "stay at or above 20");
}

// 9. inverse-problem census at p=5.
void criterion_9() {
  auto small = census_minimizers(5, 6, 10);
  bool ok = !small.empty();
  for (const auto& e : small)
    ok = ok && matches_theorem_4_2(e.canonical).has_value();
  auto big = census_minimizers(5, 11, 20);
  ok = ok && !big.empty();
  int matched = 0;
  for (const auto& e : big) matched += e.matches_conj43;
  report(9, ok, "census(5,6,10) is coset-plus-point only; census(5,11,20) "
                "has " + std::to_string(big.size()) + " classes, " +
                std::to_string(matched) +
                " matching the two-coset conjecture shape");
}

// 10. bit-vector kernels vs the naive oracle, 10^5 pairs total.
void criterion_10() {
  std::mt19937_64 rng(10);
  bool ok = true;
  const std::vector<std::pair<int, int>> shapes = {
      {3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}, {11, 2}};
  for (auto [p, r] : shapes) {
    Modulus m(p, r);
    int n = m.order();
    std::uniform_int_distribution<int> size(1, std::min(n, 14));
    for (int t = 0; t < 12'500 && ok; ++t) {
      auto fa = oracle::random_subset(rng, n, size(rng));
      auto fb = oracle::random_subset(rng, n, size(rng));
      PointSet a = from(m, fa), b = from(m, fb);
      auto want_sum = oracle::naive_sumset(fa, fb, p, r);
      auto want_res = oracle::naive_restricted(fa, fb, p, r);
      ok = sumset(a, b).elements() ==
               std::vector<int>(want_sum.begin(), want_sum.end()) &&
           restricted_sumset(a, b).elements() ==
               std::vector<int>(want_res.begin(), want_res.end()) &&
           double_restricted_size(a) ==
               oracle::naive_double_restricted_size(fa, p, r);
    }
  }
  report(10, ok, "kernels agree with the naive oracle on 10^5 random pairs "
                 "across p in {3,5,7,11}, r in {1,2}");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures) std::printf("%d criteria FAILED\n", failures);
  else std::printf("all 10 criteria passed\n");
  return failures ? 1 : 0;
}
