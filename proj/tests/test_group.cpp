#include "doctest.h"

#include <set>

#include "sumsetlab/group.hpp"

#include "oracle.hpp"

using namespace sumsetlab;

TEST_CASE("modulus validation") {
  CHECK_NOTHROW(Modulus(3, 1));
  CHECK_NOTHROW(Modulus(61, 2));
  CHECK_THROWS_AS(Modulus(2, 1), usage_error);   // p must be odd
  CHECK_THROWS_AS(Modulus(4, 1), usage_error);   // composite
  CHECK_THROWS_AS(Modulus(9, 2), usage_error);   // composite
  CHECK_THROWS_AS(Modulus(63, 1), usage_error);  // composite and > 61
  CHECK_THROWS_AS(Modulus(67, 1), usage_error);  // word width
  CHECK_THROWS_AS(Modulus(5, 0), usage_error);
  CHECK_THROWS_AS(Modulus(5, 9), usage_error);   // 5^9 > 2^20
  CHECK(Modulus(5, 2).order() == 25);
  CHECK(Modulus(7, 1).order() == 7);
}

TEST_CASE("is_prime") {
  std::set<int> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                          47, 53, 59, 61};
  for (int n = -3; n <= 62; ++n) CHECK(is_prime(n) == (primes.count(n) > 0));
}

TEST_CASE("element arithmetic matches the reference") {
  std::mt19937_64 rng(7);
  for (auto [p, r] : {std::pair{5, 2}, {7, 2}, {11, 1}, {3, 2}}) {
    Modulus m(p, r);
    std::uniform_int_distribution<int> pick(0, m.order() - 1);
    for (int t = 0; t < 300; ++t) {
      int fa = pick(rng), fb = pick(rng);
      GroupElement a = GroupElement::from_flat(m, fa);
      GroupElement b = GroupElement::from_flat(m, fb);
      CHECK(a.flat() == fa);
      CHECK((a + b).flat() == oracle::add_flat(fa, fb, p, r));
      CHECK((a - b) + b == a);
      CHECK((-a) + a == GroupElement::zero(m));
      int k = pick(rng) - p;
      GroupElement s = GroupElement::zero(m);
      for (int i = 0; i < ((k % m.order()) + m.order()) % m.order(); ++i)
        s = s + a;
      CHECK(a.scaled(k) == s);
    }
  }
}

TEST_CASE("subgroup coset labeling is a homomorphism") {
  for (int p : {3, 5, 7}) {
    Modulus m(p, 2);
    for (const Subgroup& h : all_subgroups(m)) {
      CHECK(static_cast<int>(h.member_flats().size()) == p);
      CHECK(h.contains_flat(0));
      for (int f : h.member_flats()) CHECK(h.coset_index_flat(f) == 0);
      for (int x = 0; x < m.order(); ++x)
        for (int y = 0; y < m.order(); ++y) {
          int sum = oracle::add_flat(x, y, p, 2);
          CHECK(h.coset_index_flat(sum) ==
                (h.coset_index_flat(x) + h.coset_index_flat(y)) % p);
        }
    }
  }
}

TEST_CASE("coset labeling anchor: smallest outside element gets label 1") {
  Modulus m(5, 2);
  // For <(1,0)> the smallest element outside is (0,1) = flat 5; its label is 1
  // and the label of (x,y) is y.
  Subgroup h(m, GroupElement(m, {1, 0}));
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      CHECK(h.coset_index(GroupElement(m, {x, y})).i == y);
  for (const Subgroup& any : all_subgroups(m)) {
    int smallest_outside = -1;
    for (int f = 0; f < m.order(); ++f)
      if (!any.contains_flat(f)) {
        smallest_outside = f;
        break;
      }
    CHECK(any.coset_index_flat(smallest_outside) == 1);
  }
}

TEST_CASE("coset_flats partitions the group") {
  Modulus m(7, 2);
  for (const Subgroup& h : all_subgroups(m)) {
    std::set<int> seen;
    for (int i = 0; i < 7; ++i) {
      auto fl = h.coset_flats(i);
      CHECK(fl.size() == 7);
      for (int f : fl) {
        CHECK(h.coset_index_flat(f) == i);
        CHECK(seen.insert(f).second);
      }
    }
    CHECK(static_cast<int>(seen.size()) == m.order());
  }
}

TEST_CASE("the p+1 subgroups are distinct and intersect only at zero") {
  for (int p : {3, 5, 7, 11}) {
    Modulus m(p, 2);
    auto subs = all_subgroups(m);
    CHECK(static_cast<int>(subs.size()) == p + 1);
    for (size_t i = 0; i < subs.size(); ++i)
      for (size_t j = i + 1; j < subs.size(); ++j) {
        CHECK(!(subs[i] == subs[j]));
        std::set<int> a(subs[i].member_flats().begin(),
                        subs[i].member_flats().end());
        int common = 0;
        for (int f : subs[j].member_flats()) common += a.count(f);
        CHECK(common == 1);  // only the identity
      }
  }
}

TEST_CASE("mixed-modulus operations are rejected") {
  Modulus m5(5, 2), m7(7, 2);
  GroupElement a(m5, {1, 2}), b(m7, {1, 2});
  CHECK_THROWS_AS(a + b, usage_error);
  CHECK_THROWS_AS(Subgroup(m5, GroupElement::zero(m5)), usage_error);
  CHECK_THROWS_AS(GroupElement(m5, {1, 2, 3}), usage_error);
  CHECK_THROWS_AS(GroupElement::from_flat(m5, 25), usage_error);
  CHECK_THROWS_AS(GroupElement::from_flat(m5, -1), usage_error);
}
