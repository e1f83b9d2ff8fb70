#include "sumsetlab/structures.hpp"

#include <algorithm>
#include <numeric>

namespace sumsetlab {

MuSequence::MuSequence(const Modulus& m, GroupElement d_, GroupElement a1_,
                       std::vector<int> mu_)
    : mod(m), d(std::move(d_)), a1(std::move(a1_)), mu(std::move(mu_)) {
  if (m.r() != 2) throw usage_error("MuSequence: rank 2 only");
  if (d.is_zero()) throw usage_error("MuSequence: d must be nonzero");
  if (static_cast<int>(mu.size()) != m.p() - 2)
    throw usage_error("MuSequence: mu must cover indices 2..p-1");
  if (mu[0] < -2 || mu[0] > 1)
    throw usage_error("MuSequence: mu_2 must lie in [-2, 1]");
  for (size_t k = 1; k < mu.size(); ++k)
    if (mu[k] != 0 && mu[k] != 1)
      throw usage_error("MuSequence: mu_i must lie in {0, 1} for i >= 3");
  if (std::accumulate(mu.begin(), mu.end(), 0) != 1)
    throw usage_error("MuSequence: mu entries must sum to 1");
  Subgroup h(m, d);
  if (h.coset_index(a1).i != 1)
    throw usage_error("MuSequence: a1 must lie in coset 1 of <d>");
}

Subgroup mu_subgroup(const MuSequence& seq) {
  return Subgroup(seq.mod, seq.d);
}

PointSet build_mu_set(const MuSequence& seq) {
  const Modulus& m = seq.mod;
  std::vector<int> flats;
  flats.push_back(0);
  flats.push_back(seq.d.flat());
  flats.push_back(seq.d.scaled(2).flat());
  GroupElement ai = seq.a1;
  for (int i = 1; i < m.p(); ++i) {
    flats.push_back(ai.flat());
    flats.push_back((ai + seq.d).flat());
    if (i + 1 < m.p())
      ai = seq.a1 + ai + seq.d.scaled(seq.mu[i - 1]);  // mu[i-1] is mu_{i+1}
  }
  return PointSet(m, flats);
}

std::vector<MuSequence> enumerate_mu_sequences(const Modulus& m) {
  if (m.r() != 2) throw usage_error("enumerate_mu_sequences: rank 2 only");
  int p = m.p();
  Subgroup h(m, GroupElement(m, {1, 0}));
  // Admissible mu vectors: mu_2 in [-2, 1], mu_i in {0, 1}, sum = 1.
  std::vector<std::vector<int>> mus;
  int tail = p - 3;
  for (int mu2 = -2; mu2 <= 1; ++mu2) {
    int ones = 1 - mu2;
    if (ones < 0 || ones > tail) continue;
    std::vector<int> pick(tail, 0);
    std::fill(pick.begin(), pick.begin() + ones, 1);
    std::sort(pick.begin(), pick.end());
    do {
      std::vector<int> mu;
      mu.push_back(mu2);
      mu.insert(mu.end(), pick.begin(), pick.end());
      mus.push_back(std::move(mu));
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  std::vector<MuSequence> out;
  for (int k = 1; k < p; ++k) {
    GroupElement d = GroupElement(m, {1, 0}).scaled(k);
    for (int off = 0; off < p; ++off) {
      // Coset 1 of <(1,0)> is labeled by the second coordinate.
      GroupElement a1(m, {off, 1});
      if (h.coset_index(a1).i != 1) throw usage_error("unexpected coset label");
      for (const auto& mu : mus) out.emplace_back(m, d, a1, mu);
    }
  }
  return out;
}

bool Lemma213Report::all_claims() const {
  return std::all_of(claims.begin(), claims.end(), [](bool b) { return b; });
}

Lemma213Report check_lemma_2_13(const PointSet& a, const Subgroup& h,
                                const GroupElement& d) {
  const Modulus& m = a.modulus();
  if (m != h.modulus() || m != d.modulus())
    throw usage_error("check_lemma_2_13: mismatched moduli");
  if (d.is_zero() || !h.contains_flat(d.flat()))
    throw usage_error("check_lemma_2_13: d must be a nonzero element of H");
  int p = m.p();

  // Shape: A_0 = {0, d, 2d}; each other A_i a d-difference pair {a_i, a_i+d}.
  std::vector<std::vector<int>> blocks(p);
  for (int f : a.elements()) blocks[h.coset_index_flat(f)].push_back(f);
  std::vector<int> a0_want = {0, d.flat(), d.scaled(2).flat()};
  std::sort(a0_want.begin(), a0_want.end());
  if (blocks[0] != a0_want)
    throw usage_error("check_lemma_2_13: A_0 must be {0, d, 2d}");
  std::vector<GroupElement> ai;  // ai[i] for i = 1..p-1
  ai.reserve(p);
  ai.push_back(GroupElement::zero(m));  // placeholder for index 0
  for (int i = 1; i < p; ++i) {
    if (blocks[i].size() != 2)
      throw usage_error("check_lemma_2_13: each A_i must have 2 points");
    GroupElement x = GroupElement::from_flat(m, blocks[i][0]);
    GroupElement y = GroupElement::from_flat(m, blocks[i][1]);
    if (y == x + d) ai.push_back(x);
    else if (x == y + d) ai.push_back(y);
    else throw usage_error("check_lemma_2_13: A_i must be a d-difference pair");
  }

  Lemma213Report rep;
  PointSet dr = double_restricted(a);
  rep.restricted_size = dr.size();
  std::vector<std::vector<int>> bblocks(p);
  for (int f : dr.elements()) bblocks[h.coset_index_flat(f)].push_back(f);

  // Claim 1: B_i = {a_i, a_i+d, a_i+2d, a_i+3d} for i != 0.
  rep.claims[0] = true;
  for (int i = 1; i < p && rep.claims[0]; ++i) {
    std::vector<int> want;
    for (int k = 0; k < 4; ++k) want.push_back((ai[i] + d.scaled(k)).flat());
    std::sort(want.begin(), want.end());
    rep.claims[0] = bblocks[i] == want;
  }
  // Claim 2: a_j + a_{i-j} in A_i for nonzero i, j with j != i-j.
  rep.claims[1] = true;
  for (int i = 1; i < p && rep.claims[1]; ++i)
    for (int j = 1; j < p; ++j) {
      int k = (i - j + p) % p;
      if (k == 0 || k == j) continue;
      GroupElement s = ai[j] + ai[k];
      if (s != ai[i] && s != ai[i] + d) { rep.claims[1] = false; break; }
    }
  // Claim 3: a_{2i} = 2 a_i + delta d with delta in {-2, -1, 0, 1}.
  rep.claims[2] = true;
  for (int i = 1; i < p && rep.claims[2]; ++i) {
    GroupElement diff = ai[2 * i % p] - ai[i].scaled(2);
    bool ok = false;
    for (int delta : {-2, -1, 0, 1})
      if (diff == d.scaled(delta)) { ok = true; break; }
    rep.claims[2] = ok;
  }
  // Claim 4: B_0 = {d, 2d, 3d}.
  {
    std::vector<int> want = {d.flat(), d.scaled(2).flat(), d.scaled(3).flat()};
    std::sort(want.begin(), want.end());
    rep.claims[3] = bblocks[0] == want;
  }
  // Claim 5: a_i + a_{-i} = d.
  rep.claims[4] = true;
  for (int i = 1; i < p && rep.claims[4]; ++i)
    rep.claims[4] = ai[i] + ai[p - i] == d;

  rep.implication_holds = rep.restricted_size >= 4 * p || rep.all_claims();
  return rep;
}

ExtremalTemplate::ExtremalTemplate(TemplateKind kind_, Subgroup z_,
                                   std::vector<int> full_cosets_,
                                   GroupElement extra_)
    : kind(kind_), z(std::move(z_)), full_cosets(std::move(full_cosets_)),
      extra(std::move(extra_)) {
  int p = z.modulus().p();
  size_t want = kind == TemplateKind::EkPPlus1 ? 1 : 2;
  if (full_cosets.size() != want)
    throw usage_error("ExtremalTemplate: wrong number of full cosets");
  for (int& c : full_cosets) c = ((c % p) + p) % p;
  int ce = z.coset_index(extra).i;
  for (int c : full_cosets)
    if (c == ce)
      throw usage_error("ExtremalTemplate: extra point inside a named coset");
  if (kind == TemplateKind::Conj43) {
    if (full_cosets[0] == full_cosets[1])
      throw usage_error("ExtremalTemplate: full cosets must be distinct");
    // The three quotient indices must form a three-term progression.
    int x = full_cosets[0], y = full_cosets[1];
    auto is0 = [&](int v) { return ((v % p) + p) % p == 0; };
    if (!(is0(2 * x - y - ce) || is0(2 * y - x - ce) || is0(2 * ce - x - y)))
      throw usage_error(
          "ExtremalTemplate: quotient image is not a 3-term progression");
  }
}

ExtremalTemplate default_ek_template(const Modulus& m) {
  Subgroup z(m, GroupElement(m, {1, 0}));
  return ExtremalTemplate(TemplateKind::EkPPlus1, z, {0},
                          GroupElement(m, {0, 1}));
}

ExtremalTemplate default_conj43_template(const Modulus& m) {
  Subgroup z(m, GroupElement(m, {1, 0}));
  return ExtremalTemplate(TemplateKind::Conj43, z, {0, 1},
                          GroupElement(m, {0, 2}));
}

PointSet build_extremal(const ExtremalTemplate& t) {
  std::vector<int> flats;
  for (int c : t.full_cosets)
    for (int f : t.z.coset_flats(c)) flats.push_back(f);
  flats.push_back(t.extra.flat());
  return PointSet(t.z.modulus(), flats);
}

namespace {

std::optional<std::pair<Subgroup, GroupElement>> match_profile_shape(
    const PointSet& a, bool conj43) {
  const Modulus& m = a.modulus();
  if (m.r() != 2) return std::nullopt;
  int p = m.p();
  for (const Subgroup& z : all_subgroups(m)) {
    std::vector<int> sizes(p, 0);
    int singleton_flat = -1;
    for (int f : a.elements()) {
      int c = z.coset_index_flat(f);
      ++sizes[c];
    }
    int fulls = 0, singles = 0, single_idx = -1;
    bool other = false;
    std::vector<int> full_idx;
    for (int i = 0; i < p; ++i) {
      if (sizes[i] == p) { ++fulls; full_idx.push_back(i); }
      else if (sizes[i] == 1) { ++singles; single_idx = i; }
      else if (sizes[i] != 0) other = true;
    }
    int want_fulls = conj43 ? 2 : 1;
    if (other || fulls != want_fulls || singles != 1) continue;
    if (conj43) {
      int x = full_idx[0], y = full_idx[1], e = single_idx;
      auto is0 = [&](int v) { return ((v % p) + p) % p == 0; };
      if (!(is0(2 * x - y - e) || is0(2 * y - x - e) || is0(2 * e - x - y)))
        continue;
    }
    for (int f : a.elements())
      if (z.coset_index_flat(f) == single_idx) { singleton_flat = f; break; }
    return std::make_pair(z, GroupElement::from_flat(m, singleton_flat));
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Subgroup, GroupElement>> matches_conjecture_4_3(
    const PointSet& a) {
  if (a.size() != 2 * a.modulus().p() + 1) return std::nullopt;
  return match_profile_shape(a, /*conj43=*/true);
}

std::optional<std::pair<Subgroup, GroupElement>> matches_theorem_4_2(
    const PointSet& a) {
  if (a.size() != a.modulus().p() + 1) return std::nullopt;
  return match_profile_shape(a, /*conj43=*/false);
}

}  // namespace sumsetlab
