#include "sumsetlab/group.hpp"

#include <algorithm>

namespace sumsetlab {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {
constexpr int kMaxOrder = 1 << 20;
}

Modulus::Modulus(int p, int r) : p_(p), r_(r) {
  if (!is_prime(p) || p < 3 || p % 2 == 0)
    throw usage_error("Modulus: p must be an odd prime >= 3, got " +
                      std::to_string(p));
  if (p > 61)
    throw usage_error("Modulus: p must fit in one machine word per row (p <= 61)");
  if (r < 1) throw usage_error("Modulus: rank must be >= 1");
  long long n = 1;
  for (int i = 0; i < r; ++i) {
    n *= p;
    if (n > kMaxOrder)
      throw usage_error("Modulus: p^r too large for bit-vector addressing");
  }
  order_ = static_cast<int>(n);
}

GroupElement::GroupElement(const Modulus& m, std::vector<int> coords)
    : mod_(m), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != m.r())
    throw usage_error("GroupElement: coordinate count must equal rank");
  flat_ = 0;
  int scale = 1;
  for (int i = 0; i < m.r(); ++i) {
    int c = coords_[i] % m.p();
    if (c < 0) c += m.p();
    coords_[i] = c;
    flat_ += c * scale;
    scale *= m.p();
  }
}

GroupElement GroupElement::from_flat(const Modulus& m, int flat) {
  if (flat < 0 || flat >= m.order())
    throw usage_error("GroupElement: flat index out of range");
  std::vector<int> c(m.r());
  for (int i = 0; i < m.r(); ++i) {
    c[i] = flat % m.p();
    flat /= m.p();
  }
  return GroupElement(m, std::move(c));
}

GroupElement GroupElement::zero(const Modulus& m) {
  return GroupElement(m, std::vector<int>(m.r(), 0));
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (mod_ != o.mod_) throw usage_error("GroupElement: mismatched moduli");
  std::vector<int> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return GroupElement(mod_, std::move(c));
}

GroupElement GroupElement::operator-() const {
  std::vector<int> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return GroupElement(mod_, std::move(c));
}

GroupElement GroupElement::operator-(const GroupElement& o) const {
  return *this + (-o);
}

GroupElement GroupElement::scaled(int k) const {
  k %= mod_.p();
  std::vector<int> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * k;
  return GroupElement(mod_, std::move(c));
}

std::string GroupElement::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

Subgroup::Subgroup(const Modulus& m, const GroupElement& generator)
    : mod_(m), gen_(generator) {
  if (m.r() != 2)
    throw usage_error("Subgroup: only rank 2 is supported");
  if (generator.modulus() != m || generator.is_zero())
    throw usage_error("Subgroup: generator must be a nonzero element");
  members_.reserve(m.p());
  for (int k = 0; k < m.p(); ++k) members_.push_back(gen_.scaled(k).flat());
  std::sort(members_.begin(), members_.end());

  // Functional vanishing on <gen>: f0 = -gy, f1 = gx.
  int p = m.p();
  int gx = gen_.coords()[0], gy = gen_.coords()[1];
  int f0 = (p - gy) % p, f1 = gx % p;
  // Scale so the smallest flat index outside the subgroup gets label 1.
  int g0 = 0;
  while (std::binary_search(members_.begin(), members_.end(), g0)) ++g0;
  int v = (f0 * (g0 % p) + f1 * (g0 / p)) % p;
  // v != 0 since the functional's kernel is exactly the subgroup.
  int vinv = 1;
  for (int k = 1; k < p; ++k)
    if (v * k % p == 1) { vinv = k; break; }
  f0_ = f0 * vinv % p;
  f1_ = f1 * vinv % p;
}

bool Subgroup::contains_flat(int flat) const {
  return std::binary_search(members_.begin(), members_.end(), flat);
}

int Subgroup::coset_index_flat(int flat) const {
  int p = mod_.p();
  int x = flat % p, y = flat / p;
  return (f0_ * x + f1_ * y) % p;
}

CosetIndex Subgroup::coset_index(const GroupElement& x) const {
  if (x.modulus() != mod_) throw usage_error("coset_index: mismatched moduli");
  return CosetIndex{coset_index_flat(x.flat())};
}

std::vector<int> Subgroup::coset_flats(int i) const {
  std::vector<int> out;
  out.reserve(mod_.p());
  for (int f = 0; f < mod_.order(); ++f)
    if (coset_index_flat(f) == ((i % mod_.p()) + mod_.p()) % mod_.p())
      out.push_back(f);
  return out;
}

bool Subgroup::operator==(const Subgroup& o) const {
  return mod_ == o.mod_ && members_ == o.members_;
}

std::vector<Subgroup> all_subgroups(const Modulus& m) {
  if (m.r() != 2) throw usage_error("all_subgroups: rank 2 only");
  std::vector<Subgroup> out;
  out.reserve(m.p() + 1);
  out.emplace_back(m, GroupElement(m, {1, 0}));
  for (int c = 0; c < m.p(); ++c)
    out.emplace_back(m, GroupElement(m, {c, 1}));
  return out;
}

}  // namespace sumsetlab
