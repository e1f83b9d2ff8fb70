#include "sumsetlab/pointset.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace sumsetlab {

namespace {

inline uint64_t rotl_p(uint64_t w, int s, int p, uint64_t mask) {
  if (s == 0) return w;
  return ((w << s) | (w >> (p - s))) & mask;
}

inline uint64_t row_mask(int p) { return (1ull << p) - 1; }

// Digit-wise addition of row indices in base p (coordinates 1..r-1).
inline int row_add(int a, int b, int p, int nrows) {
  if (nrows <= 1) return 0;
  if (b == 0) return a;
  int out = 0, scale = 1;
  while (scale < nrows) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

// OR the translate of `src` by flat g into `out`.
inline void accumulate_translate(std::vector<uint64_t>& out,
                                 const std::vector<uint64_t>& src, int g,
                                 int p, uint64_t mask) {
  int gx = g % p, grow = g / p;
  int nrows = static_cast<int>(src.size());
  for (int y = 0; y < nrows; ++y)
    out[row_add(y, grow, p, nrows)] |= rotl_p(src[y], gx, p, mask);
}

inline void for_each_flat(const std::vector<uint64_t>& rows, int p, auto&& fn) {
  for (size_t y = 0; y < rows.size(); ++y) {
    uint64_t w = rows[y];
    while (w) {
      fn(static_cast<int>(y) * p + std::countr_zero(w));
      w &= w - 1;
    }
  }
}

}  // namespace

PointSet::PointSet(const Modulus& m)
    : mod_(m), rows_(m.order() / m.p(), 0), card_(0) {}

PointSet::PointSet(const Modulus& m, std::vector<uint64_t> rows)
    : mod_(m), rows_(std::move(rows)), card_(0) {
  recount();
}

PointSet PointSet::from_rows(const Modulus& m, std::vector<uint64_t> rows) {
  return PointSet(m, std::move(rows));
}

PointSet::PointSet(const Modulus& m, std::span<const int> flats) : PointSet(m) {
  int p = m.p();
  for (int f : flats) {
    if (f < 0 || f >= m.order())
      throw usage_error("PointSet: flat index out of range");
    rows_[f / p] |= 1ull << (f % p);
  }
  recount();
}

PointSet::PointSet(const Modulus& m, std::initializer_list<int> flats)
    : PointSet(m, std::span<const int>(flats.begin(), flats.size())) {}

PointSet PointSet::full(const Modulus& m) {
  PointSet s(m);
  uint64_t mask = row_mask(m.p());
  for (auto& w : s.rows_) w = mask;
  s.card_ = m.order();
  return s;
}

void PointSet::recount() {
  int c = 0;
  for (uint64_t w : rows_) c += std::popcount(w);
  card_ = c;
}

bool PointSet::contains(int flat) const {
  return (rows_[flat / mod_.p()] >> (flat % mod_.p())) & 1;
}

std::vector<int> PointSet::elements() const {
  std::vector<int> out;
  out.reserve(card_);
  for_each_flat(rows_, mod_.p(), [&](int f) { out.push_back(f); });
  return out;
}

PointSet PointSet::with(int flat) const {
  PointSet s = *this;
  if (!s.contains(flat)) {
    s.rows_[flat / mod_.p()] |= 1ull << (flat % mod_.p());
    ++s.card_;
  }
  return s;
}

PointSet PointSet::without(int flat) const {
  PointSet s = *this;
  if (s.contains(flat)) {
    s.rows_[flat / mod_.p()] &= ~(1ull << (flat % mod_.p()));
    --s.card_;
  }
  return s;
}

PointSet PointSet::operator|(const PointSet& o) const {
  if (mod_ != o.mod_) throw usage_error("PointSet: mismatched moduli");
  PointSet s = *this;
  for (size_t i = 0; i < rows_.size(); ++i) s.rows_[i] |= o.rows_[i];
  s.recount();
  return s;
}

PointSet PointSet::operator&(const PointSet& o) const {
  if (mod_ != o.mod_) throw usage_error("PointSet: mismatched moduli");
  PointSet s = *this;
  for (size_t i = 0; i < rows_.size(); ++i) s.rows_[i] &= o.rows_[i];
  s.recount();
  return s;
}

PointSet PointSet::minus(const PointSet& o) const {
  if (mod_ != o.mod_) throw usage_error("PointSet: mismatched moduli");
  PointSet s = *this;
  for (size_t i = 0; i < rows_.size(); ++i) s.rows_[i] &= ~o.rows_[i];
  s.recount();
  return s;
}

PointSet PointSet::complement() const {
  PointSet s = *this;
  uint64_t mask = row_mask(mod_.p());
  for (auto& w : s.rows_) w = ~w & mask;
  s.recount();
  return s;
}

bool PointSet::operator==(const PointSet& o) const {
  return mod_ == o.mod_ && rows_ == o.rows_;
}

bool PointSet::lex_less(const PointSet& o) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    uint64_t diff = rows_[i] ^ o.rows_[i];
    if (diff) {
      uint64_t low = diff & (~diff + 1);
      return (rows_[i] & low) != 0;  // owner of the smallest differing index
    }
  }
  return false;
}

std::string PointSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int f : elements()) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(f);
  }
  return s + "}";
}

void PointSet::write_text(std::ostream& os) const {
  os << mod_.p() << " " << mod_.r() << "\n";
  for (int f : elements()) os << f << "\n";
}

PointSet PointSet::read_text(std::istream& is) {
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line)) throw usage_error("set file: empty input");
  ++lineno;
  std::istringstream hdr(line);
  int p = 0, r = 0;
  if (!(hdr >> p >> r))
    throw usage_error("set file: malformed header at line 1 (want \"p r\")");
  Modulus m(p, r);
  std::vector<int> flats;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    int f;
    if (!(ls >> f) || f < 0 || f >= m.order())
      throw usage_error("set file: bad flat index at line " +
                        std::to_string(lineno));
    flats.push_back(f);
  }
  return PointSet(m, flats);
}

std::vector<uint8_t> PointSet::to_bytes() const {
  int n = mod_.order();
  std::vector<uint8_t> out((n + 7) / 8, 0);
  for (int f : elements()) out[f / 8] |= uint8_t(1u << (f % 8));
  return out;
}

PointSet PointSet::from_bytes(const Modulus& m, std::span<const uint8_t> bytes) {
  int n = m.order();
  if (static_cast<int>(bytes.size()) != (n + 7) / 8)
    throw usage_error("pset: byte length does not match p^r");
  std::vector<int> flats;
  for (int f = 0; f < n; ++f)
    if ((bytes[f / 8] >> (f % 8)) & 1) flats.push_back(f);
  return PointSet(m, flats);
}

// --- kernels ---

PointSet translate_flat(const PointSet& a, int gflat) {
  std::vector<uint64_t> rows(a.rows_.size(), 0);
  accumulate_translate(rows, a.rows_, gflat, a.mod_.p(), row_mask(a.mod_.p()));
  return PointSet(a.mod_, std::move(rows));
}

PointSet translate(const PointSet& a, const GroupElement& g) {
  if (a.modulus() != g.modulus())
    throw usage_error("translate: mismatched moduli");
  return translate_flat(a, g.flat());
}

PointSet sumset(const PointSet& a, const PointSet& b) {
  if (a.modulus() != b.modulus())
    throw usage_error("sumset: mismatched moduli");
  int p = a.mod_.p();
  uint64_t mask = row_mask(p);
  std::vector<uint64_t> rows(a.rows_.size(), 0);
  for_each_flat(b.rows_, p,
                [&](int g) { accumulate_translate(rows, a.rows_, g, p, mask); });
  return PointSet(a.mod_, std::move(rows));
}

PointSet restricted_sumset(const PointSet& a, const PointSet& b) {
  if (a.modulus() != b.modulus())
    throw usage_error("restricted_sumset: mismatched moduli");
  int p = a.mod_.p();
  uint64_t mask = row_mask(p);
  std::vector<uint64_t> rows(a.rows_.size(), 0);
  PointSet diag = a & b;
  PointSet aOnly = a.minus(diag);
  // x in A\B pairs with every y in B; x in A∩B pairs with B\{x}.
  for_each_flat(b.rows_, p, [&](int g) {
    accumulate_translate(rows, aOnly.rows_, g, p, mask);
  });
  for_each_flat(diag.rows_, p, [&](int x) {
    PointSet bx = b.without(x);
    accumulate_translate(rows, bx.rows_, x, p, mask);
  });
  return PointSet(a.mod_, std::move(rows));
}

PointSet double_restricted(const PointSet& a) {
  int p = a.mod_.p();
  uint64_t mask = row_mask(p);
  std::vector<uint64_t> rows(a.rows_.size(), 0);
  int nrows = static_cast<int>(rows.size());
  for_each_flat(a.rows_, p, [&](int x) {
    int gx = x % p, grow = x / p;
    int xrow = x / p, xbit = x % p;
    for (int y = 0; y < nrows; ++y) {
      uint64_t w = a.rows_[y];
      if (y == xrow) w &= ~(1ull << xbit);  // exclude the x + x pair
      rows[row_add(y, grow, p, nrows)] |= rotl_p(w, gx, p, mask);
    }
  });
  return PointSet(a.mod_, std::move(rows));
}

int double_restricted_size(const PointSet& a) {
  return double_restricted_size_raw(a.rows(), a.modulus().p());
}

int double_restricted_size_raw(std::span<const uint64_t> src, int p) {
  uint64_t mask = row_mask(p);
  int nrows = static_cast<int>(src.size());
  thread_local std::vector<uint64_t> rows;
  rows.assign(nrows, 0);
  for (int y0 = 0; y0 < nrows; ++y0) {
    uint64_t w0 = src[y0];
    while (w0) {
      int xbit = std::countr_zero(w0);
      w0 &= w0 - 1;
      int grow = y0;
      for (int y = 0; y < nrows; ++y) {
        uint64_t w = src[y];
        if (y == y0) w &= ~(1ull << xbit);
        rows[row_add(y, grow, p, nrows)] |= rotl_p(w, xbit, p, mask);
      }
    }
  }
  int c = 0;
  for (uint64_t w : rows) c += std::popcount(w);
  return c;
}

// --- affine action ---

namespace {

// Determinant over Z_p by fraction-free elimination on a small matrix.
int det_mod_p(std::vector<int> m, int r, int p) {
  long long det = 1;
  for (int col = 0; col < r; ++col) {
    int pivot = -1;
    for (int row = col; row < r; ++row)
      if (m[row * r + col] % p != 0) { pivot = row; break; }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int k = 0; k < r; ++k) std::swap(m[pivot * r + k], m[col * r + k]);
      det = -det;
    }
    int pv = m[col * r + col] % p;
    det = det * pv % p;
    int inv = 1;
    for (int k = 1; k < p; ++k)
      if (pv * k % p == 1) { inv = k; break; }
    for (int row = col + 1; row < r; ++row) {
      int factor = m[row * r + col] % p * inv % p;
      for (int k = 0; k < r; ++k) {
        m[row * r + k] =
            ((m[row * r + k] - factor * m[col * r + k]) % p + p * p) % p;
      }
    }
  }
  return static_cast<int>(((det % p) + p) % p);
}

}  // namespace

AffineMap::AffineMap(const Modulus& m, std::vector<int> linear,
                     GroupElement shift)
    : mod_(m), linear_(std::move(linear)), shift_(std::move(shift)) {
  int r = m.r();
  if (static_cast<int>(linear_.size()) != r * r)
    throw usage_error("AffineMap: linear part must be r x r");
  if (shift_.modulus() != m) throw usage_error("AffineMap: mismatched moduli");
  for (auto& v : linear_) v = ((v % m.p()) + m.p()) % m.p();
  if (det_mod_p(linear_, r, m.p()) == 0)
    throw usage_error("AffineMap: singular linear part");
}

AffineMap AffineMap::identity(const Modulus& m) {
  std::vector<int> lin(m.r() * m.r(), 0);
  for (int i = 0; i < m.r(); ++i) lin[i * m.r() + i] = 1;
  return AffineMap(m, std::move(lin), GroupElement::zero(m));
}

GroupElement AffineMap::apply(const GroupElement& x) const {
  if (x.modulus() != mod_) throw usage_error("AffineMap: mismatched moduli");
  int r = mod_.r();
  std::vector<int> c(r, 0);
  for (int i = 0; i < r; ++i) {
    int v = shift_.coords()[i];
    for (int j = 0; j < r; ++j) v += linear_[i * r + j] * x.coords()[j];
    c[i] = v;
  }
  return GroupElement(mod_, std::move(c));
}

int AffineMap::apply_flat(int flat) const {
  return apply(GroupElement::from_flat(mod_, flat)).flat();
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  if (inner.mod_ != mod_) throw usage_error("AffineMap: mismatched moduli");
  int r = mod_.r();
  std::vector<int> lin(r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int v = 0;
      for (int k = 0; k < r; ++k) v += linear_[i * r + k] * inner.linear_[k * r + j];
      lin[i * r + j] = v % mod_.p();
    }
  GroupElement t = apply(inner.shift_);
  return AffineMap(mod_, std::move(lin), std::move(t));
}

PointSet apply_affine(const PointSet& a, const AffineMap& t) {
  if (a.modulus() != t.modulus())
    throw usage_error("apply_affine: mismatched moduli");
  std::vector<uint64_t> rows(a.rows_.size(), 0);
  int p = a.mod_.p();
  for (int f : a.elements()) {
    int img = t.apply_flat(f);
    rows[img / p] |= 1ull << (img % p);
  }
  return PointSet(a.mod_, std::move(rows));
}

const std::vector<std::vector<uint16_t>>& linear_perm_tables(const Modulus& m) {
  if (m.r() != 1 && m.r() != 2)
    throw usage_error("linear_perm_tables: rank 1 or 2 only");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::vector<uint16_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m.p(), m.r());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<uint16_t>> tables;
  int p = m.p(), n = m.order();
  if (m.r() == 1) {
    for (int u = 1; u < p; ++u) {
      std::vector<uint16_t> t(n);
      for (int x = 0; x < n; ++x) t[x] = static_cast<uint16_t>(u * x % p);
      tables.push_back(std::move(t));
    }
  } else {
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        for (int c = 0; c < p; ++c)
          for (int d = 0; d < p; ++d) {
            if ((a * d - b * c) % p == 0) continue;
            std::vector<uint16_t> t(n);
            for (int x = 0; x < p; ++x)
              for (int y = 0; y < p; ++y) {
                int ix = (a * x + b * y) % p;
                int iy = (c * x + d * y) % p;
                t[x + p * y] = static_cast<uint16_t>(ix + p * iy);
              }
            tables.push_back(std::move(t));
          }
  }
  auto [pos, _] = cache.emplace(key, std::move(tables));
  return pos->second;
}

PointSet translation_normal_form(const PointSet& a) {
  PointSet best = a;
  for (int g = 1; g < a.modulus().order(); ++g) {
    PointSet cand = translate_flat(a, g);
    if (cand.lex_less(best)) best = cand;
  }
  return best;
}

PointSet canonical_form(const PointSet& a) {
  const Modulus& m = a.modulus();
  if (m.r() != 1 && m.r() != 2)
    throw usage_error("canonical_form: rank 1 or 2 only");
  const auto& tables = linear_perm_tables(m);
  int p = m.p();
  PointSet best = translation_normal_form(a);
  std::vector<int> elems = a.elements();
  std::vector<int> img(elems.size());
  for (const auto& t : tables) {
    for (size_t i = 0; i < elems.size(); ++i) img[i] = t[elems[i]];
    PointSet x(m, img);
    PointSet cand = translation_normal_form(x);
    if (cand.lex_less(best)) best = cand;
  }
  return best;
}

}  // namespace sumsetlab
