#ifndef SUMSETLAB_POINTSET_HPP
#define SUMSETLAB_POINTSET_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumsetlab/group.hpp"

namespace sumsetlab {

class AffineMap;

/// A subset of Z_p^r as a packed bit-vector. Immutable after construction.
///
/// Storage is one machine word per "row": bit x of row y holds the point with
/// flat index x + p*y. Rows are indexed by the flat value of coordinates
/// 1..r-1, so a translation is a per-row rotation plus a row permutation.
class PointSet {
 public:
  explicit PointSet(const Modulus& m);  // empty set
  PointSet(const Modulus& m, std::span<const int> flats);
  PointSet(const Modulus& m, std::initializer_list<int> flats);
  static PointSet full(const Modulus& m);

  const Modulus& modulus() const { return mod_; }
  int size() const { return card_; }  // cached popcount
  bool empty() const { return card_ == 0; }
  bool contains(int flat) const;
  std::vector<int> elements() const;  // sorted flat indices

  PointSet with(int flat) const;
  PointSet without(int flat) const;

  PointSet operator|(const PointSet& o) const;
  PointSet operator&(const PointSet& o) const;
  PointSet minus(const PointSet& o) const;
  PointSet complement() const;

  bool operator==(const PointSet& o) const;
  bool operator!=(const PointSet& o) const { return !(*this == o); }

  /// Order by sorted index sequence: the set containing the smallest index at
  /// the first disagreement is the smaller. Used for canonical forms.
  bool lex_less(const PointSet& o) const;

  std::string to_string() const;

  const std::vector<uint64_t>& rows() const { return rows_; }

  // --- serialization (formats shared with the CLI) ---

  /// Text form: "p r" header line, then sorted flat indices, one per line.
  void write_text(std::ostream& os) const;
  static PointSet read_text(std::istream& is);

  /// Raw little-endian bit-vector; bit i is flat index i. No header, so the
  /// modulus must be supplied by the caller.
  std::vector<uint8_t> to_bytes() const;
  static PointSet from_bytes(const Modulus& m, std::span<const uint8_t> bytes);

 private:
  PointSet(const Modulus& m, std::vector<uint64_t> rows);
  static PointSet from_rows(const Modulus& m, std::vector<uint64_t> rows);

  friend PointSet sumset(const PointSet&, const PointSet&);
  friend PointSet restricted_sumset(const PointSet&, const PointSet&);
  friend PointSet double_restricted(const PointSet&);
  friend PointSet translate_flat(const PointSet&, int);
  friend PointSet apply_affine(const PointSet&, const AffineMap&);

  Modulus mod_;
  std::vector<uint64_t> rows_;  // p^(r-1) rows of p bits each
  int card_;

  void recount();
};

// --- set arithmetic ---

PointSet sumset(const PointSet& a, const PointSet& b);
PointSet restricted_sumset(const PointSet& a, const PointSet& b);
PointSet double_restricted(const PointSet& a);
int double_restricted_size(const PointSet& a);  // hot path, no allocation
/// |2^A| straight from packed rows; the search inner loop works on raw rows
/// to avoid building PointSet values per node.
int double_restricted_size_raw(std::span<const uint64_t> rows, int p);
PointSet translate(const PointSet& a, const GroupElement& g);
PointSet translate_flat(const PointSet& a, int gflat);

// --- affine action ---

/// x -> L x + t with L invertible over Z_p. Immutable.
class AffineMap {
 public:
  AffineMap(const Modulus& m, std::vector<int> linear, GroupElement shift);
  static AffineMap identity(const Modulus& m);

  const Modulus& modulus() const { return mod_; }
  const std::vector<int>& linear() const { return linear_; }  // row-major r*r
  const GroupElement& shift() const { return shift_; }

  GroupElement apply(const GroupElement& x) const;
  int apply_flat(int flat) const;
  AffineMap compose(const AffineMap& inner) const;  // this after inner

 private:
  Modulus mod_;
  std::vector<int> linear_;
  GroupElement shift_;
};

PointSet apply_affine(const PointSet& a, const AffineMap& t);

/// Point permutation tables for every invertible linear map, cached per
/// modulus. tables[k][flat] is the image of flat under the k-th map.
const std::vector<std::vector<uint16_t>>& linear_perm_tables(const Modulus& m);

/// Lexicographically least image of the set under the full affine group
/// (translations for r=1 include dilations too). Idempotent, constant on
/// orbits. Supported for r in {1, 2}.
PointSet canonical_form(const PointSet& a);

/// Cheap partial normalization: least image under translations only.
PointSet translation_normal_form(const PointSet& a);

}  // namespace sumsetlab

#endif
