#ifndef SUMSETLAB_GROUP_HPP
#define SUMSETLAB_GROUP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumsetlab {

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The ambient group Z_p^r for an odd prime p >= 3.
/// Points are addressed by "flat" indices in [0, p^r): c0 + p*c1 + p^2*c2 + ...
class Modulus {
 public:
  Modulus(int p, int r);

  int p() const { return p_; }
  int r() const { return r_; }
  int order() const { return order_; }  // p^r

  bool operator==(const Modulus& o) const { return p_ == o.p_ && r_ == o.r_; }
  bool operator!=(const Modulus& o) const { return !(*this == o); }

 private:
  int p_;
  int r_;
  int order_;
};

bool is_prime(int n);

/// A point of Z_p^r. Immutable.
class GroupElement {
 public:
  GroupElement(const Modulus& m, std::vector<int> coords);
  static GroupElement from_flat(const Modulus& m, int flat);
  static GroupElement zero(const Modulus& m);

  const Modulus& modulus() const { return mod_; }
  const std::vector<int>& coords() const { return coords_; }
  int flat() const { return flat_; }
  bool is_zero() const { return flat_ == 0; }

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement scaled(int k) const;  // k * this, k any integer

  bool operator==(const GroupElement& o) const {
    return mod_ == o.mod_ && flat_ == o.flat_;
  }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Modulus mod_;
  std::vector<int> coords_;
  int flat_;
};

/// Label of a coset H_i; indices add mod p: H_i + H_j = H_{i+j}.
struct CosetIndex {
  int i = 0;
};

/// An order-p subgroup of Z_p^2 together with its canonical coset labeling.
///
/// The labeling is the linear functional vanishing on the subgroup and taking
/// value 1 on the smallest flat index outside it, so witnesses are
/// reproducible across runs.
class Subgroup {
 public:
  Subgroup(const Modulus& m, const GroupElement& generator);

  const Modulus& modulus() const { return mod_; }
  const GroupElement& generator() const { return gen_; }
  const std::vector<int>& member_flats() const { return members_; }  // sorted
  bool contains_flat(int flat) const;

  /// Coset label of x; a homomorphism Z_p^2 -> Z_p with kernel this subgroup.
  int coset_index_flat(int flat) const;
  CosetIndex coset_index(const GroupElement& x) const;

  /// Sorted flat indices of coset H_i.
  std::vector<int> coset_flats(int i) const;

  bool operator==(const Subgroup& o) const;

 private:
  Modulus mod_;
  GroupElement gen_;
  std::vector<int> members_;
  int f0_, f1_;  // functional coefficients: index(x,y) = f0*x + f1*y mod p
};

/// The p+1 order-p subgroups of Z_p^2, in a fixed deterministic order.
std::vector<Subgroup> all_subgroups(const Modulus& m);

}  // namespace sumsetlab

#endif
