#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "k1lab/error.hpp"

namespace k1lab {

// Finite group with a Gamma-exponent per element. The product of lifts
// g^tau h^tau equals (gh)^tau (1+T)^carry(g,h), carry = [gamma(g)+gamma(h) >= gamma_mod].
struct FiniteGroup {
  int n = 0;
  std::vector<int> table;  // n*n
  std::vector<int> inverse;
  std::vector<unsigned> gamma;
  unsigned gamma_mod = 1;

  int op(int a, int b) const noexcept { return table[static_cast<std::size_t>(a) * n + b]; }
  int inv(int a) const noexcept { return inverse[a]; }
  int carry(int a, int b) const noexcept { return gamma[a] + gamma[b] >= gamma_mod ? 1 : 0; }
  int order_of(int g) const;
  int power(int g, long long k) const;
  bool is_abelian() const;
  // Subgroup generated by gens, sorted.
  std::vector<int> closure(std::span<const int> gens) const;
};

// g^tau (1+T)^m, an element of the preimage of the finite group.
struct TwistedElt {
  int g = 0;
  long long m = 0;
  friend bool operator==(const TwistedElt&, const TwistedElt&) = default;
};

TwistedElt twisted_mul(const FiniteGroup& G, TwistedElt a, TwistedElt b);
TwistedElt twisted_pow(const FiniteGroup& G, TwistedElt a, long long k);
TwistedElt twisted_inv(const FiniteGroup& G, TwistedElt a);
// (x^tau)^{-1} g^tau x^tau
TwistedElt twisted_conj(const FiniteGroup& G, int x, int g);

struct Restriction {
  FiniteGroup group;
  std::vector<int> embed;  // local index -> ambient index
  std::vector<int> local;  // ambient index -> local index or -1
};
Restriction restrict_to(const FiniteGroup& G, std::span<const int> subgroup);

struct Quotient {
  FiniteGroup group;
  std::vector<int> proj;  // ambient -> coset index
  std::vector<int> rep;   // coset index -> minimal ambient element
};
// K must be normal with gamma identically zero on K.
Quotient quotient(const FiniteGroup& G, std::span<const int> normal_subgroup);

struct GroupSpec {
  std::string catalog;                 // set for catalog groups
  std::vector<std::vector<int>> cayley;  // Cayley table of H, identity at index 0
  std::vector<int> sigma;              // automorphism of H as a permutation
  unsigned e = 1;
};

std::vector<std::string> catalog_names(unsigned p);
GroupSpec catalog_spec(const std::string& name, unsigned p);

struct Subgroup {
  int id = 0;
  std::vector<int> elems;  // sorted ambient indices
  std::vector<char> mask;
  bool cyclic = false;
  int generator = -1;  // smallest generating element when cyclic
  int order() const noexcept { return static_cast<int>(elems.size()); }
  bool contains(int g) const noexcept { return mask[g] != 0; }
};

// Coordinates of an element of U_P^ab as b^tau (u0^tau)^k (1+T)^t.
struct AbCoords {
  int b = 0;
  long long k = 0;
  long long t = 0;
};

struct SubgroupData {
  Restriction sub;         // P as an abstract group
  std::vector<int> commutator;  // [P,P] ambient elements
  Quotient ab;             // P^ab = P / [P,P], over local indices of sub
  std::vector<int> ab_of;  // ambient element -> P^ab index or -1
  std::vector<int> ab_rep;  // P^ab index -> ambient representative
  std::vector<int> torsion;  // P^ab indices of the finite part B
  int u0 = -1;             // ambient element with minimal positive Gamma-exponent; -1 means 1+T
  unsigned c = 0;          // Gamma-exponent of u0 is p^c
  int b0 = 0;              // 1+T = b0^tau (u0^tau)^{p^{e-c}} in U_P^ab
  long long u0_exponent = 1;  // p^{e-c}
  std::vector<int> right_reps;  // minimal elements of cosets P g in the ambient group
  std::vector<int> left_reps;   // minimal elements of cosets g P
  std::vector<int> normalizer;
  int pth_power = -1;      // id of <c^p> for cyclic P
  std::vector<int> cp_set;  // cyclic P' with P'^p = P, P' != P
};

class GroupModel {
 public:
  static std::shared_ptr<const GroupModel> build(const GroupSpec& spec, unsigned p);

  unsigned p() const noexcept { return p_; }
  unsigned e() const noexcept { return e_; }
  const std::string& name() const noexcept { return name_; }
  const FiniteGroup& group() const noexcept { return G_; }
  int order() const noexcept { return G_.n; }
  int h_order() const noexcept { return h_order_; }
  int element(int h, int a) const noexcept { return h * static_cast<int>(G_.gamma_mod) + a; }
  std::pair<int, int> coords(int g) const noexcept {
    return {g / static_cast<int>(G_.gamma_mod), g % static_cast<int>(G_.gamma_mod)};
  }
  std::string label(int g) const;

  const std::vector<Subgroup>& subgroups() const noexcept { return subs_; }
  const Subgroup& subgroup(int id) const { return subs_.at(id); }
  const SubgroupData& data(int id) const { return data_.at(id); }
  int trivial_id() const noexcept { return 0; }
  int full_id() const noexcept { return static_cast<int>(subs_.size()) - 1; }
  int find_subgroup(std::span<const int> sorted_elems) const;
  int conjugate_id(int id, int g) const;  // id of g P g^{-1}
  bool is_subgroup_of(int a, int b) const;
  std::vector<int> cyclic_ids() const;

  const std::vector<std::vector<int>>& classes() const noexcept { return classes_; }
  int class_of(int g) const noexcept { return class_of_[g]; }
  const std::vector<int>& center() const noexcept { return center_; }
  const std::vector<int>& generators() const noexcept { return gens_; }

  // Minimal representatives of the right cosets P c of P inside P'.
  std::vector<int> right_reps_in(int P, int Pp) const;
  // Transfer U_{P'}^ab -> U_P^ab of g^tau (1+T)^texp; result over the P^ab group.
  TwistedElt transfer(int g, long long texp, int P, int Pp,
                      std::span<const int> reps = {}) const;
  // Transfer on an element given as a P'^ab index with T-exponent.
  TwistedElt transfer_ab(TwistedElt x, int P, int Pp) const;
  AbCoords abelian_coords(int P, TwistedElt x) const;

 private:
  GroupModel() = default;
  void build_lattice();
  void build_classes();
  void build_subgroup_data();

  unsigned p_ = 3, e_ = 1;
  std::string name_;
  int h_order_ = 1;
  FiniteGroup G_;
  std::vector<Subgroup> subs_;
  std::map<std::vector<int>, int> sub_index_;
  std::vector<SubgroupData> data_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<int> center_;
  std::vector<int> gens_;
};

using GroupRef = std::shared_ptr<const GroupModel>;

}  // namespace k1lab
