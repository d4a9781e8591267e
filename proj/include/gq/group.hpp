#pragma once

#include <string>
#include <vector>

#include "gq/error.hpp"

namespace gq {

// Finite group given by its Cayley table over indices 0..n-1, with 0 the identity.
class FiniteGroup {
 public:
  FiniteGroup() : order_(1), table_{0}, inverse_{0} {}
  explicit FiniteGroup(std::vector<std::vector<int>> table);

  static FiniteGroup trivial() { return FiniteGroup(); }
  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  int order() const { return order_; }
  int mul(int i, int j) const { return table_[static_cast<size_t>(i) * order_ + j]; }
  int inverse(int i) const { return inverse_[static_cast<size_t>(i)]; }
  static constexpr int identity() { return 0; }

  // Throws NotAGroup naming the violated axiom and the offending triple.
  void validate() const;

  std::vector<std::vector<int>> table_rows() const;

  // Subgroup generated by `gens`, as a sorted element list.
  std::vector<int> closure(std::vector<int> gens) const;

  // All subgroups, each a sorted element list; deterministic order (by size, then lex).
  std::vector<std::vector<int>> all_subgroups() const;

  // Greedy generating sequence: repeatedly adjoin the smallest element outside the
  // closure so far.
  std::vector<int> generators() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }
  friend bool operator!=(const FiniteGroup& a, const FiniteGroup& b) { return !(a == b); }

 private:
  void compute_inverses();

  int order_;
  std::vector<int> table_;  // row-major order_ x order_
  std::vector<int> inverse_;
};

// Verifies that `images` (a full element-wise table src -> tgt) is a homomorphism.
bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& images);

// All homomorphisms src -> tgt as element-wise image tables, deterministic order.
std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& tgt);

// Image of a homomorphism as a sorted subgroup element list of tgt.
std::vector<int> hom_image(const FiniteGroup& src, const std::vector<int>& images);

// Kernel as a sorted element list of src.
std::vector<int> hom_kernel(const FiniteGroup& src, const std::vector<int>& images);

// Left cosets g*H (resp. right cosets H*g) of the subgroup with sorted element list
// `subgroup`. Each coset is sorted; cosets ordered by minimal element, so the coset of
// the identity comes first and every coset's representative is its first entry.
std::vector<std::vector<int>> left_cosets(const FiniteGroup& g, const std::vector<int>& subgroup);
std::vector<std::vector<int>> right_cosets(const FiniteGroup& g, const std::vector<int>& subgroup);

// A subgroup of `g` (given by a sorted element list) re-indexed as a FiniteGroup of its
// own, identity first; `embedding[i]` is the element of `g` behind index i.
struct SubgroupAsGroup {
  FiniteGroup group;
  std::vector<int> embedding;
};
SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elements);

}  // namespace gq
