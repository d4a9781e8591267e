#pragma once

#include <string>
#include <vector>

#include "gq/group.hpp"
#include "gq/scalar.hpp"

namespace gq {

// Skeletal essentially finite groupoid: a finite list of named objects, each carrying
// its automorphism group; no morphisms between distinct objects.
struct Groupoid {
  std::vector<std::string> object_names;
  std::vector<FiniteGroup> groups;

  static Groupoid point(const std::string& name = "pt");
  static Groupoid classifying(const FiniteGroup& g, const std::string& name = "x");
  static Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);

  int object_count() const { return static_cast<int>(object_names.size()); }
  int object_index(const std::string& name) const;  // UnknownObject if absent
  const FiniteGroup& group_at(int obj) const { return groups[static_cast<size_t>(obj)]; }

  void validate() const;

  friend bool operator==(const Groupoid& a, const Groupoid& b) {
    return a.object_names == b.object_names && a.groups == b.groups;
  }
  friend bool operator!=(const Groupoid& a, const Groupoid& b) { return !(a == b); }
};

// Functor between skeletal groupoids: an object map plus one group homomorphism per
// source object, stored as a full element-image table.
struct GroupoidMap {
  Groupoid source;
  Groupoid target;
  std::vector<int> object_map;
  std::vector<std::vector<int>> hom_maps;

  static GroupoidMap identity(const Groupoid& x);
  static GroupoidMap terminal(const Groupoid& x, const std::string& point_name = "pt");

  int on_object(int x) const { return object_map[static_cast<size_t>(x)]; }
  int on_hom(int x, int a) const { return hom_maps[static_cast<size_t>(x)][static_cast<size_t>(a)]; }

  std::vector<int> image_at(int x) const { return hom_image(source.group_at(x), hom_maps[static_cast<size_t>(x)]); }
  std::vector<int> kernel_at(int x) const { return hom_kernel(source.group_at(x), hom_maps[static_cast<size_t>(x)]); }

  // Minimal-index preimage of an image element h in f(A_x).
  int preimage(int x, int h) const;

  void validate() const;

  friend bool operator==(const GroupoidMap& a, const GroupoidMap& b) {
    return a.source == b.source && a.target == b.target && a.object_map == b.object_map && a.hom_maps == b.hom_maps;
  }
  friend bool operator!=(const GroupoidMap& a, const GroupoidMap& b) { return !(a == b); }
};

// g after f; NonComposable unless target(f) = source(g).
GroupoidMap compose_maps(const GroupoidMap& f, const GroupoidMap& g);

// Natural transformation between two maps with equal object maps: one component
// phi_x in A_{f(x)} per source object, with phi_x . f(a) = f'(a) . phi_x.
struct GroupoidNatTransf {
  GroupoidMap source_map;
  GroupoidMap target_map;
  std::vector<int> components;

  static GroupoidNatTransf identity(const GroupoidMap& f);

  int at(int x) const { return components[static_cast<size_t>(x)]; }
  GroupoidNatTransf inverse() const;
  void validate() const;
};

// Vertical composition: second after first (components multiply in A_{f(x)}).
GroupoidNatTransf compose_nat(const GroupoidNatTransf& first, const GroupoidNatTransf& second);

enum class CosetRepRule { MinIndex, MaxIndex };

// One connected component of the homotopy fiber of f at y: a source object x with
// f(x) = y together with a left coset of f(A_x) in A_y; its isotropy is ker(A_x -> A_y).
struct FiberComponent {
  int source_object;
  int coset_rep;
  std::vector<int> coset;  // sorted members of the left coset
  FiniteGroup isotropy;
  std::vector<int> isotropy_embedding;  // into A_x
};

struct FiberData {
  int base_object;
  std::vector<FiberComponent> components;
};

FiberData homotopy_fiber(const GroupoidMap& f, int y, CosetRepRule rule = CosetRepRule::MinIndex);
FiberData homotopy_fiber(const GroupoidMap& f, const std::string& y_name, CosetRepRule rule = CosetRepRule::MinIndex);

// Skeletalized homotopy pullback of g: M -> Y <- N : h. Objects are triples
// (m, n, [phi]) over double cosets h(A_n)\A_y/g(A_m); the automorphism group at a
// triple is the stabilizer {(a,b) : h(b) phi0 = phi0 g(a)} inside A_m x A_n.
struct PullbackResult {
  Groupoid groupoid;
  GroupoidMap to_left;        // p : P -> M
  GroupoidMap to_right;       // q : P -> N
  GroupoidNatTransf filling;  // pi : g.p => h.q with component phi0 at each object
};

PullbackResult homotopy_pullback(const GroupoidMap& g, const GroupoidMap& h,
                                 CosetRepRule rule = CosetRepRule::MinIndex);

struct ProductResult {
  Groupoid groupoid;
  GroupoidMap proj_left;
  GroupoidMap proj_right;
};

// Object pairs and direct-product groups, left factor major.
ProductResult product_groupoid(const Groupoid& x, const Groupoid& y);
GroupoidMap product_map(const GroupoidMap& f, const GroupoidMap& g);

// Baez-Dolan groupoid cardinality: sum over objects of 1/|A_x|, always rational.
Rat cardinality(const Groupoid& x);

}  // namespace gq
