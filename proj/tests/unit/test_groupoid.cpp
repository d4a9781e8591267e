#include <doctest.h>

#include "gq/groupoid.hpp"
#include "support/nerve_oracle.hpp"

using namespace gq;

namespace {

GroupoidMap point_into(const Groupoid& bg, int obj = 0) {
  GroupoidMap s;
  s.source = Groupoid::point();
  s.target = bg;
  s.object_map = {obj};
  s.hom_maps = {{0}};
  return s;
}

}  // namespace

TEST_CASE("homotopy fiber of the terminal map of BC_n") {
  for (int n : {2, 3, 5}) {
    Groupoid bcn = Groupoid::classifying(FiniteGroup::cyclic(n));
    GroupoidMap t = GroupoidMap::terminal(bcn);
    FiberData fib = homotopy_fiber(t, 0);
    REQUIRE(fib.components.size() == 1);
    CHECK(fib.components[0].isotropy == FiniteGroup::cyclic(n));
    CHECK(fib.components[0].coset_rep == 0);
  }
}

TEST_CASE("homotopy fiber of an identity map is a single contractible component") {
  Groupoid bc4 = Groupoid::classifying(FiniteGroup::cyclic(4));
  FiberData fib = homotopy_fiber(GroupoidMap::identity(bc4), 0);
  REQUIRE(fib.components.size() == 1);
  CHECK(fib.components[0].isotropy.order() == 1);
}

TEST_CASE("homotopy fiber of the point inclusion into BC_3") {
  Groupoid bc3 = Groupoid::classifying(FiniteGroup::cyclic(3));
  FiberData fib = homotopy_fiber(point_into(bc3), 0);
  // cosets of the trivial subgroup, enumerated directly
  REQUIRE(fib.components.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(fib.components[static_cast<size_t>(i)].coset_rep == i);
    CHECK(fib.components[static_cast<size_t>(i)].isotropy.order() == 1);
  }
  CHECK_THROWS_AS(homotopy_fiber(point_into(bc3), "nowhere"), Error);
}

TEST_CASE("fiber component count times image order recovers the ambient group order") {
  // exhaustive over all homomorphisms between groups of order <= 8 drawn from a pool
  std::vector<FiniteGroup> pool = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                   FiniteGroup::cyclic(6), FiniteGroup::cyclic(8),
                                   FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
                                   FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))};
  for (const auto& gsrc : pool)
    for (const auto& gtgt : pool) {
      Groupoid src = Groupoid::classifying(gsrc, "s");
      Groupoid tgt = Groupoid::classifying(gtgt, "t");
      for (const auto& hom : all_homomorphisms(gsrc, gtgt)) {
        GroupoidMap f;
        f.source = src;
        f.target = tgt;
        f.object_map = {0};
        f.hom_maps = {hom};
        FiberData fib = homotopy_fiber(f, 0);
        size_t image_order = hom_image(gsrc, hom).size();
        CHECK(fib.components.size() * image_order == static_cast<size_t>(gtgt.order()));
        for (const auto& comp : fib.components)
          CHECK(comp.isotropy.order() == static_cast<int>(hom_kernel(gsrc, hom).size()));
        // skeletal fiber cardinality equals the nerve-level count
        Rat skel(0);
        for (const auto& comp : fib.components) skel += Rat(1) / Rat(comp.isotropy.order());
        CHECK(skel == gqtest::raw_fiber_cardinality(f, 0));
      }
    }
}

TEST_CASE("pullback of two points over BC_3 is discrete with three objects") {
  Groupoid bc3 = Groupoid::classifying(FiniteGroup::cyclic(3));
  PullbackResult pb = homotopy_pullback(point_into(bc3), point_into(bc3));
  REQUIRE(pb.groupoid.object_count() == 3);
  for (const auto& g : pb.groupoid.groups) CHECK(g.order() == 1);
  CHECK_NOTHROW(pb.filling.validate());
}

TEST_CASE("pullback of an identity pair is the diagonal") {
  Groupoid x = Groupoid::disjoint_union(Groupoid::classifying(FiniteGroup::cyclic(2), "a"),
                                        Groupoid::classifying(FiniteGroup::cyclic(3), "b"));
  GroupoidMap id = GroupoidMap::identity(x);
  PullbackResult pb = homotopy_pullback(id, id);
  REQUIRE(pb.groupoid.object_count() == 2);
  CHECK(pb.groupoid.groups[0].order() == 2);
  CHECK(pb.groupoid.groups[1].order() == 3);
}

TEST_CASE("pullback of BC_2 and BC_3 over the point") {
  Groupoid bc2 = Groupoid::classifying(FiniteGroup::cyclic(2), "a");
  Groupoid bc3 = Groupoid::classifying(FiniteGroup::cyclic(3), "b");
  PullbackResult pb = homotopy_pullback(GroupoidMap::terminal(bc2), GroupoidMap::terminal(bc3));
  REQUIRE(pb.groupoid.object_count() == 1);
  CHECK(pb.groupoid.groups[0].order() == 6);
  CHECK(pb.groupoid.groups[0] == FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)));
}

TEST_CASE("pullbacks in either order are isomorphic groupoids") {
  Groupoid bc4 = Groupoid::classifying(FiniteGroup::cyclic(4));
  Groupoid bc2 = Groupoid::classifying(FiniteGroup::cyclic(2), "m");
  GroupoidMap incl;  // C_2 -> C_4 doubling
  incl.source = bc2;
  incl.target = bc4;
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  GroupoidMap t2 = point_into(bc4);

  PullbackResult ab = homotopy_pullback(incl, t2);
  PullbackResult ba = homotopy_pullback(t2, incl);
  REQUIRE(ab.groupoid.object_count() == ba.groupoid.object_count());

  // explicit isomorphism: (m, n, [phi]) -> (n, m, [phi^{-1}])
  const FiniteGroup& ay = bc4.groups[0];
  for (int i = 0; i < ab.groupoid.object_count(); ++i) {
    int phi = ab.filling.at(i);
    int target = -1;
    for (int j = 0; j < ba.groupoid.object_count(); ++j) {
      // same double coset iff phi^{-1} = h(b) psi g(a) for some a, b
      int psi = ba.filling.at(j);
      bool same = false;
      for (int b = 0; b < incl.source.group_at(0).order() && !same; ++b)
        for (int a = 0; a < t2.source.group_at(0).order() && !same; ++a) {
          int lhs = ay.mul(ay.mul(incl.on_hom(0, b), psi), t2.on_hom(0, a));
          if (lhs == ay.inverse(phi)) same = true;
        }
      if (same) target = j;
    }
    REQUIRE(target >= 0);
    CHECK(ab.groupoid.groups[static_cast<size_t>(i)].order() ==
          ba.groupoid.groups[static_cast<size_t>(target)].order());
  }
}

TEST_CASE("cardinality of a pullback over the point multiplies") {
  Groupoid x = Groupoid::disjoint_union(Groupoid::classifying(FiniteGroup::cyclic(2), "a"),
                                        Groupoid::classifying(FiniteGroup::cyclic(3), "b"));
  Groupoid y = Groupoid::classifying(FiniteGroup::cyclic(4), "c");
  PullbackResult pb = homotopy_pullback(GroupoidMap::terminal(x), GroupoidMap::terminal(y));
  CHECK(cardinality(pb.groupoid) == Rat(cardinality(x)) * cardinality(y));
}

TEST_CASE("product groupoid") {
  Groupoid bc2 = Groupoid::classifying(FiniteGroup::cyclic(2), "a");
  Groupoid bc3 = Groupoid::classifying(FiniteGroup::cyclic(3), "b");
  ProductResult p = product_groupoid(bc2, bc3);
  REQUIRE(p.groupoid.object_count() == 1);
  CHECK(p.groupoid.groups[0].order() == 6);
  CHECK_NOTHROW(p.proj_left.validate());
  CHECK_NOTHROW(p.proj_right.validate());

  Groupoid with_pt = product_groupoid(bc2, Groupoid::point()).groupoid;
  CHECK(with_pt.groups[0] == bc2.groups[0]);

  Groupoid du = Groupoid::disjoint_union(bc2, bc3);
  ProductResult q = product_groupoid(du, bc2);
  REQUIRE(q.groupoid.object_count() == 2);
  CHECK(q.groupoid.groups[0].order() == 4);
  CHECK(q.groupoid.groups[1].order() == 6);
}

TEST_CASE("cardinality values") {
  CHECK(cardinality(Groupoid::point()) == Rat(1));
  for (int n : {2, 3, 6})
    CHECK(cardinality(Groupoid::classifying(FiniteGroup::cyclic(n))) == Rat(1) / Rat(n));
  Groupoid du = Groupoid::disjoint_union(Groupoid::classifying(FiniteGroup::cyclic(2), "a"),
                                         Groupoid::classifying(FiniteGroup::cyclic(3), "b"));
  CHECK(cardinality(du) == Rat(5) / Rat(6));
}

TEST_CASE("map composition and preimage sections") {
  Groupoid bc6 = Groupoid::classifying(FiniteGroup::cyclic(6));
  Groupoid bc3 = Groupoid::classifying(FiniteGroup::cyclic(3), "t");
  GroupoidMap mod3;
  mod3.source = bc6;
  mod3.target = bc3;
  mod3.object_map = {0};
  mod3.hom_maps = {{0, 1, 2, 0, 1, 2}};
  CHECK_NOTHROW(mod3.validate());
  CHECK(mod3.preimage(0, 0) == 0);
  CHECK(mod3.preimage(0, 1) == 1);
  CHECK(mod3.preimage(0, 2) == 2);

  GroupoidMap s = point_into(bc6);
  GroupoidMap comp = compose_maps(s, mod3);
  CHECK(comp.target == bc3);
  CHECK(compose_maps(s, GroupoidMap::identity(bc6)) == s);

  Groupoid bcn = Groupoid::classifying(FiniteGroup::cyclic(4));
  GroupoidMap ts = compose_maps(point_into(bcn), GroupoidMap::terminal(bcn));
  CHECK(ts == GroupoidMap::terminal(Groupoid::point()));

  CHECK_THROWS_AS(compose_maps(mod3, mod3), Error);
}

TEST_CASE("natural transformations require naturality") {
  Groupoid bs3 = Groupoid::classifying(FiniteGroup::cyclic(3));
  GroupoidMap id = GroupoidMap::identity(bs3);
  GroupoidNatTransf good;
  good.source_map = id;
  good.target_map = id;
  good.components = {1};  // abelian, any element is natural
  CHECK_NOTHROW(good.validate());
  CHECK(good.inverse().at(0) == 2);
}
