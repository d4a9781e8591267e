#include <doctest.h>

#include "gq/corpus.hpp"
#include "gq/kan.hpp"
#include "support/nerve_oracle.hpp"
#include "support/test_util.hpp"

using namespace gq;

namespace {

const Field Q = Field::rationals();

Groupoid bc(int n, const std::string& name = "x") { return Groupoid::classifying(FiniteGroup::cyclic(n), name); }

GroupoidMap point_into(const Groupoid& g, int obj = 0) {
  GroupoidMap s;
  s.source = Groupoid::point();
  s.target = g;
  s.object_map = {obj};
  s.hom_maps = {{0}};
  return s;
}

GroupoidMap doubling_into_c4() {
  GroupoidMap incl;
  incl.source = bc(2, "m");
  incl.target = bc(4, "y");
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  return incl;
}

template <class K>
bool is_identity_map(const RepMap<K>& m) {
  for (const auto& c : m.components)
    if (!is_identity(c)) return false;
  return true;
}

template <class K>
bool is_invertible_map(const RepMap<K>& m) {
  for (const auto& c : m.components)
    if (!is_invertible(c)) return false;
  return true;
}

}  // namespace

TEST_CASE("left Kan along a point inclusion gives the regular representation") {
  for (int n : {2, 3, 4}) {
    Groupoid bcn = bc(n);
    KanPackage<Rat> pkg = left_kan(point_into(bcn), unit_rep<Rat>(Groupoid::point(), Q));
    CHECK(pkg.output.dims == std::vector<int>{n});
    CHECK(pkg.output == regular_rep<Rat>(bcn, Q));
  }
}

TEST_CASE("right Kan along a point inclusion gives functions on the group") {
  for (int n : {2, 3, 5}) {
    KanPackage<Rat> pkg = right_kan(point_into(bc(n)), unit_rep<Rat>(Groupoid::point(), Q));
    CHECK(pkg.output.dims == std::vector<int>{n});
    CHECK_NOTHROW(pkg.output.validate());
  }
}

TEST_CASE("Kan extensions along the identity are the identity") {
  Groupoid b4 = bc(4);
  Representation<Rat> v = regular_rep<Rat>(b4, Q);
  CHECK(left_kan(GroupoidMap::identity(b4), v).output == v);
  CHECK(right_kan(GroupoidMap::identity(b4), v).output == v);
}

TEST_CASE("coinvariants and invariants of the regular representation are one dimensional") {
  Groupoid b3 = bc(3);
  Representation<Rat> reg = regular_rep<Rat>(b3, Q);
  GroupoidMap t = GroupoidMap::terminal(b3);
  CHECK(left_kan(t, reg).output.dims == std::vector<int>{1});
  CHECK(right_kan(t, reg).output.dims == std::vector<int>{1});
  CHECK(right_kan(t, unit_rep<Rat>(b3, Q)).output.dims == std::vector<int>{1});
}

TEST_CASE("Kan dimensions match the nerve-level (co)limit oracle") {
  Corpus corpus = build_corpus({.max_group_order = 5, .seed = 21, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(23);
  int checked = 0;
  while (checked < 50) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto rep_ids = corpus.reps_on(cm.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    KanPackage<Rat> lk = left_kan(cm.map, rep.rep);
    KanPackage<Rat> rk = right_kan(cm.map, rep.rep);
    for (int y = 0; y < cm.map.target.object_count(); ++y) {
      CHECK(lk.output.dim_at(y) == gqtest::raw_colimit_dim(cm.map, rep.rep, y));
      CHECK(rk.output.dim_at(y) == gqtest::raw_limit_dim(cm.map, rep.rep, y));
    }
    ++checked;
  }
}

TEST_CASE("block dimension formula dim = sum of coset count times reduced dimension") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 27, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(28);
  for (int checked = 0; checked < 30; ++checked) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto rep_ids = corpus.reps_on(cm.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    KanPackage<Rat> lk = left_kan(cm.map, rep.rep);
    for (int y = 0; y < cm.map.target.object_count(); ++y) {
      Index expected = 0;
      for (const auto& blk : lk.blocks[static_cast<size_t>(y)]) expected += blk.coset_count() * blk.reduced_dim;
      CHECK(lk.output.dim_at(y) == expected);
    }
  }
}

TEST_CASE("character oracle for coinvariants over Q") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 29, .random_reps_per_groupoid = 1});
  for (size_t gi = 0; gi < corpus.groupoids.size(); ++gi) {
    const Groupoid& x = corpus.groupoids[gi].groupoid;
    if (x.object_count() != 1) continue;
    GroupoidMap t = GroupoidMap::terminal(x);
    for (size_t ri : corpus.reps_on(gi)) {
      const Representation<Rat>& v = corpus.reps[ri].rep;
      Rat avg(0);
      for (int a = 0; a < x.group_at(0).order(); ++a)
        for (Index i = 0; i < v.dim_at(0); ++i) avg += v.act(0, a)(i, i);
      avg /= Rat(x.group_at(0).order());
      CHECK(Rat(left_kan(t, v).output.dim_at(0)) == avg);
    }
  }
}

TEST_CASE("triangle identities for both adjunctions") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 31, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(37);
  int checked = 0;
  while (checked < 20) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto src_reps = corpus.reps_on(cm.source);
    auto tgt_reps = corpus.reps_on(cm.target);
    Representation<Rat> v =
        corpus.reps[src_reps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(src_reps.size()) - 1))]].rep;
    Representation<Rat> w =
        corpus.reps[tgt_reps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(tgt_reps.size()) - 1))]].rep;
    const GroupoidMap& f = cm.map;

    // (eps f_!) . (f_! eta) = id
    KanPackage<Rat> fv = left_kan(f, v);
    RepMap<Rat> tri1 = compose(push_transformation(KanDirection::Left, f, unit_left(f, v)), counit_left(f, fv.output));
    CHECK(is_identity_map(tri1));
    // (f^* eps) . (eta f^*) = id
    RepMap<Rat> tri2 = compose(unit_left(f, restrict_rep(f, w)), restrict_map(f, counit_left(f, w)));
    CHECK(is_identity_map(tri2));
    // (eps f^*) . (f^* eta) = id
    RepMap<Rat> tri3 = compose(restrict_map(f, unit_right(f, w)), counit_right(f, restrict_rep(f, w)));
    CHECK(is_identity_map(tri3));
    // (f_* eps) . (eta f_*) = id
    KanPackage<Rat> fsv = right_kan(f, v);
    RepMap<Rat> tri4 =
        compose(unit_right(f, fsv.output), push_transformation(KanDirection::Right, f, counit_right(f, v)));
    CHECK(is_identity_map(tri4));
    ++checked;
  }
}

TEST_CASE("push_transformation is functorial and preserves special maps") {
  GroupoidMap incl = doubling_into_c4();
  Representation<Rat> reg = regular_rep<Rat>(incl.source, Q);
  for (KanDirection dir : {KanDirection::Left, KanDirection::Right}) {
    CHECK(is_identity_map(push_transformation(dir, incl, identity_map(reg))));
    RepMap<Rat> pushed_zero = push_transformation(dir, incl, zero_map(reg, reg));
    for (const auto& c : pushed_zero.components) CHECK(is_zero(c));

    RepMap<Rat> m;
    m.source = reg;
    m.target = reg;
    Mat<Rat> c = zeros<Rat>(Q, 2, 2);
    c(0, 0) = c(1, 1) = Rat(2);
    c(0, 1) = c(1, 0) = Rat(1);
    m.components = {c};
    m.validate();
    RepMap<Rat> pushed = push_transformation(dir, incl, m);
    CHECK(is_invertible_map(pushed));
    CHECK(is_identity_map(compose(pushed, push_transformation(dir, incl, rep_map_inverse(m)))));
    CHECK(rep_map_eq(push_transformation(dir, incl, compose(m, m)), compose(pushed, pushed)));
  }
}

TEST_CASE("identity square has identity mates") {
  Groupoid b3 = bc(3);
  Representation<Rat> v = regular_rep<Rat>(b3, Q);
  Square sq;
  sq.top = GroupoidMap::identity(b3);
  sq.left = GroupoidMap::identity(b3);
  sq.right = GroupoidMap::identity(b3);
  sq.bottom = GroupoidMap::identity(b3);
  sq.fill = GroupoidNatTransf::identity(GroupoidMap::identity(b3));
  sq.validate();
  CHECK(is_identity_map(left_mate(sq, v)));
  CHECK(is_identity_map(right_mate(sq, v)));
}

TEST_CASE("Beck-Chevalley on homotopy pullback squares") {
  Corpus corpus = build_corpus({.max_group_order = 4, .seed = 41, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(43);
  int checked = 0;
  while (checked < 10) {
    const auto& g = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    const auto& h = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    if (g.target != h.target) continue;
    PullbackResult pb = homotopy_pullback(g.map, h.map);
    if (pb.groupoid.object_count() == 0) continue;
    Square sq = square_from_pullback(g.map, h.map, pb);
    auto rep_ids = corpus.reps_on(h.source);
    const auto& w =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]].rep;
    CHECK(is_invertible_map(left_mate(sq, w)));
    CHECK(is_invertible_map(right_mate(sq, w)));
    ++checked;
  }
}

TEST_CASE("left and right Beck-Chevalley fail together on a non-exact square") {
  Groupoid b2 = bc(2);
  GroupoidMap s = point_into(b2);
  Square sq;
  sq.top = s;
  sq.left = s;
  sq.right = GroupoidMap::identity(b2);
  sq.bottom = GroupoidMap::identity(b2);
  sq.fill = GroupoidNatTransf::identity(s);
  sq.fill.source_map = compose_maps(sq.left, sq.bottom);
  sq.fill.target_map = compose_maps(sq.top, sq.right);
  sq.validate();

  Representation<Rat> w = regular_rep<Rat>(b2, Q);
  RepMap<Rat> lm = left_mate(sq, w);
  RepMap<Rat> rm = right_mate(sq, w);
  bool left_bc = lm.at(0).rows() == lm.at(0).cols() && is_invertible_map(lm);
  bool right_bc = rm.at(0).rows() == rm.at(0).cols() && is_invertible_map(rm);
  CHECK_FALSE(left_bc);
  CHECK_FALSE(right_bc);
  CHECK(left_bc == right_bc);
}

TEST_CASE("horizontal pasting: the mate of the paste is the composite of the mates") {
  GroupoidMap incl = doubling_into_c4();
  GroupoidMap id4 = GroupoidMap::identity(incl.target);
  PullbackResult pb = homotopy_pullback(id4, incl);
  Square sq1 = square_from_pullback(id4, incl, pb);

  // homotopy square on the shared vertical: incl => incl filled by 1 in C_4
  GroupoidNatTransf phi;
  phi.source_map = incl;
  phi.target_map = incl;
  phi.components = {1};
  phi.validate();
  Square sq2 = square_from_nat(phi);
  REQUIRE(sq1.right == sq2.left);

  Square paste = paste_horizontal(sq1, sq2);
  for (const Representation<Rat>& w : {regular_rep<Rat>(incl.source, Q), unit_rep<Rat>(incl.source, Q)}) {
    Representation<Rat> top2_w = restrict_rep(sq2.top, w);
    RepMap<Rat> expected_left =
        compose(left_mate(sq1, top2_w), restrict_map(sq1.bottom, left_mate(sq2, w)));
    CHECK(rep_map_eq(left_mate(paste, w), expected_left));

    RepMap<Rat> expected_right =
        compose(restrict_map(sq1.bottom, right_mate(sq2, w)), right_mate(sq1, top2_w));
    CHECK(rep_map_eq(right_mate(paste, w), expected_right));
  }
}

TEST_CASE("projection formula lambda with unit is the canonical unitor") {
  GroupoidMap t = GroupoidMap::terminal(bc(2));
  Representation<Rat> reg = regular_rep<Rat>(t.source, Q);
  RepMap<Rat> lam = proj_lambda(t, reg, unit_rep<Rat>(t.target, Q));
  CHECK(is_identity_map(lam));
}

TEST_CASE("projection formulas are invertible") {
  GroupoidMap t2 = GroupoidMap::terminal(bc(2));
  Representation<Rat> reg = regular_rep<Rat>(t2.source, Q);
  Representation<Rat> k2 = regular_rep<Rat>(Groupoid::point(), Q);
  k2.dims = {2};
  k2.action = {{ident<Rat>(Q, 2)}};

  RepMap<Rat> lam = proj_lambda(t2, reg, k2);
  CHECK(lam.at(0).rows() == 2);
  CHECK(is_invertible_map(lam));

  GroupoidMap s2 = point_into(bc(2));
  RepMap<Rat> rho = proj_rho(s2, regular_rep<Rat>(s2.target, Q), unit_rep<Rat>(Groupoid::point(), Q));
  CHECK(is_invertible_map(rho));

  // mixed shapes across a non-surjective, non-injective map
  GroupoidMap incl = doubling_into_c4();
  RepMap<Rat> lam2 = proj_lambda(incl, regular_rep<Rat>(incl.source, Q), regular_rep<Rat>(incl.target, Q));
  CHECK(is_invertible_map(lam2));
  RepMap<Rat> rho2 = proj_rho(incl, regular_rep<Rat>(incl.target, Q), regular_rep<Rat>(incl.source, Q));
  CHECK(is_invertible_map(rho2));
}

TEST_CASE("right Kan through duals agrees with coinduction") {
  SUBCASE("identity map") {
    Groupoid b3 = bc(3);
    Representation<Rat> v = regular_rep<Rat>(b3, Q);
    DualRightKan<Rat> dr = right_kan_via_duals(GroupoidMap::identity(b3), v);
    CHECK(is_identity_map(dr.comparison));
  }
  SUBCASE("terminal map of BC_3 on the unit") {
    GroupoidMap t = GroupoidMap::terminal(bc(3));
    DualRightKan<Rat> dr = right_kan_via_duals(t, unit_rep<Rat>(t.source, Q));
    REQUIRE(dr.rep.dims == std::vector<int>{1});
    CHECK(dr.comparison.at(0)(0, 0) != Rat(0));
  }
  SUBCASE("point inclusion into BC_2 on the unit") {
    GroupoidMap s = point_into(bc(2));
    DualRightKan<Rat> dr = right_kan_via_duals(s, unit_rep<Rat>(Groupoid::point(), Q));
    CHECK(dr.rep.dims == std::vector<int>{2});
    CHECK(is_invertible_map(dr.comparison));
  }
  SUBCASE("a doubled inclusion on the regular representation") {
    GroupoidMap incl = doubling_into_c4();
    DualRightKan<Rat> dr = right_kan_via_duals(incl, regular_rep<Rat>(incl.source, Q));
    CHECK(dr.rep.dims == right_kan(incl, regular_rep<Rat>(incl.source, Q)).output.dims);
    CHECK(is_invertible_map(dr.comparison));
  }
}

TEST_CASE("composition isomorphisms") {
  Groupoid b2 = bc(2);
  GroupoidMap s = point_into(b2);
  GroupoidMap t = GroupoidMap::terminal(b2);
  Representation<Rat> unit_pt = unit_rep<Rat>(Groupoid::point(), Q);

  SUBCASE("identity on either side gives the identity") {
    for (KanDirection dir : {KanDirection::Left, KanDirection::Right}) {
      CHECK(is_identity_map(kan_composition_iso(dir, GroupoidMap::identity(b2), t, regular_rep<Rat>(b2, Q))));
      CHECK(is_identity_map(kan_composition_iso(dir, s, GroupoidMap::identity(b2), unit_pt)));
    }
  }
  SUBCASE("point through BC_2 back to the point") {
    for (KanDirection dir : {KanDirection::Left, KanDirection::Right}) {
      RepMap<Rat> c = kan_composition_iso(dir, s, t, unit_pt);
      CHECK(c.at(0).rows() == 1);
      CHECK(is_invertible_map(c));
    }
  }
  SUBCASE("cocycle coherence on a triple") {
    GroupoidMap mod2;  // C_4 -> C_2
    mod2.source = bc(4, "y");
    mod2.target = bc(2, "z");
    mod2.object_map = {0};
    mod2.hom_maps = {{0, 1, 0, 1}};
    GroupoidMap incl = doubling_into_c4();
    GroupoidMap tz = GroupoidMap::terminal(mod2.target, "w");
    Representation<Rat> v = regular_rep<Rat>(incl.source, Q);
    for (KanDirection dir : {KanDirection::Left, KanDirection::Right}) {
      GroupoidMap gf = compose_maps(incl, mod2);
      // (h g f) -> h (g f) -> h g f  versus  (h g f) -> (h g) f -> h g f
      RepMap<Rat> route_a = kan_composition_iso(dir, gf, tz, v);
      KanPackage<Rat> fv = kan_extension(dir, incl, v);
      RepMap<Rat> route_a2 = dir == KanDirection::Left
                                 ? push_transformation(dir, tz, kan_composition_iso(dir, incl, mod2, v))
                                 : push_transformation(dir, tz, kan_composition_iso(dir, incl, mod2, v));
      RepMap<Rat> lhs = compose(route_a, route_a2);

      RepMap<Rat> route_b = kan_composition_iso(dir, incl, compose_maps(mod2, tz), v);
      RepMap<Rat> route_b2 = kan_composition_iso(dir, mod2, tz, fv.output);
      RepMap<Rat> rhs = compose(route_b, route_b2);
      CHECK(rep_map_eq(lhs, rhs));
    }
  }
}

TEST_CASE("external tensor compatibility of Kan extensions") {
  Groupoid b2 = bc(2, "a"), b3 = bc(3, "b");
  GroupoidMap t2 = GroupoidMap::terminal(b2, "p");
  GroupoidMap t3 = GroupoidMap::terminal(b3, "q");
  Representation<Rat> u2 = unit_rep<Rat>(b2, Q), u3 = unit_rep<Rat>(b3, Q);

  SUBCASE("identity maps give the identity") {
    RepMap<Rat> m = mu_left(GroupoidMap::identity(b2), GroupoidMap::identity(b3), u2, u3);
    CHECK(is_identity_map(m));
    RepMap<Rat> mr = mu_right(GroupoidMap::identity(b2), GroupoidMap::identity(b3), u2, u3);
    CHECK(is_identity_map(mr));
  }
  SUBCASE("terminal maps of BC_2 and BC_3 on units") {
    RepMap<Rat> m = mu_left(t2, t3, u2, u3);
    CHECK(m.at(0).rows() == 1);
    CHECK(is_invertible_map(m));
    RepMap<Rat> mr = mu_right(t2, t3, u2, u3);
    CHECK(is_invertible_map(mr));
  }
  SUBCASE("dimensions multiply and mu stays invertible on regular representations") {
    Representation<Rat> r2 = regular_rep<Rat>(b2, Q), r3 = regular_rep<Rat>(b3, Q);
    GroupoidMap s2 = point_into(b2);
    Representation<Rat> upt = unit_rep<Rat>(Groupoid::point(), Q);
    RepMap<Rat> m = mu_left(s2, t3, upt, r3);
    KanPackage<Rat> left1 = left_kan(s2, upt);
    KanPackage<Rat> left2 = left_kan(t3, r3);
    KanPackage<Rat> both = left_kan(product_map(s2, t3), external_tensor(upt, r3));
    for (int y = 0; y < both.map.target.object_count(); ++y)
      CHECK(both.output.dim_at(y) ==
            left1.output.dim_at(y / left2.map.target.object_count()) *
                left2.output.dim_at(y % left2.map.target.object_count()));
    CHECK(is_invertible_map(m));
    CHECK(is_invertible_map(mu_right(s2, t3, upt, r3)));
  }
}
