#include <doctest.h>

#include "gq/corpus.hpp"
#include "gq/nakayama.hpp"
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

TEST_CASE("gamma of the identity map is the identity") {
  Groupoid b3 = bc(3);
  Representation<Rat> v = regular_rep<Rat>(b3, Q);
  CHECK(is_identity_map(gamma(GroupoidMap::identity(b3), v)));
  CHECK(is_identity_map(gamma_generic(GroupoidMap::identity(b3), v)));
}

TEST_CASE("gamma along a point inclusion is the inversion permutation") {
  for (int n : {2, 3, 4}) {
    GroupoidMap s = point_into(bc(n));
    RepMap<Rat> g = gamma(s, unit_rep<Rat>(Groupoid::point(), Q));
    REQUIRE(g.at(0).rows() == n);
    CHECK(is_invertible_map(g));
    const FiniteGroup& cn = s.target.group_at(0);
    // basis function at g goes to g^{-1} in the induction basis
    for (int e = 0; e < n; ++e)
      for (int r = 0; r < n; ++r)
        CHECK(g.at(0)(r, e) == (r == cn.inverse(e) ? Rat(1) : Rat(0)));
  }
}

TEST_CASE("gamma of a terminal map in canonical bases") {
  for (int n : {2, 3}) {
    GroupoidMap t = GroupoidMap::terminal(bc(n));
    RepMap<Rat> g = gamma(t, unit_rep<Rat>(t.source, Q));
    REQUIRE(g.at(0).rows() == 1);
    CHECK(g.at(0)(0, 0) == Rat(1));
  }
}

TEST_CASE("gamma equals its adjunction-composite construction on the corpus") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 51, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(53);
  int checked = 0;
  while (checked < 25) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto rep_ids = corpus.reps_on(cm.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    CHECK(rep_map_eq(gamma(cm.map, rep.rep), gamma_generic(cm.map, rep.rep)));
    ++checked;
  }
}

TEST_CASE("gamma and its generic form over a prime field") {
  Field f3 = Field::prime(3);
  GroupoidMap t = GroupoidMap::terminal(bc(2));
  Representation<Fp> v = regular_rep<Fp>(t.source, f3);
  RepMap<Fp> closed = gamma(t, v);
  RepMap<Fp> generic = gamma_generic(t, v);
  CHECK(rep_map_eq(closed, generic));
}

TEST_CASE("gamma closed form requires the image order to be invertible") {
  Field f2 = Field::prime(2);
  Groupoid b2 = bc(2);
  Representation<Fp> v = regular_rep<Fp>(b2, f2);
  CHECK_THROWS_WITH_AS(gamma(GroupoidMap::identity(b2), v), doctest::Contains("f(A_x)"), Error);
}

TEST_CASE("hgamma specializes to gamma at the unit and is natural") {
  GroupoidMap t = GroupoidMap::terminal(bc(2));
  Representation<Rat> unit_src = unit_rep<Rat>(t.source, Q);
  Representation<Rat> reg = regular_rep<Rat>(t.source, Q);

  // b = unit recovers gamma on the nose (strict unitors)
  CHECK(rep_map_eq(hgamma(t, reg, unit_src), gamma(t, reg)));

  // a = b = unit on the terminal map of BC_2 gives the 1x1 identity
  RepMap<Rat> h = hgamma(t, unit_src, unit_src);
  REQUIRE(h.at(0).rows() == 1);
  CHECK(h.at(0)(0, 0) == Rat(1));

  // naturality in the first argument against an intertwiner
  corpus_detail::Rng rng(57);
  RepMap<Rat> m = corpus_detail::random_filling(rng, reg, reg);
  RepMap<Rat> lhs = compose(push_transformation(KanDirection::Right, t, tensor(m, identity_map(unit_src))),
                            hgamma(t, reg, unit_src));
  RepMap<Rat> rhs = compose(hgamma(t, reg, unit_src),
                            push_transformation(KanDirection::Left, t, tensor(m, identity_map(unit_src))));
  CHECK(rep_map_eq(lhs, rhs));
}

TEST_CASE("weights of terminal maps are the group orders") {
  for (int n : {2, 3, 5}) {
    WeightTable<Rat> w = delta<Rat>(GroupoidMap::terminal(bc(n)), Q);
    REQUIRE(w.components.size() == 1);
    CHECK(w.components[0].value == Rat(n));
    CHECK(w.components[0].invertible);
  }

  Groupoid du = Groupoid::disjoint_union(bc(2, "a"), bc(3, "b"));
  WeightTable<Rat> w = delta<Rat>(GroupoidMap::terminal(du), Q);
  REQUIRE(w.components.size() == 2);
  CHECK(w.components[0].value == Rat(2));
  CHECK(w.components[1].value == Rat(3));
}

TEST_CASE("weights of an injective-on-automorphisms map are all one") {
  GroupoidMap incl;
  incl.source = bc(2, "m");
  incl.target = bc(4, "y");
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  WeightTable<Rat> w = delta<Rat>(incl, Q);
  REQUIRE(w.components.size() == 2);  // two cosets of the image
  for (const auto& c : w.components) CHECK(c.value == Rat(1));
}

TEST_CASE("delta agrees with its composite definition, independent of basepoints") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 59, .random_reps_per_groupoid = 0});
  gqtest::Rng rng(61);
  for (int checked = 0; checked < 30; ++checked) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    WeightTable<Rat> table = delta<Rat>(cm.map, Q);
    WeightTable<Rat> generic_min = delta_generic<Rat>(cm.map, Q, CosetRepRule::MinIndex);
    WeightTable<Rat> generic_max = delta_generic<Rat>(cm.map, Q, CosetRepRule::MaxIndex);
    REQUIRE(table.components.size() == generic_min.components.size());
    REQUIRE(table.components.size() == generic_max.components.size());
    for (size_t i = 0; i < table.components.size(); ++i) {
      CHECK(table.components[i].value == generic_min.components[i].value);
      CHECK(table.components[i].value == generic_max.components[i].value);
    }
  }
  // over F_2, the composite value vanishes exactly when 2 divides the kernel order
  WeightTable<Fp> wp = delta_generic<Fp>(GroupoidMap::terminal(bc(2)), Field::prime(2));
  REQUIRE(wp.components.size() == 1);
  CHECK_FALSE(wp.components[0].invertible);
}

TEST_CASE("nakayama map values and failure modes") {
  GroupoidMap t2 = GroupoidMap::terminal(bc(2));
  RepMap<Rat> nu = nakayama_map(t2, unit_rep<Rat>(t2.source, Q));
  REQUIRE(nu.at(0).rows() == 1);
  CHECK(nu.at(0)(0, 0) == Rat(1) / Rat(2));

  CHECK(is_identity_map(nakayama_map(GroupoidMap::identity(bc(3)), regular_rep<Rat>(bc(3), Q))));

  Field f2 = Field::prime(2);
  CHECK_THROWS_WITH_AS(nakayama_map(t2, unit_rep<Fp>(t2.source, f2)), doctest::Contains("weight not invertible"),
                       Error);
}

TEST_CASE("nakayama map is invertible over Q across the corpus") {
  Corpus corpus = build_corpus({.max_group_order = 5, .seed = 63, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(67);
  for (int checked = 0; checked < 20; ++checked) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto rep_ids = corpus.reps_on(cm.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    RepMap<Rat> nu = nakayama_map(cm.map, rep.rep);
    CHECK(is_invertible_map(nu));
  }
}

TEST_CASE("nakayama map over a prime field fails exactly on kernels the characteristic divides") {
  Field f2 = Field::prime(2);
  // kernel C_3: fine over F_2
  GroupoidMap mod3to1;
  mod3to1.source = bc(3, "m");
  mod3to1.target = Groupoid::point();
  mod3to1.object_map = {0};
  mod3to1.hom_maps = {{0, 0, 0}};
  CHECK_NOTHROW(nakayama_map(mod3to1, unit_rep<Fp>(mod3to1.source, f2)));

  // kernel C_2 inside C_4 -> C_2: fails over F_2
  GroupoidMap mod2;
  mod2.source = bc(4, "m");
  mod2.target = bc(2, "y");
  mod2.object_map = {0};
  mod2.hom_maps = {{0, 1, 0, 1}};
  CHECK_THROWS_AS(nakayama_map(mod2, unit_rep<Fp>(mod2.source, f2)), Error);
  WeightTable<Fp> w = delta<Fp>(mod2, f2);
  CHECK_FALSE(w.all_invertible());
}

TEST_CASE("the division-free comparison form agrees with the adjunction composite") {
  // over Q it equals gamma everywhere
  Corpus corpus = build_corpus({.max_group_order = 4, .seed = 64, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(65);
  for (int checked = 0; checked < 15; ++checked) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    auto rep_ids = corpus.reps_on(cm.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    CHECK(rep_map_eq(detail::comparison_single_term(cm.map, rep.rep, CosetRepRule::MinIndex),
                     gamma(cm.map, rep.rep)));
  }

  // over F_2 on a map whose image order the characteristic divides, it still equals
  // the adjunction composite, which is what the Nakayama fallback relies on
  Field f2 = Field::prime(2);
  Groupoid b2 = bc(2);
  GroupoidMap id2 = GroupoidMap::identity(b2);
  Representation<Fp> reg2 = regular_rep<Fp>(b2, f2);
  RepMap<Fp> single = detail::comparison_single_term(id2, reg2, CosetRepRule::MinIndex);
  CHECK(rep_map_eq(single, gamma_generic(id2, reg2)));
  CHECK(is_identity_map(nakayama_map(id2, reg2)));

  GroupoidMap incl;  // C_2 -> C_4 doubling over F_2: image order 2, kernel trivial
  incl.source = bc(2, "m");
  incl.target = bc(4, "y");
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  Representation<Fp> v = unit_rep<Fp>(incl.source, f2);
  CHECK(rep_map_eq(detail::comparison_single_term(incl, v, CosetRepRule::MinIndex), gamma_generic(incl, v)));
  CHECK(is_invertible_map(nakayama_map(incl, v)));
}

TEST_CASE("mu_chi with chi = gamma(1) recovers gamma") {
  GroupoidMap t3 = GroupoidMap::terminal(bc(3));
  Representation<Rat> unit_src = unit_rep<Rat>(t3.source, Q);
  Representation<Rat> reg = regular_rep<Rat>(t3.source, Q);
  RepMap<Rat> chi = gamma(t3, unit_src);

  CHECK(rep_map_eq(mu_chi(t3, chi, reg), gamma(t3, reg)));
  CHECK(rep_map_eq(mu_chi(t3, chi, unit_src), chi));

  // linearity in chi
  RepMap<Rat> zero_chi = zero_map(chi.source, chi.target);
  RepMap<Rat> z = mu_chi(t3, zero_chi, reg);
  for (const auto& c : z.components) CHECK(is_zero(c));
  RepMap<Rat> twice = mu_chi(t3, scale(chi, Rat(2)), reg);
  CHECK(rep_map_eq(twice, scale(gamma(t3, reg), Rat(2))));
}

TEST_CASE("the gamma paths around a composable pair differ by the kernel order") {
  for (int n : {2, 3, 4, 5}) {
    GroupoidMap s = point_into(bc(n));
    GroupoidMap t = GroupoidMap::terminal(bc(n));
    GammaPaths<Rat> paths = gamma_paths(s, t, unit_rep<Rat>(Groupoid::point(), Q));
    REQUIRE(paths.through_legs.at(0).rows() == 1);
    CHECK(paths.through_legs.at(0)(0, 0) == Rat(n) * paths.through_composite.at(0)(0, 0));
    CHECK(paths.through_composite.at(0)(0, 0) != Rat(0));
  }
}

TEST_CASE("maps with trivial kernels leave gamma functorial") {
  GroupoidMap incl;  // C_2 -> C_4, injective on automorphisms
  incl.source = bc(2, "m");
  incl.target = bc(4, "y");
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  GroupoidMap id4 = GroupoidMap::identity(bc(4, "y"));
  GammaPaths<Rat> paths = gamma_paths(incl, id4, regular_rep<Rat>(incl.source, Q));
  CHECK(rep_map_eq(paths.through_legs, paths.through_composite));
}

TEST_CASE("condition (v) holds over Q on sampled composable pairs") {
  Corpus corpus = build_corpus({.max_group_order = 5, .seed = 71, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(73);
  int checked = 0;
  while (checked < 8) {
    const auto& pr = corpus.pairs[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.pairs.size()) - 1))];
    const auto& f = corpus.maps[pr.first];
    const auto& g = corpus.maps[pr.second];
    auto rep_ids = corpus.reps_on(f.source);
    const auto& rep =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]];
    auto verdict = check_condition_v(f.map, g.map, rep.rep);
    CHECK_FALSE(verdict.has_value());
    ++checked;
  }
}

TEST_CASE("nakayama map is stable under homotopy pullback squares") {
  Corpus corpus = build_corpus({.max_group_order = 4, .seed = 77, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(79);
  int checked = 0;
  while (checked < 6) {
    const auto& g = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    const auto& h = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    if (g.target != h.target) continue;
    PullbackResult pb = homotopy_pullback(g.map, h.map);
    if (pb.groupoid.object_count() == 0) continue;
    Square sq = square_from_pullback(g.map, h.map, pb);
    auto rep_ids = corpus.reps_on(h.source);
    const auto& w =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]].rep;

    // right mate, then nu along p, then left mate equals g^* of nu along h
    Representation<Rat> qw = restrict_rep(sq.top, w);
    RepMap<Rat> conjugated = compose(compose(right_mate(sq, w), nakayama_map(sq.left, qw)), left_mate(sq, w));
    RepMap<Rat> direct = restrict_map(sq.bottom, nakayama_map(sq.right, w));
    CHECK(rep_map_eq(conjugated, direct));
    ++checked;
  }
}

TEST_CASE("changing coset representatives conjugates the nakayama map") {
  GroupoidMap incl;  // C_2 -> C_4 doubling, nontrivial cosets
  incl.source = bc(2, "m");
  incl.target = bc(4, "y");
  incl.object_map = {0};
  incl.hom_maps = {{0, 2}};
  Representation<Rat> v = regular_rep<Rat>(incl.source, Q);

  RepMap<Rat> nu_min = nakayama_map(incl, v, CosetRepRule::MinIndex);
  RepMap<Rat> nu_max = nakayama_map(incl, v, CosetRepRule::MaxIndex);
  RepMap<Rat> p_left = kan_change_of_basis(left_kan(incl, v, CosetRepRule::MinIndex),
                                           left_kan(incl, v, CosetRepRule::MaxIndex));
  RepMap<Rat> p_right = kan_change_of_basis(right_kan(incl, v, CosetRepRule::MinIndex),
                                            right_kan(incl, v, CosetRepRule::MaxIndex));
  CHECK(rep_map_eq(compose(p_right, nu_max), compose(nu_min, p_left)));
}

TEST_CASE("nakayama and gamma are compatible with external tensor products") {
  Groupoid b2 = bc(2, "a"), b3 = bc(3, "b");
  GroupoidMap f = GroupoidMap::terminal(b2, "p");
  GroupoidMap g = GroupoidMap::terminal(b3, "q");
  Representation<Rat> va = regular_rep<Rat>(b2, Q);
  Representation<Rat> vb = unit_rep<Rat>(b3, Q);
  GroupoidMap fg = product_map(f, g);
  Representation<Rat> ext = external_tensor(va, vb);

  RepMap<Rat> lhs_gamma = compose(gamma(fg, ext), mu_left(f, g, va, vb));
  RepMap<Rat> rhs_gamma = compose(mu_right(f, g, va, vb), external_tensor(gamma(f, va), gamma(g, vb)));
  CHECK(rep_map_eq(lhs_gamma, rhs_gamma));

  RepMap<Rat> lhs_nu = compose(nakayama_map(fg, ext), mu_left(f, g, va, vb));
  RepMap<Rat> rhs_nu = compose(mu_right(f, g, va, vb), external_tensor(nakayama_map(f, va), nakayama_map(g, vb)));
  CHECK(rep_map_eq(lhs_nu, rhs_nu));
}

TEST_CASE("pull-push coherence on a pullback square") {
  Corpus corpus = build_corpus({.max_group_order = 4, .seed = 83, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(89);
  int checked = 0;
  while (checked < 4) {
    const auto& gm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    const auto& hm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    if (gm.target != hm.target) continue;
    const GroupoidMap& g = gm.map;
    const GroupoidMap& h = hm.map;
    PullbackResult pb = homotopy_pullback(g, h);
    if (pb.groupoid.object_count() == 0) continue;
    const GroupoidMap& p = pb.to_left;
    const GroupoidMap& q = pb.to_right;
    auto rep_ids = corpus.reps_on(gm.target);
    const auto& w =
        corpus.reps[rep_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(rep_ids.size()) - 1))]].rep;

    Representation<Rat> gw = restrict_rep(g, w);
    Representation<Rat> hw = restrict_rep(h, w);
    Representation<Rat> u = restrict_rep(q, hw);  // q^* h^* w = p^* g^* w up to pi

    // path 1: through the pullback apex
    RepMap<Rat> stage1 = push_transformation(KanDirection::Left, g, unit_right(p, gw));
    RepMap<Rat> stage2 = push_transformation(KanDirection::Left, g,
                                             push_transformation(KanDirection::Right, p,
                                                                 nat_transf_action(pb.filling, w)));
    RepMap<Rat> stage3 = push_transformation(KanDirection::Left, g, nakayama_map(p, u));
    RepMap<Rat> bar_pi = compose(rep_map_inverse(kan_composition_iso(KanDirection::Left, p, g, u)),
                                 compose(nat_mate_left(pb.filling, u),
                                         kan_composition_iso(KanDirection::Left, q, h, u)));
    RepMap<Rat> stage5 = push_transformation(KanDirection::Left, h, counit_left(q, hw));
    RepMap<Rat> path1 = compose(compose(compose(compose(stage1, stage2), stage3), bar_pi), stage5);

    // path 2: around the outside
    KanPackage<Rat> lg = left_kan(g, gw);
    RepMap<Rat> path2 = compose(compose(unit_right(h, lg.output), nakayama_map(h, restrict_rep(h, lg.output))),
                                push_transformation(KanDirection::Left, h, restrict_map(h, counit_left(g, w))));
    CHECK(rep_map_eq(path1, path2));
    ++checked;
  }
}

TEST_CASE("Frobenius: the Nakayama isomorphism makes induction a two-sided adjoint") {
  Corpus corpus = build_corpus({.max_group_order = 6, .seed = 91, .random_reps_per_groupoid = 1});
  gqtest::Rng rng(93);
  int checked = 0;
  while (checked < 6) {
    const auto& cm = corpus.maps[static_cast<size_t>(rng.uniform(0, static_cast<long long>(corpus.maps.size()) - 1))];
    if (cm.map.source.object_count() != 1 || cm.map.target.object_count() != 1) continue;
    auto src_ids = corpus.reps_on(cm.source);
    auto tgt_ids = corpus.reps_on(cm.target);
    Representation<Rat> v =
        corpus.reps[src_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(src_ids.size()) - 1))]].rep;
    Representation<Rat> w =
        corpus.reps[tgt_ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(tgt_ids.size()) - 1))]].rep;
    const GroupoidMap& f = cm.map;

    RepMap<Rat> nu_v = nakayama_map(f, v);
    CHECK(is_invertible_map(nu_v));

    // transported adjunction f^* -| f_!: unit through nu, counit through nu^{-1}
    auto transported_unit = [&](const Representation<Rat>& at) {
      return compose(unit_right(f, at), nakayama_map(f, restrict_rep(f, at)));
    };
    auto transported_counit = [&](const Representation<Rat>& at) {
      return compose(restrict_map(f, rep_map_inverse(nakayama_map(f, at))), counit_right(f, at));
    };

    // triangle on the restriction side
    Representation<Rat> fw = restrict_rep(f, w);
    RepMap<Rat> tri1 = compose(restrict_map(f, transported_unit(w)), transported_counit(fw));
    CHECK(is_identity_map(tri1));

    // triangle on the induction side
    KanPackage<Rat> fv = left_kan(f, v);
    RepMap<Rat> tri2 = compose(transported_unit(fv.output),
                               push_transformation(KanDirection::Left, f, transported_counit(v)));
    CHECK(is_identity_map(tri2));

    // the original right-adjunction triangles already hold for f_* and transport
    // along nu makes f_! satisfy them as well, which is what ambidexterity asserts
    ++checked;
  }
}
