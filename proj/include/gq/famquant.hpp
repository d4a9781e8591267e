#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gq/nakayama.hpp"

namespace gq {

// Object of Fam(Vect): a groupoid with a representation on it.
template <class K>
struct FamObject {
  Groupoid groupoid;
  Representation<K> rep;

  void validate() const {
    if (rep.groupoid != groupoid) fail(ErrorCode::DimensionMismatch, "representation lives on a different groupoid");
    rep.validate();
  }

  friend bool operator==(const FamObject& a, const FamObject& b) {
    return a.groupoid == b.groupoid && a.rep == b.rep;
  }
  friend bool operator!=(const FamObject& a, const FamObject& b) { return !(a == b); }
};

// Morphism of Fam(Vect): a span of groupoids with a filling intertwiner between the
// two restricted representations.
template <class K>
struct Span {
  FamObject<K> source;
  FamObject<K> target;
  Groupoid apex;
  GroupoidMap left_leg;   // apex -> source groupoid
  GroupoidMap right_leg;  // apex -> target groupoid
  RepMap<K> filling;      // restrict(left_leg, source.rep) -> restrict(right_leg, target.rep)

  void validate() const {
    source.validate();
    target.validate();
    if (left_leg.source != apex || right_leg.source != apex)
      fail(ErrorCode::NonComposableSpans, "legs do not start at the apex");
    if (left_leg.target != source.groupoid || right_leg.target != target.groupoid)
      fail(ErrorCode::NonComposableSpans, "legs do not end at the span endpoints");
    if (filling.source != restrict_rep(left_leg, source.rep) ||
        filling.target != restrict_rep(right_leg, target.rep))
      fail(ErrorCode::NotNatural, "filling endpoints are not the restricted representations");
    filling.validate();
  }
};

template <class K>
FamObject<K> fam_unit(const Field& field) {
  FamObject<K> o;
  o.groupoid = Groupoid::point();
  o.rep = unit_rep<K>(o.groupoid, field);
  return o;
}

template <class K>
FamObject<K> fam_tensor(const FamObject<K>& a, const FamObject<K>& b) {
  FamObject<K> o;
  o.rep = external_tensor(a.rep, b.rep);
  o.groupoid = o.rep.groupoid;
  return o;
}

template <class K>
Span<K> identity_span(const FamObject<K>& o) {
  Span<K> s;
  s.source = o;
  s.target = o;
  s.apex = o.groupoid;
  s.left_leg = GroupoidMap::identity(o.groupoid);
  s.right_leg = GroupoidMap::identity(o.groupoid);
  s.filling = identity_map(o.rep);
  return s;
}

// Composition by skeletalized homotopy pullback along the middle legs. Sources and
// targets must match on the nose; equivalence of objects is not searched for.
template <class K>
Span<K> compose_spans(const Span<K>& a, const Span<K>& b, CosetRepRule rule = CosetRepRule::MinIndex) {
  if (a.target != b.source) fail(ErrorCode::NonComposableSpans, "middle objects do not match");
  PullbackResult pb = homotopy_pullback(a.right_leg, b.left_leg, rule);
  Span<K> s;
  s.source = a.source;
  s.target = b.target;
  s.apex = pb.groupoid;
  s.left_leg = compose_maps(pb.to_left, a.left_leg);
  s.right_leg = compose_maps(pb.to_right, b.right_leg);
  RepMap<K> first = restrict_map(pb.to_left, a.filling);
  RepMap<K> middle = nat_transf_action(pb.filling, a.target.rep);
  RepMap<K> second = restrict_map(pb.to_right, b.filling);
  s.filling = compose(compose(first, middle), second);
  s.filling.source = restrict_rep(s.left_leg, s.source.rep);
  s.filling.target = restrict_rep(s.right_leg, s.target.rep);
  return s;
}

template <class K>
Span<K> tensor_spans(const Span<K>& a, const Span<K>& b) {
  if (a.filling.source.field != b.filling.source.field)
    fail(ErrorCode::FieldMismatch, "span tensor over different fields");
  Span<K> s;
  s.source = fam_tensor(a.source, b.source);
  s.target = fam_tensor(a.target, b.target);
  s.left_leg = product_map(a.left_leg, b.left_leg);
  s.right_leg = product_map(a.right_leg, b.right_leg);
  s.apex = s.left_leg.source;
  s.filling = external_tensor(a.filling, b.filling);
  s.filling.source = restrict_rep(s.left_leg, s.source.rep);
  s.filling.target = restrict_rep(s.right_leg, s.target.rep);
  return s;
}

// The diagonal X -> X x X.
inline GroupoidMap diagonal_map(const Groupoid& x) {
  ProductResult prod = product_groupoid(x, x);
  GroupoidMap d;
  d.source = x;
  d.target = prod.groupoid;
  for (int i = 0; i < x.object_count(); ++i) {
    d.object_map.push_back(i * x.object_count() + i);
    int n = x.group_at(i).order();
    std::vector<int> tbl(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) tbl[static_cast<size_t>(a)] = a * n + a;
    d.hom_maps.push_back(std::move(tbl));
  }
  return d;
}

// Dual object with its coevaluation and evaluation spans through the diagonal.
template <class K>
struct FamDual {
  FamObject<K> dual_object;
  Span<K> coev;  // unit -> (X x X, V ## V^d)
  Span<K> ev;    // (X x X, V^d ## V) -> unit
};

template <class K>
FamDual<K> fam_dual(const FamObject<K>& o) {
  const Field& field = o.rep.field;
  FamDual<K> out;
  out.dual_object.groupoid = o.groupoid;
  out.dual_object.rep = dual(o.rep);

  GroupoidMap diag = diagonal_map(o.groupoid);
  GroupoidMap to_point = GroupoidMap::terminal(o.groupoid);

  out.coev.source = fam_unit<K>(field);
  out.coev.target = fam_tensor(o, out.dual_object);
  out.coev.apex = o.groupoid;
  out.coev.left_leg = to_point;
  out.coev.right_leg = diag;
  out.coev.filling.source = restrict_rep(to_point, out.coev.source.rep);
  out.coev.filling.target = restrict_rep(diag, out.coev.target.rep);
  out.coev.filling.components = coevaluation(o.rep).components;

  out.ev.source = fam_tensor(out.dual_object, o);
  out.ev.target = fam_unit<K>(field);
  out.ev.apex = o.groupoid;
  out.ev.left_leg = diag;
  out.ev.right_leg = to_point;
  out.ev.filling.source = restrict_rep(diag, out.ev.source.rep);
  out.ev.filling.target = restrict_rep(to_point, out.ev.target.rep);
  out.ev.filling.components = evaluation(o.rep).components;
  return out;
}

// Value of the quantization functor on a morphism, with the six stage matrices kept
// so a failure localizes to a stage.
template <class K>
struct QuantResult {
  Mat<K> matrix;
  std::vector<std::pair<std::string, Mat<K>>> stages;

  Mat<K> stage_product(const Field& field) const {
    Mat<K> acc = ident<K>(field, stages.front().second.cols());
    for (const auto& [name, m] : stages) acc = m * acc;
    return acc;
  }
};

// Sum quantization on objects: the colimit, i.e. the left Kan extension along the
// terminal map.
template <class K>
KanPackage<K> quant_sum_object(const FamObject<K>& o) {
  return left_kan(GroupoidMap::terminal(o.groupoid), o.rep);
}

template <class K>
KanPackage<K> quant_prod_object(const FamObject<K>& o) {
  return right_kan(GroupoidMap::terminal(o.groupoid), o.rep);
}

template <class K>
QuantResult<K> quant_sum_span(const Span<K>& s) {
  const GroupoidMap x = GroupoidMap::terminal(s.source.groupoid);
  const GroupoidMap y = GroupoidMap::terminal(s.target.groupoid);
  const GroupoidMap& f = s.left_leg;
  const GroupoidMap& g = s.right_leg;
  Representation<K> gw = restrict_rep(g, s.target.rep);

  RepMap<K> s1 = push_transformation(KanDirection::Left, x, unit_right(f, s.source.rep));
  RepMap<K> s2 = push_transformation(KanDirection::Left, x, push_transformation(KanDirection::Right, f, s.filling));
  RepMap<K> s3 = push_transformation(KanDirection::Left, x, nakayama_map(f, gw));
  RepMap<K> s4 = rep_map_inverse(kan_composition_iso(KanDirection::Left, f, x, gw));
  RepMap<K> s5 = kan_composition_iso(KanDirection::Left, g, y, gw);
  RepMap<K> s6 = push_transformation(KanDirection::Left, y, counit_left(g, s.target.rep));

  QuantResult<K> out;
  out.stages = {{"unit_right", s1.components[0]}, {"filling", s2.components[0]},
                {"nakayama_left_leg", s3.components[0]}, {"compose_iso_from", s4.components[0]},
                {"compose_iso_to", s5.components[0]}, {"counit_left", s6.components[0]}};
  out.matrix = compose(compose(compose(compose(compose(s1, s2), s3), s4), s5), s6).components[0];
  return out;
}

template <class K>
QuantResult<K> quant_prod_span(const Span<K>& s) {
  const GroupoidMap x = GroupoidMap::terminal(s.source.groupoid);
  const GroupoidMap y = GroupoidMap::terminal(s.target.groupoid);
  const GroupoidMap& f = s.left_leg;
  const GroupoidMap& g = s.right_leg;
  Representation<K> fv = restrict_rep(f, s.source.rep);

  RepMap<K> s1 = push_transformation(KanDirection::Right, x, unit_right(f, s.source.rep));
  RepMap<K> s2 = rep_map_inverse(kan_composition_iso(KanDirection::Right, f, x, fv));
  RepMap<K> s3 = kan_composition_iso(KanDirection::Right, g, y, fv);
  RepMap<K> s4 = push_transformation(KanDirection::Right, y, push_transformation(KanDirection::Right, g, s.filling));
  RepMap<K> s5 = push_transformation(KanDirection::Right, y, nakayama_map(g, restrict_rep(g, s.target.rep)));
  RepMap<K> s6 = push_transformation(KanDirection::Right, y, counit_left(g, s.target.rep));

  QuantResult<K> out;
  out.stages = {{"unit_right", s1.components[0]}, {"compose_iso_from", s2.components[0]},
                {"compose_iso_to", s3.components[0]}, {"filling", s4.components[0]},
                {"nakayama_right_leg", s5.components[0]}, {"counit_left", s6.components[0]}};
  out.matrix = compose(compose(compose(compose(compose(s1, s2), s3), s4), s5), s6).components[0];
  return out;
}

// Monoidal structure of the sum quantization: the external-tensor compatibility of
// left Kan extensions along the terminal maps.
template <class K>
Mat<K> sum_monoidal_iso(const FamObject<K>& a, const FamObject<K>& b) {
  GroupoidMap xa = GroupoidMap::terminal(a.groupoid);
  GroupoidMap xb = GroupoidMap::terminal(b.groupoid);
  return mu_left(xa, xb, a.rep, b.rep).components[0];
}

template <class K>
Mat<K> prod_monoidal_iso(const FamObject<K>& a, const FamObject<K>& b) {
  GroupoidMap xa = GroupoidMap::terminal(a.groupoid);
  GroupoidMap xb = GroupoidMap::terminal(b.groupoid);
  return mu_right(xa, xb, a.rep, b.rep).components[0];
}

// The Nakayama map along the terminal map: the monoidal transformation Prod -> Sum.
template <class K>
Mat<K> nakayama_montran(const FamObject<K>& o) {
  return nakayama_map(GroupoidMap::terminal(o.groupoid), o.rep).components[0];
}

}  // namespace gq
