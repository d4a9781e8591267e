#include "gq/groupoid.hpp"

#include <algorithm>
#include <set>

namespace gq {

Groupoid Groupoid::point(const std::string& name) {
  Groupoid g;
  g.object_names = {name};
  g.groups = {FiniteGroup::trivial()};
  return g;
}

Groupoid Groupoid::classifying(const FiniteGroup& grp, const std::string& name) {
  Groupoid g;
  g.object_names = {name};
  g.groups = {grp};
  return g;
}

Groupoid Groupoid::disjoint_union(const Groupoid& a, const Groupoid& b) {
  Groupoid g = a;
  g.object_names.insert(g.object_names.end(), b.object_names.begin(), b.object_names.end());
  g.groups.insert(g.groups.end(), b.groups.begin(), b.groups.end());
  g.validate();
  return g;
}

int Groupoid::object_index(const std::string& name) const {
  for (int i = 0; i < object_count(); ++i)
    if (object_names[static_cast<size_t>(i)] == name) return i;
  fail(ErrorCode::UnknownObject, "no object named '" + name + "'");
}

void Groupoid::validate() const {
  if (object_names.size() != groups.size()) fail(ErrorCode::BadArgument, "object/group count mismatch");
  std::set<std::string> names(object_names.begin(), object_names.end());
  if (names.size() != object_names.size()) fail(ErrorCode::BadArgument, "duplicate object names");
  for (const auto& g : groups) g.validate();
}

GroupoidMap GroupoidMap::identity(const Groupoid& x) {
  GroupoidMap f;
  f.source = x;
  f.target = x;
  for (int i = 0; i < x.object_count(); ++i) {
    f.object_map.push_back(i);
    std::vector<int> ids(static_cast<size_t>(x.group_at(i).order()));
    for (int a = 0; a < x.group_at(i).order(); ++a) ids[static_cast<size_t>(a)] = a;
    f.hom_maps.push_back(std::move(ids));
  }
  return f;
}

GroupoidMap GroupoidMap::terminal(const Groupoid& x, const std::string& point_name) {
  GroupoidMap f;
  f.source = x;
  f.target = Groupoid::point(point_name);
  f.object_map.assign(static_cast<size_t>(x.object_count()), 0);
  for (int i = 0; i < x.object_count(); ++i)
    f.hom_maps.emplace_back(static_cast<size_t>(x.group_at(i).order()), 0);
  return f;
}

int GroupoidMap::preimage(int x, int h) const {
  const auto& tbl = hom_maps[static_cast<size_t>(x)];
  for (int a = 0; a < static_cast<int>(tbl.size()); ++a)
    if (tbl[static_cast<size_t>(a)] == h) return a;
  fail(ErrorCode::BadArgument, "element is not in the image of the hom map");
}

void GroupoidMap::validate() const {
  source.validate();
  target.validate();
  if (static_cast<int>(object_map.size()) != source.object_count() ||
      static_cast<int>(hom_maps.size()) != source.object_count())
    fail(ErrorCode::BadArgument, "map tables do not match source object count");
  for (int x = 0; x < source.object_count(); ++x) {
    int fx = object_map[static_cast<size_t>(x)];
    if (fx < 0 || fx >= target.object_count()) fail(ErrorCode::UnknownObject, "object image out of range");
    const auto& tbl = hom_maps[static_cast<size_t>(x)];
    if (static_cast<int>(tbl.size()) != source.group_at(x).order())
      fail(ErrorCode::BadArgument, "hom table size mismatch at object " + std::to_string(x));
    for (int img : tbl)
      if (img < 0 || img >= target.group_at(fx).order())
        fail(ErrorCode::BadArgument, "hom image out of range");
    if (!is_homomorphism(source.group_at(x), target.group_at(fx), tbl))
      fail(ErrorCode::BadArgument,
           "hom map at object '" + source.object_names[static_cast<size_t>(x)] + "' is not a homomorphism");
  }
}

GroupoidMap compose_maps(const GroupoidMap& f, const GroupoidMap& g) {
  if (f.target != g.source) fail(ErrorCode::NonComposable, "target(f) != source(g)");
  GroupoidMap c;
  c.source = f.source;
  c.target = g.target;
  for (int x = 0; x < f.source.object_count(); ++x) {
    int fx = f.on_object(x);
    c.object_map.push_back(g.on_object(fx));
    std::vector<int> tbl(static_cast<size_t>(f.source.group_at(x).order()));
    for (int a = 0; a < static_cast<int>(tbl.size()); ++a) tbl[static_cast<size_t>(a)] = g.on_hom(fx, f.on_hom(x, a));
    c.hom_maps.push_back(std::move(tbl));
  }
  return c;
}

GroupoidNatTransf GroupoidNatTransf::identity(const GroupoidMap& f) {
  GroupoidNatTransf t;
  t.source_map = f;
  t.target_map = f;
  t.components.assign(static_cast<size_t>(f.source.object_count()), FiniteGroup::identity());
  return t;
}

GroupoidNatTransf GroupoidNatTransf::inverse() const {
  GroupoidNatTransf t;
  t.source_map = target_map;
  t.target_map = source_map;
  for (int x = 0; x < source_map.source.object_count(); ++x) {
    const FiniteGroup& gy = source_map.target.group_at(source_map.on_object(x));
    t.components.push_back(gy.inverse(at(x)));
  }
  return t;
}

void GroupoidNatTransf::validate() const {
  if (source_map.source != target_map.source || source_map.target != target_map.target)
    fail(ErrorCode::BadArgument, "natural transformation endpoints disagree");
  if (source_map.object_map != target_map.object_map)
    fail(ErrorCode::BadArgument, "object maps differ; skeletal naturality requires equality");
  if (static_cast<int>(components.size()) != source_map.source.object_count())
    fail(ErrorCode::BadArgument, "component count mismatch");
  for (int x = 0; x < source_map.source.object_count(); ++x) {
    const FiniteGroup& gy = source_map.target.group_at(source_map.on_object(x));
    int phi = at(x);
    if (phi < 0 || phi >= gy.order()) fail(ErrorCode::BadArgument, "component out of range");
    for (int a = 0; a < source_map.source.group_at(x).order(); ++a) {
      if (gy.mul(phi, source_map.on_hom(x, a)) != gy.mul(target_map.on_hom(x, a), phi))
        fail(ErrorCode::NotNatural, "naturality fails at object " + std::to_string(x) + ", element " +
                                        std::to_string(a));
    }
  }
}

GroupoidNatTransf compose_nat(const GroupoidNatTransf& first, const GroupoidNatTransf& second) {
  if (first.target_map != second.source_map) fail(ErrorCode::NonComposable, "natural transformations not composable");
  GroupoidNatTransf t;
  t.source_map = first.source_map;
  t.target_map = second.target_map;
  for (int x = 0; x < first.source_map.source.object_count(); ++x) {
    const FiniteGroup& gy = first.source_map.target.group_at(first.source_map.on_object(x));
    t.components.push_back(gy.mul(second.at(x), first.at(x)));
  }
  return t;
}

namespace {

int pick_rep(const std::vector<int>& coset, CosetRepRule rule) {
  return rule == CosetRepRule::MinIndex ? coset.front() : coset.back();
}

}  // namespace

FiberData homotopy_fiber(const GroupoidMap& f, int y, CosetRepRule rule) {
  if (y < 0 || y >= f.target.object_count()) fail(ErrorCode::UnknownObject, "fiber base object out of range");
  FiberData data;
  data.base_object = y;
  const FiniteGroup& ay = f.target.group_at(y);
  for (int x = 0; x < f.source.object_count(); ++x) {
    if (f.on_object(x) != y) continue;
    std::vector<int> image = f.image_at(x);
    SubgroupAsGroup iso = subgroup_as_group(f.source.group_at(x), f.kernel_at(x));
    for (const auto& coset : left_cosets(ay, image)) {
      FiberComponent comp;
      comp.source_object = x;
      comp.coset = coset;
      comp.coset_rep = pick_rep(coset, rule);
      comp.isotropy = iso.group;
      comp.isotropy_embedding = iso.embedding;
      data.components.push_back(std::move(comp));
    }
  }
  return data;
}

FiberData homotopy_fiber(const GroupoidMap& f, const std::string& y_name, CosetRepRule rule) {
  return homotopy_fiber(f, f.target.object_index(y_name), rule);
}

PullbackResult homotopy_pullback(const GroupoidMap& g, const GroupoidMap& h, CosetRepRule rule) {
  if (g.target != h.target) fail(ErrorCode::TargetMismatch, "pullback legs have different targets");
  const Groupoid& y = g.target;

  PullbackResult out;
  out.to_left.source = Groupoid{};
  for (int m = 0; m < g.source.object_count(); ++m) {
    for (int n = 0; n < h.source.object_count(); ++n) {
      if (g.on_object(m) != h.on_object(n)) continue;
      int yo = g.on_object(m);
      const FiniteGroup& ay = y.group_at(yo);
      const FiniteGroup& am = g.source.group_at(m);
      const FiniteGroup& an = h.source.group_at(n);

      // double cosets h(A_n) \ A_y / g(A_m), scanned by minimal element
      std::vector<char> placed(static_cast<size_t>(ay.order()), 0);
      int ordinal = 0;
      for (int phi = 0; phi < ay.order(); ++phi) {
        if (placed[static_cast<size_t>(phi)]) continue;
        std::vector<int> dcoset;
        for (int b = 0; b < an.order(); ++b)
          for (int a = 0; a < am.order(); ++a) {
            int e = ay.mul(ay.mul(h.on_hom(n, b), phi), g.on_hom(m, a));
            if (!placed[static_cast<size_t>(e)]) {
              placed[static_cast<size_t>(e)] = 1;
              dcoset.push_back(e);
            }
          }
        std::sort(dcoset.begin(), dcoset.end());
        int phi0 = pick_rep(dcoset, rule);

        // stabilizer of phi0 inside A_m x A_n, product index a-major
        std::vector<int> stab;
        for (int a = 0; a < am.order(); ++a)
          for (int b = 0; b < an.order(); ++b)
            if (ay.mul(h.on_hom(n, b), phi0) == ay.mul(phi0, g.on_hom(m, a)))
              stab.push_back(a * an.order() + b);
        FiniteGroup product = FiniteGroup::direct_product(am, an);
        SubgroupAsGroup sg = subgroup_as_group(product, stab);

        std::string name = g.source.object_names[static_cast<size_t>(m)] + "*" +
                           h.source.object_names[static_cast<size_t>(n)] + "#" + std::to_string(ordinal++);
        out.groupoid.object_names.push_back(name);
        out.groupoid.groups.push_back(sg.group);

        out.to_left.object_map.push_back(m);
        out.to_right.object_map.push_back(n);
        std::vector<int> to_a, to_b;
        for (int pair : sg.embedding) {
          to_a.push_back(pair / an.order());
          to_b.push_back(pair % an.order());
        }
        out.to_left.hom_maps.push_back(std::move(to_a));
        out.to_right.hom_maps.push_back(std::move(to_b));
        out.filling.components.push_back(phi0);
      }
    }
  }
  out.to_left.source = out.groupoid;
  out.to_left.target = g.source;
  out.to_right.source = out.groupoid;
  out.to_right.target = h.source;
  out.filling.source_map = compose_maps(out.to_left, g);
  out.filling.target_map = compose_maps(out.to_right, h);
  out.filling.validate();
  return out;
}

ProductResult product_groupoid(const Groupoid& x, const Groupoid& y) {
  ProductResult out;
  for (int i = 0; i < x.object_count(); ++i) {
    for (int j = 0; j < y.object_count(); ++j) {
      out.groupoid.object_names.push_back(x.object_names[static_cast<size_t>(i)] + "*" +
                                          y.object_names[static_cast<size_t>(j)]);
      out.groupoid.groups.push_back(FiniteGroup::direct_product(x.group_at(i), y.group_at(j)));
      out.proj_left.object_map.push_back(i);
      out.proj_right.object_map.push_back(j);
      int na = x.group_at(i).order(), nb = y.group_at(j).order();
      std::vector<int> to_a(static_cast<size_t>(na * nb)), to_b(static_cast<size_t>(na * nb));
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          to_a[static_cast<size_t>(a * nb + b)] = a;
          to_b[static_cast<size_t>(a * nb + b)] = b;
        }
      out.proj_left.hom_maps.push_back(std::move(to_a));
      out.proj_right.hom_maps.push_back(std::move(to_b));
    }
  }
  out.proj_left.source = out.groupoid;
  out.proj_left.target = x;
  out.proj_right.source = out.groupoid;
  out.proj_right.target = y;
  return out;
}

GroupoidMap product_map(const GroupoidMap& f, const GroupoidMap& g) {
  ProductResult src = product_groupoid(f.source, g.source);
  ProductResult tgt = product_groupoid(f.target, g.target);
  GroupoidMap m;
  m.source = src.groupoid;
  m.target = tgt.groupoid;
  for (int i = 0; i < f.source.object_count(); ++i) {
    for (int j = 0; j < g.source.object_count(); ++j) {
      int fi = f.on_object(i), gj = g.on_object(j);
      m.object_map.push_back(fi * g.target.object_count() + gj);
      int na = f.source.group_at(i).order(), nb = g.source.group_at(j).order();
      int tb = g.target.group_at(gj).order();
      std::vector<int> tbl(static_cast<size_t>(na * nb));
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          tbl[static_cast<size_t>(a * nb + b)] = f.on_hom(i, a) * tb + g.on_hom(j, b);
      m.hom_maps.push_back(std::move(tbl));
    }
  }
  return m;
}

Rat cardinality(const Groupoid& x) {
  Rat total(0);
  for (int i = 0; i < x.object_count(); ++i) total += Rat(1) / Rat(x.group_at(i).order());
  return total;
}

}  // namespace gq
