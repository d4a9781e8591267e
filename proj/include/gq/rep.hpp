#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "gq/groupoid.hpp"
#include "gq/linalg.hpp"

namespace gq {

// Copy-on-write table of action matrices. Representations are immutable once built
// but flow through every composite by value; sharing the matrix payload makes those
// copies constant time.
template <class K>
class ActionTable {
 public:
  using Data = std::vector<std::vector<Mat<K>>>;

  ActionTable() : data_(std::make_shared<Data>()) {}
  ActionTable(std::initializer_list<std::vector<Mat<K>>> init) : data_(std::make_shared<Data>(init)) {}

  size_t size() const { return data_->size(); }
  const std::vector<Mat<K>>& operator[](size_t x) const { return (*data_)[x]; }
  typename Data::const_iterator begin() const { return data_->begin(); }
  typename Data::const_iterator end() const { return data_->end(); }

  Data& mut() {
    if (data_.use_count() > 1) data_ = std::make_shared<Data>(*data_);
    return *data_;
  }
  void push_back(std::vector<Mat<K>> mats) { mut().push_back(std::move(mats)); }
  void emplace_back(size_t count, const Mat<K>& m) { mut().emplace_back(count, m); }
  void clear() { data_ = std::make_shared<Data>(); }

  bool equal(const ActionTable& o) const {
    if (data_ == o.data_) return true;
    if (data_->size() != o.data_->size()) return false;
    for (size_t x = 0; x < data_->size(); ++x) {
      if ((*data_)[x].size() != (*o.data_)[x].size()) return false;
      for (size_t a = 0; a < (*data_)[x].size(); ++a)
        if (!matrix_eq((*data_)[x][a], (*o.data_)[x][a])) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<Data> data_;
};

// Functor from a skeletal groupoid to finite-dimensional vector spaces: a dimension
// and an element-indexed table of invertible matrices per object.
template <class K>
struct Representation {
  Groupoid groupoid;
  Field field;
  std::vector<int> dims;
  ActionTable<K> action;  // [object][element]

  int dim_at(int x) const { return dims[static_cast<size_t>(x)]; }
  const Mat<K>& act(int x, int a) const { return action[static_cast<size_t>(x)][static_cast<size_t>(a)]; }

  void validate() const {
    check_field_kind<K>(field);
    if (static_cast<int>(dims.size()) != groupoid.object_count() ||
        static_cast<int>(action.size()) != groupoid.object_count())
      fail(ErrorCode::DimensionMismatch, "representation tables do not match object count");
    for (int x = 0; x < groupoid.object_count(); ++x) {
      const FiniteGroup& g = groupoid.group_at(x);
      if (static_cast<int>(action[static_cast<size_t>(x)].size()) != g.order())
        fail(ErrorCode::DimensionMismatch, "action table size mismatch at object " + std::to_string(x));
      Index d = dim_at(x);
      for (int a = 0; a < g.order(); ++a)
        if (act(x, a).rows() != d || act(x, a).cols() != d)
          fail(ErrorCode::DimensionMismatch, "action matrix shape mismatch at object " + std::to_string(x));
      if (!is_identity(act(x, FiniteGroup::identity())) && d > 0)
        fail(ErrorCode::NotNatural, "action of the identity is not the identity matrix");
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
          Mat<K> lhs = act(x, a) * act(x, b);
          if (!matrix_eq(lhs, act(x, g.mul(a, b))))
            fail(ErrorCode::NotNatural, "action is not a homomorphism at object " + std::to_string(x) +
                                            ", pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
    }
  }

  friend bool operator==(const Representation& v, const Representation& w) {
    if (v.groupoid != w.groupoid || v.field != w.field || v.dims != w.dims) return false;
    return v.action.equal(w.action);
  }
  friend bool operator!=(const Representation& v, const Representation& w) { return !(v == w); }
};

// Homomorphy check on a generating set only: phi(g b) = phi(g) phi(b) for all
// generators g and all b extends to arbitrary products by induction on word length,
// so this is a proof of the full action property, not a sample of it.
template <class K>
void validate_action_on_generators(const Representation<K>& v) {
  check_field_kind<K>(v.field);
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    const FiniteGroup& g = v.groupoid.group_at(x);
    if (v.dim_at(x) > 0 && !is_identity(v.act(x, FiniteGroup::identity())))
      fail(ErrorCode::NotNatural, "action of the identity is not the identity matrix");
    for (int gen : g.generators())
      for (int b = 0; b < g.order(); ++b) {
        Mat<K> lhs = v.act(x, gen) * v.act(x, b);
        if (!matrix_eq(lhs, v.act(x, g.mul(gen, b))))
          fail(ErrorCode::NotNatural, "action is not a homomorphism at object " + std::to_string(x) +
                                          ", pair (" + std::to_string(gen) + "," + std::to_string(b) + ")");
      }
  }
}

template <class K>
Representation<K> unit_rep(const Groupoid& x, const Field& field) {
  Representation<K> v;
  v.groupoid = x;
  v.field = field;
  v.dims.assign(static_cast<size_t>(x.object_count()), 1);
  for (int i = 0; i < x.object_count(); ++i)
    v.action.emplace_back(static_cast<size_t>(x.group_at(i).order()), ident<K>(field, 1));
  return v;
}

// Regular representation of each automorphism group on the group-element basis.
template <class K>
Representation<K> regular_rep(const Groupoid& x, const Field& field) {
  Representation<K> v;
  v.groupoid = x;
  v.field = field;
  for (int i = 0; i < x.object_count(); ++i) {
    const FiniteGroup& g = x.group_at(i);
    v.dims.push_back(g.order());
    std::vector<Mat<K>> mats;
    for (int a = 0; a < g.order(); ++a) {
      Mat<K> m = zeros<K>(field, g.order(), g.order());
      for (int j = 0; j < g.order(); ++j) m(g.mul(a, j), j) = make_scalar<K>(field, 1);
      mats.push_back(std::move(m));
    }
    v.action.push_back(std::move(mats));
  }
  return v;
}

template <class K>
Representation<K> restrict_rep(const GroupoidMap& f, const Representation<K>& v) {
  if (v.groupoid != f.target) fail(ErrorCode::DimensionMismatch, "representation does not live on the map target");
  Representation<K> r;
  r.groupoid = f.source;
  r.field = v.field;
  for (int x = 0; x < f.source.object_count(); ++x) {
    int fx = f.on_object(x);
    r.dims.push_back(v.dim_at(fx));
    std::vector<Mat<K>> mats;
    for (int a = 0; a < f.source.group_at(x).order(); ++a) mats.push_back(v.act(fx, f.on_hom(x, a)));
    r.action.push_back(std::move(mats));
  }
  return r;
}

template <class K>
Representation<K> tensor(const Representation<K>& v, const Representation<K>& w) {
  if (v.groupoid != w.groupoid) fail(ErrorCode::DimensionMismatch, "tensor factors live on different groupoids");
  if (v.field != w.field) fail(ErrorCode::FieldMismatch, "tensor factors over different fields");
  Representation<K> t;
  t.groupoid = v.groupoid;
  t.field = v.field;
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    t.dims.push_back(v.dim_at(x) * w.dim_at(x));
    std::vector<Mat<K>> mats;
    for (int a = 0; a < v.groupoid.group_at(x).order(); ++a) mats.push_back(kron(v.act(x, a), w.act(x, a)));
    t.action.push_back(std::move(mats));
  }
  return t;
}

// Inverse-transpose dual; the ground field carries no involution.
template <class K>
Representation<K> dual(const Representation<K>& v) {
  Representation<K> d = v;
  auto& table = d.action.mut();
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    const FiniteGroup& g = v.groupoid.group_at(x);
    for (int a = 0; a < g.order(); ++a)
      table[static_cast<size_t>(x)][static_cast<size_t>(a)] = v.act(x, g.inverse(a)).transpose();
  }
  return d;
}

template <class K>
Representation<K> external_tensor(const Representation<K>& v, const Representation<K>& w) {
  if (v.field != w.field) fail(ErrorCode::FieldMismatch, "external tensor over different fields");
  ProductResult prod = product_groupoid(v.groupoid, w.groupoid);
  Representation<K> t;
  t.groupoid = prod.groupoid;
  t.field = v.field;
  for (int i = 0; i < v.groupoid.object_count(); ++i)
    for (int j = 0; j < w.groupoid.object_count(); ++j) {
      t.dims.push_back(v.dim_at(i) * w.dim_at(j));
      int nb = w.groupoid.group_at(j).order();
      std::vector<Mat<K>> mats;
      for (int a = 0; a < v.groupoid.group_at(i).order(); ++a)
        for (int b = 0; b < nb; ++b) mats.push_back(kron(v.act(i, a), w.act(j, b)));
      t.action.push_back(std::move(mats));
    }
  return t;
}

// Map of representations on one groupoid: one intertwining matrix per object.
template <class K>
struct RepMap {
  Representation<K> source;
  Representation<K> target;
  std::vector<Mat<K>> components;

  const Mat<K>& at(int x) const { return components[static_cast<size_t>(x)]; }

  void validate() const {
    if (source.groupoid != target.groupoid) fail(ErrorCode::DimensionMismatch, "endpoints on different groupoids");
    if (source.field != target.field) fail(ErrorCode::FieldMismatch, "endpoints over different fields");
    if (static_cast<int>(components.size()) != source.groupoid.object_count())
      fail(ErrorCode::DimensionMismatch, "component count mismatch");
    for (int x = 0; x < source.groupoid.object_count(); ++x) {
      if (at(x).rows() != target.dim_at(x) || at(x).cols() != source.dim_at(x))
        fail(ErrorCode::DimensionMismatch, "component shape mismatch at object " + std::to_string(x));
      for (int a = 0; a < source.groupoid.group_at(x).order(); ++a) {
        Mat<K> lhs = at(x) * source.act(x, a);
        Mat<K> rhs = target.act(x, a) * at(x);
        if (!matrix_eq(lhs, rhs))
          fail(ErrorCode::NotNatural,
               "intertwining fails at object " + std::to_string(x) + ", element " + std::to_string(a));
      }
    }
  }
};

template <class K>
RepMap<K> identity_map(const Representation<K>& v) {
  RepMap<K> m;
  m.source = v;
  m.target = v;
  for (int x = 0; x < v.groupoid.object_count(); ++x) m.components.push_back(ident<K>(v.field, v.dim_at(x)));
  return m;
}

template <class K>
RepMap<K> zero_map(const Representation<K>& v, const Representation<K>& w) {
  RepMap<K> m;
  m.source = v;
  m.target = w;
  for (int x = 0; x < v.groupoid.object_count(); ++x)
    m.components.push_back(zeros<K>(v.field, w.dim_at(x), v.dim_at(x)));
  return m;
}

// Diagram-order composition: `second` after `first`.
template <class K>
RepMap<K> compose(const RepMap<K>& first, const RepMap<K>& second) {
  if (first.target.dims != second.source.dims)
    fail(ErrorCode::DimensionMismatch, "representation maps are not composable");
  RepMap<K> m;
  m.source = first.source;
  m.target = second.target;
  for (size_t x = 0; x < first.components.size(); ++x)
    m.components.push_back(mat_mul(second.components[x], first.components[x]));
  return m;
}

template <class K>
RepMap<K> scale(const RepMap<K>& m, const K& c) {
  RepMap<K> out = m;
  for (auto& comp : out.components) comp = comp * c;
  return out;
}

template <class K>
RepMap<K> tensor(const RepMap<K>& a, const RepMap<K>& b) {
  RepMap<K> m;
  m.source = tensor(a.source, b.source);
  m.target = tensor(a.target, b.target);
  for (size_t x = 0; x < a.components.size(); ++x) m.components.push_back(kron(a.components[x], b.components[x]));
  return m;
}

template <class K>
RepMap<K> external_tensor(const RepMap<K>& a, const RepMap<K>& b) {
  RepMap<K> m;
  m.source = external_tensor(a.source, b.source);
  m.target = external_tensor(a.target, b.target);
  for (int i = 0; i < a.source.groupoid.object_count(); ++i)
    for (int j = 0; j < b.source.groupoid.object_count(); ++j)
      m.components.push_back(kron(a.components[static_cast<size_t>(i)], b.components[static_cast<size_t>(j)]));
  return m;
}

template <class K>
RepMap<K> restrict_map(const GroupoidMap& f, const RepMap<K>& m) {
  RepMap<K> r;
  r.source = restrict_rep(f, m.source);
  r.target = restrict_rep(f, m.target);
  for (int x = 0; x < f.source.object_count(); ++x) r.components.push_back(m.at(f.on_object(x)));
  return r;
}

template <class K>
RepMap<K> rep_map_inverse(const RepMap<K>& m) {
  RepMap<K> inv;
  inv.source = m.target;
  inv.target = m.source;
  for (const auto& c : m.components) inv.components.push_back(inverse(c, m.source.field));
  return inv;
}

template <class K>
bool rep_map_eq(const RepMap<K>& a, const RepMap<K>& b) {
  if (a.components.size() != b.components.size()) return false;
  for (size_t x = 0; x < a.components.size(); ++x)
    if (!matrix_eq(a.components[x], b.components[x])) return false;
  return true;
}

// The action of a natural transformation phi: u => u' on a representation of the
// common target: restrict(u, v) -> restrict(u', v) with component v(phi_x).
template <class K>
RepMap<K> nat_transf_action(const GroupoidNatTransf& phi, const Representation<K>& v) {
  RepMap<K> m;
  m.source = restrict_rep(phi.source_map, v);
  m.target = restrict_rep(phi.target_map, v);
  for (int x = 0; x < phi.source_map.source.object_count(); ++x)
    m.components.push_back(v.act(phi.source_map.on_object(x), phi.at(x)));
  return m;
}

// Braiding v (x) w -> w (x) v, a permutation in the Kronecker bases.
template <class K>
RepMap<K> braiding(const Representation<K>& v, const Representation<K>& w) {
  RepMap<K> m;
  m.source = tensor(v, w);
  m.target = tensor(w, v);
  for (int x = 0; x < v.groupoid.object_count(); ++x)
    m.components.push_back(braid_matrix<K>(v.field, v.dim_at(x), w.dim_at(x)));
  return m;
}

// co: 1 -> v (x) dual(v), the invariant element sum_i e_i (x) e_i*.
template <class K>
RepMap<K> coevaluation(const Representation<K>& v) {
  RepMap<K> m;
  m.source = unit_rep<K>(v.groupoid, v.field);
  m.target = tensor(v, dual(v));
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    Index d = v.dim_at(x);
    Mat<K> col = zeros<K>(v.field, d * d, 1);
    for (Index i = 0; i < d; ++i) col(i * d + i, 0) = make_scalar<K>(v.field, 1);
    m.components.push_back(std::move(col));
  }
  return m;
}

// ev: dual(v) (x) v -> 1, the pairing.
template <class K>
RepMap<K> evaluation(const Representation<K>& v) {
  RepMap<K> m;
  m.source = tensor(dual(v), v);
  m.target = unit_rep<K>(v.groupoid, v.field);
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    Index d = v.dim_at(x);
    Mat<K> row = zeros<K>(v.field, 1, d * d);
    for (Index i = 0; i < d; ++i) row(0, i * d + i) = make_scalar<K>(v.field, 1);
    m.components.push_back(std::move(row));
  }
  return m;
}

// Categorical dimension of v at x: the trace of the identity, i.e. dims(x) in the field.
template <class K>
K dimension_scalar(const Representation<K>& v, int x) {
  return make_scalar<K>(v.field, v.dim_at(x));
}

}  // namespace gq
