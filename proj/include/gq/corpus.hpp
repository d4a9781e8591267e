#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gq/famquant.hpp"

namespace gq {

// Deterministic pool of small groupoids, maps, composable pairs, representations and
// spans. All representations are stored over Q with integer entries and unimodular
// changes of basis, so the same corpus reduces cleanly modulo any prime.
struct CorpusOptions {
  int max_group_order = 6;
  std::uint64_t seed = 1;
  int random_reps_per_groupoid = 2;
  int max_random_rep_dim = 3;
  int max_maps_per_pair = 48;
  int span_pairs = 0;  // composable span pairs for quantization checks
};

struct CorpusGroupoid {
  std::string id;
  Groupoid groupoid;
};

struct CorpusMap {
  std::string id;
  size_t source;  // corpus groupoid index
  size_t target;
  GroupoidMap map;
};

struct CorpusPair {
  std::string id;
  size_t first;   // index into maps, f : X -> Y
  size_t second;  // g : Y -> Z with source(g) = target(f)
};

struct CorpusRep {
  std::string id;
  size_t groupoid;
  Representation<Rat> rep;
};

struct CorpusSpanPair {
  std::string id;
  Span<Rat> first;
  Span<Rat> second;  // composable after first
};

struct Corpus {
  CorpusOptions options;
  std::vector<CorpusGroupoid> groupoids;
  std::vector<CorpusMap> maps;
  std::vector<CorpusPair> pairs;
  std::vector<CorpusRep> reps;
  std::vector<CorpusSpanPair> span_pairs;

  std::vector<size_t> reps_on(size_t groupoid_index) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < reps.size(); ++i)
      if (reps[i].groupoid == groupoid_index) out.push_back(i);
    return out;
  }
};

namespace corpus_detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<FiniteGroup> small_groups(int max_order) {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= max_order; ++n) out.push_back(FiniteGroup::cyclic(n));
  // products of at least two cyclic factors, each >= 2, nondecreasing factor lists
  std::vector<std::vector<int>> factor_lists;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int min_factor, int product) -> void {
    if (cur.size() >= 2) factor_lists.push_back(cur);
    for (int f = min_factor; product * f <= max_order; ++f) {
      cur.push_back(f);
      self(self, f, product * f);
      cur.pop_back();
    }
  };
  rec(rec, 2, 1);
  for (const auto& fl : factor_lists) {
    FiniteGroup g = FiniteGroup::cyclic(fl[0]);
    for (size_t i = 1; i < fl.size(); ++i) g = FiniteGroup::direct_product(g, FiniteGroup::cyclic(fl[i]));
    out.push_back(std::move(g));
  }
  return out;
}

// All maps X -> Y: every object assignment combined with every choice of
// homomorphisms, in lexicographic order, truncated at `cap`.
inline std::vector<GroupoidMap> enumerate_maps(const Groupoid& x, const Groupoid& y, int cap) {
  std::vector<GroupoidMap> out;
  int nx = x.object_count(), ny = y.object_count();
  std::vector<int> obj(static_cast<size_t>(nx), 0);
  while (true) {
    std::vector<std::vector<std::vector<int>>> hom_choices;
    bool feasible = true;
    for (int i = 0; i < nx && feasible; ++i) {
      auto homs = all_homomorphisms(x.group_at(i), y.group_at(obj[static_cast<size_t>(i)]));
      if (homs.empty()) feasible = false;
      hom_choices.push_back(std::move(homs));
    }
    if (feasible) {
      std::vector<size_t> pick(static_cast<size_t>(nx), 0);
      while (static_cast<int>(out.size()) < cap) {
        GroupoidMap f;
        f.source = x;
        f.target = y;
        f.object_map = obj;
        for (int i = 0; i < nx; ++i)
          f.hom_maps.push_back(hom_choices[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]);
        out.push_back(std::move(f));
        int pos = 0;
        while (pos < nx && ++pick[static_cast<size_t>(pos)] == hom_choices[static_cast<size_t>(pos)].size()) {
          pick[static_cast<size_t>(pos)] = 0;
          ++pos;
        }
        if (pos == nx) break;
      }
    }
    int pos = 0;
    while (pos < nx && ++obj[static_cast<size_t>(pos)] == ny) {
      obj[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == nx || static_cast<int>(out.size()) >= cap) break;
  }
  return out;
}

// Random unimodular integer matrix: a product of elementary row operations.
inline Mat<Rat> random_unimodular(Rng& rng, Index n) {
  Field q = Field::rationals();
  Mat<Rat> u = ident<Rat>(q, n);
  for (int step = 0; step < 2 * static_cast<int>(n); ++step) {
    Index i = rng.uniform(0, n - 1), j = rng.uniform(0, n - 1);
    if (i == j) continue;
    long long c = rng.uniform(-1, 1);
    u.row(i) += u.row(j) * make_scalar<Rat>(q, c);
  }
  return u;
}

// A representation with small integer entries: per object, the permutation action on
// the cosets of a subgroup of small index, conjugated by a unimodular matrix.
inline Representation<Rat> random_rep(Rng& rng, const Groupoid& x, int max_dim) {
  Field q = Field::rationals();
  Representation<Rat> v;
  v.groupoid = x;
  v.field = q;
  for (int i = 0; i < x.object_count(); ++i) {
    const FiniteGroup& g = x.group_at(i);
    std::vector<std::vector<int>> candidates;
    for (const auto& sub : g.all_subgroups())
      if (g.order() <= max_dim * static_cast<int>(sub.size())) candidates.push_back(sub);
    const auto& sub = candidates[static_cast<size_t>(rng.uniform(0, static_cast<long long>(candidates.size()) - 1))];
    auto cosets = left_cosets(g, sub);
    Index d = static_cast<Index>(cosets.size());
    std::vector<int> coset_of(static_cast<size_t>(g.order()));
    for (size_t c = 0; c < cosets.size(); ++c)
      for (int e : cosets[c]) coset_of[static_cast<size_t>(e)] = static_cast<int>(c);
    Mat<Rat> u = random_unimodular(rng, d);
    Mat<Rat> uinv = inverse(u, q);
    v.dims.push_back(static_cast<int>(d));
    std::vector<Mat<Rat>> mats;
    for (int a = 0; a < g.order(); ++a) {
      Mat<Rat> perm = zeros<Rat>(q, d, d);
      for (size_t c = 0; c < cosets.size(); ++c)
        perm(coset_of[static_cast<size_t>(g.mul(a, cosets[c][0]))], static_cast<Index>(c)) = Rat(1);
      mats.push_back(Mat<Rat>(u * perm * uinv));
    }
    v.action.push_back(std::move(mats));
  }
  v.validate();
  return v;
}

// Sign-like character: factor through a subgroup of index two when one exists.
inline bool sign_rep(const Groupoid& x, Representation<Rat>& out) {
  Field q = Field::rationals();
  out.groupoid = x;
  out.field = q;
  out.dims.assign(static_cast<size_t>(x.object_count()), 1);
  out.action.clear();
  bool nontrivial = false;
  for (int i = 0; i < x.object_count(); ++i) {
    const FiniteGroup& g = x.group_at(i);
    std::vector<int> index2;
    for (const auto& sub : g.all_subgroups())
      if (static_cast<int>(sub.size()) * 2 == g.order()) { index2 = sub; break; }
    std::vector<Mat<Rat>> mats;
    for (int a = 0; a < g.order(); ++a) {
      bool inside = index2.empty() || std::binary_search(index2.begin(), index2.end(), a);
      Mat<Rat> m = ident<Rat>(q, 1);
      if (!inside) { m(0, 0) = Rat(-1); nontrivial = true; }
      mats.push_back(std::move(m));
    }
    out.action.push_back(std::move(mats));
  }
  return nontrivial;
}

// Integer-entry intertwiner: conjugation-averaged random matrix, left unscaled so it
// stays integral.
inline RepMap<Rat> random_filling(Rng& rng, const Representation<Rat>& src, const Representation<Rat>& tgt) {
  Field q = Field::rationals();
  RepMap<Rat> m;
  m.source = src;
  m.target = tgt;
  for (int x = 0; x < src.groupoid.object_count(); ++x) {
    Mat<Rat> seed = zeros<Rat>(q, tgt.dim_at(x), src.dim_at(x));
    for (Index r = 0; r < seed.rows(); ++r)
      for (Index c = 0; c < seed.cols(); ++c) seed(r, c) = make_scalar<Rat>(q, rng.uniform(-2, 2));
    Mat<Rat> acc = zeros<Rat>(q, tgt.dim_at(x), src.dim_at(x));
    const FiniteGroup& g = src.groupoid.group_at(x);
    for (int a = 0; a < g.order(); ++a) acc += tgt.act(x, a) * seed * src.act(x, g.inverse(a));
    m.components.push_back(std::move(acc));
  }
  m.validate();
  return m;
}

}  // namespace corpus_detail

template <class K>
Representation<K> corpus_rep_as(const Representation<Rat>& rep, const Field& field) {
  if constexpr (std::is_same_v<K, Rat>) {
    (void)field;
    return rep;
  } else {
    Representation<K> out;
    out.groupoid = rep.groupoid;
    out.field = field;
    out.dims = rep.dims;
    for (const auto& mats : rep.action) {
      std::vector<Mat<K>> conv;
      for (const auto& m : mats) {
        Mat<K> c = zeros<K>(field, m.rows(), m.cols());
        for (Index r = 0; r < m.rows(); ++r)
          for (Index cidx = 0; cidx < m.cols(); ++cidx) {
            const Rat& e = m(r, cidx);
            BigInt num = e.numerator() % field.modulus();
            BigInt den = e.denominator() % field.modulus();
            K kd = make_scalar<K>(field, static_cast<long long>(den));
            if (kd == make_scalar<K>(field, 0))
              fail(ErrorCode::FieldMismatch, "denominator vanishes modulo " + std::to_string(field.modulus()));
            c(r, cidx) = make_scalar<K>(field, static_cast<long long>(num)) / kd;
          }
        conv.push_back(std::move(c));
      }
      out.action.push_back(std::move(conv));
    }
    out.validate();
    return out;
  }
}

inline Corpus build_corpus(const CorpusOptions& options) {
  Corpus corpus;
  corpus.options = options;
  corpus_detail::Rng rng(options.seed);

  auto groups = corpus_detail::small_groups(options.max_group_order);
  for (size_t i = 0; i < groups.size(); ++i) {
    std::string id = "g" + std::to_string(groups[i].order()) + "_" + std::to_string(i);
    corpus.groupoids.push_back({id, Groupoid::classifying(groups[i], "a")});
  }
  // a few multi-component groupoids
  if (options.max_group_order >= 2) {
    corpus.groupoids.push_back(
        {"two_points", Groupoid::disjoint_union(Groupoid::point("a"), Groupoid::point("b"))});
    corpus.groupoids.push_back(
        {"bc2_sqcup_bc3",
         Groupoid::disjoint_union(Groupoid::classifying(FiniteGroup::cyclic(2), "a"),
                                  Groupoid::classifying(std::min(options.max_group_order, 3) >= 3
                                                            ? FiniteGroup::cyclic(3)
                                                            : FiniteGroup::cyclic(2),
                                                        "b"))});
  }

  for (size_t si = 0; si < corpus.groupoids.size(); ++si)
    for (size_t ti = 0; ti < corpus.groupoids.size(); ++ti) {
      auto maps = corpus_detail::enumerate_maps(corpus.groupoids[si].groupoid, corpus.groupoids[ti].groupoid,
                                                options.max_maps_per_pair);
      for (size_t k = 0; k < maps.size(); ++k) {
        std::string id = corpus.groupoids[si].id + "->" + corpus.groupoids[ti].id + "#" + std::to_string(k);
        corpus.maps.push_back({id, si, ti, std::move(maps[k])});
      }
    }

  for (size_t i = 0; i < corpus.maps.size(); ++i)
    for (size_t j = 0; j < corpus.maps.size(); ++j)
      if (corpus.maps[i].target == corpus.maps[j].source)
        corpus.pairs.push_back({corpus.maps[i].id + ";" + corpus.maps[j].id, i, j});

  for (size_t gi = 0; gi < corpus.groupoids.size(); ++gi) {
    const Groupoid& x = corpus.groupoids[gi].groupoid;
    corpus.reps.push_back({corpus.groupoids[gi].id + ":unit", gi, unit_rep<Rat>(x, Field::rationals())});
    corpus.reps.push_back({corpus.groupoids[gi].id + ":regular", gi, regular_rep<Rat>(x, Field::rationals())});
    Representation<Rat> sign;
    if (corpus_detail::sign_rep(x, sign))
      corpus.reps.push_back({corpus.groupoids[gi].id + ":sign", gi, std::move(sign)});
    for (int k = 0; k < options.random_reps_per_groupoid; ++k)
      corpus.reps.push_back({corpus.groupoids[gi].id + ":random" + std::to_string(k), gi,
                             corpus_detail::random_rep(rng, x, options.max_random_rep_dim)});
  }

  // composable span pairs over Q
  for (int k = 0; k < options.span_pairs; ++k) {
    auto pick_map = [&](size_t target_groupoid, bool match_target) -> size_t {
      std::vector<size_t> candidates;
      for (size_t i = 0; i < corpus.maps.size(); ++i) {
        const auto& m = corpus.maps[i];
        if (corpus.groupoids[m.source].groupoid.object_count() > 2) continue;
        if (!match_target || m.target == target_groupoid) candidates.push_back(i);
      }
      return candidates[static_cast<size_t>(rng.uniform(0, static_cast<long long>(candidates.size()) - 1))];
    };
    size_t f1 = pick_map(0, false);
    size_t g1 = pick_map(0, false);
    // re-draw the right leg until it shares the apex
    while (corpus.maps[g1].source != corpus.maps[f1].source) g1 = pick_map(0, false);
    size_t f2 = pick_map(corpus.maps[g1].target, true);
    size_t g2 = pick_map(0, false);
    while (corpus.maps[g2].source != corpus.maps[f2].source) g2 = pick_map(0, false);

    auto rep_for = [&](size_t gi) {
      auto ids = corpus.reps_on(gi);
      return corpus.reps[ids[static_cast<size_t>(rng.uniform(0, static_cast<long long>(ids.size()) - 1))]].rep;
    };
    Span<Rat> a, b;
    a.source = {corpus.groupoids[corpus.maps[f1].target].groupoid, rep_for(corpus.maps[f1].target)};
    a.target = {corpus.groupoids[corpus.maps[g1].target].groupoid, rep_for(corpus.maps[g1].target)};
    a.apex = corpus.groupoids[corpus.maps[f1].source].groupoid;
    a.left_leg = corpus.maps[f1].map;
    a.right_leg = corpus.maps[g1].map;
    a.filling = corpus_detail::random_filling(rng, restrict_rep(a.left_leg, a.source.rep),
                                              restrict_rep(a.right_leg, a.target.rep));
    b.source = a.target;
    b.target = {corpus.groupoids[corpus.maps[g2].target].groupoid, rep_for(corpus.maps[g2].target)};
    b.apex = corpus.groupoids[corpus.maps[f2].source].groupoid;
    b.left_leg = corpus.maps[f2].map;
    b.right_leg = corpus.maps[g2].map;
    b.filling = corpus_detail::random_filling(rng, restrict_rep(b.left_leg, b.source.rep),
                                              restrict_rep(b.right_leg, b.target.rep));
    corpus.span_pairs.push_back({"spanpair" + std::to_string(k), std::move(a), std::move(b)});
  }
  return corpus;
}

}  // namespace gq
