#include "gq/group.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gq {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) {
  order_ = static_cast<int>(table.size());
  if (order_ == 0) fail(ErrorCode::NotAGroup, "empty table");
  table_.reserve(static_cast<size_t>(order_) * order_);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != order_) fail(ErrorCode::NotAGroup, "table is not square");
    for (int v : row) {
      if (v < 0 || v >= order_) fail(ErrorCode::NotAGroup, "table entry out of range");
      table_.push_back(v);
    }
  }
  validate();
  compute_inverses();
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorCode::BadArgument, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order() * b.order();
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i1 = 0; i1 < a.order(); ++i1)
    for (int j1 = 0; j1 < b.order(); ++j1)
      for (int i2 = 0; i2 < a.order(); ++i2)
        for (int j2 = 0; j2 < b.order(); ++j2) {
          int lhs = i1 * b.order() + j1;
          int rhs = i2 * b.order() + j2;
          t[static_cast<size_t>(lhs)][static_cast<size_t>(rhs)] = a.mul(i1, i2) * b.order() + b.mul(j1, j2);
        }
  return FiniteGroup(std::move(t));
}

void FiniteGroup::validate() const {
  for (int j = 0; j < order_; ++j) {
    if (mul(0, j) != j || mul(j, 0) != j)
      fail(ErrorCode::NotAGroup, "index 0 is not the identity at element " + std::to_string(j));
  }
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j)
      for (int k = 0; k < order_; ++k)
        if (mul(mul(i, j), k) != mul(i, mul(j, k)))
          fail(ErrorCode::NotAGroup, "associativity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                                         "," + std::to_string(k) + ")");
  for (int i = 0; i < order_; ++i) {
    bool has_inverse = false;
    for (int j = 0; j < order_; ++j)
      if (mul(i, j) == 0 && mul(j, i) == 0) { has_inverse = true; break; }
    if (!has_inverse) fail(ErrorCode::NotAGroup, "element " + std::to_string(i) + " has no two-sided inverse");
  }
}

void FiniteGroup::compute_inverses() {
  inverse_.assign(static_cast<size_t>(order_), 0);
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j)
      if (mul(i, j) == 0 && mul(j, i) == 0) { inverse_[static_cast<size_t>(i)] = j; break; }
}

std::vector<std::vector<int>> FiniteGroup::table_rows() const {
  std::vector<std::vector<int>> rows(static_cast<size_t>(order_), std::vector<int>(static_cast<size_t>(order_)));
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = mul(i, j);
  return rows;
}

std::vector<int> FiniteGroup::closure(std::vector<int> gens) const {
  std::set<int> seen{identity()};
  std::vector<int> frontier{identity()};
  for (int g : gens)
    if (seen.insert(g).second) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : gens) {
        int p = mul(a, g);
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return std::vector<int>(seen.begin(), seen.end());
}

std::vector<std::vector<int>> FiniteGroup::all_subgroups() const {
  std::set<std::vector<int>> found;
  // closures of all subsets would be exponential; closures of all small generator
  // tuples reach every subgroup at these orders (subgroups of groups of order <= 16
  // need at most 3 generators, one per index-2 step)
  std::vector<int> elems(static_cast<size_t>(order_));
  for (int i = 0; i < order_; ++i) elems[static_cast<size_t>(i)] = i;
  found.insert(closure({}));
  for (int a : elems) {
    found.insert(closure({a}));
    for (int b : elems) {
      found.insert(closure({a, b}));
      for (int c : elems) found.insert(closure({a, b, c}));
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

std::vector<int> FiniteGroup::generators() const {
  std::vector<int> gens;
  std::vector<int> have = closure({});
  while (static_cast<int>(have.size()) < order_) {
    for (int g = 0; g < order_; ++g) {
      if (!std::binary_search(have.begin(), have.end(), g)) {
        gens.push_back(g);
        break;
      }
    }
    have = closure(gens);
  }
  return gens;
}

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& images) {
  if (static_cast<int>(images.size()) != src.order()) return false;
  if (images[0] != FiniteGroup::identity()) return false;
  for (int i = 0; i < src.order(); ++i)
    for (int j = 0; j < src.order(); ++j)
      if (tgt.mul(images[static_cast<size_t>(i)], images[static_cast<size_t>(j)]) !=
          images[static_cast<size_t>(src.mul(i, j))])
        return false;
  return true;
}

std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& tgt) {
  std::vector<int> gens = src.generators();
  size_t k = gens.size();

  // express every element as a word: BFS over right multiplication by generators
  std::vector<std::pair<int, int>> word(static_cast<size_t>(src.order()), {-1, -1});  // (parent, gen idx)
  std::vector<int> bfs{FiniteGroup::identity()};
  std::vector<char> seen(static_cast<size_t>(src.order()), 0);
  seen[0] = 1;
  for (size_t at = 0; at < bfs.size(); ++at) {
    int e = bfs[at];
    for (size_t gi = 0; gi < k; ++gi) {
      int p = src.mul(e, gens[gi]);
      if (!seen[static_cast<size_t>(p)]) {
        seen[static_cast<size_t>(p)] = 1;
        word[static_cast<size_t>(p)] = {e, static_cast<int>(gi)};
        bfs.push_back(p);
      }
    }
  }

  std::vector<std::vector<int>> homs;
  std::vector<int> choice(k, 0);
  while (true) {
    std::vector<int> images(static_cast<size_t>(src.order()), -1);
    images[0] = FiniteGroup::identity();
    for (size_t at = 1; at < bfs.size(); ++at) {
      int e = bfs[at];
      auto [parent, gi] = word[static_cast<size_t>(e)];
      images[static_cast<size_t>(e)] =
          tgt.mul(images[static_cast<size_t>(parent)], choice[static_cast<size_t>(gi)]);
    }
    if (is_homomorphism(src, tgt, images)) homs.push_back(images);

    size_t pos = 0;
    while (pos < k && ++choice[pos] == tgt.order()) { choice[pos] = 0; ++pos; }
    if (pos == k) break;
  }
  std::sort(homs.begin(), homs.end());
  return homs;
}

std::vector<int> hom_image(const FiniteGroup& src, const std::vector<int>& images) {
  std::set<int> img(images.begin(), images.end());
  (void)src;
  return std::vector<int>(img.begin(), img.end());
}

std::vector<int> hom_kernel(const FiniteGroup& src, const std::vector<int>& images) {
  std::vector<int> ker;
  for (int i = 0; i < src.order(); ++i)
    if (images[static_cast<size_t>(i)] == FiniteGroup::identity()) ker.push_back(i);
  return ker;
}

namespace {

std::vector<std::vector<int>> cosets_impl(const FiniteGroup& g, const std::vector<int>& subgroup, bool left) {
  std::vector<char> placed(static_cast<size_t>(g.order()), 0);
  std::vector<std::vector<int>> cosets;
  for (int e = 0; e < g.order(); ++e) {
    if (placed[static_cast<size_t>(e)]) continue;
    std::vector<int> coset;
    for (int h : subgroup) {
      int m = left ? g.mul(e, h) : g.mul(h, e);
      coset.push_back(m);
      placed[static_cast<size_t>(m)] = 1;
    }
    std::sort(coset.begin(), coset.end());
    cosets.push_back(std::move(coset));
  }
  // scanning e in increasing order already yields cosets ordered by minimal element
  return cosets;
}

}  // namespace

std::vector<std::vector<int>> left_cosets(const FiniteGroup& g, const std::vector<int>& subgroup) {
  return cosets_impl(g, subgroup, true);
}

std::vector<std::vector<int>> right_cosets(const FiniteGroup& g, const std::vector<int>& subgroup) {
  return cosets_impl(g, subgroup, false);
}

SubgroupAsGroup subgroup_as_group(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<int> emb = elements;
  std::sort(emb.begin(), emb.end());
  if (emb.empty() || emb[0] != FiniteGroup::identity())
    fail(ErrorCode::NotAGroup, "subgroup does not contain the identity");
  std::map<int, int> index_of;
  for (size_t i = 0; i < emb.size(); ++i) index_of[emb[i]] = static_cast<int>(i);
  int n = static_cast<int>(emb.size());
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = g.mul(emb[static_cast<size_t>(i)], emb[static_cast<size_t>(j)]);
      auto it = index_of.find(p);
      if (it == index_of.end()) fail(ErrorCode::NotAGroup, "element list is not closed under multiplication");
      t[static_cast<size_t>(i)][static_cast<size_t>(j)] = it->second;
    }
  return SubgroupAsGroup{FiniteGroup(std::move(t)), std::move(emb)};
}

}  // namespace gq
