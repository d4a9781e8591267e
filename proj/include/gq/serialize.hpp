#pragma once

#include <string>

#include <json.hpp>

#include "gq/famquant.hpp"

namespace gq {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const Field& field) {
  if (field.is_rationals()) return Json("Q");
  Json j;
  j["Fp"] = field.modulus();
  return j;
}

inline Field parse_field(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "Q") return Field::rationals();
  if (j.is_object() && j.contains("Fp")) return Field::prime(j["Fp"].get<std::int64_t>());
  fail(ErrorCode::ParseError, "expected \"Q\" or {\"Fp\": p}");
}

inline Field parse_field_flag(const std::string& s) {
  if (s == "q" || s == "Q") return Field::rationals();
  if (s.rfind("fp:", 0) == 0 || s.rfind("Fp:", 0) == 0) {
    try {
      return Field::prime(std::stoll(s.substr(3)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  fail(ErrorCode::BadArgument, "field must be q or fp:P, got '" + s + "'");
}

inline std::string scalar_to_string(const Rat& s) { return s.str(); }
inline std::string scalar_to_string(const Fp& s) { return s.str(); }

// Entries are exact decimal strings: "a" or "a/b" over Q, a residue over F_p. A
// rational string is accepted for F_p too and reduced, so rational corpus files can
// be re-read over any prime not dividing the denominators.
template <class K>
K parse_scalar(const std::string& s, const Field& field) {
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (num.empty() || den.empty()) fail(ErrorCode::ParseError, "bad scalar '" + s + "'");
  try {
    if constexpr (std::is_same_v<K, Rat>) {
      (void)field;
      return Rat(BigInt(num), BigInt(den));
    } else {
      BigInt n(num), d(den);
      std::int64_t p = field.modulus();
      auto reduce = [&](const BigInt& v) {
        BigInt r = v % p;
        if (r < 0) r += p;
        return static_cast<long long>(r);
      };
      return make_scalar<K>(field, reduce(n)) / make_scalar<K>(field, reduce(d));
    }
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorCode::ParseError, "bad scalar '" + s + "'");
  }
}

template <class K>
Json matrix_to_json(const Mat<K>& m, const Field& field) {
  Json j;
  j["field"] = field_to_json(field);
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_string(m(r, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

// Reads a matrix into the given target field; the file may be over Q (entries are
// reduced into F_p when needed) or over the same prime field.
template <class K>
Mat<K> parse_matrix(const Json& j, const Field& field) {
  Field written = parse_field(j.at("field"));
  if (!written.is_rationals() && written != field)
    fail(ErrorCode::FieldMismatch, "matrix written over " + written.str() + ", requested " + field.str());
  Index rows = j.at("rows").get<Index>();
  Index cols = j.at("cols").get<Index>();
  const Json& entries = j.at("entries");
  if (static_cast<Index>(entries.size()) != rows) fail(ErrorCode::ParseError, "entry row count mismatch");
  Mat<K> m = zeros<K>(field, rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = entries[static_cast<size_t>(r)];
    if (static_cast<Index>(row.size()) != cols) fail(ErrorCode::ParseError, "entry column count mismatch");
    for (Index c = 0; c < cols; ++c) m(r, c) = parse_scalar<K>(row[static_cast<size_t>(c)].get<std::string>(), field);
  }
  return m;
}

inline Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["order"] = g.order();
  j["table"] = g.table_rows();
  return j;
}

inline FiniteGroup parse_group(const Json& j) {
  auto table = j.at("table").get<std::vector<std::vector<int>>>();
  if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(table.size()))
    fail(ErrorCode::ParseError, "order does not match table size");
  return FiniteGroup(std::move(table));
}

inline Json groupoid_to_json(const Groupoid& x) {
  Json objs = Json::array();
  for (int i = 0; i < x.object_count(); ++i) {
    Json o;
    o["name"] = x.object_names[static_cast<size_t>(i)];
    o["group"] = group_to_json(x.group_at(i));
    objs.push_back(std::move(o));
  }
  Json j;
  j["objects"] = std::move(objs);
  return j;
}

inline Groupoid parse_groupoid(const Json& j) {
  Groupoid x;
  for (const Json& o : j.at("objects")) {
    x.object_names.push_back(o.at("name").get<std::string>());
    x.groups.push_back(parse_group(o.at("group")));
  }
  x.validate();
  return x;
}

inline Json map_to_json(const GroupoidMap& f) {
  Json j;
  j["source"] = groupoid_to_json(f.source);
  j["target"] = groupoid_to_json(f.target);
  Json on_objects = Json::object();
  Json on_homs = Json::object();
  for (int x = 0; x < f.source.object_count(); ++x) {
    const std::string& name = f.source.object_names[static_cast<size_t>(x)];
    on_objects[name] = f.target.object_names[static_cast<size_t>(f.on_object(x))];
    on_homs[name] = f.hom_maps[static_cast<size_t>(x)];
  }
  j["on_objects"] = std::move(on_objects);
  j["on_homs"] = std::move(on_homs);
  return j;
}

inline GroupoidMap parse_map(const Json& j) {
  GroupoidMap f;
  f.source = parse_groupoid(j.at("source"));
  f.target = parse_groupoid(j.at("target"));
  f.object_map.resize(static_cast<size_t>(f.source.object_count()));
  f.hom_maps.resize(static_cast<size_t>(f.source.object_count()));
  for (int x = 0; x < f.source.object_count(); ++x) {
    const std::string& name = f.source.object_names[static_cast<size_t>(x)];
    f.object_map[static_cast<size_t>(x)] =
        f.target.object_index(j.at("on_objects").at(name).get<std::string>());
    f.hom_maps[static_cast<size_t>(x)] = j.at("on_homs").at(name).get<std::vector<int>>();
  }
  f.validate();
  return f;
}

template <class K>
Json rep_to_json(const Representation<K>& v) {
  Json j;
  j["groupoid"] = groupoid_to_json(v.groupoid);
  j["field"] = field_to_json(v.field);
  Json dims = Json::object();
  Json action = Json::object();
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    const std::string& name = v.groupoid.object_names[static_cast<size_t>(x)];
    dims[name] = v.dim_at(x);
    Json table = Json::object();
    for (int a = 0; a < v.groupoid.group_at(x).order(); ++a)
      table[std::to_string(a)] = matrix_to_json(v.act(x, a), v.field);
    action[name] = std::move(table);
  }
  j["dims"] = std::move(dims);
  j["action"] = std::move(action);
  return j;
}

template <class K>
Representation<K> parse_rep(const Json& j, const Field& field) {
  Representation<K> v;
  v.groupoid = parse_groupoid(j.at("groupoid"));
  v.field = field;
  Field written = parse_field(j.at("field"));
  if (!written.is_rationals() && written != field)
    fail(ErrorCode::FieldMismatch, "representation written over " + written.str() + ", requested " + field.str());
  for (int x = 0; x < v.groupoid.object_count(); ++x) {
    const std::string& name = v.groupoid.object_names[static_cast<size_t>(x)];
    v.dims.push_back(j.at("dims").at(name).get<int>());
    std::vector<Mat<K>> mats;
    for (int a = 0; a < v.groupoid.group_at(x).order(); ++a)
      mats.push_back(parse_matrix<K>(j.at("action").at(name).at(std::to_string(a)), field));
    v.action.push_back(std::move(mats));
  }
  v.validate();
  return v;
}

template <class K>
Json rep_map_to_json(const RepMap<K>& m) {
  Json j;
  j["source"] = rep_to_json(m.source);
  j["target"] = rep_to_json(m.target);
  Json comps = Json::object();
  for (int x = 0; x < m.source.groupoid.object_count(); ++x)
    comps[m.source.groupoid.object_names[static_cast<size_t>(x)]] = matrix_to_json(m.at(x), m.source.field);
  j["components"] = std::move(comps);
  return j;
}

template <class K>
RepMap<K> parse_rep_map(const Json& j, const Field& field) {
  RepMap<K> m;
  m.source = parse_rep<K>(j.at("source"), field);
  m.target = parse_rep<K>(j.at("target"), field);
  for (int x = 0; x < m.source.groupoid.object_count(); ++x)
    m.components.push_back(
        parse_matrix<K>(j.at("components").at(m.source.groupoid.object_names[static_cast<size_t>(x)]), field));
  m.validate();
  return m;
}

template <class K>
Json fam_object_to_json(const FamObject<K>& o) {
  Json j;
  j["groupoid"] = groupoid_to_json(o.groupoid);
  j["rep"] = rep_to_json(o.rep);
  return j;
}

template <class K>
FamObject<K> parse_fam_object(const Json& j, const Field& field) {
  FamObject<K> o;
  o.groupoid = parse_groupoid(j.at("groupoid"));
  o.rep = parse_rep<K>(j.at("rep"), field);
  if (o.rep.groupoid != o.groupoid) fail(ErrorCode::ParseError, "object groupoid differs from its representation");
  return o;
}

template <class K>
Json span_to_json(const Span<K>& s) {
  Json j;
  j["schema"] = 1;
  j["field"] = field_to_json(s.source.rep.field);
  j["source"] = fam_object_to_json(s.source);
  j["target"] = fam_object_to_json(s.target);
  j["apex"] = groupoid_to_json(s.apex);
  j["left_leg"] = map_to_json(s.left_leg);
  j["right_leg"] = map_to_json(s.right_leg);
  Json filling = Json::object();
  for (int x = 0; x < s.apex.object_count(); ++x)
    filling[s.apex.object_names[static_cast<size_t>(x)]] = matrix_to_json(s.filling.at(x), s.source.rep.field);
  j["filling"] = std::move(filling);
  return j;
}

template <class K>
Span<K> parse_span(const Json& j, const Field& field) {
  Span<K> s;
  s.source = parse_fam_object<K>(j.at("source"), field);
  s.target = parse_fam_object<K>(j.at("target"), field);
  s.apex = parse_groupoid(j.at("apex"));
  s.left_leg = parse_map(j.at("left_leg"));
  s.right_leg = parse_map(j.at("right_leg"));
  s.filling.source = restrict_rep(s.left_leg, s.source.rep);
  s.filling.target = restrict_rep(s.right_leg, s.target.rep);
  for (int x = 0; x < s.apex.object_count(); ++x)
    s.filling.components.push_back(
        parse_matrix<K>(j.at("filling").at(s.apex.object_names[static_cast<size_t>(x)]), field));
  s.validate();
  return s;
}

template <class K>
Json kan_package_to_json(const KanPackage<K>& pkg) {
  Json j;
  j["schema"] = 1;
  j["direction"] = pkg.direction == KanDirection::Left ? "left" : "right";
  j["map"] = map_to_json(pkg.map);
  j["input"] = rep_to_json(pkg.input);
  j["output"] = rep_to_json(pkg.output);
  Json blocks = Json::object();
  for (int y = 0; y < pkg.map.target.object_count(); ++y) {
    Json list = Json::array();
    for (const auto& blk : pkg.blocks[static_cast<size_t>(y)]) {
      Json b;
      b["source_object"] = pkg.map.source.object_names[static_cast<size_t>(blk.source_object)];
      b["coset_reps"] = blk.coset_reps;
      b["section"] = matrix_to_json(blk.section, pkg.input.field);
      b["projection"] = matrix_to_json(blk.projection, pkg.input.field);
      list.push_back(std::move(b));
    }
    blocks[pkg.map.target.object_names[static_cast<size_t>(y)]] = std::move(list);
  }
  j["blocks"] = std::move(blocks);
  return j;
}

template <class K>
Json weight_table_to_json(const WeightTable<K>& w) {
  Json j;
  j["schema"] = 1;
  j["field"] = field_to_json(w.field);
  j["map"] = map_to_json(w.map);
  Json comps = Json::array();
  for (const auto& c : w.components) {
    Json jc;
    jc["target_object"] = w.map.target.object_names[static_cast<size_t>(c.target_object)];
    jc["source_object"] = w.map.source.object_names[static_cast<size_t>(c.source_object)];
    jc["coset_rep"] = c.coset_rep;
    jc["kernel_order"] = c.kernel_order;
    jc["value"] = scalar_to_string(c.value);
    jc["invertible"] = c.invertible;
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j;
}

}  // namespace gq
