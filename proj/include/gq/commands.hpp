#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "gq/corpus.hpp"
#include "gq/serialize.hpp"

namespace gq {

struct CommandResult {
  int exit_code = 0;
  Json report;
};

namespace cmd_detail {

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadArgument, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return j;
}

inline void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::BadArgument, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// The two-leg composite * -> BC_n -> * (or its two-component variant) that exhibits
// the non-functoriality of gamma; returns per-component discrepancy factors.
template <class K>
Json counterexample_report(const std::vector<int>& orders, const Field& field) {
  Groupoid middle;
  Groupoid source;
  for (size_t i = 0; i < orders.size(); ++i) {
    std::string name = "c" + std::to_string(i);
    middle = i == 0 ? Groupoid::classifying(FiniteGroup::cyclic(orders[i]), name)
                    : Groupoid::disjoint_union(middle, Groupoid::classifying(FiniteGroup::cyclic(orders[i]), name));
    source = i == 0 ? Groupoid::point("p" + std::to_string(i))
                    : Groupoid::disjoint_union(source, Groupoid::point("p" + std::to_string(i)));
  }
  GroupoidMap s;
  s.source = source;
  s.target = middle;
  for (int i = 0; i < source.object_count(); ++i) {
    s.object_map.push_back(i);
    s.hom_maps.push_back({0});
  }
  GroupoidMap t = GroupoidMap::terminal(middle);
  Representation<K> v = unit_rep<K>(source, field);

  Json report;
  report["schema"] = 1;
  report["field"] = field_to_json(field);
  report["orders"] = orders;

  GammaPaths<K> paths = gamma_paths(s, t, v);
  const Mat<K>& upper = paths.through_legs.components[0];
  const Mat<K>& lower = paths.through_composite.components[0];
  report["gamma"]["upper_path"] = matrix_to_json(upper, field);
  report["gamma"]["lower_path"] = matrix_to_json(lower, field);
  Json factors = Json::array();
  bool all_match = true;
  for (Index i = 0; i < upper.rows(); ++i) {
    Json f;
    f["component"] = source.object_names[static_cast<size_t>(i)];
    K expected = make_scalar<K>(field, orders[static_cast<size_t>(i)]);
    f["factor"] = scalar_to_string(expected);
    f["factor_exact"] = upper(i, i) == expected * lower(i, i);
    if (lower(i, i) == make_scalar<K>(field, 0)) f["lower_path_zero"] = true;
    if (upper(i, i) == make_scalar<K>(field, 0)) f["upper_path_zero"] = true;
    all_match = all_match && (upper(i, i) == expected * lower(i, i));
    factors.push_back(std::move(f));
  }
  report["gamma"]["factors"] = std::move(factors);
  report["gamma"]["paths_equal"] = rep_map_eq(paths.through_legs, paths.through_composite);
  report["gamma"]["factor_identity_holds"] = all_match;

  try {
    RepMap<K> through_legs =
        compose(nakayama_map(t, right_kan(s, v).output), push_transformation(KanDirection::Left, t, nakayama_map(s, v)));
    GroupoidMap ts = compose_maps(s, t);
    RepMap<K> through_composite =
        compose(compose(rep_map_inverse(kan_composition_iso(KanDirection::Right, s, t, v)), nakayama_map(ts, v)),
                kan_composition_iso(KanDirection::Left, s, t, v));
    report["nakayama"]["paths_agree"] = rep_map_eq(through_legs, through_composite);
    report["nakayama"]["map"] = matrix_to_json(through_composite.components[0], field);
  } catch (const Error& e) {
    report["nakayama"]["error"] = error_code_name(e.code());
    report["nakayama"]["message"] = e.what();
  }
  return report;
}

}  // namespace cmd_detail

template <class Fn>
auto with_field(const Field& field, Fn&& fn) {
  if (field.is_rationals()) return fn.template operator()<Rat>();
  return fn.template operator()<Fp>();
}

// counterexample --n N [--m M]: the paper's one- and two-component discrepancies.
inline CommandResult cmd_counterexample(int n, std::optional<int> m, const Field& field) {
  if (n < 1 || (m && *m < 1)) fail(ErrorCode::BadArgument, "cyclic orders must be positive");
  std::vector<int> orders;
  if (m) orders.push_back(*m);
  orders.push_back(n);
  CommandResult out;
  out.report = with_field(field, [&]<class K>() { return cmd_detail::counterexample_report<K>(orders, field); });
  out.exit_code = 0;
  return out;
}

// Writes the deterministic corpus to a directory tree.
inline CommandResult cmd_corpus(const CorpusOptions& options, const std::string& out_dir) {
  namespace fs = std::filesystem;
  Corpus corpus = build_corpus(options);
  fs::create_directories(out_dir);
  fs::create_directories(out_dir + "/maps");
  fs::create_directories(out_dir + "/reps");
  fs::create_directories(out_dir + "/spans");

  Json manifest;
  manifest["schema"] = 1;
  manifest["max_group_order"] = options.max_group_order;
  manifest["seed"] = options.seed;
  Json map_list = Json::array();
  for (size_t i = 0; i < corpus.maps.size(); ++i) {
    std::string file = "maps/" + std::to_string(i) + ".json";
    Json j = map_to_json(corpus.maps[i].map);
    j["schema"] = 1;
    j["id"] = corpus.maps[i].id;
    cmd_detail::write_json(out_dir + "/" + file, j);
    Json entry;
    entry["id"] = corpus.maps[i].id;
    entry["file"] = file;
    map_list.push_back(std::move(entry));
  }
  manifest["maps"] = std::move(map_list);

  Json rep_list = Json::array();
  for (size_t i = 0; i < corpus.reps.size(); ++i) {
    std::string file = "reps/" + std::to_string(i) + ".json";
    Json j = rep_to_json(corpus.reps[i].rep);
    j["schema"] = 1;
    j["id"] = corpus.reps[i].id;
    j["groupoid_id"] = corpus.groupoids[corpus.reps[i].groupoid].id;
    cmd_detail::write_json(out_dir + "/" + file, j);
    Json entry;
    entry["id"] = corpus.reps[i].id;
    entry["file"] = file;
    entry["groupoid_id"] = corpus.groupoids[corpus.reps[i].groupoid].id;
    rep_list.push_back(std::move(entry));
  }
  manifest["reps"] = std::move(rep_list);

  Json pair_list = Json::array();
  for (const auto& pr : corpus.pairs) {
    Json entry;
    entry["id"] = pr.id;
    entry["first"] = corpus.maps[pr.first].id;
    entry["second"] = corpus.maps[pr.second].id;
    pair_list.push_back(std::move(entry));
  }
  manifest["pairs"] = std::move(pair_list);

  Json span_list = Json::array();
  for (size_t i = 0; i < corpus.span_pairs.size(); ++i) {
    std::string file_a = "spans/" + std::to_string(i) + "_first.json";
    std::string file_b = "spans/" + std::to_string(i) + "_second.json";
    cmd_detail::write_json(out_dir + "/" + file_a, span_to_json(corpus.span_pairs[i].first));
    cmd_detail::write_json(out_dir + "/" + file_b, span_to_json(corpus.span_pairs[i].second));
    Json entry;
    entry["id"] = corpus.span_pairs[i].id;
    entry["first"] = file_a;
    entry["second"] = file_b;
    span_list.push_back(std::move(entry));
  }
  manifest["span_pairs"] = std::move(span_list);
  cmd_detail::write_json(out_dir + "/manifest.json", manifest);

  CommandResult out;
  out.report = std::move(manifest);
  return out;
}

struct LawsOptions {
  Field field = Field::rationals();
  int max_group_order = 6;
  std::uint64_t seed = 1;
  int max_rep_dim = 3;
  int reps_per_pair = 1;   // latest eligible corpus reps (the generic random ones) first
  std::string corpus_dir;  // when set, maps and reps are loaded from disk
};

// Nakayama-category law checker: condition (iv), invertibility of every weight, per
// map; condition (v), the functoriality triangle, per composable pair and small
// representation. Failures are report entries, never exceptions.
inline CommandResult cmd_laws(const LawsOptions& options) {
  struct Instance {
    std::string id;
    GroupoidMap first;
    std::optional<GroupoidMap> second;
    std::optional<Representation<Rat>> rep;
    std::string law;
  };
  std::vector<Instance> instances;

  auto add_from_corpus = [&](const Corpus& corpus) {
    for (const auto& cm : corpus.maps) instances.push_back({"iv:" + cm.id, cm.map, {}, {}, "condition_iv"});
    for (const auto& pr : corpus.pairs) {
      std::vector<size_t> eligible;
      for (size_t ri : corpus.reps_on(corpus.maps[pr.first].source)) {
        int maxdim = *std::max_element(corpus.reps[ri].rep.dims.begin(), corpus.reps[ri].rep.dims.end());
        if (maxdim <= options.max_rep_dim) eligible.push_back(ri);
      }
      std::reverse(eligible.begin(), eligible.end());
      if (options.reps_per_pair > 0 && static_cast<int>(eligible.size()) > options.reps_per_pair)
        eligible.resize(static_cast<size_t>(options.reps_per_pair));
      for (size_t ri : eligible)
        instances.push_back({"v:" + pr.id + ":" + corpus.reps[ri].id, corpus.maps[pr.first].map,
                             corpus.maps[pr.second].map, corpus.reps[ri].rep, "condition_v"});
    }
  };

  if (options.corpus_dir.empty()) {
    CorpusOptions copt;
    copt.max_group_order = options.max_group_order;
    copt.seed = options.seed;
    add_from_corpus(build_corpus(copt));
  } else {
    Json manifest = cmd_detail::load_json(options.corpus_dir + "/manifest.json");
    Corpus corpus;
    std::unordered_map<std::string, size_t> map_index;
    std::unordered_map<std::string, size_t> groupoid_index;
    for (const Json& entry : manifest.at("maps")) {
      Json j = cmd_detail::load_json(options.corpus_dir + "/" + entry.at("file").get<std::string>());
      GroupoidMap map = parse_map(j);
      map_index[entry.at("id").get<std::string>()] = corpus.maps.size();
      auto intern = [&](const Groupoid& g, const std::string& gid) {
        auto it = groupoid_index.find(gid);
        if (it != groupoid_index.end()) return it->second;
        corpus.groupoids.push_back({gid, g});
        groupoid_index[gid] = corpus.groupoids.size() - 1;
        return corpus.groupoids.size() - 1;
      };
      std::string id = entry.at("id").get<std::string>();
      std::string src_id = id.substr(0, id.find("->"));
      std::string tgt_id = id.substr(id.find("->") + 2);
      tgt_id = tgt_id.substr(0, tgt_id.find('#'));
      corpus.maps.push_back({id, intern(map.source, src_id), intern(map.target, tgt_id), std::move(map)});
    }
    for (const Json& entry : manifest.at("reps")) {
      Json j = cmd_detail::load_json(options.corpus_dir + "/" + entry.at("file").get<std::string>());
      Representation<Rat> rep = parse_rep<Rat>(j, Field::rationals());
      std::string gid = entry.at("groupoid_id").get<std::string>();
      corpus.reps.push_back({entry.at("id").get<std::string>(), groupoid_index.at(gid), std::move(rep)});
    }
    for (const Json& entry : manifest.at("pairs"))
      corpus.pairs.push_back({entry.at("id").get<std::string>(),
                              map_index.at(entry.at("first").get<std::string>()),
                              map_index.at(entry.at("second").get<std::string>())});
    add_from_corpus(corpus);
  }

  std::sort(instances.begin(), instances.end(), [](const Instance& a, const Instance& b) { return a.id < b.id; });

  Json checks = Json::array();
  bool all_pass = true;
  for (const Instance& inst : instances) {
    auto t0 = std::chrono::steady_clock::now();
    Json record;
    record["law"] = inst.law;
    record["instance"] = inst.id;
    bool pass = false;
    std::string discrepancy;
    try {
      if (inst.law == "condition_iv") {
        with_field(options.field, [&]<class K>() {
          WeightTable<K> w = delta<K>(inst.first, options.field);
          pass = w.all_invertible();
          if (!pass) discrepancy = "non-invertible weights at " + w.non_invertible_list();
          return 0;
        });
      } else {
        with_field(options.field, [&]<class K>() {
          Representation<K> rep = corpus_rep_as<K>(*inst.rep, options.field);
          auto verdict = check_condition_v(inst.first, *inst.second, rep);
          pass = !verdict.has_value();
          if (!pass) discrepancy = *verdict;
          return 0;
        });
      }
    } catch (const Error& e) {
      pass = false;
      discrepancy = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    record["pass"] = pass;
    if (!discrepancy.empty()) record["discrepancy"] = discrepancy;
    record["runtime_ms"] = cmd_detail::ms_since(t0);
    all_pass = all_pass && pass;
    checks.push_back(std::move(record));
  }

  CommandResult out;
  out.report["schema"] = 1;
  out.report["field"] = field_to_json(options.field);
  out.report["checks"] = std::move(checks);
  out.report["all_pass"] = all_pass;
  out.exit_code = all_pass ? 0 : 1;
  return out;
}

inline CommandResult cmd_fiber(const std::string& map_path, const std::string& object_name) {
  GroupoidMap f = parse_map(cmd_detail::load_json(map_path));
  FiberData fib = homotopy_fiber(f, object_name);
  Json j;
  j["schema"] = 1;
  j["base_object"] = object_name;
  Json comps = Json::array();
  for (const auto& c : fib.components) {
    Json jc;
    jc["source_object"] = f.source.object_names[static_cast<size_t>(c.source_object)];
    jc["coset_rep"] = c.coset_rep;
    jc["coset"] = c.coset;
    jc["isotropy"] = group_to_json(c.isotropy);
    jc["isotropy_embedding"] = c.isotropy_embedding;
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return {0, std::move(j)};
}

inline CommandResult cmd_pullback(const std::string& g_path, const std::string& h_path) {
  GroupoidMap g = parse_map(cmd_detail::load_json(g_path));
  GroupoidMap h = parse_map(cmd_detail::load_json(h_path));
  PullbackResult pb = homotopy_pullback(g, h);
  Json j;
  j["schema"] = 1;
  j["groupoid"] = groupoid_to_json(pb.groupoid);
  j["to_left"] = map_to_json(pb.to_left);
  j["to_right"] = map_to_json(pb.to_right);
  j["filling"] = pb.filling.components;
  return {0, std::move(j)};
}

inline CommandResult cmd_cardinality(const std::string& groupoid_path) {
  Json doc = cmd_detail::load_json(groupoid_path);
  Groupoid x = parse_groupoid(doc.contains("objects") ? doc : doc.at("groupoid"));
  Json j;
  j["schema"] = 1;
  j["cardinality"] = cardinality(x).str();
  return {0, std::move(j)};
}

inline CommandResult cmd_validate(const std::string& path) {
  Json j = cmd_detail::load_json(path);
  Json out;
  out["schema"] = 1;
  if (j.contains("on_objects")) {
    parse_map(j);
    out["kind"] = "map";
  } else if (j.contains("objects")) {
    parse_groupoid(j);
    out["kind"] = "groupoid";
  } else if (j.contains("table")) {
    parse_group(j);
    out["kind"] = "group";
  } else {
    fail(ErrorCode::ParseError, "expected a group, groupoid, or map document");
  }
  out["valid"] = true;
  return {0, std::move(out)};
}

inline CommandResult cmd_validate_rep(const std::string& path, const Field& field) {
  Json j = cmd_detail::load_json(path);
  Json out;
  out["schema"] = 1;
  with_field(field, [&]<class K>() {
    if (j.contains("components")) {
      parse_rep_map<K>(j, field);
      out["kind"] = "rep_map";
    } else {
      parse_rep<K>(j, field);
      out["kind"] = "rep";
    }
    return 0;
  });
  out["valid"] = true;
  return {0, std::move(out)};
}

inline CommandResult cmd_kan(const std::string& side, const std::string& map_path, const std::string& rep_path,
                             const Field& field) {
  if (side != "left" && side != "right") fail(ErrorCode::BadArgument, "--side must be left or right");
  GroupoidMap f = parse_map(cmd_detail::load_json(map_path));
  CommandResult out;
  out.report = with_field(field, [&]<class K>() {
    Representation<K> v = parse_rep<K>(cmd_detail::load_json(rep_path), field);
    KanPackage<K> pkg = kan_extension(side == "left" ? KanDirection::Left : KanDirection::Right, f, v);
    return kan_package_to_json(pkg);
  });
  return out;
}

inline CommandResult cmd_nakayama(const std::string& map_path, const std::string& rep_path, const Field& field,
                                  const std::string& variant) {
  GroupoidMap f = parse_map(cmd_detail::load_json(map_path));
  CommandResult out;
  out.report = with_field(field, [&]<class K>() {
    if (variant == "delta") {
      WeightTable<K> w = delta<K>(f, field);
      return weight_table_to_json(w);
    }
    Representation<K> v = parse_rep<K>(cmd_detail::load_json(rep_path), field);
    RepMap<K> cmp = variant == "gamma" ? gamma(f, v) : nakayama_map(f, v);
    Json j;
    j["schema"] = 1;
    j["kind"] = variant;
    j["map"] = map_to_json(f);
    j["field"] = field_to_json(field);
    Json comps = Json::object();
    for (int y = 0; y < f.target.object_count(); ++y)
      comps[f.target.object_names[static_cast<size_t>(y)]] = matrix_to_json(cmp.at(y), field);
    j["components"] = std::move(comps);
    return j;
  });
  return out;
}

inline CommandResult cmd_quantize(const std::string& span_path, const std::string& functor, const Field& field) {
  if (functor != "sum" && functor != "prod") fail(ErrorCode::BadArgument, "--functor must be sum or prod");
  CommandResult out;
  out.report = with_field(field, [&]<class K>() {
    Span<K> s = parse_span<K>(cmd_detail::load_json(span_path), field);
    QuantResult<K> q = functor == "sum" ? quant_sum_span(s) : quant_prod_span(s);
    Json j;
    j["schema"] = 1;
    j["functor"] = functor;
    j["field"] = field_to_json(field);
    j["matrix"] = matrix_to_json(q.matrix, field);
    Json stages = Json::array();
    for (const auto& [name, m] : q.stages) {
      Json st;
      st["stage"] = name;
      st["matrix"] = matrix_to_json(m, field);
      stages.push_back(std::move(st));
    }
    j["stages"] = std::move(stages);
    return j;
  });
  return out;
}

inline CommandResult cmd_compose(const std::string& a_path, const std::string& b_path, const Field& field) {
  CommandResult out;
  out.report = with_field(field, [&]<class K>() {
    Span<K> a = parse_span<K>(cmd_detail::load_json(a_path), field);
    Span<K> b = parse_span<K>(cmd_detail::load_json(b_path), field);
    return span_to_json(compose_spans(a, b));
  });
  return out;
}

}  // namespace gq
