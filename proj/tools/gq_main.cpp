#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "gq/commands.hpp"

namespace {

// 0: all checks pass, 1: law failures in the report, 2: bad input or invalid data
int finish(const gq::CommandResult& result, const std::string& out_path) {
  if (!out_path.empty())
    gq::cmd_detail::write_json(out_path, result.report);
  else
    std::cout << result.report.dump(2) << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Kan extensions, Nakayama maps and span quantization for finite groupoids"};
  app.require_subcommand(1);

  std::string field_flag = "q";
  std::string out_path;
  std::string map_path, rep_path, span_path, input_path;
  std::string side = "left", variant = "nu", functor = "sum", object_name;
  std::string a_path, b_path, corpus_dir;
  int n = 2;
  std::optional<int> m;
  int max_order = 6;
  std::uint64_t seed = 1;
  int span_pairs = 8;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--field", field_flag, "ground field: q or fp:P");
    cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a group, groupoid, or map document");
  validate->add_option("input", input_path)->required();
  add_common(validate);

  CLI::App* validate_rep = app.add_subcommand("validate-rep", "validate a representation or intertwiner");
  validate_rep->add_option("input", input_path)->required();
  add_common(validate_rep);

  CLI::App* fiber = app.add_subcommand("fiber", "homotopy fiber of a map at a target object");
  fiber->add_option("--map", map_path)->required();
  fiber->add_option("--object", object_name)->required();
  add_common(fiber);

  CLI::App* pullback = app.add_subcommand("pullback", "skeletal homotopy pullback of two maps into a common target");
  pullback->add_option("g_map", a_path, "left map JSON")->required();
  pullback->add_option("h_map", b_path, "right map JSON")->required();
  add_common(pullback);

  CLI::App* card = app.add_subcommand("cardinality", "groupoid cardinality");
  card->add_option("--groupoid", input_path)->required();
  add_common(card);

  CLI::App* kan = app.add_subcommand("kan", "left or right Kan extension with bookkeeping");
  kan->add_option("--side", side, "left or right");
  kan->add_option("--map", map_path)->required();
  kan->add_option("--rep", rep_path)->required();
  add_common(kan);

  CLI::App* nakayama = app.add_subcommand("nakayama", "gamma, nu, or the weight table of a map");
  nakayama->add_option("--map", map_path)->required();
  nakayama->add_option("--rep", rep_path);
  nakayama->add_option("--variant", variant, "gamma, nu, or delta");
  add_common(nakayama);

  CLI::App* quantize = app.add_subcommand("quantize", "apply the sum or prod quantization functor to a span");
  quantize->add_option("--span", span_path)->required();
  quantize->add_option("--functor", functor, "sum or prod");
  add_common(quantize);

  CLI::App* compose = app.add_subcommand("compose", "compose two spans by homotopy pullback");
  compose->add_option("--a", a_path)->required();
  compose->add_option("--b", b_path)->required();
  add_common(compose);

  CLI::App* laws = app.add_subcommand("laws", "check the Nakayama-category laws over a corpus");
  laws->add_option("--corpus", corpus_dir, "corpus directory (otherwise built in memory)");
  laws->add_option("--max-order", max_order);
  laws->add_option("--seed", seed);
  add_common(laws);

  CLI::App* counterexample = app.add_subcommand("counterexample", "the gamma functoriality discrepancy");
  counterexample->add_option("--n", n)->required();
  counterexample->add_option("--m", m, "second component order for the two-component variant");
  add_common(counterexample);

  CLI::App* corpus = app.add_subcommand("corpus", "write the deterministic instance corpus");
  corpus->add_option("--max-order", max_order);
  corpus->add_option("--seed", seed);
  corpus->add_option("--span-pairs", span_pairs);
  corpus->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    gq::Field field = gq::parse_field_flag(field_flag);
    if (validate->parsed()) return finish(gq::cmd_validate(input_path), out_path);
    if (validate_rep->parsed()) return finish(gq::cmd_validate_rep(input_path, field), out_path);
    if (fiber->parsed()) return finish(gq::cmd_fiber(map_path, object_name), out_path);
    if (pullback->parsed()) return finish(gq::cmd_pullback(a_path, b_path), out_path);
    if (card->parsed()) return finish(gq::cmd_cardinality(input_path), out_path);
    if (kan->parsed()) return finish(gq::cmd_kan(side, map_path, rep_path, field), out_path);
    if (nakayama->parsed()) {
      if (variant != "delta" && rep_path.empty())
        gq::fail(gq::ErrorCode::BadArgument, "--rep is required unless --variant delta");
      return finish(gq::cmd_nakayama(map_path, rep_path, field, variant), out_path);
    }
    if (quantize->parsed()) return finish(gq::cmd_quantize(span_path, functor, field), out_path);
    if (compose->parsed()) return finish(gq::cmd_compose(a_path, b_path, field), out_path);
    if (laws->parsed()) {
      gq::LawsOptions opt;
      opt.field = field;
      opt.max_group_order = max_order;
      opt.seed = seed;
      opt.corpus_dir = corpus_dir;
      return finish(gq::cmd_laws(opt), out_path);
    }
    if (counterexample->parsed()) return finish(gq::cmd_counterexample(n, m, field), out_path);
    if (corpus->parsed()) {
      gq::CorpusOptions opt;
      opt.max_group_order = max_order;
      opt.seed = seed;
      opt.span_pairs = span_pairs;
      gq::CommandResult r = gq::cmd_corpus(opt, out_path);
      std::cout << "corpus written to " << out_path << "\n";
      return r.exit_code;
    }
  } catch (const gq::Error& e) {
    gq::Json err;
    err["error"]["code"] = gq::error_code_name(e.code());
    err["error"]["message"] = e.what();
    std::cerr << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"code\": \"Internal\", \"message\": \"" << e.what() << "\"}}\n";
    return 2;
  }
  return 2;
}
