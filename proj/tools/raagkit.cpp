#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace raag;
using namespace raag::cli;

namespace {

void emit(const Outcome& r, const Options& o) {
  std::cout << dump(r.report);
  if (o.out.empty()) return;
  const std::filesystem::path dir(o.out);
  write_json(dir / (r.name + ".json"), r.report);
  if (r.bundle) write_json(dir / "bundle.json", *r.bundle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Right-angled Artin group toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--graph", o.graph, "graph JSON file");
  app.add_option("--auts", o.auts, "automorphism JSON file (one map or a list)");
  app.add_option("--out", o.out, "directory for report files");
  app.add_option("--jobs", o.jobs, "parallel jobs, 0 for the OpenMP default");
  app.add_option("--bound", o.bound, "conjugator search radius");
  app.add_option("--cap", o.cap, "largest group order to close");
  app.add_option("--subdiv", o.subdiv, "edges per circle")->check(CLI::PositiveNumber);
  app.add_option("--vertices", o.vertices, "comma separated vertex labels");
  app.add_option("--xi", o.xi, "comma separated labels of Xi");
  app.add_option("--kind", o.kind, "generator kind for aut construct");
  app.add_flag("--link-preserving", o.link_preserving, "also check links in verify-closure");

  std::string action;
  std::vector<std::string> args;
  auto sub = [&](const char* name, const char* help, bool needs_action = true) {
    CLI::App* s = app.add_subcommand(name, help);
    if (needs_action) s->add_option("action", action, "action")->required();
    s->add_option("args", args, "arguments");
    return s;
  };
  CLI::App* graph = sub("graph", "links, stars, joins, dimension");
  CLI::App* word = sub("word", "reduce, conjugate");
  CLI::App* aut = sub("aut", "construct, classify, is-inner");
  CLI::App* group = sub("group", "close");
  CLI::App* inv = sub("invariants", "compute-L, verify-closure, assembly-plan");
  CLI::App* complex = sub("complex", "salvetti, npc-check, product");
  CLI::App* realize = sub("realize", "wedge, glue, correct, product pipelines from a manifest");
  CLI::App* verify = sub("verify", "check a realisation bundle", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Outcome r;
    if (graph->parsed()) r = graph_cmd(action, o);
    else if (word->parsed()) r = word_cmd(action, args, o);
    else if (aut->parsed()) r = aut_cmd(action, args, o);
    else if (group->parsed()) r = group_cmd(action, o);
    else if (inv->parsed()) r = invariants_cmd(action, o);
    else if (complex->parsed()) r = complex_cmd(action, args, o);
    else if (realize->parsed()) {
      if (args.size() != 1) throw UsageError("realize takes one manifest file");
      r = realize_cmd(action, args[0], o);
    } else {
      if (args.size() != 1) throw UsageError("verify takes one bundle file");
      r = verify_cmd(args[0], o);
    }
    emit(r, o);
    return r.status;
  } catch (const std::invalid_argument& e) {
    std::cerr << dump(Json{{"status", "usage"}, {"error", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    std::cerr << dump(Json{{"status", "fail"}, {"error", e.what()}});
    return 2;
  }
}
