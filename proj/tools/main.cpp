// Command-line front end: load annotated TBoxes, decide subsumption
// entailment, list entailed monomials, dump the behaviour automaton, and
// generate benchmark families.
//
// Exit codes: 0 = success (prove: entailed), 1 = prove: not entailed,
// 2 = any error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "provel/behaviour.hpp"
#include "provel/families.hpp"

namespace {

using namespace provel;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SemiringMode mode_from(const std::string& s) {
  if (s == "trio") return SemiringMode::trio_commutative;
  if (s == "lap") return SemiringMode::left_absorbing;
  throw Error("unknown mode: " + s + " (expected trio or lap)");
}

EngineKind engine_from(const std::string& s) {
  if (s == "ara") return EngineKind::ara;
  if (s == "saturation") return EngineKind::saturation;
  throw Error("unknown engine: " + s + " (expected ara or saturation)");
}

struct ProveOpts {
  std::string tbox_path, query, mode = "trio", engine = "ara";
  std::optional<int> max_iterations;
  bool json = false;
};

int cmd_prove(const ProveOpts& opt) {
  AnnotatedTBox tbox = parse_tbox(read_file(opt.tbox_path));
  Query query = parse_query(opt.query);
  EngineConfig config;
  config.mode = mode_from(opt.mode);
  config.engine = engine_from(opt.engine);
  config.max_iterations = opt.max_iterations;

  auto t0 = std::chrono::steady_clock::now();
  Reasoner reasoner(std::move(tbox));
  EntailResult res = reasoner.entails(query.goal, query.monomial, config);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  if (opt.json) {
    nlohmann::json j;
    j["query"] = opt.query;
    j["entailed"] = res.entailed;
    j["witness_word"] =
        res.witness_word ? nlohmann::json(render_word(*res.witness_word))
                         : nlohmann::json(nullptr);
    j["witness_ordering"] = res.witness_ordering
                                ? nlohmann::json(*res.witness_ordering)
                                : nlohmann::json(nullptr);
    j["engine"] = opt.engine;
    j["mode"] = opt.mode;
    j["iterations"] = res.iterations;
    j["intersection_checks"] = res.intersection_checks;
    j["wall_time_ms"] = ms;
    std::cout << j.dump(2) << '\n';
  } else {
    if (res.entailed) {
      std::cout << "entailed";
      if (res.witness_word) {
        std::cout << "  witness: " << render_word(*res.witness_word);
        if (res.witness_ordering && !res.witness_ordering->empty()) {
          std::cout << "  ordering: ";
          for (std::size_t i = 0; i < res.witness_ordering->size(); ++i) {
            if (i > 0) std::cout << ',';
            std::cout << (*res.witness_ordering)[i];
          }
        }
      }
      std::cout << '\n';
    } else {
      std::cout << "not entailed\n";
    }
  }
  std::cerr << "time: " << ms << " ms\n";
  return res.entailed ? 0 : 1;
}

struct MonomialsOpts {
  std::string tbox_path, goal, mode = "trio";
  std::optional<std::size_t> limit;
};

int cmd_monomials(const MonomialsOpts& opt) {
  AnnotatedTBox tbox = parse_tbox(read_file(opt.tbox_path));
  Axiom goal = parse_goal(opt.goal);
  MonomialSet set = monomials(tbox, goal, mode_from(opt.mode));
  std::vector<std::string> lines;
  lines.reserve(set.size());
  for (const auto& m : set) lines.push_back(render_monomial(m));
  std::sort(lines.begin(), lines.end());
  std::size_t shown = opt.limit ? std::min(*opt.limit, lines.size()) : lines.size();
  for (std::size_t i = 0; i < shown; ++i) std::cout << lines[i] << '\n';
  if (shown < lines.size())
    std::cout << "... (+" << lines.size() - shown << " more)\n";
  return 0;
}

struct DumpOpts {
  std::string tbox_path, goal, format = "dot", mode = "trio";
  std::optional<int> iterations;
};

int cmd_dump_ara(const DumpOpts& opt) {
  AnnotatedTBox tbox = parse_tbox(read_file(opt.tbox_path));
  Axiom goal = parse_goal(opt.goal);
  Ara ara;
  if (opt.iterations) {
    ara = build_ara_stack(tbox, WtaState{goal}, *opt.iterations);
  } else {
    EngineConfig config;
    config.mode = mode_from(opt.mode);
    ara = behaviour_ara(tbox, WtaState{goal}, config);
  }
  if (opt.format == "dot") {
    std::cout << to_dot(ara);
  } else if (opt.format == "json") {
    std::cout << to_json(ara) << '\n';
  } else {
    throw Error("unknown format: " + opt.format + " (expected dot or json)");
  }
  return 0;
}

struct BenchOpts {
  std::string kind;
  int n = 1;
  std::string output;
};

int cmd_bench(const BenchOpts& opt) {
  if (opt.n < 1) throw Error("bench requires n >= 1");
  if (opt.kind == "sword") {
    AnnotatedTBox tbox = sword_tbox(opt.n);
    std::string path = opt.output.empty()
                           ? "sword_" + std::to_string(opt.n) + ".tbox"
                           : opt.output;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << "# diamond-chain benchmark TBox, n = " << opt.n << '\n'
        << tbox.print();
    out.close();

    Axiom goal = AtomicGci{Concept::named("A0"),
                           Concept::named("A" + std::to_string(opt.n))};
    Reasoner reasoner(tbox);
    MonomialSet set = reasoner.monomials(goal, SemiringMode::trio_commutative);
    const Ara& stack =
        reasoner.goal_ara(WtaState{goal}, SemiringMode::trio_commutative);
    std::cout << "tbox: " << path << '\n';
    std::cout << "monomials(" << to_string(goal) << "): " << set.size() << '\n';
    std::cout << "ara stack states: " << stack.total_states() << '\n';
    std::cout << "ara stack components: " << stack.components().size() << '\n';
    return 0;
  }
  if (opt.kind == "power") {
    if (opt.n > 20) throw Error("power bench capped at n = 20");
    Ara fam = power_family(opt.n);
    std::cout << "states: " << fam.total_states() << '\n';
    const std::size_t len = std::size_t{1} << opt.n;
    for (std::size_t l : {len - 1, len, len + 1}) {
      Word w(l, "a");
      std::cout << "a^" << l << ": "
                << (membership(fam, w) ? "accepted" : "rejected") << '\n';
    }
    return 0;
  }
  throw Error("unknown bench kind: " + opt.kind + " (expected sword or power)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"provenance-annotated subsumption reasoner"};
  app.require_subcommand(1);

  ProveOpts prove;
  auto* p = app.add_subcommand("prove", "decide a monomial entailment query");
  p->add_option("tbox", prove.tbox_path, "annotated TBox file")->required();
  p->add_option("-q,--query", prove.query, "query \"<axiom> : <monomial>\"")
      ->required();
  p->add_option("--mode", prove.mode, "semiring mode: trio|lap");
  p->add_option("--engine", prove.engine, "engine: ara|saturation");
  p->add_option("--max-iterations", prove.max_iterations, "iteration cap");
  p->add_flag("--json", prove.json, "machine-readable output");

  MonomialsOpts mono;
  auto* m = app.add_subcommand("monomials", "list all entailed monomials");
  m->add_option("tbox", mono.tbox_path, "annotated TBox file")->required();
  m->add_option("-g,--goal", mono.goal, "goal axiom \"A <= B\"")->required();
  m->add_option("--mode", mono.mode, "semiring mode: trio|lap");
  m->add_option("--limit", mono.limit, "print at most N monomials");

  DumpOpts dump;
  auto* d = app.add_subcommand("dump-ara", "dump the behaviour automaton");
  d->add_option("tbox", dump.tbox_path, "annotated TBox file")->required();
  d->add_option("-g,--goal", dump.goal, "goal axiom \"A <= B\"")->required();
  d->add_option("--format", dump.format, "output format: dot|json");
  d->add_option("--iterations", dump.iterations,
                "build the stack at a fixed height instead of stabilization");
  d->add_option("--mode", dump.mode, "semiring mode: trio|lap");

  BenchOpts bench;
  auto* b = app.add_subcommand("bench", "generate and measure benchmark families");
  b->add_option("kind", bench.kind, "family: sword|power")->required();
  b->add_option("-n", bench.n, "family size")->required();
  b->add_option("-o,--output", bench.output, "output TBox path (sword)");

  try {
    app.parse(argc, argv);
    if (p->parsed()) return cmd_prove(prove);
    if (m->parsed()) return cmd_monomials(mono);
    if (d->parsed()) return cmd_dump_ara(dump);
    if (b->parsed()) return cmd_bench(bench);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
