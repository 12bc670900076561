#include "sepcs/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "sepcs/connect_fixed.hpp"
#include "sepcs/errors.hpp"
#include "sepcs/generators.hpp"
#include "sepcs/json_io.hpp"
#include "sepcs/lp.hpp"
#include "sepcs/matroid_transform.hpp"
#include "sepcs/nsepa.hpp"
#include "sepcs/oracle.hpp"

namespace sepcs {

namespace {

struct Options {
  std::string in = "-";
  std::string out = "-";
  std::string trace_path;
  std::string profile;
  std::string protocol_path;
  std::string mode = "alternatives";
  std::uint64_t seed = 1;
  bool approx = false;
  bool timings = false;
  bool single_source = false;
  bool with_profile = false;
  std::int64_t max_profiles = EnumerationBudget{}.max_profiles;
  std::int64_t max_paths = EnumerationBudget{}.max_paths_per_player;
  int players = 2;
  int facilities = 2;
  int resources = 6;
  int vertices = 8;
  int max_edges = 10;
  int max_delay = 4;
  int player_index = 0;
  bool directed = false;
  bool subadditive = false;
  std::string kind = "uniform";
};

class Session {
 public:
  Session(const Options& o, std::istream& in, std::ostream& out, std::ostream& err)
      : o_(o), in_(in), out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

  EnumerationBudget budget() const { return {o_.max_profiles, o_.max_paths}; }

  std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>()};
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  Instance instance() { return instance_from_json(parse_json(read_text(o_.in))); }

  void emit_json(const Json& j) { emit_text(j.dump(2) + "\n"); }

  void emit_text(const std::string& text) {
    if (o_.out == "-") {
      out_ << text;
      return;
    }
    std::ofstream f(o_.out);
    if (!f) throw InputError("cannot write " + o_.out);
    f << text;
  }

  void put(Json& j, const std::string& key, const Rational& r) const {
    j[key] = to_json(r);
    if (o_.approx) j[key + "_approx"] = r.approx();
  }

  void finish(Json& report) const {
    if (o_.timings) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
      report["timings"] = {{"total_ms", ms}};
    }
  }

  void write_trace(const Trace& trace) {
    if (o_.trace_path.empty()) return;
    std::ostringstream lines;
    for (const auto& step : trace) lines << to_json(step).dump() << "\n";
    if (o_.trace_path == "-") {
      err_ << lines.str();
      return;
    }
    std::ofstream f(o_.trace_path);
    if (!f) throw InputError("cannot write " + o_.trace_path);
    f << lines.str();
  }

  Trace* trace() { return o_.trace_path.empty() ? nullptr : &trace_; }
  const Trace& steps() const { return trace_; }

  const Options& o_;

 private:
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  Trace trace_;
};

Json base_report(const std::string& command) { return Json{{"command", command}}; }

// Fills the verifier-backed fields and returns the exit code.
int verified(Session& s, Json& r, const Game& game, const Profile& input, const SeparableProtocol& protocol) {
  const Profile& output = protocol.table().base();
  s.put(r, "input_cost", total_cost(game, input));
  s.put(r, "output_cost", total_cost(game, output));
  bool pne = verify_pne(game, protocol).ok;
  bool budget = verify_budget_balance(game, protocol, output).ok;
  r["pne_verified"] = pne;
  r["budget_balanced"] = budget;
  r["enforceable"] = pne && budget;
  r["profile"] = to_json(output);
  r["protocol"] = to_json(protocol.table());
  return pne && budget ? kExitOk : kExitVerificationFailed;
}

int cmd_transform_matroid(Session& s) {
  Instance in = s.instance();
  Profile start = s.o_.profile.empty() && !in.profile ? first_bases(in.game) : in.select(s.o_.profile);
  auto result = transform_matroid(in.game, start, s.trace());
  auto protocol = build_matroid_protocol(in.game, result.profile);
  Json r = base_report("transform-matroid");
  int code = verified(s, r, in.game, start, protocol);
  r["iterations"] = result.stats.outer_iterations;
  r["packet_moves"] = result.stats.packet_moves;
  r["move_bound"] = result.stats.bound;
  s.write_trace(s.steps());
  s.finish(r);
  s.emit_json(r);
  return code;
}

int cmd_transform_tree(Session& s) {
  Instance in = s.instance();
  Vertex source = common_source(in.game);
  Profile start = s.o_.profile.empty() && !in.profile ? approx_steiner_tree(in.game) : in.select(s.o_.profile);
  auto result = transform_single_source(in.game, start, s.trace());
  Json r = base_report("transform-tree");
  int code = verified(s, r, in.game, start, result.protocol);
  r["source"] = source;
  r["iterations"] = result.stats.passes;
  r["closes"] = result.stats.closes;
  r["rehangs"] = result.stats.rehangs;
  r["aux_single_payer"] = result.stats.aux_single_payer;
  s.write_trace(s.steps());
  s.finish(r);
  s.emit_json(r);
  return code;
}

Profile default_path_profile(const Game& game) {
  // Every player's standalone shortest path under c + d.
  Profile p;
  for (Player i = 0; i < game.num_players; ++i) {
    const auto& ps = std::get<PathSpace>(game.spaces[i]);
    std::vector<Rational> w;
    for (Resource e = 0; e < game.num_resources; ++e) w.push_back(game.standalone_cost(i, e));
    auto path = shortest_path(*game.graph, ps.source, ps.terminal, w);
    if (!path) throw Disconnected("player " + std::to_string(i) + " cannot reach its terminal");
    p.choice.push_back(make_resource_set(path->edges));
  }
  return p;
}

Pairs pairs_of(const Game& game) {
  Pairs pairs;
  for (const auto& sp : game.spaces) {
    const auto* ps = std::get_if<PathSpace>(&sp);
    if (ps == nullptr) throw UnsupportedSpace("path strategies required");
    pairs.push_back({ps->source, ps->terminal});
  }
  return pairs;
}

LpMode parse_mode(const std::string& m) {
  if (m == "alternatives") return LpMode::kAlternatives;
  if (m == "full") return LpMode::kFullPaths;
  throw InputError("unknown LP mode " + m);
}

int cmd_nsepa_transform(Session& s) {
  Instance in = s.instance();
  Profile start = s.o_.profile.empty() && !in.profile ? default_path_profile(in.game) : in.select(s.o_.profile);
  auto result = nsepa_transform(in.game, start, s.trace());
  Json r = base_report("nsepa transform");
  int code = verified(s, r, in.game, start, result.protocol);
  r["iterations"] = result.stats.phases;
  r["repairs"] = result.stats.repairs;
  r["substitutions"] = result.stats.substitutions;
  r["input_enforceable"] = result.stats.input_enforceable;
  s.put(r, "lp_value", result.stats.lp_value);
  s.write_trace(s.steps());
  s.finish(r);
  s.emit_json(r);
  return code;
}

int cmd_nsepa_check(Session& s) {
  Instance in = s.instance();
  Json r = base_report("nsepa check");
  bool sp = !in.game.graph->directed() && is_n_series_parallel(*in.game.graph, pairs_of(in.game));
  r["n_series_parallel"] = sp;
  auto irr = irredundant(*in.game.graph, pairs_of(in.game));
  r["irredundant_edges"] = irr.original_edge;
  if (!s.o_.profile.empty() || in.profile) {
    const Profile& p = in.select(s.o_.profile);
    LpMode mode = parse_mode(s.o_.mode);
    if (mode == LpMode::kAlternatives && !sp) throw NotSeriesParallel("alternatives mode needs an n-series-parallel game");
    auto rep = is_enforceable(in.game, p, mode, s.budget());
    s.put(r, "input_cost", total_cost(in.game, p));
    r["lp_status"] = to_string(rep.status);
    if (rep.status == LpStatus::kOptimal) s.put(r, "lp_value", rep.lp_value);
    s.put(r, "target", rep.target);
    r["enforceable"] = rep.enforceable;
    if (rep.shares) {
      SeparableProtocol protocol(in.game, *rep.shares);
      r["pne_verified"] = verify_pne(in.game, protocol).ok;
      r["budget_balanced"] = verify_budget_balance(in.game, protocol, p).ok;
      r["protocol"] = to_json(protocol.table());
    }
  }
  s.finish(r);
  s.emit_json(r);
  return kExitOk;
}

int cmd_verify(Session& s) {
  Instance in = s.instance();
  Json r = base_report("verify");
  if (!s.o_.protocol_path.empty()) {
    Json pj = parse_json(s.read_text(s.o_.protocol_path));
    if (pj.contains("protocol")) pj = pj.at("protocol");
    auto protocol = protocol_from_json(in.game, pj);
    const Profile& base = protocol.table().base();
    s.put(r, "input_cost", total_cost(in.game, base));
    auto pne = verify_pne(in.game, protocol);
    auto budget = verify_budget_balance(in.game, protocol, base);
    r["pne_verified"] = pne.ok;
    r["budget_balanced"] = budget.ok;
    r["enforceable"] = pne.ok && budget.ok;
    if (pne.improving) {
      r["improving"] = {{"player", pne.improving->player},
                        {"strategy", pne.improving->strategy},
                        {"old_cost", to_json(pne.improving->old_cost)},
                        {"new_cost", to_json(pne.improving->new_cost)}};
    }
    s.finish(r);
    s.emit_json(r);
    return pne.ok && budget.ok ? kExitOk : kExitVerificationFailed;
  }
  const Profile& p = in.select(s.o_.profile);
  s.put(r, "input_cost", total_cost(in.game, p));
  bool enforceable = false;
  if (in.game.is_matroid_game()) {
    auto check = check_enforceable_matroid(in.game, p, false);
    enforceable = check.ok;
    r["method"] = "matroid";
    if (check.ok) {
      auto protocol = build_matroid_protocol(in.game, p);
      r["pne_verified"] = verify_pne(in.game, protocol).ok;
      r["budget_balanced"] = verify_budget_balance(in.game, protocol, p).ok;
    }
  } else {
    auto dev = full_deviation_lp(in.game, p, s.budget());
    auto sol = solve(dev.lp);
    r["method"] = "lp";
    r["lp_status"] = to_string(sol.status);
    s.put(r, "target", dev.target);
    if (sol.status == LpStatus::kOptimal) {
      s.put(r, "lp_value", sol.objective);
      enforceable = sol.objective == dev.target;
      if (enforceable) {
        SharingTable table(p);
        for (std::size_t k = 0; k < dev.variables.size(); ++k) {
          table.set(dev.variables[k].first, dev.variables[k].second, sol.values[k]);
        }
        table.finalize(in.game);
        SeparableProtocol protocol(in.game, std::move(table));
        r["pne_verified"] = verify_pne(in.game, protocol).ok;
        r["budget_balanced"] = verify_budget_balance(in.game, protocol, p).ok;
        r["protocol"] = to_json(protocol.table());
      }
    }
  }
  r["enforceable"] = enforceable;
  s.finish(r);
  s.emit_json(r);
  return enforceable ? kExitOk : kExitVerificationFailed;
}

int cmd_optimum(Session& s) {
  Instance in = s.instance();
  auto opt = brute_force_optimum(in.game, s.budget());
  Json r = base_report("optimum");
  s.put(r, "cost", opt.cost);
  r["unique"] = opt.unique;
  r["profiles_enumerated"] = opt.profiles;
  r["profile"] = to_json(opt.profile);
  s.finish(r);
  s.emit_json(r);
  return kExitOk;
}

int cmd_oracle_enforceable(Session& s) {
  Instance in = s.instance();
  const Profile& p = in.select(s.o_.profile);
  Json r = base_report("oracle enforceable");
  r["enforceable"] = brute_force_enforceable(in.game, p, s.budget());
  s.finish(r);
  s.emit_json(r);
  return kExitOk;
}

int cmd_oracle_strategies(Session& s) {
  Instance in = s.instance();
  if (s.o_.player_index < 0 || s.o_.player_index >= in.game.num_players) throw InputError("no such player");
  auto list = enumerate_strategies(in.game, s.o_.player_index, s.budget());
  Json r = base_report("oracle strategies");
  r["player"] = s.o_.player_index;
  r["count"] = list.size();
  r["strategies"] = list;
  s.finish(r);
  s.emit_json(r);
  return kExitOk;
}

int cmd_lp_dump(Session& s) {
  Instance in = s.instance();
  const Profile& p = in.select(s.o_.profile);
  DeviationLp dev = in.game.is_path_game() && in.game.graph && !in.game.graph->directed() && in.game.all_fixed()
                        ? build_lp(in.game, p, parse_mode(s.o_.mode), s.budget())
                        : full_deviation_lp(in.game, p, s.budget());
  s.emit_text(dump(dev.lp));
  return kExitOk;
}

int cmd_lp_solve(Session& s) {
  auto lp = parse_dump(s.read_text(s.o_.in));
  auto sol = solve(lp);
  Json r = base_report("lp solve");
  r["status"] = to_string(sol.status);
  if (sol.status == LpStatus::kOptimal) {
    s.put(r, "objective", sol.objective);
    Json values = Json::array();
    for (const auto& v : sol.values) values.push_back(to_json(v));
    r["values"] = values;
  }
  s.finish(r);
  s.emit_json(r);
  return kExitOk;
}

int emit_instance(Session& s, Game game, Rng* rng) {
  Instance in{std::move(game), std::nullopt, {}};
  if (rng != nullptr && s.o_.with_profile) in.profile = random_profile(in.game, *rng);
  s.emit_json(to_json(in));
  return kExitOk;
}

int cmd_gen_ufl(Session& s) {
  Rng rng(s.o_.seed);
  return emit_instance(s, random_ufl(rng, s.o_.players, s.o_.facilities), &rng);
}

int cmd_gen_matroid(Session& s) {
  Rng rng(s.o_.seed);
  MatroidGenOptions g;
  g.players = s.o_.players;
  g.resources = s.o_.resources;
  g.subadditive = s.o_.subadditive;
  g.max_delay = s.o_.max_delay;
  if (s.o_.kind == "uniform") {
    g.kind = MatroidKind::kUniform;
  } else if (s.o_.kind == "partition") {
    g.kind = MatroidKind::kPartition;
  } else if (s.o_.kind == "graphic") {
    g.kind = MatroidKind::kGraphic;
  } else {
    throw InputError("unknown matroid kind " + s.o_.kind);
  }
  return emit_instance(s, random_matroid_game(rng, g), &rng);
}

int cmd_gen_tree(Session& s) {
  Rng rng(s.o_.seed);
  TreeGenOptions g;
  g.vertices = s.o_.vertices;
  g.players = s.o_.players;
  g.directed = s.o_.directed;
  return emit_instance(s, random_single_source(rng, g), &rng);
}

int cmd_gen_sp(Session& s) {
  Rng rng(s.o_.seed);
  SpGenOptions g;
  g.max_edges = s.o_.max_edges;
  g.players = s.o_.players;
  g.max_delay = s.o_.max_delay;
  return emit_instance(s, random_sp_game(rng, g), &rng);
}

int cmd_fixture(Session& s) {
  auto [game, opt] = counterexample_fixture();
  Instance in{std::move(game), opt, {{"opt", opt}}};
  s.emit_json(to_json(in));
  return kExitOk;
}

int exit_code_for(const std::exception& ex) {
  if (dynamic_cast<const BudgetExceeded*>(&ex) != nullptr) return kExitBudgetExceeded;
  if (dynamic_cast<const InternalInvariant*>(&ex) != nullptr) return kExitVerificationFailed;
  if (dynamic_cast<const NotBudgetBalanced*>(&ex) != nullptr) return kExitVerificationFailed;
  if (dynamic_cast<const NotEnforceable*>(&ex) != nullptr) return kExitVerificationFailed;
  return kExitInputError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Separable cost sharing: enforceable profiles and protocols"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--in", o.in, "instance JSON (default stdin)");
  app.add_option("--out", o.out, "report file (default stdout)");
  app.add_option("--trace", o.trace_path, "write algorithm steps as JSON lines (\"-\" = stderr)");
  app.add_flag("--approx-display", o.approx, "add decimal renderings next to rationals");
  app.add_flag("--timings", o.timings, "add wall-clock timings to the report");
  app.add_option("--max-profiles", o.max_profiles, "enumeration budget for profiles")->check(CLI::PositiveNumber);
  app.add_option("--max-paths", o.max_paths, "enumeration budget for paths per player")->check(CLI::PositiveNumber);

  std::function<int(Session&)> action;
  auto bind = [&](CLI::App* sub, int (*fn)(Session&)) { sub->callback([&action, fn] { action = fn; }); };
  auto profile_opt = [&](CLI::App* sub) {
    sub->add_option("--profile", o.profile, "named profile of the instance (default: \"profile\")");
  };
  auto mode_opt = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "LP rows: alternatives | full")->check(CLI::IsMember({"alternatives", "full"}));
  };

  auto* tm = app.add_subcommand("transform-matroid", "matroid games: cheaper enforceable bases and protocol");
  profile_opt(tm);
  bind(tm, cmd_transform_matroid);

  auto* tt = app.add_subcommand("transform-tree", "single-source connection games with fixed costs");
  profile_opt(tt);
  tt->add_flag("--single-source", o.single_source, "require a common source (always checked)");
  bind(tt, cmd_transform_tree);

  auto* ns = app.add_subcommand("nsepa", "n-series-parallel connection games with delays");
  ns->require_subcommand(1);
  auto* nst = ns->add_subcommand("transform", "run the n-SePa transformation");
  profile_opt(nst);
  bind(nst, cmd_nsepa_transform);
  auto* nsc = ns->add_subcommand("check", "series-parallel test, irredundant edges, LP(P) verdict");
  profile_opt(nsc);
  mode_opt(nsc);
  bind(nsc, cmd_nsepa_check);

  auto* ve = app.add_subcommand("verify", "enforceability of a profile, or PNE and budget balance of a protocol");
  profile_opt(ve);
  ve->add_option("--protocol", o.protocol_path, "protocol JSON or a report containing one");
  bind(ve, cmd_verify);

  auto* op = app.add_subcommand("optimum", "exhaustive minimum-cost profile");
  bind(op, cmd_optimum);

  auto* gen = app.add_subcommand("gen", "seeded instance generators (integer draws from mt19937_64)");
  gen->require_subcommand(1);
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_flag("--with-profile", o.with_profile, "add a random starting \"profile\"");
  auto* gu = gen->add_subcommand("ufl", "facility costs uniform in [1,20], client distances uniform in [0,10]");
  gu->add_option("--players", o.players, "clients");
  gu->add_option("--facilities", o.facilities, "facilities");
  bind(gu, cmd_gen_ufl);
  auto* gm = gen->add_subcommand(
      "matroid",
      "costs uniform in [1,20] or coverage tables, delays uniform in [0,max-delay]; each player's matroid "
      "lives on a random ground subset (each resource kept with probability 1/2)");
  gm->add_option("--players", o.players, "players");
  gm->add_option("--resources", o.resources, "resources");
  gm->add_option("--kind", o.kind, "uniform | partition | graphic");
  gm->add_option("--max-delay", o.max_delay, "largest delay");
  gm->add_flag("--subadditive", o.subadditive, "coverage-function cost tables");
  bind(gm, cmd_gen_matroid);
  auto* gt = gen->add_subcommand(
      "tree", "random tree from vertex 0 plus up to 2|V| extra edges, costs uniform in [1,30], terminals uniform");
  gt->add_option("--vertices", o.vertices, "vertices");
  gt->add_option("--players", o.players, "players");
  gt->add_flag("--directed", o.directed, "directed network");
  bind(gt, cmd_gen_tree);
  auto* gs = gen->add_subcommand(
      "sp",
      "series-parallel graph grown from edge 0-1 by subdividing or doubling a uniform edge until it has "
      "2..max-edges edges; costs uniform in [1,20]; delays 0 w.p. 1/2, else uniform in [1,max-delay]");
  gs->add_option("--max-edges", o.max_edges, "edge limit");
  gs->add_option("--players", o.players, "players");
  gs->add_option("--max-delay", o.max_delay, "largest delay (0 = none)");
  bind(gs, cmd_gen_sp);

  auto* fx = app.add_subcommand("fixture", "built-in instances");
  fx->require_subcommand(1);
  auto* t5 = fx->add_subcommand("theorem5", "three-pair forest whose unique optimum is not enforceable");
  bind(t5, cmd_fixture);

  auto* orc = app.add_subcommand("oracle", "brute-force verdicts");
  orc->require_subcommand(1);
  auto* oe = orc->add_subcommand("enforceable", "full-deviation enforceability");
  profile_opt(oe);
  bind(oe, cmd_oracle_enforceable);
  auto* os = orc->add_subcommand("strategies", "enumerate one player's strategies");
  os->add_option("--player", o.player_index, "player id");
  bind(os, cmd_oracle_strategies);

  auto* lp = app.add_subcommand("lp", "LP(P) export and the exact solver");
  lp->require_subcommand(1);
  auto* ld = lp->add_subcommand("dump", "print LP(P) in the plain-text listing");
  profile_opt(ld);
  mode_opt(ld);
  bind(ld, cmd_lp_dump);
  auto* lv = lp->add_subcommand("solve", "solve a plain-text LP listing");
  bind(lv, cmd_lp_solve);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  if (!action) return kExitInputError;
  Session session(o, in, out, err);
  try {
    return action(session);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code_for(ex);
  }
}

}  // namespace sepcs
