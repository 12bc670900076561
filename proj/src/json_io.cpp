#include "sepcs/json_io.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "sepcs/errors.hpp"

namespace sepcs {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

PlayerSet parse_player_set(const std::string& key, int players) {
  PlayerSet s;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    std::size_t comma = key.find(',', pos);
    if (comma == std::string::npos) comma = key.size();
    std::string part = key.substr(pos, comma - pos);
    int p = -1;
    try {
      std::size_t used = 0;
      p = std::stoi(part, &used);
      if (used != part.size()) p = -1;
    } catch (const std::exception&) {
      p = -1;
    }
    if (p < 0 || p >= players) bad("bad player set key \"" + key + "\"");
    s = s.with(p);
    pos = comma + 1;
  }
  if (s.key() != key) bad("player set key \"" + key + "\" must list sorted distinct ids");
  return s;
}

std::shared_ptr<const Matroid> matroid_from_json(const Json& j) {
  if (j.contains("uniform")) {
    const Json& u = j.at("uniform");
    return std::make_shared<UniformMatroid>(make_resource_set(int_list(field(u, "ground"), "ground")),
                                            as_int(field(u, "rank"), "rank"));
  }
  if (j.contains("partition")) {
    const Json& p = j.at("partition");
    std::vector<ResourceSet> blocks;
    for (const auto& b : field(p, "blocks")) blocks.push_back(make_resource_set(int_list(b, "block")));
    return std::make_shared<PartitionMatroid>(blocks, int_list(field(p, "quotas"), "quotas"));
  }
  if (j.contains("graphic")) {
    const Json& g = j.at("graphic");
    std::vector<std::pair<int, int>> ends;
    for (const auto& e : field(g, "edges")) {
      auto uv = int_list(e, "graphic edge");
      if (uv.size() != 2) bad("graphic edges are [u, v] pairs");
      ends.push_back({uv[0], uv[1]});
    }
    ResourceSet ground;
    if (g.contains("ground")) {
      ground = int_list(g.at("ground"), "ground");
    } else {
      for (int k = 0; k < static_cast<int>(ends.size()); ++k) ground.push_back(k);
    }
    if (ground.size() != ends.size()) bad("graphic ground and edges differ in length");
    return std::make_shared<GraphicMatroid>(ground, ends);
  }
  bad("unknown matroid descriptor");
}

Json matroid_to_json(const Matroid& m) {
  if (const auto* u = dynamic_cast<const UniformMatroid*>(&m)) {
    return {{"uniform", {{"ground", u->ground()}, {"rank", u->bound()}}}};
  }
  if (const auto* p = dynamic_cast<const PartitionMatroid*>(&m)) {
    return {{"partition", {{"blocks", p->blocks()}, {"quotas", p->quotas()}}}};
  }
  if (const auto* g = dynamic_cast<const GraphicMatroid*>(&m)) {
    Json edges = Json::array();
    // ground() is sorted; endpoints follow the construction order.
    for (auto [u, v] : g->endpoints()) edges.push_back({u, v});
    return {{"graphic", {{"edges", edges}, {"ground", g->ground()}}}};
  }
  throw Unsupported("matroid of kind " + m.kind() + " cannot be serialized");
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw InputError("malformed JSON at byte " + std::to_string(ex.byte) + ": " + ex.what());
  }
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) bad("rationals are \"p/q\" strings or integers");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    bad("bad rational \"" + j.get<std::string>() + "\"");
  }
}

Json to_json(const Game& game) {
  Json j;
  j["players"] = game.num_players;
  Json resources = Json::array();
  for (Resource e = 0; e < game.num_resources; ++e) resources.push_back(e);
  j["resources"] = resources;
  Json costs = Json::object();
  for (Resource e = 0; e < game.num_resources; ++e) {
    const CostFunction& c = game.cost[e];
    if (c.is_fixed()) {
      costs[std::to_string(e)] = to_json(c.fixed_value());
    } else if (const auto* t = c.table_values()) {
      Json table = Json::object();
      for (const auto& [s, v] : *t) table[s.key()] = to_json(v);
      costs[std::to_string(e)] = {{"subadditive_table", table}};
    } else {
      throw Unsupported("oracle-backed cost of resource " + std::to_string(e) + " cannot be serialized");
    }
  }
  j["costs"] = costs;
  Json delays = Json::array();
  for (const auto& row : game.delay) {
    Json r = Json::array();
    for (const auto& d : row) r.push_back(to_json(d));
    delays.push_back(r);
  }
  j["delays"] = delays;
  Json spaces = Json::array();
  for (const auto& s : game.spaces) {
    if (const auto* ms = std::get_if<MatroidSpace>(&s)) {
      spaces.push_back({{"matroid", matroid_to_json(*ms->matroid)}});
    } else {
      const auto& ps = std::get<PathSpace>(s);
      spaces.push_back({{"path", {{"source", ps.source}, {"terminal", ps.terminal}}}});
    }
  }
  j["spaces"] = spaces;
  if (game.graph) {
    Json edges = Json::array();
    for (const Edge& e : game.graph->edges()) edges.push_back({e.u, e.v, to_json(e.cost)});
    j["graph"] = {{"directed", game.graph->directed()}, {"vertices", game.graph->num_vertices()}, {"edges", edges}};
  }
  return j;
}

Game game_from_json(const Json& j) {
  if (!j.is_object()) bad("game must be a JSON object");
  Game g;
  g.num_players = as_int(field(j, "players"), "players");
  if (g.num_players < 0 || g.num_players > kMaxPlayers) bad("player count out of range");

  std::optional<Network> net;
  if (j.contains("graph")) {
    const Json& gj = j.at("graph");
    bool directed = gj.value("directed", false);
    std::vector<std::tuple<int, int, Rational>> edges;
    int vertices = 0;
    for (const auto& e : field(gj, "edges")) {
      if (!e.is_array() || e.size() != 3) bad("graph edges are [u, v, cost]");
      int u = as_int(e[0], "edge endpoint");
      int v = as_int(e[1], "edge endpoint");
      if (u < 0 || v < 0) bad("negative vertex id");
      if (u == v) bad("self loops are not allowed");
      edges.emplace_back(u, v, rational_from_json(e[2]));
      vertices = std::max({vertices, u + 1, v + 1});
    }
    if (gj.contains("vertices")) {
      int k = as_int(gj.at("vertices"), "vertices");
      if (k < vertices) bad("edge endpoint beyond vertex count");
      vertices = k;
    } else if (j.contains("spaces")) {
      for (const auto& s : j.at("spaces")) {
        if (s.contains("path")) {
          vertices = std::max({vertices, as_int(field(s.at("path"), "source"), "source") + 1,
                               as_int(field(s.at("path"), "terminal"), "terminal") + 1});
        }
      }
    }
    net.emplace(vertices, directed);
    for (auto& [u, v, c] : edges) {
      if (c.sign() < 0) bad("edge costs must be nonnegative");
      net->add_edge(u, v, c);
    }
  }

  std::vector<int> ids = j.contains("resources") ? int_list(j.at("resources"), "resources") : std::vector<int>{};
  if (!j.contains("resources") && net) {
    for (int e = 0; e < net->num_edges(); ++e) ids.push_back(e);
  }
  for (int k = 0; k < static_cast<int>(ids.size()); ++k) {
    if (ids[k] != k) bad("resource ids must be 0..m-1 in order");
  }
  g.num_resources = static_cast<int>(ids.size());
  if (net && net->num_edges() != g.num_resources) bad("graph games need exactly one resource per edge");

  const Json* costs = j.contains("costs") ? &j.at("costs") : nullptr;
  if (costs != nullptr && !costs->is_object()) bad("costs must be an object keyed by resource id");
  for (Resource e = 0; e < g.num_resources; ++e) {
    const std::string key = std::to_string(e);
    if (costs == nullptr || !costs->contains(key)) {
      if (!net) bad("missing cost for resource " + key);
      g.cost.push_back(CostFunction::fixed(net->edge(e).cost));
      continue;
    }
    const Json& c = costs->at(key);
    if (c.is_object()) {
      std::map<PlayerSet, Rational> table;
      for (const auto& [k, v] : field(c, "subadditive_table").items()) {
        table[parse_player_set(k, g.num_players)] = rational_from_json(v);
      }
      if (net) bad("graph games need fixed edge costs");
      g.cost.push_back(CostFunction::table(std::move(table)));
    } else {
      Rational v = rational_from_json(c);
      if (net && v != net->edge(e).cost) bad("cost of resource " + key + " disagrees with its graph edge");
      g.cost.push_back(CostFunction::fixed(v));
    }
  }
  if (costs != nullptr && static_cast<int>(costs->size()) > g.num_resources) bad("costs name unknown resources");

  if (j.contains("delays")) {
    for (const auto& row : j.at("delays")) {
      if (!row.is_array()) bad("delays must be a matrix");
      std::vector<Rational> r;
      for (const auto& d : row) r.push_back(rational_from_json(d));
      g.delay.push_back(std::move(r));
    }
  } else {
    g.delay.assign(g.num_players, std::vector<Rational>(g.num_resources, Rational(0)));
  }

  const Json& spaces = field(j, "spaces");
  if (!spaces.is_array()) bad("spaces must be an array");
  for (const auto& s : spaces) {
    if (s.contains("matroid")) {
      g.spaces.push_back(MatroidSpace{matroid_from_json(s.at("matroid"))});
    } else if (s.contains("path")) {
      const Json& p = s.at("path");
      g.spaces.push_back(PathSpace{as_int(field(p, "source"), "source"), as_int(field(p, "terminal"), "terminal")});
    } else {
      bad("strategy space must be \"matroid\" or \"path\"");
    }
  }
  g.graph = std::move(net);
  g.validate();
  return g;
}

Json to_json(const Profile& profile) {
  Json j = Json::array();
  for (const auto& s : profile.choice) j.push_back(s);
  return j;
}

Profile profile_from_json(const Json& j) {
  if (!j.is_array()) bad("profile must be an array of resource lists");
  Profile p;
  for (const auto& s : j) p.choice.push_back(make_resource_set(int_list(s, "strategy")));
  return p;
}

Json to_json(const SharingTable& table) {
  Json shares = Json::array();
  for (const auto& [key, v] : table.entries()) {
    shares.push_back({{"player", key.first}, {"resource", key.second}, {"share", to_json(v)}});
  }
  return {{"base", to_json(table.base())}, {"shares", shares}};
}

SeparableProtocol protocol_from_json(const Game& game, const Json& j) {
  Profile base = profile_from_json(field(j, "base"));
  check_profile(game, base);
  SharingTable table(base);
  for (const auto& s : field(j, "shares")) {
    table.set(as_int(field(s, "player"), "player"), as_int(field(s, "resource"), "resource"),
              rational_from_json(field(s, "share")));
  }
  table.finalize(game);
  return SeparableProtocol(game, std::move(table));
}

Json to_json(const TraceStep& step) {
  Json j;
  j["step"] = step.type;
  j["player"] = step.player;
  j["resource"] = step.resource;
  j["target"] = step.target;
  j["cost_delta"] = to_json(step.cost_delta);
  if (!step.note.empty()) j["note"] = step.note;
  return j;
}

const Profile& Instance::select(const std::string& name) const {
  if (name.empty()) {
    if (!profile) throw InputError("instance has no \"profile\"");
    return *profile;
  }
  auto it = profiles.find(name);
  if (it == profiles.end()) throw InputError("instance has no profile named \"" + name + "\"");
  return it->second;
}

Instance instance_from_json(const Json& j) {
  Instance in{game_from_json(j), std::nullopt, {}};
  if (j.contains("profile")) in.profile = profile_from_json(j.at("profile"));
  if (j.contains("profiles")) {
    if (!j.at("profiles").is_object()) bad("profiles must be an object");
    for (const auto& [k, v] : j.at("profiles").items()) in.profiles[k] = profile_from_json(v);
  }
  return in;
}

Json to_json(const Instance& instance) {
  Json j = to_json(instance.game);
  if (instance.profile) j["profile"] = to_json(*instance.profile);
  if (!instance.profiles.empty()) {
    Json named = Json::object();
    for (const auto& [k, p] : instance.profiles) named[k] = to_json(p);
    j["profiles"] = named;
  }
  return j;
}

}  // namespace sepcs
