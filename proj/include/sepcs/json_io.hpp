#ifndef SEPCS_JSON_IO_HPP
#define SEPCS_JSON_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sepcs/game.hpp"
#include "sepcs/protocol.hpp"
#include "sepcs/trace.hpp"

namespace sepcs {

using Json = nlohmann::ordered_json;

// Game documents:
//   { "players": n, "resources": [0..m-1],
//     "costs": {"e": "p/q" | {"subadditive_table": {"0,2": "p/q", ...}}},
//     "delays": [[...]],
//     "spaces": [{"matroid": {...}} | {"path": {"source": v, "terminal": v}}],
//     "graph": {"directed": b, "vertices": k, "edges": [[u, v, "p/q"], ...]} }
// Rationals are "p/q" strings on output; integers are also accepted on input.
// An instance may carry a default "profile" and named "profiles".

/// Parses JSON text; throws InputError with the byte position on failure.
Json parse_json(std::string_view text);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Game& game);
/// Throws InputError on schema violations (and whatever Game::validate raises).
Game game_from_json(const Json& j);

Json to_json(const Profile& profile);
Profile profile_from_json(const Json& j);

/// {"base": [[...], ...], "shares": [{"player": i, "resource": e, "share": "p/q"}]}
Json to_json(const SharingTable& table);
/// Reads the table and finalizes it against the game.
SeparableProtocol protocol_from_json(const Game& game, const Json& j);

Json to_json(const TraceStep& step);

struct Instance {
  Game game;
  std::optional<Profile> profile;
  std::map<std::string, Profile> profiles;

  /// "" selects the default profile. Throws InputError if missing.
  const Profile& select(const std::string& name) const;
};

Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);

}  // namespace sepcs

#endif  // SEPCS_JSON_IO_HPP
