#ifndef SEPCS_PLAYER_SET_HPP
#define SEPCS_PLAYER_SET_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace sepcs {

using Player = int;
using Resource = int;

inline constexpr int kMaxPlayers = 64;

/// Set of players as a bitmask over the dense player ids 0..63.
class PlayerSet {
 public:
  constexpr PlayerSet() = default;
  constexpr explicit PlayerSet(std::uint64_t bits) : bits_(bits) {}

  static PlayerSet single(Player i) { return PlayerSet(std::uint64_t{1} << i); }

  bool contains(Player i) const { return (bits_ >> i) & 1U; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  std::uint64_t bits() const { return bits_; }

  PlayerSet with(Player i) const { return PlayerSet(bits_ | (std::uint64_t{1} << i)); }
  PlayerSet without(Player i) const { return PlayerSet(bits_ & ~(std::uint64_t{1} << i)); }
  bool subset_of(PlayerSet o) const { return (bits_ & ~o.bits_) == 0; }

  /// Smallest player id in the set; -1 when empty.
  Player min() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  std::vector<Player> members() const {
    std::vector<Player> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  /// Comma separated sorted ids, e.g. "0,2"; the empty set is "".
  std::string key() const {
    std::string s;
    for (Player p : members()) {
      if (!s.empty()) s += ',';
      s += std::to_string(p);
    }
    return s;
  }

  friend PlayerSet operator|(PlayerSet a, PlayerSet b) { return PlayerSet(a.bits_ | b.bits_); }
  friend PlayerSet operator&(PlayerSet a, PlayerSet b) { return PlayerSet(a.bits_ & b.bits_); }
  friend PlayerSet operator-(PlayerSet a, PlayerSet b) { return PlayerSet(a.bits_ & ~b.bits_); }
  friend bool operator==(PlayerSet a, PlayerSet b) = default;
  friend auto operator<=>(PlayerSet a, PlayerSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace sepcs

#endif  // SEPCS_PLAYER_SET_HPP
