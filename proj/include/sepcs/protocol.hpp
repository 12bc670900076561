#ifndef SEPCS_PROTOCOL_HPP
#define SEPCS_PROTOCOL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sepcs/game.hpp"

namespace sepcs {

/// Base profile plus the shares ξ_{i,e} charged on it.
class SharingTable {
 public:
  SharingTable() = default;
  explicit SharingTable(Profile base) : base_(std::move(base)) {}

  const Profile& base() const { return base_; }
  /// Throws InputError for negative values or resources outside base_i.
  void set(Player i, Resource e, Rational value);
  /// Zero for unset entries.
  Rational share(Player i, Resource e) const;
  const std::map<std::pair<Player, Resource>, Rational>& entries() const { return shares_; }

  /// Checks budget balance on the base profile and marks the table final.
  /// Throws NotBudgetBalanced naming the first unbalanced resource.
  void finalize(const Game& game);
  bool finalized() const { return finalized_; }

 private:
  Profile base_;
  std::map<std::pair<Player, Resource>, Rational> shares_;
  bool finalized_ = false;
};

/// Share table combined with the off-profile case rule. For a profile with
/// users U on e and base users B:
///   U == B           each user pays its table share;
///   U \ B nonempty   min(U \ B) pays c_e(U), everybody else 0;
///   U strictly in B  min(U) pays c_e(U), everybody else 0.
class SeparableProtocol {
 public:
  SeparableProtocol() = default;
  SeparableProtocol(const Game& game, SharingTable table);

  const SharingTable& table() const { return table_; }
  const std::vector<PlayerSet>& base_users() const { return base_users_; }

  Rational cost_share(const Game& game, PlayerSet users, Player i, Resource e) const;
  Rational cost_share(const Game& game, const Profile& profile, Player i, Resource e) const;

 private:
  SharingTable table_;
  std::vector<PlayerSet> base_users_;
};

/// Σ_{e∈S_i} (ξ_{i,e}(S) + d_{i,e}). Throws InfeasibleProfile.
Rational private_cost(const Game& game, const SeparableProtocol& protocol, const Profile& profile,
                      Player i);

struct BudgetViolation {
  Resource resource;
  Rational paid;
  Rational required;
};

struct BudgetReport {
  bool ok = true;
  std::vector<BudgetViolation> violations;
};

BudgetReport verify_budget_balance(const Game& game, const SeparableProtocol& protocol,
                                   const Profile& profile);

struct Deviation {
  Player player;
  ResourceSet strategy;
  Rational old_cost;
  Rational new_cost;
};

struct PneReport {
  bool ok = true;
  std::optional<Deviation> improving;  // first improving player in global order
};

/// Best-response check of every player against the protocol's base profile.
PneReport verify_pne(const Game& game, const SeparableProtocol& protocol);

/// Arbitrary share rule used by the separability check.
using ShareFunction = std::function<Rational(const Profile&, Player, Resource)>;

/// True iff every share depends on the profile only through N_e. Throws
/// TooLarge when the profile space exceeds `max_profiles`.
bool verify_separability_bruteforce(const Game& game, const ShareFunction& share,
                                    std::int64_t max_profiles = 100000);
bool verify_separability_bruteforce(const Game& game, const SeparableProtocol& protocol,
                                    std::int64_t max_profiles = 100000);

/// Equal split c_e(N_e)/|N_e|; reference rule for comparisons.
ShareFunction fair_share(const Game& game);

}  // namespace sepcs

#endif  // SEPCS_PROTOCOL_HPP
