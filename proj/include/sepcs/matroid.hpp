#ifndef SEPCS_MATROID_HPP
#define SEPCS_MATROID_HPP

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sepcs/player_set.hpp"

namespace sepcs {

/// Sorted, duplicate-free list of resource ids.
using ResourceSet = std::vector<Resource>;

ResourceSet make_resource_set(std::vector<Resource> items);
bool contains(const ResourceSet& set, Resource r);

/// Independence oracle of a matroid over a ground set of resources.
class Matroid {
 public:
  virtual ~Matroid() = default;

  const ResourceSet& ground() const { return ground_; }
  int rank() const { return rank_; }

  /// `set` must be sorted and contained in the ground set.
  virtual bool is_independent(std::span<const Resource> set) const = 0;
  bool is_basis(std::span<const Resource> set) const;

  virtual std::string kind() const = 0;

 protected:
  explicit Matroid(ResourceSet ground) : ground_(std::move(ground)) {}
  /// Derived classes call this once their state is set up.
  void compute_rank();

 private:
  ResourceSet ground_;
  int rank_ = 0;
};

class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(ResourceSet ground, int rank);
  bool is_independent(std::span<const Resource> set) const override;
  std::string kind() const override { return "uniform"; }
  int bound() const { return bound_; }

 private:
  int bound_;
};

class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<ResourceSet> blocks, std::vector<int> quotas);
  bool is_independent(std::span<const Resource> set) const override;
  std::string kind() const override { return "partition"; }
  const std::vector<ResourceSet>& blocks() const { return blocks_; }
  const std::vector<int>& quotas() const { return quotas_; }

 private:
  std::vector<ResourceSet> blocks_;
  std::vector<int> quotas_;
};

/// Cycle matroid: resource ground[k] is the graph edge endpoints[k]; a set is
/// independent iff its edges form a forest.
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(ResourceSet ground, std::vector<std::pair<int, int>> endpoints);
  bool is_independent(std::span<const Resource> set) const override;
  std::string kind() const override { return "graphic"; }
  const std::vector<std::pair<int, int>>& endpoints() const { return endpoints_; }

 private:
  std::vector<std::pair<int, int>> endpoints_;
  int num_nodes_ = 0;
};

/// Exhaustively checks the hereditary and exchange axioms. Exponential in the
/// ground set size; meant for tests on small oracles.
bool satisfies_matroid_axioms(const Matroid& m);

/// All f such that basis - e + f is again a basis (e itself included).
/// Throws NotABasis / NotInBasis on bad input.
ResourceSet exchange_candidates(const Matroid& m, const ResourceSet& basis, Resource e);

}  // namespace sepcs

#endif  // SEPCS_MATROID_HPP
