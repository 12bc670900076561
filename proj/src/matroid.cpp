#include "sepcs/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "sepcs/errors.hpp"

namespace sepcs {

ResourceSet make_resource_set(std::vector<Resource> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

bool contains(const ResourceSet& set, Resource r) {
  return std::binary_search(set.begin(), set.end(), r);
}

bool Matroid::is_basis(std::span<const Resource> set) const {
  if (static_cast<int>(set.size()) != rank_) return false;
  for (Resource r : set) {
    if (!contains(ground_, r)) return false;
  }
  return is_independent(set);
}

void Matroid::compute_rank() {
  ResourceSet current;
  for (Resource r : ground_) {
    current.push_back(r);
    if (!is_independent(current)) current.pop_back();
  }
  rank_ = static_cast<int>(current.size());
}

UniformMatroid::UniformMatroid(ResourceSet ground, int rank)
    : Matroid(make_resource_set(std::move(ground))), bound_(rank) {
  if (rank < 0) throw InputError("uniform matroid rank must be nonnegative");
  if (rank > static_cast<int>(this->ground().size())) {
    throw InputError("uniform matroid rank exceeds ground set size");
  }
  compute_rank();
}

bool UniformMatroid::is_independent(std::span<const Resource> set) const {
  return static_cast<int>(set.size()) <= bound_;
}

namespace {

ResourceSet union_of(const std::vector<ResourceSet>& blocks) {
  std::vector<Resource> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::vector<Resource> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("partition matroid blocks must be disjoint");
  }
  return sorted;
}

}  // namespace

PartitionMatroid::PartitionMatroid(std::vector<ResourceSet> blocks, std::vector<int> quotas)
    : Matroid(union_of(blocks)), quotas_(std::move(quotas)) {
  if (blocks.size() != quotas_.size()) throw InputError("one quota per partition block required");
  for (auto& b : blocks) blocks_.push_back(make_resource_set(std::move(b)));
  for (int q : quotas_) {
    if (q < 0) throw InputError("partition quotas must be nonnegative");
  }
  compute_rank();
}

bool PartitionMatroid::is_independent(std::span<const Resource> set) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    int hits = 0;
    for (Resource r : set) hits += contains(blocks_[b], r) ? 1 : 0;
    if (hits > quotas_[b]) return false;
  }
  return true;
}

GraphicMatroid::GraphicMatroid(ResourceSet ground, std::vector<std::pair<int, int>> endpoints)
    : Matroid(ground), endpoints_(std::move(endpoints)) {
  if (ground.size() != endpoints_.size()) {
    throw InputError("graphic matroid needs one edge per ground element");
  }
  if (!std::is_sorted(ground.begin(), ground.end()) ||
      std::adjacent_find(ground.begin(), ground.end()) != ground.end()) {
    throw InputError("graphic matroid ground must be strictly increasing");
  }
  for (auto [u, v] : endpoints_) {
    if (u < 0 || v < 0) throw InputError("graphic matroid vertices must be nonnegative");
    num_nodes_ = std::max({num_nodes_, u + 1, v + 1});
  }
  compute_rank();
}

bool GraphicMatroid::is_independent(std::span<const Resource> set) const {
  std::vector<int> parent(num_nodes_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Resource r : set) {
    auto it = std::lower_bound(ground().begin(), ground().end(), r);
    if (it == ground().end() || *it != r) return false;
    auto [u, v] = endpoints_[it - ground().begin()];
    int a = find(u), b = find(v);
    if (a == b) return false;  // loops and cycles
    parent[a] = b;
  }
  return true;
}

bool satisfies_matroid_axioms(const Matroid& m) {
  const ResourceSet& g = m.ground();
  const int k = static_cast<int>(g.size());
  if (k > 20) throw TooLarge("matroid axiom check limited to 20 ground elements");
  const std::uint32_t total = std::uint32_t{1} << k;
  std::vector<bool> indep(total);
  auto subset = [&](std::uint32_t mask) {
    ResourceSet s;
    for (int b = 0; b < k; ++b) {
      if (mask >> b & 1U) s.push_back(g[b]);
    }
    return s;
  };
  for (std::uint32_t mask = 0; mask < total; ++mask) indep[mask] = m.is_independent(subset(mask));
  if (!indep[0]) return false;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (!indep[mask]) continue;
    for (int b = 0; b < k; ++b) {
      if ((mask >> b & 1U) && !indep[mask & ~(1U << b)]) return false;
    }
  }
  for (std::uint32_t i = 0; i < total; ++i) {
    if (!indep[i]) continue;
    for (std::uint32_t j = 0; j < total; ++j) {
      if (!indep[j] || std::popcount(i) >= std::popcount(j)) continue;
      bool augmentable = false;
      for (int b = 0; b < k && !augmentable; ++b) {
        if ((j >> b & 1U) && !(i >> b & 1U) && indep[i | (1U << b)]) augmentable = true;
      }
      if (!augmentable) return false;
    }
  }
  return true;
}

ResourceSet exchange_candidates(const Matroid& m, const ResourceSet& basis, Resource e) {
  if (!m.is_basis(basis)) throw NotABasis("set is not a basis of the matroid");
  if (!contains(basis, e)) throw NotInBasis("resource " + std::to_string(e) + " not in basis");
  ResourceSet out;
  ResourceSet trial;
  trial.reserve(basis.size());
  for (Resource f : m.ground()) {
    if (f == e) {
      out.push_back(f);
      continue;
    }
    if (contains(basis, f)) continue;
    trial.clear();
    for (Resource r : basis) {
      if (r != e) trial.push_back(r);
    }
    trial.insert(std::lower_bound(trial.begin(), trial.end(), f), f);
    if (m.is_independent(trial)) out.push_back(f);
  }
  return out;
}

}  // namespace sepcs
