#pragma once

#include <array>
#include <vector>

#include "splab/history.hpp"

namespace splab {

enum class Colour { Blue, Red };  // blue: parallel doubling, red: serial doubling

// Increasing tree on labels 1..n; node t > 1 hangs below parent(t) < t by an
// edge coloured with the doubling type of step t.
class ColouredRecursiveTree {
 public:
  ColouredRecursiveTree();  // order 1
  // parents[t - 2] and colours[t - 2] describe node t. Throws ParameterError
  // unless every parent is smaller than its child.
  ColouredRecursiveTree(std::vector<int> parents, std::vector<Colour> colours);

  static ColouredRecursiveTree from_history(const GrowthHistory& h);
  GrowthHistory history(double p) const;

  int order() const { return static_cast<int>(parent_.size()) - 1; }
  int parent(int label) const { return parent_.at(label); }
  Colour colour(int label) const { return colour_.at(label); }
  std::vector<int> children(int label) const;  // in insertion order

  void attach(int parent, Colour colour);

  friend bool operator==(const ColouredRecursiveTree&, const ColouredRecursiveTree&) = default;

 private:
  std::vector<int> parent_;  // index 0 unused, parent_[1] = 0
  std::vector<Colour> colour_;
};

// Bucket-recursive tree with buckets of capacity 2. A saturated bucket (a, b)
// owns a left forest (children attracted by a) and a right forest (children
// attracted by b); both forests are ordered by creation, so the first tree
// of a forest is its oldest.
class BucketRecursiveTree {
 public:
  struct Bucket {
    std::array<int, 2> labels{0, 0};
    int size = 0;
    int parent = -1;  // bucket index, -1 for the root
    bool in_left_forest = false;
    std::vector<int> left;   // bucket indices
    std::vector<int> right;  // bucket indices

    bool saturated() const { return size == 2; }
    friend bool operator==(const Bucket&, const Bucket&) = default;
  };

  BucketRecursiveTree();  // order 1: root bucket {1}

  static BucketRecursiveTree from_history(const GrowthHistory& h);
  GrowthHistory history() const;

  int order() const { return static_cast<int>(bucket_of_.size()) - 1; }
  const std::vector<Bucket>& buckets() const { return buckets_; }
  const Bucket& root() const { return buckets_.front(); }
  int bucket_of(int label) const { return bucket_of_.at(label); }
  bool saturated_at(int label) const { return buckets_[bucket_of(label)].saturated(); }

  // Label order()+1 is attracted by `label`. Returns true if it opened a new
  // child bucket (serial doubling in the network), false if it filled the
  // bucket of `label` (parallel doubling).
  bool attract(int label);

  // Structural invariants; throws ParameterError naming the first breach.
  void validate() const;

  friend bool operator==(const BucketRecursiveTree&, const BucketRecursiveTree&) = default;

 private:
  std::vector<Bucket> buckets_;
  std::vector<int> bucket_of_;  // label -> bucket index, index 0 unused
};

}  // namespace splab
