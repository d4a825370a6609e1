#include "splab/trees.hpp"

#include "splab/errors.hpp"

namespace splab {

ColouredRecursiveTree::ColouredRecursiveTree() : parent_{0, 0}, colour_{Colour::Blue, Colour::Blue} {}

ColouredRecursiveTree::ColouredRecursiveTree(std::vector<int> parents, std::vector<Colour> colours)
    : ColouredRecursiveTree() {
  if (parents.size() != colours.size()) throw ParameterError("parents and colours differ in length");
  for (std::size_t i = 0; i < parents.size(); ++i) {
    int child = static_cast<int>(i) + 2;
    if (parents[i] < 1 || parents[i] >= child) {
      throw ParameterError("node " + std::to_string(child) + " has parent " + std::to_string(parents[i]) +
                           "; labels must increase away from the root");
    }
    attach(parents[i], colours[i]);
  }
}

void ColouredRecursiveTree::attach(int parent, Colour colour) {
  if (parent < 1 || parent > order()) throw ParameterError("no node labelled " + std::to_string(parent));
  parent_.push_back(parent);
  colour_.push_back(colour);
}

ColouredRecursiveTree ColouredRecursiveTree::from_history(const GrowthHistory& h) {
  if (!h.model().is_bernoulli()) throw ParameterError("coloured recursive trees encode Bernoulli histories");
  ColouredRecursiveTree t;
  for (const auto& s : h.steps()) t.attach(s.edge, s.doubling == Doubling::Parallel ? Colour::Blue : Colour::Red);
  return t;
}

GrowthHistory ColouredRecursiveTree::history(double p) const {
  std::vector<GrowthStep> steps;
  for (int t = 2; t <= order(); ++t) {
    steps.push_back({parent_[t], colour_[t] == Colour::Blue ? Doubling::Parallel : Doubling::Serial});
  }
  return GrowthHistory(Model::bernoulli(p), std::move(steps));
}

std::vector<int> ColouredRecursiveTree::children(int label) const {
  std::vector<int> kids;
  for (int t = label + 1; t <= order(); ++t) {
    if (parent_[t] == label) kids.push_back(t);
  }
  return kids;
}

BucketRecursiveTree::BucketRecursiveTree() : bucket_of_{-1, 0} {
  Bucket root;
  root.labels = {1, 0};
  root.size = 1;
  buckets_.push_back(root);
}

bool BucketRecursiveTree::attract(int label) {
  if (label < 1 || label > order()) throw ParameterError("no label " + std::to_string(label));
  int fresh = order() + 1;
  int b = bucket_of_[label];
  if (!buckets_[b].saturated()) {
    buckets_[b].labels[1] = fresh;
    buckets_[b].size = 2;
    bucket_of_.push_back(b);
    return false;
  }
  Bucket child;
  child.labels = {fresh, 0};
  child.size = 1;
  child.parent = b;
  child.in_left_forest = buckets_[b].labels[0] == label;
  int idx = static_cast<int>(buckets_.size());
  buckets_.push_back(child);
  (buckets_[b].labels[0] == label ? buckets_[b].left : buckets_[b].right).push_back(idx);
  bucket_of_.push_back(idx);
  return true;
}

BucketRecursiveTree BucketRecursiveTree::from_history(const GrowthHistory& h) {
  if (h.model().is_bernoulli()) throw ParameterError("bucket-recursive trees encode binary histories");
  BucketRecursiveTree t;
  for (std::size_t i = 0; i < h.steps().size(); ++i) {
    const auto& s = h.steps()[i];
    bool serial = t.saturated_at(s.edge);
    if ((s.doubling == Doubling::Serial) != serial) {
      throw HistoryError(i, "doubling flag contradicts the saturation rule");
    }
    t.attract(s.edge);
  }
  return t;
}

GrowthHistory BucketRecursiveTree::history() const {
  std::vector<GrowthStep> steps;
  for (int label = 2; label <= order(); ++label) {
    const Bucket& b = buckets_[bucket_of_[label]];
    if (b.labels[1] == label) {
      steps.push_back({b.labels[0], Doubling::Parallel});
    } else {
      const Bucket& parent = buckets_[b.parent];
      steps.push_back({parent.labels[b.in_left_forest ? 0 : 1], Doubling::Serial});
    }
  }
  return GrowthHistory(Model::binary(), std::move(steps));
}

void BucketRecursiveTree::validate() const {
  for (std::size_t i = 0; i < buckets_.size(); ++i) {
    const Bucket& b = buckets_[i];
    std::string where = "bucket " + std::to_string(i);
    if (b.size < 1 || b.size > 2) throw ParameterError(where + " holds " + std::to_string(b.size) + " labels");
    if (!b.saturated() && (!b.left.empty() || !b.right.empty())) {
      throw ParameterError(where + " has children but only one label");
    }
    if (b.saturated() && b.labels[1] <= b.labels[0]) throw ParameterError(where + " labels out of order");
    for (const auto* forest : {&b.left, &b.right}) {
      int previous = 0;
      for (int c : *forest) {
        int first = buckets_.at(c).labels[0];
        if (first <= b.labels[1]) throw ParameterError(where + " has a child with a smaller label");
        if (first <= previous) throw ParameterError(where + " forest not ordered by creation");
        previous = first;
      }
    }
  }
  if (BucketRecursiveTree::from_history(history()) != *this) {
    throw ParameterError("replaying the tree's history does not reproduce it");
  }
}

}  // namespace splab
