#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relrank/natfn.hpp"
#include "relrank/sets.hpp"

namespace relrank {

// A tree of finite sequences of naturals (restrictions ordered by
// extension).  Membership is decidable; the child set E(x) is either given
// by a closed-form oracle or discovered by probing candidate labels up to a
// per-node budget.
class PrefixTree {
 public:
  using Node = std::vector<nat>;

  static PrefixTree from_membership(std::string name,
                                    std::function<bool(std::span<const nat>)> contains,
                                    bool perfect_hint = false);
  static PrefixTree with_child_oracle(std::string name,
                                      std::function<bool(std::span<const nat>)> contains,
                                      std::function<std::vector<nat>(std::span<const nat>)> children,
                                      bool perfect_hint = true);

  bool contains(std::span<const nat> node) const;
  // E(node), ascending.  Without a child oracle this probes labels
  // 0..probe_budget-1; the result is then only a lower approximation of an
  // unbounded child set, so callers must treat "not found" as budget
  // exhaustion, never as proof of absence.
  std::vector<nat> children(std::span<const nat> node, nat probe_budget) const;
  bool has_child_oracle() const;
  bool perfect_hint() const;
  const std::string& name() const;

 private:
  struct Impl;
  explicit PrefixTree(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Built-in trees --------------------------------------------------------

// All finite 0/1 sequences.  Child sets never grow, which makes the
// fresh-label extraction fail by design; kept as the canonical reject case.
PrefixTree full_binary_tree();

// Paths of a binary tree written as codes: the children of a node ending in
// code c are {2c+1, 2c+2}.  Child values grow without bound along every
// branch, so fresh labels always exist.
PrefixTree branch_code_tree();

// Every node offers the pinned label `a` plus one fresh label unique to the
// node; satisfies the pinned-label side condition everywhere.
PrefixTree pinned_fresh_tree(nat a);

// Like pinned_fresh_tree, but after two consecutive `a` choices only `a`
// remains, so every extension down that branch has a singleton child set.
PrefixTree pinned_dead_branch_tree(nat a);

// Kernel extraction ------------------------------------------------------
//
// The extraction embeds the full binary tree of depth d into an arbitrary
// tree: node(x) is the tree node assigned to binary sequence x, and
// label0/label1 give the child labels splitting below node(x).  Guarantees:
//   (i)  the label0 range and label1 range are disjoint,
//   (ii) node(x + b) extends node(x) + label_b(x).

struct KernelOptions {
  nat node_search_budget = 512;  // nodes examined per search step
  nat probe_budget = 1 << 16;    // candidate labels probed per node
};

class KernelSearchError : public std::runtime_error {
 public:
  KernelSearchError(const std::string& msg, std::vector<nat> node);
  const std::vector<nat>& where() const { return where_; }

 private:
  std::vector<nat> where_;
};

struct KernelData {
  nat depth = 0;
  // Keyed by the code of the binary sequence (seq_code).
  std::map<nat, std::vector<nat>> node;       // sequences of length <= depth
  std::map<nat, nat> label0, label1;          // sequences of length < depth
};

struct KernelInvariants {
  bool ok = true;
  std::string detail;  // first violation, empty when ok
};
KernelInvariants check_kernel(const PrefixTree& tree, const KernelData& kd);

// Builds the embedding with globally fresh labels: each step picks a node
// whose child set is not swallowed by the labels already used.  Throws
// KernelSearchError when no such node is found within budget.
KernelData kernel_fresh_labels(const PrefixTree& tree, nat depth, KernelOptions opts = {});

// Builds the embedding with label0 pinned to `a` below `base`: every chosen
// node must offer `a` plus at least one other child.  The caller supplies
// the witnesses (a, base); they are not searched for.
KernelData kernel_pinned_label(const PrefixTree& tree, nat a, std::vector<nat> base, nat depth,
                               KernelOptions opts = {});

// The tree node assigned to a full-depth binary sequence.
Prefix branch_node_prefix(const KernelData& kd, std::span<const nat> bits);

struct ColorResult {
  NatFn coloring;  // 1 on the label1 range, 0 elsewhere (label0 included)
  bool injective = false;
  std::optional<std::pair<nat, nat>> collision;  // branch codes, when not injective
  std::vector<Prefix> colored;                   // coloring mapped over each branch node
};

// Validates the kernel invariants (throwing on violation), then colors and
// checks that branch -> colored prefix is injective across all 2^depth
// branches.
ColorResult color_and_check(const KernelData& kd);

// Union of the colored prefixes, their 0<->1 swaps, and both constants,
// normalized to the shortest input length; reports closure under pointwise
// composition on that common prefix.
struct AssembleResult {
  std::vector<Prefix> elements;
  bool closed = true;
};
AssembleResult assemble_two_valued(const std::vector<Prefix>& colored);

}  // namespace relrank
