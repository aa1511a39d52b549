#include "relrank/perfect.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>
#include <unordered_set>

namespace relrank {

// ---------------------------------------------------------------------------
// PrefixTree
// ---------------------------------------------------------------------------

struct PrefixTree::Impl {
  std::string name;
  std::function<bool(std::span<const nat>)> contains;
  std::function<std::vector<nat>(std::span<const nat>)> children;
  bool perfect_hint = false;
};

PrefixTree::PrefixTree(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

PrefixTree PrefixTree::from_membership(std::string name,
                                       std::function<bool(std::span<const nat>)> contains,
                                       bool perfect_hint) {
  if (!contains) throw std::invalid_argument("PrefixTree: null membership test");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->contains = std::move(contains);
  impl->perfect_hint = perfect_hint;
  return PrefixTree(impl);
}

PrefixTree PrefixTree::with_child_oracle(std::string name,
                                         std::function<bool(std::span<const nat>)> contains,
                                         std::function<std::vector<nat>(std::span<const nat>)> children,
                                         bool perfect_hint) {
  PrefixTree t = from_membership(std::move(name), std::move(contains), perfect_hint);
  auto impl = std::make_shared<Impl>(*t.impl_);
  impl->children = std::move(children);
  return PrefixTree(impl);
}

bool PrefixTree::contains(std::span<const nat> node) const { return impl_->contains(node); }

std::vector<nat> PrefixTree::children(std::span<const nat> node, nat probe_budget) const {
  if (impl_->children) {
    std::vector<nat> e = impl_->children(node);
    std::sort(e.begin(), e.end());
    return e;
  }
  std::vector<nat> e;
  std::vector<nat> probe(node.begin(), node.end());
  probe.push_back(0);
  for (nat label = 0; label < probe_budget; ++label) {
    probe.back() = label;
    if (impl_->contains(probe)) e.push_back(label);
  }
  return e;
}

bool PrefixTree::has_child_oracle() const { return static_cast<bool>(impl_->children); }
bool PrefixTree::perfect_hint() const { return impl_->perfect_hint; }
const std::string& PrefixTree::name() const { return impl_->name; }

// ---------------------------------------------------------------------------
// Built-in trees
// ---------------------------------------------------------------------------

PrefixTree full_binary_tree() {
  return PrefixTree::with_child_oracle(
      "full-binary",
      [](std::span<const nat> node) {
        return std::all_of(node.begin(), node.end(), [](nat v) { return v <= 1; });
      },
      [](std::span<const nat>) { return std::vector<nat>{0, 1}; });
}

PrefixTree branch_code_tree() {
  auto step_ok = [](nat prev, nat v) { return v == 2 * prev + 1 || v == 2 * prev + 2; };
  return PrefixTree::with_child_oracle(
      "branch-family",
      [step_ok](std::span<const nat> node) {
        nat prev = 0;
        for (nat v : node) {
          if (!step_ok(prev, v)) return false;
          prev = v;
        }
        return true;
      },
      [](std::span<const nat> node) {
        nat prev = node.empty() ? 0 : node.back();
        return std::vector<nat>{2 * prev + 1, 2 * prev + 2};
      });
}

namespace {

// Walks a choice path for the pinned trees: choosing `a` is a left step,
// the fresh value a+1+c (c = path code so far) is a right step.  Returns
// the path code, or nullopt when some entry is not a legal child.
std::optional<nat> pinned_walk(std::span<const nat> node, nat a, bool dead_after_two) {
  nat c = 0;
  nat run = 0;  // consecutive `a` choices
  for (nat v : node) {
    bool only_a = dead_after_two && run >= 2;
    if (v == a) {
      c = 2 * c + 1;
      ++run;
    } else if (!only_a && v == a + 1 + c) {
      c = 2 * c + 2;
      run = 0;
    } else {
      return std::nullopt;
    }
  }
  return c;
}

PrefixTree pinned_tree_impl(std::string name, nat a, bool dead_after_two) {
  auto contains = [a, dead_after_two](std::span<const nat> node) {
    return pinned_walk(node, a, dead_after_two).has_value();
  };
  auto children = [a, dead_after_two](std::span<const nat> node) -> std::vector<nat> {
    auto c = pinned_walk(node, a, dead_after_two);
    if (!c) return {};
    if (dead_after_two) {
      nat run = 0;
      for (auto it = node.rbegin(); it != node.rend() && *it == a; ++it) ++run;
      if (run >= 2) return {a};
    }
    return {a, a + 1 + *c};
  };
  return PrefixTree::with_child_oracle(std::move(name), contains, children);
}

}  // namespace

PrefixTree pinned_fresh_tree(nat a) {
  return pinned_tree_impl("pinned-fresh:" + std::to_string(a), a, false);
}

PrefixTree pinned_dead_branch_tree(nat a) {
  return pinned_tree_impl("pinned-dead:" + std::to_string(a), a, true);
}

// ---------------------------------------------------------------------------
// Kernel extraction
// ---------------------------------------------------------------------------

KernelSearchError::KernelSearchError(const std::string& msg, std::vector<nat> node)
    : std::runtime_error(msg), where_(std::move(node)) {}

namespace {

nat code_length(nat code) { return std::bit_width(code + 1) - 1; }

std::string node_str(std::span<const nat> node) {
  std::string s = "(";
  for (size_t i = 0; i < node.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(node[i]);
  }
  return s + ")";
}

struct SearchHit {
  std::vector<nat> node;
  std::vector<nat> children;
};

// Breadth-first search below `base` (inclusive) for a node whose child set
// satisfies `good`.  Deterministic: children are explored in ascending
// label order.
template <typename Pred>
SearchHit search_below(const PrefixTree& tree, std::vector<nat> base, const KernelOptions& opts,
                       Pred good, const char* what) {
  if (!tree.contains(base))
    throw KernelSearchError(std::string("kernel: base node ") + node_str(base) + " is not in tree '" +
                                tree.name() + "'",
                            base);
  std::deque<std::vector<nat>> queue;
  queue.push_back(base);
  nat visited = 0;
  while (!queue.empty() && visited < opts.node_search_budget) {
    std::vector<nat> y = std::move(queue.front());
    queue.pop_front();
    ++visited;
    std::vector<nat> e = tree.children(y, opts.probe_budget);
    if (good(e)) return {std::move(y), std::move(e)};
    for (nat label : e) {
      std::vector<nat> child = y;
      child.push_back(label);
      queue.push_back(std::move(child));
    }
  }
  throw KernelSearchError(std::string("kernel: no node ") + what + " found below " + node_str(base) +
                              " within budget (tree '" + tree.name() + "')",
                          base);
}

}  // namespace

KernelData kernel_fresh_labels(const PrefixTree& tree, nat depth, KernelOptions opts) {
  if (depth > 24) throw std::invalid_argument("kernel_fresh_labels: depth too large");
  KernelData kd;
  kd.depth = depth;
  std::unordered_set<nat> used;     // all labels assigned so far
  std::unordered_set<nat> side[2];  // the two label ranges

  const nat last = (nat{2} << depth) - 2;  // greatest code of a depth-length sequence
  for (nat code = 0; code <= last; ++code) {
    nat len = code_length(code);
    std::vector<nat> base;
    if (code != 0) {
      nat parent = (code - 1) >> 1;
      nat bit = (code - 1) & 1;
      base = kd.node.at(parent);
      base.push_back(bit == 0 ? kd.label0.at(parent) : kd.label1.at(parent));
    }
    if (len == depth) {
      // Full-depth sequences only need a tree node extending the labeled
      // branch; the minimal one works.
      kd.node[code] = std::move(base);
      continue;
    }
    SearchHit hit = search_below(
        tree, std::move(base), opts,
        [&used](const std::vector<nat>& e) {
          if (e.size() < 2) return false;
          return std::any_of(e.begin(), e.end(), [&used](nat v) { return !used.count(v); });
        },
        "with two children and a fresh label");

    // Pinned choice: m is the least fresh child, n the least other child.
    nat m = 0;
    bool have_m = false;
    for (nat v : hit.children)
      if (!used.count(v)) {
        m = v;
        have_m = true;
        break;
      }
    if (!have_m) throw std::logic_error("kernel_fresh_labels: search postcondition violated");
    nat n = hit.children[0] == m ? hit.children[1] : hit.children[0];

    nat l0, l1;
    if (used.count(n)) {
      // n was already used on one side; keep it on that side so the two
      // ranges stay disjoint, and send the fresh m to the other side.
      nat s = side[0].count(n) ? 0 : 1;
      (s == 0 ? l0 : l1) = n;
      (s == 0 ? l1 : l0) = m;
    } else {
      l0 = m;
      l1 = n;
    }
    side[0].insert(l0);
    side[1].insert(l1);
    used.insert(l0);
    used.insert(l1);
    kd.label0[code] = l0;
    kd.label1[code] = l1;
    kd.node[code] = std::move(hit.node);
  }
  return kd;
}

KernelData kernel_pinned_label(const PrefixTree& tree, nat a, std::vector<nat> base, nat depth,
                               KernelOptions opts) {
  if (depth > 24) throw std::invalid_argument("kernel_pinned_label: depth too large");
  KernelData kd;
  kd.depth = depth;

  const nat last = (nat{2} << depth) - 2;
  for (nat code = 0; code <= last; ++code) {
    nat len = code_length(code);
    std::vector<nat> start;
    if (code == 0) {
      start = base;
    } else {
      nat parent = (code - 1) >> 1;
      nat bit = (code - 1) & 1;
      start = kd.node.at(parent);
      start.push_back(bit == 0 ? kd.label0.at(parent) : kd.label1.at(parent));
    }
    if (len == depth) {
      kd.node[code] = std::move(start);
      continue;
    }
    SearchHit hit = search_below(
        tree, std::move(start), opts,
        [a](const std::vector<nat>& e) {
          return e.size() >= 2 && std::find(e.begin(), e.end(), a) != e.end();
        },
        "offering the pinned label and one more");
    kd.label0[code] = a;
    for (nat v : hit.children)
      if (v != a) {
        kd.label1[code] = v;  // least non-pinned child
        break;
      }
    kd.node[code] = std::move(hit.node);
  }
  return kd;
}

KernelInvariants check_kernel(const PrefixTree& tree, const KernelData& kd) {
  std::unordered_set<nat> range0, range1;
  for (auto& [code, v] : kd.label0) {
    (void)code;
    range0.insert(v);
  }
  for (auto& [code, v] : kd.label1) {
    (void)code;
    range1.insert(v);
  }
  for (nat v : range0)
    if (range1.count(v))
      return {false, "label ranges overlap at value " + std::to_string(v)};

  for (auto& [code, node] : kd.node) {
    if (!tree.contains(node))
      return {false, "node for code " + std::to_string(code) + " is not in the tree"};
    if (code_length(code) == kd.depth) continue;
    if (!kd.label0.count(code) || !kd.label1.count(code))
      return {false, "missing labels for code " + std::to_string(code)};
    for (nat bit = 0; bit < 2; ++bit) {
      nat child = 2 * code + bit + 1;
      auto it = kd.node.find(child);
      if (it == kd.node.end())
        return {false, "missing node for code " + std::to_string(child)};
      const std::vector<nat>& cn = it->second;
      nat lab = bit == 0 ? kd.label0.at(code) : kd.label1.at(code);
      if (cn.size() < node.size() + 1 || !std::equal(node.begin(), node.end(), cn.begin()) ||
          cn[node.size()] != lab)
        return {false, "node for code " + std::to_string(child) + " does not extend its parent's label"};
    }
  }
  return {true, ""};
}

Prefix branch_node_prefix(const KernelData& kd, std::span<const nat> bits) {
  if (bits.size() != kd.depth)
    throw std::invalid_argument("branch_node_prefix: sequence length must equal depth");
  return kd.node.at(seq_code(bits));
}

ColorResult color_and_check(const KernelData& kd) {
  // The coloring is meaningless on a corrupted kernel; refuse up front.
  // Both invariants that matter here are tree-independent: disjoint label
  // ranges and label extension between parent and child nodes.
  std::unordered_set<nat> range1;
  for (auto& [code, v] : kd.label1) {
    (void)code;
    range1.insert(v);
  }
  for (auto& [code, v] : kd.label0) {
    (void)code;
    if (range1.count(v))
      throw std::invalid_argument("color_and_check: label ranges overlap at value " +
                                  std::to_string(v));
  }
  for (auto& [code, node] : kd.node) {
    if (code_length(code) == kd.depth) continue;
    if (!kd.label0.count(code) || !kd.label1.count(code))
      throw std::invalid_argument("color_and_check: missing labels for code " + std::to_string(code));
    for (nat bit = 0; bit < 2; ++bit) {
      nat child = 2 * code + bit + 1;
      auto it = kd.node.find(child);
      if (it == kd.node.end())
        throw std::invalid_argument("color_and_check: missing node for code " + std::to_string(child));
      const std::vector<nat>& cn = it->second;
      nat lab = bit == 0 ? kd.label0.at(code) : kd.label1.at(code);
      if (cn.size() < node.size() + 1 || !std::equal(node.begin(), node.end(), cn.begin()) ||
          cn[node.size()] != lab)
        throw std::invalid_argument("color_and_check: node for code " + std::to_string(child) +
                                    " does not extend its parent's label");
    }
  }

  ColorResult out;
  auto owned = std::make_shared<std::unordered_set<nat>>(std::move(range1));
  out.coloring = NatFn::make("kernel-coloring",
                             [owned](nat n) { return owned->count(n) ? nat{1} : nat{0}; })
                     .with_meta([] {
                       FnMeta meta;
                       meta.image_bound = 2;
                       meta.image_bound_provenance = Provenance::constructed();
                       return meta;
                     }());

  // Colored prefix per full-depth branch, in code order.
  const nat first_leaf = (nat{1} << kd.depth) - 1;
  const nat last_leaf = (nat{2} << kd.depth) - 2;
  std::vector<nat> leaf_codes;
  for (nat code = first_leaf; code <= last_leaf; ++code) {
    auto it = kd.node.find(code);
    if (it == kd.node.end())
      throw std::invalid_argument("color_and_check: missing branch node for code " +
                                  std::to_string(code));
    Prefix colored;
    colored.reserve(it->second.size());
    for (nat v : it->second) colored.push_back(out.coloring(v));
    out.colored.push_back(std::move(colored));
    leaf_codes.push_back(code);
  }

  out.injective = true;
  // Structural check: along every branch, the colored value at the split
  // position of each ancestor equals the branch bit taken there.  Two
  // branches therefore differ where they first split, which is injectivity
  // over arbitrarily many branches without a quadratic scan.
  for (size_t idx = 0; idx < leaf_codes.size() && out.injective; ++idx) {
    for (nat at = leaf_codes[idx]; at != 0;) {
      nat parent = (at - 1) >> 1;
      nat bit = (at - 1) & 1;
      nat pos = kd.node.at(parent).size();
      if (pos >= out.colored[idx].size() || out.colored[idx][pos] != bit) {
        out.injective = false;
        out.collision = {leaf_codes[idx], leaf_codes[idx]};
        break;
      }
      at = parent;
    }
  }
  // Exhaustive pairwise check at small scale.
  if (out.injective && leaf_codes.size() <= 512) {
    for (size_t i = 0; i < leaf_codes.size() && out.injective; ++i)
      for (size_t j = i + 1; j < leaf_codes.size(); ++j) {
        const Prefix& pa = out.colored[i];
        const Prefix& pb = out.colored[j];
        size_t common = std::min(pa.size(), pb.size());
        bool differ = false;
        for (size_t pos = 0; pos < common; ++pos)
          if (pa[pos] != pb[pos]) {
            differ = true;
            break;
          }
        if (!differ) {
          out.injective = false;
          out.collision = {leaf_codes[i], leaf_codes[j]};
          break;
        }
      }
  }
  return out;
}

AssembleResult assemble_two_valued(const std::vector<Prefix>& colored) {
  if (colored.empty()) throw std::invalid_argument("assemble_two_valued: no input prefixes");
  size_t len = ~size_t{0};
  for (const Prefix& p : colored) {
    for (nat v : p)
      if (v > 1) throw std::invalid_argument("assemble_two_valued: input has a value above 1");
    len = std::min(len, p.size());
  }
  if (len < 2)
    throw std::invalid_argument("assemble_two_valued: prefixes must cover arguments 0 and 1");

  std::set<Prefix> pool;
  for (const Prefix& p : colored) {
    Prefix cut(p.begin(), p.begin() + len);
    Prefix swapped = cut;
    for (nat& v : swapped) v = 1 - v;
    pool.insert(std::move(cut));
    pool.insert(std::move(swapped));
  }
  pool.insert(Prefix(len, 0));
  pool.insert(Prefix(len, 1));

  AssembleResult out;
  out.elements.assign(pool.begin(), pool.end());
  for (const Prefix& a : out.elements)
    for (const Prefix& b : out.elements) {
      Prefix c(len);
      for (size_t i = 0; i < len; ++i) c[i] = a[b[i]];
      if (!pool.count(c)) {
        out.closed = false;
        return out;
      }
    }
  return out;
}

}  // namespace relrank
