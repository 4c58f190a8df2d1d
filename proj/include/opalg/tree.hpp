#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "perm.hpp"

namespace opalg {

/// Rooted tree node. leaf >= 0 marks a numbered terminal (0-based); an
/// internal vertex has leaf = -1 and a nonempty child list. The engine works
/// with reduced operads, so every terminal is numbered (irr(T) empty) and
/// internal vertices have out-degree >= 1.
///
/// tag is transient bookkeeping for sign tracking: operations that reorder
/// vertices report where each tagged vertex went.
struct TreeNode {
    int leaf = -1;
    std::vector<TreeNode> kids;
    int tag = -1;

    static TreeNode make_leaf(int number) {
        TreeNode t;
        t.leaf = number;
        return t;
    }
    static TreeNode make_internal(std::vector<TreeNode> children) {
        if (children.empty()) throw error("TreeNode: internal vertex needs children");
        TreeNode t;
        t.kids = std::move(children);
        return t;
    }

    bool is_leaf() const { return leaf >= 0; }

    bool operator==(const TreeNode& o) const {
        return leaf == o.leaf && kids == o.kids;
    }
};

inline int min_leaf(const TreeNode& t) {
    if (t.is_leaf()) return t.leaf;
    int m = -1;
    for (auto& k : t.kids) {
        int v = min_leaf(k);
        if (m < 0 || (v >= 0 && v < m)) m = v;
    }
    return m;
}

inline void collect_leaves(const TreeNode& t, std::vector<int>& out) {
    if (t.is_leaf()) out.push_back(t.leaf);
    for (auto& k : t.kids) collect_leaves(k, out);
}

inline int count_internal(const TreeNode& t) {
    if (t.is_leaf()) return 0;
    int c = 1;
    for (auto& k : t.kids) c += count_internal(k);
    return c;
}

inline std::string encode(const TreeNode& t) {
    if (t.is_leaf()) return std::to_string(t.leaf + 1);
    std::string s = "(";
    for (std::size_t i = 0; i < t.kids.size(); ++i)
        s += (i ? "," : "") + encode(t.kids[i]);
    return s + ")";
}

/// Out-degrees of the internal vertices in depth-first preorder.
inline void out_degrees(const TreeNode& t, std::vector<int>& out) {
    if (t.is_leaf()) return;
    out.push_back((int)t.kids.size());
    for (auto& k : t.kids) out_degrees(k, out);
}

namespace detail {

inline void assign_tags_dfs(TreeNode& t, int& next) {
    if (t.is_leaf()) return;
    t.tag = next++;
    for (auto& k : t.kids) assign_tags_dfs(k, next);
}

inline TreeNode canonical_rec(const TreeNode& t, std::vector<int>& order) {
    if (t.is_leaf()) return t;
    struct Item {
        TreeNode node;
        std::vector<int> order;
        int key;
    };
    std::vector<Item> items;
    for (auto& k : t.kids) {
        Item it;
        it.node = canonical_rec(k, it.order);
        it.key = min_leaf(it.node);
        items.push_back(std::move(it));
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.key < b.key; });
    TreeNode out;
    out.tag = t.tag;
    order.push_back(t.tag);
    for (auto& it : items) {
        for (int v : it.order) order.push_back(v);
        out.kids.push_back(std::move(it.node));
    }
    return out;
}

}  // namespace detail

/// Canonical representative: children of every internal vertex sorted by the
/// least numbered leaf below them. With all terminals numbered the keys are
/// distinct, so the form is unique and idempotent.
///
/// Also reports, via `vertex_perm`, where each internal vertex went:
/// vertex tagged t in the input ends up at DFS-preorder position perm(t) of
/// the output. Inputs are tagged 0..i(T)-1 in input DFS-preorder.
inline TreeNode canonicalize_tracked(TreeNode t, Permutation& vertex_perm) {
    int next = 0;
    detail::assign_tags_dfs(t, next);
    std::vector<int> order;
    TreeNode out = detail::canonical_rec(t, order);
    std::vector<int> img(order.size());
    for (int pos = 0; pos < (int)order.size(); ++pos) img[order[pos]] = pos;
    vertex_perm = Permutation(std::move(img));
    return out;
}

inline TreeNode canonicalize(const TreeNode& t) {
    Permutation p;
    return canonicalize_tracked(t, p);
}

/// n-tree: tree plus injective numbering of terminals by 0..n-1. Reduced
/// setting: the numbering is bijective onto the terminals.
struct NTree {
    TreeNode root;
    int n = 0;

    NTree() = default;
    NTree(TreeNode r, int arity) : root(std::move(r)), n(arity) { validate(); }

    void validate() const {
        std::vector<int> leaves;
        collect_leaves(root, leaves);
        std::vector<bool> seen(n, false);
        if ((int)leaves.size() != n) throw error("NTree: leaf count != n");
        for (int l : leaves) {
            if (l < 0 || l >= n || seen[l]) throw error("NTree: numbering not a bijection");
            seen[l] = true;
        }
    }

    static NTree trivial() { return NTree(TreeNode::make_leaf(0), 1); }

    static NTree corolla(int n) {
        std::vector<TreeNode> kids;
        for (int i = 0; i < n; ++i) kids.push_back(TreeNode::make_leaf(i));
        return NTree(TreeNode::make_internal(std::move(kids)), n);
    }

    NTree canonical() const { return NTree(canonicalize(root), n); }

    bool operator==(const NTree& o) const { return n == o.n && root == o.root; }
    bool operator<(const NTree& o) const {
        if (n != o.n) return n < o.n;
        return encode(root) < encode(o.root);
    }
};

/// Build a tree from an explicit parent map (vertex -> parent, root maps to
/// itself or is absent). Rejects malformed graphs: cycles, several roots,
/// vertices with no path to the root.
inline TreeNode tree_from_parent_map(int num_vertices, const std::map<int, int>& parent,
                                     const std::map<int, int>& leaf_number) {
    std::vector<int> roots;
    for (int v = 0; v < num_vertices; ++v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) roots.push_back(v);
    }
    if (roots.size() != 1) throw error("tree_from_parent_map: must have exactly one root");
    std::vector<std::vector<int>> kids(num_vertices);
    for (auto& [v, p] : parent) {
        if (v == p) continue;
        if (p < 0 || p >= num_vertices || v < 0 || v >= num_vertices)
            throw error("tree_from_parent_map: vertex out of range");
        kids[p].push_back(v);
    }
    // cycle / reachability check
    std::vector<int> depth(num_vertices, -1);
    std::vector<int> stack{roots[0]};
    depth[roots[0]] = 0;
    int visited = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++visited;
        for (int k : kids[v]) {
            if (depth[k] >= 0) throw error("tree_from_parent_map: cycle");
            depth[k] = depth[v] + 1;
            stack.push_back(k);
        }
    }
    if (visited != num_vertices) throw error("tree_from_parent_map: disconnected (cycle among non-root vertices)");

    std::function<TreeNode(int)> build = [&](int v) -> TreeNode {
        if (kids[v].empty()) {
            auto it = leaf_number.find(v);
            if (it == leaf_number.end())
                throw error("tree_from_parent_map: unnumbered terminal (reduced operads only)");
            return TreeNode::make_leaf(it->second);
        }
        std::vector<TreeNode> ch;
        for (int k : kids[v]) ch.push_back(build(k));
        return TreeNode::make_internal(std::move(ch));
    };
    return build(roots[0]);
}

namespace detail {

inline void relabel_leaves(TreeNode& t, const std::vector<int>& map) {
    if (t.is_leaf()) {
        t.leaf = map[t.leaf];
        return;
    }
    for (auto& k : t.kids) relabel_leaves(k, map);
}

}  // namespace detail

/// Right action (T, e)σ = (T, eσ): the leaf numbered σ(i) becomes numbered i.
inline NTree sigma_act(const NTree& t, const Permutation& sigma) {
    if (sigma.n() != t.n) throw error("sigma_act: size mismatch");
    TreeNode r = t.root;
    std::vector<int> map(t.n);
    for (int i = 0; i < t.n; ++i) map[sigma(i)] = i;
    detail::relabel_leaves(r, map);
    return NTree(canonicalize(r), t.n);
}

namespace detail {

inline TreeNode graft_rec(const TreeNode& base, const std::vector<TreeNode>& subs,
                          const std::vector<int>& offsets) {
    if (base.is_leaf()) return subs[base.leaf];
    std::vector<TreeNode> kids;
    for (auto& k : base.kids) kids.push_back(graft_rec(k, subs, offsets));
    TreeNode t = TreeNode::make_internal(std::move(kids));
    t.tag = base.tag;
    return t;
}

}  // namespace detail

/// Operadic composition of n-trees: the root of subs[i] is identified with
/// the leaf numbered i of base; leaves renumbered by
/// e(m_0 + ... + m_{i-1} + j) = e_i(j).
inline NTree graft(const NTree& base, const std::vector<NTree>& subs) {
    if ((int)subs.size() != base.n) throw error("graft: arity mismatch");
    std::vector<int> offsets(base.n, 0);
    int total = 0;
    for (int i = 0; i < base.n; ++i) {
        offsets[i] = total;
        total += subs[i].n;
    }
    std::vector<TreeNode> shifted;
    for (int i = 0; i < base.n; ++i) {
        TreeNode s = subs[i].root;
        std::vector<int> map(subs[i].n);
        for (int j = 0; j < subs[i].n; ++j) map[j] = offsets[i] + j;
        detail::relabel_leaves(s, map);
        shifted.push_back(std::move(s));
    }
    return NTree(canonicalize(detail::graft_rec(base.root, shifted, offsets)), total);
}

/// Enumerate all canonical n-trees with at most max_internal internal
/// vertices and every out-degree in `allowed`. Complete and duplicate-free;
/// canonical by construction (children blocks ordered by their minima).
inline std::vector<NTree> enumerate_ntrees(int n, int max_internal,
                                           const std::set<int>& allowed) {
    if (allowed.count(0))
        throw error("enumerate_ntrees: nullary vertices unsupported (reduced operads)");

    using Gen = std::vector<std::pair<TreeNode, int>>;  // (tree, internal count)
    std::function<Gen(const std::vector<int>&, int)> gen =
        [&](const std::vector<int>& leaves, int budget) -> Gen {
        Gen out;
        if (leaves.size() == 1) out.push_back({TreeNode::make_leaf(leaves[0]), 0});
        if (budget < 1) return out;
        for (int o : allowed) {
            if (o == 1) {
                for (auto& [sub, used] : gen(leaves, budget - 1))
                    out.push_back({TreeNode::make_internal({sub}), used + 1});
                continue;
            }
            if (o < 2 || o > (int)leaves.size()) continue;
            // set partitions of `leaves` into exactly o blocks, blocks ordered
            // by minima (leaves are sorted, so a leaf may open only the first
            // empty block)
            std::vector<std::vector<int>> blocks(o);
            std::function<void(std::size_t)> assign = [&](std::size_t idx) {
                if (idx == leaves.size()) {
                    if (blocks.back().empty()) return;
                    // distribute the remaining budget over the children
                    std::vector<TreeNode> acc;
                    std::function<void(int, int, int)> build = [&](int bi, int rem, int used_so_far) {
                        if (bi == o) {
                            out.push_back({TreeNode::make_internal(acc), used_so_far + 1});
                            return;
                        }
                        for (auto& [sub, used] : gen(blocks[bi], rem)) {
                            acc.push_back(sub);
                            build(bi + 1, rem - used, used_so_far + used);
                            acc.pop_back();
                        }
                    };
                    build(0, budget - 1, 0);
                    return;
                }
                bool opened = false;
                for (int b = 0; b < o; ++b) {
                    if (blocks[b].empty()) {
                        if (opened) break;
                        opened = true;
                    }
                    blocks[b].push_back(leaves[idx]);
                    assign(idx + 1);
                    blocks[b].pop_back();
                }
            };
            assign(0);
        }
        return out;
    };

    std::vector<int> leaves(n);
    std::iota(leaves.begin(), leaves.end(), 0);
    std::set<NTree> seen;
    std::vector<NTree> result;
    for (auto& [tree, used] : gen(leaves, max_internal)) {
        NTree nt(canonicalize(tree), n);
        if (seen.insert(nt).second) result.push_back(nt);
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace opalg
