#pragma once

#include "operad.hpp"

namespace opalg {

/// Basis monomial of a free operad: canonical tree shape with one
/// generating-collection basis label (degree, index) per internal vertex,
/// listed in DFS-preorder.
struct LabeledTree {
    TreeNode shape;
    std::vector<std::pair<int, int>> labels;

    int total_degree() const {
        int d = 0;
        for (auto& [deg, idx] : labels) d += deg;
        return d;
    }

    std::string key() const {
        std::string s = encode(shape) + "|";
        for (auto& [d, i] : labels) s += std::to_string(d) + ":" + std::to_string(i) + ",";
        return s;
    }

    bool operator<(const LabeledTree& o) const {
        std::string a = encode(shape), b = encode(o.shape);
        if (a != b) return a < b;
        return labels < o.labels;
    }
    bool operator==(const LabeledTree& o) const {
        return shape == o.shape && labels == o.labels;
    }
};

template <class F>
using TreeComb = std::map<LabeledTree, F>;

template <class F>
void tree_comb_add(TreeComb<F>& acc, const LabeledTree& t, const F& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc.try_emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

namespace detail {

inline int internal_count_tagged(const TreeNode& t) { return count_internal(t); }

/// Read the tags of internal vertices in DFS-preorder.
inline void dfs_tags(const TreeNode& t, std::vector<int>& out) {
    if (t.is_leaf()) return;
    out.push_back(t.tag);
    for (auto& k : t.kids) dfs_tags(k, out);
}

template <class F>
struct NormTerm {
    TreeNode node;
    std::vector<std::pair<int, int>> labels;
    F coeff;
    int degree = 0;
};

/// Sort children at every vertex (keys: least leaf below). Reordering the
/// child blocks costs the Koszul block sign and twists the vertex label by
/// the inverse arrangement through the collection action.
template <class F>
std::vector<NormTerm<F>> sort_children_rec(const Collection<F>& V, const TreeNode& node,
                                           const std::vector<std::pair<int, int>>& word,
                                           int word_pos) {
    std::vector<NormTerm<F>> out;
    if (node.is_leaf()) {
        out.push_back({node, {}, F(1), 0});
        return out;
    }
    int p = (int)node.kids.size();
    auto [deg_u, idx_u] = word[word_pos];
    // recurse into children; their slices follow this vertex's label
    std::vector<std::vector<NormTerm<F>>> kid_terms;
    int pos = word_pos + 1;
    std::vector<int> kid_minleaf;
    for (auto& k : node.kids) {
        kid_terms.push_back(sort_children_rec(V, k, word, pos));
        pos += count_internal(k);
        kid_minleaf.push_back(min_leaf(k));
    }
    // arrangement: new order of children sorted by min leaf (keys distinct)
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return kid_minleaf[a] < kid_minleaf[b]; });
    std::vector<int> rho_img(p);  // ρ(old child position) = new position
    for (int j = 0; j < p; ++j) rho_img[order[j]] = j;
    Permutation rho(rho_img);
    Permutation rho_inv = rho.inverse();

    // cartesian product over child terms
    std::vector<std::size_t> pick(p, 0);
    while (true) {
        F c(1);
        std::vector<int> block_deg(p);
        for (int i = 0; i < p; ++i) {
            const auto& t = kid_terms[i][pick[i]];
            c *= t.coeff;
            block_deg[i] = t.degree;
        }
        int eps = koszul_sign(rho, block_deg);
        F base = (eps == 1) ? c : -c;
        // vertex label twists by ρ^{-1}
        const Matrix<F>& act = V.action(p).act(rho_inv).at(deg_u);
        for (int j = 0; j < act.rows(); ++j) {
            F av = act.get(j, idx_u);
            if (av.is_zero()) continue;
            NormTerm<F> term;
            std::vector<TreeNode> kids_new(p);
            term.labels.push_back({deg_u, j});
            term.degree = deg_u;
            for (int newpos = 0; newpos < p; ++newpos) {
                const auto& t = kid_terms[order[newpos]][pick[order[newpos]]];
                kids_new[newpos] = t.node;
                for (auto& l : t.labels) term.labels.push_back(l);
                term.degree += t.degree;
            }
            term.node = TreeNode::make_internal(std::move(kids_new));
            term.coeff = base * av;
            out.push_back(std::move(term));
        }
        // advance
        int i = p - 1;
        while (i >= 0 && ++pick[i] == kid_terms[i].size()) pick[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace detail

/// Normal form of a labeled tree presented with arbitrary word order (tags on
/// internal vertices give each vertex's position in `word`) and arbitrary
/// child orders. Returns the canonical-form linear combination.
template <class F>
TreeComb<F> normalize_labeled(const Collection<F>& V, const TreeNode& shape,
                              const std::vector<std::pair<int, int>>& word, const F& coeff) {
    TreeComb<F> out;
    if (coeff.is_zero()) return out;
    // step 0: reorder the word to DFS order of the given shape
    std::vector<int> tags;
    detail::dfs_tags(shape, tags);
    if (tags.size() != word.size()) throw error("normalize_labeled: tag/word mismatch");
    std::vector<int> img(word.size());
    for (int p = 0; p < (int)tags.size(); ++p) {
        if (tags[p] < 0 || tags[p] >= (int)word.size())
            throw error("normalize_labeled: bad tag");
        img[tags[p]] = p;
    }
    std::vector<int> degs(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) degs[i] = word[i].first;
    F c = coeff;
    if (!word.empty()) {
        Permutation sigma(img);
        if (koszul_sign(sigma, degs) == -1) c = -c;
    }
    std::vector<std::pair<int, int>> dfs_word(word.size());
    for (std::size_t w = 0; w < word.size(); ++w) dfs_word[img[w]] = word[w];

    // steps 1..: sort children recursively
    for (auto& term : detail::sort_children_rec(V, shape, dfs_word, 0)) {
        LabeledTree lt;
        lt.shape = term.node;
        lt.shape.tag = -1;
        lt.labels = term.labels;
        tree_comb_add(out, lt, c * term.coeff);
    }
    return out;
}

namespace detail {

inline void assign_word_tags(TreeNode& t, int& next) {
    if (t.is_leaf()) { t.tag = -1; return; }
    t.tag = next++;
    for (auto& k : t.kids) assign_word_tags(k, next);
}

inline void clear_tags(TreeNode& t) {
    t.tag = -1;
    for (auto& k : t.kids) clear_tags(k);
}

inline void offset_tags(TreeNode& t, int off) {
    if (!t.is_leaf()) t.tag += off;
    for (auto& k : t.kids) offset_tags(k, off);
}

inline void shift_leaves(TreeNode& t, int off) {
    if (t.is_leaf()) { t.leaf += off; return; }
    for (auto& k : t.kids) shift_leaves(k, off);
}

/// Substitute `sub` for the leaf numbered `slot` of `base`; leaves of base
/// above `slot` shift by m−1, leaves of sub shift by slot. Tags preserved.
inline TreeNode substitute_leaf(const TreeNode& base, int slot, const TreeNode& sub, int m) {
    if (base.is_leaf()) {
        if (base.leaf == slot) {
            TreeNode s = sub;
            if (slot != 0) shift_leaves(s, slot);
            return s;
        }
        TreeNode t = base;
        if (t.leaf > slot) t.leaf += m - 1;
        return t;
    }
    TreeNode t;
    t.tag = base.tag;
    for (auto& k : base.kids) t.kids.push_back(substitute_leaf(k, slot, sub, m));
    return t;
}

}  // namespace detail

/// Free operad on a collection, materialized up to (max_arity, max_internal):
/// basis = canonical vertex-labeled trees, Σ-action by leaf renumbering with
/// Koszul signs, compositions by grafting.
template <class F>
struct FreeOperad {
    Operad<F> op;
    Collection<F> gens;
    int max_internal = 0;
    // basis[arity]: map degree -> monomials in index order
    std::vector<std::map<int, std::vector<LabeledTree>>> basis;
    std::vector<std::map<std::string, std::pair<int, int>>> index;  // arity -> key -> (deg, idx)

    std::pair<int, int> find(int arity, const LabeledTree& t) const {
        auto it = index[arity].find(t.key());
        if (it == index[arity].end())
            throw error("free operad: monomial outside the truncation (raise max_internal)");
        return it->second;
    }

    OpElem<F> to_elem(int arity, const TreeComb<F>& comb) const {
        OpElem<F> e;
        e.arity = arity;
        for (auto& [t, c] : comb) {
            auto [deg, idx] = find(arity, t);
            e.add(deg, idx, c, op.comp(arity).dim(deg));
        }
        e.prune();
        return e;
    }

    const LabeledTree& monomial(int arity, int deg, int idx) const {
        return basis[arity].at(deg)[idx];
    }
};

namespace detail {

template <class F>
std::string render_labeled(const Collection<F>& V, const TreeNode& t,
                           const std::vector<std::pair<int, int>>& labels, int& pos) {
    if (t.is_leaf()) return std::to_string(t.leaf + 1);
    auto [deg, idx] = labels[pos++];
    std::string name = V.at((int)t.kids.size()).label_of(deg, idx);
    if (name.empty()) name = "g" + std::to_string(t.kids.size()) + "." + std::to_string(idx);
    std::string s = name + "(";
    for (std::size_t i = 0; i < t.kids.size(); ++i)
        s += (i ? "," : "") + render_labeled(V, t.kids[i], labels, pos);
    return s + ")";
}

}  // namespace detail

template <class F>
FreeOperad<F> free_operad(const Collection<F>& v, int max_arity, int max_internal) {
    FreeOperad<F> fo;
    fo.gens = v;
    fo.max_internal = max_internal;
    fo.op.name = "F(V)";

    std::set<int> allowed;
    for (int n = 1; n <= v.max_arity(); ++n)
        if (v.at(n).total_dim() > 0) allowed.insert(n);
    if (v.at(0).total_dim() > 0)
        throw error("free_operad: generators in arity 0 unsupported (reduced operads)");

    // enumerate basis monomials per arity
    fo.basis.resize(max_arity + 1);
    fo.index.resize(max_arity + 1);
    for (int n = 1; n <= max_arity; ++n) {
        std::vector<NTree> trees = allowed.empty() ? std::vector<NTree>{}
                                                   : enumerate_ntrees(n, max_internal, allowed);
        if (n == 1 && allowed.empty()) trees = {NTree::trivial()};
        for (auto& t : trees) {
            std::vector<int> degs_out;
            out_degrees(t.root, degs_out);
            // all label assignments: cartesian product over vertices
            std::vector<std::vector<std::pair<int, int>>> choices;
            for (int o : degs_out) {
                std::vector<std::pair<int, int>> ch;
                for (auto& [deg, k] : v.at(o).dims)
                    for (int i = 0; i < k; ++i) ch.push_back({deg, i});
                choices.push_back(std::move(ch));
            }
            std::vector<std::size_t> pick(choices.size(), 0);
            bool done = choices.empty();
            while (true) {
                LabeledTree lt;
                lt.shape = t.root;
                int deg = 0;
                for (std::size_t i = 0; i < choices.size(); ++i) {
                    lt.labels.push_back(choices[i][pick[i]]);
                    deg += choices[i][pick[i]].first;
                }
                fo.basis[n][deg].push_back(lt);
                if (done) break;
                int i = (int)choices.size() - 1;
                while (i >= 0 && ++pick[i] == choices[i].size()) pick[i--] = 0;
                if (i < 0) break;
            }
        }
        for (auto& [deg, list] : fo.basis[n]) {
            std::sort(list.begin(), list.end());
            for (int i = 0; i < (int)list.size(); ++i)
                fo.index[n][list[i].key()] = {deg, i};
        }
    }

    // components with labels
    for (int n = 0; n <= max_arity; ++n) {
        Complex<F> c;
        if (n >= 1) {
            for (auto& [deg, list] : fo.basis[n])
                if (!list.empty()) c.dims[deg] = (int)list.size();
            for (auto& [deg, list] : fo.basis[n]) {
                std::vector<std::string> lab;
                for (auto& lt : list) {
                    int pos = 0;
                    lab.push_back(detail::render_labeled(v, lt.shape, lt.labels, pos));
                }
                c.labels[deg] = std::move(lab);
            }
        }
        fo.op.coll.components.push_back(std::move(c));
        fo.op.coll.actions.push_back(nullptr);
    }

    // differential: apply d_V at each vertex with the Leibniz sign
    for (int n = 1; n <= max_arity; ++n) {
        Complex<F>& c = fo.op.coll.components[n];
        for (auto& [deg, list] : fo.basis[n]) {
            if (c.dim(deg + 1) == 0) continue;
            Matrix<F> m(c.dim(deg + 1), (int)list.size());
            for (int col = 0; col < (int)list.size(); ++col) {
                const LabeledTree& lt = list[col];
                std::vector<int> degs_out;
                out_degrees(lt.shape, degs_out);
                int sign_acc = 0;
                for (std::size_t vtx = 0; vtx < lt.labels.size(); ++vtx) {
                    auto [ld, li] = lt.labels[vtx];
                    const Complex<F>& comp = v.at(degs_out[vtx]);
                    if (comp.dim(ld + 1) > 0) {
                        Matrix<F> dv = comp.d(ld);
                        for (int r = 0; r < dv.rows(); ++r) {
                            F val = dv.get(r, li);
                            if (val.is_zero()) continue;
                            LabeledTree nt = lt;
                            nt.labels[vtx] = {ld + 1, r};
                            auto [dd, di] = fo.find(n, nt);
                            m.add_to(di, col, sign_acc % 2 == 0 ? val : -val);
                        }
                    }
                    sign_acc += ld;
                }
            }
            c.set_d(deg, std::move(m));
        }
        c.validate();
    }

    // Σ-actions: relabel leaves and renormalize
    for (int n = 1; n <= max_arity; ++n) {
        const Complex<F>& c = fo.op.coll.components[n];
        std::vector<ChainMap<F>> gens_maps;
        for (int g = 0; g + 1 < n; ++g) {
            Permutation tr = Permutation::transposition(n, g);
            ChainMap<F> a = ChainMap<F>::zero(c, c, 0);
            for (auto& [deg, list] : fo.basis[n]) {
                Matrix<F> m(c.dim(deg), (int)list.size());
                for (int col = 0; col < (int)list.size(); ++col) {
                    const LabeledTree& lt = list[col];
                    TreeNode shape = lt.shape;
                    std::vector<int> map(n);
                    for (int i = 0; i < n; ++i) map[tr(i)] = i;
                    detail::relabel_leaves(shape, map);
                    int next = 0;
                    detail::assign_word_tags(shape, next);
                    for (auto& [t2, c2] : normalize_labeled(fo.gens, shape, lt.labels, F(1))) {
                        auto [dd, di] = fo.find(n, t2);
                        m.add_to(di, col, c2);
                    }
                }
                a.set(deg, std::move(m));
            }
            gens_maps.push_back(std::move(a));
        }
        fo.op.coll.actions[n] =
            std::make_shared<SigmaAction<F>>(SigmaAction<F>(c, std::move(gens_maps)));
    }
    {
        Complex<F>& c0 = fo.op.coll.components[0];
        fo.op.coll.actions[0] =
            std::make_shared<SigmaAction<F>>(SigmaAction<F>::trivial(c0, 0));
    }

    // unit = trivial tree in arity 1
    {
        LabeledTree unit_tree;
        unit_tree.shape = TreeNode::make_leaf(0);
        fo.op.unit = zero_vec<F>(fo.op.comp(1).dim(0));
        auto it = fo.index[1].find(unit_tree.key());
        if (it == fo.index[1].end()) throw error("free_operad: unit missing");
        fo.op.unit[it->second.second] = F(1);
    }

    // compositions by grafting
    for (int n = 1; n <= max_arity; ++n)
        for (int m = 1; n + m - 1 <= max_arity; ++m)
            for (int k = 1; k <= n; ++k) {
                const Complex<F>&cn = fo.op.comp(n), &cm = fo.op.comp(m),
                                &cr = fo.op.comp(n + m - 1);
                ChainMap<F> cmap = ChainMap<F>::zero(tensor(cn, cm), cr, 0);
                TensorIndex<F> ti(cn, cm);
                bool overflow = false;
                for (auto& [deg, dim] : cmap.source.dims) {
                    Matrix<F> mat(cr.dim(deg), dim);
                    for (auto& [p, kn] : cn.dims) {
                        int q = deg - p;
                        if (cm.dim(q) == 0) continue;
                        for (int i = 0; i < kn; ++i)
                            for (int j = 0; j < cm.dim(q); ++j) {
                                const LabeledTree& x = fo.basis[n].at(p)[i];
                                const LabeledTree& y = fo.basis[m].at(q)[j];
                                if (count_internal(x.shape) + count_internal(y.shape) >
                                    max_internal) {
                                    overflow = true;
                                    continue;
                                }
                                TreeNode bx = x.shape;
                                int next = 0;
                                detail::assign_word_tags(bx, next);
                                TreeNode by = y.shape;
                                detail::assign_word_tags(by, next);
                                TreeNode glued = detail::substitute_leaf(bx, k - 1, by, m);
                                std::vector<std::pair<int, int>> word = x.labels;
                                for (auto& l : y.labels) word.push_back(l);
                                for (auto& [t2, c2] :
                                     normalize_labeled(fo.gens, glued, word, F(1))) {
                                    auto [dd, di] = fo.find(n + m - 1, t2);
                                    mat.add_to(di, ti.index(deg, p, i, j), c2);
                                }
                            }
                    }
                    cmap.set(deg, std::move(mat));
                }
                if (overflow) {
                    fo.op.truncated = true;
                    fo.op.notices.push_back("composition (" + std::to_string(n) + "," +
                                            std::to_string(m) + ",∘_" + std::to_string(k) +
                                            ") exceeds max_internal; table omitted");
                } else {
                    fo.op.circ[{n, m, k}] = std::move(cmap);
                }
            }
    return fo;
}

/// Homotopy extension to the free operad: given a collection endomorphism α
/// and h of degree −1 with dh = id − α on the generators, build H with
/// dH = id_{F(V)} − F(α). Vertices are totalized by the canonical DFS order;
/// at the distinguished vertex h applies, α before it, id after.
template <class F>
struct CollectionMap {
    // per arity: per degree matrix on V(n); degree shift fixed
    std::vector<ChainMap<F>> maps;
    int shift = 0;

    const ChainMap<F>& at(int n) const { return maps[n]; }
};

template <class F>
ChainMap<F> free_operad_endo(const FreeOperad<F>& fo, int arity, const CollectionMap<F>& alpha) {
    // F(α) on one component: apply α at every vertex (degree 0 only)
    if (alpha.shift != 0) throw error("free_operad_endo: shift must be 0");
    const Complex<F>& c = fo.op.comp(arity);
    ChainMap<F> out = ChainMap<F>::zero(c, c, 0);
    for (auto& [deg, list] : fo.basis[arity]) {
        Matrix<F> m(c.dim(deg), (int)list.size());
        for (int col = 0; col < (int)list.size(); ++col) {
            const LabeledTree& lt = list[col];
            std::vector<int> degs_out;
            out_degrees(lt.shape, degs_out);
            // product over vertices of α entries
            std::function<void(std::size_t, LabeledTree&, F)> rec = [&](std::size_t vtx,
                                                                        LabeledTree& acc, F coeff) {
                if (coeff.is_zero()) return;
                if (vtx == lt.labels.size()) {
                    auto [dd, di] = fo.find(arity, acc);
                    m.add_to(di, col, coeff);
                    return;
                }
                auto [ld, li] = lt.labels[vtx];
                const Matrix<F>& am = alpha.at(degs_out[vtx]).at(ld);
                for (int r = 0; r < am.rows(); ++r) {
                    F v = am.get(r, li);
                    if (v.is_zero()) continue;
                    acc.labels[vtx] = {ld, r};
                    rec(vtx + 1, acc, coeff * v);
                }
                acc.labels[vtx] = {ld, li};
            };
            LabeledTree acc = lt;
            rec(0, acc, F(1));
        }
        out.set(deg, std::move(m));
    }
    return out;
}

namespace detail {

/// Totalize the internal vertices of a monomial by positional post-order:
/// children before their parent, siblings in canonical position order. The
/// order depends only on (shape, numbering), never on labels, so it is
/// stable under the differential and under α/h substitutions.
inline void theta_order_rec(const TreeNode& t, int& word_pos, std::vector<int>& post_list) {
    if (t.is_leaf()) return;
    int my_pos = word_pos++;
    for (auto& k : t.kids) theta_order_rec(k, word_pos, post_list);
    post_list.push_back(my_pos);
}

inline std::vector<int> theta_ranks(const LabeledTree& lt) {
    std::vector<int> post;
    int pos = 0;
    theta_order_rec(lt.shape, pos, post);
    std::vector<int> rank(lt.labels.size());
    for (int r = 0; r < (int)post.size(); ++r) rank[post[r]] = r;
    return rank;
}

}  // namespace detail

template <class F>
ChainMap<F> homotopy_extension_operad(const FreeOperad<F>& fo, int arity,
                                      const CollectionMap<F>& alpha, const CollectionMap<F>& h) {
    if (h.shift != -1) throw error("homotopy_extension_operad: h must have degree -1");
    // precondition: dh = id - α on every generator component
    for (int n = 1; n <= fo.gens.max_arity(); ++n) {
        if (fo.gens.at(n).total_dim() == 0) continue;
        ChainMap<F> dh = h.maps[n].chom_d();
        ChainMap<F> expect = ChainMap<F>::id(fo.gens.at(n)) - alpha.maps[n];
        for (auto& [deg, k] : fo.gens.at(n).dims)
            if (!(dh.at(deg) == expect.at(deg)))
                throw error("homotopy_extension_operad: dh != id - α on generators");
    }
    const Complex<F>& c = fo.op.comp(arity);
    ChainMap<F> out = ChainMap<F>::zero(c, c, -1);
    for (auto& [deg, list] : fo.basis[arity]) {
        if (c.dim(deg - 1) == 0) continue;
        Matrix<F> m(c.dim(deg - 1), (int)list.size());
        for (int col = 0; col < (int)list.size(); ++col) {
            const LabeledTree& lt = list[col];
            std::vector<int> degs_out;
            out_degrees(lt.shape, degs_out);
            std::vector<int> rank = detail::theta_ranks(lt);
            for (std::size_t v = 0; v < lt.labels.size(); ++v) {
                // θ_w = α (rank w < rank v), h (w = v), id (rank w > rank v);
                // the Koszul sign moves h past the labels earlier in the word
                int presign = 0;
                for (std::size_t w = 0; w < v; ++w) presign += lt.labels[w].first;
                std::function<void(std::size_t, LabeledTree&, F)> rec =
                    [&](std::size_t vtx, LabeledTree& acc, F coeff) {
                        if (coeff.is_zero()) return;
                        if (vtx == lt.labels.size()) {
                            auto [dd, di] = fo.find(arity, acc);
                            m.add_to(di, col, coeff);
                            return;
                        }
                        auto [ld, li] = lt.labels[vtx];
                        if (rank[vtx] < rank[v]) {
                            const Matrix<F>& am = alpha.at(degs_out[vtx]).at(ld);
                            for (int r = 0; r < am.rows(); ++r) {
                                F val = am.get(r, li);
                                if (val.is_zero()) continue;
                                acc.labels[vtx] = {ld, r};
                                rec(vtx + 1, acc, coeff * val);
                            }
                            acc.labels[vtx] = {ld, li};
                        } else if (vtx == v) {
                            const Matrix<F>& hm = h.at(degs_out[vtx]).at(ld);
                            for (int r = 0; r < hm.rows(); ++r) {
                                F val = hm.get(r, li);
                                if (val.is_zero()) continue;
                                acc.labels[vtx] = {ld - 1, r};
                                rec(vtx + 1, acc, coeff * val);
                            }
                            acc.labels[vtx] = {ld, li};
                        } else {
                            rec(vtx + 1, acc, coeff);
                        }
                    };
                LabeledTree acc = lt;
                rec(0, acc, presign % 2 == 0 ? F(1) : F(-1));
            }
        }
        out.set(deg, std::move(m));
    }
    return out;
}

}  // namespace opalg
