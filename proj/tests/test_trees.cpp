#include <catch2/catch_amalgamated.hpp>

#include "opalg/tree.hpp"

using namespace opalg;

namespace {

long double_factorial(int k) {  // k!!
    long r = 1;
    for (; k > 1; k -= 2) r *= k;
    return r;
}

NTree parse_binary(const std::string& s) {
    // tiny helper: "((1,2),3)" etc., 1-based leaf numbers
    std::size_t pos = 0;
    std::function<TreeNode()> rec = [&]() -> TreeNode {
        if (s[pos] == '(') {
            ++pos;  // (
            std::vector<TreeNode> kids;
            kids.push_back(rec());
            while (s[pos] == ',') {
                ++pos;
                kids.push_back(rec());
            }
            ++pos;  // )
            return TreeNode::make_internal(std::move(kids));
        }
        int v = 0;
        while (pos < s.size() && isdigit(s[pos])) v = v * 10 + (s[pos++] - '0');
        return TreeNode::make_leaf(v - 1);
    };
    TreeNode r = rec();
    std::vector<int> leaves;
    collect_leaves(r, leaves);
    return NTree(std::move(r), (int)leaves.size());
}

}  // namespace

TEST_CASE("canonicalize basics") {
    NTree t = NTree::trivial();
    CHECK(canonicalize(t.root) == t.root);
    CHECK(canonicalize(canonicalize(t.root)) == canonicalize(t.root));

    // mirror presentations of the 2-corolla agree
    TreeNode a = TreeNode::make_internal({TreeNode::make_leaf(0), TreeNode::make_leaf(1)});
    TreeNode b = TreeNode::make_internal({TreeNode::make_leaf(1), TreeNode::make_leaf(0)});
    CHECK(canonicalize(a) == canonicalize(b));

    // all labeled presentations of a 3-leaf binary shape collapse to one
    // canonical form per numbered-tree isomorphism class
    std::set<std::string> canon;
    for (auto s : {"((1,2),3)", "(3,(1,2))", "((2,1),3)", "(3,(2,1))"})
        canon.insert(encode(parse_binary(s).canonical().root));
    CHECK(canon.size() == 1);
}

TEST_CASE("malformed graphs rejected") {
    // two roots
    CHECK_THROWS_AS(tree_from_parent_map(2, {}, {{0, 0}, {1, 1}}), error);
    // cycle
    CHECK_THROWS_AS(tree_from_parent_map(3, {{0, 0}, {1, 2}, {2, 1}}, {}), error);
    // fine: corolla
    TreeNode t = tree_from_parent_map(3, {{0, 0}, {1, 0}, {2, 0}}, {{1, 0}, {2, 1}});
    CHECK(encode(canonicalize(t)) == "(1,2)");
}

TEST_CASE("graft unit law and left comb") {
    NTree c2 = NTree::corolla(2);
    NTree unit = NTree::trivial();
    CHECK(graft(c2, {unit, unit}) == c2.canonical());

    NTree comb = graft(c2, {c2, unit});
    CHECK(encode(comb.root) == "((1,2),3)");
    NTree comb2 = graft(c2, {unit, c2});
    CHECK(encode(comb2.root) == "(1,(2,3))");
}

TEST_CASE("graft associativity on small trees") {
    auto trees2 = enumerate_ntrees(2, 3, {1, 2, 3});
    auto trees1 = enumerate_ntrees(1, 2, {1, 2});
    // (t ∘ (a,b)) with nested grafts composed two ways
    for (auto& t : enumerate_ntrees(2, 2, {2})) {
        for (auto& a : trees2)
            for (auto& b : trees1) {
                // nested: (t ∘_1 a) ∘_2 b = t ∘_1 (a ∘_2 b)
                NTree lhs = graft(graft(t, {a, NTree::trivial()}),
                                  {NTree::trivial(), b, NTree::trivial()});
                NTree rhs = graft(t, {graft(a, {NTree::trivial(), b}), NTree::trivial()});
                CHECK(lhs == rhs);
                // disjoint: (t ∘_1 a) ∘_3 b = (t ∘_2 b) ∘_1 a
                NTree lhs2 = graft(graft(t, {a, NTree::trivial()}),
                                   {NTree::trivial(), NTree::trivial(), b});
                NTree rhs2 = graft(graft(t, {NTree::trivial(), b}), {a, NTree::trivial()});
                CHECK(lhs2 == rhs2);
            }
    }
}

TEST_CASE("enumerate n-trees") {
    // n=1, binary only, no internal vertices: just the trivial tree
    auto t1 = enumerate_ntrees(1, 0, {2});
    REQUIRE(t1.size() == 1);
    CHECK(t1[0] == NTree::trivial());

    // n=3 binary: 3 shapes with 2 internal vertices + corolla? corolla is
    // ternary, excluded; binary-only gives exactly the 3 combs
    auto t3 = enumerate_ntrees(3, 2, {2});
    CHECK(t3.size() == 3);

    // n=2, out-degree 2, 1 internal vertex: just the 2-corolla
    auto t2 = enumerate_ntrees(2, 1, {2});
    REQUIRE(t2.size() == 1);
    CHECK(t2[0] == NTree::corolla(2));
    // its two leaf labelings are related by the Σ_2 action
    Permutation swap({1, 0});
    CHECK(sigma_act(t2[0], swap).n == 2);

    // binary trees with all leaves labeled: (2n−3)!! of them
    for (int n = 2; n <= 5; ++n) {
        auto tn = enumerate_ntrees(n, n - 1, {2});
        CHECK((long)tn.size() == double_factorial(2 * n - 3));
    }

    // mixed arities: n=3 with {2,3}: 3 binary + corolla
    CHECK(enumerate_ntrees(3, 2, {2, 3}).size() == 4);

    // unary vertices bounded by the internal cap
    CHECK(enumerate_ntrees(1, 3, {1}).size() == 4);  // chains of length 0..3
}

TEST_CASE("sigma action") {
    NTree c2 = NTree::corolla(2);
    Permutation swap({1, 0});
    CHECK(sigma_act(sigma_act(c2, swap), swap) == c2);
    NTree l = parse_binary("((1,2),3)");
    CHECK(sigma_act(l, Permutation::identity(3)) == l.canonical());

    // right action: (tσ)σ' = t(σσ')
    for (auto& t : enumerate_ntrees(3, 2, {2}))
        for (auto& s1 : all_permutations(3))
            for (auto& s2 : all_permutations(3))
                CHECK(sigma_act(sigma_act(t, s1), s2) == sigma_act(t, s1.compose(s2)));

    // the three binary 3-trees form one orbit
    auto t3 = enumerate_ntrees(3, 2, {2});
    std::set<NTree> orbit;
    for (auto& s : all_permutations(3)) orbit.insert(sigma_act(t3[0], s));
    CHECK(orbit.size() == 3);
}

TEST_CASE("graft equivariance") {
    // graft(base σ, subs) = graft(base, subs permuted) · block permutation;
    // checked via: relabeling base then grafting identity subs equals
    // relabeling the graft
    NTree c2 = NTree::corolla(2);
    for (auto& base : enumerate_ntrees(2, 2, {2}))
        for (auto& s : all_permutations(2)) {
            NTree lhs = graft(sigma_act(base, s), {c2, c2});
            // block permutation induced by s on two blocks of size 2
            std::vector<int> img(4);
            for (int b = 0; b < 2; ++b)
                for (int j = 0; j < 2; ++j) img[2 * b + j] = 2 * s.inverse()(b) + j;
            NTree rhs = sigma_act(graft(base, {c2, c2}), Permutation(img).inverse());
            CHECK(lhs == rhs);
        }
}

TEST_CASE("canonicalize-graft compatibility") {
    auto ts = enumerate_ntrees(3, 2, {2});
    for (auto& t : ts) {
        NTree g = graft(t, {NTree::trivial(), NTree::corolla(2), NTree::trivial()});
        CHECK(g == g.canonical());
    }
}

TEST_CASE("canonicalize_tracked reports vertex moves") {
    // (3,(1,2)) canonicalizes to ((1,2),3): root stays first, child vertex
    // stays second (only two internal vertices)
    TreeNode t = TreeNode::make_internal(
        {TreeNode::make_leaf(2),
         TreeNode::make_internal({TreeNode::make_leaf(0), TreeNode::make_leaf(1)})});
    Permutation p;
    TreeNode c = canonicalize_tracked(t, p);
    CHECK(encode(c) == "((1,2),3)");
    CHECK(p == Permutation::identity(2));

    // deeper: swapping two sibling subtrees moves their vertex blocks
    TreeNode u = TreeNode::make_internal(
        {TreeNode::make_internal({TreeNode::make_leaf(2), TreeNode::make_leaf(3)}),
         TreeNode::make_internal({TreeNode::make_leaf(0), TreeNode::make_leaf(1)})});
    Permutation q;
    TreeNode cu = canonicalize_tracked(u, q);
    CHECK(encode(cu) == "((1,2),(3,4))");
    // vertices: 0 = root, 1 = (3,4)-vertex, 2 = (1,2)-vertex; after sorting
    // the (1,2)-vertex comes first: 0↦0, 1↦2, 2↦1
    CHECK(q == Permutation({0, 2, 1}));
}
