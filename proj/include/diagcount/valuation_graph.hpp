#pragma once

// Valuation graphs: complete graphs on distinct residues, an edge weighted by
// the p-adic valuation of the difference of its endpoints. The ultrametric
// triangle rule makes every such graph a ranked laminar hierarchy (nested
// clusters by weight threshold); that form is what class counting, the
// automorphism quotient, and the enumeration of abstract graph classes run on.
// Spanning-tree machinery (permissible trees, linked cells) is kept as the
// second, independent route to the same phi-factor products.

#include <cstdint>
#include <string>
#include <vector>

#include "diagcount/bigint.hpp"
#include "diagcount/residue_ring.hpp"

namespace diagcount {

struct ValuationGraph {
    int g = 0;
    std::vector<uint64_t> labels;  // empty, or g strictly increasing residues
    std::vector<int> w;            // g*g symmetric weights, diagonal -1

    int weight(int i, int j) const { return w[size_t(i) * g + j]; }
    std::vector<int> distinct_weights() const;  // ascending
};

// Complete graph on distinct entries with l_ij = val_p(entry_i - entry_j).
// Prime-power modulus required; duplicates are rejected (callers with
// multiplicities classify through the type engine instead).
ValuationGraph build_graph(std::vector<uint64_t> entries, const Modulus& mod);

// Unlabeled graph from an explicit weight matrix; validates the triangle rule.
ValuationGraph graph_from_weights(int g, std::vector<int> weights);

// Ultrametric triangle rule: in every vertex triple the two smallest weights
// are equal (equivalently l_bc >= min{l_ab, l_ac}, forced equality when
// l_ab != l_ac).
bool check_triangle(const ValuationGraph& graph);

struct TreeEdge {
    int u = 0, v = 0, w = 0;
};

struct LinkedCell {
    int weight = 0;
    std::vector<int> edges;  // indices into PermissibleTree::edges
};

struct PermissibleTree {
    int g = 0;
    std::vector<TreeEdge> edges;    // g-1 edges
    std::vector<LinkedCell> cells;  // ordered by (weight, first edge index)
};

enum class TieBreak { LexAscending, LexDescending };

// Spanning tree built from nested spanning forests in descending weight
// order (Kruskal with the given tie-break on vertex index pairs), plus its
// linked-cell decomposition. Every permissible tree of one graph has the
// same multiset of (weight, cell size) pairs.
PermissibleTree permissible_tree(const ValuationGraph& graph,
                                 TieBreak tie = TieBreak::LexAscending);

// The unique valuation graph whose permissible tree this is: l_ij = minimum
// edge weight on the tree path between i and j. ReconstructionError when the
// edge list is not a spanning tree on g vertices.
ValuationGraph reconstruct(const PermissibleTree& tree, int g);

// Number of vertex permutations preserving all weights (and, when mults are
// given, the per-vertex multiplicities). Brute permutation scan, g <= 8.
BigCount aut_order(const ValuationGraph& graph);
BigCount aut_order(const ValuationGraph& graph, const std::vector<int>& mults);
std::vector<std::vector<int>> weight_automorphisms(const ValuationGraph& graph);

// Laminar hierarchy of a valuation graph. An internal node is a cluster
// whose level is the minimum weight inside it; its children are the
// components under strictly larger weights. Levels strictly increase from
// root to leaf, every internal node has >= 2 children. A node with b
// children at level a carries the linked-cell factor prod_{i<b} phi_i(p^{k-a}).
struct HierNode {
    int level = 0;               // concrete weight, or rank for GraphClass
    std::vector<HierNode> kids;  // empty for leaves
    bool is_leaf() const { return kids.empty(); }
    int leaf_count() const;
};

HierNode hierarchy_of(const ValuationGraph& graph);

// prod over internal nodes v of prod_{i=1..children(v)-1} phi_i(p^(k-level(v))).
// Exactly the linked-cell product of any permissible tree of the graph.
BigCount linked_cell_phi_product(const HierNode& root, uint64_t p, unsigned k);

// Similarity classes of diagonal matrices with distinct entries whose
// valuation graph is isomorphic to the input:
//   p^k / |Aut(G)| * prod over internal nodes of the phi_i factors.
// Exact integrality asserted; weights must be < k.
BigCount count_classes(const ValuationGraph& graph, uint64_t p, unsigned k);

// Abstract class of valuation graphs: hierarchy with dense rank labels 1..r
// (strictly increasing root to leaf, surjective), identified up to
// isomorphism by the canonical encoding. Instantiating the ranks with any
// strictly increasing weights yields a valid valuation graph.
struct GraphClass {
    HierNode root;  // levels are ranks; a bare leaf when g = 1
    int leaves = 0;
    int ranks = 0;
    std::string canon;
};

// All classes on g leaves, deduplicated by canonical encoding and sorted by
// it. a_g = result size: 1, 1, 2, 6, 20 for g = 1..5.
std::vector<GraphClass> enumerate_graph_classes(int g);

ValuationGraph instantiate(const GraphClass& cls, const std::vector<int>& rank_weights);
GraphClass class_of(const ValuationGraph& graph);

std::string to_dot(const ValuationGraph& graph);
std::string to_dot(const PermissibleTree& tree);

}  // namespace diagcount
