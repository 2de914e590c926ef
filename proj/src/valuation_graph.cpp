#include "diagcount/valuation_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "diagcount/errors.hpp"

namespace diagcount {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

// encodes the node and sorts children into canonical order as a side effect
std::string canon_encode(HierNode& node) {
    if (node.is_leaf()) return "*";
    std::vector<std::pair<std::string, HierNode>> kids;
    kids.reserve(node.kids.size());
    for (auto& kid : node.kids) {
        std::string enc = canon_encode(kid);
        kids.emplace_back(std::move(enc), std::move(kid));
    }
    std::sort(kids.begin(), kids.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    os << '(' << node.level << ':';
    node.kids.clear();
    for (size_t i = 0; i < kids.size(); ++i) {
        if (i) os << ',';
        os << kids[i].first;
        node.kids.push_back(std::move(kids[i].second));
    }
    os << ')';
    return os.str();
}

void collect_levels(const HierNode& node, std::set<int>& levels) {
    if (node.is_leaf()) return;
    levels.insert(node.level);
    for (const auto& kid : node.kids) collect_levels(kid, levels);
}

void remap_levels(HierNode& node, const std::map<int, int>& to_rank) {
    if (node.is_leaf()) return;
    node.level = to_rank.at(node.level);
    for (auto& kid : node.kids) remap_levels(kid, to_rank);
}

GraphClass class_from_node(HierNode root) {
    std::set<int> levels;
    collect_levels(root, levels);
    std::map<int, int> to_rank;
    int next = 1;
    for (int lv : levels) to_rank[lv] = next++;
    remap_levels(root, to_rank);
    GraphClass cls;
    cls.canon = canon_encode(root);
    cls.root = std::move(root);
    cls.leaves = cls.root.leaf_count();
    cls.ranks = int(levels.size());
    return cls;
}

// Unranked hierarchy shapes on `leaves` leaves (every internal node has >= 2
// children), canonical and deduplicated.
const std::vector<HierNode>& shapes_on(int leaves) {
    static std::map<int, std::vector<HierNode>> memo;
    auto it = memo.find(leaves);
    if (it != memo.end()) return it->second;

    std::vector<HierNode> out;
    if (leaves == 1) {
        out.emplace_back();
    } else {
        // partitions of `leaves` into >= 2 non-increasing parts
        std::vector<int> parts;
        std::set<std::string> seen;
        std::function<void(int, int)> rec = [&](int remaining, int maxPart) {
            if (remaining == 0) {
                if (parts.size() < 2) return;
                // choices per part: leaves for 1, any shape for bigger parts;
                // equal parts take non-decreasing shape indices
                std::vector<std::vector<HierNode>> chosen(parts.size());
                std::function<void(size_t, int)> pick = [&](size_t idx, int minIdxForEqual) {
                    if (idx == parts.size()) {
                        HierNode node;
                        for (auto& grp : chosen) {
                            for (auto& s : grp) node.kids.push_back(s);
                        }
                        std::string enc = canon_encode(node);
                        if (seen.insert(enc).second) out.push_back(std::move(node));
                        return;
                    }
                    const auto& pool = shapes_on(parts[idx]);
                    bool sameAsPrev = idx > 0 && parts[idx] == parts[idx - 1];
                    int start = sameAsPrev ? minIdxForEqual : 0;
                    for (int s = start; s < int(pool.size()); ++s) {
                        chosen[idx] = {pool[s]};
                        pick(idx + 1, s);
                    }
                };
                pick(0, 0);
                return;
            }
            for (int part = std::min(remaining, maxPart); part >= 1; --part) {
                if (remaining - part == 0 && parts.empty()) continue;  // need >= 2 parts
                parts.push_back(part);
                rec(remaining - part, part);
                parts.pop_back();
            }
        };
        rec(leaves, leaves - 1 >= 1 ? leaves - 1 : 1);
        // the all-in-one "partition" [leaves] is excluded by maxPart above,
        // which is what makes every internal node branch
    }
    auto [pos, inserted] = memo.emplace(leaves, std::move(out));
    (void)inserted;
    return pos->second;
}

void internal_preorder(HierNode& node, int parentIdx, std::vector<HierNode*>& nodes,
                       std::vector<int>& parent) {
    if (node.is_leaf()) return;
    int self = int(nodes.size());
    nodes.push_back(&node);
    parent.push_back(parentIdx);
    for (auto& kid : node.kids) internal_preorder(kid, self, nodes, parent);
}

void fill_weights(const HierNode& node, const std::vector<int>& rank_weights,
                  std::vector<int>& leaf_cursor_pool, ValuationGraph& graph,
                  std::vector<int>& leaves_out) {
    // assigns leaf indices in DFS order and writes cross-child weights
    if (node.is_leaf()) {
        leaves_out.push_back(leaf_cursor_pool.back()++);
        return;
    }
    std::vector<std::vector<int>> kid_leaves;
    for (const auto& kid : node.kids) {
        std::vector<int> sub;
        fill_weights(kid, rank_weights, leaf_cursor_pool, graph, sub);
        kid_leaves.push_back(std::move(sub));
    }
    int w = rank_weights[size_t(node.level) - 1];
    for (size_t a = 0; a < kid_leaves.size(); ++a) {
        for (size_t b = a + 1; b < kid_leaves.size(); ++b) {
            for (int i : kid_leaves[a]) {
                for (int j : kid_leaves[b]) {
                    graph.w[size_t(i) * graph.g + j] = w;
                    graph.w[size_t(j) * graph.g + i] = w;
                }
            }
        }
    }
    for (auto& sub : kid_leaves) {
        leaves_out.insert(leaves_out.end(), sub.begin(), sub.end());
    }
}

}  // namespace

int HierNode::leaf_count() const {
    if (is_leaf()) return 1;
    int total = 0;
    for (const auto& kid : kids) total += kid.leaf_count();
    return total;
}

std::vector<int> ValuationGraph::distinct_weights() const {
    std::set<int> s;
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) s.insert(weight(i, j));
    }
    return std::vector<int>(s.begin(), s.end());
}

ValuationGraph build_graph(std::vector<uint64_t> entries, const Modulus& mod) {
    if (!mod.is_prime_power) {
        throw UnsupportedOperationError("valuation graphs require a prime-power modulus");
    }
    if (entries.empty()) throw UsageError("need at least one entry");
    for (auto& x : entries) x %= mod.value;
    std::sort(entries.begin(), entries.end());
    for (size_t i = 1; i < entries.size(); ++i) {
        if (entries[i] == entries[i - 1]) {
            throw UsageError("entries must be distinct");
        }
    }
    ValuationGraph graph;
    graph.g = int(entries.size());
    graph.labels = entries;
    graph.w.assign(size_t(graph.g) * graph.g, -1);
    for (int i = 0; i < graph.g; ++i) {
        for (int j = i + 1; j < graph.g; ++j) {
            int w = val_p(entries[j] - entries[i], mod);
            graph.w[size_t(i) * graph.g + j] = w;
            graph.w[size_t(j) * graph.g + i] = w;
        }
    }
    if (!check_triangle(graph)) {
        throw InternalInconsistencyError("constructed graph violates the triangle rule");
    }
    return graph;
}

ValuationGraph graph_from_weights(int g, std::vector<int> weights) {
    if (g < 1 || weights.size() != size_t(g) * size_t(g)) {
        throw InvalidTypeError("weight matrix size does not match g");
    }
    ValuationGraph graph;
    graph.g = g;
    graph.w = std::move(weights);
    for (int i = 0; i < g; ++i) {
        graph.w[size_t(i) * g + i] = -1;
        for (int j = i + 1; j < g; ++j) {
            int w = graph.weight(i, j);
            if (w < 0 || w != graph.weight(j, i)) {
                throw InvalidTypeError("weights must be symmetric and non-negative");
            }
        }
    }
    if (!check_triangle(graph)) {
        throw InvalidTypeError("weights violate the ultrametric triangle rule");
    }
    return graph;
}

bool check_triangle(const ValuationGraph& graph) {
    int g = graph.g;
    for (int a = 0; a < g; ++a) {
        for (int b = a + 1; b < g; ++b) {
            for (int c = b + 1; c < g; ++c) {
                int x = graph.weight(a, b);
                int y = graph.weight(a, c);
                int z = graph.weight(b, c);
                int lo = std::min({x, y, z});
                int hi = std::max({x, y, z});
                int mid = x + y + z - lo - hi;
                if (lo != mid) return false;  // the minimum must repeat
            }
        }
    }
    return true;
}

PermissibleTree permissible_tree(const ValuationGraph& graph, TieBreak tie) {
    int g = graph.g;
    struct E {
        int u, v, w;
    };
    std::vector<E> all;
    for (int i = 0; i < g; ++i) {
        for (int j = i + 1; j < g; ++j) all.push_back({i, j, graph.weight(i, j)});
    }
    std::stable_sort(all.begin(), all.end(), [&](const E& a, const E& b) {
        if (a.w != b.w) return a.w > b.w;  // descending weight
        if (tie == TieBreak::LexAscending) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        }
        return std::pair(a.u, a.v) > std::pair(b.u, b.v);
    });

    PermissibleTree tree;
    tree.g = g;
    Dsu dsu(g);
    for (const E& e : all) {
        if (dsu.unite(e.u, e.v)) tree.edges.push_back({e.u, e.v, e.w});
    }
    if (int(tree.edges.size()) != g - 1) {
        throw InternalInconsistencyError("spanning tree construction failed");
    }

    // linked cells: weight-a edges grouped by connectivity through the
    // subforest of tree edges with weight >= a
    std::set<int> weights;
    for (const auto& e : tree.edges) weights.insert(e.w);
    for (int a : weights) {
        Dsu forest(g);
        for (const auto& e : tree.edges) {
            if (e.w >= a) forest.unite(e.u, e.v);
        }
        std::map<int, LinkedCell> by_root;
        for (int idx = 0; idx < int(tree.edges.size()); ++idx) {
            if (tree.edges[idx].w != a) continue;
            int root = forest.find(tree.edges[idx].u);
            auto& cell = by_root[root];
            cell.weight = a;
            cell.edges.push_back(idx);
        }
        std::vector<LinkedCell> cells;
        for (auto& [root, cell] : by_root) cells.push_back(std::move(cell));
        std::sort(cells.begin(), cells.end(), [](const LinkedCell& x, const LinkedCell& y) {
            return x.edges.front() < y.edges.front();
        });
        for (auto& cell : cells) tree.cells.push_back(std::move(cell));
    }
    return tree;
}

ValuationGraph reconstruct(const PermissibleTree& tree, int g) {
    if (g < 1) throw ReconstructionError("vertex count must be >= 1");
    if (int(tree.edges.size()) != g - 1) {
        throw ReconstructionError("a spanning tree on g vertices has g-1 edges");
    }
    Dsu dsu(g);
    std::vector<std::vector<std::pair<int, int>>> adj(g);  // (neighbor, weight)
    for (const auto& e : tree.edges) {
        if (e.u < 0 || e.u >= g || e.v < 0 || e.v >= g || e.u == e.v || e.w < 0) {
            throw ReconstructionError("edge endpoints or weight out of range");
        }
        if (!dsu.unite(e.u, e.v)) {
            throw ReconstructionError("edges contain a cycle");
        }
        adj[e.u].emplace_back(e.v, e.w);
        adj[e.v].emplace_back(e.u, e.w);
    }

    ValuationGraph graph;
    graph.g = g;
    graph.w.assign(size_t(g) * g, -1);
    // completing edges take the minimum weight along the tree path
    for (int s = 0; s < g; ++s) {
        std::vector<int> minw(g, -2);
        std::vector<int> stack = {s};
        minw[s] = val_infinity;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, w] : adj[u]) {
                if (minw[v] == -2) {
                    minw[v] = std::min(minw[u], w);
                    stack.push_back(v);
                }
            }
        }
        for (int t = 0; t < g; ++t) {
            if (t != s) graph.w[size_t(s) * g + t] = minw[t];
        }
    }
    if (!check_triangle(graph)) {
        throw InternalInconsistencyError("tree closure violates the triangle rule");
    }
    return graph;
}

std::vector<std::vector<int>> weight_automorphisms(const ValuationGraph& graph) {
    int g = graph.g;
    std::vector<std::vector<int>> auts;
    std::vector<int> perm(g);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < g && ok; ++i) {
            for (int j = i + 1; j < g; ++j) {
                if (graph.weight(perm[i], perm[j]) != graph.weight(i, j)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) auts.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return auts;
}

BigCount aut_order(const ValuationGraph& graph) {
    return BigCount(static_cast<unsigned long>(weight_automorphisms(graph).size()));
}

BigCount aut_order(const ValuationGraph& graph, const std::vector<int>& mults) {
    if (mults.size() != size_t(graph.g)) {
        throw InvalidTypeError("multiplicity count does not match vertex count");
    }
    uint64_t count = 0;
    for (const auto& perm : weight_automorphisms(graph)) {
        bool ok = true;
        for (int i = 0; i < graph.g; ++i) {
            if (mults[perm[i]] != mults[i]) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return BigCount(static_cast<unsigned long>(count));
}

HierNode hierarchy_of(const ValuationGraph& graph) {
    std::function<HierNode(const std::vector<int>&)> split =
        [&](const std::vector<int>& verts) -> HierNode {
        HierNode node;
        if (verts.size() == 1) return node;
        int wmin = val_infinity;
        for (size_t i = 0; i < verts.size(); ++i) {
            for (size_t j = i + 1; j < verts.size(); ++j) {
                wmin = std::min(wmin, graph.weight(verts[i], verts[j]));
            }
        }
        node.level = wmin;
        // children: components under strictly larger weights
        Dsu dsu(int(verts.size()));
        for (size_t i = 0; i < verts.size(); ++i) {
            for (size_t j = i + 1; j < verts.size(); ++j) {
                if (graph.weight(verts[i], verts[j]) > wmin) dsu.unite(int(i), int(j));
            }
        }
        std::map<int, std::vector<int>> comps;
        for (size_t i = 0; i < verts.size(); ++i) {
            comps[dsu.find(int(i))].push_back(verts[i]);
        }
        if (comps.size() < 2) {
            throw InternalInconsistencyError("hierarchy split failed: graph not ultrametric");
        }
        std::vector<std::vector<int>> ordered;
        for (auto& [root, comp] : comps) ordered.push_back(std::move(comp));
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (const auto& comp : ordered) node.kids.push_back(split(comp));
        return node;
    };
    std::vector<int> all(graph.g);
    std::iota(all.begin(), all.end(), 0);
    return split(all);
}

BigCount linked_cell_phi_product(const HierNode& root, uint64_t p, unsigned k) {
    if (root.is_leaf()) return 1;
    if (root.level >= int(k)) {
        std::ostringstream os;
        os << "hierarchy level " << root.level << " is out of range for k = " << k;
        throw InvalidTypeError(os.str());
    }
    BigCount prod =
        phi_chain(p, k - unsigned(root.level), unsigned(root.kids.size()) - 1);
    for (const auto& kid : root.kids) {
        if (prod == 0) return 0;
        prod *= linked_cell_phi_product(kid, p, k);
    }
    return prod;
}

BigCount count_classes(const ValuationGraph& graph, uint64_t p, unsigned k) {
    for (int i = 0; i < graph.g; ++i) {
        for (int j = i + 1; j < graph.g; ++j) {
            if (graph.weight(i, j) >= int(k)) {
                std::ostringstream os;
                os << "graph weight " << graph.weight(i, j)
                   << " is out of range for k = " << k;
                throw InvalidTypeError(os.str());
            }
        }
    }
    BigCount total = big_pow(p, k) * linked_cell_phi_product(hierarchy_of(graph), p, k);
    return exact_div(total, aut_order(graph), "count_classes aut quotient");
}

std::vector<GraphClass> enumerate_graph_classes(int g) {
    if (g < 1 || g > 8) {
        throw UsageError("graph class enumeration supports 1 <= g <= 8");
    }
    std::map<std::string, GraphClass> classes;
    if (g == 1) {
        GraphClass leaf;
        leaf.leaves = 1;
        leaf.ranks = 0;
        leaf.canon = "*";
        classes.emplace(leaf.canon, std::move(leaf));
    }
    for (const HierNode& shape : shapes_on(g)) {
        if (g == 1) break;
        HierNode work = shape;
        std::vector<HierNode*> nodes;
        std::vector<int> parent;
        internal_preorder(work, -1, nodes, parent);
        int internals = int(nodes.size());
        std::function<void(int)> assign = [&](int idx) {
            if (idx == internals) {
                GraphClass cls = class_from_node(work);
                classes.emplace(cls.canon, std::move(cls));
                return;
            }
            int lo = idx == 0 ? 1 : nodes[parent[idx]]->level + 1;
            int hi = idx == 0 ? 1 : internals;
            for (int lv = lo; lv <= hi; ++lv) {
                nodes[idx]->level = lv;
                assign(idx + 1);
            }
        };
        assign(0);
    }
    std::vector<GraphClass> out;
    out.reserve(classes.size());
    for (auto& [canon, cls] : classes) out.push_back(std::move(cls));
    return out;
}

ValuationGraph instantiate(const GraphClass& cls, const std::vector<int>& rank_weights) {
    if (int(rank_weights.size()) != cls.ranks) {
        throw InvalidTypeError("rank weight count does not match class ranks");
    }
    for (size_t i = 0; i < rank_weights.size(); ++i) {
        if (rank_weights[i] < 0 || (i > 0 && rank_weights[i] <= rank_weights[i - 1])) {
            throw InvalidTypeError("rank weights must be strictly increasing and >= 0");
        }
    }
    ValuationGraph graph;
    graph.g = cls.leaves;
    graph.w.assign(size_t(graph.g) * graph.g, -1);
    std::vector<int> cursor = {0};
    std::vector<int> all_leaves;
    fill_weights(cls.root, rank_weights, cursor, graph, all_leaves);
    if (graph.g > 1 && !check_triangle(graph)) {
        throw InternalInconsistencyError("instantiated class violates the triangle rule");
    }
    return graph;
}

GraphClass class_of(const ValuationGraph& graph) {
    if (graph.g == 1) {
        GraphClass leaf;
        leaf.leaves = 1;
        leaf.ranks = 0;
        leaf.canon = "*";
        return leaf;
    }
    return class_from_node(hierarchy_of(graph));
}

std::string to_dot(const ValuationGraph& graph) {
    std::ostringstream os;
    os << "graph valuation {\n";
    for (int i = 0; i < graph.g; ++i) {
        os << "  n" << i << " [label=\"";
        if (!graph.labels.empty()) {
            os << graph.labels[i];
        } else {
            os << i;
        }
        os << "\"];\n";
    }
    for (int i = 0; i < graph.g; ++i) {
        for (int j = i + 1; j < graph.g; ++j) {
            os << "  n" << i << " -- n" << j << " [weight=" << graph.weight(i, j)
               << ", label=\"" << graph.weight(i, j) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string to_dot(const PermissibleTree& tree) {
    std::ostringstream os;
    os << "graph permissible_tree {\n";
    for (int i = 0; i < tree.g; ++i) os << "  n" << i << ";\n";
    for (const auto& e : tree.edges) {
        os << "  n" << e.u << " -- n" << e.v << " [weight=" << e.w << ", label=\""
           << e.w << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace diagcount
