#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ascurves/strata.hpp"

namespace ascurves::refgraph {

// Does E2 refine E (E < E2)? True when the parts of E2 can be grouped into
// disjoint blocks whose sums realize the parts of E. Reflexive.
inline bool refines(const strata::Partition& E, const strata::Partition& E2) {
    if (E.sum() != E2.sum()) throw std::invalid_argument("refines: partitions of different integers");
    if (E.length() > E2.length()) return false;
    if (E == E2) return true;
    // assign the parts of E2, largest first, to the still-open sums of E
    std::vector<int> need(E.parts().rbegin(), E.parts().rend());  // descending
    std::vector<int> items(E2.parts().rbegin(), E2.parts().rend());
    std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
        if (idx == items.size()) return true;
        const int v = items[idx];
        for (std::size_t j = 0; j < need.size(); ++j) {
            if (need[j] < v) continue;
            if (j > 0 && need[j] == need[j - 1]) continue;  // skip equal bins
            need[j] -= v;
            if (place(idx + 1)) {
                need[j] += v;
                return true;
            }
            need[j] += v;
        }
        return false;
    };
    return place(0);
}

enum class Closure { yes, no, unknown };

inline std::string to_string(Closure c) {
    switch (c) {
        case Closure::yes: return "YES";
        case Closure::no: return "NO";
        default: return "UNKNOWN";
    }
}

// Classification of one covering edge: a single entry splits into two
// (type 1) or three (type 2) smaller entries.
struct EdgeInfo {
    int split_from = 0;
    std::vector<int> split_into;
    int edge_type = 0;  // 1 or 2
    Closure closure = Closure::unknown;
    int dim_delta = 0;  // dim(target) - dim(source), 0 or 1
};

struct Edge {
    int source = 0;
    int target = 0;
    EdgeInfo info;
};

struct RefinementGraph {
    int p = 0;
    int d = 0;
    std::vector<strata::Partition> vertices;  // canonical order
    std::vector<Edge> edges;                  // sorted by (source, target)
};

// Residue of a in (0, p]; with this normalization a type-1 edge has equal
// dimensions on both sides exactly when res(e1) + res(e2) <= p.
inline int residue_1_to_p(int a, int p) {
    const int m = a % p;
    return m == 0 ? p : m;
}

inline EdgeInfo classify_edge(int p, const strata::Partition& src, const strata::Partition& tgt) {
    strata::validate_in_omega(p, src);
    strata::validate_in_omega(p, tgt);
    // multiset differences
    std::vector<int> removed, added;
    {
        auto a = src.parts();
        auto b = tgt.parts();
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i] < b[j]))
                removed.push_back(a[i++]);
            else if (i == a.size() || b[j] < a[i])
                added.push_back(b[j++]);
            else
                ++i, ++j;
        }
    }
    EdgeInfo info;
    if (removed.size() != 1 || (added.size() != 2 && added.size() != 3))
        throw std::domain_error("edge is not a single-entry split into 2 or 3 parts: " + src.str() + " -> " + tgt.str());
    info.split_from = removed[0];
    info.split_into = added;
    info.edge_type = static_cast<int>(added.size()) - 1;
    if (info.edge_type == 2) {
        if (p == 2) throw std::domain_error("three-way split cannot occur for p = 2");
        for (int e : added)
            if (e % p != (p + 1) / 2 % p)
                throw std::domain_error("three-way split with a part not congruent to (p+1)/2: " + src.str() + " -> " +
                                        tgt.str());
        info.closure = Closure::unknown;
    } else {
        const int e1 = added[0], e2 = added[1];
        if (e1 % p == 0 || e2 % p == 0)
            info.closure = Closure::yes;
        else if (residue_1_to_p(e1, p) + residue_1_to_p(e2, p) <= p)
            info.closure = Closure::no;
        else
            info.closure = Closure::unknown;
    }
    info.dim_delta = strata::stratum_dimension(p, tgt) - strata::stratum_dimension(p, src);
    if (info.dim_delta != 0 && info.dim_delta != 1) throw std::logic_error("edge dimension step outside {0, 1}");
    const bool zero_expected = info.edge_type == 1 &&
                               residue_1_to_p(added[0], p) + residue_1_to_p(added[1], p) <= p;
    if ((info.dim_delta == 0) != zero_expected) throw std::logic_error("edge dimension step mismatches the residue rule");
    return info;
}

// The covering-relation digraph on Omega_d: edges are the transitive
// reduction of the strict refinement order, classified one by one.
inline RefinementGraph build_graph(int p, int d) {
    RefinementGraph g;
    g.p = p;
    g.d = d;
    g.vertices = strata::enumerate_partitions(p, d);
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.vertices[i].length() < g.vertices[j].length())
                lt[i][j] = refines(g.vertices[i], g.vertices[j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!lt[i][j]) continue;
            bool covered = true;
            for (int k = 0; k < n && covered; ++k)
                if (lt[i][k] && lt[k][j]) covered = false;
            if (covered) g.edges.push_back({i, j, classify_edge(p, g.vertices[i], g.vertices[j])});
        }
    return g;
}

// Lengths of all maximal directed paths (source vertex to sink vertex).
inline std::set<int> chain_lengths(const RefinementGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    for (const auto& e : g.edges) {
        out[e.source].push_back(e.target);
        ++indeg[e.target];
    }
    std::vector<std::set<int>> lengths(n);
    std::vector<bool> done(n, false);
    std::function<const std::set<int>&(int)> lengths_from = [&](int v) -> const std::set<int>& {
        if (done[v]) return lengths[v];
        done[v] = true;
        if (out[v].empty())
            lengths[v].insert(0);
        else
            for (int w : out[v])
                for (int l : lengths_from(w)) lengths[v].insert(l + 1);
        return lengths[v];
    };
    std::set<int> result;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            for (int l : lengths_from(v)) result.insert(l);
    return result;
}

inline std::set<int> chain_lengths(int p, int d) { return chain_lengths(build_graph(p, d)); }

// One p-rank-raising closure step: split the largest entry e >= p+2 as
// {p, e-p}. The resulting edge always lies in the closure (p divides one
// split part). No step exists exactly when the component already has full
// dimension d-1.
struct ClosureStep {
    strata::Partition target;
    std::string justification;
};

inline std::optional<ClosureStep> prank_closure_step(int p, const strata::Partition& E) {
    strata::validate_in_omega(p, E);
    const int e = *std::max_element(E.parts().begin(), E.parts().end());
    if (e < p + 2) {
        if (strata::stratum_dimension(p, E) != E.d() - 1)
            throw std::logic_error("no closure step although the component is not of full dimension");
        return std::nullopt;
    }
    std::vector<int> parts = E.parts();
    parts.erase(std::find(parts.begin(), parts.end(), e));
    parts.push_back(p);
    parts.push_back(e - p);
    return ClosureStep{strata::Partition(std::move(parts)),
                       "split " + std::to_string(e) + " as {" + std::to_string(p) + "," + std::to_string(e - p) +
                           "}: p divides one part, so the source component lies in the target's closure"};
}

// Deterministic DOT rendering; closure status maps to the edge style
// (solid = YES, dashed = UNKNOWN, dotted red = NO).
inline std::string to_dot(const RefinementGraph& g) {
    std::string out = "digraph refinement_p" + std::to_string(g.p) + "_d" + std::to_string(g.d) + " {\n";
    out += "  rankdir=TB;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
        out += "  v" + std::to_string(i) + " [label=\"" + g.vertices[i].str() + "\\ndim " +
               std::to_string(strata::stratum_dimension(g.p, g.vertices[i])) + "\"];\n";
    for (const auto& e : g.edges) {
        std::string style;
        switch (e.info.closure) {
            case Closure::yes: style = "style=solid"; break;
            case Closure::no: style = "style=dotted, color=red"; break;
            default: style = "style=dashed"; break;
        }
        out += "  v" + std::to_string(e.source) + " -> v" + std::to_string(e.target) + " [" + style + "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace ascurves::refgraph
