#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "fracture/core.hpp"

namespace oracle {

using Edge = std::vector<int>;

// Every r-subset of 0..n-1, sorted by the colex key (largest element first).
inline std::vector<Edge> colex_edges(int n, int r)
{
    std::vector<Edge> out;
    std::function<void(int, Edge&)> rec = [&](int from, Edge& cur) {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int v = from; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1, cur);
            cur.pop_back();
        }
    };
    Edge cur;
    rec(0, cur);
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

struct ClassInfo {
    int components = 0;
    int incident = 0;
    std::uint64_t edges = 0;
};

// Components by depth-first search over the vertex/edge incidence structure.
inline ClassInfo dfs_class(int n, const std::vector<Edge>& edges)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::set<int> touched;
    for (const auto& e : edges)
        for (int a : e) {
            touched.insert(a);
            for (int b : e)
                if (a != b)
                    adj[static_cast<std::size_t>(a)].push_back(b);
        }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    ClassInfo info;
    info.incident = static_cast<int>(touched.size());
    info.edges = edges.size();
    for (int s : touched) {
        if (seen[static_cast<std::size_t>(s)])
            continue;
        ++info.components;
        std::vector<int> stack{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return info;
}

// color -> class info, nonempty classes only
inline std::map<int, ClassInfo> classes(int n, int r, const std::vector<int>& colors)
{
    auto edges = colex_edges(n, r);
    std::map<int, std::vector<Edge>> by_color;
    for (std::size_t i = 0; i < edges.size(); ++i)
        by_color[colors[i]].push_back(edges[i]);
    std::map<int, ClassInfo> out;
    for (const auto& [c, es] : by_color)
        out[c] = dfs_class(n, es);
    return out;
}

inline int f_of(int n, int r, const std::vector<int>& colors)
{
    int best = n + 1;
    for (const auto& [c, info] : classes(n, r, colors))
        best = std::min(best, info.components);
    return best;
}

inline int max_incident(int n, int r, const std::vector<int>& colors)
{
    int best = 0;
    for (const auto& [c, info] : classes(n, r, colors))
        best = std::max(best, info.incident);
    return best;
}

struct Naive {
    int best_f = -1;        // over colorings using all k colors
    int best_incident = -1; // over all colorings
};

// Full enumeration of k^m color vectors with incremental odometer.
inline Naive enumerate(int n, int k, int r)
{
    auto edges = colex_edges(n, r);
    const std::size_t m = edges.size();
    std::vector<int> colors(m, 0);
    Naive out;
    out.best_incident = n + 1;
    for (;;) {
        std::vector<std::vector<Edge>> cls(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < m; ++i)
            cls[static_cast<std::size_t>(colors[i])].push_back(edges[i]);
        int f = n + 1, inc = 0;
        bool all_used = true;
        for (const auto& c : cls) {
            if (c.empty()) {
                all_used = false;
                continue;
            }
            auto info = dfs_class(n, c);
            f = std::min(f, info.components);
            inc = std::max(inc, info.incident);
        }
        if (all_used)
            out.best_f = std::max(out.best_f, f);
        out.best_incident = std::min(out.best_incident, inc);
        std::size_t i = 0;
        while (i < m && ++colors[i] == k)
            colors[i++] = 0;
        if (i == m)
            return out;
    }
}

inline std::vector<int> random_colors(std::mt19937_64& rng, std::size_t m, int k)
{
    std::vector<int> colors(m);
    for (auto& c : colors)
        c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    return colors;
}

} // namespace oracle
