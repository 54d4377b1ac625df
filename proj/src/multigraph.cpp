#include "cayley3/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

namespace cayley3 {

std::vector<std::size_t> Multigraph::degrees() const {
    std::vector<std::size_t> d(num_vertices, 0);
    for (const auto& [u, v] : edges) {
        d[u]++;
        d[v]++;
    }
    return d;
}

std::vector<std::uint32_t> Multigraph::component_labels(std::size_t& count) const {
    std::vector<std::uint32_t> label(num_vertices, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> adj(num_vertices);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    count = 0;
    for (std::uint32_t s = 0; s < num_vertices; ++s) {
        if (label[s] != UINT32_MAX) continue;
        std::deque<std::uint32_t> q{s};
        label[s] = static_cast<std::uint32_t>(count);
        while (!q.empty()) {
            std::uint32_t x = q.front();
            q.pop_front();
            for (std::uint32_t y : adj[x])
                if (label[y] == UINT32_MAX) {
                    label[y] = static_cast<std::uint32_t>(count);
                    q.push_back(y);
                }
        }
        ++count;
    }
    return label;
}

bool Multigraph::connected() const {
    if (num_vertices == 0) return true;
    std::size_t c = 0;
    component_labels(c);
    return c == 1;
}

std::vector<Dart> darts_at(const Multigraph& g, std::uint32_t v) {
    std::vector<Dart> out;
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].first == v) out.push_back(Dart{e, 0});
        if (g.edges[e].second == v) out.push_back(Dart{e, 1});
    }
    return out;
}

std::uint32_t dart_tail(const Multigraph& g, Dart d) {
    return d.side == 0 ? g.edges[d.edge].first : g.edges[d.edge].second;
}

std::uint32_t dart_head(const Multigraph& g, Dart d) {
    return d.side == 0 ? g.edges[d.edge].second : g.edges[d.edge].first;
}

bool valid_rotation(const Multigraph& g, const GraphRotation& rot) {
    if (rot.rotations.size() != g.num_vertices) return false;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
        std::vector<Dart> expect = darts_at(g, v);
        std::vector<Dart> got = rot.rotations[v];
        std::sort(got.begin(), got.end());
        if (got != expect) return false;
    }
    return true;
}

FaceTraceResult trace_faces(const Multigraph& g, const GraphRotation& rot) {
    if (!g.connected() || g.num_vertices == 0)
        throw std::invalid_argument("trace_faces requires a nonempty connected graph");
    if (!valid_rotation(g, rot)) throw std::invalid_argument("invalid rotation system");

    // Successor within the cyclic order at each vertex.
    std::map<Dart, Dart> next_at_vertex;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
        const auto& cyc = rot.rotations[v];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            next_at_vertex[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }

    FaceTraceResult res;
    std::set<Dart> used;
    for (std::uint32_t e = 0; e < g.edges.size(); ++e)
        for (std::uint8_t s : {0, 1}) {
            Dart start{e, s};
            if (used.count(start)) continue;
            std::vector<Dart> walk;
            Dart d = start;
            do {
                walk.push_back(d);
                used.insert(d);
                d = next_at_vertex.at(reversed(d));
            } while (!(d == start));
            res.face_walks.push_back(std::move(walk));
        }
    res.faces = res.face_walks.size();
    if (g.edges.empty()) res.faces = 1;  // isolated vertex: one face
    long chi = static_cast<long>(g.num_vertices) - static_cast<long>(g.edges.size()) +
               static_cast<long>(res.faces);
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler characteristic defect");
    res.genus = (2 - chi) / 2;
    if (res.genus < 0) throw std::logic_error("negative genus from face tracing");
    return res;
}

long total_genus(const Multigraph& g, const GraphRotation& rot) {
    std::size_t count = 0;
    std::vector<std::uint32_t> label = g.component_labels(count);
    long genus = 0;
    for (std::size_t c = 0; c < count; ++c) {
        Multigraph sub;
        std::vector<std::uint32_t> back(g.num_vertices, UINT32_MAX);
        for (std::uint32_t v = 0; v < g.num_vertices; ++v)
            if (label[v] == c) back[v] = sub.add_vertex();
        std::vector<std::uint32_t> edge_back(g.edges.size(), UINT32_MAX);
        for (std::uint32_t e = 0; e < g.edges.size(); ++e)
            if (label[g.edges[e].first] == c)
                edge_back[e] = sub.add_edge(back[g.edges[e].first], back[g.edges[e].second]);
        GraphRotation sub_rot;
        sub_rot.rotations.resize(sub.num_vertices);
        for (std::uint32_t v = 0; v < g.num_vertices; ++v)
            if (label[v] == c)
                for (Dart d : rot.rotations[v])
                    sub_rot.rotations[back[v]].push_back(Dart{edge_back[d.edge], d.side});
        genus += trace_faces(sub, sub_rot).genus;
    }
    return genus;
}

namespace {

/// Underlying simple graph adjacency, loops dropped and parallels collapsed.
std::vector<std::set<std::uint32_t>> simple_adjacency(const Multigraph& g) {
    std::vector<std::set<std::uint32_t>> adj(g.num_vertices);
    for (const auto& [u, v] : g.edges)
        if (u != v) {
            adj[u].insert(v);
            adj[v].insert(u);
        }
    return adj;
}

bool connected_after_removal(const std::vector<std::set<std::uint32_t>>& adj,
                             const std::vector<bool>& removed) {
    std::size_t n = adj.size();
    std::uint32_t start = UINT32_MAX;
    std::size_t remaining = 0;
    for (std::uint32_t v = 0; v < n; ++v)
        if (!removed[v]) {
            if (start == UINT32_MAX) start = v;
            ++remaining;
        }
    if (remaining == 0) return true;
    std::deque<std::uint32_t> q{start};
    std::vector<bool> seen(n, false);
    seen[start] = true;
    std::size_t visited = 1;
    while (!q.empty()) {
        std::uint32_t x = q.front();
        q.pop_front();
        for (std::uint32_t y : adj[x])
            if (!removed[y] && !seen[y]) {
                seen[y] = true;
                ++visited;
                q.push_back(y);
            }
    }
    return visited == remaining;
}

bool subsets_disconnect(const std::vector<std::set<std::uint32_t>>& adj, std::size_t size,
                        std::vector<std::uint32_t>* witness) {
    std::size_t n = adj.size();
    std::vector<std::uint32_t> pick(size);
    std::vector<bool> removed(n, false);
    // Iterate all subsets of the given size.
    std::function<bool(std::size_t, std::uint32_t)> rec = [&](std::size_t depth,
                                                              std::uint32_t from) -> bool {
        if (depth == size) {
            if (!connected_after_removal(adj, removed)) {
                if (witness) *witness = pick;
                return true;
            }
            return false;
        }
        for (std::uint32_t v = from; v < n; ++v) {
            removed[v] = true;
            pick[depth] = v;
            if (rec(depth + 1, v + 1)) return true;
            removed[v] = false;
        }
        return false;
    };
    return rec(0, 0);
}

}  // namespace

bool is_k_connected(const Multigraph& g, std::size_t k, std::vector<std::uint32_t>* witness_cut) {
    if (g.num_vertices <= k) return false;
    auto adj = simple_adjacency(g);
    for (std::size_t s = 0; s < k; ++s)
        if (subsets_disconnect(adj, s, witness_cut)) return false;
    return true;
}

bool is_planar(const Multigraph& g) {
    // Planarity is insensitive to loops and edge multiplicities.
    typedef boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> BG;
    BG bg(g.num_vertices == 0 ? 1 : g.num_vertices);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& [u, v] : g.edges) {
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (seen.insert({key.first, key.second}).second) boost::add_edge(u, v, bg);
    }
    return boost::boyer_myrvold_planarity_test(bg);
}

// ---------------------------------------------------------------------------
// Multigraph isomorphism: 1-WL colour refinement plus backtracking.

namespace {

struct IsoContext {
    const Multigraph* g;
    const Multigraph* h;
    // adjacency with multiplicities: adj[v][w] = #edges, loops counted once
    std::vector<std::map<std::uint32_t, std::size_t>> gadj, hadj;
    std::vector<std::size_t> gloops, hloops;
};

std::vector<std::map<std::uint32_t, std::size_t>> multi_adj(const Multigraph& g,
                                                            std::vector<std::size_t>& loops) {
    std::vector<std::map<std::uint32_t, std::size_t>> adj(g.num_vertices);
    loops.assign(g.num_vertices, 0);
    for (const auto& [u, v] : g.edges) {
        if (u == v) {
            loops[u]++;
            continue;
        }
        adj[u][v]++;
        adj[v][u]++;
    }
    return adj;
}

/// Stable colouring via iterated neighbourhood-multiset refinement.
std::vector<std::size_t> wl_colours(const std::vector<std::map<std::uint32_t, std::size_t>>& adj,
                                    const std::vector<std::size_t>& loops) {
    std::size_t n = adj.size();
    std::vector<std::size_t> col(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t deg = 0;
        for (const auto& [w, m] : adj[v]) deg += m;
        col[v] = deg * 131 + loops[v];
    }
    for (std::size_t round = 0; round < n; ++round) {
        std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>,
                 std::size_t>
            palette;
        std::vector<std::size_t> next(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<std::pair<std::size_t, std::size_t>> sig;
            for (const auto& [w, m] : adj[v]) sig.emplace_back(col[w], m);
            std::sort(sig.begin(), sig.end());
            auto key = std::make_pair(col[v], std::move(sig));
            auto [it, fresh] = palette.emplace(std::move(key), palette.size());
            next[v] = it->second;
        }
        if (next == col) break;
        col = std::move(next);
    }
    return col;
}

bool extend(IsoContext& ctx, std::vector<std::uint32_t>& map_gh, std::vector<bool>& used,
            const std::vector<std::size_t>& gcol, const std::vector<std::size_t>& hcol,
            std::size_t depth, const std::vector<std::uint32_t>& order) {
    if (depth == order.size()) return true;
    std::uint32_t v = order[depth];
    for (std::uint32_t w = 0; w < ctx.h->num_vertices; ++w) {
        if (used[w] || gcol[v] != hcol[w]) continue;
        if (ctx.gloops[v] != ctx.hloops[w]) continue;
        bool ok = true;
        // consistency with already-mapped neighbours, multiplicities included
        for (const auto& [x, m] : ctx.gadj[v]) {
            if (map_gh[x] == UINT32_MAX) continue;
            auto it = ctx.hadj[w].find(map_gh[x]);
            if (it == ctx.hadj[w].end() || it->second != m) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::size_t mapped_deg = 0;
            for (const auto& [x, m] : ctx.gadj[v])
                if (map_gh[x] != UINT32_MAX) mapped_deg += m;
            std::size_t hmapped_deg = 0;
            for (const auto& [y, m] : ctx.hadj[w])
                if (std::find(map_gh.begin(), map_gh.end(), y) != map_gh.end()) hmapped_deg += m;
            if (mapped_deg != hmapped_deg) ok = false;
        }
        if (!ok) continue;
        map_gh[v] = w;
        used[w] = true;
        if (extend(ctx, map_gh, used, gcol, hcol, depth + 1, order)) return true;
        map_gh[v] = UINT32_MAX;
        used[w] = false;
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> graphs_isomorphic(const Multigraph& g,
                                                            const Multigraph& h) {
    if (g.num_vertices != h.num_vertices || g.edges.size() != h.edges.size()) return std::nullopt;
    IsoContext ctx{&g, &h, {}, {}, {}, {}};
    ctx.gadj = multi_adj(g, ctx.gloops);
    ctx.hadj = multi_adj(h, ctx.hloops);

    std::vector<std::size_t> gcol = wl_colours(ctx.gadj, ctx.gloops);
    std::vector<std::size_t> hcol = wl_colours(ctx.hadj, ctx.hloops);
    {
        std::vector<std::size_t> a = gcol, b = hcol;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    // Order vertices rare-colour-first to prune early.
    std::map<std::size_t, std::size_t> colour_count;
    for (std::size_t c : gcol) colour_count[c]++;
    std::vector<std::uint32_t> order(g.num_vertices);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        auto ka = std::make_pair(colour_count[gcol[a]], gcol[a]);
        auto kb = std::make_pair(colour_count[gcol[b]], gcol[b]);
        return ka != kb ? ka < kb : a < b;
    });

    std::vector<std::uint32_t> map_gh(g.num_vertices, UINT32_MAX);
    std::vector<bool> used(h.num_vertices, false);
    if (extend(ctx, map_gh, used, gcol, hcol, 0, order)) return map_gh;
    return std::nullopt;
}

}  // namespace cayley3
