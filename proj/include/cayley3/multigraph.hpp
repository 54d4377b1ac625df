#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace cayley3 {

/// A finite multigraph on dense vertices 0..V-1. Loops and parallel edges are
/// allowed; an edge is identified by its index in `edges`.
struct Multigraph {
    std::size_t num_vertices = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    std::uint32_t add_vertex() {
        return static_cast<std::uint32_t>(num_vertices++);
    }
    std::uint32_t add_edge(std::uint32_t u, std::uint32_t v) {
        edges.emplace_back(u, v);
        return static_cast<std::uint32_t>(edges.size() - 1);
    }
    bool is_loop(std::uint32_t e) const { return edges[e].first == edges[e].second; }

    /// Degree counting loops twice.
    std::vector<std::size_t> degrees() const;
    bool connected() const;
    std::vector<std::uint32_t> component_labels(std::size_t& count) const;
};

/// A dart is a directed half-edge: an edge index plus which endpoint it leaves.
/// side 0 leaves `first`, side 1 leaves `second`; loops have two distinct darts.
struct Dart {
    std::uint32_t edge = 0;
    std::uint8_t side = 0;

    friend bool operator==(Dart a, Dart b) { return a.edge == b.edge && a.side == b.side; }
    friend bool operator<(Dart a, Dart b) {
        return a.edge != b.edge ? a.edge < b.edge : a.side < b.side;
    }
};

inline Dart reversed(Dart d) { return Dart{d.edge, static_cast<std::uint8_t>(d.side ^ 1)}; }

/// Rotation system of a multigraph: a cyclic order of outgoing darts per vertex.
/// rotations[v] must list exactly the darts leaving v, each once.
struct GraphRotation {
    std::vector<std::vector<Dart>> rotations;
};

/// All darts leaving v, in canonical (edge, side) order.
std::vector<Dart> darts_at(const Multigraph& g, std::uint32_t v);
std::uint32_t dart_tail(const Multigraph& g, Dart d);
std::uint32_t dart_head(const Multigraph& g, Dart d);

/// Checks that rot is a valid rotation system for g.
bool valid_rotation(const Multigraph& g, const GraphRotation& rot);

struct FaceTraceResult {
    std::size_t faces = 0;
    long genus = 0;  // from V - E + F = 2 - 2g on a connected graph
    /// Each face as its cyclic dart sequence.
    std::vector<std::vector<Dart>> face_walks;
};

/// Trace the faces of the combinatorial map (g, rot). Requires g connected and
/// nonempty. Faces are orbits of dart -> rotation-successor of the reversed dart.
FaceTraceResult trace_faces(const Multigraph& g, const GraphRotation& rot);

/// Sum of per-component genera, tracing each component separately.
/// A map is sphere-embeddable iff this is 0 for every component.
long total_genus(const Multigraph& g, const GraphRotation& rot);

/// k-connectivity per the convention: more than k vertices and no cut set of
/// size at most k-1. Loops and edge multiplicities are ignored.
bool is_k_connected(const Multigraph& g, std::size_t k,
                    std::vector<std::uint32_t>* witness_cut = nullptr);

/// Exact planarity of the underlying graph (loops and parallels stripped).
bool is_planar(const Multigraph& g);

/// Multigraph isomorphism. On success returns the vertex bijection from g to h.
std::optional<std::vector<std::uint32_t>> graphs_isomorphic(const Multigraph& g,
                                                            const Multigraph& h);

}  // namespace cayley3
