#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayley3/multigraph.hpp"
#include "cayley3/word.hpp"

namespace cayley3 {

using Id = std::uint32_t;

/// A direction of a 1-cell. Edges carry a stored end order [u, v]; the forward
/// direction runs u -> v. Loops still have two distinct directions.
struct Dedge {
    Id edge = 0;
    bool rev = false;

    Dedge() = default;
    Dedge(Id e, bool r) : edge(e), rev(r) {}
    Dedge reversed() const { return Dedge(edge, !rev); }

    friend bool operator==(Dedge a, Dedge b) { return a.edge == b.edge && a.rev == b.rev; }
    friend bool operator!=(Dedge a, Dedge b) { return !(a == b); }
    friend bool operator<(Dedge a, Dedge b) {
        return a.edge != b.edge ? a.edge < b.edge : a.rev < b.rev;
    }
};

/// A directed 2-cell: one of the two traversal senses of a face's walk.
struct Dface {
    Id face = 0;
    bool rev = false;

    Dface() = default;
    Dface(Id f, bool r) : face(f), rev(r) {}
    Dface reversed() const { return Dface(face, !rev); }

    friend bool operator==(Dface a, Dface b) { return a.face == b.face && a.rev == b.rev; }
    friend bool operator!=(Dface a, Dface b) { return !(a == b); }
    friend bool operator<(Dface a, Dface b) {
        return a.face != b.face ? a.face < b.face : a.rev < b.rev;
    }
};

/// Closed attachment walk of a face: directed edge steps, head of each step
/// equal to the tail of the next (cyclically).
struct FaceWalk {
    std::vector<Dedge> steps;

    std::size_t size() const { return steps.size(); }
};

/// The same closed walk traversed in the opposite sense.
FaceWalk reversed_walk(const FaceWalk& w);

/// Equality of closed walks up to rotation (direction preserved).
bool cyclically_equal(const FaceWalk& a, const FaceWalk& b);

/// Canonical representative of a boundary circuit: the lexicographically
/// minimal rotation over both traversal senses.
std::vector<Dedge> canonical_circuit(const FaceWalk& w);

/// Finite 2-complex with loops, parallel edges and arbitrary closed face walks.
/// Values are immutable in practice: construct, validate, then share freely.
class TwoComplex {
public:
    void add_vertex(Id v);
    void add_edge(Id e, Id u, Id v);
    void add_face(Id f, FaceWalk walk);

    bool has_vertex(Id v) const { return vertex_set_.count(v) > 0; }
    bool has_edge(Id e) const { return edges_.count(e) > 0; }
    bool has_face(Id f) const { return faces_.count(f) > 0; }

    const std::vector<Id>& vertices() const { return vertices_; }
    const std::map<Id, std::array<Id, 2>>& edges() const { return edges_; }
    const std::map<Id, FaceWalk>& faces() const { return faces_; }

    const std::array<Id, 2>& ends(Id e) const;
    const FaceWalk& walk(Id f) const;

    Id tail(Dedge d) const { return d.rev ? ends(d.edge)[1] : ends(d.edge)[0]; }
    Id head(Dedge d) const { return d.rev ? ends(d.edge)[0] : ends(d.edge)[1]; }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_faces() const { return faces_.size(); }
    long euler_characteristic() const;

    /// Checks structural invariants; throws InputError on violation.
    void validate() const;

    bool face_is_edge_regular(Id f) const;
    bool face_is_regular(Id f) const;
    bool is_edge_regular() const;
    bool is_regular() const;
    /// Regular, simple 1-skeleton, every walk a triangle.
    bool is_simplicial() const;

    bool connected() const;

    /// First unused id at or above the current maxima, for deriving complexes.
    Id fresh_vertex_id() const;
    Id fresh_edge_id() const;
    Id fresh_face_id() const;

    /// Equality up to cyclic rotation of face walks (direction preserved).
    friend bool operator==(const TwoComplex& a, const TwoComplex& b);

private:
    std::vector<Id> vertices_;  // sorted
    std::map<Id, bool> vertex_set_;
    std::map<Id, std::array<Id, 2>> edges_;
    std::map<Id, FaceWalk> faces_;
};

/// Link graph of a vertex, in the edge-end formulation: one link-vertex per
/// edge-end at v (a loop at v contributes two), one link-edge per face corner.
struct LinkGraph {
    /// (edge id, end index) per dense link-vertex, in canonical order.
    std::vector<std::pair<Id, std::uint8_t>> vertex_labels;
    /// (face id, corner index) per dense link-edge. Corner i of face f sits at
    /// the tail of walk step i, joining the arrival end of step i-1 to the
    /// departure end of step i.
    std::vector<std::pair<Id, std::uint32_t>> edge_labels;
    Multigraph graph;

    std::uint32_t vertex_of(Id edge, std::uint8_t end) const;
};

LinkGraph link_graph(const TwoComplex& x, Id v);

/// One round of barycentric subdivision, following the midpoint/centre recipe
/// literally: one midpoint per edge, one centre and 2k spoke edges per face of
/// walk length k (spokes duplicated per vertex occurrence). Preserves the Euler
/// characteristic on every input; the result is always regular, and simplicial
/// whenever the input is regular.
TwoComplex barycentric_subdivision(const TwoComplex& x);

struct LocalConnectivityReport {
    bool ok = false;
    std::optional<Id> failing_vertex;
};

/// True iff every link graph is k-connected.
LocalConnectivityReport is_locally_k_connected(const TwoComplex& x, std::size_t k);

/// The 1-skeleton as a multigraph over dense indices, with id maps back.
struct Skeleton {
    Multigraph graph;
    std::vector<Id> vertex_ids;        // dense -> id
    std::vector<Id> edge_ids;          // dense -> id
    std::map<Id, std::uint32_t> vertex_index;
    std::map<Id, std::uint32_t> edge_index;
};

Skeleton skeleton_of(const TwoComplex& x);

}  // namespace cayley3
