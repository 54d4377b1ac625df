#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cayley3/cayley.hpp"
#include "cayley3/multigraph.hpp"
#include "cayley3/prechambers.hpp"
#include "cayley3/rotation_system.hpp"
#include "cayley3/two_complex.hpp"

namespace cayley3 {

/// A connected multigraph with a genus-0 rotation system, certified by face
/// tracing at construction.
struct PlaneGraph {
    Multigraph graph;
    GraphRotation rotation;
};

PlaneGraph make_plane_graph(Multigraph g, GraphRotation rot);

/// Thicken a plane graph: triple every edge, subdivide each copy into a
/// length-3 path, and join consecutive subdivision vertices around every
/// original vertex into separating rings. |V| becomes V+6E and |E| becomes
/// 15E; the output is 2-connected for connected input.
PlaneGraph fatten_plane_graph(const PlaneGraph& g);

/// Result of the complex fattening: the super-complex, its rotation, and the
/// extended action when one was supplied.
struct FattenResult {
    TwoComplex complex;
    RotationSystem rotation;
    std::optional<CellularAction> action;
    std::vector<std::uint8_t> eta;  // the invariance signs carried over
    /// originals survive: vertex ids and edge ids of the input are unchanged
    std::map<Id, std::array<Id, 3>> face_copies;  // input face -> {minus, same, plus}
};

/// Fatten a 2-complex: triple every 2-cell (copies adjacent in the rotation
/// around each boundary edge), then engulf each edge, cutting every incident
/// face copy along an arc and adding the slice cells between rotation-adjacent
/// arcs. The link of every original vertex becomes the plane-graph fattening
/// of the original link. Requires a locally 1-connected edge-regular complex
/// and a planar rotation; when an action is given the rotation must be
/// invariant under it, and the result's rotation is invariant with the same
/// signs.
FattenResult fatten_complex(const TwoComplex& x, const RotationSystem& rot,
                            const std::optional<CellularAction>& action = std::nullopt);

/// A flag of a complex-with-prechambers: (vertex, edge, face, class), each
/// incident to the next.
struct Flag {
    Id v = 0;
    Id e = 0;
    Id f = 0;
    std::size_t chamber = 0;  // pre-chamber class index

    friend bool operator==(const Flag& a, const Flag& b) {
        return a.v == b.v && a.e == b.e && a.f == b.f && a.chamber == b.chamber;
    }
    friend bool operator<(const Flag& a, const Flag& b) {
        if (a.v != b.v) return a.v < b.v;
        if (a.e != b.e) return a.e < b.e;
        if (a.f != b.f) return a.f < b.f;
        return a.chamber < b.chamber;
    }
};

/// The flag complex: vertices are flags, edges join flags differing in exactly
/// one coordinate (colour = that coordinate), faces are the 2-coloured cycles.
struct FlagComplexResult {
    TwoComplex complex;
    std::vector<Flag> flags;              // dense vertex id -> flag
    std::map<Id, std::uint8_t> edge_colour;
    std::map<Id, std::pair<std::uint8_t, std::uint8_t>> face_colours;
    PreChamberPartition partition;
};

/// Throws InputError ("non-unique coordinate swap") on degenerate sources:
/// loops, edges in fewer than two class faces, faces whose two directions lie
/// in one class.
FlagComplexResult flag_complex(const TwoComplex& x, const RotationSystem& rot);

/// The pineapple of one vertex: flags with first coordinate v, coloured edges
/// for coordinates 1..3, and the 2-coloured cycles among them. Local
/// degeneracies at v are refused; the rest of the complex may be degenerate.
FlagComplexResult pineapple(const TwoComplex& x, const RotationSystem& rot, Id v);

/// A slice pattern on an n-gon, combinatorially: marked points in cyclic
/// boundary order and chords between them. Point 3i is vertex v_i; points
/// 3i+1 and 3i+2 are the interior points on edge (v_i, v_{i+1}).
struct SlicePattern {
    std::size_t n = 0;
    /// edge_arcs[i] joins boundary positions of v_i and v_{i+1}.
    std::vector<std::pair<std::size_t, std::size_t>> edge_arcs;
    /// vertex_arcs[i] joins interior points on the edges flanking v_i.
    std::vector<std::pair<std::size_t, std::size_t>> vertex_arcs;

    std::size_t boundary_points() const { return 3 * n; }
};

/// Validate the five slice-pattern conditions via chord interleaving.
/// Returns an empty string when valid, else a description of the violation.
std::string slice_pattern_violation(const SlicePattern& p);

/// A vertex permutation of the n-gon given as images of v_0..v_{n-1}; must be
/// a dihedral automorphism with h^2 = id.
SlicePattern slice_pattern(std::size_t n, const std::vector<std::size_t>& h);

/// Whether h maps the pattern to itself (edge arcs to edge arcs, vertex arcs
/// to vertex arcs).
bool slice_pattern_invariant(const SlicePattern& p, const std::vector<std::size_t>& h);

/// Babai contraction: a connected fundamental domain D for a free vertex
/// action, and the quotient graph with its induced regular action.
struct BabaiResult {
    std::set<Id> domain_vertices;
    std::set<Id> domain_edges;  // a tree spanning the domain
    TwoComplex contracted;      // faces empty
    CellularAction contracted_action;
    std::map<Id, Id> block_of_vertex;  // input vertex -> contracted vertex
};

/// The graph is the 1-skeleton of `g` (faces must be absent); the action must
/// be free on vertices. Contracting each translate of D yields a generalised
/// Cayley graph of the acting group.
BabaiResult babai_contract(const TwoComplex& g, const CellularAction& action);

}  // namespace cayley3
