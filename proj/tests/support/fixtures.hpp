#pragma once

// Shared complexes, rotation systems and oracles for the test suites.

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cayley3/cayley.hpp"
#include "cayley3/constructions.hpp"
#include "cayley3/group_model.hpp"
#include "cayley3/prechambers.hpp"
#include "cayley3/rotation_system.hpp"
#include "cayley3/two_complex.hpp"

namespace fixtures {

using namespace cayley3;

/// Build a face walk through the given vertex cycle; each consecutive pair
/// must be joined by exactly one edge.
FaceWalk walk_through(const TwoComplex& x, const std::vector<Id>& cycle);

/// The slot of edge e in face f (requires the face to traverse e once).
FaceSlot slot_at(const TwoComplex& x, Id f, Id e);

/// Boundary complex of the tetrahedron: vertices 0..3, edges 0..5, faces 0..3.
TwoComplex tetrahedron();

/// Boundary complex of the cube: vertices 0..7 (bit-coded xyz), 12 edges, 6 squares.
TwoComplex cube();

/// A single n-gon disc: one face on an n-cycle.
TwoComplex disc(std::size_t n);

/// The quadrangulated-torus Cayley complex of C_k x C_l with its canonical
/// action, the coordinate maps, and the embedding-derived rotation system
/// (a-polygons on one side of the torus, b-polygons on the other).
struct TorusComplex {
    std::shared_ptr<const CosetModel> model;
    Presentation presentation;
    CayleyComplexResult built;
    std::size_t k = 0, l = 0;
    std::map<std::pair<int, int>, Id> vertex_at;  // (i mod k, j mod l) -> vertex
    std::map<std::pair<int, int>, Id> square_at;  // S(i,j)
    std::map<int, Id> a_polygon;                  // row j
    std::map<int, Id> b_polygon;                  // column i
    RotationSystem rotation;

    Id vertex(int i, int j) const;
    Id square(int i, int j) const;
    /// The a-edge from (i,j) to (i+1,j) and the b-edge from (i,j) to (i,j+1).
    Id a_edge(int i, int j) const;
    Id b_edge(int i, int j) const;
};

TorusComplex torus_complex(std::size_t k, std::size_t l);

/// Matrix models for free abelian lattices (homogeneous integer matrices).
std::shared_ptr<const MatrixModel> lattice_model(std::size_t dim);
Presentation lattice_presentation(std::size_t dim);

/// Ball of the standard Z^2 complex; every edge has at most two squares, so
/// the rotation system is the unique one.
BallData z2_ball(std::size_t radius);

/// Ball of the standard Z^3 complex with the embedding-derived rotation
/// system (cyclic order of the four squares around each axis edge).
BallData z3_ball(std::size_t radius);
CayleyComplexResult z3_ball_raw(std::size_t radius);

/// Fixed presentations covering every isomorphism class of groups of order
/// 3..12 (local 1-connectivity needs at least 3 vertices), plus names.
struct NamedPresentation {
    std::string name;
    Presentation presentation;
    std::size_t order;
};
std::vector<NamedPresentation> groups_up_to_12();

Presentation parse_presentation(const std::string& gens_line, const std::string& rels_line);

/// All subgroups of a finite model, each as a sorted list of element handles.
std::vector<std::vector<Elem>> all_subgroups(const GroupModel& m);

/// Exhaustive search over all rotation systems of a connected multigraph:
/// minimal achievable genus (the planarity oracle for small fixtures).
long min_genus_over_rotations(const Multigraph& g);

/// Seeded random connected plane graph with at most max_vertices vertices and
/// no loops (leaf growth and face chords keep a genus-0 rotation).
PlaneGraph random_plane_graph(std::mt19937& rng, std::size_t max_vertices);

/// Complete graph.
Multigraph complete_graph(std::size_t n);
Multigraph complete_bipartite(std::size_t a, std::size_t b);
Multigraph octahedron_graph();

}  // namespace fixtures
