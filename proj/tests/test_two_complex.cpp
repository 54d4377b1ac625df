#include <doctest.h>

#include "cayley3/two_complex.hpp"
#include "support/fixtures.hpp"

using namespace cayley3;

TEST_CASE("link graphs: single triangle, tetrahedron, lattice interior") {
    TwoComplex tri = fixtures::disc(3);
    LinkGraph l0 = link_graph(tri, 0);
    CHECK(l0.graph.num_vertices == 2);  // two edge-ends at the corner
    CHECK(l0.graph.edges.size() == 1);  // one face corner

    TwoComplex tetra = fixtures::tetrahedron();
    for (Id v : tetra.vertices()) {
        LinkGraph l = link_graph(tetra, v);
        CHECK(l.graph.num_vertices == 3);
        CHECK(l.graph.edges.size() == 3);  // a 3-cycle
        CHECK(is_k_connected(l.graph, 2));
    }

    // interior vertex of the cubic lattice: octahedron link
    BallData z3 = fixtures::z3_ball(2);
    // vertex 0 is the identity (the origin), interior at radius 2
    LinkGraph l = link_graph(z3.complex, 0);
    CHECK(l.graph.num_vertices == 6);
    CHECK(l.graph.edges.size() == 12);
    CHECK(graphs_isomorphic(l.graph, fixtures::octahedron_graph()).has_value());
}

TEST_CASE("barycentric subdivision: counts and Euler characteristic") {
    TwoComplex tri = fixtures::disc(3);
    TwoComplex sub = barycentric_subdivision(tri);
    CHECK(sub.num_vertices() == 7);
    CHECK(sub.num_edges() == 12);
    CHECK(sub.num_faces() == 6);
    CHECK(sub.euler_characteristic() == tri.euler_characteristic());
    CHECK(sub.is_simplicial());

    // single edge, no faces: path of length 2
    TwoComplex seg;
    seg.add_vertex(0);
    seg.add_vertex(1);
    seg.add_edge(0, 0, 1);
    TwoComplex ssub = barycentric_subdivision(seg);
    CHECK(ssub.num_vertices() == 3);
    CHECK(ssub.num_edges() == 2);
    CHECK(ssub.num_faces() == 0);

    TwoComplex tetra = fixtures::tetrahedron();
    TwoComplex tsub = barycentric_subdivision(tetra);
    CHECK(tsub.num_vertices() == 14);
    CHECK(tsub.num_edges() == 36);
    CHECK(tsub.num_faces() == 24);
    CHECK(tsub.euler_characteristic() == 2);
    CHECK(tsub.is_simplicial());
}

TEST_CASE("barycentric subdivision of non-regular inputs") {
    // loop face: one vertex, one loop edge, walk of length 1. The walk is
    // injective, so the face itself is regular; the skeleton has a loop.
    TwoComplex loop;
    loop.add_vertex(0);
    loop.add_edge(0, 0, 0);
    FaceWalk w;
    w.steps.emplace_back(0, false);
    loop.add_face(0, w);
    CHECK(loop.is_regular());
    CHECK_FALSE(loop.is_simplicial());

    TwoComplex sub = barycentric_subdivision(loop);
    CHECK(sub.euler_characteristic() == loop.euler_characteristic());
    CHECK(sub.is_regular());  // every face becomes a simple triangle
    // one round cannot separate the two loop halves; a second round is simplicial
    TwoComplex sub2 = barycentric_subdivision(sub);
    CHECK(sub2.is_simplicial());
    CHECK(sub2.euler_characteristic() == loop.euler_characteristic());

    // bowtie: walk visiting a vertex twice
    TwoComplex bow;
    for (Id v = 0; v < 3; ++v) bow.add_vertex(v);
    bow.add_edge(0, 0, 1);
    bow.add_edge(1, 1, 0);
    bow.add_edge(2, 0, 2);
    bow.add_edge(3, 2, 0);
    FaceWalk bw;
    bw.steps.emplace_back(0, false);
    bw.steps.emplace_back(1, false);
    bw.steps.emplace_back(2, false);
    bw.steps.emplace_back(3, false);
    bow.add_face(0, bw);
    TwoComplex bsub = barycentric_subdivision(bow);
    CHECK(bsub.euler_characteristic() == bow.euler_characteristic());
    CHECK(bsub.is_regular());
    CHECK(barycentric_subdivision(bsub).is_simplicial());
}

TEST_CASE("euler characteristic preserved over a corpus") {
    std::vector<TwoComplex> corpus{fixtures::disc(3), fixtures::disc(5), fixtures::tetrahedron(),
                                   fixtures::cube(), fixtures::torus_complex(3, 3).built.complex};
    for (const TwoComplex& x : corpus) {
        TwoComplex sub = barycentric_subdivision(x);
        CHECK(sub.euler_characteristic() == x.euler_characteristic());
        CHECK(sub.is_simplicial());  // all corpus complexes are regular
        // sum of link edge counts = sum of face walk lengths
        std::size_t corners = 0, walklen = 0;
        for (Id v : sub.vertices()) corners += link_graph(sub, v).graph.edges.size();
        for (const auto& [f, w] : sub.faces()) walklen += w.steps.size();
        CHECK(corners == walklen);
    }
}

TEST_CASE("regularity predicates") {
    CHECK(fixtures::tetrahedron().is_simplicial());
    CHECK(fixtures::cube().is_regular());
    CHECK_FALSE(fixtures::cube().is_simplicial());  // squares

    // two triangles sharing one vertex: locally 1-connected fails there
    TwoComplex pinch;
    for (Id v = 0; v < 5; ++v) pinch.add_vertex(v);
    pinch.add_edge(0, 0, 1);
    pinch.add_edge(1, 1, 2);
    pinch.add_edge(2, 2, 0);
    pinch.add_edge(3, 0, 3);
    pinch.add_edge(4, 3, 4);
    pinch.add_edge(5, 4, 0);
    pinch.add_face(0, fixtures::walk_through(pinch, {0, 1, 2}));
    pinch.add_face(1, fixtures::walk_through(pinch, {0, 3, 4}));
    LocalConnectivityReport rep = is_locally_k_connected(pinch, 1);
    CHECK_FALSE(rep.ok);
    CHECK(*rep.failing_vertex == 0);

    CHECK(is_locally_k_connected(fixtures::tetrahedron(), 2).ok);
    CHECK_FALSE(is_locally_k_connected(fixtures::tetrahedron(), 3).ok);
}
