#include <doctest.h>

#include "cayley3/cayley.hpp"
#include "support/fixtures.hpp"

using namespace cayley3;

TEST_CASE("cayley graph of C3 is a triangle") {
    auto m = std::make_shared<CosetModel>(fixtures::parse_presentation("a", "a^3"), 100);
    CayleyComplexResult r = build_cayley_graph(m);
    CHECK(r.complex.num_vertices() == 3);
    CHECK(r.complex.num_edges() == 3);
    CHECK(r.complex.num_faces() == 0);
    REQUIRE(r.action.has_value());
    ActionCheck ac = verify_action(r.complex, *r.action);
    CHECK(ac.is_action);
    CHECK(ac.regular_on_vertices());
}

TEST_CASE("cayley graph of C2xC2 on two involutions is a 4-cycle") {
    auto m = std::make_shared<CosetModel>(
        fixtures::parse_presentation("a b", "a^2 b^2 [a,b]"), 100);
    CayleyComplexResult r = build_cayley_graph(m);
    CHECK(r.complex.num_vertices() == 4);
    CHECK(r.complex.num_edges() == 4);
    // every vertex has degree 2
    Skeleton sk = skeleton_of(r.complex);
    for (std::size_t d : sk.graph.degrees()) CHECK(d == 2);
}

TEST_CASE("Z^2 ball of radius 2") {
    auto m = fixtures::lattice_model(2);
    CayleyOptions opts;
    opts.radius = 2;
    CayleyComplexResult r = build_cayley_graph(m, opts);
    CHECK(r.complex.num_vertices() == 13);
    CHECK(r.truncated);
    CHECK_FALSE(r.action.has_value());
    // grid edges within the ball: brute-force count: edges between lattice
    // points at distance <= 2: pairs (p, p+e) both in the ball = 2 * (number
    // of points with |p|+|p+e| reachable) = 16
    CHECK(r.complex.num_edges() == 16);
}

TEST_CASE("cayley complex of C3: triangle with one 2-cell") {
    auto m = std::make_shared<CosetModel>(fixtures::parse_presentation("a", "a^3"), 100);
    CayleyComplexResult r = build_cayley_complex(m, fixtures::parse_presentation("a", "a^3"));
    CHECK(r.complex.num_vertices() == 3);
    CHECK(r.complex.num_edges() == 3);
    CHECK(r.complex.num_faces() == 1);  // one circuit, simplified convention
    REQUIRE(r.action.has_value());
    GeneralizedCayleyCertificate cert = verify_generalized_cayley(r.complex, *r.action);
    CHECK(cert.action_check.regular_on_vertices());
    CHECK(cert.pi1.verdict == Pi1Verdict::TrivialCertified);
}

TEST_CASE("cayley complex of C2xC2: squares collapse to one face per circuit") {
    Presentation p = fixtures::parse_presentation("a b", "a^2 b^2 [a,b]");
    auto m = std::make_shared<CosetModel>(p, 100);
    CayleyComplexResult r = build_cayley_complex(m, p);
    CHECK(r.complex.num_vertices() == 4);
    CHECK(r.complex.num_edges() == 4);
    // faces: 2 a-bigons + 2 b-bigons + 1 commutator square circuit
    CHECK(r.complex.num_faces() == 5);
}

TEST_CASE("torus complex: quadrangulated torus plus polygon faces") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    CHECK(t.built.complex.num_vertices() == 9);
    CHECK(t.built.complex.num_edges() == 18);
    CHECK(t.built.complex.num_faces() == 15);  // 9 squares + 3 + 3 polygons
    REQUIRE(t.built.action.has_value());
    GeneralizedCayleyCertificate cert =
        verify_generalized_cayley(t.built.complex, *t.built.action);
    CHECK(cert.action_check.regular_on_vertices());
    CHECK(cert.pi1.verdict == Pi1Verdict::TrivialCertified);
}

TEST_CASE("deleting the face of the C3 complex makes pi1 nontrivial") {
    auto m = std::make_shared<CosetModel>(fixtures::parse_presentation("a", "a^3"), 100);
    CayleyComplexResult r = build_cayley_complex(m, fixtures::parse_presentation("a", "a^3"));
    TwoComplex no_face;
    for (Id v : r.complex.vertices()) no_face.add_vertex(v);
    for (const auto& [e, uv] : r.complex.edges()) no_face.add_edge(e, uv[0], uv[1]);
    Pi1Presentation p = pi1_presentation(no_face);
    CHECK(p.verdict == Pi1Verdict::NontrivialCertified);
}

TEST_CASE("a non-free action is not regular on vertices") {
    // C2 acting on the 4-cycle fixing two vertices: reflection across a diagonal
    TwoComplex c4;
    for (Id v = 0; v < 4; ++v) c4.add_vertex(v);
    for (Id i = 0; i < 4; ++i) c4.add_edge(i, i, (i + 1) % 4);
    std::vector<std::uint32_t> table = {0, 1, 1, 0};
    auto c2 = std::make_shared<TableModel>(table, 2, std::vector<std::uint32_t>{1},
                                           std::vector<std::string>{"t"});
    std::map<Id, Id> refl{{0, 0}, {1, 3}, {2, 2}, {3, 1}};
    CellularAction act = action_from_vertex_maps(c4, c2, {"t"},
                                                 {refl}, {parse_word("t^2", {"t"})});
    ActionCheck ac = verify_action(c4, act);
    CHECK(ac.is_action);
    CHECK_FALSE(ac.free_on_vertices);
    CHECK_FALSE(ac.regular_on_vertices());
}

TEST_CASE("canonical action is regular for every group of order <= 12") {
    for (const auto& np : fixtures::groups_up_to_12()) {
        auto m = std::make_shared<CosetModel>(np.presentation, 100000);
        CayleyComplexResult r = build_cayley_complex(m, np.presentation);
        REQUIRE(r.action.has_value());
        ActionCheck ac = verify_action(r.complex, *r.action);
        CHECK(ac.is_action);
        CHECK(ac.regular_on_vertices());
        // every relator walk closes
        for (Elem g : m->enumerate())
            for (const Word& rel : np.presentation.relators) {
                Elem x = g;
                for (const Letter& l : rel.letters) x = m->apply_letter(x, l);
                CHECK(x == g);
            }
    }
}

TEST_CASE("ball truncations are nested subcomplexes") {
    auto m = fixtures::lattice_model(2);
    Presentation p = fixtures::lattice_presentation(2);
    CayleyOptions o2, o3;
    o2.radius = 2;
    o3.radius = 3;
    CayleyComplexResult r2 = build_cayley_complex(m, p, o2);
    CayleyComplexResult r3 = build_cayley_complex(m, p, o3);
    for (Id v : r2.complex.vertices()) CHECK(r3.complex.has_vertex(v));
    for (const auto& [e, uv] : r2.complex.edges()) {
        REQUIRE(r3.complex.has_edge(e));
        CHECK(r3.complex.ends(e) == uv);
    }
    for (const auto& [f, w] : r2.complex.faces()) {
        REQUIRE(r3.complex.has_face(f));
        CHECK(cyclically_equal(r3.complex.walk(f), w));
    }
}

TEST_CASE("doubled involutions build parallel edges and edge-regular bigons") {
    Presentation p = fixtures::parse_presentation("a", "a^2");
    auto m = std::make_shared<CosetModel>(p, 100);
    CayleyOptions opts;
    opts.doubled_involutions = true;
    CayleyComplexResult r = build_cayley_complex(m, p, opts);
    CHECK(r.complex.num_vertices() == 2);
    CHECK(r.complex.num_edges() == 2);
    CHECK(r.complex.is_edge_regular());

    CayleyComplexResult simplified = build_cayley_complex(m, p);
    CHECK(simplified.complex.num_edges() == 1);
    CHECK_FALSE(simplified.complex.is_edge_regular());  // the bigon reuses the edge
}

TEST_CASE("non-generating subsets are rejected") {
    auto m = std::make_shared<CosetModel>(
        fixtures::parse_presentation("a b", "a^2 b^2 [a,b]"), 100);
    CayleyOptions opts;
    opts.gens = {0};
    CHECK_THROWS_AS(build_cayley_graph(m, opts), NotGenerating);
}

TEST_CASE("mismatched model and presentation is rejected") {
    auto c4 = std::make_shared<CosetModel>(fixtures::parse_presentation("a", "a^4"), 100);
    CHECK_THROWS_AS(build_cayley_complex(c4, fixtures::parse_presentation("a", "a^3")),
                    InputError);
}
