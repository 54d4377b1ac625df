#include <doctest.h>

#include "cayley3/prechambers.hpp"
#include "support/fixtures.hpp"

using namespace cayley3;

TEST_CASE("single disc: one class containing both directions") {
    for (std::size_t n : {3, 4, 6}) {
        TwoComplex d = fixtures::disc(n);
        PreChamberPartition p = prechambers(d, unique_rotation_system(d));
        REQUIRE(p.size() == 1);
        CHECK(p.classes[0].members.size() == 2);
        CHECK(p.classes[0].status == ClassStatus::Closed);
    }
}

TEST_CASE("tetrahedron: two classes of size four") {
    TwoComplex t = fixtures::tetrahedron();
    PreChamberPartition p = prechambers(t, unique_rotation_system(t));
    REQUIRE(p.size() == 2);
    CHECK(p.classes[0].members.size() == 4);
    CHECK(p.classes[1].members.size() == 4);
    CHECK(t.euler_characteristic() - static_cast<long>(p.size()) == 0);  // 4-6+4-2
}

TEST_CASE("cube: two classes of size six") {
    TwoComplex c = fixtures::cube();
    PreChamberPartition p = prechambers(c, unique_rotation_system(c));
    REQUIRE(p.size() == 2);
    CHECK(p.classes[0].members.size() == 6);
    CHECK(p.classes[1].members.size() == 6);
    CHECK(c.euler_characteristic() - static_cast<long>(p.size()) == 0);  // 8-12+6-2
}

TEST_CASE("class sizes sum to twice the face count; ids are label-independent") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    PreChamberPartition p = prechambers(t.built.complex, t.rotation);
    std::size_t total = 0;
    for (const auto& c : p.classes) total += c.members.size();
    CHECK(total == 2 * t.built.complex.num_faces());
    for (const auto& c : p.classes) CHECK(c.status == ClassStatus::Closed);
}

TEST_CASE("tight components: sphere complexes form one component") {
    TwoComplex t = fixtures::tetrahedron();
    PreChamberPartition p = prechambers(t, unique_rotation_system(t));
    TightComponents tc = tight_components(p, t);
    CHECK(tc.components.size() == 1);
    CHECK(tc.adjacent.count({0, 1}) == 1);
}

TEST_CASE("tight components: two disjoint tetrahedra") {
    TwoComplex two;
    TwoComplex t = fixtures::tetrahedron();
    for (int copy = 0; copy < 2; ++copy) {
        Id off_v = copy * 4, off_e = copy * 6, off_f = copy * 4;
        for (Id v : t.vertices()) two.add_vertex(v + off_v);
        for (const auto& [e, uv] : t.edges()) two.add_edge(e + off_e, uv[0] + off_v, uv[1] + off_v);
        for (const auto& [f, w] : t.faces()) {
            FaceWalk shifted;
            for (const Dedge& d : w.steps) shifted.steps.emplace_back(d.edge + off_e, d.rev);
            two.add_face(f + off_f, shifted);
        }
    }
    PreChamberPartition p = prechambers(two, unique_rotation_system(two));
    CHECK(p.size() == 4);
    TightComponents tc = tight_components(p, two);
    CHECK(tc.components.size() == 2);
}

TEST_CASE("merge: deleting one cube face leaves a single class") {
    TwoComplex c = fixtures::cube();
    MergeResult m = merge_prechambers(c, unique_rotation_system(c), {0});
    CHECK(m.partition.size() == 1);
    CHECK(m.complex.num_faces() == 5);
}

TEST_CASE("merge: empty deletion set is the identity") {
    TwoComplex t = fixtures::tetrahedron();
    RotationSystem rot = unique_rotation_system(t);
    MergeResult m = merge_prechambers(t, rot, {});
    CHECK(m.complex == t);
    CHECK(m.partition.size() == 2);
}

TEST_CASE("merge refuses non-separating faces") {
    TwoComplex d = fixtures::disc(3);
    CHECK_THROWS_AS(merge_prechambers(d, unique_rotation_system(d), {0}), InputError);
}

TEST_CASE("Z^2 balls: exactly two boundary-unresolved classes at every radius") {
    for (std::size_t r : {2, 3, 4}) {
        BallData ball = fixtures::z2_ball(r);
        PreChamberPartition p =
            prechambers_truncated(ball.complex, ball.rotation, ball.complete_edges);
        CHECK(p.size() == 2);
        for (const auto& c : p.classes) CHECK(c.status == ClassStatus::BoundaryUnresolved);
    }
}

TEST_CASE("Z^3 ball: interior cube classes are closed with size six") {
    BallData ball = fixtures::z3_ball(4);
    PreChamberPartition p =
        prechambers_truncated(ball.complex, ball.rotation, ball.complete_edges);
    std::size_t closed_cubes = 0;
    for (const auto& c : p.classes)
        if (c.status == ClassStatus::Closed) {
            CHECK(c.members.size() == 6);
            ++closed_cubes;
        }
    CHECK(closed_cubes > 0);
}

TEST_CASE("finiteness on balls: Z^2 never certifies, Z^3 certifies cubes") {
    FinitenessReport z2 =
        finiteness_on_balls([](std::size_t r) { return fixtures::z2_ball(r); }, {2, 3, 4});
    for (std::size_t u : z2.unresolved_per_radius) CHECK(u == 2);
    for (const auto& c : z2.classes)
        CHECK(c.status == FinitenessStatus::UnresolvedAtAllRadii);

    FinitenessReport z3 =
        finiteness_on_balls([](std::size_t r) { return fixtures::z3_ball(r); }, {2, 3, 4});
    std::size_t certified = 0;
    for (const auto& c : z3.classes)
        if (c.status == FinitenessStatus::FiniteCertified) {
            CHECK(c.size == 6);
            ++certified;
        }
    CHECK(certified > 0);
}

TEST_CASE("pre-chambers are invariant under relabelling of cell ids") {
    TwoComplex t = fixtures::tetrahedron();
    PreChamberPartition p = prechambers(t, unique_rotation_system(t));

    // an order-scrambling relabelling of every cell level
    auto shift = [](Id x) { return 103 - 7 * x; };
    TwoComplex s;
    for (Id v : t.vertices()) s.add_vertex(shift(v));
    for (const auto& [e, uv] : t.edges()) s.add_edge(shift(e), shift(uv[0]), shift(uv[1]));
    for (const auto& [f, w] : t.faces()) {
        FaceWalk sw;
        for (const Dedge& d : w.steps) sw.steps.emplace_back(shift(d.edge), d.rev);
        s.add_face(shift(f), std::move(sw));
    }
    PreChamberPartition q = prechambers(s, unique_rotation_system(s));
    REQUIRE(q.size() == p.size());
    // compare as sets of member sets under the relabelling
    std::set<std::set<Dface>> expect, got;
    for (const auto& cls : p.classes) {
        std::set<Dface> members;
        for (const Dface& df : cls.members) members.insert(Dface(shift(df.face), df.rev));
        expect.insert(std::move(members));
    }
    for (const auto& cls : q.classes)
        got.insert(std::set<Dface>(cls.members.begin(), cls.members.end()));
    CHECK(expect == got);
}

TEST_CASE("finite complexes report all classes closed") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    PreChamberPartition p = prechambers(t.built.complex, t.rotation);
    for (const auto& c : p.classes) CHECK(c.status == ClassStatus::Closed);
}

TEST_CASE("Z^3 ball: the closed cube classes merge along a spanning tree") {
    BallData ball = fixtures::z3_ball(4);
    PreChamberPartition p =
        prechambers_truncated(ball.complex, ball.rotation, ball.complete_edges);
    // Pick the closed classes (the chambers of a fundamental-domain-like zone)
    std::vector<std::size_t> closed;
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        if (p.classes[i].status == ClassStatus::Closed) closed.push_back(i);
    REQUIRE(closed.size() >= 2);

    // Greedy spanning tree over shared faces between closed classes.
    std::map<std::pair<std::size_t, std::size_t>, Id> shared_face;
    for (const auto& [f, w] : ball.complex.faces()) {
        std::size_t a = p.class_of.at(Dface(f, false));
        std::size_t b = p.class_of.at(Dface(f, true));
        if (a == b) continue;
        auto key = std::minmax(a, b);
        if (!shared_face.count({key.first, key.second}))
            shared_face[{key.first, key.second}] = f;
    }
    std::set<std::size_t> in_tree{closed.front()};
    std::set<Id> deletions;
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t c : closed) {
            if (in_tree.count(c)) continue;
            for (std::size_t d : in_tree) {
                auto key = std::minmax(c, d);
                auto it = shared_face.find({key.first, key.second});
                if (it != shared_face.end()) {
                    deletions.insert(it->second);
                    in_tree.insert(c);
                    grew = true;
                    break;
                }
            }
        }
    }
    REQUIRE(in_tree.size() == closed.size());  // closed cubes are tight-connected

    // merge_prechambers retraces with every edge complete; the closed classes
    // agree between the two tracings, so compare against the full partition.
    PreChamberPartition full = prechambers(ball.complex, ball.rotation);
    MergeResult m = merge_prechambers(ball.complex, ball.rotation, deletions);
    // deletions form a tree over distinct classes: the count drops by exactly |D|
    CHECK(m.partition.size() == full.size() - deletions.size());
}
