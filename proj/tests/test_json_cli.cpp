#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cayley3/json_io.hpp"
#include "cayley3/report.hpp"
#include "support/fixtures.hpp"

using namespace cayley3;

namespace {

std::string tmpdir() {
    static std::string dir = [] {
        std::string d = "cayley3_test_tmp";
        if (std::system(("mkdir -p " + d).c_str()) != 0)
            throw std::runtime_error("cannot create the test scratch directory");
        return d;
    }();
    return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string bin = CAYLEY3_CLI_PATH;
    std::string out_file = tmpdir() + "/cli_out.txt";
    int code = std::system((bin + " " + args + " > " + out_file + " 2>&1").c_str());
    if (output) {
        std::ifstream f(out_file);
        std::ostringstream ss;
        ss << f.rdbuf();
        *output = ss.str();
    }
    return WEXITSTATUS(code);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

}  // namespace

TEST_CASE("complex JSON round trip") {
    for (const TwoComplex& x : {fixtures::tetrahedron(), fixtures::cube(),
                                fixtures::torus_complex(3, 3).built.complex}) {
        nlohmann::json j = complex_to_json(x);
        TwoComplex back = complex_from_json(j);
        CHECK(back == x);
        // byte stability
        CHECK(dump_canonical(complex_to_json(back)) == dump_canonical(j));
    }
}

TEST_CASE("rotation JSON round trip validates reversal pairs") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    nlohmann::json j = rotation_to_json(t.rotation);
    RotationSystem back = rotation_from_json(j, t.built.complex);
    CHECK(back == t.rotation);

    // break one reversal pair: load must fail
    nlohmann::json broken = j;
    for (auto& [key, val] : broken.at("rotations").items()) {
        if (key.back() == '-' && val.size() >= 3) {
            std::swap(val[0], val[1]);
            break;
        }
    }
    CHECK_THROWS_AS(rotation_from_json(broken, t.built.complex), InputError);
}

TEST_CASE("action JSON round trip") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    nlohmann::json j = action_to_json(*t.built.action);
    CellularAction back = action_from_json(j);
    ActionCheck ac = verify_action(t.built.complex, back);
    CHECK(ac.is_action);
    CHECK(ac.regular_on_vertices());
}

TEST_CASE("check reports are deterministic") {
    fixtures::TorusComplex t = fixtures::torus_complex(3, 3);
    CheckReport rep = run_check(t.built.complex, t.rotation, t.built.action);
    CHECK(rep.planar);
    CHECK(rep.invariant);
    CHECK(rep.eta.at("a") == 0);
    CHECK(rep.eta.at("b") == 0);
    CHECK(rep.unresolved_classes == 0);
    nlohmann::json j1 = check_report_to_json(rep, "check", "digest");
    nlohmann::json j2 = check_report_to_json(
        run_check(t.built.complex, t.rotation, t.built.action), "check", "digest");
    CHECK(dump_canonical(j1) == dump_canonical(j2));
}

TEST_CASE("cli: build writes the torus complex") {
    std::string grp = tmpdir() + "/torus33.grp";
    write_file(grp, "gens: a b\nrels: a^3 b^3 [a,b]\n");
    std::string out;
    int code = run_cli("build " + grp + " --out " + tmpdir() + "/torus33", &out);
    CHECK(code == 0);
    CHECK(out.find("vertices 9") != std::string::npos);
    TwoComplex x = complex_from_json(load_json_file(tmpdir() + "/torus33.complex.json"));
    CHECK(x.num_vertices() == 9);
    CHECK(x.num_edges() == 18);
}

TEST_CASE("cli: build a lattice ball with the matrix model") {
    std::string grp = tmpdir() + "/z2.grp";
    write_file(grp,
               "gens: a b\nrels: [a,b]\nmatrix a: [[1,0,1],[0,1,0],[0,0,1]]\nmatrix b: "
               "[[1,0,0],[0,1,1],[0,0,1]]\n");
    std::string out;
    int code = run_cli("build " + grp + " --model matrix --radius 3 --out " + tmpdir() + "/z2",
                       &out);
    CHECK(code == 0);
    CHECK(out.find("vertices 25") != std::string::npos);
}

TEST_CASE("cli: parse errors exit 2") {
    std::string grp = tmpdir() + "/bad.grp";
    write_file(grp, "gens: a\nrels: b^2\n");
    CHECK(run_cli("build " + grp) == 2);

    std::string missing_rel = tmpdir() + "/free.grp";
    write_file(missing_rel, "gens: a b\nrels: (a b a^-1 b^-1 a)\n");
    // free-ish group: enumeration cannot close at a small cap
    std::string out;
    setenv("CAYLEY3_COSET_LIMIT", "64", 1);
    int code = run_cli("build " + missing_rel, &out);
    unsetenv("CAYLEY3_COSET_LIMIT");
    CHECK(code == 3);
}

TEST_CASE("cli: check on the cube, then with a broken reversal pair") {
    TwoComplex cube = fixtures::cube();
    RotationSystem rot = unique_rotation_system(cube);
    std::string cx = tmpdir() + "/cube.json", rj = tmpdir() + "/cube.rot.json";
    write_file(cx, dump_canonical(complex_to_json(cube)));
    write_file(rj, dump_canonical(rotation_to_json(rot)));
    std::string out;
    int code = run_cli("check " + cx + " " + rj + " --format json", &out);
    CHECK(code == 0);
    CHECK(out.find("\"planar\": true") != std::string::npos);

    // corrupt the rotation file: drop one direction
    nlohmann::json broken = rotation_to_json(rot);
    auto& rots = broken.at("rotations");
    rots.erase(rots.begin());
    write_file(rj, dump_canonical(broken));
    CHECK(run_cli("check " + cx + " " + rj) == 2);
}

TEST_CASE("cli: transform fatten and contract") {
    // plane K2 from committed-style JSON
    std::string pg = tmpdir() + "/k2-plane.json";
    write_file(pg, R"({"vertex_count": 2, "edges": [[0,1]], "rotations": [[[0,0]],[[0,1]]]})");
    std::string out;
    int code = run_cli("transform fatten " + pg + " --out " + tmpdir() + "/k2fat.json", &out);
    CHECK(code == 0);
    CHECK(out.find("vertices 8, edges 15") != std::string::npos);

    // contract the 6-cycle by the antipodal action
    TwoComplex c6;
    for (Id v = 0; v < 6; ++v) c6.add_vertex(v);
    for (Id i = 0; i < 6; ++i) c6.add_edge(i, i, (i + 1) % 6);
    std::map<Id, Id> anti;
    for (Id v = 0; v < 6; ++v) anti[v] = (v + 3) % 6;
    std::vector<std::uint32_t> c2{0, 1, 1, 0};
    auto model = std::make_shared<TableModel>(c2, 2, std::vector<std::uint32_t>{1},
                                              std::vector<std::string>{"t"});
    CellularAction act = action_from_vertex_maps(c6, model, {"t"}, {anti},
                                                 {parse_word("t^2", {"t"})});
    write_file(tmpdir() + "/c6.json", dump_canonical(complex_to_json(c6)));
    write_file(tmpdir() + "/antipodal.act.json", dump_canonical(action_to_json(act)));
    code = run_cli("transform contract " + tmpdir() + "/c6.json " + tmpdir() +
                       "/antipodal.act.json --out " + tmpdir() + "/c6c.json",
                   &out);
    CHECK(code == 0);
    CHECK(out.find("blocks 2") != std::string::npos);
    CHECK(out.find("regular on vertices: yes") != std::string::npos);
}

TEST_CASE("cli: transform flag on the tetrahedron") {
    TwoComplex tetra = fixtures::tetrahedron();
    write_file(tmpdir() + "/tetra.json", dump_canonical(complex_to_json(tetra)));
    write_file(tmpdir() + "/tetra.rot.json",
               dump_canonical(rotation_to_json(unique_rotation_system(tetra))));
    std::string out;
    int code = run_cli("transform flag " + tmpdir() + "/tetra.json " + tmpdir() +
                           "/tetra.rot.json --out " + tmpdir() + "/tetra.flag.json",
                       &out);
    CHECK(code == 0);
    CHECK(out.find("flags 48") != std::string::npos);
}

TEST_CASE("committed fixtures: torus check passes through the CLI") {
    std::string fx = CAYLEY3_FIXTURES_DIR;
    std::string out;
    int code = run_cli("check " + fx + "/torus33.complex.json " + fx +
                           "/torus33.rotation.json " + fx + "/torus33.action.json --format json",
                       &out);
    CHECK(code == 0);
    CHECK(out.find("\"planar\": true") != std::string::npos);
    CHECK(out.find("\"invariant\": true") != std::string::npos);
    CHECK(out.find("\"unresolved\": 0") != std::string::npos);

    // byte-stable reports: run twice, identical output
    std::string out2;
    run_cli("check " + fx + "/torus33.complex.json " + fx + "/torus33.rotation.json " + fx +
                "/torus33.action.json --format json",
            &out2);
    CHECK(out == out2);
}

TEST_CASE("committed fixtures: build, fatten, contract") {
    std::string fx = CAYLEY3_FIXTURES_DIR;
    std::string out;
    CHECK(run_cli("build " + fx + "/torus33.grp --out " + tmpdir() + "/t33", &out) == 0);
    CHECK(out.find("vertices 9") != std::string::npos);
    TwoComplex built = complex_from_json(load_json_file(tmpdir() + "/t33.complex.json"));
    TwoComplex committed = complex_from_json(load_json_file(fx + "/torus33.complex.json"));
    CHECK(built == committed);

    CHECK(run_cli("build " + fx + "/z2.grp --model matrix --radius 3 --out " + tmpdir() + "/z2r3",
                  &out) == 0);
    CHECK(out.find("vertices 25") != std::string::npos);

    CHECK(run_cli("transform fatten " + fx + "/k2-plane.json", &out) == 0);
    CHECK(out.find("vertices 8, edges 15") != std::string::npos);

    CHECK(run_cli("transform contract " + fx + "/c6.complex.json " + fx +
                      "/c6-antipodal.action.json",
                  &out) == 0);
    CHECK(out.find("blocks 2") != std::string::npos);

    CHECK(run_cli("transform flag " + fx + "/tetra.complex.json " + fx + "/tetra.rotation.json",
                  &out) == 0);
    CHECK(out.find("flags 48") != std::string::npos);

    CHECK(run_cli("transform subdivide " + fx + "/tetra.complex.json", &out) == 0);
}

TEST_CASE("cli: z2 ball check reports two unresolved classes") {
    BallData ball = fixtures::z2_ball(2);
    std::set<Id> incomplete;
    for (const auto& [e, uv] : ball.complex.edges())
        if (!ball.complete_edges.count(e)) incomplete.insert(e);
    write_file(tmpdir() + "/z2ball.json",
               dump_canonical(complex_to_json(ball.complex, &incomplete)));
    write_file(tmpdir() + "/z2ball.rot.json", dump_canonical(rotation_to_json(ball.rotation)));
    std::string out;
    int code = run_cli(
        "check " + tmpdir() + "/z2ball.json " + tmpdir() + "/z2ball.rot.json --format json",
        &out);
    CHECK(code == 0);
    CHECK(out.find("\"unresolved\": 2") != std::string::npos);
}
