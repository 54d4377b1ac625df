// Command-line front end: build Cayley complexes from presentation files,
// check rotation systems (planarity, invariance, pre-chambers), and run the
// constructive transformations.
//
// Exit codes: 0 success, 1 negative verdict (a finding, not a failure),
// 2 input error, 3 inconclusive enumeration.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cayley3/cayley.hpp"
#include "cayley3/constructions.hpp"
#include "cayley3/group_model.hpp"
#include "cayley3/json_io.hpp"
#include "cayley3/prechambers.hpp"
#include "cayley3/report.hpp"
#include "cayley3/rotation_system.hpp"
#include "cayley3/two_complex.hpp"

namespace {

using namespace cayley3;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const nlohmann::json& j) {
    if (out_path.empty())
        std::cout << dump_canonical(j);
    else
        write_text_file(out_path, dump_canonical(j));
}

int cmd_build(const std::string& grp_path, const std::string& model_kind,
              std::optional<std::size_t> radius, const std::string& out_prefix,
              bool doubled, bool duplicate_faces) {
    GroupFile gf = load_group_file(grp_path);
    std::size_t cap = coset_limit_from_env();
    std::shared_ptr<const GroupModel> model;
    if (model_kind == "matrix" || (model_kind == "auto" && gf.has_matrices())) {
        if (!gf.has_matrices())
            throw InputError("matrix model requested but the file carries no matrices");
        model = model_from_group_file(gf, cap);
    } else if (model_kind == "coset" || model_kind == "auto") {
        model = std::make_shared<CosetModel>(gf.presentation, cap);
    } else {
        throw InputError("unknown model kind: " + model_kind);
    }

    CayleyOptions opts;
    opts.radius = radius;
    opts.doubled_involutions = doubled;
    opts.duplicate_faces = duplicate_faces;
    CayleyComplexResult res = build_cayley_complex(model, gf.presentation, opts);

    std::set<Id> incomplete;
    if (res.truncated)
        for (const auto& [e, uv] : res.complex.edges())
            if (!res.star_complete_edges.count(e)) incomplete.insert(e);

    std::string prefix = out_prefix.empty() ? "out" : out_prefix;
    write_text_file(prefix + ".complex.json",
                    dump_canonical(complex_to_json(res.complex,
                                                   incomplete.empty() ? nullptr : &incomplete)));
    if (res.action)
        write_text_file(prefix + ".action.json", dump_canonical(action_to_json(*res.action)));
    std::cout << "vertices " << res.complex.num_vertices() << ", edges "
              << res.complex.num_edges() << ", faces " << res.complex.num_faces()
              << (res.truncated ? " (ball radius " + std::to_string(res.radius) + ")" : "")
              << "\n";
    return 0;
}

int cmd_check(const std::string& complex_path, const std::string& rotation_path,
              const std::string& action_path, const std::string& format, bool timing) {
    auto t0 = std::chrono::steady_clock::now();
    std::string digest_input = slurp(complex_path) + slurp(rotation_path);
    std::set<Id> incomplete;
    TwoComplex x = complex_from_json(load_json_file(complex_path), &incomplete);
    RotationSystem rot = rotation_from_json(load_json_file(rotation_path), x);
    std::optional<CellularAction> action;
    if (!action_path.empty()) {
        digest_input += slurp(action_path);
        action = action_from_json(load_json_file(action_path));
    }
    CheckReport rep = run_check(x, rot, action, incomplete);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (format == "json") {
        nlohmann::json j = check_report_to_json(rep, "check", fnv1a_hex(digest_input),
                                                timing ? std::optional<double>(ms) : std::nullopt);
        std::cout << dump_canonical(j);
    } else {
        std::cout << check_report_to_text(rep);
        if (timing) std::cout << "time: " << ms << " ms\n";
    }
    return rep.verdict_negative() ? 1 : 0;
}

int cmd_transform(const std::string& which, const std::vector<std::string>& files,
                  std::optional<Id> pineapple_vertex, const std::string& out_path) {
    if (which == "subdivide") {
        if (files.size() != 1) throw InputError("subdivide takes one complex file");
        TwoComplex x = complex_from_json(load_json_file(files[0]));
        emit(out_path, complex_to_json(barycentric_subdivision(x)));
        return 0;
    }
    if (which == "fatten") {
        if (files.size() == 1) {
            PlaneGraph g = plane_graph_from_json(load_json_file(files[0]));
            PlaneGraph fat = fatten_plane_graph(g);
            emit(out_path, plane_graph_to_json(fat));
            std::cout << "vertices " << fat.graph.num_vertices << ", edges "
                      << fat.graph.edges.size() << "\n";
            return 0;
        }
        if (files.size() == 2) {
            TwoComplex x = complex_from_json(load_json_file(files[0]));
            RotationSystem rot = rotation_from_json(load_json_file(files[1]), x);
            FattenResult res = fatten_complex(x, rot);
            emit(out_path, complex_to_json(res.complex));
            if (!out_path.empty())
                write_text_file(out_path + ".rotation.json",
                                dump_canonical(rotation_to_json(res.rotation)));
            return 0;
        }
        throw InputError("fatten takes a plane-graph file, or a complex and a rotation file");
    }
    if (which == "flag") {
        if (files.size() != 2) throw InputError("flag takes a complex and a rotation file");
        TwoComplex x = complex_from_json(load_json_file(files[0]));
        RotationSystem rot = rotation_from_json(load_json_file(files[1]), x);
        FlagComplexResult res = pineapple_vertex ? pineapple(x, rot, *pineapple_vertex)
                                                 : flag_complex(x, rot);
        emit(out_path, complex_to_json(res.complex));
        std::cout << "flags " << res.complex.num_vertices() << ", edges "
                  << res.complex.num_edges() << ", faces " << res.complex.num_faces() << "\n";
        return 0;
    }
    if (which == "contract") {
        if (files.size() != 2) throw InputError("contract takes a complex and an action file");
        TwoComplex x = complex_from_json(load_json_file(files[0]));
        CellularAction action = action_from_json(load_json_file(files[1]));
        BabaiResult res = babai_contract(x, action);
        emit(out_path, complex_to_json(res.contracted));
        ActionCheck ac = verify_action(res.contracted, res.contracted_action);
        std::cout << "blocks " << res.contracted.num_vertices() << ", edges "
                  << res.contracted.num_edges() << ", regular on vertices: "
                  << (ac.regular_on_vertices() ? "yes" : "no") << "\n";
        return 0;
    }
    throw InputError("unknown transform: " + which);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Cayley complexes: builders, checkers, transformations"};
    app.require_subcommand(1);

    std::string grp_path, model_kind = "auto", out_prefix;
    std::optional<std::size_t> radius;
    bool doubled = false, duplicate_faces = false;
    CLI::App* build = app.add_subcommand("build", "build a Cayley complex from a .grp file");
    build->add_option("presentation", grp_path, "presentation file (.grp)")->required();
    build->add_option("--model", model_kind, "model kind: auto|coset|matrix");
    build->add_option("--radius", radius, "ball radius for infinite models");
    build->add_option("--out", out_prefix, "output file prefix");
    build->add_flag("--doubled-involutions", doubled,
                    "two parallel edges per involution generator");
    build->add_flag("--duplicate-faces", duplicate_faces,
                    "one face per relator walk instead of per boundary circuit");

    std::string complex_path, rotation_path, action_path, format = "text";
    bool timing = false;
    CLI::App* check = app.add_subcommand("check", "check planarity, invariance, pre-chambers");
    check->add_option("complex", complex_path, "complex JSON")->required();
    check->add_option("rotation", rotation_path, "rotation JSON")->required();
    check->add_option("action", action_path, "action JSON (optional)");
    check->add_option("--format", format, "output format: text|json");
    check->add_flag("--timing", timing, "include timing (omitted by default for byte-stable output)");

    std::string which, out_path;
    std::vector<std::string> files;
    std::optional<Id> pineapple_vertex;
    CLI::App* transform =
        app.add_subcommand("transform", "subdivide | fatten | flag | contract");
    transform->add_option("which", which, "transformation name")->required();
    transform->add_option("files", files, "input files")->required();
    transform->add_option("--pineapple", pineapple_vertex,
                          "restrict the flag complex to one vertex");
    transform->add_option("--out", out_path, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed())
            return cmd_build(grp_path, model_kind, radius, out_prefix, doubled, duplicate_faces);
        if (check->parsed()) return cmd_check(complex_path, rotation_path, action_path, format, timing);
        if (transform->parsed()) return cmd_transform(which, files, pineapple_vertex, out_path);
    } catch (const InconclusiveEnumeration& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const InfiniteOrUnknown& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TransportConflict& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
