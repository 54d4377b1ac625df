#include "cayley3/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cayley3 {

using nlohmann::json;

namespace {

/// The alternating [v,e,v,e,...] list; walks are stored pre-canonicalized.
std::vector<Id> walk_as_list(const TwoComplex& x, const FaceWalk& w) {
    std::vector<Id> flat;
    for (const Dedge& d : w.steps) {
        flat.push_back(x.tail(d));
        flat.push_back(d.edge);
    }
    return flat;
}

}  // namespace

json complex_to_json(const TwoComplex& x, const std::set<Id>* incomplete_edges) {
    json j;
    j["vertices"] = x.vertices();
    json edges = json::array();
    for (const auto& [e, uv] : x.edges())
        edges.push_back({{"id", e}, {"ends", {uv[0], uv[1]}}});
    j["edges"] = std::move(edges);
    json faces = json::array();
    for (const auto& [f, w] : x.faces())
        faces.push_back({{"id", f}, {"walk", walk_as_list(x, w)}});
    j["faces"] = std::move(faces);
    if (incomplete_edges && !incomplete_edges->empty())
        j["incomplete_edges"] = *incomplete_edges;
    return j;
}

TwoComplex complex_from_json(const json& j, std::set<Id>* incomplete_edges) {
    TwoComplex x;
    if (!j.contains("vertices") || !j.contains("edges") || !j.contains("faces"))
        throw InputError("complex JSON needs vertices, edges and faces");
    for (const auto& v : j.at("vertices")) x.add_vertex(v.get<Id>());
    for (const auto& e : j.at("edges"))
        x.add_edge(e.at("id").get<Id>(), e.at("ends").at(0).get<Id>(), e.at("ends").at(1).get<Id>());
    for (const auto& f : j.at("faces")) {
        const auto& flat = f.at("walk");
        if (flat.size() % 2 != 0 || flat.empty())
            throw InputError("face walk must alternate vertex and edge ids");
        std::size_t k = flat.size() / 2;
        FaceWalk w;
        for (std::size_t i = 0; i < k; ++i) {
            Id v = flat.at(2 * i).get<Id>();
            Id e = flat.at(2 * i + 1).get<Id>();
            Id vn = flat.at((2 * i + 2) % (2 * k)).get<Id>();
            if (!x.has_edge(e)) throw InputError("face walk references a missing edge");
            const auto& uv = x.ends(e);
            bool rev;
            if (uv[0] == v && uv[1] == vn)
                rev = false;
            else if (uv[1] == v && uv[0] == vn)
                rev = true;
            else if (uv[0] == uv[1] && v == uv[0] && vn == uv[0])
                rev = false;  // loop: forward by convention
            else
                throw InputError("face walk does not follow edge " + std::to_string(e));
            w.steps.emplace_back(e, rev);
        }
        x.add_face(f.at("id").get<Id>(), std::move(w));
    }
    if (incomplete_edges) {
        incomplete_edges->clear();
        if (j.contains("incomplete_edges"))
            for (const auto& e : j.at("incomplete_edges")) incomplete_edges->insert(e.get<Id>());
    }
    x.validate();
    return x;
}

namespace {

std::string dedge_key(Dedge d) {
    return "e" + std::to_string(d.edge) + (d.rev ? "-" : "+");
}

std::vector<FaceSlot> minimal_rotation(const std::vector<FaceSlot>& v) {
    std::vector<FaceSlot> best = v;
    for (std::size_t s = 1; s < v.size(); ++s) {
        std::vector<FaceSlot> rot;
        for (std::size_t i = 0; i < v.size(); ++i) rot.push_back(v[(s + i) % v.size()]);
        if (rot < best) best = rot;
    }
    return best;
}

}  // namespace

json rotation_to_json(const RotationSystem& r) {
    json rot = json::object();
    for (const auto& [d, order] : r.all()) {
        json list = json::array();
        for (const FaceSlot& s : minimal_rotation(order)) list.push_back({s.face, s.occ});
        rot[dedge_key(d)] = std::move(list);
    }
    return json{{"rotations", std::move(rot)}};
}

RotationSystem rotation_from_json(const json& j, const TwoComplex& x) {
    RotationSystem r;
    if (!j.contains("rotations")) throw InputError("rotation JSON needs a rotations object");
    for (const auto& [key, list] : j.at("rotations").items()) {
        if (key.size() < 3 || key.front() != 'e' || (key.back() != '+' && key.back() != '-'))
            throw InputError("bad directed-edge key: " + key);
        Id e = 0;
        try {
            std::size_t used = 0;
            std::string digits = key.substr(1, key.size() - 2);
            e = static_cast<Id>(std::stoul(digits, &used));
            if (used != digits.size()) throw InputError("bad directed-edge key: " + key);
        } catch (const std::logic_error&) {
            throw InputError("bad directed-edge key: " + key);
        }
        Dedge d(e, key.back() == '-');
        std::vector<FaceSlot> order;
        for (const auto& s : list)
            order.emplace_back(s.at(0).get<Id>(), s.at(1).get<std::uint32_t>());
        r.set(d, std::move(order));
    }
    r.validate(x);
    return r;
}

json action_to_json(const CellularAction& a) {
    json gens = json::array();
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
        const CellPerm& p = a.generators[i];
        json g;
        g["name"] = i < a.generator_names.size() ? a.generator_names[i]
                                                 : "g" + std::to_string(i);
        json vs = json::array(), es = json::array(), fs = json::array();
        for (const auto& [x, y] : p.vertices) vs.push_back({x, y});
        for (const auto& [x, y] : p.edges) es.push_back({x, y});
        for (const auto& [x, y] : p.faces) fs.push_back({x, y});
        g["vertices"] = std::move(vs);
        g["edges"] = std::move(es);
        g["faces"] = std::move(fs);
        gens.push_back(std::move(g));
    }
    json rels = json::array();
    Presentation helper;
    helper.generators = a.generator_names;
    for (const Word& r : a.relators) rels.push_back(helper.word_to_string(r));
    return json{{"generators", std::move(gens)}, {"relators", std::move(rels)}};
}

CellularAction action_from_json(const json& j) {
    CellularAction a;
    for (const auto& g : j.at("generators")) {
        a.generator_names.push_back(g.at("name").get<std::string>());
        CellPerm p;
        for (const auto& pr : g.at("vertices")) p.vertices[pr.at(0).get<Id>()] = pr.at(1).get<Id>();
        for (const auto& pr : g.at("edges")) p.edges[pr.at(0).get<Id>()] = pr.at(1).get<Id>();
        if (g.contains("faces"))
            for (const auto& pr : g.at("faces")) p.faces[pr.at(0).get<Id>()] = pr.at(1).get<Id>();
        a.generators.push_back(std::move(p));
    }
    if (j.contains("relators"))
        for (const auto& r : j.at("relators"))
            a.relators.push_back(parse_word(r.get<std::string>(), a.generator_names));
    return a;
}

json plane_graph_to_json(const PlaneGraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.graph.edges) edges.push_back({u, v});
    json rots = json::array();
    for (const auto& cyc : g.rotation.rotations) {
        json one = json::array();
        for (const Dart& d : cyc) one.push_back({d.edge, d.side});
        rots.push_back(std::move(one));
    }
    return json{{"vertex_count", g.graph.num_vertices},
                {"edges", std::move(edges)},
                {"rotations", std::move(rots)}};
}

PlaneGraph plane_graph_from_json(const json& j) {
    Multigraph g;
    std::size_t n = j.at("vertex_count").get<std::size_t>();
    for (std::size_t i = 0; i < n; ++i) g.add_vertex();
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
    GraphRotation rot;
    for (const auto& cyc : j.at("rotations")) {
        std::vector<Dart> one;
        for (const auto& d : cyc)
            one.push_back(Dart{d.at(0).get<std::uint32_t>(),
                               static_cast<std::uint8_t>(d.at(1).get<unsigned>())});
        rot.rotations.push_back(std::move(one));
    }
    return make_plane_graph(std::move(g), std::move(rot));
}

json slice_pattern_to_json(const SlicePattern& p) {
    json earcs = json::array(), varcs = json::array();
    for (auto [a, b] : p.edge_arcs) earcs.push_back({a, b});
    for (auto [a, b] : p.vertex_arcs) varcs.push_back({a, b});
    return json{{"n", p.n},
                {"boundary_points", p.boundary_points()},
                {"edge_arcs", std::move(earcs)},
                {"vertex_arcs", std::move(varcs)}};
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::parse_error& e) {
        throw InputError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << content;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace cayley3
