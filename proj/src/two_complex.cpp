#include "cayley3/two_complex.hpp"

#include <algorithm>
#include <set>

namespace cayley3 {

void TwoComplex::add_vertex(Id v) {
    if (vertex_set_.emplace(v, true).second) {
        vertices_.insert(std::lower_bound(vertices_.begin(), vertices_.end(), v), v);
    }
}

void TwoComplex::add_edge(Id e, Id u, Id v) {
    if (!has_vertex(u) || !has_vertex(v)) throw InputError("edge references a missing vertex");
    if (!edges_.emplace(e, std::array<Id, 2>{u, v}).second)
        throw InputError("duplicate edge id " + std::to_string(e));
}

void TwoComplex::add_face(Id f, FaceWalk walk) {
    if (walk.steps.empty()) throw InputError("face walk must be nonempty");
    for (std::size_t i = 0; i < walk.steps.size(); ++i) {
        const Dedge& d = walk.steps[i];
        if (!has_edge(d.edge)) throw InputError("face walk references a missing edge");
        const Dedge& next = walk.steps[(i + 1) % walk.steps.size()];
        if (head(d) != tail(next)) throw InputError("face walk is not closed");
    }
    // Store the lexicographically minimal rotation so that walk positions,
    // and with them rotation-system slots, are canonical across rebuilds.
    std::size_t k = walk.steps.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < k; ++s) {
        for (std::size_t i = 0; i < k; ++i) {
            const Dedge& a = walk.steps[(s + i) % k];
            const Dedge& b = walk.steps[(best + i) % k];
            if (a < b) {
                best = s;
                break;
            }
            if (b < a) break;
        }
    }
    if (best != 0) {
        std::vector<Dedge> rotated;
        rotated.reserve(k);
        for (std::size_t i = 0; i < k; ++i) rotated.push_back(walk.steps[(best + i) % k]);
        walk.steps = std::move(rotated);
    }
    if (!faces_.emplace(f, std::move(walk)).second)
        throw InputError("duplicate face id " + std::to_string(f));
}

const std::array<Id, 2>& TwoComplex::ends(Id e) const {
    auto it = edges_.find(e);
    if (it == edges_.end()) throw InputError("unknown edge id " + std::to_string(e));
    return it->second;
}

const FaceWalk& TwoComplex::walk(Id f) const {
    auto it = faces_.find(f);
    if (it == faces_.end()) throw InputError("unknown face id " + std::to_string(f));
    return it->second;
}

long TwoComplex::euler_characteristic() const {
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
           static_cast<long>(num_faces());
}

void TwoComplex::validate() const {
    for (const auto& [e, uv] : edges_)
        if (!has_vertex(uv[0]) || !has_vertex(uv[1]))
            throw InputError("edge " + std::to_string(e) + " references a missing vertex");
    for (const auto& [f, w] : faces_) {
        if (w.steps.empty()) throw InputError("face " + std::to_string(f) + " has an empty walk");
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            if (!has_edge(w.steps[i].edge))
                throw InputError("face " + std::to_string(f) + " references a missing edge");
            if (head(w.steps[i]) != tail(w.steps[(i + 1) % w.steps.size()]))
                throw InputError("face " + std::to_string(f) + " walk is not closed");
        }
    }
}

bool TwoComplex::face_is_edge_regular(Id f) const {
    const FaceWalk& w = walk(f);
    std::set<Id> seen;
    for (const Dedge& d : w.steps)
        if (!seen.insert(d.edge).second) return false;
    return true;
}

bool TwoComplex::face_is_regular(Id f) const {
    if (!face_is_edge_regular(f)) return false;
    const FaceWalk& w = walk(f);
    std::set<Id> seen;
    for (const Dedge& d : w.steps)
        if (!seen.insert(tail(d)).second) return false;
    return true;
}

bool TwoComplex::is_edge_regular() const {
    for (const auto& [f, w] : faces_)
        if (!face_is_edge_regular(f)) return false;
    return true;
}

bool TwoComplex::is_regular() const {
    for (const auto& [f, w] : faces_)
        if (!face_is_regular(f)) return false;
    return true;
}

bool TwoComplex::is_simplicial() const {
    if (!is_regular()) return false;
    std::set<std::pair<Id, Id>> seen;
    for (const auto& [e, uv] : edges_) {
        if (uv[0] == uv[1]) return false;  // loop
        auto key = std::minmax(uv[0], uv[1]);
        if (!seen.insert(key).second) return false;  // parallel edge
    }
    for (const auto& [f, w] : faces_)
        if (w.steps.size() != 3) return false;
    return true;
}

bool TwoComplex::connected() const {
    return skeleton_of(*this).graph.connected();
}

Id TwoComplex::fresh_vertex_id() const {
    return vertices_.empty() ? 0 : vertices_.back() + 1;
}
Id TwoComplex::fresh_edge_id() const {
    return edges_.empty() ? 0 : edges_.rbegin()->first + 1;
}
Id TwoComplex::fresh_face_id() const {
    return faces_.empty() ? 0 : faces_.rbegin()->first + 1;
}

FaceWalk reversed_walk(const FaceWalk& w) {
    FaceWalk out;
    out.steps.reserve(w.steps.size());
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
        out.steps.push_back(it->reversed());
    return out;
}

bool cyclically_equal(const FaceWalk& a, const FaceWalk& b) {
    if (a.steps.size() != b.steps.size()) return false;
    std::size_t k = a.steps.size();
    for (std::size_t shift = 0; shift < k; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            if (!(a.steps[i] == b.steps[(i + shift) % k])) ok = false;
        if (ok) return true;
    }
    return false;
}

std::vector<Dedge> canonical_circuit(const FaceWalk& w) {
    std::vector<Dedge> best;
    bool first = true;
    for (const FaceWalk* cand : {&w, static_cast<const FaceWalk*>(nullptr)}) {
        FaceWalk base = cand ? *cand : reversed_walk(w);
        std::size_t k = base.steps.size();
        for (std::size_t s = 0; s < k; ++s) {
            std::vector<Dedge> rot;
            rot.reserve(k);
            for (std::size_t i = 0; i < k; ++i) rot.push_back(base.steps[(s + i) % k]);
            if (first || rot < best) {
                best = std::move(rot);
                first = false;
            }
        }
    }
    return best;
}

bool operator==(const TwoComplex& a, const TwoComplex& b) {
    if (a.vertices_ != b.vertices_ || a.edges_ != b.edges_) return false;
    if (a.faces_.size() != b.faces_.size()) return false;
    for (const auto& [f, w] : a.faces_) {
        auto it = b.faces_.find(f);
        if (it == b.faces_.end() || !cyclically_equal(w, it->second)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

std::uint32_t LinkGraph::vertex_of(Id edge, std::uint8_t end) const {
    for (std::uint32_t i = 0; i < vertex_labels.size(); ++i)
        if (vertex_labels[i].first == edge && vertex_labels[i].second == end) return i;
    throw InputError("no link vertex for that edge end");
}

LinkGraph link_graph(const TwoComplex& x, Id v) {
    if (!x.has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v));
    LinkGraph link;
    std::map<std::pair<Id, std::uint8_t>, std::uint32_t> index;
    for (const auto& [e, uv] : x.edges())
        for (std::uint8_t end : {0, 1})
            if (uv[end] == v) {
                index[{e, end}] = static_cast<std::uint32_t>(link.vertex_labels.size());
                link.vertex_labels.emplace_back(e, end);
                link.graph.add_vertex();
            }
    for (const auto& [f, w] : x.faces()) {
        std::size_t k = w.steps.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (x.tail(w.steps[i]) != v) continue;
            const Dedge& arrive = w.steps[(i + k - 1) % k];
            const Dedge& depart = w.steps[i];
            std::uint8_t arrive_end = arrive.rev ? 0 : 1;
            std::uint8_t depart_end = depart.rev ? 1 : 0;
            std::uint32_t a = index.at({arrive.edge, arrive_end});
            std::uint32_t b = index.at({depart.edge, depart_end});
            link.edge_labels.emplace_back(f, static_cast<std::uint32_t>(i));
            link.graph.add_edge(a, b);
        }
    }
    return link;
}

// ---------------------------------------------------------------------------

TwoComplex barycentric_subdivision(const TwoComplex& x) {
    TwoComplex out;
    for (Id v : x.vertices()) out.add_vertex(v);

    Id next_vertex = x.fresh_vertex_id();
    std::map<Id, Id> midpoint;
    // Half-edge ids per original edge: halves[e] = {u->m, m->v}.
    std::map<Id, std::array<Id, 2>> halves;
    Id next_edge = 0;
    for (const auto& [e, uv] : x.edges()) {
        Id m = next_vertex++;
        midpoint[e] = m;
        out.add_vertex(m);
        Id h1 = next_edge++;
        Id h2 = next_edge++;
        out.add_edge(h1, uv[0], m);
        out.add_edge(h2, m, uv[1]);
        halves[e] = {h1, h2};
    }

    Id next_face = 0;
    for (const auto& [f, w] : x.faces()) {
        Id centre = next_vertex++;
        out.add_vertex(centre);
        // Subdivided boundary walk: two steps per original step.
        std::vector<Dedge> boundary;
        for (const Dedge& d : w.steps) {
            const auto& h = halves.at(d.edge);
            if (!d.rev) {
                boundary.emplace_back(h[0], false);  // u -> m
                boundary.emplace_back(h[1], false);  // m -> v
            } else {
                boundary.emplace_back(h[1], true);  // v -> m
                boundary.emplace_back(h[0], true);  // m -> u
            }
        }
        // One spoke per boundary position (per occurrence, so chi is preserved).
        std::size_t n = boundary.size();
        std::vector<Id> spokes(n);
        for (std::size_t i = 0; i < n; ++i) {
            Id sp = next_edge++;
            out.add_edge(sp, centre, out.tail(boundary[i]));
            spokes[i] = sp;
        }
        for (std::size_t i = 0; i < n; ++i) {
            FaceWalk tri;
            tri.steps.emplace_back(spokes[i], false);           // centre -> x_i
            tri.steps.push_back(boundary[i]);                   // x_i -> x_{i+1}
            tri.steps.emplace_back(spokes[(i + 1) % n], true);  // x_{i+1} -> centre
            out.add_face(next_face++, std::move(tri));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

LocalConnectivityReport is_locally_k_connected(const TwoComplex& x, std::size_t k) {
    LocalConnectivityReport rep;
    for (Id v : x.vertices()) {
        LinkGraph link = link_graph(x, v);
        if (!is_k_connected(link.graph, k)) {
            rep.ok = false;
            rep.failing_vertex = v;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

Skeleton skeleton_of(const TwoComplex& x) {
    Skeleton s;
    for (Id v : x.vertices()) {
        s.vertex_index[v] = static_cast<std::uint32_t>(s.vertex_ids.size());
        s.vertex_ids.push_back(v);
        s.graph.add_vertex();
    }
    for (const auto& [e, uv] : x.edges()) {
        s.edge_index[e] = static_cast<std::uint32_t>(s.edge_ids.size());
        s.edge_ids.push_back(e);
        s.graph.add_edge(s.vertex_index.at(uv[0]), s.vertex_index.at(uv[1]));
    }
    return s;
}

}  // namespace cayley3
