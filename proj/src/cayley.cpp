#include "cayley3/cayley.hpp"

#include <algorithm>
#include <deque>

namespace cayley3 {

// ---------------------------------------------------------------------------
// CellPerm

CellPerm CellPerm::compose(const CellPerm& then) const {
    CellPerm out;
    for (const auto& [a, b] : vertices) out.vertices[a] = then.vertices.at(b);
    for (const auto& [a, b] : edges) out.edges[a] = then.edges.at(b);
    for (const auto& [a, b] : faces) out.faces[a] = then.faces.at(b);
    return out;
}

bool CellPerm::is_identity() const {
    for (const auto& [a, b] : vertices)
        if (a != b) return false;
    for (const auto& [a, b] : edges)
        if (a != b) return false;
    for (const auto& [a, b] : faces)
        if (a != b) return false;
    return true;
}

bool operator<(const CellPerm& a, const CellPerm& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    if (a.edges != b.edges) return a.edges < b.edges;
    return a.faces < b.faces;
}

namespace {

CellPerm identity_perm(const TwoComplex& x) {
    CellPerm p;
    for (Id v : x.vertices()) p.vertices[v] = v;
    for (const auto& [e, uv] : x.edges()) p.edges[e] = e;
    for (const auto& [f, w] : x.faces()) p.faces[f] = f;
    return p;
}

CellPerm invert_perm(const CellPerm& p) {
    CellPerm out;
    for (const auto& [a, b] : p.vertices) out.vertices[b] = a;
    for (const auto& [a, b] : p.edges) out.edges[b] = a;
    for (const auto& [a, b] : p.faces) out.faces[b] = a;
    return out;
}

}  // namespace

CellPerm CellularAction::perm_for_word(const Word& w) const {
    if (generators.empty()) throw InputError("action has no generators");
    // Left action: rho(l1 l2 ... lk) = rho(l1) o ... o rho(lk), last letter first.
    CellPerm acc;
    for (const auto& [a, b] : generators.front().vertices) acc.vertices[a] = a;
    for (const auto& [a, b] : generators.front().edges) acc.edges[a] = a;
    for (const auto& [a, b] : generators.front().faces) acc.faces[a] = a;
    for (const Letter& l : w.letters) {
        const CellPerm& g = generators.at(l.gen);
        acc = (l.inverse ? invert_perm(g) : g).compose(acc);
    }
    return acc;
}

CellPerm CellularAction::perm_for_element(Elem g) const {
    if (!model) throw InputError("action carries no group model");
    return perm_for_word(model->word_for(g));
}

Dedge CellularAction::map_dedge(const TwoComplex& x, const CellPerm& p, Dedge d) const {
    const auto& uv = x.ends(d.edge);
    Id ie = p.e(d.edge);
    const auto& iuv = x.ends(ie);
    if (uv[0] == uv[1]) return Dedge(ie, d.rev);  // loop keeps its flag
    Id it = p.v(x.tail(d));
    if (iuv[0] == it) return Dedge(ie, false);
    if (iuv[1] == it) return Dedge(ie, true);
    throw InputError("cell permutation does not preserve edge incidence");
}

std::vector<CellPerm> CellularAction::element_perms(const TwoComplex& x) const {
    std::vector<CellPerm> out;
    if (model && model->finite_certified()) {
        for (Elem g : model->enumerate()) out.push_back(perm_for_element(g));
        return out;
    }
    // Closure of the generator permutations.
    std::set<CellPerm> seen;
    std::deque<CellPerm> q;
    CellPerm id = identity_perm(x);
    seen.insert(id);
    q.push_back(id);
    out.push_back(id);
    while (!q.empty()) {
        CellPerm cur = q.front();
        q.pop_front();
        for (const CellPerm& g : generators) {
            CellPerm next = cur.compose(g);
            if (seen.insert(next).second) {
                out.push_back(next);
                q.push_back(next);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

bool is_bijection(const std::map<Id, Id>& m, const std::vector<Id>& domain) {
    if (m.size() != domain.size()) return false;
    std::set<Id> image;
    for (Id v : domain) {
        auto it = m.find(v);
        if (it == m.end()) return false;
        image.insert(it->second);
    }
    for (Id v : domain)
        if (!image.count(v)) return false;
    return true;
}

}  // namespace

ActionCheck verify_action(const TwoComplex& x, const CellularAction& a) {
    ActionCheck res;
    std::vector<Id> edge_ids, face_ids;
    for (const auto& [e, uv] : x.edges()) edge_ids.push_back(e);
    for (const auto& [f, w] : x.faces()) face_ids.push_back(f);

    for (std::size_t gi = 0; gi < a.generators.size(); ++gi) {
        const CellPerm& p = a.generators[gi];
        if (!is_bijection(p.vertices, x.vertices()) || !is_bijection(p.edges, edge_ids) ||
            !is_bijection(p.faces, face_ids)) {
            res.failure = "generator " + std::to_string(gi) + " is not a cell bijection";
            return res;
        }
        for (const auto& [e, uv] : x.edges()) {
            const auto& iuv = x.ends(p.e(e));
            Id mu = p.v(uv[0]), mv = p.v(uv[1]);
            if (!((iuv[0] == mu && iuv[1] == mv) || (iuv[0] == mv && iuv[1] == mu))) {
                res.failure = "generator " + std::to_string(gi) + " breaks ends of edge " +
                              std::to_string(e);
                return res;
            }
        }
        for (const auto& [f, w] : x.faces()) {
            FaceWalk image;
            for (const Dedge& d : w.steps) image.steps.push_back(a.map_dedge(x, p, d));
            const FaceWalk& target = x.walk(p.f(f));
            if (!cyclically_equal(image, target) &&
                !cyclically_equal(reversed_walk(image), target)) {
                res.failure = "generator " + std::to_string(gi) + " breaks the walk of face " +
                              std::to_string(f);
                return res;
            }
        }
    }

    for (const Word& r : a.relators)
        if (!a.perm_for_word(r).is_identity()) {
            res.failure = "a relator does not act as the identity";
            return res;
        }
    res.is_action = true;

    // Transitivity: orbit of the least vertex under the generators.
    if (!x.vertices().empty()) {
        std::set<Id> orbit{x.vertices().front()};
        std::deque<Id> q{x.vertices().front()};
        while (!q.empty()) {
            Id v = q.front();
            q.pop_front();
            for (const CellPerm& g : a.generators) {
                for (Id w : {g.v(v), invert_perm(g).v(v)})
                    if (orbit.insert(w).second) q.push_back(w);
            }
        }
        res.transitive_on_vertices = orbit.size() == x.vertices().size();
    } else {
        res.transitive_on_vertices = true;
    }

    // Freeness: no non-identity element fixes a vertex.
    res.free_on_vertices = true;
    for (const CellPerm& p : a.element_perms(x)) {
        if (p.is_identity()) continue;
        for (const auto& [v, w] : p.vertices)
            if (v == w) {
                res.free_on_vertices = false;
                break;
            }
        if (!res.free_on_vertices) break;
    }
    // Distinct elements with identical permutations also break freeness.
    if (res.free_on_vertices && a.model && a.model->finite_certified()) {
        std::set<CellPerm> distinct;
        std::size_t n = 0;
        for (Elem g : a.model->enumerate()) {
            distinct.insert(a.perm_for_element(g));
            ++n;
        }
        if (distinct.size() != n) res.free_on_vertices = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Cayley graph / complex construction

namespace {

struct BuildState {
    std::shared_ptr<const GroupModel> model;
    std::vector<std::size_t> gens;
    bool doubled = false;

    std::vector<Elem> elements;      // vertex id -> element
    std::map<Elem, Id> vid_of;       // element -> vertex id
    std::map<std::pair<Id, Id>, Id> edge_of_pair;          // simplified edges
    std::map<std::pair<Id, std::size_t>, Id> edge_of_dart;  // doubled involution edges
    std::set<std::size_t> involution_gens;

    bool in_ball(Elem e) const { return vid_of.count(e) > 0; }

    /// The walk step leaving vertex v along one letter; requires the head to
    /// be in the ball.
    Dedge step(const TwoComplex& cx, Id v, Letter l, Id head_vid) const {
        bool known = false;
        for (std::size_t g : gens)
            if (g == l.gen) known = true;
        if (!known) throw InputError("relator uses a generator outside the edge set");
        if (doubled && involution_gens.count(l.gen)) {
            // Each tail owns one copy of the doubled pair.
            return Dedge(edge_of_dart.at({v, l.gen}), false);
        }
        auto key = std::minmax(v, head_vid);
        Id e = edge_of_pair.at({key.first, key.second});
        const auto& uv = cx.ends(e);
        if (uv[0] == uv[1]) return Dedge(e, false);  // loop: canonical direction
        return Dedge(e, uv[0] != v);
    }
};

}  // namespace

CayleyComplexResult build_cayley_graph(std::shared_ptr<const GroupModel> model,
                                       const CayleyOptions& opts) {
    CayleyComplexResult out;
    BuildState st;
    st.model = model;
    st.doubled = opts.doubled_involutions;
    st.gens = opts.gens;
    if (st.gens.empty())
        for (std::size_t i = 0; i < model->generator_count(); ++i) st.gens.push_back(i);

    bool finite = model->finite_certified();
    if (!finite && !opts.radius)
        throw InputError("a radius is required for models that cannot certify finiteness");
    if (finite && !model->generates(st.gens))
        throw NotGenerating("the chosen generators do not generate the group");

    if (finite && !opts.radius) {
        // Element handles are dense 0..n-1; they double as vertex ids.
        st.elements = model->enumerate();
    } else {
        st.elements = model->ball(st.gens, *opts.radius);
        out.truncated = true;
        out.radius = *opts.radius;
    }

    for (std::size_t i = 0; i < st.elements.size(); ++i) {
        st.vid_of[st.elements[i]] = static_cast<Id>(i);
        out.complex.add_vertex(static_cast<Id>(i));
    }

    for (std::size_t gi : st.gens) {
        Elem g = model->generator(gi);
        Elem g2 = model->multiply(g, g);
        if (g2 == model->identity() && !(g == model->identity())) st.involution_gens.insert(gi);
    }

    std::size_t S = st.gens.size();
    for (Id v = 0; v < st.elements.size(); ++v) {
        for (std::size_t si = 0; si < S; ++si) {
            Elem y = model->apply_letter(st.elements[v], Letter(static_cast<std::uint32_t>(st.gens[si]), false));
            if (!st.in_ball(y)) continue;
            Id w = st.vid_of.at(y);
            Id eid = static_cast<Id>(v * S + si);
            if (st.doubled && st.involution_gens.count(st.gens[si])) {
                st.edge_of_dart[{v, st.gens[si]}] = eid;
                out.complex.add_edge(eid, v, w);
            } else {
                auto key = std::minmax(v, w);
                if (st.edge_of_pair.count({key.first, key.second})) continue;
                st.edge_of_pair[{key.first, key.second}] = eid;
                out.complex.add_edge(eid, v, w);
            }
        }
    }

    out.elements = st.elements;

    // Canonical left action, finite untruncated builds only.
    if (finite && !out.truncated) {
        CellularAction act;
        act.model = model;
        for (std::size_t i = 0; i < model->generator_count(); ++i)
            act.generator_names.push_back(model->generator_name(i));
        if (auto cm = std::dynamic_pointer_cast<const CosetModel>(model))
            act.relators = cm->presentation().relators;
        for (std::size_t gi = 0; gi < model->generator_count(); ++gi) {
            Elem t = model->generator(gi);
            CellPerm p;
            for (Id v = 0; v < st.elements.size(); ++v)
                p.vertices[v] = st.vid_of.at(model->multiply(t, st.elements[v]));
            for (const auto& [e, uv] : out.complex.edges()) {
                // The id encodes the claimant (tail, generator position).
                Id tail = e / static_cast<Id>(S);
                std::size_t si = e % S;
                if (st.doubled && st.involution_gens.count(st.gens[si])) {
                    // A doubled copy owned by its tail maps to the copy owned by the image tail.
                    p.edges[e] = st.edge_of_dart.at({p.vertices.at(tail), st.gens[si]});
                    continue;
                }
                Id mu = p.vertices.at(uv[0]), mv = p.vertices.at(uv[1]);
                auto key = std::minmax(mu, mv);
                p.edges[e] = st.edge_of_pair.at({key.first, key.second});
            }
            act.generators.push_back(std::move(p));
        }
        out.action = std::move(act);
    }
    return out;
}

CayleyComplexResult build_cayley_complex(std::shared_ptr<const GroupModel> model,
                                         const Presentation& p, const CayleyOptions& opts) {
    p.validate();
    if (p.generators.size() != model->generator_count())
        throw InputError("presentation generators do not match the model");
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        if (p.generators[i] != model->generator_name(i))
            throw InputError("presentation generator order does not match the model");
    CayleyComplexResult out = build_cayley_graph(model, opts);

    BuildState st;
    st.model = model;
    st.doubled = opts.doubled_involutions;
    st.gens = opts.gens;
    if (st.gens.empty())
        for (std::size_t i = 0; i < model->generator_count(); ++i) st.gens.push_back(i);
    st.elements = out.elements;
    for (Id v = 0; v < st.elements.size(); ++v) st.vid_of[st.elements[v]] = v;
    for (std::size_t gi : st.gens) {
        Elem g = model->generator(gi);
        if (model->multiply(g, g) == model->identity() && !(g == model->identity()))
            st.involution_gens.insert(gi);
    }
    // Recover the edge maps from the built complex.
    std::size_t S = st.gens.size();
    for (const auto& [e, uv] : out.complex.edges()) {
        Id tail = static_cast<Id>(e / S);
        std::size_t si = e % S;
        if (st.doubled && st.involution_gens.count(st.gens[si]))
            st.edge_of_dart[{tail, st.gens[si]}] = e;
        else {
            auto key = std::minmax(uv[0], uv[1]);
            st.edge_of_pair[{key.first, key.second}] = e;
        }
    }

    std::size_t R = p.relators.size();
    std::map<std::vector<Dedge>, Id> face_of_circuit;
    for (Id v = 0; v < st.elements.size(); ++v) {
        for (std::size_t ri = 0; ri < R; ++ri) {
            const Word& r = p.relators[ri];
            FaceWalk walk;
            Elem cur = st.elements[v];
            Id cur_vid = v;
            bool inside = true;
            for (const Letter& l : r.letters) {
                Elem next = model->apply_letter(cur, l);
                if (!st.in_ball(next)) {
                    inside = false;
                    break;
                }
                Id next_vid = st.vid_of.at(next);
                walk.steps.push_back(st.step(out.complex, cur_vid, l, next_vid));
                cur = next;
                cur_vid = next_vid;
            }
            if (!inside) continue;
            if (!(cur_vid == v))
                throw InputError("relator walk not closed: the model does not satisfy relator " +
                                 std::to_string(ri));
            Id fid = static_cast<Id>(v * R + ri);
            if (opts.duplicate_faces) {
                out.complex.add_face(fid, std::move(walk));
                continue;
            }
            std::vector<Dedge> circuit = canonical_circuit(walk);
            if (face_of_circuit.count(circuit)) continue;
            face_of_circuit[circuit] = fid;
            out.complex.add_face(fid, std::move(walk));
        }
    }

    // Extend the action to faces.
    if (out.action) {
        for (std::size_t gi = 0; gi < out.action->generators.size(); ++gi) {
            CellPerm& perm = out.action->generators[gi];
            for (const auto& [f, w] : out.complex.faces()) {
                Id base = static_cast<Id>(f / R);
                std::size_t ri = f % R;
                Id ibase = perm.vertices.at(base);
                // Rebuild the image walk from the translated base vertex.
                FaceWalk iwalk;
                Elem cur = st.elements[ibase];
                Id cur_vid = ibase;
                for (const Letter& l : p.relators[ri].letters) {
                    Elem next = model->apply_letter(cur, l);
                    Id next_vid = st.vid_of.at(next);
                    iwalk.steps.push_back(st.step(out.complex, cur_vid, l, next_vid));
                    cur = next;
                    cur_vid = next_vid;
                }
                if (opts.duplicate_faces) {
                    perm.faces[f] = static_cast<Id>(ibase * R + ri);
                } else {
                    perm.faces[f] = face_of_circuit.at(canonical_circuit(iwalk));
                }
            }
        }
        out.action->relators = p.relators;
    }

    // Star-complete edges of a truncated build: every relator walk that
    // traverses the edge stays inside the ball, so no face at the edge is
    // missing and the rotation there is the full one.
    if (out.truncated) {
        for (const auto& [e, uv] : out.complex.edges()) {
            Elem u_el = st.elements[uv[0]], v_el = st.elements[uv[1]];
            bool complete = true;
            for (std::size_t ri = 0; ri < R && complete; ++ri) {
                const Word& r = p.relators[ri];
                for (std::size_t pos = 0; pos < r.letters.size() && complete; ++pos) {
                    const Letter l = r.letters[pos];
                    for (const auto& [from, to] : {std::pair(u_el, v_el), std::pair(v_el, u_el)}) {
                        // the walk traverses e at this position iff step pos
                        // runs from one endpoint to the other
                        if (!(model->apply_letter(from, l) == to)) continue;
                        Word prefix;
                        prefix.letters.assign(r.letters.begin(), r.letters.begin() + pos);
                        Elem base = from;
                        for (const Letter& pl : prefix.inverted().letters)
                            base = model->apply_letter(base, pl);
                        Elem cur = base;
                        bool walk_inside = st.in_ball(cur);
                        for (const Letter& wl : r.letters) {
                            if (!walk_inside) break;
                            cur = model->apply_letter(cur, wl);
                            if (!st.in_ball(cur)) walk_inside = false;
                        }
                        if (!walk_inside) {
                            complete = false;
                            break;
                        }
                    }
                }
            }
            if (complete) out.star_complete_edges.insert(e);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

GeneralizedCayleyCertificate verify_generalized_cayley(const TwoComplex& x,
                                                       const CellularAction& a) {
    GeneralizedCayleyCertificate cert;
    cert.action_check = verify_action(x, a);
    if (!cert.action_check.is_action)
        throw InputError("not an action: " + cert.action_check.failure);
    cert.pi1 = pi1_presentation(x);
    return cert;
}

CellularAction action_from_vertex_maps(const TwoComplex& x,
                                       std::shared_ptr<const GroupModel> model,
                                       const std::vector<std::string>& names,
                                       const std::vector<std::map<Id, Id>>& vertex_maps,
                                       std::vector<Word> relators) {
    CellularAction act;
    act.model = std::move(model);
    act.generator_names = names;
    act.relators = std::move(relators);
    for (const auto& vmap : vertex_maps) {
        CellPerm p;
        p.vertices = vmap;
        for (const auto& [e, uv] : x.edges()) {
            Id mu = vmap.at(uv[0]), mv = vmap.at(uv[1]);
            Id image = 0;
            std::size_t hits = 0;
            for (const auto& [e2, uv2] : x.edges())
                if ((uv2[0] == mu && uv2[1] == mv) || (uv2[0] == mv && uv2[1] == mu)) {
                    image = e2;
                    ++hits;
                }
            if (hits != 1)
                throw InputError("vertex map does not determine the image of edge " +
                                 std::to_string(e));
            p.edges[e] = image;
        }
        for (const auto& [f, w] : x.faces()) {
            FaceWalk iwalk;
            for (const Dedge& d : w.steps) iwalk.steps.push_back(act.map_dedge(x, p, d));
            Id image = 0;
            std::size_t hits = 0;
            for (const auto& [f2, w2] : x.faces())
                if (cyclically_equal(iwalk, w2) || cyclically_equal(reversed_walk(iwalk), w2)) {
                    image = f2;
                    ++hits;
                }
            if (hits != 1)
                throw InputError("vertex map does not determine the image of face " +
                                 std::to_string(f));
            p.faces[f] = image;
        }
        act.generators.push_back(std::move(p));
    }
    return act;
}

}  // namespace cayley3
