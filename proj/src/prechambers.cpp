#include "cayley3/prechambers.hpp"

#include <algorithm>
#include <numeric>

namespace cayley3 {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

PreChamberPartition prechambers_truncated(const TwoComplex& x, const RotationSystem& rot,
                                          const std::set<Id>& complete_edges) {
    rot.validate(x);
    if (!x.is_edge_regular()) throw InputError("pre-chamber tracing requires an edge-regular complex");

    // Dense index per directed face.
    std::vector<Dface> dfaces;
    std::map<Id, std::size_t> face_pos;  // index of (f, false)
    for (const auto& [f, w] : x.faces()) {
        face_pos[f] = dfaces.size();
        dfaces.emplace_back(f, false);
        dfaces.emplace_back(f, true);
    }
    auto index_of = [&](Dface df) { return face_pos.at(df.face) + (df.rev ? 1 : 0); };

    UnionFind uf(dfaces.size());
    std::vector<bool> touches_incomplete(dfaces.size(), false);

    for (const auto& [f, w] : x.faces()) {
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            const Dedge forward = w.steps[i];
            FaceSlot slot(f, static_cast<std::uint32_t>(i));
            for (bool face_rev : {false, true}) {
                Dface df(f, face_rev);
                Dedge traversed = face_rev ? forward.reversed() : forward;
                if (!complete_edges.count(traversed.edge)) {
                    touches_incomplete[index_of(df)] = true;
                    continue;
                }
                const auto& order = rot.at(traversed);
                std::size_t pos = rot.index_of(traversed, slot);
                const FaceSlot& next = order[(pos + 1) % order.size()];
                // Orient the successor so it traverses the reversed direction.
                const Dedge& succ_step = x.walk(next.face).steps.at(next.occ);
                Dface succ;
                if (succ_step == traversed.reversed())
                    succ = Dface(next.face, false);
                else if (succ_step == traversed)
                    succ = Dface(next.face, true);
                else
                    throw std::logic_error("rotation slot does not traverse its edge");
                uf.unite(index_of(df), index_of(succ));
            }
        }
    }

    PreChamberPartition part;
    std::map<std::size_t, std::size_t> class_index;
    for (std::size_t i = 0; i < dfaces.size(); ++i) {
        std::size_t root = uf.find(i);
        auto [it, fresh] = class_index.emplace(root, part.classes.size());
        if (fresh) part.classes.emplace_back();
        PreChamberClass& cls = part.classes[it->second];
        cls.members.push_back(dfaces[i]);
        if (touches_incomplete[i]) cls.status = ClassStatus::BoundaryUnresolved;
        for (const Dedge& d : x.walk(dfaces[i].face).steps) cls.incident_edges.insert(d.edge);
        part.class_of[dfaces[i]] = it->second;
    }
    // Order classes by minimal member; rebuild the index map.
    std::sort(part.classes.begin(), part.classes.end(),
              [](const PreChamberClass& a, const PreChamberClass& b) {
                  return a.members.front() < b.members.front();
              });
    part.class_of.clear();
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
        std::sort(part.classes[c].members.begin(), part.classes[c].members.end());
        for (const Dface& df : part.classes[c].members) part.class_of[df] = c;
    }
    return part;
}

PreChamberPartition prechambers(const TwoComplex& x, const RotationSystem& rot) {
    std::set<Id> all;
    for (const auto& [e, uv] : x.edges()) all.insert(e);
    return prechambers_truncated(x, rot, all);
}

TightComponents tight_components(const PreChamberPartition& p, const TwoComplex& x) {
    TightComponents out;
    UnionFind uf(p.classes.size());
    for (const auto& [f, w] : x.faces()) {
        std::size_t a = p.class_of.at(Dface(f, false));
        std::size_t b = p.class_of.at(Dface(f, true));
        if (a != b) {
            out.adjacent.insert({std::min(a, b), std::max(a, b)});
            uf.unite(a, b);
        }
    }
    std::map<std::size_t, std::size_t> comp_index;
    for (std::size_t c = 0; c < p.classes.size(); ++c) {
        std::size_t root = uf.find(c);
        auto [it, fresh] = comp_index.emplace(root, out.components.size());
        if (fresh) out.components.emplace_back();
        out.components[it->second].push_back(c);
    }
    for (auto& comp : out.components) std::sort(comp.begin(), comp.end());
    return out;
}

MergeResult merge_prechambers(const TwoComplex& x, const RotationSystem& rot,
                              const std::set<Id>& faces_to_delete) {
    PreChamberPartition before = prechambers(x, rot);
    for (Id f : faces_to_delete) {
        if (!x.has_face(f)) throw InputError("unknown face id " + std::to_string(f));
        if (before.class_of.at(Dface(f, false)) == before.class_of.at(Dface(f, true)))
            throw InputError("face " + std::to_string(f) +
                             " is not separating: both directions lie in one pre-chamber");
    }

    MergeResult out;
    for (Id v : x.vertices()) out.complex.add_vertex(v);
    for (const auto& [e, uv] : x.edges()) out.complex.add_edge(e, uv[0], uv[1]);
    for (const auto& [f, w] : x.faces())
        if (!faces_to_delete.count(f)) out.complex.add_face(f, w);

    // Excise deleted slots; remaining cyclic orders contract in place.
    std::map<Id, std::vector<FaceSlot>> forward;
    for (const auto& [d, order] : rot.all()) {
        if (d.rev) continue;
        std::vector<FaceSlot> kept;
        for (const FaceSlot& s : order)
            if (!faces_to_delete.count(s.face)) kept.push_back(s);
        if (!kept.empty()) forward[d.edge] = std::move(kept);
    }
    out.rotation = RotationSystem::from_forward_orders(out.complex, forward);
    out.partition = prechambers(out.complex, out.rotation);
    return out;
}

// ---------------------------------------------------------------------------

FinitenessReport finiteness_on_balls(const BallBuilder& builder,
                                     const std::vector<std::size_t>& radii) {
    FinitenessReport rep;
    rep.radii = radii;

    struct Tracked {
        ClassFinitenessReport report;
        std::vector<Dface> certified_members;
        bool certified = false;
    };
    std::map<Dface, Tracked> tracked;

    for (std::size_t radius : radii) {
        BallData ball = builder(radius);
        PreChamberPartition part = prechambers_truncated(ball.complex, ball.rotation,
                                                         ball.complete_edges);
        std::size_t unresolved = 0;
        for (const PreChamberClass& cls : part.classes) {
            if (cls.status == ClassStatus::BoundaryUnresolved) ++unresolved;
        }
        rep.unresolved_per_radius.push_back(unresolved);

        // A certified class must reappear with identical membership.
        for (const auto& [key, t] : tracked) {
            if (!t.certified) continue;
            auto it = part.class_of.find(key);
            if (it == part.class_of.end() ||
                part.classes[it->second].members != t.certified_members)
                throw InputError("inconsistent nesting: a certified class changed at radius " +
                                 std::to_string(radius));
        }

        for (const PreChamberClass& cls : part.classes) {
            auto it = tracked.find(cls.key());
            if (it != tracked.end() && it->second.certified) continue;
            Tracked& t = tracked[cls.key()];
            t.report.key = cls.key();
            t.report.size = cls.members.size();
            std::size_t incomplete_touched = 0;
            for (Id e : cls.incident_edges)
                if (!ball.complete_edges.count(e)) ++incomplete_touched;
            t.report.boundary_edges = incomplete_touched;
            if (cls.status == ClassStatus::Closed) {
                t.certified = true;
                t.certified_members = cls.members;
                t.report.status = FinitenessStatus::FiniteCertified;
                t.report.certified_radius = radius;
                t.report.boundary_edges = 0;
            }
        }
    }

    for (auto& [key, t] : tracked) rep.classes.push_back(t.report);
    return rep;
}

}  // namespace cayley3
