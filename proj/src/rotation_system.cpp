#include "cayley3/rotation_system.hpp"

#include <algorithm>
#include <deque>

namespace cayley3 {

std::vector<FaceSlot> slots_of_edge(const TwoComplex& x, Id e) {
    std::vector<FaceSlot> out;
    for (const auto& [f, w] : x.faces())
        for (std::size_t i = 0; i < w.steps.size(); ++i)
            if (w.steps[i].edge == e) out.emplace_back(f, static_cast<std::uint32_t>(i));
    return out;
}

bool cyclic_equal(const std::vector<FaceSlot>& a, const std::vector<FaceSlot>& b) {
    if (a.size() != b.size()) return false;
    std::size_t k = a.size();
    if (k == 0) return true;
    for (std::size_t s = 0; s < k; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            if (!(a[i] == b[(i + s) % k])) ok = false;
        if (ok) return true;
    }
    return false;
}

std::vector<FaceSlot> reversed_slots(const std::vector<FaceSlot>& s) {
    return std::vector<FaceSlot>(s.rbegin(), s.rend());
}

RotationSystem RotationSystem::from_forward_orders(
    const TwoComplex& x, const std::map<Id, std::vector<FaceSlot>>& forward) {
    RotationSystem rs;
    for (const auto& [e, order] : forward) {
        if (order.empty()) continue;
        rs.rot_[Dedge(e, false)] = order;
        rs.rot_[Dedge(e, true)] = reversed_slots(order);
    }
    rs.validate(x);
    return rs;
}

const std::vector<FaceSlot>& RotationSystem::at(Dedge d) const {
    auto it = rot_.find(d);
    if (it == rot_.end()) throw InputError("no rotation entry for that directed edge");
    return it->second;
}

void RotationSystem::set(Dedge d, std::vector<FaceSlot> order) { rot_[d] = std::move(order); }

void RotationSystem::validate(const TwoComplex& x) const {
    for (const auto& [e, uv] : x.edges()) {
        std::vector<FaceSlot> expect = slots_of_edge(x, e);
        for (bool rev : {false, true}) {
            Dedge d(e, rev);
            if (expect.empty()) {
                if (rot_.count(d))
                    throw InputError("rotation lists an edge with no incident faces");
                continue;
            }
            auto it = rot_.find(d);
            if (it == rot_.end()) throw InputError("rotation misses a directed edge with faces");
            std::vector<FaceSlot> got = it->second;
            std::sort(got.begin(), got.end());
            if (got != expect)
                throw InputError("rotation at edge " + std::to_string(e) +
                                 " does not list its slots exactly once");
        }
        if (!expect.empty()) {
            if (!cyclic_equal(at(Dedge(e, true)), reversed_slots(at(Dedge(e, false)))))
                throw InputError("reversal constraint violated at edge " + std::to_string(e));
        }
    }
    for (const auto& [d, order] : rot_)
        if (!x.has_edge(d.edge)) throw InputError("rotation references a missing edge");
}

std::size_t RotationSystem::index_of(Dedge d, FaceSlot s) const {
    const auto& order = at(d);
    for (std::size_t i = 0; i < order.size(); ++i)
        if (order[i] == s) return i;
    throw InputError("slot not present in the rotation at that edge");
}

bool operator==(const RotationSystem& a, const RotationSystem& b) {
    if (a.rot_.size() != b.rot_.size()) return false;
    for (const auto& [d, order] : a.rot_) {
        auto it = b.rot_.find(d);
        if (it == b.rot_.end() || !cyclic_equal(order, it->second)) return false;
    }
    return true;
}

RotationSystem unique_rotation_system(const TwoComplex& x) {
    std::map<Id, std::vector<FaceSlot>> forward;
    for (const auto& [e, uv] : x.edges()) {
        std::vector<FaceSlot> slots = slots_of_edge(x, e);
        if (slots.size() > 2)
            throw InputError("edge " + std::to_string(e) +
                             " lies in more than two faces; the rotation system is not unique");
        if (!slots.empty()) forward[e] = slots;
    }
    return RotationSystem::from_forward_orders(x, forward);
}

// ---------------------------------------------------------------------------

InducedLinkRotation induced_link_rotation(const TwoComplex& x, const RotationSystem& rot, Id v) {
    rot.validate(x);
    InducedLinkRotation out;
    out.link = link_graph(x, v);
    out.rotation.rotations.resize(out.link.graph.num_vertices);

    // corner label -> dense link edge index
    std::map<std::pair<Id, std::uint32_t>, std::uint32_t> corner_index;
    for (std::uint32_t i = 0; i < out.link.edge_labels.size(); ++i)
        corner_index[out.link.edge_labels[i]] = i;

    for (std::uint32_t lv = 0; lv < out.link.vertex_labels.size(); ++lv) {
        auto [e, end] = out.link.vertex_labels[lv];
        Dedge d(e, end == 1);  // leaves v through this end
        if (!rot.has(d)) continue;  // edge without faces: isolated link vertex
        for (const FaceSlot& s : rot.at(d)) {
            const FaceWalk& w = x.walk(s.face);
            const Dedge& step = w.steps.at(s.occ);
            std::uint8_t tail_end = step.rev ? 1 : 0;
            Dart dart{};
            if (step.edge == e && tail_end == end && x.tail(step) == v) {
                // departs v through this end: the corner before the step
                dart.edge = corner_index.at({s.face, s.occ});
                dart.side = 1;  // corner was added as (arrival, departure)
            } else {
                // arrives at v through this end: the corner after the step
                std::uint32_t next = static_cast<std::uint32_t>((s.occ + 1) % w.steps.size());
                dart.edge = corner_index.at({s.face, next});
                dart.side = 0;
            }
            out.rotation.rotations[lv].push_back(dart);
        }
    }
    if (!valid_rotation(out.link.graph, out.rotation))
        throw InputError("induced link rotation is not a rotation system (invalid input rotation)");
    return out;
}

PlanarityReport is_planar_rotation_system(const TwoComplex& x, const RotationSystem& rot) {
    PlanarityReport rep;
    rep.planar = true;
    for (Id v : x.vertices()) {
        InducedLinkRotation ind = induced_link_rotation(x, rot, v);
        long genus = total_genus(ind.link.graph, ind.rotation);
        rep.genus_by_vertex[v] = genus;
        if (genus != 0 && rep.planar) {
            rep.planar = false;
            rep.failing_vertex = v;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

FaceSlot map_slot(const TwoComplex& x, const CellPerm& p, Id image_edge, FaceSlot s) {
    Id imf = p.f(s.face);
    const FaceWalk& w = x.walk(imf);
    std::uint32_t found = UINT32_MAX;
    for (std::uint32_t i = 0; i < w.steps.size(); ++i)
        if (w.steps[i].edge == image_edge) {
            if (found != UINT32_MAX)
                throw InputError("slot mapping requires edge-regular faces");
            found = i;
        }
    if (found == UINT32_MAX) throw InputError("image face does not traverse the image edge");
    return FaceSlot(imf, found);
}

namespace {

std::vector<FaceSlot> map_slots(const TwoComplex& x, const CellPerm& p, Id image_edge,
                                const std::vector<FaceSlot>& order) {
    std::vector<FaceSlot> out;
    out.reserve(order.size());
    for (const FaceSlot& s : order) out.push_back(map_slot(x, p, image_edge, s));
    return out;
}

/// Solve eta over GF(2): fixed[i] in {0,1,2=free}; each relator's letters must
/// sum to 0. Returns assignment or nullopt when inconsistent.
std::optional<std::vector<std::uint8_t>> solve_eta(const std::vector<std::uint8_t>& constraint,
                                                   const std::vector<Word>& relators) {
    std::size_t n = constraint.size();
    // rows: bitmask over free vars + parity from fixed vars
    std::vector<std::pair<std::vector<std::uint8_t>, std::uint8_t>> rows;
    for (const Word& r : relators) {
        std::vector<std::uint8_t> coeff(n, 0);
        std::uint8_t rhs = 0;
        for (const Letter& l : r.letters) {
            if (constraint[l.gen] == 2)
                coeff[l.gen] ^= 1;
            else
                rhs ^= constraint[l.gen];
        }
        rows.emplace_back(std::move(coeff), rhs);
    }
    std::vector<std::uint8_t> assign(n, 0);
    for (std::size_t g = 0; g < n; ++g)
        if (constraint[g] != 2) assign[g] = constraint[g];
    // Gaussian elimination over the free variables.
    std::vector<std::size_t> pivot_of;  // row -> column
    std::size_t used_rows = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (constraint[col] != 2) continue;
        std::size_t pr = used_rows;
        while (pr < rows.size() && rows[pr].first[col] == 0) ++pr;
        if (pr == rows.size()) continue;
        std::swap(rows[used_rows], rows[pr]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != used_rows && rows[r].first[col]) {
                for (std::size_t c = 0; c < n; ++c) rows[r].first[c] ^= rows[used_rows].first[c];
                rows[r].second ^= rows[used_rows].second;
            }
        pivot_of.push_back(col);
        ++used_rows;
    }
    for (std::size_t r = used_rows; r < rows.size(); ++r)
        if (rows[r].second != 0) return std::nullopt;  // 0 = 1
    // Back-substitute: free non-pivot vars default to 0.
    for (std::size_t r = 0; r < used_rows; ++r) {
        std::uint8_t val = rows[r].second;
        for (std::size_t c = 0; c < n; ++c)
            if (c != pivot_of[r] && rows[r].first[c]) val ^= assign[c];
        assign[pivot_of[r]] = val;
    }
    return assign;
}

}  // namespace

InvarianceCertificate check_invariance(const TwoComplex& x, const RotationSystem& rot,
                                       const CellularAction& action) {
    rot.validate(x);
    if (!x.is_edge_regular())
        throw InputError("invariance checking requires an edge-regular complex");
    ActionCheck ac = verify_action(x, action);
    if (!ac.is_action) throw InputError("not an action: " + ac.failure);

    InvarianceCertificate cert;
    std::vector<std::uint8_t> constraint(action.generators.size(), 2);  // 2 = unconstrained
    for (std::size_t gi = 0; gi < action.generators.size(); ++gi) {
        const CellPerm& p = action.generators[gi];
        std::vector<Dedge> votes_plus, votes_minus;
        for (const auto& [d, order] : rot.all()) {
            Dedge id_ = action.map_dedge(x, p, d);
            std::vector<FaceSlot> image = map_slots(x, p, id_.edge, order);
            bool plus = cyclic_equal(image, rot.at(id_));
            bool minus = cyclic_equal(reversed_slots(image), rot.at(id_));
            if (plus && minus) continue;  // too short to constrain
            if (!plus && !minus) {
                cert.invariant = false;
                cert.witness_generator = gi;
                cert.witness_edge = d;
                cert.detail = "generator " + std::to_string(gi) +
                              " maps no orientation of the rotation at that edge correctly";
                return cert;
            }
            (plus ? votes_plus : votes_minus).push_back(d);
        }
        if (!votes_plus.empty() && !votes_minus.empty()) {
            cert.invariant = false;
            cert.witness_generator = gi;
            cert.witness_edge = votes_plus.size() <= votes_minus.size() ? votes_plus.front()
                                                                        : votes_minus.front();
            cert.detail = "generator " + std::to_string(gi) +
                          " needs different signs at different edges";
            return cert;
        }
        if (!votes_plus.empty()) constraint[gi] = 0;
        if (!votes_minus.empty()) constraint[gi] = 1;
    }
    auto eta = solve_eta(constraint, action.relators);
    if (!eta) {
        cert.invariant = false;
        cert.detail = "edge-wise signs do not extend to a homomorphism on the relators";
        return cert;
    }
    cert.invariant = true;
    cert.eta = *eta;
    return cert;
}

// ---------------------------------------------------------------------------

RotationSystem transport_rotation(const TwoComplex& x, const CellularAction& action,
                                  const std::map<Dedge, std::vector<FaceSlot>>& seeds,
                                  const std::vector<std::uint8_t>& eta) {
    if (!x.is_edge_regular())
        throw InputError("transport requires an edge-regular complex");
    ActionCheck ac = verify_action(x, action);
    if (!ac.is_action) throw InputError("not an action: " + ac.failure);
    if (eta.size() != action.generators.size())
        throw InputError("eta must assign a sign to every generator");
    for (const Word& r : action.relators) {
        std::uint8_t sum = 0;
        for (const Letter& l : r.letters) sum ^= eta[l.gen];
        if (sum != 0) throw InputError("eta does not respect the relators");
    }

    // Verify the seeds and start the closure from them.
    std::map<Dedge, std::vector<FaceSlot>> assigned;
    std::deque<Dedge> queue;
    for (const auto& [d, order] : seeds) {
        std::vector<FaceSlot> expect = slots_of_edge(x, d.edge);
        std::vector<FaceSlot> got = order;
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        if (got != expect || expect.empty())
            throw InputError("seed does not list the slots of its edge exactly once");
        assigned[d] = order;
        queue.push_back(d);
    }

    auto offer = [&](Dedge d, std::vector<FaceSlot> order, const char* via) {
        auto it = assigned.find(d);
        if (it == assigned.end()) {
            assigned.emplace(d, std::move(order));
            queue.push_back(d);
            return;
        }
        if (!cyclic_equal(it->second, order))
            throw TransportConflict(std::string("transport conflict via ") + via + " at edge " +
                                    std::to_string(d.edge));
    };

    while (!queue.empty()) {
        Dedge d = queue.front();
        queue.pop_front();
        std::vector<FaceSlot> order = assigned.at(d);
        // reversal
        offer(d.reversed(), reversed_slots(order), "reversal");
        // generators, both directions
        for (std::size_t gi = 0; gi < action.generators.size(); ++gi) {
            const CellPerm& p = action.generators[gi];
            Dedge imaged = action.map_dedge(x, p, d);
            std::vector<FaceSlot> image = map_slots(x, p, imaged.edge, order);
            if (eta[gi]) image = reversed_slots(image);
            offer(imaged, std::move(image), "a generator");
            // inverse generator
            CellPerm ip;
            for (const auto& [a, b] : p.vertices) ip.vertices[b] = a;
            for (const auto& [a, b] : p.edges) ip.edges[b] = a;
            for (const auto& [a, b] : p.faces) ip.faces[b] = a;
            Dedge imaged2 = action.map_dedge(x, ip, d);
            std::vector<FaceSlot> image2 = map_slots(x, ip, imaged2.edge, order);
            if (eta[gi]) image2 = reversed_slots(image2);
            offer(imaged2, std::move(image2), "an inverse generator");
        }
    }

    // Every directed edge with faces must now be covered.
    RotationSystem rs;
    for (const auto& [e, uv] : x.edges()) {
        if (slots_of_edge(x, e).empty()) continue;
        for (bool rev : {false, true}) {
            auto it = assigned.find(Dedge(e, rev));
            if (it == assigned.end())
                throw InputError("seeds do not cover the orbit of edge " + std::to_string(e));
            rs.set(Dedge(e, rev), it->second);
        }
    }
    rs.validate(x);

    // Seeds must sit in distinct orbits: re-derive orbits and count.
    {
        std::map<Dedge, std::size_t> orbit;
        std::size_t orbits = 0;
        for (const auto& [e, uv] : x.edges()) {
            if (slots_of_edge(x, e).empty()) continue;
            for (bool rev : {false, true}) {
                Dedge d0(e, rev);
                if (orbit.count(d0)) continue;
                std::deque<Dedge> q{d0};
                orbit[d0] = orbits;
                while (!q.empty()) {
                    Dedge d = q.front();
                    q.pop_front();
                    auto visit = [&](Dedge nd) {
                        if (!orbit.count(nd)) {
                            orbit[nd] = orbits;
                            q.push_back(nd);
                        }
                    };
                    visit(d.reversed());
                    for (const CellPerm& p : action.generators) {
                        visit(action.map_dedge(x, p, d));
                        CellPerm ip;
                        for (const auto& [a, b] : p.vertices) ip.vertices[b] = a;
                        for (const auto& [a, b] : p.edges) ip.edges[b] = a;
                        for (const auto& [a, b] : p.faces) ip.faces[b] = a;
                        visit(action.map_dedge(x, ip, d));
                    }
                }
                ++orbits;
            }
        }
        std::set<std::size_t> seeded;
        for (const auto& [d, order] : seeds) {
            if (!seeded.insert(orbit.at(d)).second)
                throw InputError("two seeds lie in the same orbit");
        }
        if (seeded.size() != orbits)
            throw InputError("seeds do not cover every orbit of directed edges");
    }
    return rs;
}

}  // namespace cayley3
