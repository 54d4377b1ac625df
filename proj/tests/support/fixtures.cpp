#include "support/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fixtures {

FaceWalk walk_through(const TwoComplex& x, const std::vector<Id>& cycle) {
    FaceWalk w;
    std::size_t k = cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
        Id u = cycle[i], v = cycle[(i + 1) % k];
        Id found = 0;
        std::size_t hits = 0;
        for (const auto& [e, uv] : x.edges())
            if ((uv[0] == u && uv[1] == v) || (uv[0] == v && uv[1] == u)) {
                found = e;
                ++hits;
            }
        if (hits != 1) throw InputError("walk_through: edge not unique between vertices");
        w.steps.emplace_back(found, x.ends(found)[0] != u);
    }
    return w;
}

FaceSlot slot_at(const TwoComplex& x, Id f, Id e) {
    const FaceWalk& w = x.walk(f);
    for (std::uint32_t i = 0; i < w.steps.size(); ++i)
        if (w.steps[i].edge == e) return FaceSlot(f, i);
    throw InputError("slot_at: face does not traverse that edge");
}

TwoComplex tetrahedron() {
    TwoComplex x;
    for (Id v = 0; v < 4; ++v) x.add_vertex(v);
    Id e = 0;
    for (Id u = 0; u < 4; ++u)
        for (Id v = u + 1; v < 4; ++v) x.add_edge(e++, u, v);
    Id f = 0;
    for (Id skip = 0; skip < 4; ++skip) {
        std::vector<Id> tri;
        for (Id v = 0; v < 4; ++v)
            if (v != 3 - skip) tri.push_back(v);
        x.add_face(f++, walk_through(x, tri));
    }
    return x;
}

TwoComplex cube() {
    TwoComplex x;
    for (Id v = 0; v < 8; ++v) x.add_vertex(v);
    Id e = 0;
    for (Id u = 0; u < 8; ++u)
        for (int bit = 0; bit < 3; ++bit) {
            Id v = u ^ (1u << bit);
            if (u < v) x.add_edge(e++, u, v);
        }
    Id f = 0;
    for (int axis = 0; axis < 3; ++axis)
        for (Id fixed = 0; fixed < 2; ++fixed) {
            int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
            Id base = fixed << axis;
            std::vector<Id> quad{base, base | (1u << b1),
                                 base | (1u << b1) | (1u << b2), base | (1u << b2)};
            x.add_face(f++, walk_through(x, quad));
        }
    return x;
}

TwoComplex disc(std::size_t n) {
    TwoComplex x;
    for (Id v = 0; v < n; ++v) x.add_vertex(v);
    for (Id i = 0; i < n; ++i) x.add_edge(i, i, (i + 1) % n);
    std::vector<Id> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    x.add_face(0, walk_through(x, cycle));
    return x;
}

// ---------------------------------------------------------------------------

Presentation parse_presentation(const std::string& gens_line, const std::string& rels_line) {
    GroupFile gf = parse_group_file("gens: " + gens_line + "\nrels: " + rels_line + "\n");
    return gf.presentation;
}

Id TorusComplex::vertex(int i, int j) const {
    int kk = static_cast<int>(k), ll = static_cast<int>(l);
    return vertex_at.at({((i % kk) + kk) % kk, ((j % ll) + ll) % ll});
}

Id TorusComplex::square(int i, int j) const {
    int kk = static_cast<int>(k), ll = static_cast<int>(l);
    return square_at.at({((i % kk) + kk) % kk, ((j % ll) + ll) % ll});
}

Id TorusComplex::a_edge(int i, int j) const {
    Id u = vertex(i, j), v = vertex(i + 1, j);
    for (const auto& [e, uv] : built.complex.edges())
        if ((uv[0] == u && uv[1] == v) || (uv[0] == v && uv[1] == u)) return e;
    throw InputError("missing a-edge");
}

Id TorusComplex::b_edge(int i, int j) const {
    Id u = vertex(i, j), v = vertex(i, j + 1);
    for (const auto& [e, uv] : built.complex.edges())
        if ((uv[0] == u && uv[1] == v) || (uv[0] == v && uv[1] == u)) return e;
    throw InputError("missing b-edge");
}

TorusComplex torus_complex(std::size_t k, std::size_t l) {
    TorusComplex t;
    t.k = k;
    t.l = l;
    std::ostringstream rels;
    rels << "a^" << k << " b^" << l << " [a,b]";
    t.presentation = parse_presentation("a b", rels.str());
    t.model = std::make_shared<CosetModel>(t.presentation, 100000);
    t.built = build_cayley_complex(t.model, t.presentation);

    // Coordinates.
    for (int i = 0; i < static_cast<int>(k); ++i)
        for (int j = 0; j < static_cast<int>(l); ++j) {
            Word w;
            for (int s = 0; s < i; ++s) w.letters.emplace_back(0, false);
            for (int s = 0; s < j; ++s) w.letters.emplace_back(1, false);
            t.vertex_at[{i, j}] = t.model->evaluate(w).id;
        }

    // Identify faces by their vertex sets and sizes.
    for (const auto& [f, w] : t.built.complex.faces()) {
        std::set<Id> verts;
        for (const Dedge& d : w.steps) verts.insert(t.built.complex.tail(d));
        if (w.steps.size() == k && k != 4) {
            // a-polygon: all vertices share j
            for (int j = 0; j < static_cast<int>(l); ++j)
                if (verts.count(t.vertex(0, j))) {
                    bool all = true;
                    for (int i = 0; i < static_cast<int>(k); ++i)
                        if (!verts.count(t.vertex(i, j))) all = false;
                    if (all) t.a_polygon[j] = f;
                }
        }
        if (w.steps.size() == l && l != 4) {
            for (int i = 0; i < static_cast<int>(k); ++i)
                if (verts.count(t.vertex(i, 0))) {
                    bool all = true;
                    for (int j = 0; j < static_cast<int>(l); ++j)
                        if (!verts.count(t.vertex(i, j))) all = false;
                    if (all) t.b_polygon[i] = f;
                }
        }
        if (w.steps.size() == 4) {
            for (int i = 0; i < static_cast<int>(k); ++i)
                for (int j = 0; j < static_cast<int>(l); ++j) {
                    std::set<Id> corners{t.vertex(i, j), t.vertex(i + 1, j),
                                         t.vertex(i + 1, j + 1), t.vertex(i, j + 1)};
                    if (verts == corners) t.square_at[{i, j}] = f;
                }
        }
    }
    if (t.square_at.size() != k * l || t.a_polygon.size() != l || t.b_polygon.size() != k)
        throw InputError("torus fixture: face identification failed (need k,l >= 3, k,l != 4)");

    // Embedding-derived rotation: around a directed a-edge the order is
    // (square above, a-polygon, square below); around a directed b-edge it is
    // (square right, b-polygon, square left).
    const TwoComplex& cx = t.built.complex;
    std::map<Id, std::vector<FaceSlot>> forward;
    for (int i = 0; i < static_cast<int>(k); ++i)
        for (int j = 0; j < static_cast<int>(l); ++j) {
            {
                Id e = t.a_edge(i, j);
                std::vector<FaceSlot> order{slot_at(cx, t.square(i, j), e),
                                            slot_at(cx, t.a_polygon.at(j), e),
                                            slot_at(cx, t.square(i, j - 1), e)};
                if (cx.ends(e)[0] != t.vertex(i, j)) std::reverse(order.begin(), order.end());
                forward[e] = std::move(order);
            }
            {
                Id e = t.b_edge(i, j);
                std::vector<FaceSlot> order{slot_at(cx, t.square(i, j), e),
                                            slot_at(cx, t.b_polygon.at(i), e),
                                            slot_at(cx, t.square(i - 1, j), e)};
                if (cx.ends(e)[0] != t.vertex(i, j)) std::reverse(order.begin(), order.end());
                forward[e] = std::move(order);
            }
        }
    t.rotation = RotationSystem::from_forward_orders(cx, forward);
    return t;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const MatrixModel> lattice_model(std::size_t dim) {
    std::vector<RationalMatrix> gens;
    std::vector<std::string> names;
    for (std::size_t d = 0; d < dim; ++d) {
        RationalMatrix m = RationalMatrix::identity(dim + 1);
        m.entries[d * (dim + 1) + dim] = 1;  // translation by e_d
        gens.push_back(std::move(m));
        names.push_back(std::string(1, static_cast<char>('a' + d)));
    }
    return std::make_shared<MatrixModel>(std::move(gens), std::move(names));
}

Presentation lattice_presentation(std::size_t dim) {
    Presentation p;
    for (std::size_t d = 0; d < dim; ++d)
        p.generators.push_back(std::string(1, static_cast<char>('a' + d)));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = a + 1; b < dim; ++b) {
            Word w;
            w.letters.emplace_back(static_cast<std::uint32_t>(a), true);
            w.letters.emplace_back(static_cast<std::uint32_t>(b), true);
            w.letters.emplace_back(static_cast<std::uint32_t>(a), false);
            w.letters.emplace_back(static_cast<std::uint32_t>(b), false);
            p.relators.push_back(std::move(w));
        }
    return p;
}

BallData z2_ball(std::size_t radius) {
    auto model = lattice_model(2);
    CayleyOptions opts;
    opts.radius = radius;
    CayleyComplexResult res = build_cayley_complex(model, lattice_presentation(2), opts);
    BallData ball;
    ball.complex = res.complex;
    ball.rotation = unique_rotation_system(res.complex);
    ball.complete_edges = res.star_complete_edges;
    return ball;
}

CayleyComplexResult z3_ball_raw(std::size_t radius) {
    auto model = lattice_model(3);
    CayleyOptions opts;
    opts.radius = radius;
    return build_cayley_complex(model, lattice_presentation(3), opts);
}

BallData z3_ball(std::size_t radius) {
    auto model = lattice_model(3);
    CayleyOptions opts;
    opts.radius = radius;
    CayleyComplexResult res = build_cayley_complex(model, lattice_presentation(3), opts);
    BallData ball;
    ball.complex = res.complex;
    ball.complete_edges = res.star_complete_edges;

    // Coordinates per vertex.
    std::map<Id, std::array<long, 3>> coord;
    std::map<std::array<long, 3>, Id> vertex_of;
    for (std::size_t vid = 0; vid < res.elements.size(); ++vid) {
        const RationalMatrix& m = model->matrix(res.elements[vid]);
        std::array<long, 3> c{};
        for (int d = 0; d < 3; ++d) c[d] = static_cast<long>(m.entries[d * 4 + 3].get_num().get_si());
        coord[static_cast<Id>(vid)] = c;
        vertex_of[c] = static_cast<Id>(vid);
    }
    // Squares by their four corners.
    std::map<std::set<Id>, Id> face_of_corners;
    for (const auto& [f, w] : res.complex.faces()) {
        std::set<Id> vs;
        for (const Dedge& d : w.steps) vs.insert(res.complex.tail(d));
        face_of_corners[vs] = f;
    }
    auto square = [&](std::array<long, 3> p, int ax1, int ax2) -> std::optional<Id> {
        std::array<long, 3> q = p, r = p, s = p;
        q[ax1]++;
        r[ax1]++;
        r[ax2]++;
        s[ax2]++;
        std::set<Id> corners;
        for (const auto& c : {p, q, r, s}) {
            auto it = vertex_of.find(c);
            if (it == vertex_of.end()) return std::nullopt;
            corners.insert(it->second);
        }
        auto it = face_of_corners.find(corners);
        if (it == face_of_corners.end()) return std::nullopt;
        return it->second;
    };

    // Rotation around an axis edge: the four squares in rotational order.
    std::map<Id, std::vector<FaceSlot>> forward;
    for (const auto& [e, uv] : res.complex.edges()) {
        std::array<long, 3> pu = coord.at(uv[0]), pv = coord.at(uv[1]);
        int axis = -1;
        bool u_is_tail = false;
        for (int d = 0; d < 3; ++d) {
            if (pv[d] == pu[d] + 1) {
                axis = d;
                u_is_tail = true;
            }
            if (pu[d] == pv[d] + 1) {
                axis = d;
                u_is_tail = false;
            }
        }
        if (axis < 0) throw InputError("z3 fixture: edge is not an axis step");
        std::array<long, 3> tail = u_is_tail ? pu : pv;
        // Around +x: squares toward +y, +z, -y, -z; cyclically for each axis.
        int ay = (axis + 1) % 3, az = (axis + 2) % 3;
        std::array<long, 3> m1 = tail, m2 = tail;
        m1[ay]--;
        m2[az]--;
        std::vector<std::optional<Id>> around{square(tail, axis, ay), square(tail, axis, az),
                                              square(m1, axis, ay), square(m2, axis, az)};
        std::vector<FaceSlot> order;
        for (const auto& of : around)
            if (of) order.push_back(slot_at(res.complex, *of, e));
        if (order.empty()) continue;
        if (!u_is_tail) std::reverse(order.begin(), order.end());
        forward[e] = std::move(order);
    }
    ball.rotation = RotationSystem::from_forward_orders(ball.complex, forward);
    return ball;
}

// ---------------------------------------------------------------------------

std::vector<NamedPresentation> groups_up_to_12() {
    std::vector<NamedPresentation> out;
    auto add = [&](const std::string& name, const std::string& gens, const std::string& rels,
                   std::size_t order) {
        out.push_back({name, parse_presentation(gens, rels), order});
    };
    add("C3", "a", "a^3", 3);
    add("C4", "a", "a^4", 4);
    add("C2xC2", "a b", "a^2 b^2 [a,b]", 4);
    add("C5", "a", "a^5", 5);
    add("C6", "a", "a^6", 6);
    add("S3", "a b", "a^3 b^2 (a b)^2", 6);
    add("C7", "a", "a^7", 7);
    add("C8", "a", "a^8", 8);
    add("C4xC2", "a b", "a^4 b^2 [a,b]", 8);
    add("C2xC2xC2", "a b c", "a^2 b^2 c^2 [a,b] [a,c] [b,c]", 8);
    add("D4", "a b", "a^4 b^2 (a b)^2", 8);
    add("Q8", "a b", "a^4 (a^2 b^-2) (b^-1 a b a)", 8);
    add("C9", "a", "a^9", 9);
    add("C3xC3", "a b", "a^3 b^3 [a,b]", 9);
    add("C10", "a", "a^10", 10);
    add("D5", "a b", "a^5 b^2 (a b)^2", 10);
    add("C11", "a", "a^11", 11);
    add("C12", "a", "a^12", 12);
    add("C6xC2", "a b", "a^6 b^2 [a,b]", 12);
    add("D6", "a b", "a^6 b^2 (a b)^2", 12);
    add("A4", "a b", "a^3 b^2 (a b)^3", 12);
    add("Dic3", "a b", "a^6 (a^3 b^-2) (b^-1 a b a)", 12);
    return out;
}

std::vector<std::vector<Elem>> all_subgroups(const GroupModel& m) {
    std::vector<Elem> elems = m.enumerate();
    std::set<std::vector<Elem>> found;

    auto closure = [&](std::vector<Elem> seed) {
        std::set<Elem> s(seed.begin(), seed.end());
        s.insert(m.identity());
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Elem> cur(s.begin(), s.end());
            for (Elem a : cur)
                for (Elem b : cur) {
                    if (s.insert(m.multiply(a, b)).second) grew = true;
                    if (s.insert(m.inverse(a)).second) grew = true;
                }
        }
        return std::vector<Elem>(s.begin(), s.end());
    };

    found.insert(closure({}));
    for (Elem a : elems) found.insert(closure({a}));
    for (Elem a : elems)
        for (Elem b : elems) found.insert(closure({a, b}));
    // order <= 12 subgroups need at most 3 generators (C2^3)
    for (Elem a : elems)
        for (Elem b : elems)
            for (Elem c : elems)
                if (a < b && b < c) found.insert(closure({a, b, c}));
    return std::vector<std::vector<Elem>>(found.begin(), found.end());
}

// ---------------------------------------------------------------------------

namespace {

bool next_rotation_choice(std::vector<std::vector<Dart>>& rots,
                          const std::vector<std::vector<Dart>>& base) {
    // Iterate over products of permutations fixing the first dart per vertex.
    for (std::size_t v = 0; v < rots.size(); ++v) {
        if (rots[v].size() <= 2) continue;
        if (std::next_permutation(rots[v].begin() + 1, rots[v].end())) return true;
        rots[v] = base[v];
    }
    return false;
}

}  // namespace

long min_genus_over_rotations(const Multigraph& g) {
    std::vector<std::vector<Dart>> base;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v) base.push_back(darts_at(g, v));
    std::vector<std::vector<Dart>> rots = base;
    long best = LONG_MAX;
    while (true) {
        GraphRotation rot;
        rot.rotations = rots;
        best = std::min(best, trace_faces(g, rot).genus);
        if (best == 0) return 0;
        if (!next_rotation_choice(rots, base)) break;
    }
    return best;
}

PlaneGraph random_plane_graph(std::mt19937& rng, std::size_t max_vertices) {
    Multigraph g;
    g.add_vertex();
    GraphRotation rot;
    rot.rotations.resize(1);
    std::size_t target = 2 + rng() % (max_vertices - 1);
    while (g.num_vertices < target) {
        // add a leaf at a random corner
        std::uint32_t v = rng() % g.num_vertices;
        std::uint32_t w = g.add_vertex();
        std::uint32_t e = g.add_edge(v, w);
        auto& cyc = rot.rotations[v];
        std::size_t pos = cyc.empty() ? 0 : rng() % (cyc.size() + 1);
        cyc.insert(cyc.begin() + pos, Dart{e, 0});
        rot.rotations.push_back({Dart{e, 1}});
    }
    // add chords across faces
    std::size_t chords = rng() % (2 * target);
    for (std::size_t c = 0; c < chords; ++c) {
        FaceTraceResult ft = trace_faces(g, rot);
        const auto& walk = ft.face_walks[rng() % ft.face_walks.size()];
        if (walk.size() < 2) continue;
        std::size_t i = rng() % walk.size();
        std::size_t j = rng() % walk.size();
        if (i == j) continue;
        Dart di = walk[i], dj = walk[j];
        std::uint32_t u = dart_tail(g, di), w = dart_tail(g, dj);
        if (u == w) continue;  // keep the graph loop-free
        std::uint32_t e = g.add_edge(u, w);
        // insert the new darts immediately before di and dj in their rotations
        auto insert_before = [&](std::uint32_t vertex, Dart before, Dart newdart) {
            auto& cyc = rot.rotations[vertex];
            auto it = std::find(cyc.begin(), cyc.end(), before);
            cyc.insert(it, newdart);
        };
        insert_before(u, di, Dart{e, 0});
        insert_before(w, dj, Dart{e, 1});
    }
    return make_plane_graph(std::move(g), std::move(rot));
}

Multigraph complete_graph(std::size_t n) {
    Multigraph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex();
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Multigraph complete_bipartite(std::size_t a, std::size_t b) {
    Multigraph g;
    for (std::size_t i = 0; i < a + b; ++i) g.add_vertex();
    for (std::uint32_t u = 0; u < a; ++u)
        for (std::uint32_t v = 0; v < b; ++v) g.add_edge(u, static_cast<std::uint32_t>(a + v));
    return g;
}

Multigraph octahedron_graph() {
    // vertices 0..5, antipodal pairs (0,1),(2,3),(4,5); edges between
    // non-antipodal pairs
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex();
    for (std::uint32_t u = 0; u < 6; ++u)
        for (std::uint32_t v = u + 1; v < 6; ++v)
            if (!(u / 2 == v / 2)) g.add_edge(u, v);
    return g;
}

}  // namespace fixtures
