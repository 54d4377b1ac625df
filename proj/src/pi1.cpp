#include "cayley3/pi1.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace cayley3 {

std::string to_string(Pi1Verdict v) {
    switch (v) {
        case Pi1Verdict::TrivialCertified: return "trivial-certified";
        case Pi1Verdict::NontrivialCertified: return "nontrivial-certified";
        default: return "unknown";
    }
}

// ---------------------------------------------------------------------------
// Tietze simplification

namespace {

Word canonical_cyclic(const Word& w) {
    // Minimal rotation among rotations of w and of its inverse.
    Word best;
    bool first = true;
    for (const Word* cand : {&w, static_cast<const Word*>(nullptr)}) {
        Word base = cand ? *cand : w.inverted();
        std::size_t k = base.letters.size();
        for (std::size_t s = 0; s < k; ++s) {
            Word rot;
            for (std::size_t i = 0; i < k; ++i) rot.letters.push_back(base.letters[(s + i) % k]);
            if (first || rot < best) {
                best = rot;
                first = false;
            }
        }
    }
    return best;
}

/// Remove generator `g` (known equal to `value` over the remaining generators)
/// by substitution; `value` must not mention g.
void substitute_generator(Presentation& p, std::uint32_t g, const Word& value) {
    for (Word& r : p.relators) {
        Word out;
        for (const Letter& l : r.letters) {
            if (l.gen == g) {
                Word v = l.inverse ? value.inverted() : value;
                for (const Letter& vl : v.letters) out.letters.push_back(vl);
            } else {
                out.letters.push_back(l);
            }
        }
        out.free_reduce();
        r = std::move(out);
    }
    // Reindex: drop g from the generator list.
    p.generators.erase(p.generators.begin() + g);
    for (Word& r : p.relators)
        for (Letter& l : r.letters)
            if (l.gen > g) --l.gen;
}

}  // namespace

void tietze_simplify(Presentation& p, const TietzeOptions& opts) {
    std::size_t moves = 0;
    bool changed = true;
    while (changed && moves < opts.move_budget) {
        changed = false;

        // Reduce, drop empties, deduplicate up to rotation and inversion.
        for (Word& r : p.relators) r.cyclic_reduce();
        std::set<Word> seen;
        std::vector<Word> kept;
        for (Word& r : p.relators) {
            if (r.empty()) continue;
            Word key = canonical_cyclic(r);
            if (seen.insert(key).second) kept.push_back(std::move(r));
        }
        if (kept.size() != p.relators.size()) changed = true;
        p.relators = std::move(kept);

        // Occurrence counts per generator.
        std::vector<std::size_t> occurrences(p.generators.size(), 0);
        for (const Word& r : p.relators)
            for (const Letter& l : r.letters) occurrences[l.gen]++;

        // Length-1 relator: the generator is trivial.
        for (std::size_t i = 0; i < p.relators.size() && !changed; ++i)
            if (p.relators[i].size() == 1) {
                std::uint32_t g = p.relators[i].letters[0].gen;
                p.relators.erase(p.relators.begin() + i);
                substitute_generator(p, g, Word{});
                changed = true;
            }
        if (changed) {
            ++moves;
            continue;
        }

        // Length-2 relator on two distinct generators: eliminate one.
        for (std::size_t i = 0; i < p.relators.size() && !changed; ++i) {
            const Word& r = p.relators[i];
            if (r.size() == 2 && r.letters[0].gen != r.letters[1].gen) {
                // x^s y^t = 1  =>  y = x^{-s t}
                Letter x = r.letters[0], y = r.letters[1];
                int s = x.inverse ? -1 : 1, t = y.inverse ? -1 : 1;
                Word value;
                value.letters.push_back(Letter(x.gen, -s * t < 0));
                std::uint32_t g = y.gen;
                p.relators.erase(p.relators.begin() + i);
                substitute_generator(p, g, value);
                changed = true;
            }
        }
        if (changed) {
            ++moves;
            continue;
        }

        // A generator whose total occurrence count is one: the relator
        // containing it defines it, and nothing else mentions it.
        for (std::uint32_t g = 0; g < p.generators.size() && !changed; ++g) {
            if (occurrences[g] != 1) continue;
            for (std::size_t i = 0; i < p.relators.size(); ++i) {
                bool mentions = false;
                for (const Letter& l : p.relators[i].letters)
                    if (l.gen == g) mentions = true;
                if (!mentions) continue;
                p.relators.erase(p.relators.begin() + i);
                substitute_generator(p, g, Word{});  // occurrences elsewhere: none
                changed = true;
                break;
            }
        }
        if (changed) ++moves;

        for (const Word& r : p.relators)
            if (r.size() > opts.max_relator_length) return;
    }
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<mpz_class> smith_normal_form_diagonal(std::vector<std::vector<mpz_class>> m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::vector<mpz_class> diag;
    std::size_t r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // Find a nonzero pivot of minimal absolute value.
        std::size_t pr = rows, pc = cols;
        mpz_class best;
        for (std::size_t i = r0; i < rows; ++i)
            for (std::size_t j = c0; j < cols; ++j)
                if (m[i][j] != 0) {
                    mpz_class a = abs(m[i][j]);
                    if (pr == rows || a < best) {
                        best = a;
                        pr = i;
                        pc = j;
                    }
                }
        if (pr == rows) break;  // all zero
        std::swap(m[r0], m[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = r0 + 1; i < rows; ++i)
                if (m[i][c0] != 0) {
                    mpz_class q = m[i][c0] / m[r0][c0];
                    for (std::size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
                    if (m[i][c0] != 0) {
                        std::swap(m[r0], m[i]);
                        clean = false;
                    }
                }
            for (std::size_t j = c0 + 1; j < cols; ++j)
                if (m[r0][j] != 0) {
                    mpz_class q = m[r0][j] / m[r0][c0];
                    for (std::size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
                    if (m[r0][j] != 0) {
                        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][j]);
                        clean = false;
                    }
                }
        }
        diag.push_back(abs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    // Enforce the divisibility chain d1 | d2 | ...
    for (bool fixed = false; !fixed;) {
        fixed = true;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i + 1] % diag[i] != 0) {
                mpz_class g, l;
                mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[i + 1].get_mpz_t());
                l = diag[i] / g * diag[i + 1];
                diag[i] = g;
                diag[i + 1] = l;
                fixed = false;
            }
        }
    }
    return diag;
}

std::string Abelianization::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const mpz_class& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    if (free_rank > 0) {
        if (!first) os << " + ";
        os << "Z^" << free_rank;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Abelianization abelianization(const Presentation& p) {
    Abelianization ab;
    std::size_t g = p.generators.size();
    if (g == 0) return ab;
    std::vector<std::vector<mpz_class>> m(p.relators.size(), std::vector<mpz_class>(g, 0));
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        for (const Letter& l : p.relators[i].letters) m[i][l.gen] += l.inverse ? -1 : 1;
    std::vector<mpz_class> diag = smith_normal_form_diagonal(std::move(m));
    std::size_t rank = 0;
    for (const mpz_class& d : diag)
        if (d != 0) {
            ++rank;
            if (d > 1) ab.torsion.push_back(d);
        }
    ab.free_rank = g - rank;
    return ab;
}

// ---------------------------------------------------------------------------

Pi1Presentation pi1_presentation(const TwoComplex& x, const TietzeOptions& opts) {
    if (!x.connected()) throw InputError("pi1_presentation requires a connected complex");

    Pi1Presentation out;
    if (x.num_vertices() == 0) {
        out.verdict = Pi1Verdict::TrivialCertified;
        return out;
    }

    // Breadth-first spanning tree over the 1-skeleton, edges in id order.
    Skeleton sk = skeleton_of(x);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(sk.graph.num_vertices);
    for (std::uint32_t e = 0; e < sk.graph.edges.size(); ++e) {
        auto [u, v] = sk.graph.edges[e];
        adj[u].emplace_back(e, v);
        adj[v].emplace_back(e, u);
    }
    std::set<Id> tree_edges;
    std::vector<bool> seen(sk.graph.num_vertices, false);
    std::deque<std::uint32_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
        std::uint32_t u = q.front();
        q.pop_front();
        for (auto [e, v] : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                tree_edges.insert(sk.edge_ids[e]);
                q.push_back(v);
            }
    }

    std::map<Id, std::uint32_t> gen_of_edge;
    for (const auto& [e, uv] : x.edges())
        if (!tree_edges.count(e)) {
            gen_of_edge[e] = static_cast<std::uint32_t>(out.presentation.generators.size());
            out.presentation.generators.push_back("e" + std::to_string(e));
        }

    for (const auto& [f, w] : x.faces()) {
        Word r;
        for (const Dedge& d : w.steps) {
            auto it = gen_of_edge.find(d.edge);
            if (it != gen_of_edge.end()) r.letters.push_back(Letter(it->second, d.rev));
        }
        r.free_reduce();
        if (!r.empty()) out.presentation.relators.push_back(std::move(r));
    }

    tietze_simplify(out.presentation, opts);

    if (out.presentation.generators.empty()) {
        out.verdict = Pi1Verdict::TrivialCertified;
        return out;
    }
    Abelianization ab = abelianization(out.presentation);
    if (!ab.trivial()) {
        out.verdict = Pi1Verdict::NontrivialCertified;
        out.witness = "abelianization " + ab.describe();
        return out;
    }
    out.verdict = Pi1Verdict::Unknown;
    return out;
}

}  // namespace cayley3
