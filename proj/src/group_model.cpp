#include "cayley3/group_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <queue>
#include <set>

namespace cayley3 {

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m;
    m.n = n;
    m.entries.assign(n * n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) m.entries[i * n + i] = 1;
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
    if (n != rhs.n) throw InputError("matrix dimension mismatch");
    RationalMatrix out;
    out.n = n;
    out.entries.assign(n * n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const mpq_class& a = entries[i * n + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out.entries[i * n + j] += a * rhs.entries[k * n + j];
        }
    for (auto& e : out.entries) e.canonicalize();
    return out;
}

RationalMatrix RationalMatrix::inverse() const {
    // Gauss-Jordan over exact rationals.
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.entries[pivot * n + col] == 0) ++pivot;
        if (pivot == n) throw InputError("generator matrix is singular");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.entries[pivot * n + j], a.entries[col * n + j]);
                std::swap(inv.entries[pivot * n + j], inv.entries[col * n + j]);
            }
        mpq_class p = a.entries[col * n + col];
        for (std::size_t j = 0; j < n; ++j) {
            a.entries[col * n + j] /= p;
            inv.entries[col * n + j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            mpq_class f = a.entries[r * n + col];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.entries[r * n + j] -= f * a.entries[col * n + j];
                inv.entries[r * n + j] -= f * inv.entries[col * n + j];
            }
        }
    }
    for (auto& e : inv.entries) e.canonicalize();
    return inv;
}

bool operator<(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.n != b.n) return a.n < b.n;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        int c = cmp(a.entries[i], b.entries[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

// ---------------------------------------------------------------------------
// GroupModel shared operations

Elem GroupModel::apply_letter(Elem x, Letter l) const {
    Elem g = generator(l.gen);
    return multiply(x, l.inverse ? inverse(g) : g);
}

Elem GroupModel::evaluate(const Word& w) const {
    Elem x = identity();
    for (const Letter& l : w.letters) {
        if (l.gen >= generator_count()) throw InputError("word letter out of range");
        x = apply_letter(x, l);
    }
    return x;
}

std::vector<Elem> GroupModel::ball(const std::vector<std::size_t>& gen_subset,
                                   std::size_t radius) const {
    std::vector<std::size_t> gens = gen_subset;
    if (gens.empty())
        for (std::size_t i = 0; i < generator_count(); ++i) gens.push_back(i);

    std::vector<Elem> frontier{identity()};
    std::set<Elem> seen{identity()};
    std::vector<Elem> out{identity()};
    for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
        std::vector<Elem> next;
        for (Elem x : frontier)
            for (std::size_t g : gens)
                for (bool inv : {false, true}) {
                    Elem y = apply_letter(x, Letter(static_cast<std::uint32_t>(g), inv));
                    if (seen.insert(y).second) {
                        next.push_back(y);
                        out.push_back(y);
                    }
                }
        frontier = std::move(next);
    }
    return out;
}

bool GroupModel::generates(const std::vector<std::size_t>& gen_subset) const {
    if (!finite_certified()) return true;  // trusted for non-certifying kinds
    std::size_t order = enumerate().size();
    std::vector<Elem> b = ball(gen_subset, order);  // diameter <= order
    return b.size() == order;
}

namespace {

/// Breadth-first representative words over the model's generators.
/// reached[x] is false for elements the generators do not reach.
std::vector<Word> bfs_words(const GroupModel& m, std::size_t order, std::vector<bool>& reached) {
    std::vector<Word> words(order);
    reached.assign(order, false);
    std::deque<Elem> q;
    q.push_back(m.identity());
    reached[m.identity().id] = true;
    while (!q.empty()) {
        Elem x = q.front();
        q.pop_front();
        for (std::size_t g = 0; g < m.generator_count(); ++g)
            for (bool inv : {false, true}) {
                Letter l(static_cast<std::uint32_t>(g), inv);
                Elem y = m.apply_letter(x, l);
                if (!reached.at(y.id)) {
                    reached[y.id] = true;
                    words[y.id] = words[x.id];
                    words[y.id].letters.push_back(l);
                    q.push_back(y);
                }
            }
    }
    return words;
}

}  // namespace

// ---------------------------------------------------------------------------
// TableModel

TableModel::TableModel(std::vector<std::uint32_t> table, std::size_t n,
                       std::vector<std::uint32_t> gen_ids, std::vector<std::string> gen_names)
    : n_(n), table_(std::move(table)), gen_ids_(std::move(gen_ids)), gen_names_(std::move(gen_names)) {
    if (table_.size() != n_ * n_) throw InputError("multiplication table has wrong size");
    if (gen_ids_.size() != gen_names_.size()) throw InputError("generator ids/names mismatch");
    for (std::uint32_t g : gen_ids_)
        if (g >= n_) throw InputError("generator id out of range");
    for (std::size_t a = 0; a < n_; ++a) {
        if (table_[a] != a || table_[a * n_] != a)
            throw InputError("id 0 is not an identity of the table");
    }
    inverse_.assign(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
            if (table_[a * n_ + b] == 0) inverse_[a] = static_cast<std::uint32_t>(b);
    for (std::size_t a = 0; a < n_; ++a)
        if (inverse_[a] >= n_) throw InputError("table element has no inverse");
    words_ = bfs_words(*this, n_, reached_);
}

Elem TableModel::multiply(Elem a, Elem b) const {
    if (a.id >= n_ || b.id >= n_) throw InputError("element handle out of range");
    return Elem{table_[a.id * n_ + b.id]};
}

Elem TableModel::inverse(Elem a) const {
    if (a.id >= n_) throw InputError("element handle out of range");
    return Elem{inverse_[a.id]};
}

std::vector<Elem> TableModel::enumerate() const {
    std::vector<Elem> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

Word TableModel::word_for(Elem x) const {
    if (!reached_.at(x.id))
        throw NotGenerating("element not reachable from the designated generators");
    return words_.at(x.id);
}

// ---------------------------------------------------------------------------
// PermutationModel

PermutationModel::PermutationModel(std::vector<std::vector<std::uint32_t>> generator_perms,
                                   std::vector<std::string> gen_names)
    : gen_perms_(std::move(generator_perms)), gen_names_(std::move(gen_names)) {
    if (gen_perms_.empty()) throw InputError("permutation model needs at least one generator");
    std::size_t m = gen_perms_.front().size();
    for (const auto& p : gen_perms_) {
        if (p.size() != m) throw InputError("permutation degrees differ");
        std::vector<bool> hit(m, false);
        for (std::uint32_t v : p) {
            if (v >= m || hit[v]) throw InputError("not a permutation");
            hit[v] = true;
        }
    }
    std::vector<std::uint32_t> id(m);
    for (std::size_t i = 0; i < m; ++i) id[i] = static_cast<std::uint32_t>(i);
    elements_.push_back(id);
    index_[id] = 0;
    // Breadth-first closure under right multiplication by generators and inverses.
    std::deque<std::uint32_t> q{0};
    auto compose = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
        return c;
    };
    auto invert = [](const std::vector<std::uint32_t>& a) {
        std::vector<std::uint32_t> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
        return c;
    };
    std::vector<std::vector<std::uint32_t>> gen_invs;
    for (const auto& p : gen_perms_) gen_invs.push_back(invert(p));
    words_.push_back(Word{});
    while (!q.empty()) {
        std::uint32_t cur = q.front();
        q.pop_front();
        for (std::size_t g = 0; g < gen_perms_.size(); ++g)
            for (bool inv : {false, true}) {
                auto next = compose(elements_[cur], inv ? gen_invs[g] : gen_perms_[g]);
                auto [it, fresh] = index_.emplace(next, static_cast<std::uint32_t>(elements_.size()));
                if (fresh) {
                    elements_.push_back(next);
                    Word w = words_[cur];
                    w.letters.emplace_back(static_cast<std::uint32_t>(g), inv);
                    words_.push_back(std::move(w));
                    q.push_back(it->second);
                }
            }
    }
}

Elem PermutationModel::generator(std::size_t i) const {
    return Elem{index_.at(gen_perms_.at(i))};
}

Elem PermutationModel::multiply(Elem a, Elem b) const {
    const auto& pa = elements_.at(a.id);
    const auto& pb = elements_.at(b.id);
    std::vector<std::uint32_t> c(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) c[i] = pb[pa[i]];
    return Elem{index_.at(c)};
}

Elem PermutationModel::inverse(Elem a) const {
    const auto& pa = elements_.at(a.id);
    std::vector<std::uint32_t> c(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) c[pa[i]] = static_cast<std::uint32_t>(i);
    return Elem{index_.at(c)};
}

std::vector<Elem> PermutationModel::enumerate() const {
    std::vector<Elem> out(elements_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

Word PermutationModel::word_for(Elem x) const { return words_.at(x.id); }

// ---------------------------------------------------------------------------
// Todd-Coxeter coset enumeration (trivial subgroup, HLT with fills)

namespace {

constexpr std::uint32_t UNDEF = 0xffffffffu;

struct TC {
    std::size_t ngens;
    std::size_t ncols;
    std::size_t cap;
    std::vector<std::vector<std::uint32_t>> rows;  // rows[c][col]
    std::vector<std::uint32_t> rep;                // union-find
    std::size_t live = 0;
    std::size_t defined = 0;

    explicit TC(std::size_t gens, std::size_t max_cosets)
        : ngens(gens), ncols(2 * gens), cap(max_cosets) {
        new_coset();
    }

    std::uint32_t new_coset() {
        if (rows.size() >= cap)
            throw InconclusiveEnumeration("coset enumeration hit the limit of " +
                                          std::to_string(cap) + " cosets");
        rows.emplace_back(ncols, UNDEF);
        rep.push_back(static_cast<std::uint32_t>(rows.size() - 1));
        ++live;
        ++defined;
        return static_cast<std::uint32_t>(rows.size() - 1);
    }

    static std::size_t col_of(Letter l) { return 2 * l.gen + (l.inverse ? 1 : 0); }
    static std::size_t inv_col(std::size_t col) { return col ^ 1; }

    std::uint32_t find(std::uint32_t c) {
        while (rep[c] != c) {
            rep[c] = rep[rep[c]];
            c = rep[c];
        }
        return c;
    }

    void merge(std::uint32_t a, std::uint32_t b, std::deque<std::uint32_t>& q) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        rep[b] = a;
        --live;
        q.push_back(b);
    }

    void coincidence(std::uint32_t a, std::uint32_t b) {
        std::deque<std::uint32_t> q;
        merge(a, b, q);
        while (!q.empty()) {
            std::uint32_t dead = q.front();
            q.pop_front();
            for (std::size_t x = 0; x < ncols; ++x) {
                std::uint32_t d = rows[dead][x];
                if (d == UNDEF) continue;
                rows[dead][x] = UNDEF;
                if (rows[d][inv_col(x)] == dead) rows[d][inv_col(x)] = UNDEF;
                std::uint32_t mu = find(dead);
                std::uint32_t nu = find(d);
                if (rows[mu][x] != UNDEF)
                    merge(nu, rows[mu][x], q);
                else if (rows[nu][inv_col(x)] != UNDEF)
                    merge(mu, rows[nu][inv_col(x)], q);
                else {
                    rows[mu][x] = nu;
                    rows[nu][inv_col(x)] = mu;
                }
            }
        }
    }

    void set_entry(std::uint32_t c, std::size_t col, std::uint32_t d) {
        rows[c][col] = d;
        rows[d][inv_col(col)] = c;
    }

    // Scan relator r at coset c, defining new cosets to close the trace.
    void scan_and_fill(std::uint32_t c, const std::vector<std::size_t>& cols) {
        std::size_t k = cols.size();
        while (true) {
            c = find(c);
            std::uint32_t f = c;
            std::size_t i = 0;
            while (i < k && rows[f][cols[i]] != UNDEF) f = find(rows[f][cols[i]]), ++i;
            if (i == k) {
                if (f != c) coincidence(f, c);
                return;
            }
            std::uint32_t b = c;
            std::size_t j = k;
            while (j > i && rows[b][inv_col(cols[j - 1])] != UNDEF)
                b = find(rows[b][inv_col(cols[j - 1])]), --j;
            if (j == i) {
                if (f != b) coincidence(f, b);
                return;
            }
            if (j == i + 1) {
                set_entry(f, cols[i], b);
                return;
            }
            std::uint32_t n = new_coset();
            set_entry(f, cols[i], n);
            // loop again; the forward scan will now pass position i
        }
    }
};

}  // namespace

CosetEnumerationResult enumerate_cosets(const Presentation& p, std::size_t max_cosets) {
    p.validate();
    TC tc(p.generators.size(), max_cosets);

    std::vector<std::vector<std::size_t>> relator_cols;
    for (const Word& r : p.relators) {
        std::vector<std::size_t> cols;
        for (const Letter& l : r.letters) cols.push_back(TC::col_of(l));
        relator_cols.push_back(std::move(cols));
    }

    CosetEnumerationResult res;
    try {
        for (std::uint32_t c = 0; c < tc.rows.size(); ++c) {
            if (tc.find(c) != c) continue;
            for (const auto& cols : relator_cols) {
                tc.scan_and_fill(c, cols);
                if (tc.find(c) != c) break;
            }
            if (tc.find(c) != c) continue;
            for (std::size_t col = 0; col < tc.ncols; ++col) {
                std::uint32_t cc = tc.find(c);
                if (cc != c) break;
                if (tc.rows[cc][col] == UNDEF) {
                    std::uint32_t n = tc.new_coset();
                    tc.set_entry(cc, col, n);
                }
            }
        }
    } catch (const InconclusiveEnumeration&) {
        res.complete = false;
        res.cosets_defined = tc.defined;
        return res;
    }

    // Compress live cosets to dense ids; coset 0 stays 0 (union by minimum).
    std::vector<std::uint32_t> dense(tc.rows.size(), UNDEF);
    std::uint32_t next = 0;
    for (std::uint32_t c = 0; c < tc.rows.size(); ++c)
        if (tc.find(c) == c) dense[c] = next++;
    res.complete = true;
    res.cosets_defined = tc.defined;
    res.order = next;
    res.table.assign(next, std::vector<std::uint32_t>(tc.ncols, UNDEF));
    for (std::uint32_t c = 0; c < tc.rows.size(); ++c) {
        if (tc.find(c) != c) continue;
        for (std::size_t col = 0; col < tc.ncols; ++col) {
            std::uint32_t d = tc.rows[c][col];
            if (d == UNDEF) throw std::logic_error("incomplete coset table after enumeration");
            res.table[dense[c]][col] = dense[tc.find(d)];
        }
    }
    // Certify: every relator acts trivially on every coset.
    for (std::uint32_t c = 0; c < next; ++c)
        for (const auto& r : p.relators) {
            std::uint32_t x = c;
            for (const Letter& l : r.letters) x = res.table[x][TC::col_of(l)];
            if (x != c) throw std::logic_error("coset table does not satisfy a relator");
        }
    return res;
}

std::size_t coset_limit_from_env(std::size_t fallback) {
    if (const char* v = std::getenv("CAYLEY3_COSET_LIMIT")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
    }
    return fallback;
}

// ---------------------------------------------------------------------------
// CosetModel

CosetModel::CosetModel(Presentation p, std::size_t max_cosets) : pres_(std::move(p)) {
    CosetEnumerationResult res = enumerate_cosets(pres_, max_cosets);
    if (!res.complete)
        throw InconclusiveEnumeration("presentation did not close within " +
                                      std::to_string(max_cosets) + " cosets");
    table_ = std::move(res.table);
    // Representative words straight off the coset table (multiply() needs them).
    words_.assign(table_.size(), Word{});
    std::vector<bool> seen(table_.size(), false);
    std::deque<std::uint32_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
        std::uint32_t x = q.front();
        q.pop_front();
        for (std::size_t col = 0; col < table_[x].size(); ++col) {
            std::uint32_t y = table_[x][col];
            if (!seen[y]) {
                seen[y] = true;
                words_[y] = words_[x];
                words_[y].letters.emplace_back(static_cast<std::uint32_t>(col / 2), col % 2 == 1);
                q.push_back(y);
            }
        }
    }
}

Elem CosetModel::generator(std::size_t i) const {
    return Elem{table_.at(0).at(2 * i)};
}

Elem CosetModel::multiply(Elem a, Elem b) const {
    std::uint32_t x = a.id;
    for (const Letter& l : words_.at(b.id).letters) x = table_.at(x).at(2 * l.gen + (l.inverse ? 1 : 0));
    return Elem{x};
}

Elem CosetModel::inverse(Elem a) const {
    std::uint32_t x = 0;
    const Word w = words_.at(a.id).inverted();
    for (const Letter& l : w.letters) x = table_.at(x).at(2 * l.gen + (l.inverse ? 1 : 0));
    return Elem{x};
}

std::vector<Elem> CosetModel::enumerate() const {
    std::vector<Elem> out(table_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Elem{static_cast<std::uint32_t>(i)};
    return out;
}

Word CosetModel::word_for(Elem x) const { return words_.at(x.id); }

// ---------------------------------------------------------------------------
// MatrixModel

MatrixModel::MatrixModel(std::vector<RationalMatrix> generator_matrices,
                         std::vector<std::string> gen_names)
    : gen_mats_(std::move(generator_matrices)), gen_names_(std::move(gen_names)) {
    if (gen_mats_.empty()) throw InputError("matrix model needs at least one generator");
    std::size_t n = gen_mats_.front().n;
    for (const auto& m : gen_mats_)
        if (m.n != n) throw InputError("generator matrix dimensions differ");
    intern(RationalMatrix::identity(n), Word{});
    for (std::size_t i = 0; i < gen_mats_.size(); ++i) {
        Word w;
        w.letters.emplace_back(static_cast<std::uint32_t>(i), false);
        intern(gen_mats_[i], w);
    }
}

Elem MatrixModel::intern(const RationalMatrix& m, const Word& via) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(m);
    if (it != index_.end()) return Elem{it->second};
    std::uint32_t id = static_cast<std::uint32_t>(pool_.size());
    pool_.push_back(m);
    pool_words_.push_back(via);
    index_.emplace(m, id);
    return Elem{id};
}

Elem MatrixModel::generator(std::size_t i) const {
    Word w;
    w.letters.emplace_back(static_cast<std::uint32_t>(i), false);
    return intern(gen_mats_.at(i), w);
}

Elem MatrixModel::multiply(Elem a, Elem b) const {
    RationalMatrix ma, mb;
    Word wa, wb;
    {
        std::lock_guard<std::mutex> lock(mu_);
        ma = pool_.at(a.id);
        mb = pool_.at(b.id);
        wa = pool_words_.at(a.id);
        wb = pool_words_.at(b.id);
    }
    return intern(ma * mb, wa * wb);
}

Elem MatrixModel::inverse(Elem a) const {
    RationalMatrix ma;
    Word wa;
    {
        std::lock_guard<std::mutex> lock(mu_);
        ma = pool_.at(a.id);
        wa = pool_words_.at(a.id);
    }
    return intern(ma.inverse(), wa.inverted());
}

std::vector<Elem> MatrixModel::enumerate() const {
    std::vector<Elem> out{identity()};
    std::set<Elem> seen{identity()};
    std::size_t head = 0;
    while (head < out.size()) {
        Elem x = out[head++];
        for (std::size_t g = 0; g < gen_mats_.size(); ++g)
            for (bool inv : {false, true}) {
                Elem y = apply_letter(x, Letter(static_cast<std::uint32_t>(g), inv));
                if (seen.insert(y).second) {
                    out.push_back(y);
                    if (out.size() > enum_limit_)
                        throw InfiniteOrUnknown("matrix group closure exceeded " +
                                                std::to_string(enum_limit_) + " elements");
                }
            }
    }
    return out;
}

Word MatrixModel::word_for(Elem x) const {
    std::lock_guard<std::mutex> lock(mu_);
    return pool_words_.at(x.id);
}

const RationalMatrix& MatrixModel::matrix(Elem x) const {
    std::lock_guard<std::mutex> lock(mu_);
    return pool_.at(x.id);
}

// ---------------------------------------------------------------------------

std::shared_ptr<const GroupModel> model_from_group_file(const GroupFile& gf, std::size_t coset_cap) {
    if (gf.has_matrices()) {
        std::vector<RationalMatrix> mats;
        for (const auto& rows : gf.matrices) {
            RationalMatrix m;
            m.n = rows.size();
            for (const auto& row : rows)
                for (const auto& s : row) {
                    mpq_class q(s);
                    q.canonicalize();
                    m.entries.push_back(q);
                }
            mats.push_back(std::move(m));
        }
        return std::make_shared<MatrixModel>(std::move(mats), gf.presentation.generators);
    }
    return std::make_shared<CosetModel>(gf.presentation, coset_cap);
}

}  // namespace cayley3
