#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cayley3/word.hpp"

namespace cayley3 {

/// Coset enumeration (or a ball computation) hit its configured limit before
/// resolving the question. A distinguished outcome, not a claim of infinity.
class InconclusiveEnumeration : public std::runtime_error {
public:
    explicit InconclusiveEnumeration(const std::string& msg) : std::runtime_error(msg) {}
};

/// The model cannot certify the group finite (unbounded orbit or limit reached).
class InfiniteOrUnknown : public std::runtime_error {
public:
    explicit InfiniteOrUnknown(const std::string& msg) : std::runtime_error(msg) {}
};

class NotGenerating : public std::runtime_error {
public:
    explicit NotGenerating(const std::string& msg) : std::runtime_error(msg) {}
};

/// Opaque canonical handle for a group element within one model instance.
struct Elem {
    std::uint32_t id = 0;

    friend bool operator==(Elem a, Elem b) { return a.id == b.id; }
    friend bool operator!=(Elem a, Elem b) { return a.id != b.id; }
    friend bool operator<(Elem a, Elem b) { return a.id < b.id; }
};

/// Exact rational square matrix, the payload of the integer-matrix kind.
struct RationalMatrix {
    std::size_t n = 0;
    std::vector<mpq_class> entries;  // row-major

    static RationalMatrix identity(std::size_t n);
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    RationalMatrix inverse() const;  // throws InputError if singular

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.n == b.n && a.entries == b.entries;
    }
    friend bool operator<(const RationalMatrix& a, const RationalMatrix& b);
};

/// Uniform oracle for group elements. Values are immutable after construction;
/// every operation is pure and safe to call concurrently.
class GroupModel {
public:
    enum class Kind { Table, Permutation, CosetEnumerated, IntegerMatrix };

    virtual ~GroupModel() = default;

    virtual Kind kind() const = 0;
    virtual std::size_t generator_count() const = 0;
    virtual std::string generator_name(std::size_t i) const = 0;

    virtual Elem identity() const = 0;
    virtual Elem generator(std::size_t i) const = 0;
    virtual Elem multiply(Elem a, Elem b) const = 0;
    virtual Elem inverse(Elem a) const = 0;

    /// Whether enumerate() can succeed.
    virtual bool finite_certified() const = 0;

    /// All elements exactly once; length equals the group order.
    /// Throws InfiniteOrUnknown when the model cannot certify finiteness.
    virtual std::vector<Elem> enumerate() const = 0;

    /// A word over the model's generators evaluating to x. Available for every
    /// handle this model has produced.
    virtual Word word_for(Elem x) const = 0;

    /// Product of the letters of w, left to right; the empty word is the identity.
    Elem evaluate(const Word& w) const;
    Elem apply_letter(Elem x, Letter l) const;

    /// All elements of word length <= radius over gens ∪ gens^-1, each once,
    /// in breadth-first order starting from the identity.
    /// gen_subset empty means "all generators".
    std::vector<Elem> ball(const std::vector<std::size_t>& gen_subset, std::size_t radius) const;

    /// True when ball(gens, r) saturates to the whole group (finite models only).
    bool generates(const std::vector<std::size_t>& gen_subset) const;
};

/// Explicit multiplication table; elements are dense ids 0..n-1 with 0 = identity.
class TableModel final : public GroupModel {
public:
    /// table[a*n + b] = a*b. Generator ids pick out the designated generators.
    TableModel(std::vector<std::uint32_t> table, std::size_t n, std::vector<std::uint32_t> gen_ids,
               std::vector<std::string> gen_names);

    Kind kind() const override { return Kind::Table; }
    std::size_t generator_count() const override { return gen_ids_.size(); }
    std::string generator_name(std::size_t i) const override { return gen_names_.at(i); }
    Elem identity() const override { return Elem{0}; }
    Elem generator(std::size_t i) const override { return Elem{gen_ids_.at(i)}; }
    Elem multiply(Elem a, Elem b) const override;
    Elem inverse(Elem a) const override;
    bool finite_certified() const override { return true; }
    std::vector<Elem> enumerate() const override;
    Word word_for(Elem x) const override;

    std::size_t order() const { return n_; }

private:
    std::size_t n_;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::uint32_t> gen_ids_;
    std::vector<std::string> gen_names_;
    std::vector<Word> words_;     // BFS representative per element
    std::vector<bool> reached_;   // false where generators do not reach
};

/// Group generated by explicit permutations of {0..m-1}.
class PermutationModel final : public GroupModel {
public:
    PermutationModel(std::vector<std::vector<std::uint32_t>> generator_perms,
                     std::vector<std::string> gen_names);

    Kind kind() const override { return Kind::Permutation; }
    std::size_t generator_count() const override { return gen_perms_.size(); }
    std::string generator_name(std::size_t i) const override { return gen_names_.at(i); }
    Elem identity() const override { return Elem{0}; }
    Elem generator(std::size_t i) const override;
    Elem multiply(Elem a, Elem b) const override;
    Elem inverse(Elem a) const override;
    bool finite_certified() const override { return true; }
    std::vector<Elem> enumerate() const override;
    Word word_for(Elem x) const override;

    std::size_t order() const { return elements_.size(); }
    const std::vector<std::uint32_t>& permutation(Elem x) const { return elements_.at(x.id); }

private:
    std::vector<std::vector<std::uint32_t>> gen_perms_;
    std::vector<std::string> gen_names_;
    std::vector<std::vector<std::uint32_t>> elements_;  // BFS closure, id 0 = identity
    std::map<std::vector<std::uint32_t>, std::uint32_t> index_;
    std::vector<Word> words_;
};

/// Outcome of a coset enumeration attempt.
struct CosetEnumerationResult {
    bool complete = false;
    std::size_t cosets_defined = 0;   // peak definitions, for reporting
    std::size_t order = 0;            // valid when complete
    /// Right-action table: table[c][2*g] = c·gen_g, table[c][2*g+1] = c·gen_g^-1.
    std::vector<std::vector<std::uint32_t>> table;
};

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup. When it
/// completes, the cosets are the group elements and the table is its right
/// regular action on generators.
CosetEnumerationResult enumerate_cosets(const Presentation& p, std::size_t max_cosets);

/// Default coset cap; the CAYLEY3_COSET_LIMIT environment variable overrides it.
std::size_t coset_limit_from_env(std::size_t fallback = 1000000);

/// Group defined by a presentation, realized through coset enumeration.
/// Construction either certifies the group finite or throws
/// InconclusiveEnumeration (the distinguished outcome at the configured cap).
class CosetModel final : public GroupModel {
public:
    CosetModel(Presentation p, std::size_t max_cosets);

    Kind kind() const override { return Kind::CosetEnumerated; }
    std::size_t generator_count() const override { return pres_.generators.size(); }
    std::string generator_name(std::size_t i) const override { return pres_.generators.at(i); }
    Elem identity() const override { return Elem{0}; }
    Elem generator(std::size_t i) const override;
    Elem multiply(Elem a, Elem b) const override;
    Elem inverse(Elem a) const override;
    bool finite_certified() const override { return true; }
    std::vector<Elem> enumerate() const override;
    Word word_for(Elem x) const override;

    std::size_t order() const { return table_.size(); }
    const Presentation& presentation() const { return pres_; }

private:
    Presentation pres_;
    std::vector<std::vector<std::uint32_t>> table_;
    std::vector<Word> words_;
};

/// Group generated by exact rational matrices. Equality of handles is equality
/// of matrices; handles are interned lazily (thread-safe, logically const).
class MatrixModel final : public GroupModel {
public:
    MatrixModel(std::vector<RationalMatrix> generator_matrices, std::vector<std::string> gen_names);

    Kind kind() const override { return Kind::IntegerMatrix; }
    std::size_t generator_count() const override { return gen_mats_.size(); }
    std::string generator_name(std::size_t i) const override { return gen_names_.at(i); }
    Elem identity() const override { return Elem{0}; }
    Elem generator(std::size_t i) const override;
    Elem multiply(Elem a, Elem b) const override;
    Elem inverse(Elem a) const override;
    bool finite_certified() const override { return false; }

    /// Closes the generators under multiplication up to enumeration_limit
    /// elements; beyond that throws InfiniteOrUnknown.
    std::vector<Elem> enumerate() const override;
    Word word_for(Elem x) const override;

    const RationalMatrix& matrix(Elem x) const;
    std::size_t enumeration_limit() const { return enum_limit_; }
    void set_enumeration_limit(std::size_t n) { enum_limit_ = n; }

private:
    Elem intern(const RationalMatrix& m, const Word& via) const;

    std::vector<RationalMatrix> gen_mats_;
    std::vector<std::string> gen_names_;
    std::size_t enum_limit_ = 100000;

    mutable std::mutex mu_;
    mutable std::vector<RationalMatrix> pool_;
    mutable std::vector<Word> pool_words_;
    mutable std::map<RationalMatrix, std::uint32_t> index_;
};

/// Build a model for a .grp file: the matrix kind when matrices are present,
/// otherwise coset enumeration at the given cap.
std::shared_ptr<const GroupModel> model_from_group_file(const GroupFile& gf, std::size_t coset_cap);

}  // namespace cayley3
