#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley3 {

/// Error raised on malformed input files or malformed in-memory values.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One letter of a group word: a generator index plus an inversion flag.
struct Letter {
    std::uint32_t gen = 0;
    bool inverse = false;

    Letter() = default;
    Letter(std::uint32_t g, bool inv) : gen(g), inverse(inv) {}

    Letter inverted() const { return Letter(gen, !inverse); }

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.gen == b.gen && a.inverse == b.inverse;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        return a.gen != b.gen ? a.gen < b.gen : a.inverse < b.inverse;
    }
};

/// A word over the generators of some presentation; letters are applied left to right.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }

    /// Formal inverse: reversed order, every letter inverted.
    Word inverted() const;

    /// Concatenation followed by free reduction of adjacent cancelling pairs.
    Word operator*(const Word& rhs) const;

    /// Remove adjacent cancelling pairs (x x^-1) until none remain.
    void free_reduce();

    /// Cyclically reduce: free reduce, then strip cancelling first/last letters.
    void cyclic_reduce();

    friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
    friend bool operator<(const Word& a, const Word& b) { return a.letters < b.letters; }
};

/// A finite group presentation: named generators and a list of relator words.
///
/// Generator names are unique and nonempty; relators are nonempty words whose
/// letters index into the generator list.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::size_t generator_index(const std::string& name) const;
    void validate() const;

    /// Render a word back to the text syntax, e.g. "a b^-1 a".
    std::string word_to_string(const Word& w) const;
};

/// Parse a word expression over the given generator names.
///
/// Grammar (documented in the README):
///   word    := factor*
///   factor  := atom ("^" integer)?
///   atom    := name | "(" word ")" | "[" word "," word "]"
/// A commutator [x,y] expands to x^-1 y^-1 x y.
Word parse_word(const std::string& text, const std::vector<std::string>& generators);

/// Parsed contents of a .grp file: a presentation plus optional exact
/// rational matrices, one per generator, for the integer-matrix model kind.
struct GroupFile {
    Presentation presentation;
    /// matrix_rows[i] is empty when generator i carries no matrix; otherwise
    /// a square matrix in row-major order with entries as strings ("2", "-1/3").
    std::vector<std::vector<std::vector<std::string>>> matrices;

    bool has_matrices() const;
};

/// Parse the .grp presentation format:
///   gens: a b
///   rels: a^2 b^2 (a b)^2
///   matrix a: [[1,0,1],[0,1,0],[0,0,1]]
/// Lines starting with '#' are comments. Multiple rels: lines accumulate.
GroupFile parse_group_file(const std::string& text);
GroupFile load_group_file(const std::string& path);

}  // namespace cayley3
