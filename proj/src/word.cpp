#include "cayley3/word.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace cayley3 {

Word Word::inverted() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        out.letters.push_back(it->inverted());
    return out;
}

Word Word::operator*(const Word& rhs) const {
    Word out = *this;
    for (const Letter& l : rhs.letters) out.letters.push_back(l);
    out.free_reduce();
    return out;
}

void Word::free_reduce() {
    std::vector<Letter> stack;
    stack.reserve(letters.size());
    for (const Letter& l : letters) {
        if (!stack.empty() && stack.back().gen == l.gen && stack.back().inverse != l.inverse)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    letters = std::move(stack);
}

void Word::cyclic_reduce() {
    free_reduce();
    while (letters.size() >= 2 && letters.front().gen == letters.back().gen &&
           letters.front().inverse != letters.back().inverse) {
        letters.erase(letters.begin());
        letters.pop_back();
    }
}

std::size_t Presentation::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return i;
    throw InputError("unknown generator: " + name);
}

void Presentation::validate() const {
    std::set<std::string> seen;
    for (const auto& g : generators) {
        if (g.empty()) throw InputError("empty generator name");
        if (!seen.insert(g).second) throw InputError("duplicate generator name: " + g);
    }
    for (const Word& r : relators) {
        if (r.empty()) throw InputError("empty relator");
        for (const Letter& l : r.letters)
            if (l.gen >= generators.size())
                throw InputError("relator letter out of range");
    }
}

std::string Presentation::word_to_string(const Word& w) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << ' ';
        os << generators.at(w.letters[i].gen);
        if (w.letters[i].inverse) os << "^-1";
    }
    return os.str();
}

namespace {

struct Tokenizer {
    std::string text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return text[pos];
    }
    char take() {
        skip_ws();
        return text[pos++];
    }
    bool name_char(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }
    std::string take_name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && name_char(text[pos])) ++pos;
        if (pos == start) throw InputError("expected a generator name at: " + text.substr(start));
        return text.substr(start, pos - start);
    }
    long take_integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw InputError("expected an integer exponent");
        return std::stol(text.substr(start, pos - start));
    }
};

Word word_power(const Word& base, long exp) {
    Word unit = exp < 0 ? base.inverted() : base;
    long n = exp < 0 ? -exp : exp;
    Word out;
    for (long i = 0; i < n; ++i)
        for (const Letter& l : unit.letters) out.letters.push_back(l);
    return out;
}

Word parse_word_expr(Tokenizer& tok, const std::vector<std::string>& gens, char stop1, char stop2);

Word parse_factor(Tokenizer& tok, const std::vector<std::string>& gens) {
    Word atom;
    char c = tok.peek();
    if (c == '(') {
        tok.take();
        atom = parse_word_expr(tok, gens, ')', '\0');
        if (tok.done() || tok.take() != ')') throw InputError("missing ')'");
    } else if (c == '[') {
        tok.take();
        Word x = parse_word_expr(tok, gens, ',', '\0');
        if (tok.done() || tok.take() != ',') throw InputError("missing ',' in commutator");
        Word y = parse_word_expr(tok, gens, ']', '\0');
        if (tok.done() || tok.take() != ']') throw InputError("missing ']'");
        atom = x.inverted();
        for (const Letter& l : y.inverted().letters) atom.letters.push_back(l);
        for (const Letter& l : x.letters) atom.letters.push_back(l);
        for (const Letter& l : y.letters) atom.letters.push_back(l);
    } else {
        std::string name = tok.take_name();
        std::size_t idx = gens.size();
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == name) idx = i;
        if (idx == gens.size()) throw InputError("unknown generator: " + name);
        atom.letters.emplace_back(static_cast<std::uint32_t>(idx), false);
    }
    if (!tok.done() && tok.peek() == '^') {
        tok.take();
        return word_power(atom, tok.take_integer());
    }
    return atom;
}

Word parse_word_expr(Tokenizer& tok, const std::vector<std::string>& gens, char stop1, char stop2) {
    Word out;
    while (!tok.done()) {
        char c = tok.peek();
        if (c == stop1 || c == stop2) break;
        Word f = parse_factor(tok, gens);
        for (const Letter& l : f.letters) out.letters.push_back(l);
    }
    return out;
}

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& generators) {
    Tokenizer tok{text};
    Word w = parse_word_expr(tok, generators, '\0', '\0');
    if (!tok.done()) throw InputError("trailing characters in word: " + text.substr(tok.pos));
    return w;
}

bool GroupFile::has_matrices() const {
    for (const auto& m : matrices)
        if (!m.empty()) return true;
    return false;
}

namespace {

std::vector<std::vector<std::string>> parse_matrix_literal(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '[') throw InputError("matrix literal must start with '['");
    ++i;
    while (true) {
        skip();
        if (i < text.size() && text[i] == ']') {
            ++i;
            break;
        }
        if (i >= text.size() || text[i] != '[') throw InputError("expected '[' starting a matrix row");
        ++i;
        std::vector<std::string> row;
        std::string entry;
        while (i < text.size() && text[i] != ']') {
            if (text[i] == ',') {
                row.push_back(entry);
                entry.clear();
            } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
                entry += text[i];
            }
            ++i;
        }
        if (i >= text.size()) throw InputError("unterminated matrix row");
        ++i;  // ']'
        if (!entry.empty()) row.push_back(entry);
        if (row.empty()) throw InputError("empty matrix row");
        rows.push_back(std::move(row));
        skip();
        if (i < text.size() && text[i] == ',') ++i;
    }
    skip();
    if (i != text.size()) throw InputError("trailing characters after matrix literal");
    std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw InputError("matrix must be square");
    return rows;
}

}  // namespace

GroupFile parse_group_file(const std::string& text) {
    GroupFile out;
    std::vector<std::string> rel_lines;
    std::vector<std::pair<std::string, std::string>> matrix_lines;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        line = line.substr(a);

        if (line.rfind("gens:", 0) == 0) {
            std::istringstream ls(line.substr(5));
            std::string name;
            while (ls >> name) out.presentation.generators.push_back(name);
        } else if (line.rfind("rels:", 0) == 0) {
            rel_lines.push_back(line.substr(5));
        } else if (line.rfind("matrix", 0) == 0) {
            std::string rest = line.substr(6);
            std::size_t colon = rest.find(':');
            if (colon == std::string::npos) throw InputError("matrix line missing ':'");
            std::string name = rest.substr(0, colon);
            name.erase(std::remove_if(name.begin(), name.end(),
                                      [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                       name.end());
            matrix_lines.emplace_back(name, rest.substr(colon + 1));
        } else {
            throw InputError("unrecognized line in group file: " + line);
        }
    }

    if (out.presentation.generators.empty()) throw InputError("group file has no gens: line");

    // A relator is a single factor; multi-letter relators need parentheses.
    for (const std::string& rl : rel_lines) {
        Tokenizer tok{rl};
        while (!tok.done()) {
            Word w = parse_factor(tok, out.presentation.generators);
            w.free_reduce();
            if (w.empty()) throw InputError("relator reduces to the empty word");
            out.presentation.relators.push_back(std::move(w));
        }
    }

    out.matrices.assign(out.presentation.generators.size(), {});
    for (const auto& [name, literal] : matrix_lines) {
        std::size_t idx = out.presentation.generator_index(name);
        out.matrices[idx] = parse_matrix_literal(literal);
    }
    if (out.has_matrices())
        for (std::size_t i = 0; i < out.matrices.size(); ++i)
            if (out.matrices[i].empty())
                throw InputError("generator " + out.presentation.generators[i] + " has no matrix");

    out.presentation.validate();
    return out;
}

GroupFile load_group_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_group_file(ss.str());
}

}  // namespace cayley3
