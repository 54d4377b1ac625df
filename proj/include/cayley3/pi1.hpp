#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "cayley3/two_complex.hpp"
#include "cayley3/word.hpp"

namespace cayley3 {

enum class Pi1Verdict { TrivialCertified, NontrivialCertified, Unknown };

std::string to_string(Pi1Verdict v);

/// A presentation of the fundamental group together with a three-valued
/// triviality verdict. Trivial is certified only by reaching the empty
/// presentation; nontrivial only by a concrete witness.
struct Pi1Presentation {
    Presentation presentation;
    Pi1Verdict verdict = Pi1Verdict::Unknown;
    std::string witness;  // human-readable, e.g. abelianization invariants
};

struct TietzeOptions {
    std::size_t move_budget = 10000;
    std::size_t max_relator_length = 10000;
};

/// Bounded Tietze simplification in place: free/cyclic reduction, removal of
/// duplicate and trivial relators, elimination of generators defined by short
/// relators or occurring exactly once overall.
void tietze_simplify(Presentation& p, const TietzeOptions& opts = {});

/// Abelianization invariants of a presentation: the diagonal of the Smith
/// normal form of the relator-exponent matrix padded with the free rank.
struct Abelianization {
    std::vector<mpz_class> torsion;  // invariant factors > 1
    std::size_t free_rank = 0;

    bool trivial() const { return torsion.empty() && free_rank == 0; }
    std::string describe() const;
};

Abelianization abelianization(const Presentation& p);

/// Smith normal form diagonal of an integer matrix (rows x cols), nonnegative,
/// each dividing the next.
std::vector<mpz_class> smith_normal_form_diagonal(std::vector<std::vector<mpz_class>> m);

/// Spanning-tree presentation of pi_1(X) for a finite connected complex:
/// generators are the non-tree edges, relators are the face walks read over
/// the tree; then bounded Tietze simplification and the verdict rules.
Pi1Presentation pi1_presentation(const TwoComplex& x, const TietzeOptions& opts = {});

}  // namespace cayley3
