#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cayley3/group_model.hpp"
#include "cayley3/pi1.hpp"
#include "cayley3/two_complex.hpp"

namespace cayley3 {

/// Permutations of the three cell levels induced by one group element.
struct CellPerm {
    std::map<Id, Id> vertices;
    std::map<Id, Id> edges;
    std::map<Id, Id> faces;

    Id v(Id x) const { return vertices.at(x); }
    Id e(Id x) const { return edges.at(x); }
    Id f(Id x) const { return faces.at(x); }

    /// apply `then` after this (left-to-right composition).
    CellPerm compose(const CellPerm& then) const;
    bool is_identity() const;

    friend bool operator==(const CellPerm& a, const CellPerm& b) {
        return a.vertices == b.vertices && a.edges == b.edges && a.faces == b.faces;
    }
    friend bool operator<(const CellPerm& a, const CellPerm& b);
};

/// A group action on a TwoComplex, recorded as one CellPerm per generator,
/// with the relator words available as a homomorphism certificate.
struct CellularAction {
    std::shared_ptr<const GroupModel> model;  // may be null for file-loaded actions
    std::vector<std::string> generator_names;
    std::vector<CellPerm> generators;
    std::vector<Word> relators;

    CellPerm perm_for_word(const Word& w) const;
    /// Requires a model with word_for (finite kinds).
    CellPerm perm_for_element(Elem g) const;

    /// Image of a directed edge. A loop keeps its direction flag (the vertex
    /// images cannot distinguish the two loop directions).
    Dedge map_dedge(const TwoComplex& x, const CellPerm& p, Dedge d) const;

    /// All distinct cell permutations of the acting group: enumerated through
    /// the model when present, otherwise the closure of the generator perms.
    std::vector<CellPerm> element_perms(const TwoComplex& x) const;
};

struct ActionCheck {
    bool is_action = false;  // bijections, incidence preserved, relators trivial
    bool free_on_vertices = false;
    bool transitive_on_vertices = false;
    std::string failure;

    bool regular_on_vertices() const { return free_on_vertices && transitive_on_vertices; }
};

/// Certify the action: cell bijections, incidence preservation (edge ends,
/// face walks up to rotation or reversal), relators acting as the identity,
/// and the vertex-regularity flags.
ActionCheck verify_action(const TwoComplex& x, const CellularAction& a);

struct CayleyOptions {
    /// Generator indices to use; empty means all generators of the model.
    std::vector<std::size_t> gens;
    /// Required for models that cannot certify finiteness.
    std::optional<std::size_t> radius;
    /// Two parallel edges per involution instead of the simplified single edge.
    bool doubled_involutions = false;
    /// One face per relator walk instead of one per distinct boundary circuit.
    bool duplicate_faces = false;
};

/// A built Cayley graph or complex. Vertex ids are element handles (breadth
/// first from the identity), so ball truncations of increasing radius agree on
/// their shared cells.
struct CayleyComplexResult {
    TwoComplex complex;
    /// Canonical left action; absent for ball truncations (the ball itself is
    /// not invariant under the group).
    std::optional<CellularAction> action;
    std::vector<Elem> elements;  // vertex id -> element handle
    bool truncated = false;
    std::size_t radius = 0;
    /// For truncated builds: edges whose full face star is present. Tracing
    /// across any other edge would see a truncated rotation.
    std::set<Id> star_complete_edges;
};

CayleyComplexResult build_cayley_graph(std::shared_ptr<const GroupModel> model,
                                       const CayleyOptions& opts = {});

/// Cayley complex of a presentation over the given model: the Cayley graph
/// plus one face per relator boundary circuit. Throws InputError
/// ("relator walk not closed") when the model does not satisfy a relator.
CayleyComplexResult build_cayley_complex(std::shared_ptr<const GroupModel> model,
                                         const Presentation& p, const CayleyOptions& opts = {});

struct GeneralizedCayleyCertificate {
    ActionCheck action_check;
    Pi1Presentation pi1;
};

/// Confirm vertex-regularity of the action and report the pi1 verdict
/// (simple connectivity is part of the definition; the verdict may be unknown).
GeneralizedCayleyCertificate verify_generalized_cayley(const TwoComplex& x,
                                                       const CellularAction& a);

/// Derive the full cellular action from vertex images alone: each generator's
/// vertex permutation must extend uniquely to edges and faces. Edges map by
/// their end pairs (ambiguities rejected), faces by their image circuits.
CellularAction action_from_vertex_maps(const TwoComplex& x,
                                       std::shared_ptr<const GroupModel> model,
                                       const std::vector<std::string>& names,
                                       const std::vector<std::map<Id, Id>>& vertex_maps,
                                       std::vector<Word> relators);

}  // namespace cayley3
