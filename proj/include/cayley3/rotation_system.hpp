#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cayley3/cayley.hpp"
#include "cayley3/multigraph.hpp"
#include "cayley3/two_complex.hpp"

namespace cayley3 {

/// One incidence of a face at an edge: the face id and the index of the walk
/// step (in the face's forward walk) that traverses the edge. Slots rather
/// than bare face ids let a non-regular face meet an edge more than once.
struct FaceSlot {
    Id face = 0;
    std::uint32_t occ = 0;

    FaceSlot() = default;
    FaceSlot(Id f, std::uint32_t o) : face(f), occ(o) {}

    friend bool operator==(FaceSlot a, FaceSlot b) { return a.face == b.face && a.occ == b.occ; }
    friend bool operator<(FaceSlot a, FaceSlot b) {
        return a.face != b.face ? a.face < b.face : a.occ < b.occ;
    }
};

/// Rotation system of a 2-complex: a cyclic order of face slots for every
/// directed edge incident to at least one face, reversing with edge direction.
class RotationSystem {
public:
    RotationSystem() = default;

    /// Construct from the orders given for the forward direction of each edge;
    /// reverse directions are derived. Orders must list each slot of the edge
    /// exactly once. Edges with no faces are omitted from the domain.
    static RotationSystem from_forward_orders(const TwoComplex& x,
                                              const std::map<Id, std::vector<FaceSlot>>& forward);

    const std::vector<FaceSlot>& at(Dedge d) const;
    bool has(Dedge d) const { return rot_.count(d) > 0; }
    const std::map<Dedge, std::vector<FaceSlot>>& all() const { return rot_; }

    void set(Dedge d, std::vector<FaceSlot> order);

    /// Checks the three invariants against the complex: domain, slot
    /// completeness, and the reversal constraint. Throws InputError otherwise.
    void validate(const TwoComplex& x) const;

    /// Position of a slot within the cyclic order at d.
    std::size_t index_of(Dedge d, FaceSlot s) const;

    friend bool operator==(const RotationSystem& a, const RotationSystem& b);

private:
    std::map<Dedge, std::vector<FaceSlot>> rot_;
};

/// All slots of an edge: every traversal of e by any face walk.
std::vector<FaceSlot> slots_of_edge(const TwoComplex& x, Id e);

/// Whether cyclic sequences are equal up to rotation.
bool cyclic_equal(const std::vector<FaceSlot>& a, const std::vector<FaceSlot>& b);
std::vector<FaceSlot> reversed_slots(const std::vector<FaceSlot>& s);

/// The unique rotation system of a complex where every edge lies in at most
/// two faces (any order of two slots is the same cyclic order).
RotationSystem unique_rotation_system(const TwoComplex& x);

/// Induced rotation on the link graph of v: the rotation at link-vertex (e,
/// end) is read off the slots of the edge direction leaving v through that
/// end, each slot replaced by the corner-dart it selects.
struct InducedLinkRotation {
    LinkGraph link;
    GraphRotation rotation;
};

InducedLinkRotation induced_link_rotation(const TwoComplex& x, const RotationSystem& rot, Id v);

struct PlanarityReport {
    bool planar = false;
    std::optional<Id> failing_vertex;
    std::map<Id, long> genus_by_vertex;
};

/// A rotation system is planar when every link graph traces genus 0 in every
/// component.
PlanarityReport is_planar_rotation_system(const TwoComplex& x, const RotationSystem& rot);

/// Image of a slot under a cell permutation; requires edge-regular faces so
/// the image occurrence is determined by the image edge.
FaceSlot map_slot(const TwoComplex& x, const CellPerm& p, Id image_edge, FaceSlot s);

struct InvarianceCertificate {
    bool invariant = false;
    /// eta over the action's generators (0 = preserves, 1 = reverses).
    std::vector<std::uint8_t> eta;
    /// On failure: the generator and an edge whose sign requirement genuinely
    /// conflicts (the minority side when signs split across edges).
    std::optional<std::size_t> witness_generator;
    std::optional<Dedge> witness_edge;
    std::string detail;
};

/// Decide invariance of rot under the action: solve for the per-generator sign
/// across all directed edges, then certify the signs extend to a homomorphism
/// on the relators.
InvarianceCertificate check_invariance(const TwoComplex& x, const RotationSystem& rot,
                                       const CellularAction& action);

class TransportConflict : public std::runtime_error {
public:
    explicit TransportConflict(const std::string& m) : std::runtime_error(m) {}
};

/// Propagate seed cyclic orders across the action using the proposed signs:
/// sigma_{g d} = (-1)^{eta(g)} g sigma_d, plus the reversal constraint. Seeds
/// must cover each orbit of directed edges (under the action and reversal)
/// exactly once. Throws TransportConflict when a stabilizer forces a
/// contradiction.
RotationSystem transport_rotation(const TwoComplex& x, const CellularAction& action,
                                  const std::map<Dedge, std::vector<FaceSlot>>& seeds,
                                  const std::vector<std::uint8_t>& eta);

}  // namespace cayley3
