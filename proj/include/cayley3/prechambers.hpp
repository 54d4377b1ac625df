#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cayley3/rotation_system.hpp"
#include "cayley3/two_complex.hpp"

namespace cayley3 {

enum class ClassStatus { Closed, BoundaryUnresolved };

/// One pre-chamber: an equivalence class of directed faces under succession.
struct PreChamberClass {
    std::vector<Dface> members;   // sorted
    ClassStatus status = ClassStatus::Closed;
    std::set<Id> incident_edges;  // undirected edge ids of member boundaries

    Dface key() const { return members.front(); }
};

/// Partition of all directed faces into pre-chambers, ordered by minimal member.
struct PreChamberPartition {
    std::vector<PreChamberClass> classes;
    std::map<Dface, std::size_t> class_of;

    std::size_t size() const { return classes.size(); }
};

/// Trace pre-chambers: successor pairs link the slot of a traversal to the
/// next slot in the rotation at the traversed direction, taken with the
/// orientation traversing that direction reversed. Classes are the
/// symmetric-transitive closure. Succession is only followed across edges in
/// `complete_edges`; a member face touching any other edge marks its class
/// boundary-unresolved.
PreChamberPartition prechambers_truncated(const TwoComplex& x, const RotationSystem& rot,
                                          const std::set<Id>& complete_edges);

/// Pre-chambers of a finite complex given in full: every edge is complete.
PreChamberPartition prechambers(const TwoComplex& x, const RotationSystem& rot);

/// Adjacency of pre-chamber classes: two classes are adjacent when some
/// undirected face has one direction in each. Components are maximal chains.
struct TightComponents {
    std::vector<std::vector<std::size_t>> components;        // class indices, sorted
    std::set<std::pair<std::size_t, std::size_t>> adjacent;  // class index pairs, i < j
};

TightComponents tight_components(const PreChamberPartition& p, const TwoComplex& x);

/// Delete the faces in D, excise their slots from the rotation, and retrace.
/// Refuses (face-not-separating) when some face of D has both directions in
/// one class, since deleting it would not merge two chambers.
struct MergeResult {
    TwoComplex complex;
    RotationSystem rotation;
    PreChamberPartition partition;
};

MergeResult merge_prechambers(const TwoComplex& x, const RotationSystem& rot,
                              const std::set<Id>& faces_to_delete);

/// One radius of a ball sequence: the complex, its rotation, and the edges
/// whose face star is complete at this radius.
struct BallData {
    TwoComplex complex;
    RotationSystem rotation;
    std::set<Id> complete_edges;
};

using BallBuilder = std::function<BallData(std::size_t radius)>;

enum class FinitenessStatus { FiniteCertified, UnresolvedAtAllRadii };

struct ClassFinitenessReport {
    Dface key;  // minimal member, stable across radii
    FinitenessStatus status = FinitenessStatus::UnresolvedAtAllRadii;
    std::size_t certified_radius = 0;  // valid when finite-certified
    std::size_t size = 0;              // members when certified, else size at largest radius
    std::size_t boundary_edges = 0;    // incomplete edges touched at the largest radius
};

struct FinitenessReport {
    std::vector<std::size_t> radii;
    std::vector<ClassFinitenessReport> classes;  // ordered by key
    std::vector<std::size_t> unresolved_per_radius;
};

/// Certify finiteness of pre-chambers on a nested ball sequence. A class is
/// finite-certified at the first radius where it is closed; a certified class
/// must persist unchanged at larger radii (else inconsistent nesting).
FinitenessReport finiteness_on_balls(const BallBuilder& builder,
                                     const std::vector<std::size_t>& radii);

}  // namespace cayley3
