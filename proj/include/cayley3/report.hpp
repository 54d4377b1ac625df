#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cayley3/cayley.hpp"
#include "cayley3/prechambers.hpp"
#include "cayley3/rotation_system.hpp"

namespace cayley3 {

/// The verdict block produced by the check command: link planarity, invariance
/// with its signs, and the pre-chamber table.
struct CheckReport {
    bool planar = false;
    std::optional<Id> nonplanar_vertex;

    bool action_supplied = false;
    bool invariant = false;
    std::map<std::string, int> eta;  // generator name -> sign exponent
    std::optional<Dedge> witness_edge;
    std::string invariance_detail;

    PreChamberPartition partition;
    std::size_t closed_classes = 0;
    std::size_t unresolved_classes = 0;

    /// A negative verdict is a finding, not a failure (exit code 1).
    bool verdict_negative() const {
        return !planar || (action_supplied && !invariant);
    }
};

CheckReport run_check(const TwoComplex& x, const RotationSystem& rot,
                      const std::optional<CellularAction>& action,
                      const std::set<Id>& incomplete_edges = {});

nlohmann::json check_report_to_json(const CheckReport& r, const std::string& command,
                                    const std::string& inputs_digest,
                                    std::optional<double> timing_ms = std::nullopt);
std::string check_report_to_text(const CheckReport& r);

}  // namespace cayley3
