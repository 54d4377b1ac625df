#include "cayley3/report.hpp"

#include <sstream>

namespace cayley3 {

using nlohmann::json;

CheckReport run_check(const TwoComplex& x, const RotationSystem& rot,
                      const std::optional<CellularAction>& action,
                      const std::set<Id>& incomplete_edges) {
    CheckReport rep;
    PlanarityReport pr = is_planar_rotation_system(x, rot);
    rep.planar = pr.planar;
    rep.nonplanar_vertex = pr.failing_vertex;

    if (action) {
        rep.action_supplied = true;
        InvarianceCertificate cert = check_invariance(x, rot, *action);
        rep.invariant = cert.invariant;
        rep.witness_edge = cert.witness_edge;
        rep.invariance_detail = cert.detail;
        if (cert.invariant)
            for (std::size_t i = 0; i < cert.eta.size(); ++i) {
                std::string name = i < action->generator_names.size()
                                       ? action->generator_names[i]
                                       : "g" + std::to_string(i);
                rep.eta[name] = cert.eta[i];
            }
    }

    std::set<Id> complete;
    for (const auto& [e, uv] : x.edges())
        if (!incomplete_edges.count(e)) complete.insert(e);
    rep.partition = prechambers_truncated(x, rot, complete);
    for (const PreChamberClass& c : rep.partition.classes)
        (c.status == ClassStatus::Closed ? rep.closed_classes : rep.unresolved_classes)++;
    return rep;
}

json check_report_to_json(const CheckReport& r, const std::string& command,
                          const std::string& inputs_digest, std::optional<double> timing_ms) {
    json j;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    json verdicts;
    verdicts["planar"] = r.planar;
    if (r.nonplanar_vertex) verdicts["nonplanar_vertex"] = *r.nonplanar_vertex;
    if (r.action_supplied) {
        verdicts["invariant"] = r.invariant;
        if (r.invariant) {
            json eta = json::object();
            for (const auto& [name, s] : r.eta) eta[name] = s;
            verdicts["eta"] = std::move(eta);
        } else {
            if (r.witness_edge) verdicts["witness_edge"] = r.witness_edge->edge;
            verdicts["invariance_detail"] = r.invariance_detail;
        }
    }
    j["verdicts"] = std::move(verdicts);

    json classes = json::array();
    for (const PreChamberClass& c : r.partition.classes) {
        json one;
        one["min_member"] = {c.key().face, c.key().rev ? "-" : "+"};
        one["size"] = c.members.size();
        one["status"] = c.status == ClassStatus::Closed ? "closed" : "boundary-unresolved";
        one["incident_edges"] = c.incident_edges.size();
        classes.push_back(std::move(one));
    }
    j["prechambers"] = {{"classes", std::move(classes)},
                        {"closed", r.closed_classes},
                        {"unresolved", r.unresolved_classes}};
    if (timing_ms) j["timing_ms"] = *timing_ms;
    return j;
}

std::string check_report_to_text(const CheckReport& r) {
    std::ostringstream os;
    os << "planar: " << (r.planar ? "yes" : "no");
    if (r.nonplanar_vertex) os << " (fails at vertex " << *r.nonplanar_vertex << ")";
    os << "\n";
    if (r.action_supplied) {
        if (r.invariant) {
            os << "invariant: yes, eta:";
            for (const auto& [name, s] : r.eta) os << " " << name << "=" << s;
            os << "\n";
        } else {
            os << "invariant: no";
            if (r.witness_edge) os << " (witness edge " << r.witness_edge->edge << ")";
            if (!r.invariance_detail.empty()) os << ": " << r.invariance_detail;
            os << "\n";
        }
    }
    os << "prechambers: " << r.partition.size() << " classes, " << r.closed_classes
       << " closed, " << r.unresolved_classes << " unresolved\n";
    for (const PreChamberClass& c : r.partition.classes)
        os << "  class at face " << c.key().face << (c.key().rev ? "-" : "+") << ": size "
           << c.members.size() << ", "
           << (c.status == ClassStatus::Closed ? "closed" : "boundary-unresolved") << ", "
           << c.incident_edges.size() << " incident edges\n";
    return os.str();
}

}  // namespace cayley3
