/// Symmetry reports: the result record of a pipeline run and its text and
/// JSON renderings.  All numbers are exact fractions; JSON carries them as
/// "num/den" strings.
#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "surfsym/isometry.hpp"

namespace surfsym {

struct SymmetryReport {
    std::string surface_name;
    std::string pipeline;  // "general", "general_pn", "ruled"
    std::string mode;      // requested mode
    std::vector<SymmetryRecord> records;
    std::size_t group_order = 0;
    bool closed = false;
    bool contains_identity = false;
    std::vector<std::string> warnings;
    double duration_ms = 0;
    int degree_bound = 0;
    std::uint64_t seed = 0;
};

inline const char* provenance_name(Provenance p) {
    return p == Provenance::general_pipeline ? "general_pipeline" : "ruled_pipeline";
}

inline std::string render_text(const SymmetryReport& rep) {
    std::ostringstream os;
    os << "surface: " << rep.surface_name << "\n";
    os << "pipeline: " << rep.pipeline << " (mode " << rep.mode << ", seed " << rep.seed
       << ", degree bound " << rep.degree_bound << ")\n";
    os << "symmetries: " << rep.records.size();
    os << (rep.closed ? " (closed group" : " (not closed");
    os << (rep.contains_identity ? ", contains identity)" : ", identity missing)") << "\n";
    int idx = 0;
    for (const auto& r : rep.records) {
        ++idx;
        os << "  #" << idx << "  det " << (r.isometry.det_sign > 0 ? "+1" : "-1") << "\n";
        os << "      A = [";
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) os << " " << r.isometry.A[i][j].get_str();
            os << (i < 2 ? " ;" : " ]");
        }
        os << "   b = (";
        for (int i = 0; i < 3; ++i)
            os << " " << r.isometry.b[i].get_str() << (i < 2 ? "," : " )");
        os << "\n";
        os << "      psi = (" << r.reparam.psi1.str() << ", " << r.reparam.psi2.str() << ")   ["
           << provenance_name(r.provenance) << "]\n";
    }
    if (rep.warnings.empty()) {
        os << "warnings: none\n";
    } else {
        os << "warnings:\n";
        for (const auto& w : rep.warnings) os << "  - " << w << "\n";
    }
    os << "duration: " << static_cast<long>(rep.duration_ms) << " ms\n";
    return os.str();
}

inline nlohmann::json to_json(const SymmetryReport& rep) {
    nlohmann::json j;
    j["surface"] = rep.surface_name;
    j["pipeline"] = rep.pipeline;
    j["mode"] = rep.mode;
    j["seed"] = rep.seed;
    j["degree_bound"] = rep.degree_bound;
    j["group_order"] = rep.group_order;
    j["closed"] = rep.closed;
    j["contains_identity"] = rep.contains_identity;
    j["warnings"] = rep.warnings;
    j["duration_ms"] = static_cast<long>(rep.duration_ms);
    j["symmetries"] = nlohmann::json::array();
    for (const auto& r : rep.records) {
        nlohmann::json s;
        std::vector<std::string> a;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) a.push_back(to_fraction_string(r.isometry.A[i][k]));
        std::vector<std::string> b;
        for (int i = 0; i < 3; ++i) b.push_back(to_fraction_string(r.isometry.b[i]));
        s["A"] = a;
        s["b"] = b;
        s["det"] = r.isometry.det_sign;
        s["reparam"] = {{"psi1", r.reparam.psi1.str()}, {"psi2", r.reparam.psi2.str()}};
        s["provenance"] = provenance_name(r.provenance);
        j["symmetries"].push_back(std::move(s));
    }
    return j;
}

}  // namespace surfsym
