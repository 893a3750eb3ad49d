#include <sstream>

#include <nlohmann/json.hpp>

#include "hgff/relations.hpp"

namespace hgff {

using nlohmann::ordered_json;

std::string report_json(const SuiteResult& result, const SuiteOptions& options) {
    ordered_json doc;
    doc["schema"] = "hgff-report/1";
    doc["filter"] = options.filter;
    doc["pmin"] = options.pmin;
    doc["pmax"] = options.pmax;
    doc["strict_conjectures"] = options.strict_conjectures;
    doc["summary"] = {{"exact", result.summary.exact},
                      {"up_to_sign", result.summary.up_to_sign},
                      {"fail", result.summary.fail},
                      {"skipped", result.summary.skipped},
                      {"hard_failures", result.summary.hard_failures}};
    ordered_json reports = ordered_json::array();
    for (const auto& r : result.reports) {
        ordered_json o;
        o["id"] = r.id;
        o["p"] = r.p;
        o["q"] = r.q;
        o["pass"] = to_string(r.outcome);
        o["lhs"] = r.lhs;
        o["rhs"] = r.rhs;
        if (!r.expected_sign.empty()) o["expected_sign"] = r.expected_sign;
        o["realized_sign"] = r.realized_sign == 0 ? ordered_json() : ordered_json(r.realized_sign);
        o["conjugate_choice"] = r.conjugate_choice;
        o["embedding_choice"] = r.embedding_choice;
        if (!r.alternatives.empty()) {
            ordered_json alts = ordered_json::array();
            for (const auto& a : r.alternatives) {
                alts.push_back({{"choice", a.choice},
                                {"lhs", a.lhs},
                                {"matched", a.matched},
                                {"sign", a.sign},
                                {"embedding", a.embedding}});
            }
            o["alternatives"] = std::move(alts);
        }
        o["reason"] = r.reason;
        o["conjectural"] = r.conjectural;
        if (options.timing) o["seconds"] = r.seconds;
        reports.push_back(std::move(o));
    }
    doc["reports"] = std::move(reports);
    return doc.dump(2) + "\n";
}

std::string summary_text(const SuiteResult& result) {
    std::ostringstream out;
    for (const auto& r : result.reports) {
        if (r.outcome != Outcome::Fail) continue;
        out << "FAIL " << r.id << " p=" << r.p << (r.conjectural ? " (conjectural)" : "") << ": " << r.reason
            << "\n";
    }
    const auto& s = result.summary;
    out << result.reports.size() << " checks: " << s.exact << " exact, " << s.up_to_sign << " up to sign, "
        << s.fail << " failed (" << s.hard_failures << " non-conjectural), " << s.skipped << " skipped\n";
    return out.str();
}

}  // namespace hgff
