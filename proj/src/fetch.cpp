#include <fstream>
#include <regex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hgff/errors.hpp"
#include "hgff/newform.hpp"

namespace hgff {

namespace {

using nlohmann::json;

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) throw Error(ErrorCode::FetchError, "unsupported endpoint URL '" + url + "'");
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::string expand_template(const std::string& tmpl, const std::string& label) {
    const auto pos = tmpl.find("{label}");
    if (pos == std::string::npos) return tmpl + (tmpl.empty() || tmpl.back() == '/' ? "" : "/") + label;
    std::string out = tmpl;
    out.replace(pos, 7, label);
    return out;
}

// Maps an LMFDB-style record onto the snapshot schema.
json to_schema(const json& record, const std::string& label) {
    json doc;
    doc["label"] = record.value("label", label);
    doc["weight"] = record.at("weight");
    doc["level"] = record.at("level");
    if (record.contains("char")) {
        doc["char"] = record["char"];
    } else if (record.contains("char_orbit_label")) {
        doc["char"] = record["char_orbit_label"];
    } else {
        doc["char"] = "";
    }
    doc["field_poly"] = record.contains("field_poly") ? record["field_poly"] : json::array({0, 1});
    json an = json::array();
    for (const auto& row : record.at("an")) {
        json r = json::array();
        if (row.is_array()) {
            for (const auto& c : row) r.push_back(c.is_string() ? c : json(std::to_string(c.get<std::int64_t>()) + "/1"));
        } else {
            r.push_back(row.is_string() ? row : json(std::to_string(row.get<std::int64_t>()) + "/1"));
        }
        an.push_back(std::move(r));
    }
    doc["an"] = std::move(an);
    doc["embedding_precision_bits"] = record.value("embedding_precision_bits", 256);
    return doc;
}

}  // namespace

std::filesystem::path fetch_newform(const std::string& label, const std::string& endpoint,
                                    const std::filesystem::path& dest_dir) {
    static const std::regex label_re(R"(^[0-9A-Za-z._-]+$)");
    if (!std::regex_match(label, label_re)) throw Error(ErrorCode::LabelNotFound, "malformed label '" + label + "'");

    const auto bundled = data_dir() / (label + ".json");
    if (std::filesystem::exists(bundled)) return bundled;
    if (endpoint.empty()) throw Error(ErrorCode::LabelNotFound, label + " is not in the bundled snapshot");

    const SplitUrl url = split_url(expand_template(endpoint, label));
    httplib::Client client(url.origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    client.set_follow_location(true);
    auto res = client.Get(url.path);
    if (!res) throw Error(ErrorCode::FetchError, "request failed: " + httplib::to_string(res.error()));
    if (res->status == 404) throw Error(ErrorCode::LabelNotFound, label + " unknown to " + url.origin);
    if (res->status != 200) throw Error(ErrorCode::FetchError, "HTTP status " + std::to_string(res->status));

    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::FetchError, std::string("response is not JSON: ") + e.what());
    }
    json doc;
    try {
        if (body.is_object() && body.contains("data")) {
            if (!body["data"].is_array() || body["data"].empty())
                throw Error(ErrorCode::LabelNotFound, label + " unknown to " + url.origin);
            doc = to_schema(body["data"].front(), label);
        } else {
            doc = to_schema(body, label);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::FetchError, std::string("response does not describe a newform: ") + e.what());
    }
    // validate before writing
    try {
        parse_newform(doc.dump());
    } catch (const Error& e) {
        throw Error(ErrorCode::FetchError, std::string("response failed validation: ") + e.what());
    }

    std::filesystem::create_directories(dest_dir);
    const auto path = dest_dir / (label + ".json");
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::FetchError, "cannot write " + path.string());
    out << doc.dump() << "\n";
    return path;
}

}  // namespace hgff
