#pragma once

// Machine-readable run reports. Every CLI invocation produces one JSON
// document; the human-readable output is rendered from that document, so the
// JSON always contains at least as much as the text.
//
// Schema (all keys required unless marked optional):
//   {
//     "tool":      "hyperalg",
//     "version":   string,
//     "command":   "verify" | "gram-schmidt" | "search" | "fixtures",
//     "input":     string,                  file path or "" when none
//     "options":   object,                  echoed flags
//     "checks":    [ { "id": string,
//                      "verdict": "pass" | "fail" | "error",
//                      "violations": [ Violation ],
//                      "bounds": object,    sample lists the verdict is relative to
//                      "notes": [ string ],
//                      "error": string      optional, present when verdict = "error"
//                    } ],
//     "results":   object,                  command-specific payload
//     "exit_code": 0 | 1 | 2 | 3,
//     "timing_ms": number
//   }
//   Violation = { "axiom": string, "witness": [string], "left_set": [string],
//                 "right_set": [string], "left_value": string|null,
//                 "right_value": string|null, "detail": string }

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperalg/element.hpp"
#include "hyperalg/rational.hpp"
#include "hyperalg/violation.hpp"

namespace hyperalg {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "hyperalg";
inline constexpr const char* kToolVersion = "1.0.0";

inline Json violation_to_json(const Violation& v) {
    Json j;
    j["axiom"] = v.axiom;
    Json w = Json::array();
    for (const auto& e : v.witness) w.push_back(e.to_string());
    j["witness"] = std::move(w);
    Json ls = Json::array(), rs = Json::array();
    for (const auto& e : v.left_set) ls.push_back(e.to_string());
    for (const auto& e : v.right_set) rs.push_back(e.to_string());
    j["left_set"] = std::move(ls);
    j["right_set"] = std::move(rs);
    j["left_value"] = v.left_value ? Json(format_rational(*v.left_value)) : Json(nullptr);
    j["right_value"] = v.right_value ? Json(format_rational(*v.right_value)) : Json(nullptr);
    j["detail"] = v.detail;
    return j;
}

struct CheckOutcome {
    std::string id;
    std::string verdict; // pass | fail | error
    Violations violations;
    Json bounds = Json::object();
    std::vector<std::string> notes;
    std::string error; // engaged when verdict == "error"

    Json to_json() const {
        Json j;
        j["id"] = id;
        j["verdict"] = verdict;
        Json vs = Json::array();
        for (const auto& v : violations) vs.push_back(violation_to_json(v));
        j["violations"] = std::move(vs);
        j["bounds"] = bounds;
        j["notes"] = notes;
        if (!error.empty()) j["error"] = error;
        return j;
    }
};

// One run of the tool: checks plus a command-specific results payload.
struct RunReport {
    std::string command;
    std::string input;
    Json options = Json::object();
    std::vector<CheckOutcome> checks;
    Json results = Json::object();
    int exit_code = 0;
    double timing_ms = 0.0;

    Json to_json() const {
        Json j;
        j["tool"] = kToolName;
        j["version"] = kToolVersion;
        j["command"] = command;
        j["input"] = input;
        j["options"] = options;
        Json cs = Json::array();
        for (const auto& c : checks) cs.push_back(c.to_json());
        j["checks"] = std::move(cs);
        j["results"] = results;
        j["exit_code"] = exit_code;
        j["timing_ms"] = timing_ms;
        return j;
    }
};

// Validates a document against the schema above; returns the problems found
// (empty means valid). Deliberately structural, not a general validator.
inline std::vector<std::string> report_schema_errors(const Json& j) {
    std::vector<std::string> errs;
    const auto need = [&](const char* key, bool ok) {
        if (!ok) errs.push_back(std::string("missing or mistyped key: ") + key);
    };
    if (!j.is_object()) return {"report is not a JSON object"};
    need("tool", j.contains("tool") && j["tool"].is_string() && j["tool"] == kToolName);
    need("version", j.contains("version") && j["version"].is_string());
    need("command", j.contains("command") && j["command"].is_string() &&
                        (j["command"] == "verify" || j["command"] == "gram-schmidt" ||
                         j["command"] == "search" || j["command"] == "fixtures"));
    need("input", j.contains("input") && j["input"].is_string());
    need("options", j.contains("options") && j["options"].is_object());
    need("results", j.contains("results") && j["results"].is_object());
    need("exit_code", j.contains("exit_code") && j["exit_code"].is_number_integer() &&
                          j["exit_code"].get<int>() >= 0 && j["exit_code"].get<int>() <= 3);
    need("timing_ms", j.contains("timing_ms") && j["timing_ms"].is_number());
    if (!j.contains("checks") || !j["checks"].is_array()) {
        errs.push_back("missing or mistyped key: checks");
        return errs;
    }
    std::size_t i = 0;
    for (const auto& c : j["checks"]) {
        const std::string at = "checks[" + std::to_string(i++) + "]";
        if (!c.is_object()) {
            errs.push_back(at + " is not an object");
            continue;
        }
        if (!c.contains("id") || !c["id"].is_string()) errs.push_back(at + ".id");
        if (!c.contains("verdict") || !c["verdict"].is_string() ||
            (c["verdict"] != "pass" && c["verdict"] != "fail" && c["verdict"] != "error"))
            errs.push_back(at + ".verdict");
        if (!c.contains("bounds") || !c["bounds"].is_object()) errs.push_back(at + ".bounds");
        if (!c.contains("notes") || !c["notes"].is_array()) errs.push_back(at + ".notes");
        if (!c.contains("violations") || !c["violations"].is_array()) {
            errs.push_back(at + ".violations");
            continue;
        }
        std::size_t k = 0;
        for (const auto& v : c["violations"]) {
            const std::string vat = at + ".violations[" + std::to_string(k++) + "]";
            if (!v.is_object()) {
                errs.push_back(vat + " is not an object");
                continue;
            }
            if (!v.contains("axiom") || !v["axiom"].is_string()) errs.push_back(vat + ".axiom");
            for (const char* key : {"witness", "left_set", "right_set"})
                if (!v.contains(key) || !v[key].is_array())
                    errs.push_back(vat + "." + key);
            for (const char* key : {"left_value", "right_value"})
                if (!v.contains(key) || !(v[key].is_string() || v[key].is_null()))
                    errs.push_back(vat + "." + key);
            if (!v.contains("detail") || !v["detail"].is_string()) errs.push_back(vat + ".detail");
        }
    }
    return errs;
}

// Text rendering of a report document, for terminals. Verdict lines first,
// then witnesses, then the command payload summary.
inline std::string render_report_text(const Json& j) {
    std::string out;
    out += j.value("tool", "?") + std::string(" ") + j.value("version", "?") + " " +
           j.value("command", "?");
    const std::string input = j.value("input", "");
    if (!input.empty()) out += " " + input;
    out += "\n";
    for (const auto& c : j["checks"]) {
        out += "  [" + c.value("verdict", "?") + "] " + c.value("id", "?");
        const auto& vs = c["violations"];
        if (!vs.empty()) out += " (" + std::to_string(vs.size()) + " violation" +
                                 (vs.size() == 1 ? "" : "s") + ")";
        if (c.contains("error")) out += " - " + c["error"].get<std::string>();
        out += "\n";
        for (const auto& v : vs) {
            out += "      " + v["axiom"].get<std::string>() + " at (";
            bool first = true;
            for (const auto& w : v["witness"]) {
                if (!first) out += ", ";
                out += w.get<std::string>();
                first = false;
            }
            out += ")";
            if (!v["detail"].get<std::string>().empty())
                out += ": " + v["detail"].get<std::string>();
            out += "\n";
        }
        for (const auto& n : c["notes"]) out += "      note: " + n.get<std::string>() + "\n";
    }
    if (j.contains("results") && !j["results"].empty())
        out += "  results: " + j["results"].dump() + "\n";
    out += "  exit " + std::to_string(j.value("exit_code", -1)) + " (" +
           std::to_string(j.value("timing_ms", 0.0)) + " ms)\n";
    return out;
}

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        const auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace hyperalg
