#include "nchh/report.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>

namespace nchh::report {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string real_short(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const BoundCertificate& cert) {
    std::string row;
    row += to_string(cert.rule);
    row += ',' + std::to_string(cert.n);
    row += ',' + real17(cert.a);
    row += ',' + real17(cert.b);
    row += ',' + csv_field(cert.function);
    row += ',' + csv_field(cert.phi);
    row += ',';
    row += to_string(cert.cls);
    row += ',' + real17(cert.mean);
    row += ',' + real17(cert.lower);
    row += ',' + real17(cert.upper);
    row += cert.holds ? ",true" : ",false";
    row += cert.n_free ? ",true" : ",false";
    return row;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::ordered_json to_json(const ClassReport& report) {
    nlohmann::ordered_json j;
    j["class"] = to_string(report.cls);
    j["verdict"] = report.pass ? "pass" : "fail";
    j["worst_violation"] = report.worst_violation;
    nlohmann::ordered_json w;
    w["x"] = report.witness.x;
    w["y"] = report.witness.y;
    if (report.witness.t) w["t"] = *report.witness.t;
    j["witness"] = w;
    j["samples_checked"] = report.samples_checked;
    j["tol"] = report.tol;
    return j;
}

nlohmann::ordered_json to_json(const BoundCertificate& cert) {
    nlohmann::ordered_json j;
    j["rule"] = to_string(cert.rule);
    j["n"] = cert.n;
    j["class"] = to_string(cert.cls);
    j["phi"] = cert.phi;
    j["theorem"] = cert.theorem;
    j["mean"] = cert.mean;
    j["lower"] = cert.lower;
    j["upper"] = cert.upper;
    j["margin_lower"] = cert.margin_lower;
    j["margin_upper"] = cert.margin_upper;
    j["holds"] = cert.holds;
    j["n_free"] = cert.n_free;
    j["provenance"] = cert.stated ? "stated" : "extended";
    j["a"] = cert.a;
    j["b"] = cert.b;
    j["function"] = cert.function;
    j["empty_envelope"] = cert.empty_envelope;
    j["hypothesis"] = to_string(cert.hypothesis);
    if (cert.class_report) j["class_report"] = to_json(*cert.class_report);
    j["notes"] = cert.notes;
    return j;
}

nlohmann::ordered_json to_json(const QuadratureResult& result) {
    nlohmann::ordered_json j;
    j["rule"] = to_string(result.rule);
    j["n"] = result.n;
    j["value"] = result.value;
    j["mean"] = result.mean;
    return j;
}

}  // namespace nchh::report
