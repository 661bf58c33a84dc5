#include "circgeo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace circgeo {

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped: return "skipped";
    }
    return "unknown";
}

ReportSummary VerificationReport::summary() const {
    ReportSummary s;
    s.total = records.size();
    for (const auto& r : records) {
        switch (r.status) {
            case CheckStatus::pass: ++s.pass_count; break;
            case CheckStatus::fail: ++s.fail_count; break;
            case CheckStatus::skipped: ++s.skipped_count; break;
        }
    }
    return s;
}

void VerificationReport::sort_records() {
    std::stable_sort(records.begin(), records.end(), [](const CheckRecord& x, const CheckRecord& y) {
        if (x.point_index != y.point_index) return x.point_index < y.point_index;
        return x.check < y.check;
    });
}

int VerificationReport::exit_code() const { return summary().fail_count == 0 ? 0 : 1; }

namespace {

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

Json VerificationReport::to_json() const {
    Json out;
    out["command"] = command;
    out["config"] = config;
    Json notes = Json::array();
    for (const auto& e : errata) {
        notes.push_back({{"symbol", e.symbol}, {"printed", e.printed}, {"corrected", e.corrected}});
    }
    out["errata"] = std::move(notes);

    Json recs = Json::array();
    for (const auto& r : records) {
        Json j;
        j["index"] = r.point_index;
        j["point"] = {r.point[0], r.point[1], r.point[2]};
        j["check"] = r.check;
        j["status"] = to_string(r.status);
        if (r.has_residual) {
            j["residual"] = number(r.residual);
            j["tolerance"] = number(r.tolerance);
        }
        if (!r.reason.empty()) j["reason"] = r.reason;
        if (!r.value.is_null()) j["value"] = r.value;
        recs.push_back(std::move(j));
    }
    out["records"] = std::move(recs);

    const auto s = summary();
    out["summary"] = {{"total", s.total},
                      {"pass_count", s.pass_count},
                      {"fail_count", s.fail_count},
                      {"skipped_count", s.skipped_count}};
    return out;
}

std::string VerificationReport::to_csv() const {
    std::ostringstream out;
    out << "index,x1,x2,x3,check,status,residual,tolerance,reason\n";
    for (const auto& r : records) {
        out << r.point_index << ',' << format_double(r.point[0]) << ',' << format_double(r.point[1]) << ','
            << format_double(r.point[2]) << ',' << r.check << ',' << to_string(r.status) << ',';
        if (r.has_residual) out << format_double(r.residual) << ',' << format_double(r.tolerance);
        else out << ',';
        std::string reason = r.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        out << ',' << reason << '\n';
    }
    return out.str();
}

CheckRecord make_check(std::size_t index, const Vec3& point, std::string check, double residual,
                       double tolerance) {
    CheckRecord r;
    r.point_index = index;
    r.point = point;
    r.check = std::move(check);
    r.residual = residual;
    r.tolerance = tolerance;
    r.has_residual = true;
    r.status = residual <= tolerance ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord make_skipped(std::size_t index, const Vec3& point, std::string check, std::string reason) {
    CheckRecord r;
    r.point_index = index;
    r.point = point;
    r.check = std::move(check);
    r.status = CheckStatus::skipped;
    r.reason = std::move(reason);
    return r;
}

}  // namespace circgeo
