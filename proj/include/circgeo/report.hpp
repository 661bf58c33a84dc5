#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "circgeo/connection.hpp"
#include "circgeo/types.hpp"
#include "json.hpp"

namespace circgeo {

using Json = nlohmann::ordered_json;

enum class CheckStatus { pass, fail, skipped };

const char* to_string(CheckStatus status);

struct CheckRecord {
    std::size_t point_index = 0;
    Vec3 point{};
    std::string check;
    CheckStatus status = CheckStatus::pass;
    double residual = 0.0;
    double tolerance = 0.0;
    bool has_residual = false;
    std::string reason;
    Json value;  // optional payload (evaluated quantities)
};

struct ReportSummary {
    std::size_t total = 0;
    std::size_t pass_count = 0;
    std::size_t fail_count = 0;
    std::size_t skipped_count = 0;
};

struct VerificationReport {
    std::string command;
    Json config;
    std::vector<ErratumNote> errata;
    std::vector<CheckRecord> records;

    ReportSummary summary() const;

    /// Stable order: point index, then check name.
    void sort_records();

    /// 0 when no record failed, 1 otherwise.
    int exit_code() const;

    Json to_json() const;
    /// Flat projection, one line per record.
    std::string to_csv() const;
};

/// Record that passes when residual <= tolerance.
CheckRecord make_check(std::size_t index, const Vec3& point, std::string check, double residual,
                       double tolerance);
CheckRecord make_skipped(std::size_t index, const Vec3& point, std::string check, std::string reason);

/// Shortest round-trip text for a double ("nan"/"inf" for non-finite values).
std::string format_double(double v);

}  // namespace circgeo
