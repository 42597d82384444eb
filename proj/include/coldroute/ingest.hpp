#ifndef COLDROUTE_INGEST_HPP
#define COLDROUTE_INGEST_HPP

/**
 * @file ingest.hpp
 * @brief File-based ingestion of IoT temperature-logger exports.
 *
 * Log format (one file per tag, LF line endings):
 *
 *     tag_id,timestamp,temperature_c
 *     TAG-001,2025-03-02T10:00:00Z,4.87
 *     TAG-001,2025-03-02T11:00:00Z,5.12
 *
 * Timestamps are UTC-only ISO-8601 (YYYY-MM-DDTHH:MM:SSZ) and must be
 * strictly increasing. Temperatures must lie within the sanity band
 * [-60, 80] degC; a row outside it fails the whole file rather than being
 * silently dropped, since audit data must not be sanitized invisibly. The
 * canonical emitter writes temperatures with 2 decimals.
 */

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldroute/kinetics.hpp"

namespace coldroute::ingest {

/// Malformed file structure (header, column count, unparsable field).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally valid file with unacceptable data (ordering, sanity band).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kMinSaneTemperatureC = -60.0;
inline constexpr double kMaxSaneTemperatureC = 80.0;
inline constexpr const char* kCsvHeader = "tag_id,timestamp,temperature_c";

struct SensorRecord {
    std::int64_t timestamp_s = 0;  ///< UTC seconds since the Unix epoch
    double temperature_c = 0.0;
};

struct SensorLog {
    std::string tag_id;
    std::vector<SensorRecord> records;
    std::string source_file;
};

namespace detail {

// Days from civil date (Howard Hinnant's algorithm), days since 1970-01-01.
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = y - era * 400;
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + doe - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const int doe = static_cast<int>(z - era * 146097);
    const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const int mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yoe + era * 400) + (m <= 2);
}

inline bool in_range(int v, int lo, int hi) { return v >= lo && v <= hi; }

}  // namespace detail

/// Parses a UTC ISO-8601 instant of the exact form YYYY-MM-DDTHH:MM:SSZ
/// into Unix seconds. Throws FormatError on any other shape.
inline std::int64_t parse_iso8601_utc(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char t = 0, z = 0;
    if (text.size() != 20 ||
        std::sscanf(text.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c", &y, &mo, &d, &t, &h, &mi, &s,
                    &z) != 8 ||
        t != 'T' || z != 'Z') {
        throw FormatError("invalid ISO-8601 UTC timestamp: '" + text + "'");
    }
    if (!detail::in_range(mo, 1, 12) || !detail::in_range(d, 1, 31) ||
        !detail::in_range(h, 0, 23) || !detail::in_range(mi, 0, 59) ||
        !detail::in_range(s, 0, 59)) {
        throw FormatError("timestamp field out of range: '" + text + "'");
    }
    return detail::days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

inline std::string format_iso8601_utc(std::int64_t timestamp_s) {
    std::int64_t days = timestamp_s / 86400;
    std::int64_t rem = timestamp_s % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y = 0, m = 0, d = 0;
    detail::civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

/// Parses the content of one tag's CSV export. Rows failing sanity checks
/// are rejected with their line number.
inline SensorLog parse_sensor_csv(const std::string& content) {
    if (content.empty()) {
        throw FormatError("empty sensor log");
    }

    SensorLog log;
    std::size_t pos = 0;
    int line_number = 0;
    bool header_seen = false;

    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string line = content.substr(pos, eol == std::string::npos ? std::string::npos
                                                                        : eol - pos);
        pos = eol == std::string::npos ? content.size() + 1 : eol + 1;
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            if (pos > content.size()) {
                break;  // trailing newline
            }
            throw FormatError("blank line " + std::to_string(line_number));
        }

        if (!header_seen) {
            if (line != kCsvHeader) {
                throw FormatError("expected header '" + std::string(kCsvHeader) + "', got '" +
                                  line + "'");
            }
            header_seen = true;
            continue;
        }

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                                       : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos) {
            throw FormatError("line " + std::to_string(line_number) +
                              ": expected 3 comma-separated fields");
        }
        const std::string tag = line.substr(0, c1);
        const std::string stamp = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string temp_text = line.substr(c2 + 1);

        if (tag.empty()) {
            throw FormatError("line " + std::to_string(line_number) + ": empty tag_id");
        }
        if (log.tag_id.empty()) {
            log.tag_id = tag;
        } else if (tag != log.tag_id) {
            throw DataError("line " + std::to_string(line_number) +
                            ": mixed tag ids in one file ('" + log.tag_id + "' vs '" + tag + "')");
        }

        std::int64_t ts = 0;
        try {
            ts = parse_iso8601_utc(stamp);
        } catch (const FormatError& e) {
            throw FormatError("line " + std::to_string(line_number) + ": " + e.what());
        }

        char* end = nullptr;
        const double temp = std::strtod(temp_text.c_str(), &end);
        if (end == temp_text.c_str() || *end != '\0') {
            throw FormatError("line " + std::to_string(line_number) +
                              ": unparsable temperature '" + temp_text + "'");
        }
        if (temp < kMinSaneTemperatureC || temp > kMaxSaneTemperatureC) {
            throw DataError("line " + std::to_string(line_number) + ": temperature " + temp_text +
                            " outside sanity band [-60, 80] degC");
        }
        if (!log.records.empty() && ts <= log.records.back().timestamp_s) {
            throw DataError("line " + std::to_string(line_number) +
                            ": timestamps must be strictly increasing");
        }
        log.records.push_back(SensorRecord{ts, temp});
    }

    if (log.records.empty()) {
        throw DataError("sensor log contains no data rows");
    }
    return log;
}

/// Canonical emitter: LF line endings, 2-decimal temperatures. parse of the
/// output reproduces tag, times, and temperatures at that precision.
inline std::string write_sensor_csv(const SensorLog& log) {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[64];
    for (const SensorRecord& r : log.records) {
        std::snprintf(buf, sizeof(buf), "%.2f", r.temperature_c);
        out += log.tag_id;
        out += ',';
        out += format_iso8601_utc(r.timestamp_s);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

/// Converts a log into a TemperatureProfile whose sample times are hours
/// since trip_start. trip_start must not be after the first record.
inline kinetics::TemperatureProfile log_to_profile(const SensorLog& log,
                                                   std::int64_t trip_start_s) {
    if (log.records.empty()) {
        throw std::domain_error("log_to_profile: empty sensor log");
    }
    if (trip_start_s > log.records.front().timestamp_s) {
        throw std::domain_error("log_to_profile: trip_start is after the first record");
    }
    kinetics::TemperatureProfile profile;
    profile.samples.reserve(log.records.size());
    for (const SensorRecord& r : log.records) {
        profile.samples.emplace_back((r.timestamp_s - trip_start_s) / 3600.0, r.temperature_c);
    }
    return profile;
}

}  // namespace coldroute::ingest

#endif  // COLDROUTE_INGEST_HPP
