#ifndef OCRP_REPORT_HPP
#define OCRP_REPORT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace ocrp {

// Structured run record: deterministic key/value document, no timestamps.
// Rendering the same run twice must be byte-identical.
struct SimReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::string>> metrics;
    std::vector<std::string> failures;
    bool ok = true;

    void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void param(const std::string& key, std::int64_t value) { params.emplace_back(key, std::to_string(value)); }
    void param(const std::string& key, const Rational& value) { params.emplace_back(key, to_string(value)); }

    void metric(const std::string& key, const std::string& value) { metrics.emplace_back(key, value); }
    void metric(const std::string& key, std::int64_t value) { metrics.emplace_back(key, std::to_string(value)); }
    void metric(const std::string& key, const Rational& value) { metrics.emplace_back(key, to_string(value)); }
    void metric_double(const std::string& key, double value) { metrics.emplace_back(key, format_double(value)); }

    void fail(const std::string& what) {
        ok = false;
        failures.push_back(what);
    }

    void require(bool condition, const std::string& what) {
        if (!condition) fail(what);
    }

    void render(std::ostream& out) const {
        out << "command: " << command << '\n';
        if (!params.empty()) {
            out << "params:\n";
            for (const auto& [k, v] : params) out << "  " << k << ": " << v << '\n';
        }
        out << "ok: " << (ok ? "true" : "false") << '\n';
        if (!metrics.empty()) {
            out << "metrics:\n";
            for (const auto& [k, v] : metrics) out << "  " << k << ": " << v << '\n';
        }
        if (failures.empty()) {
            out << "failures: none\n";
        } else {
            out << "failures:\n";
            for (const auto& f : failures) out << "  - " << f << '\n';
        }
    }
};

}  // namespace ocrp

#endif
