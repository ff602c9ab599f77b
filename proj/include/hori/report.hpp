#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hori {

/// One verification outcome: {check, algebra, status, witness?}.
struct CheckResult {
    std::string check;
    std::string subject;
    bool pass = false;
    std::optional<std::string> witness;
    std::string detail;

    std::string to_line() const;
};

struct CheckReport {
    std::vector<CheckResult> results;

    bool all_pass() const;
    void add(CheckResult r) { results.push_back(std::move(r)); }
    void merge(const CheckReport& other);
    std::string to_text() const;
};

} // namespace hori
