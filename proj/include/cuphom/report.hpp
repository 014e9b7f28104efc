#pragma once

#include <algorithm>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

namespace cuphom {

struct CheckLine {
    std::string name;
    bool passed = true;
    std::string detail;
};

/// Ordered list of named pass/fail checks.
struct CheckReport {
    std::vector<CheckLine> lines;

    void add(std::string name, bool passed, std::string detail = {})
    {
        lines.push_back({std::move(name), passed, std::move(detail)});
    }

    void append(const CheckReport& other) { lines.insert(lines.end(), other.lines.begin(), other.lines.end()); }

    bool ok() const
    {
        return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed; });
    }

    std::vector<CheckLine> failures() const
    {
        std::vector<CheckLine> out;
        std::copy_if(lines.begin(), lines.end(), std::back_inserter(out), [](const CheckLine& l) { return !l.passed; });
        return out;
    }

    std::string render() const
    {
        std::string s;
        for (const auto& l : lines) {
            s += l.passed ? "PASS " : "FAIL ";
            s += l.name;
            if (!l.detail.empty())
                s += ": " + l.detail;
            s += '\n';
        }
        return s;
    }
};

}  // namespace cuphom
