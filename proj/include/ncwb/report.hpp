// Copyright 2026 The ncwb Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Report-style results returned by verification routines.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace ncwb {

namespace detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
    /// Classes of size ≥ 2, members ascending, classes ordered by smallest member.
    std::vector<std::vector<std::size_t>> nontrivial_classes() {
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < parent_.size(); ++i) groups[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto &[root, members] : groups) {
            if (members.size() > 1) out.push_back(std::move(members));
        }
        return out;
    }

  private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

/// One named check with its outcome and the offending cases, if any.
struct Verdict {
    std::string check;
    bool passed = true;
    std::vector<std::string> violations;
    std::string detail;
};

struct Report {
    std::string subject;
    /// Quantifier restrictions that apply to every verdict in the report.
    std::vector<std::string> scope_notes;
    std::vector<Verdict> verdicts;

    [[nodiscard]] bool passed() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict &v) { return v.passed; });
    }

    [[nodiscard]] const Verdict *find(const std::string &check) const {
        auto it = std::find_if(verdicts.begin(), verdicts.end(),
                               [&](const Verdict &v) { return v.check == check; });
        return it == verdicts.end() ? nullptr : &*it;
    }

    void absorb(const Report &other, const std::string &prefix = "") {
        for (auto v : other.verdicts) {
            if (!prefix.empty()) v.check = prefix + ": " + v.check;
            verdicts.push_back(std::move(v));
        }
        for (const auto &note : other.scope_notes) {
            if (std::find(scope_notes.begin(), scope_notes.end(), note) == scope_notes.end()) {
                scope_notes.push_back(note);
            }
        }
    }
};

} // namespace ncwb
