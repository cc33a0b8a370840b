#pragma once

// Axiom failures as replayable values. A Violation names the broken law by a
// stable id, carries the witness tuple in the order the law quantifies it, and
// records both offending sides (as element sets, exact scalars, or both), so a
// reader can recompute the instance and reproduce the mismatch.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperalg/element.hpp"
#include "hyperalg/rational.hpp"

namespace hyperalg {

struct Violation {
    std::string axiom;             // stable id, e.g. "HG.assoc", "IP.scalar.sup"
    std::vector<Element> witness;  // quantified elements, in axiom order
    ElementSet left_set, right_set;
    std::optional<Rational> left_value, right_value;
    std::string detail;

    std::string render() const {
        std::string out = axiom + " at (";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i) out += ", ";
            out += witness[i].to_string();
        }
        out += ")";
        if (!left_set.empty() || !right_set.empty())
            out += ": " + left_set.to_string() + " vs " + right_set.to_string();
        if (left_value || right_value) {
            out += ": ";
            out += left_value ? format_rational(*left_value) : "_";
            out += " vs ";
            out += right_value ? format_rational(*right_value) : "_";
        }
        if (!detail.empty()) out += " (" + detail + ")";
        return out;
    }
};

using Violations = std::vector<Violation>;

struct CheckOptions {
    std::size_t max_violations = 16; // per axiom id, then the scan for that law stops
    std::size_t max_universe = 12;   // weak-independence subset search cap
};

// Per-axiom cap bookkeeping shared by the checkers.
class ViolationSink {
public:
    explicit ViolationSink(const CheckOptions& opts) : opts_(opts) {}

    // Returns false once the axiom's cap is reached; callers stop scanning that law.
    bool report(Violations& out, Violation v) {
        std::size_t& n = counts_[v.axiom];
        if (n >= opts_.max_violations) return false;
        ++n;
        out.push_back(std::move(v));
        return n < opts_.max_violations;
    }

    bool open(const std::string& axiom) const {
        const auto it = counts_.find(axiom);
        return it == counts_.end() || it->second < opts_.max_violations;
    }

private:
    CheckOptions opts_;
    std::map<std::string, std::size_t> counts_;
};

} // namespace hyperalg
