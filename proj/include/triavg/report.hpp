#pragma once

#include <string>
#include <vector>

namespace triavg {

/// One violated identity: tag, witness tuple, both sides as printed vectors.
struct Violation {
    std::string identity;
    std::vector<int> tuple;
    std::string lhs;
    std::string rhs;
};

struct Report {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }

    void add(std::string identity, std::vector<int> tuple, std::string lhs, std::string rhs) {
        violations.push_back({std::move(identity), std::move(tuple), std::move(lhs), std::move(rhs)});
    }
    void merge(const Report& o) {
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    }
    /// Violations whose tag starts with the given prefix.
    Report filter_prefix(const std::string& prefix) const {
        Report r;
        for (const auto& v : violations)
            if (v.identity.rfind(prefix, 0) == 0) r.violations.push_back(v);
        return r;
    }
};

} // namespace triavg
