#pragma once

#include "triavg/cohom.hpp"
#include "triavg/htpy.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace triavg {

/// Parsed structure-constants file. Sections: assoc, bimodule, triass,
/// operator, weight, gspace, gops. Tensor entries are sparse `i j k p/q`
/// lines, matrices `row col p/q`, all dims declared up front.
struct SpecFile {
    std::optional<AssocSpec> assoc;
    std::optional<BimodSpec> bimodule;  // requires a preceding assoc section
    std::optional<TriassSpec> triass;
    std::optional<LinearOp> op;
    std::optional<Rat> weight;

    std::map<std::string, GradedSpace> gspaces;
    struct GOps {
        int degree = 1;
        bool trees = false;
        std::vector<std::pair<HKey, Rat>> entries;
    };
    std::map<std::string, GOps> gops;

    /// Relative averaging data when assoc+bimodule+operator+weight, or the
    /// adjoint interpretation when only assoc+operator+weight are present.
    RAvgSpec to_ravg() const;
    Direction to_direction(const CohomologyContext& c) const;
    HFamily bind_ops(const std::string& name, const GradedSpace& sp) const;
};

struct SpecError {
    int line;
    std::string message;
};

/// Throws std::invalid_argument with "<name>:<line>: message" on bad input.
SpecFile parse_spec(std::istream& in, const std::string& name);
SpecFile load_spec(const std::string& path);

/// Canonical text dump; parse(dump(x)) == x on every loadable file.
std::string dump_spec(const SpecFile& s);

/// Cochain dump lines `tree-index | i1 .. in | j | p/q`.
std::string dump_cochain(const Cochain& f);

} // namespace triavg
