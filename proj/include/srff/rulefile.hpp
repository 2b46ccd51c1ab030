#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "srff/matrix.hpp"
#include "srff/radial.hpp"
#include "srff/spherical.hpp"

namespace srff {

// On-disk quadrature rule: line-oriented text, header "srff-rule v1",
// kind/d metadata, then one "node <components...> weight <w>" line per
// node with 17 significant digits (round-trips bit-exactly).
struct RuleFile {
    std::string kind;  // "radial", "mc", "omc", "somc", "okq-<base>"
    int d = 0;
    double okq_bandwidth = 0.0;  // only for okq-* kinds
    Matrix nodes;                // one row per node
    std::vector<double> weights;
};

std::string serialize_rule(const RuleFile& rule);
RuleFile parse_rule(std::istream& in, const std::string& origin = "<stream>");

void write_rule_file(const std::string& path, const RuleFile& rule);
RuleFile read_rule_file(const std::string& path);

RuleFile to_rule_file(const RadialRule& rule);
RuleFile to_rule_file(const SphericalRule& rule);
RadialRule radial_from_rule_file(const RuleFile& rf);
SphericalRule spherical_from_rule_file(const RuleFile& rf);

// Structural invariants: unit node norms for spherical kinds, positive
// ascending nodes and positive weights summing to 1 for radial, weight-sum
// sanity band for okq. Throws data_error with a description on violation.
void validate_rule(const RuleFile& rule);

}  // namespace srff
