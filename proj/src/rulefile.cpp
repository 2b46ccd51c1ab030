#include "srff/rulefile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "srff/dataset_io.hpp"

namespace srff {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string serialize_rule(const RuleFile& rule) {
    std::ostringstream out;
    out << "srff-rule v1\n";
    out << "kind " << rule.kind << "\n";
    out << "d " << rule.d << "\n";
    if (rule.kind.rfind("okq-", 0) == 0)
        out << "okq-bandwidth " << fmt17(rule.okq_bandwidth) << "\n";
    for (std::size_t i = 0; i < rule.nodes.rows; ++i) {
        out << "node";
        for (std::size_t j = 0; j < rule.nodes.cols; ++j) out << ' ' << fmt17(rule.nodes(i, j));
        out << " weight " << fmt17(rule.weights[i]) << "\n";
    }
    return out.str();
}

RuleFile parse_rule(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line) || line != "srff-rule v1")
        throw data_error(origin + ": missing 'srff-rule v1' header");
    RuleFile rule;
    std::vector<std::vector<double>> nodes;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "kind") {
            ss >> rule.kind;
        } else if (tag == "d") {
            ss >> rule.d;
        } else if (tag == "okq-bandwidth") {
            ss >> rule.okq_bandwidth;
        } else if (tag == "node") {
            std::vector<double> comps;
            std::string tok;
            bool saw_weight = false;
            while (ss >> tok) {
                if (tok == "weight") {
                    double w;
                    if (!(ss >> w))
                        throw data_error(origin + ": line " + std::to_string(lineno) +
                                         ": missing weight value");
                    rule.weights.push_back(w);
                    saw_weight = true;
                    break;
                }
                char* end = nullptr;
                const double v = std::strtod(tok.c_str(), &end);
                if (end == tok.c_str() || *end != '\0')
                    throw data_error(origin + ": line " + std::to_string(lineno) +
                                     ": malformed node component '" + tok + "'");
                comps.push_back(v);
            }
            if (!saw_weight)
                throw data_error(origin + ": line " + std::to_string(lineno) +
                                 ": node line lacks a weight");
            if (!nodes.empty() && comps.size() != nodes.front().size())
                throw data_error(origin + ": line " + std::to_string(lineno) +
                                 ": inconsistent node dimension");
            nodes.push_back(std::move(comps));
        } else {
            throw data_error(origin + ": line " + std::to_string(lineno) + ": unknown tag '" +
                             tag + "'");
        }
    }
    if (rule.kind.empty()) throw data_error(origin + ": missing 'kind' line");
    if (nodes.empty()) throw data_error(origin + ": no node lines");
    rule.nodes = Matrix(nodes.size(), nodes.front().size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.front().size(); ++j) rule.nodes(i, j) = nodes[i][j];
    if (rule.d == 0) rule.d = static_cast<int>(rule.nodes.cols);
    return rule;
}

void write_rule_file(const std::string& path, const RuleFile& rule) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write '" + path + "'");
    out << serialize_rule(rule);
}

RuleFile read_rule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return parse_rule(in, path);
}

RuleFile to_rule_file(const RadialRule& rule) {
    RuleFile rf;
    rf.kind = "radial";
    rf.d = rule.d;
    rf.nodes = Matrix(rule.xi.size(), 1);
    for (std::size_t i = 0; i < rule.xi.size(); ++i) rf.nodes(i, 0) = rule.xi[i];
    rf.weights = rule.a;
    return rf;
}

RuleFile to_rule_file(const SphericalRule& rule) {
    RuleFile rf;
    rf.d = rule.d;
    if (rule.kind == SphereKind::OKQ) {
        rf.kind = "okq-" + to_string(rule.okq_base);
        rf.okq_bandwidth = rule.okq_bandwidth;
    } else {
        rf.kind = to_string(rule.kind);
    }
    rf.nodes = rule.theta;
    rf.weights = rule.b;
    return rf;
}

RadialRule radial_from_rule_file(const RuleFile& rf) {
    if (rf.kind != "radial") throw data_error("rule file is not a radial rule");
    if (rf.nodes.cols != 1) throw data_error("radial rule nodes must be scalar");
    RadialRule rule;
    rule.order = static_cast<int>(rf.nodes.rows);
    rule.d = rf.d;
    rule.alpha = rf.d / 2.0 - 1.0;
    rule.xi.resize(rf.nodes.rows);
    for (std::size_t i = 0; i < rf.nodes.rows; ++i) rule.xi[i] = rf.nodes(i, 0);
    rule.a = rf.weights;
    return rule;
}

SphericalRule spherical_from_rule_file(const RuleFile& rf) {
    SphericalRule rule;
    rule.d = rf.d;
    rule.M_S = static_cast<int>(rf.nodes.rows);
    rule.theta = rf.nodes;
    rule.b = rf.weights;
    std::string kind = rf.kind;
    if (kind.rfind("okq-", 0) == 0) {
        rule.kind = SphereKind::OKQ;
        rule.okq_bandwidth = rf.okq_bandwidth;
        kind = kind.substr(4);
        if (kind == "mc") rule.okq_base = SphereKind::MC;
        else if (kind == "omc") rule.okq_base = SphereKind::OMC;
        else if (kind == "somc") rule.okq_base = SphereKind::SOMC;
        else throw data_error("unknown okq base kind '" + kind + "'");
        return rule;
    }
    if (kind == "mc") rule.kind = SphereKind::MC;
    else if (kind == "omc") rule.kind = SphereKind::OMC;
    else if (kind == "somc") rule.kind = SphereKind::SOMC;
    else throw data_error("unknown rule kind '" + kind + "'");
    return rule;
}

void validate_rule(const RuleFile& rf) {
    if (rf.nodes.rows != rf.weights.size())
        throw data_error("rule validation: node/weight count mismatch");
    if (rf.kind == "radial" ? rf.nodes.cols != 1
                            : rf.nodes.cols != static_cast<std::size_t>(rf.d))
        throw data_error("rule validation: node dimension does not match d");
    double wsum = 0.0;
    for (double w : rf.weights) {
        if (!std::isfinite(w)) throw data_error("rule validation: non-finite weight");
        wsum += w;
    }
    if (rf.kind == "radial") {
        double prev = 0.0;
        for (std::size_t i = 0; i < rf.nodes.rows; ++i) {
            const double xi = rf.nodes(i, 0);
            if (!(xi > prev))
                throw data_error("rule validation: radial nodes must be positive ascending");
            prev = xi;
            if (!(rf.weights[i] > 0.0))
                throw data_error("rule validation: radial weights must be positive");
        }
        if (std::abs(wsum - 1.0) > 1e-12)
            throw data_error("rule validation: radial weights must sum to 1");
        return;
    }
    for (std::size_t i = 0; i < rf.nodes.rows; ++i) {
        double norm2 = 0.0;
        for (std::size_t c = 0; c < rf.nodes.cols; ++c) norm2 += rf.nodes(i, c) * rf.nodes(i, c);
        if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
            throw data_error("rule validation: node " + std::to_string(i) +
                             " is not on the unit sphere");
    }
    if (rf.kind.rfind("okq-", 0) == 0) {
        if (wsum < 0.5 || wsum > 1.5)
            throw data_error("rule validation: okq weight sum outside the [0.5, 1.5] sanity band");
    } else {
        const double uniform = 1.0 / static_cast<double>(rf.nodes.rows);
        for (double w : rf.weights)
            if (w != uniform)
                throw data_error("rule validation: " + rf.kind + " weights must equal 1/M_S");
    }
}

}  // namespace srff
