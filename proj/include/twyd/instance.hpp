#pragma once
// Instance files: sections [group], [cocycle], [module] (repeatable) and [options], with key = value lines.

#include <cstdint>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "group.hpp"
#include "scalar.hpp"
#include "ydmod.hpp"

namespace twyd {

class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModuleSpec {
    enum class Kind { Character, Rank3 };
    Kind kind = Kind::Character;
    std::vector<int64_t> degree;  ///< character modules
    std::vector<Root> chi;
    int role = 1;  ///< rank-3 modules
    Root alpha, beta, gamma;
    std::optional<std::array<std::vector<int64_t>, 3>> generators;

    bool operator==(const ModuleSpec&) const = default;
};

struct InstanceOptions {
    std::optional<int64_t> conductor;
    size_t degree_cap = 8;
    size_t groupoid_cap = 10000;
    size_t object_cap = 1000;

    bool operator==(const InstanceOptions&) const = default;
};

struct InstanceFile {
    std::vector<int64_t> factors;
    CSeq cseq;
    std::vector<ModuleSpec> modules;
    InstanceOptions options;

    bool operator==(const InstanceFile&) const = default;

    FAGroup group() const { return FAGroup(factors); }
    CocyclePtr cocycle() const { return std::make_shared<const Cocycle3>(Cocycle3::normal_form(group(), cseq)); }

    std::vector<SimpleYD> simples() const {
        FAGroup G = group();
        CocyclePtr phi = cocycle();
        std::vector<SimpleYD> out;
        for (const auto& m : modules) {
            if (m.kind == ModuleSpec::Kind::Character) {
                out.push_back(make_character_simple(G, phi, GroupElement{m.degree}, m.chi));
            } else {
                std::optional<std::array<GroupElement, 3>> gens;
                if (m.generators) gens = std::array<GroupElement, 3>{GroupElement{(*m.generators)[0]}, GroupElement{(*m.generators)[1]},
                                                                      GroupElement{(*m.generators)[2]}};
                out.push_back(make_simple_rank3(G, phi, m.role, m.alpha, m.beta, m.gamma, gens));
            }
        }
        return out;
    }
    std::optional<YDModule> module() const {
        if (modules.empty()) return std::nullopt;
        return direct_sum(simples());
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline int64_t parse_int(const std::string& s, size_t line, const std::string& field) {
    try {
        size_t pos = 0;
        int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, field + ": expected an integer, got '" + s + "'");
    }
}

inline std::vector<int64_t> parse_ints(const std::string& s, size_t line, const std::string& field) {
    std::vector<int64_t> out;
    for (const auto& t : split_ws(s)) out.push_back(parse_int(t, line, field));
    return out;
}

inline Root parse_root(const std::string& s, size_t line, const std::string& field) {
    static const std::regex re(R"(zeta\((\d+)\)\^(-?\d+))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ParseError(line, field + ": expected zeta(N)^k, got '" + s + "'");
    int64_t n = parse_int(m[1], line, field), k = parse_int(m[2], line, field);
    if (n <= 0) throw ParseError(line, field + ": root order must be positive");
    return Root(k, n);
}

}  // namespace detail

/// Parses and validates; the module list is built once so that constraint failures surface here.
inline InstanceFile parse_instance(const std::string& text) {
    using namespace detail;
    InstanceFile inst;
    std::istringstream in(text);
    std::string raw, section;
    size_t lineno = 0;
    bool have_group = false, have_cocycle = false;
    std::vector<size_t> module_line;
    for (; std::getline(in, raw);) {
        ++lineno;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section == "module") {
                inst.modules.emplace_back();
                module_line.push_back(lineno);
            } else if (section != "group" && section != "cocycle" && section != "options") {
                throw ParseError(lineno, "unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (section.empty()) throw ParseError(lineno, "key '" + key + "' outside any section");
        if (section == "group") {
            if (key != "factors") throw ParseError(lineno, "group: unknown key '" + key + "'");
            inst.factors = parse_ints(val, lineno, "factors");
            if (inst.factors.empty()) throw ParseError(lineno, "factors: at least one invariant factor required");
            for (auto m : inst.factors)
                if (m < 1) throw ParseError(lineno, "factors: invariant factors must be positive");
            have_group = true;
        } else if (section == "cocycle") {
            if (key != "c") throw ParseError(lineno, "cocycle: unknown key '" + key + "'");
            if (!have_group) throw ParseError(lineno, "cocycle: [group] must come first");
            auto flat = parse_ints(val, lineno, "c");
            if (flat.size() != CSeq::length(inst.factors.size()))
                throw ParseError(lineno, "c: expected " + std::to_string(CSeq::length(inst.factors.size())) + " entries, got " +
                                             std::to_string(flat.size()));
            inst.cseq = CSeq::from_flat(inst.factors.size(), flat);
            have_cocycle = true;
        } else if (section == "module") {
            auto& m = inst.modules.back();
            if (key == "type") {
                if (val == "character") m.kind = ModuleSpec::Kind::Character;
                else if (val == "rank3") m.kind = ModuleSpec::Kind::Rank3;
                else throw ParseError(lineno, "type: expected character or rank3");
            } else if (key == "degree") {
                m.degree = parse_ints(val, lineno, key);
            } else if (key == "chi") {
                m.chi.clear();
                for (const auto& t : split_ws(val)) m.chi.push_back(parse_root(t, lineno, key));
            } else if (key == "role") {
                m.role = static_cast<int>(parse_int(val, lineno, key));
                if (m.role < 1 || m.role > 3) throw ParseError(lineno, "role: expected 1, 2 or 3");
            } else if (key == "alpha") {
                m.alpha = parse_root(val, lineno, key);
            } else if (key == "beta") {
                m.beta = parse_root(val, lineno, key);
            } else if (key == "gamma") {
                m.gamma = parse_root(val, lineno, key);
            } else if (key == "generators") {
                std::array<std::vector<int64_t>, 3> g;
                std::istringstream parts(val);
                std::string part;
                size_t k = 0;
                while (std::getline(parts, part, ';')) {
                    if (k == 3) throw ParseError(lineno, "generators: expected three elements separated by ';'");
                    g[k++] = parse_ints(part, lineno, key);
                }
                if (k != 3) throw ParseError(lineno, "generators: expected three elements separated by ';'");
                m.generators = g;
            } else {
                throw ParseError(lineno, "module: unknown key '" + key + "'");
            }
        } else {
            if (key == "conductor") inst.options.conductor = parse_int(val, lineno, key);
            else if (key == "degree_cap") inst.options.degree_cap = static_cast<size_t>(parse_int(val, lineno, key));
            else if (key == "groupoid_cap") inst.options.groupoid_cap = static_cast<size_t>(parse_int(val, lineno, key));
            else if (key == "object_cap") inst.options.object_cap = static_cast<size_t>(parse_int(val, lineno, key));
            else throw ParseError(lineno, "options: unknown key '" + key + "'");
        }
    }
    if (!have_group) throw ParseError(lineno, "missing [group] section");
    if (!have_cocycle) inst.cseq = CSeq::zero(inst.factors.size());

    // validation
    FAGroup G = inst.group();
    if (auto bad = inst.cseq.out_of_range(G))
        throw ValidationError("cocycle: c-sequence entry " + std::to_string(*bad) + " out of range");
    size_t n = inst.factors.size();
    for (size_t k = 0; k < inst.modules.size(); ++k) {
        const auto& m = inst.modules[k];
        std::string where = "module " + std::to_string(k + 1) + " (line " + std::to_string(module_line[k]) + "): ";
        auto check_elem = [&](const std::vector<int64_t>& e, const std::string& f) {
            if (e.size() != n) throw ValidationError(where + f + " must have " + std::to_string(n) + " exponents");
            for (size_t i = 0; i < n; ++i)
                if (e[i] < 0 || e[i] >= inst.factors[i]) throw ValidationError(where + f + " exponent out of range");
        };
        if (m.kind == ModuleSpec::Kind::Character) {
            check_elem(m.degree, "degree");
            if (m.chi.size() != n) throw ValidationError(where + "chi must have one value per generator");
        } else {
            if (n != 3 && !m.generators) throw ValidationError(where + "rank3 modules on a group of rank != 3 need generators");
            if (m.generators)
                for (const auto& g : *m.generators) check_elem(g, "generators");
        }
    }
    if (inst.options.conductor) {
        int64_t N = *inst.options.conductor;
        if (N < 1) throw ValidationError("options: conductor must be positive");
        auto fits = [&](const Root& r) { return N % r.order() == 0; };
        if (N % inst.cocycle()->order_bound() != 0) throw ValidationError("options: cocycle values do not lie in Q(zeta_" + std::to_string(N) + ")");
        for (const auto& m : inst.modules)
            for (const auto& r : m.kind == ModuleSpec::Kind::Character ? m.chi : std::vector<Root>{m.alpha, m.beta, m.gamma})
                if (!fits(r)) throw ValidationError("options: " + r.str() + " does not lie in Q(zeta_" + std::to_string(N) + ")");
    }
    try {
        inst.simples();
    } catch (const ConstraintViolated& e) {
        throw ValidationError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    return inst;
}

inline std::string emit_instance(const InstanceFile& inst) {
    auto ints = [](const std::vector<int64_t>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    std::ostringstream out;
    out << "[group]\nfactors = " << ints(inst.factors) << "\n\n";
    std::vector<int64_t> flat = inst.cseq.c1;
    flat.insert(flat.end(), inst.cseq.c2.begin(), inst.cseq.c2.end());
    flat.insert(flat.end(), inst.cseq.c3.begin(), inst.cseq.c3.end());
    out << "[cocycle]\nc = " << ints(flat) << "\n";
    for (const auto& m : inst.modules) {
        out << "\n[module]\n";
        if (m.kind == ModuleSpec::Kind::Character) {
            out << "type = character\ndegree = " << ints(m.degree) << "\nchi =";
            for (const auto& r : m.chi) out << " " << r.str();
            out << "\n";
        } else {
            out << "type = rank3\nrole = " << m.role << "\nalpha = " << m.alpha.str() << "\nbeta = " << m.beta.str()
                << "\ngamma = " << m.gamma.str() << "\n";
            if (m.generators)
                out << "generators = " << ints((*m.generators)[0]) << "; " << ints((*m.generators)[1]) << "; " << ints((*m.generators)[2])
                    << "\n";
        }
    }
    const InstanceOptions def;
    const auto& o = inst.options;
    if (o != def) {
        out << "\n[options]\n";
        if (o.conductor) out << "conductor = " << *o.conductor << "\n";
        if (o.degree_cap != def.degree_cap) out << "degree_cap = " << o.degree_cap << "\n";
        if (o.groupoid_cap != def.groupoid_cap) out << "groupoid_cap = " << o.groupoid_cap << "\n";
        if (o.object_cap != def.object_cap) out << "object_cap = " << o.object_cap << "\n";
    }
    return out.str();
}

}  // namespace twyd
