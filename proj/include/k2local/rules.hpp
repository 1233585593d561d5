#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "module.hpp"

namespace k2local {

// Exponent expression a*i + b in the rule's free variable.
struct ExpExpr {
    int a = 0;
    long b = 0;
    long eval(long i) const { return a * i + b; }
};

struct RulePattern {
    std::array<ExpExpr, kGenCount> exps{};
    bool has(Gen g) const { return exps[gid(g)].a != 0 || exps[gid(g)].b != 0; }
};

// (i + shift) mod m must land in `residues`; m == 0 accepts every i.
struct Congruence {
    int shift = 0;
    int mod = 0;
    std::set<int> residues;
    bool accepts(long i) const {
        if (mod == 0) return true;
        long r = ((i + shift) % mod + mod) % mod;
        return residues.count(static_cast<int>(r)) > 0;
    }
};

// Linearity multiplier g^step: the rule family is closed under multiplication
// by powers of it (nonnegative for polynomial generators, all of Z for
// invertible ones, a single flag for exterior ones).
struct Multiplier {
    Gen g;
    int step = 1;
};

struct DifferentialRule {
    int page = 0;
    int sign = +1;
    RulePattern source, target;
    Congruence cond;
    std::vector<Multiplier> linear;
    Gen tracked = Gen::count_;  // generator carrying the free exponent
    std::string text;
};

// ---- parsing ---------------------------------------------------------------

namespace ruleparse {

inline void skip_ws(std::string_view s, std::size_t& p) {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
}

inline ExpExpr parse_exp_expr(std::string_view s) {
    // forms: 12, -3, i, -i, 2i, i+3, i-1, 2i+1, (any of these in parens)
    ExpExpr e;
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') t += c;
    std::size_t ipos = t.find('i');
    if (ipos == std::string::npos) {
        e.a = 0;
        e.b = std::stol(t);
        return e;
    }
    std::string coef = t.substr(0, ipos);
    if (coef.empty() || coef == "+") e.a = 1;
    else if (coef == "-") e.a = -1;
    else e.a = std::stoi(coef);
    std::string rest = t.substr(ipos + 1);
    e.b = rest.empty() ? 0 : std::stol(rest);
    return e;
}

inline RulePattern parse_pattern(std::string_view s, int& sign, Gen& tracked) {
    RulePattern pat;
    sign = 1;
    tracked = Gen::count_;
    std::size_t p = 0;
    skip_ws(s, p);
    if (p < s.size() && (s[p] == '-' || s[p] == '+')) {
        if (s[p] == '-') sign = -1;
        ++p;
    }
    while (p < s.size()) {
        skip_ws(s, p);
        std::size_t start = p;
        while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
        std::string name(s.substr(start, p - start));
        if (name.empty()) throw std::invalid_argument("rule pattern parse error: '" + std::string(s) + "'");
        ExpExpr e{0, 1};
        if (p < s.size() && s[p] == '^') {
            ++p;
            std::size_t estart = p;
            if (p < s.size() && s[p] == '(') {
                int depth = 0;
                do {
                    if (s[p] == '(') ++depth;
                    if (s[p] == ')') --depth;
                    ++p;
                } while (p < s.size() && depth > 0);
            } else {
                if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
                while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])))) ++p;
            }
            e = parse_exp_expr(s.substr(estart, p - estart));
        }
        if (name == "1") {
            skip_ws(s, p);
            if (p < s.size() && s[p] == '*') ++p;
            continue;
        }
        auto g = gen_by_name(name);
        if (!g) throw std::invalid_argument("rule pattern: unknown generator '" + name + "'");
        auto& slot = pat.exps[gid(*g)];
        slot.a += e.a;
        slot.b += e.b;
        if (e.a != 0) {
            if (tracked != Gen::count_ && tracked != *g)
                throw std::invalid_argument("rule pattern: more than one tracked generator");
            tracked = *g;
        }
        skip_ws(s, p);
        if (p < s.size()) {
            if (s[p] != '*') throw std::invalid_argument("rule pattern: expected '*'");
            ++p;
        }
    }
    return pat;
}

}  // namespace ruleparse

// One rule per line:
//   d5 w^(i+3) -> - alpha*beta^2*w^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,w^9
// The `where` clause also accepts a shifted variable, e.g. `where i+1 mod 9 in {...}`.
inline DifferentialRule parse_rule_line(const std::string& line) {
    DifferentialRule rule;
    rule.text = line;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("rule line missing '->': " + line);
    std::string head = line.substr(0, arrow);
    std::string tail = line.substr(arrow + 2);

    std::istringstream hs(head);
    std::string dtok, srctok;
    hs >> dtok >> srctok;
    if (dtok.size() < 2 || dtok[0] != 'd') throw std::invalid_argument("rule line must start with dN: " + line);
    rule.page = std::stoi(dtok.substr(1));

    std::size_t where_pos = tail.find(" where ");
    std::size_t linear_pos = tail.find(" linear ");
    std::string tgt = tail.substr(0, std::min(where_pos, linear_pos));

    int src_sign = 1, tgt_sign = 1;
    Gen src_tracked = Gen::count_, tgt_tracked = Gen::count_;
    rule.source = ruleparse::parse_pattern(srctok, src_sign, src_tracked);
    rule.target = ruleparse::parse_pattern(tgt, tgt_sign, tgt_tracked);
    if (src_sign != 1) throw std::invalid_argument("sign belongs on the target: " + line);
    rule.sign = tgt_sign;
    rule.tracked = src_tracked;
    if (tgt_tracked != Gen::count_ && src_tracked == Gen::count_)
        throw std::invalid_argument("target uses i but source does not: " + line);

    if (where_pos != std::string::npos) {
        std::size_t end = (linear_pos != std::string::npos && linear_pos > where_pos) ? linear_pos : tail.size();
        std::string w = tail.substr(where_pos + 7, end - (where_pos + 7));
        // i[+k] mod m in {a,b,...}
        std::size_t modp = w.find("mod");
        std::size_t inp = w.find("in");
        std::string var = w.substr(0, modp);
        std::string mods = w.substr(modp + 3, inp - (modp + 3));
        rule.cond.mod = std::stoi(mods);
        std::size_t plus = var.find_first_of("+-");
        rule.cond.shift = (plus == std::string::npos) ? 0 : std::stoi(var.substr(plus));
        std::string set = w.substr(w.find('{') + 1);
        set = set.substr(0, set.find('}'));
        std::istringstream ss(set);
        std::string item;
        while (std::getline(ss, item, ',')) rule.cond.residues.insert(std::stoi(item));
    }
    if (linear_pos != std::string::npos) {
        std::string l = tail.substr(linear_pos + 8);
        std::istringstream ss(l);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t a = item.find_first_not_of(" \t");
            std::size_t b = item.find_last_not_of(" \t\r\n");
            if (a == std::string::npos) continue;
            item = item.substr(a, b - a + 1);
            Multiplier m;
            std::size_t caret = item.find('^');
            std::string name = item.substr(0, caret);
            m.step = (caret == std::string::npos) ? 1 : std::stoi(item.substr(caret + 1));
            auto g = gen_by_name(name);
            if (!g) throw std::invalid_argument("unknown linear multiplier: " + item);
            m.g = *g;
            rule.linear.push_back(m);
        }
    }
    if (rule.tracked != Gen::count_) {
        for (const auto& m : rule.linear)
            if (m.g == rule.tracked) {
                if (rule.source.exps[gid(rule.tracked)].a != 1 || rule.target.exps[gid(rule.tracked)].a != 1)
                    throw std::invalid_argument("multiplier on the tracked generator needs unit slope: " + line);
                if (rule.cond.mod == 0 || m.step % rule.cond.mod != 0)
                    throw std::invalid_argument("multiplier step must refine the congruence: " + line);
            }
    }
    return rule;
}

inline std::vector<DifferentialRule> parse_rules(std::istream& in) {
    std::vector<DifferentialRule> rules;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t a = line.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r\n");
        rules.push_back(parse_rule_line(line.substr(a, b - a + 1)));
    }
    return rules;
}

inline std::vector<DifferentialRule> load_rules(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule file: " + path);
    return parse_rules(in);
}

// ---- matching --------------------------------------------------------------

struct RuleMatch {
    long i = 0;
    F9 coeff;        // rule sign times normalization signs
    Monomial target;
};

// Try to write m = (multipliers) * source(i); on success return the matched
// target (multipliers carried across).
inline std::optional<RuleMatch> match_rule(const DifferentialRule& rule, const Monomial& m,
                                           const RingSpec& ring) {
    std::array<long, kGenCount> mult_exp{};  // multiplier power used per gen
    long i = 0;
    bool have_i = false;

    std::array<int, kGenCount> step{};
    for (const auto& mu : rule.linear) step[gid(mu.g)] = mu.step;

    // effective exponents: v2 counts double into v2half in fold_w rings
    std::array<long, kGenCount> eff{};
    for (std::size_t g = 0; g < kGenCount; ++g) eff[g] = m.e[g];
    if (ring.fold_w) {
        eff[gid(Gen::v2half)] += 2 * eff[gid(Gen::v2)];
        eff[gid(Gen::v2)] = 0;
    }

    // tracked generator first
    if (rule.tracked != Gen::count_) {
        std::size_t g = gid(rule.tracked);
        const ExpExpr& e = rule.source.exps[g];
        long rem = eff[g] - e.b;
        if (step[g] != 0) {
            i = rem;  // slope-1 with a congruence refined by the step
            have_i = true;
        } else {
            if (rem % e.a != 0) return std::nullopt;
            i = rem / e.a;
            have_i = true;
        }
        if (!rule.cond.accepts(i)) return std::nullopt;
    }

    for (std::size_t g = 0; g < kGenCount; ++g) {
        if (rule.tracked != Gen::count_ && g == gid(rule.tracked)) continue;
        const ExpExpr& e = rule.source.exps[g];
        long want = e.a * (have_i ? i : 0) + e.b;
        long rem = eff[g] - want;
        if (rem == 0) continue;
        if (step[g] == 0) return std::nullopt;
        if (rem % step[g] != 0) return std::nullopt;
        long n = rem / step[g];
        Gen gen = static_cast<Gen>(g);
        switch (info(gen).kind) {
            case GenKind::polynomial:
                if (n < 0) return std::nullopt;
                break;
            case GenKind::exterior:
                if (n != 0 && n != 1) return std::nullopt;
                break;
            case GenKind::invertible:
                break;
            default:
                return std::nullopt;
        }
        mult_exp[g] = rem;  // in raw exponent units
    }

    // assemble target: target pattern + multiplier exponents
    Monomial t;
    for (std::size_t g = 0; g < kGenCount; ++g) {
        const ExpExpr& e = rule.target.exps[g];
        long v = e.a * i + e.b + mult_exp[g];
        if (rule.tracked != Gen::count_ && g == gid(rule.tracked) && step[g] != 0)
            v = e.b + i;  // slope-1 tracked generator, multiplier already folded into i
        t.e[g] = static_cast<int16_t>(v);
    }
    if (ring.fold_w && t.exp(Gen::v2) != 0) {
        t.add(Gen::v2half, 2 * t.exp(Gen::v2));
        t.set(Gen::v2, 0);
    }
    RuleMatch out;
    out.i = i;
    F9 c = normalize(t, ring);
    if (c.is_zero()) return std::nullopt;
    out.coeff = F9(rule.sign) * c;
    out.target = t;
    return out;
}

// Differential of a monomial under a full rule set at one page.
inline Vec apply_rules(const std::vector<DifferentialRule>& rules, int page, const Monomial& m,
                       const RingSpec& ring) {
    Vec out;
    for (const auto& r : rules) {
        if (r.page != page) continue;
        if (auto hit = match_rule(r, m, ring)) out.add_term(hit->coeff, hit->target);
    }
    return out;
}

}  // namespace k2local
