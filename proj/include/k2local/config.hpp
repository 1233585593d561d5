#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "rules.hpp"

namespace k2local {

// key = value configuration: window bounds, differential sign convention,
// output directory.  Flags override whatever the file sets.
struct Config {
    Window window;  // defaults: stems -60..230, filtrations 0..40
    char d5_sign = '-';
    char d9_sign = '+';
    std::string out_dir = ".";

    static Config from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        Config cfg;
        std::string line;
        while (std::getline(in, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::size_t eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                std::size_t a = s.find_first_not_of(" \t\r\n");
                if (a == std::string::npos) return std::string();
                std::size_t b = s.find_last_not_of(" \t\r\n");
                return s.substr(a, b - a + 1);
            };
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (!val.empty() && val.front() == '"' && val.back() == '"' && val.size() >= 2)
                val = val.substr(1, val.size() - 2);
            if (key == "stem_min") cfg.window.stem_lo = std::stoi(val);
            else if (key == "stem_max") cfg.window.stem_hi = std::stoi(val);
            else if (key == "s_max") cfg.window.s_hi = std::stoi(val);
            else if (key == "d5_sign") cfg.d5_sign = val.empty() ? '-' : val[0];
            else if (key == "d9_sign") cfg.d9_sign = val.empty() ? '+' : val[0];
            else if (key == "out_dir") cfg.out_dir = val;
            else throw std::runtime_error("unknown config key: " + key);
        }
        return cfg;
    }
};

// The canonical differential families, also shipped as rule files.  The sign
// convention is configurable; dimension-level results do not depend on it.
inline std::string g24_rules_text(char d5 = '-', char d9 = '+') {
    std::ostringstream os;
    os << "# fixed-point differentials for the maximal finite subgroup page\n";
    os << "d5 w^(i+3) -> " << d5 << " alpha*beta^2*w^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,w^9\n";
    os << "d9 alpha*w^(i+6) -> " << d9 << " beta^5*w^i  where i mod 9 in {0,1,2}  linear beta,w^9\n";
    return os.str();
}

inline std::string g12_rules_text(char d5 = '-', char d9 = '+') {
    std::ostringstream os;
    os << "# same families on the index-two fixed points, written on v2half\n";
    os << "d5 v2half^(i+3) -> " << d5 << " alpha*beta^2*v2half^i  where i mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9\n";
    os << "d9 alpha*v2half^(i+6) -> " << d9 << " beta^5*v2half^i  where i mod 9 in {0,1,2}  linear beta,v2half^9\n";
    return os.str();
}

inline std::string g20_rules_text(char d5 = '-', char d9 = '+') {
    std::ostringstream os;
    os << "# differential families on the detection-image page\n";
    os << "d5 v2half^(i+3) -> " << d5
       << " w*v2half^(i-1)*alpha*beta^2  where i mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9,zeta\n";
    os << "d5 a35*v2half^(i+3)*beta -> " << d5
       << " a35*w*v2half^(i-1)*alpha*beta^3  where i mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9,zeta\n";
    os << "d5 w*v2half^(i+3)*beta -> " << d5
       << " v2half^(i+1)*alpha*beta^3  where i+1 mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9,zeta\n";
    os << "d5 a35*w*v2half^(i+3)*beta -> " << d5
       << " a35*v2half^(i+1)*alpha*beta^3  where i+1 mod 9 in {0,1,2,3,4,5}  linear beta,v2half^9,zeta\n";
    os << "d9 v2half^(i+6)*alpha -> " << d9
       << " v2half^i*beta^5  where i mod 9 in {0,1,2}  linear beta,v2half^9,zeta\n";
    os << "d9 a35*v2half^(i+6)*alpha -> " << d9
       << " a35*v2half^i*beta^5  where i mod 9 in {0,1,2}  linear beta,v2half^9,zeta\n";
    os << "d9 w*v2half^(i+5)*alpha -> " << d9
       << " w*v2half^(i-1)*beta^5  where i mod 9 in {0,1,2}  linear beta,v2half^9,zeta\n";
    os << "d9 a35*w*v2half^(i+5)*alpha*beta -> " << d9
       << " a35*w*v2half^(i-1)*beta^6  where i mod 9 in {0,1,2}  linear beta,v2half^9,zeta\n";
    return os.str();
}

inline std::string algebraic_resolution_rules_text(bool with_zeta) {
    std::ostringstream os;
    os << "# centralizer-resolution differentials; v2^i on the b36 line is\n";
    os << "# written as w^(2i) since v2 = -w^2 in this page's alphabet\n";
    std::string lin = with_zeta ? "  linear zeta" : "";
    os << "d1 w^(2i+1)*b0 -> v2^i*e8" << lin << "\n";
    os << "d1 w^(2i)*b36 -> v2^i*e36" << lin << "\n";
    os << "d1 w^(2i+1)*b36 -> v2^i*e44" << lin << "\n";
    os << "d2 alpha*w^(2i+1)*b36 -> v2^i*e48" << lin << "\n";
    return os.str();
}

inline std::vector<DifferentialRule> rules_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_rules(in);
}

}  // namespace k2local
