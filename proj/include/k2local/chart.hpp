#pragma once

#include <iomanip>
#include <sstream>

#include "specseq.hpp"

namespace k2local {

// Chart description: a table, a stem range to draw, the bold fundamental
// period, and the labels to call out on leading classes.
struct ChartSpec {
    const HomotopyTable* table = nullptr;
    std::string title;
    int stem_lo = 0, stem_hi = 0;
    int bold_lo = 0, bold_hi = 0;
    std::vector<std::string> lead_labels;
};

struct ChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace chartdetail {

inline void check_range(const ChartSpec& spec) {
    if (!spec.table) throw ChartError("chart: no table");
    if (spec.stem_lo < spec.table->stem_lo || spec.stem_hi > spec.table->stem_hi)
        throw ChartError("chart range exceeds the computed window");
}

inline int max_filtration(const ChartSpec& spec) {
    int f = 0;
    for (const auto& [n, cls] : spec.table->classes) {
        if (n < spec.stem_lo || n > spec.stem_hi) continue;
        for (const auto& c : cls) f = std::max(f, c.filtration);
    }
    return f;
}

}  // namespace chartdetail

// One column per stem; counts capped at 9 with a '+' overflow mark; the bold
// period is marked on the axis.
inline std::string render_text(const ChartSpec& spec) {
    chartdetail::check_range(spec);
    const HomotopyTable& t = *spec.table;
    int fmax = chartdetail::max_filtration(spec);
    int width = spec.stem_hi - spec.stem_lo + 1;

    std::ostringstream os;
    os << "# " << spec.title << "  stems " << spec.stem_lo << ".." << spec.stem_hi << "  bold "
       << spec.bold_lo << ".." << spec.bold_hi << "\n";
    os << "# dot = Z/3; columns are stems, rows are filtrations\n";

    for (int f = fmax; f >= 0; --f) {
        os << "s=" << std::setw(2) << f << " |";
        for (int n = spec.stem_lo; n <= spec.stem_hi; ++n) {
            std::size_t k = 0;
            auto it = t.classes.find(n);
            if (it != t.classes.end())
                for (const auto& c : it->second)
                    if (c.filtration == f) ++k;
            char ch = ' ';
            if (k == 1) ch = '*';
            else if (k >= 2 && k <= 9) ch = static_cast<char>('0' + k);
            else if (k > 9) ch = '+';
            os << ch;
        }
        os << "\n";
    }
    os << "     +";
    for (int n = spec.stem_lo; n <= spec.stem_hi; ++n)
        os << ((n >= spec.bold_lo && n <= spec.bold_hi) ? '=' : '-');
    os << "\n      ";
    for (int n = spec.stem_lo; n <= spec.stem_hi; ++n) os << (n % 8 == 0 ? '|' : ' ');
    os << "\n      ";
    {
        std::string ticks(width, ' ');
        for (int n = spec.stem_lo; n <= spec.stem_hi; ++n) {
            if (n % 24 != 0) continue;
            std::string num = std::to_string(n);
            int pos = n - spec.stem_lo;
            if (pos + static_cast<int>(num.size()) <= width)
                ticks.replace(pos, num.size(), num);
        }
        os << ticks << "\n";
    }
    for (const auto& lbl : spec.lead_labels) {
        for (const auto& [n, cls] : t.classes) {
            if (n < spec.stem_lo || n > spec.stem_hi) continue;
            for (const auto& c : cls)
                if (c.label == lbl)
                    os << "label: " << lbl << " @ stem " << n << " (s=" << c.filtration << ")"
                       << (c.toda.empty() ? "" : "  [" + c.toda + "]") << "\n";
        }
    }
    return os.str();
}

// Hand-emitted SVG: 12 units per stem, 14 per filtration, dots with
// multiplication segments; the bold period is drawn at full opacity.
inline std::string render_svg(const ChartSpec& spec) {
    chartdetail::check_range(spec);
    const HomotopyTable& t = *spec.table;
    int fmax = chartdetail::max_filtration(spec);

    const int sx = 12, sy = 14, mx = 30, my = 24;
    int width = (spec.stem_hi - spec.stem_lo + 1) * sx + 2 * mx;
    int height = (fmax + 1) * sy + 2 * my + 16;
    auto X = [&](int stem, int slot, int nslots) {
        double base = mx + (stem - spec.stem_lo) * sx + sx / 2.0;
        if (nslots > 1) base += (slot - (nslots - 1) / 2.0) * 3.0;
        return base;
    };
    auto Y = [&](int f) { return height - my - 16 - f * sy; };
    auto bold = [&](int stem) { return stem >= spec.bold_lo && stem <= spec.bold_hi; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
       << "\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<title>" << spec.title << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axis with period ticks
    os << "<line x1=\"" << mx << "\" y1=\"" << (height - my - 10) << "\" x2=\"" << (width - mx)
       << "\" y2=\"" << (height - my - 10) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int n = spec.stem_lo; n <= spec.stem_hi; ++n) {
        if (n % 8 != 0) continue;
        double x = X(n, 0, 1);
        os << "<line x1=\"" << x << "\" y1=\"" << (height - my - 10) << "\" x2=\"" << x << "\" y2=\""
           << (height - my - 6) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        if (n % 24 == 0)
            os << "<text x=\"" << x << "\" y=\"" << (height - my + 6)
               << "\" font-size=\"8\" text-anchor=\"middle\">" << n << "</text>\n";
    }

    auto slot_of = [&](int stem, int f, const TableClass* which) {
        int total = 0, mine = 0;
        auto it = t.classes.find(stem);
        if (it == t.classes.end()) return std::pair{0, 1};
        for (const auto& c : it->second) {
            if (c.filtration != f) continue;
            if (&c == which) mine = total;
            ++total;
        }
        return std::pair{mine, std::max(total, 1)};
    };

    // multiplication segments first, dots on top
    for (const auto& e : t.edges) {
        auto sit = t.classes.find(e.stem);
        int to_stem = e.stem + (e.kind == 'a' ? 3 : 10);
        auto tit = t.classes.find(to_stem);
        if (sit == t.classes.end() || tit == t.classes.end()) continue;
        if (e.stem < spec.stem_lo || to_stem > spec.stem_hi) continue;
        if (e.idx >= sit->second.size() || e.to_idx >= tit->second.size()) continue;
        const auto& a = sit->second[e.idx];
        const auto& b = tit->second[e.to_idx];
        auto [s1, n1] = slot_of(e.stem, a.filtration, &a);
        auto [s2, n2] = slot_of(to_stem, b.filtration, &b);
        bool bb = bold(e.stem) && bold(to_stem);
        os << "<line x1=\"" << X(e.stem, s1, n1) << "\" y1=\"" << Y(a.filtration) << "\" x2=\""
           << X(to_stem, s2, n2) << "\" y2=\"" << Y(b.filtration) << "\" stroke=\""
           << (bb ? "black" : "#bbbbbb") << "\" stroke-width=\"" << (bb ? 1.2 : 0.8) << "\""
           << (e.exotic ? " stroke-dasharray=\"3,2\"" : "") << "/>\n";
    }

    for (const auto& [n, cls] : t.classes) {
        if (n < spec.stem_lo || n > spec.stem_hi) continue;
        for (const auto& c : cls) {
            auto [slot, nslots] = slot_of(n, c.filtration, &c);
            os << "<circle cx=\"" << X(n, slot, nslots) << "\" cy=\"" << Y(c.filtration)
               << "\" r=\"2.4\" fill=\"" << (bold(n) ? "black" : "#999999") << "\"/>\n";
        }
    }

    for (const auto& lbl : spec.lead_labels) {
        for (const auto& [n, cls] : t.classes) {
            if (n < spec.stem_lo || n > spec.stem_hi) continue;
            for (const auto& c : cls) {
                if (c.label != lbl) continue;
                auto [slot, nslots] = slot_of(n, c.filtration, &c);
                os << "<text x=\"" << X(n, slot, nslots) << "\" y=\"" << (Y(c.filtration) - 5)
                   << "\" font-size=\"7\" text-anchor=\"middle\">" << lbl << "</text>\n";
            }
        }
    }
    os << "</svg>\n";
    return os.str();
}

inline std::size_t chart_dot_count(const ChartSpec& spec) {
    std::size_t k = 0;
    for (const auto& [n, cls] : spec.table->classes)
        if (n >= spec.stem_lo && n <= spec.stem_hi) k += cls.size();
    return k;
}

}  // namespace k2local
