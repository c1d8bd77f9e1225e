#include "thetacycle/report_io.hpp"

#include "thetacycle/basis_cache.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace thetacycle {

namespace {

std::string xml_escape(const std::string& s) {
    std::string r;
    r.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': r += "&amp;"; break;
            case '<': r += "&lt;"; break;
            case '>': r += "&gt;"; break;
            default: r += c;
        }
    }
    return r;
}

std::string num(long v) { return std::to_string(v); }

long nice_step(long range, long target) {
    if (range <= target) return 1;
    for (long e = 1;; e *= 10)
        for (long m : {1L, 2L, 5L}) {
            long s = m * e;
            if (range / s <= target) return s;
        }
}

const char* status_fill(TheoremStatus s) {
    switch (s) {
        case TheoremStatus::Exact: return "#ddf0dd";
        case TheoremStatus::Bound: return "#fbe8cc";
        case TheoremStatus::Engine: return "#f6dcdc";
    }
    return "#ffffff";
}

struct Panel {
    long x0, y0, w, h;
};

void render_panel(std::string& svg, const CycleReport& rep, const Panel& pn,
                  bool dashed) {
    const auto& R = rep.records;
    long i_max = rep.i_max;
    long wmin = 0, wmax = 0;
    bool any = false;
    for (const auto& r : R) {
        if (r.zero) continue;
        if (!any || r.weight_filt < wmin) wmin = r.weight_filt;
        if (!any || r.weight_filt > wmax) wmax = r.weight_filt;
        any = true;
    }
    std::string title = "theta cycle of " + xml_escape(rep.form) + " mod " +
                        num(static_cast<long>(rep.mod.p)) +
                        (rep.mod.m > 1 ? "^" + num(rep.mod.m) : "");
    svg += "<text x=\"" + num(pn.x0 + pn.w / 2) + "\" y=\"" + num(pn.y0 - 16) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    if (!any) {
        svg += "<text x=\"" + num(pn.x0 + pn.w / 2) + "\" y=\"" +
               num(pn.y0 + pn.h / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\">all indices vanish"
               "</text>\n";
        return;
    }
    if (wmax == wmin) wmax = wmin + 1;
    long xden = std::max<long>(i_max, 1);
    auto X = [&](long i) {
        return pn.x0 + (i * pn.w + xden / 2) / xden;
    };
    auto Y = [&](long w) {
        return pn.y0 + pn.h -
               ((w - wmin) * pn.h + (wmax - wmin) / 2) / (wmax - wmin);
    };

    // background shading by provenance of the value
    {
        long start = 0;
        for (long i = 1; i <= i_max + 1; ++i) {
            bool flush = i > i_max ||
                         R[static_cast<std::size_t>(i)].status !=
                             R[static_cast<std::size_t>(start)].status;
            if (!flush) continue;
            long a = X(start), b = X(i - 1);
            if (b <= a) b = a + 1;
            svg += "<rect x=\"" + num(a) + "\" y=\"" + num(pn.y0) +
                   "\" width=\"" + num(b - a) + "\" height=\"" + num(pn.h) +
                   "\" fill=\"" +
                   status_fill(R[static_cast<std::size_t>(start)].status) +
                   "\"/>\n";
            start = i;
        }
    }
    // exceptional indices
    for (long e : rep.exceptional_indices) {
        if (e > i_max) continue;
        svg += "<line x1=\"" + num(X(e)) + "\" y1=\"" + num(pn.y0) +
               "\" x2=\"" + num(X(e)) + "\" y2=\"" + num(pn.y0 + pn.h) +
               "\" stroke=\"#2e8b57\" stroke-width=\"1\" "
               "stroke-dasharray=\"2,2\"/>\n";
    }
    // axes
    svg += "<rect x=\"" + num(pn.x0) + "\" y=\"" + num(pn.y0) + "\" width=\"" +
           num(pn.w) + "\" height=\"" + num(pn.h) +
           "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    {
        long sx = nice_step(i_max, 8);
        for (long t = 0; t <= i_max; t += sx) {
            svg += "<line x1=\"" + num(X(t)) + "\" y1=\"" + num(pn.y0 + pn.h) +
                   "\" x2=\"" + num(X(t)) + "\" y2=\"" +
                   num(pn.y0 + pn.h + 4) + "\" stroke=\"#333\"/>\n";
            svg += "<text x=\"" + num(X(t)) + "\" y=\"" +
                   num(pn.y0 + pn.h + 16) +
                   "\" text-anchor=\"middle\" font-size=\"10\">" + num(t) +
                   "</text>\n";
            if (sx == 1 && i_max == 0) break;
        }
        long sy = nice_step(wmax - wmin, 8);
        long first = ((wmin + sy - 1) / sy) * sy;
        if (wmin <= 0) first = (wmin / sy) * sy;
        for (long t = first; t <= wmax; t += sy) {
            if (t < wmin) continue;
            svg += "<line x1=\"" + num(pn.x0 - 4) + "\" y1=\"" + num(Y(t)) +
                   "\" x2=\"" + num(pn.x0) + "\" y2=\"" + num(Y(t)) +
                   "\" stroke=\"#333\"/>\n";
            svg += "<text x=\"" + num(pn.x0 - 7) + "\" y=\"" + num(Y(t) + 3) +
                   "\" text-anchor=\"end\" font-size=\"10\">" + num(t) +
                   "</text>\n";
        }
    }
    // axis labels
    svg += "<text x=\"" + num(pn.x0 + pn.w / 2) + "\" y=\"" +
           num(pn.y0 + pn.h + 32) +
           "\" text-anchor=\"middle\" font-size=\"12\">i</text>\n";
    {
        std::string ylabel =
            "\xCF\x89_{" + num(static_cast<long>(rep.mod.p)) +
            (rep.mod.m > 1 ? "^" + num(rep.mod.m) : "") +
            "}(\xCE\xB8^i f)";
        long lx = pn.x0 - 48, ly = pn.y0 + pn.h / 2;
        svg += "<text x=\"" + num(lx) + "\" y=\"" + num(ly) +
               "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " +
               num(lx) + " " + num(ly) + ")\">" + ylabel + "</text>\n";
    }
    // the filtration polyline, split at vanishing indices
    {
        std::string pts;
        auto flush = [&]() {
            if (pts.empty()) return;
            svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" "
                   "stroke-width=\"1.5\"";
            if (dashed) svg += " stroke-dasharray=\"5,3\"";
            svg += " points=\"" + pts + "\"/>\n";
            pts.clear();
        };
        for (const auto& r : R) {
            if (r.zero) {
                flush();
                continue;
            }
            if (!pts.empty()) pts += " ";
            pts += num(X(r.i)) + "," + num(Y(r.weight_filt));
        }
        flush();
    }
    // low points
    for (const auto& r : R) {
        if (r.zero || r.classification != PointClass::Low) continue;
        svg += "<circle cx=\"" + num(X(r.i)) + "\" cy=\"" +
               num(Y(r.weight_filt)) +
               "\" r=\"3\" fill=\"none\" stroke=\"#c03030\" "
               "stroke-width=\"1.5\"/>\n";
    }
}

} // namespace

std::string report_to_csv(const CycleReport& report) {
    std::string out =
        "i,n,i_prime,weight_filt,factor_filt,classification,exceptional,status\n";
    for (const auto& r : report.records) {
        out += num(r.i) + "," + num(r.n) + "," + num(r.i_prime) + ",";
        if (r.zero)
            out += "-,-,";
        else
            out += num(r.weight_filt) + "," + num(r.factor_filt) + ",";
        out += std::string(to_string(r.classification)) + ",";
        out += r.exceptional ? "true" : "false";
        out += std::string(",") + to_string(r.status) + "\n";
    }
    return out;
}

std::string report_to_json(const CycleReport& report) {
    nlohmann::ordered_json j;
    j["p"] = report.mod.p;
    j["m"] = report.mod.m;
    j["k"] = report.k;
    j["form"] = report.form;
    j["i_max"] = report.i_max;
    j["theorem_mode"] = report.theorem_mode;
    j["ordinary"] = report.ordinary;
    j["periodic_from"] = report.periodic_from;
    j["exceptional_indices"] = report.exceptional_indices;
    j["coverage"] = nlohmann::ordered_json{
        {"exact", report.coverage.exact},
        {"bounded", report.coverage.bounded},
        {"total", report.coverage.total},
        {"exact_fraction", report.coverage.exact_fraction},
        {"bounded_fraction", report.coverage.bounded_fraction},
    };
    auto records = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        nlohmann::ordered_json rj;
        rj["i"] = r.i;
        rj["n"] = r.n;
        rj["i_prime"] = r.i_prime;
        if (r.zero) {
            rj["weight_filt"] = nullptr;
            rj["factor_filt"] = nullptr;
        } else {
            rj["weight_filt"] = r.weight_filt;
            rj["factor_filt"] = r.factor_filt;
        }
        rj["classification"] = to_string(r.classification);
        rj["exceptional"] = r.exceptional;
        rj["status"] = to_string(r.status);
        if (r.p_divided) rj["p_divided"] = r.p_divided;
        records.push_back(std::move(rj));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

std::string report_to_svg(const CycleReport& report,
                          const CycleReport* mod_p_companion) {
    bool dual = mod_p_companion != nullptr;
    long width = dual ? 1560 : 900, height = 470;
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      num(width) + "\" height=\"" + num(height) +
                      "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
                      "\" font-family=\"monospace\">\n";
    svg += "<rect width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" fill=\"white\"/>\n";
    Panel left{80, 40, dual ? 630 : 790, 370};
    render_panel(svg, report, left, report.mod.m == 1);
    if (dual) {
        Panel right{840, 40, 630, 370};
        render_panel(svg, *mod_p_companion, right, true);
    }
    svg += "</svg>\n";
    return svg;
}

void write_report_files(const CycleReport& report,
                        const std::filesystem::path& prefix, bool csv,
                        bool json) {
    std::filesystem::path c = prefix, j = prefix;
    c += ".csv";
    j += ".json";
    if (csv) atomic_write_file(c, report_to_csv(report));
    if (json) atomic_write_file(j, report_to_json(report));
}

} // namespace thetacycle
