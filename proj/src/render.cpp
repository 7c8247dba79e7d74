#include "stabscan/render.hpp"

#include "stabscan/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace stabscan {

namespace {

using P2 = Eigen::Vector2d;

std::string num(double x) {
    if (std::abs(x) < 5e-7) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Arc {
    P2 p, q, mid;
    bool line = false;
    double R = 0.0;
    int sweep = 0;
};

P2 unit(double th) { return {std::cos(th), std::sin(th)}; }

double cross(const P2& a, const P2& b) { return a.x() * b.y() - a.y() * b.x(); }

// circular arc from p to q meeting the unit circle orthogonally; k > 0 flattens repeated arcs
Arc make_arc(double ta, double tb, int k) {
    Arc a;
    a.p = unit(ta);
    a.q = unit(tb);
    double delta = std::acos(std::clamp(a.p.dot(a.q), -1.0, 1.0));
    if (delta < 1e-9) {
        a.line = true;
        a.mid = 0.9 * a.p;
        return a;
    }
    double half = delta / 2;
    P2 bis = a.p + a.q;
    bis = bis.norm() < 1e-9 ? P2(-a.p.y(), a.p.x()) : P2(bis.normalized());
    if (delta > PI - 1e-9 && k == 0) {
        a.line = true;
        a.mid = P2::Zero();
        return a;
    }
    a.R = delta > PI - 1e-9 ? 1.0 + k : std::tan(half) * (1.0 + 0.6 * k);
    double h = std::cos(half) + std::sqrt(std::max(0.0, a.R * a.R - std::sin(half) * std::sin(half)));
    P2 c = h * bis;
    a.mid = (h - a.R) * bis;
    a.sweep = cross(a.p - c, a.mid - c) > 0 ? 0 : 1;
    return a;
}

struct Canvas {
    double cx, cy, r;
    std::string x(const P2& v) const { return num(cx + r * v.x()); }
    std::string y(const P2& v) const { return num(cy - r * v.y()); }
    std::string at(const P2& v) const { return x(v) + " " + y(v); }
};

std::map<std::string, double> place_points(const ChamberAtlas& at, const CategoryModel& d, const RenderSpec& spec,
                                           bool poincare) {
    std::vector<std::string> names;
    for (const auto& b : at.boundary) names.push_back(b.name);
    for (const auto& e : at.excluded) names.push_back(e.name);
    std::map<std::string, double> theta;
    if (poincare) {
        std::vector<std::string> rest;
        for (const auto& n : names) {
            auto x = d.boundary_coordinate(n);
            if (x) {
                std::complex<double> w = std::isinf(*x) ? std::complex<double>(1.0, 0.0)
                                                        : (*x - std::complex<double>(0, 1)) / (*x + std::complex<double>(0, 1));
                theta[n] = std::arg(w);
            } else if (spec.anchors.count(n)) {
                theta[n] = spec.anchors.at(n) * PI / 180.0;
            } else {
                rest.push_back(n);
            }
        }
        for (std::size_t i = 0; i < rest.size(); ++i) theta[rest[i]] = 2 * PI * (i + 0.5) / rest.size();
        return theta;
    }
    bool coords = !names.empty() && std::all_of(names.begin(), names.end(), [&](const std::string& n) {
        return d.boundary_coordinate(n).has_value();
    });
    if (coords)
        std::stable_sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
            return *d.boundary_coordinate(a) < *d.boundary_coordinate(b);
        });
    for (std::size_t i = 0; i < names.size(); ++i) theta[names[i]] = PI / 2 + 2 * PI * i / names.size();
    return theta;
}

}  // namespace

RenderResult render_svg(const ChamberAtlas& at, const CategoryModel& d, const RenderSpec& spec) {
    const bool poincare = spec.style == RenderStyle::Poincare;
    if (poincare && !d.hyperbolic() && !spec.force_poincare)
        throw PreconditionError("the poincare style needs a hyperbolic driver (or force_poincare)");
    RenderResult res;
    const double size = spec.size;
    Canvas cv{size / 2, size / 2, size / 2 - 48};
    auto theta = place_points(at, d, spec, poincare);

    std::vector<Arc> arcs(at.walls.size());
    std::map<std::pair<std::string, std::string>, int> repeats;
    for (std::size_t i = 0; i < at.walls.size(); ++i) {
        const auto& w = at.walls[i];
        std::string a = w.heart.a.name, b = w.heart.b.name;
        if (b < a) std::swap(a, b);
        int k = repeats[{a, b}]++;
        arcs[i] = make_arc(theta.at(w.heart.a.name), theta.at(w.heart.b.name), k);
    }
    std::vector<P2> cellpos(at.cells.size(), P2::Zero());
    std::vector<int> cellcnt(at.cells.size(), 0);
    for (std::size_t i = 0; i < at.walls.size(); ++i) {
        for (int c : {at.walls[i].cell_a, at.walls[i].cell_b}) {
            if (c < 0) continue;
            cellpos[c] += arcs[i].mid;
            cellcnt[c]++;
        }
    }
    for (std::size_t c = 0; c < at.cells.size(); ++c)
        if (cellcnt[c]) cellpos[c] /= cellcnt[c];

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.size << "\" height=\""
       << spec.size << "\" viewBox=\"0 0 " << spec.size << " " << spec.size << "\">\n";
    os << "<metadata>driver=" << xml(d.name()) << "; depth=" << at.depth
       << "; style=" << (poincare ? "poincare" : "schematic");
    if (!d.hyperbolic()) os << "; disclaimer=parabolic component, the disk picture is only topologically accurate";
    os << "</metadata>\n";
    os << "<circle class=\"disk\" cx=\"" << num(cv.cx) << "\" cy=\"" << num(cv.cy) << "\" r=\"" << num(cv.r)
       << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

    if (spec.chambers) {
        os << "<g class=\"chambers\">\n";
        for (std::size_t c = 0; c < at.cells.size(); ++c) {
            double op = 0.45 / (1.0 + at.cells[c].distance);
            double rad = at.cells.size() == 1 ? cv.r * 0.98 : 10.0;
            os << "<circle class=\"cell\" data-key=\"" << xml(at.cells[c].key) << "\" cx=\"" << cv.x(cellpos[c])
               << "\" cy=\"" << cv.y(cellpos[c]) << "\" r=\"" << num(rad) << "\" fill=\"" << spec.shade_color
               << "\" fill-opacity=\"" << num(op) << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (spec.walls) {
        os << "<g class=\"walls\" fill=\"none\" stroke=\"" << spec.wall_color << "\">\n";
        for (std::size_t i = 0; i < at.walls.size(); ++i) {
            const Arc& a = arcs[i];
            os << "<path class=\"wall\" data-key=\"" << xml(at.walls[i].key) << "\" stroke-width=\""
               << (at.walls[i].true_wall ? "1.2" : "0.6") << "\" d=\"M " << cv.at(a.p);
            if (a.line)
                os << " L " << cv.at(a.q);
            else
                os << " A " << num(a.R * cv.r) << " " << num(a.R * cv.r) << " 0 0 " << a.sweep << " " << cv.at(a.q);
            os << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (spec.speiser) {
        os << "<g class=\"speiser\" stroke=\"" << spec.speiser_color << "\" stroke-width=\"1.5\">\n";
        for (const auto& [a, b] : at.speiser)
            os << "<line x1=\"" << cv.x(cellpos[a]) << "\" y1=\"" << cv.y(cellpos[a]) << "\" x2=\"" << cv.x(cellpos[b])
               << "\" y2=\"" << cv.y(cellpos[b]) << "\"/>\n";
        os << "</g>\n";
    }
    if (spec.exchange) {
        os << "<g class=\"exchange\" stroke=\"" << spec.exchange_color << "\" stroke-width=\"1\">\n";
        for (const auto& e : at.exchange)
            os << "<line x1=\"" << cv.x(arcs[e.from].mid) << "\" y1=\"" << cv.y(arcs[e.from].mid) << "\" x2=\""
               << cv.x(arcs[e.to].mid) << "\" y2=\"" << cv.y(arcs[e.to].mid) << "\"/>\n";
        os << "</g>\n";
    }

    std::size_t npts = at.boundary.size() + at.excluded.size();
    std::size_t every = 1;
    if (spec.labels && spec.max_labels > 0 && npts > static_cast<std::size_t>(spec.max_labels)) {
        every = (npts + spec.max_labels - 1) / spec.max_labels;
        res.warnings.push_back("too many boundary labels; showing every " + std::to_string(every) + "th");
        os << "<!-- warning: labels down-sampled -->\n";
    }
    os << "<g class=\"points\">\n";
    std::size_t idx = 0;
    auto dot = [&](const std::string& n, bool excluded) {
        P2 v = unit(theta.at(n));
        os << "<circle class=\"" << (excluded ? "excluded" : "boundary") << "\" data-name=\"" << xml(n) << "\" cx=\""
           << cv.x(v) << "\" cy=\"" << cv.y(v) << "\" r=\"4\" fill=\"" << (excluded ? "#ffffff" : spec.dot_color)
           << "\" stroke=\"#000000\"/>\n";
        if (spec.labels && idx % every == 0) {
            P2 l = 1.09 * v;
            os << "<text x=\"" << cv.x(l) << "\" y=\"" << cv.y(l)
               << "\" font-size=\"11\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << xml(n) << "</text>\n";
        }
        ++idx;
    };
    for (const auto& b : at.boundary) dot(b.name, false);
    for (const auto& e : at.excluded) dot(e.name, true);
    os << "</g>\n</svg>\n";
    res.svg = os.str();
    return res;
}

}  // namespace stabscan
