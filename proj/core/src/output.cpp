#include "tsfrac/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

void write_csv(std::ostream& out, const GridFunction& u, const GridFunction& dalpha_u) {
    if (dalpha_u.size() != u.size()) throw DomainError("CSV columns have different lengths");
    out << "t,u,Dalpha_u\n";
    const auto nodes = u.mesh().nodes();
    for (std::size_t i = 0; i < u.size(); ++i)
        out << format_double(nodes[i]) << ',' << format_double(u[i]) << ',' << format_double(dalpha_u[i]) << '\n';
}

namespace {

// Fixed-precision coordinates keep the SVG small; the CSV carries exact values.
std::string coord(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void write_svg(std::ostream& out, const GridFunction& u, const std::string& title) {
    constexpr double width = 640.0, height = 400.0, margin = 48.0;
    const Mesh& mesh = u.mesh();
    const auto nodes = mesh.nodes();
    const auto vals = u.values();

    const double t0 = mesh.a(), t1 = mesh.b();
    double lo = *std::min_element(vals.begin(), vals.end());
    double hi = *std::max_element(vals.begin(), vals.end());
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
    if (hi - lo < 1e-300) hi = lo + 1.0;

    const auto x = [&](double t) { return margin + (width - 2 * margin) * (t - t0) / (t1 - t0); };
    const auto y = [&](double v) { return height - margin - (height - 2 * margin) * (v - lo) / (hi - lo); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        out << "<text x=\"" << coord(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
            << escape(title) << "</text>\n";

    // axes: t axis at u = 0, u axis at the left margin
    out << "<line x1=\"" << coord(margin) << "\" y1=\"" << coord(y(0.0)) << "\" x2=\"" << coord(width - margin)
        << "\" y2=\"" << coord(y(0.0)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << coord(margin) << "\" y1=\"" << coord(margin) << "\" x2=\"" << coord(margin)
        << "\" y2=\"" << coord(height - margin) << "\" stroke=\"black\"/>\n";
    for (double v : {lo, hi})
        out << "<text x=\"" << coord(margin - 4) << "\" y=\"" << coord(y(v) + 4)
            << "\" text-anchor=\"end\" font-size=\"10\">" << format_double(v) << "</text>\n";

    std::vector<double> ticks;
    for (const auto& seg : mesh.scale().segments()) {
        ticks.push_back(seg.lo);
        if (!seg.is_point()) ticks.push_back(seg.hi);
    }
    for (double t : ticks) {
        out << "<line class=\"tick\" x1=\"" << coord(x(t)) << "\" y1=\"" << coord(height - margin) << "\" x2=\""
            << coord(x(t)) << "\" y2=\"" << coord(height - margin + 6) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << coord(x(t)) << "\" y=\"" << coord(height - margin + 18)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(t) << "</text>\n";
    }

    // one polyline per run of dense cells
    std::size_t i = 0;
    while (i + 1 < nodes.size()) {
        if (mesh.kind(i) != CellKind::dense) {
            ++i;
            continue;
        }
        out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        out << coord(x(nodes[i])) << ',' << coord(y(vals[i]));
        while (i + 1 < nodes.size() && mesh.kind(i) == CellKind::dense) {
            ++i;
            out << ' ' << coord(x(nodes[i])) << ',' << coord(y(vals[i]));
        }
        out << "\"/>\n";
    }

    for (double t : mesh.scale().isolated_points()) {
        const std::size_t k = mesh.index_of(t);
        out << "<circle class=\"isolated\" cx=\"" << coord(x(nodes[k])) << "\" cy=\"" << coord(y(vals[k]))
            << "\" r=\"3.5\" fill=\"steelblue\"/>\n";
    }
    out << "</svg>\n";
}

void write_index(std::ostream& out, const std::vector<IndexEntry>& entries) {
    out << "file,energy,grad_norm,classification\n";
    for (const auto& e : entries)
        out << e.file << ',' << format_double(e.energy) << ',' << format_double(e.grad_norm) << ','
            << e.classification << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
    return out;
}

} // namespace tsfrac
