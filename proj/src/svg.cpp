#include "lorenzn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lorenzn {

const std::vector<std::string>& branch_palette() {
    static const std::vector<std::string> palette = {
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
        "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return palette;
}

namespace {

struct Axis {
    std::string name;
    int component;  // index into the state triple
};

Axis parse_axis(const std::string& name, CoordKind kind) {
    if (kind == CoordKind::Cartesian) {
        if (name == "x") return {name, 0};
        if (name == "y") return {name, 1};
        if (name == "z") return {name, 2};
    } else {
        if (name == "radius") return {name, 0};
        if (name == "angle") return {name, 1};
        if (name == "z") return {name, 2};
    }
    throw ConfigError("render_svg: axis '" + name + "' is not valid for this "
                      "trajectory's coordinates");
}

std::pair<Axis, Axis> parse_projection(const std::string& proj, CoordKind kind) {
    const auto comma = proj.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= proj.size())
        throw ConfigError("render_svg: projection must be 'axis,axis', got '" + proj + "'");
    const Axis a = parse_axis(proj.substr(0, comma), kind);
    const Axis b = parse_axis(proj.substr(comma + 1), kind);
    if (a.component == b.component)
        throw ConfigError("render_svg: projection axes must differ");
    return {a, b};
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const Trajectory& traj, const RenderOptions& opts) {
    traj.validate();
    if (traj.size() == 0) throw ConfigError("render_svg: empty trajectory");
    const auto [ax, ay] = parse_projection(opts.projection, traj.kind);

    double xmin = traj.states[0][ax.component], xmax = xmin;
    double ymin = traj.states[0][ay.component], ymax = ymin;
    for (const Vec3& s : traj.states) {
        xmin = std::min(xmin, s[ax.component]);
        xmax = std::max(xmax, s[ax.component]);
        ymin = std::min(ymin, s[ay.component]);
        ymax = std::max(ymax, s[ay.component]);
    }
    // Degenerate extents (single point, constant coordinate) get a unit pad.
    if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
    if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }

    const double margin = 50.0;
    const double pw = opts.width - 2 * margin;
    const double ph = opts.height - 2 * margin;
    auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return margin + (ymax - v) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << opts.width << "\" height=\"" << opts.height << "\" viewBox=\"0 0 "
        << opts.width << " " << opts.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Plot frame and extent labels.
    svg << "<rect x=\"" << fmt_px(margin) << "\" y=\"" << fmt_px(margin) << "\" width=\""
        << fmt_px(pw) << "\" height=\"" << fmt_px(ph)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt_px(margin) << "\" y=\"" << fmt_px(opts.height - margin + 16)
        << "\" font-size=\"11\" fill=\"#444444\">" << fmt(xmin) << "</text>\n";
    svg << "<text x=\"" << fmt_px(opts.width - margin - 40) << "\" y=\""
        << fmt_px(opts.height - margin + 16) << "\" font-size=\"11\" fill=\"#444444\">"
        << fmt(xmax) << "</text>\n";
    svg << "<text x=\"" << fmt_px(margin - 45) << "\" y=\"" << fmt_px(opts.height - margin)
        << "\" font-size=\"11\" fill=\"#444444\">" << fmt(ymin) << "</text>\n";
    svg << "<text x=\"" << fmt_px(margin - 45) << "\" y=\"" << fmt_px(margin + 10)
        << "\" font-size=\"11\" fill=\"#444444\">" << fmt(ymax) << "</text>\n";
    svg << "<text x=\"" << fmt_px(opts.width / 2.0 - 10) << "\" y=\""
        << fmt_px(opts.height - margin + 32) << "\" font-size=\"12\" fill=\"#000000\">"
        << ax.name << "</text>\n";
    svg << "<text x=\"" << fmt_px(12) << "\" y=\"" << fmt_px(opts.height / 2.0)
        << "\" font-size=\"12\" fill=\"#000000\">" << ay.name << "</text>\n";

    const bool use_colors = opts.color_by_branch && traj.has_colors();
    const auto& palette = branch_palette();

    if (traj.size() == 1) {
        const std::string color =
            use_colors ? palette[traj.colors[0] % palette.size()] : "#1f77b4";
        svg << "<circle cx=\"" << fmt_px(px(traj.states[0][ax.component])) << "\" cy=\""
            << fmt_px(py(traj.states[0][ay.component])) << "\" r=\"2.5\" fill=\"" << color
            << "\"/>\n";
    } else {
        // One polyline per run of constant color.
        std::size_t start = 0;
        while (start + 1 < traj.size()) {
            std::size_t end = start + 1;
            if (use_colors)
                while (end + 1 < traj.size() && traj.colors[end] == traj.colors[start]) ++end;
            else
                end = traj.size() - 1;
            const std::string color =
                use_colors ? palette[traj.colors[start] % palette.size()] : "#1f77b4";
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"0.8\" points=\"";
            for (std::size_t i = start; i <= end; ++i) {
                if (i > start) svg << ' ';
                svg << fmt_px(px(traj.states[i][ax.component])) << ','
                    << fmt_px(py(traj.states[i][ay.component]));
            }
            svg << "\"/>\n";
            start = end;
        }
    }

    // Metadata caption.
    std::ostringstream caption;
    if (!opts.caption.empty()) caption << opts.caption << "  ";
    for (const auto& [key, value] : traj.meta) caption << key << "=" << value << "  ";
    const std::string cap = caption.str();
    if (!cap.empty())
        svg << "<text x=\"" << fmt_px(margin) << "\" y=\"" << fmt_px(16)
            << "\" font-size=\"10\" fill=\"#666666\">" << cap << "</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

void render_svg_file(const Trajectory& traj, const RenderOptions& opts,
                     const std::string& path) {
    const std::string doc = render_svg(traj, opts);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("render_svg: cannot open '" + path + "' for writing");
    f << doc;
    if (!f) throw ConfigError("render_svg: write failed for '" + path + "'");
}

}  // namespace lorenzn
