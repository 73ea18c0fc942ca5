#include "primcob/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace primcob {

namespace {

struct Box {
    double xmin = 1e30, xmax = -1e30, ymin = 1e30, ymax = -1e30;
    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    bool empty() const { return xmin > xmax; }
};

constexpr double kSize = 640.0;
constexpr double kPad = 40.0;

struct Mapper {
    Box box;
    double scale = 1.0;
    void finish() {
        if (box.empty()) box = {-1, 1, -1, 1};
        double w = std::max(box.xmax - box.xmin, 1e-9);
        double h = std::max(box.ymax - box.ymin, 1e-9);
        scale = (kSize - 2 * kPad) / std::max(w, h);
    }
    double X(double x) const { return kPad + (x - box.xmin) * scale; }
    double Y(double y) const { return kSize - kPad - (y - box.ymin) * scale; }
};

void emit_polyline(std::ostringstream& out, const Mapper& m,
                   const std::vector<std::array<double, 2>>& pts, const char* color) {
    if (pts.size() < 2) return;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) out << m.X(p[0]) << "," << m.Y(p[1]) << " ";
    out << "\"/>\n";
}

void emit_dot(std::ostringstream& out, const Mapper& m, double x, double y, const char* color) {
    out << "<circle cx=\"" << m.X(x) << "\" cy=\"" << m.Y(y) << "\" r=\"4\" fill=\"" << color
        << "\"/>\n";
}

void emit_cross(std::ostringstream& out, const Mapper& m, double x, double y, const char* color) {
    double cx = m.X(x), cy = m.Y(y);
    out << "<path stroke=\"" << color << "\" stroke-width=\"2\" d=\"M" << cx - 5 << " " << cy - 5
        << " L" << cx + 5 << " " << cy + 5 << " M" << cx - 5 << " " << cy + 5 << " L" << cx + 5
        << " " << cy - 5 << "\"/>\n";
}

void emit_diamond(std::ostringstream& out, const Mapper& m, double x, double y,
                  const char* color) {
    double cx = m.X(x), cy = m.Y(y);
    out << "<path fill=\"" << color << "\" d=\"M" << cx << " " << cy - 6 << " L" << cx + 6 << " "
        << cy << " L" << cx << " " << cy + 6 << " L" << cx - 6 << " " << cy << " Z\"/>\n";
}

} // namespace

std::string render_svg(const PrimMapModel& model, const ResolvedPointSet* doubles,
                       const ResolvedPointSet* folds, const ResolvedPointSet* cusps,
                       const std::vector<Polyline>* fold_curves) {
    Mapper m;
    std::vector<std::vector<std::array<double, 2>>> strokes;

    if (model.domain.dim == 1) {
        // image of the curve in the (f, h) plane
        std::vector<std::array<double, 2>> img;
        const int n = 720;
        for (int s = 0; s <= n; ++s) {
            double t = 2 * M_PI * s / n;
            auto v = model.value({t, 0});
            img.push_back({v[0], v[1]});
            m.box.add(v[0], v[1]);
        }
        strokes.push_back(std::move(img));
    } else if (fold_curves) {
        // fold curves projected to the target plane (f1, f2)
        for (const auto& pl : *fold_curves) {
            std::vector<std::array<double, 2>> img;
            for (const auto& x : pl.pts) {
                auto v = model.value(x);
                img.push_back({v[0], v[1]});
                m.box.add(v[0], v[1]);
            }
            strokes.push_back(std::move(img));
        }
    }

    auto target_xy = [&](const ResolvedPoint& p) {
        return std::array<double, 2>{p.target[0], p.target[1]};
    };
    auto grow = [&](const ResolvedPointSet* set) {
        if (!set) return;
        for (const auto& p : set->points) m.box.add(p.target[0], p.target[1]);
    };
    grow(doubles);
    grow(folds);
    grow(cusps);
    m.finish();

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
        << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& s : strokes) emit_polyline(out, m, s, "#2060c0");
    if (doubles)
        for (const auto& p : doubles->points) {
            auto q = target_xy(p);
            emit_dot(out, m, q[0], q[1], "#c02020");
        }
    if (folds)
        for (const auto& p : folds->points) {
            auto q = target_xy(p);
            emit_cross(out, m, q[0], q[1], "#208020");
        }
    if (cusps)
        for (const auto& p : cusps->points) {
            auto q = target_xy(p);
            emit_diamond(out, m, q[0], q[1], "#804080");
        }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& svg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg: " + path);
    out << svg;
}

} // namespace primcob
