#include "shelfplan/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "shelfplan/errors.hpp"

namespace shelfplan {

namespace {

constexpr double kScale = 40.0;  // workspace units to pixels

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string object_color(int index) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  return palette[index % 10];
}

}  // namespace

std::string render_svg(const Instance& instance, const Plan* plan) {
  const WorldSpec& world = instance.world;
  const Rect& ws = world.workspace;
  const double margin = 1.0 + 2.0 * world.gripper_radius;
  const double x0 = ws.min.x - margin;
  const double y1 = ws.max.y + margin;
  const double width = (ws.max.x - ws.min.x) + 2 * margin;
  const double height = (ws.max.y - ws.min.y) + 2 * margin;

  auto X = [&](double x) { return (x - x0) * kScale; };
  auto Y = [&](double y) { return (y1 - y) * kScale; };  // flip: +y is into the shelf

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width * kScale)
      << "\" height=\"" << num(height * kScale) << "\" viewBox=\"0 0 " << num(width * kScale)
      << " " << num(height * kScale) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Workspace: solid walls left/back/right, dashed open front edge.
  svg << "<g id=\"workspace\" stroke=\"#333\" stroke-width=\"3\" fill=\"none\">\n";
  svg << "<polyline points=\"" << num(X(ws.min.x)) << "," << num(Y(ws.min.y)) << " "
      << num(X(ws.min.x)) << "," << num(Y(ws.max.y)) << " " << num(X(ws.max.x)) << ","
      << num(Y(ws.max.y)) << " " << num(X(ws.max.x)) << "," << num(Y(ws.min.y)) << "\"/>\n";
  svg << "<line x1=\"" << num(X(ws.min.x)) << "\" y1=\"" << num(Y(ws.min.y)) << "\" x2=\""
      << num(X(ws.max.x)) << "\" y2=\"" << num(Y(ws.min.y))
      << "\" stroke-dasharray=\"6 6\" stroke-width=\"1\"/>\n";
  svg << "</g>\n";

  svg << "<g id=\"grid\" fill=\"#bbb\">\n";
  for (const Point2& p : build_grid(world).positions)
    svg << "<circle cx=\"" << num(X(p.x)) << "\" cy=\"" << num(Y(p.y)) << "\" r=\"2\"/>\n";
  svg << "</g>\n";

  const double r_px = world.object_radius * kScale;
  svg << "<g id=\"goals\" fill=\"none\" stroke-width=\"2\" stroke-dasharray=\"5 4\">\n";
  for (int i = 0; i < instance.object_count(); ++i) {
    const Point2 g = instance.goal[i];
    svg << "<circle cx=\"" << num(X(g.x)) << "\" cy=\"" << num(Y(g.y)) << "\" r=\"" << num(r_px)
        << "\" stroke=\"" << object_color(i) << "\"/>\n";
  }
  svg << "</g>\n";
  svg << "<g id=\"starts\" stroke=\"#222\" stroke-width=\"1\">\n";
  for (int i = 0; i < instance.object_count(); ++i) {
    const Point2 s = instance.start[i];
    svg << "<circle cx=\"" << num(X(s.x)) << "\" cy=\"" << num(Y(s.y)) << "\" r=\"" << num(r_px)
        << "\" fill=\"" << object_color(i) << "\" fill-opacity=\"0.8\"/>\n";
    svg << "<text x=\"" << num(X(s.x)) << "\" y=\"" << num(Y(s.y) + 4)
        << "\" font-size=\"11\" text-anchor=\"middle\" stroke=\"none\" fill=\"white\">"
        << instance.object_names[i] << "</text>\n";
  }
  svg << "</g>\n";

  if (plan) {
    int step = 1;
    for (const PlanAction& a : plan->actions) {
      const std::string color = object_color(a.object);
      svg << "<g class=\"action\" fill=\"none\">\n";
      svg << "<polyline class=\"transit\" stroke=\"#999\" stroke-width=\"1\" "
             "stroke-dasharray=\"3 3\" points=\"";
      for (const Point2& p : a.transit.waypoints) svg << num(X(p.x)) << "," << num(Y(p.y)) << " ";
      svg << "\"/>\n";
      svg << "<polyline class=\"transfer\" stroke=\"" << color
          << "\" stroke-width=\"2.5\" points=\"";
      for (const Point2& p : a.transfer.waypoints) svg << num(X(p.x)) << "," << num(Y(p.y)) << " ";
      svg << "\"/>\n";
      const Point2 end = a.transfer.waypoints.empty() ? a.to : a.transfer.waypoints.back();
      svg << "<circle cx=\"" << num(X(end.x)) << "\" cy=\"" << num(Y(end.y))
          << "\" r=\"4\" fill=\"" << color << "\"/>\n";
      const Point2 mid = a.transfer.waypoints.empty()
                             ? a.to
                             : a.transfer.waypoints[a.transfer.waypoints.size() / 2];
      svg << "<text x=\"" << num(X(mid.x) + 6) << "\" y=\"" << num(Y(mid.y) - 6)
          << "\" font-size=\"13\" fill=\"" << color << "\" stroke=\"none\">" << step
          << (a.kind == EdgeKind::BufferMove ? "b" : "") << "</text>\n";
      svg << "</g>\n";
      ++step;
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

void render_svg_file(const Instance& instance, const Plan* plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IOFailureError("cannot open for writing: " + path);
  out << render_svg(instance, plan);
  if (!out) throw IOFailureError("failed while writing: " + path);
}

}  // namespace shelfplan
