#include "avf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace avf {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep \n on every platform
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string xml_escape(const std::string& s) {
  std::string r;
  r.reserve(s.size());
  for (char c : s) {
    if (c == '&') r += "&amp;";
    else if (c == '<') r += "&lt;";
    else if (c == '>') r += "&gt;";
    else r += c;
  }
  return r;
}

}  // namespace

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
}

void write_energy_csv(const std::string& path, const SemiDiscreteSystem& sys,
                      const Trajectory& traj, double dt) {
  auto out = open_out(path);
  out << "step,t,monitor,H_bar,H_bar_dx,drift_abs,drift_rel\n";
  auto mons = sys.monitors();
  std::vector<double> h0(mons.size());
  for (std::size_t m = 0; m < mons.size(); ++m) h0[m] = mons[m]->energy(traj.initial());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    long step = std::lround(traj.times[k] / dt);
    for (std::size_t m = 0; m < mons.size(); ++m) {
      double sum = mons[m]->energy_sum(traj.states[k]);
      double val = sum * mons[m]->dx_volume();
      double drift = val - h0[m];
      double denom = std::fabs(h0[m]) > 0.0 ? std::fabs(h0[m]) : 1.0;
      out << step << ',' << format_g17(traj.times[k]) << ',' << mons[m]->name() << ','
          << format_g17(sum) << ',' << format_g17(val) << ',' << format_g17(drift) << ','
          << format_g17(drift / denom) << '\n';
    }
  }
  finish(out, path);
}

void write_solver_csv(const std::string& path, const Trajectory& traj) {
  auto out = open_out(path);
  out << "step,iterations,residual\n";
  for (std::size_t k = 0; k < traj.solver.size(); ++k)
    out << (k + 1) << ',' << traj.solver[k].iterations << ','
        << format_g17(traj.solver[k].residual) << '\n';
  finish(out, path);
}

namespace {

void snapshot_scalar(std::ofstream& out, const StateLayout& layout, const Vec& state) {
  const auto& c = layout.components.front();
  out << "x," << c.name << '\n';
  for (std::size_t i = 0; i < c.count; ++i)
    out << format_g17(c.coords[i]) << ',' << format_g17(state[c.offset + i]) << '\n';
}

void snapshot_tensor2d(std::ofstream& out, const StateLayout& layout, const Vec& state) {
  std::size_t np = layout.axis1.size();
  out << "x,y";
  for (const auto& c : layout.components) out << ',' << c.name;
  out << '\n';
  for (std::size_t j1 = 0; j1 < np; ++j1)
    for (std::size_t j2 = 0; j2 < layout.axis2.size(); ++j2) {
      out << format_g17(layout.axis1[j1]) << ',' << format_g17(layout.axis2[j2]);
      for (const auto& c : layout.components)
        out << ',' << format_g17(state[c.offset + j1 * layout.axis2.size() + j2]);
      out << '\n';
    }
}

void snapshot_pair(std::ofstream& out, const StateLayout& layout, const Vec& state) {
  const auto& a = layout.components[0];
  const auto& b = layout.components[1];
  bool wide = a.count == b.count && a.coords.size() == a.count && b.coords.size() == b.count;
  if (wide) {
    out << "x," << a.name << ',' << b.name << '\n';
    for (std::size_t i = 0; i < a.count; ++i)
      out << format_g17(a.coords[i]) << ',' << format_g17(state[a.offset + i]) << ','
          << format_g17(state[b.offset + i]) << '\n';
  } else {
    out << "component,index,x,value\n";
    for (const auto& c : layout.components)
      for (std::size_t i = 0; i < c.count; ++i)
        out << c.name << ',' << i << ',' << format_g17(c.coords[i]) << ','
            << format_g17(state[c.offset + i]) << '\n';
  }
}

void snapshot_field3d(std::ofstream& out, const StateLayout& layout, const Vec& state) {
  std::size_t n = layout.grid_n;
  out << "i,j,k";
  for (const auto& c : layout.components) out << ',' << c.name;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        out << i << ',' << j << ',' << k;
        std::size_t node = (i * n + j) * n + k;
        for (const auto& c : layout.components) out << ',' << format_g17(state[c.offset + node]);
        out << '\n';
      }
}

}  // namespace

void write_snapshot_csv(const std::string& path, const StateLayout& layout, const Vec& state) {
  auto out = open_out(path);
  switch (layout.kind) {
    case StateLayout::Kind::ScalarField1D:
      snapshot_scalar(out, layout, state);
      break;
    case StateLayout::Kind::StackedPair:
      if (!layout.axis1.empty() && !layout.axis2.empty())
        snapshot_tensor2d(out, layout, state);
      else
        snapshot_pair(out, layout, state);
      break;
    case StateLayout::Kind::Field3D:
      snapshot_field3d(out, layout, state);
      break;
  }
  finish(out, path);
}

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
  auto out = open_out(path);
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
  finish(out, path);
}

// ---------------------------------------------------------------------------
// SVG charts

namespace {

constexpr double kW = 860, kH = 520;
constexpr double kL = 78, kR = 24, kT = 44, kB = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

void write_line_chart_svg(const std::string& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::vector<ChartSeries>& series) {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool any = false;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) {
    double pad = std::fabs(ymin) > 0 ? 0.1 * std::fabs(ymin) : 1.0;
    ymin -= pad;
    ymax += pad;
  }

  auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kW << ' ' << kH
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << xml_escape(title) << "</text>\n";

  for (int i = 0; i <= 4; ++i) {
    double fx = xmin + (xmax - xmin) * i / 4.0;
    double fy = ymin + (ymax - ymin) * i / 4.0;
    double gx = px(fx), gy = py(fy);
    out << "<line x1=\"" << gx << "\" y1=\"" << kT << "\" x2=\"" << gx << "\" y2=\"" << kH - kB
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<line x1=\"" << kL << "\" y1=\"" << gy << "\" x2=\"" << kW - kR << "\" y2=\"" << gy
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << gx << "\" y=\"" << kH - kB + 18 << "\" text-anchor=\"middle\">"
        << tick_label(fx) << "</text>\n";
    out << "<text x=\"" << kL - 8 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">"
        << tick_label(fy) << "</text>\n";
  }
  out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
      << kH - kT - kB << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  out << "<text x=\"" << (kL + kW - kR) / 2 << "\" y=\"" << kH - 12
      << "\" text-anchor=\"middle\">" << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kT + kH - kB) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kT + kH - kB) / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g,%.6g ", px(s.x[i]), py(s.y[i]));
      out << buf;
    }
    out << "\"/>\n";
    double ly = kT + 16 + 18 * double(si);
    out << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kW - kR - 126
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kW - kR - 120 << "\" y=\"" << ly << "\">" << xml_escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  finish(out, path);
}

}  // namespace avf
