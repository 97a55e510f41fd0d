#include "radet/roc_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radet {
namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void bad_roc(const std::string& path, const std::string& why) {
  throw std::runtime_error("read_roc(" + path + "): " + why);
}

std::string boundary_id(Boundary b) { return b == Boundary::Shrink ? "shrink" : "skip"; }

Boundary parse_boundary(const std::string& s, const std::string& path) {
  if (s == "shrink") return Boundary::Shrink;
  if (s == "skip") return Boundary::Skip;
  bad_roc(path, "unknown boundary '" + s + "'");
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void write_roc(const std::string& path, const RocCurve& roc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_roc: cannot open '" + path + "'");
  out << "# radet roc 1\n";
  out << "# detector " << roc.detector << "\n";
  out << "# window " << roc.window.n_train << " " << roc.window.n_guard << " "
      << boundary_id(roc.window.boundary) << "\n";
  out << "# params " << roc.params << "\n";
  out << "# columns threshold p_fa p_d\n";
  for (const RocPoint& p : roc.points) {
    out << fmt_double(p.threshold) << " " << fmt_double(p.p_fa) << " "
        << fmt_double(p.p_d) << "\n";
  }
  if (!out) throw std::runtime_error("write_roc: write failed for '" + path + "'");
}

RocCurve read_roc(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_roc(path, "cannot open file");
  std::string line;
  if (!std::getline(in, line) || line != "# radet roc 1") bad_roc(path, "bad magic line");

  RocCurve roc;
  if (!std::getline(in, line) || line.rfind("# detector ", 0) != 0) {
    bad_roc(path, "missing detector line");
  }
  roc.detector = line.substr(11);

  if (!std::getline(in, line) || line.rfind("# window ", 0) != 0) {
    bad_roc(path, "missing window line");
  }
  {
    std::istringstream ws(line.substr(9));
    std::string bstr;
    if (!(ws >> roc.window.n_train >> roc.window.n_guard >> bstr)) {
      bad_roc(path, "malformed window line");
    }
    roc.window.boundary = parse_boundary(bstr, path);
  }

  if (!std::getline(in, line) || line.rfind("# params", 0) != 0) {
    bad_roc(path, "missing params line");
  }
  roc.params = line.size() > 9 ? line.substr(9) : "";

  if (!std::getline(in, line) || line != "# columns threshold p_fa p_d") {
    bad_roc(path, "missing columns line");
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    RocPoint p;
    if (!(row >> p.threshold >> p.p_fa >> p.p_d)) bad_roc(path, "malformed data row");
    std::string extra;
    if (row >> extra) bad_roc(path, "trailing tokens on data row");
    roc.points.push_back(p);
  }
  return roc;
}

void write_roc_svg(const std::string& path, const std::vector<RocCurve>& curves) {
  const double W = 760.0, H = 520.0;
  const double ml = 70.0, mr = 20.0, mt = 24.0, mb = 56.0;
  const double pw = W - ml - mr, ph = H - mt - mb;

  // Log x-axis range from the data, padded to whole decades.
  double lo = 1e-4, hi = 1e-1;
  bool any = false;
  for (const RocCurve& c : curves) {
    for (const RocPoint& p : c.points) {
      if (p.p_fa > 0.0) {
        lo = any ? std::min(lo, p.p_fa) : p.p_fa;
        hi = any ? std::max(hi, p.p_fa) : p.p_fa;
        any = true;
      }
    }
  }
  double dlo = std::floor(std::log10(lo));
  double dhi = std::ceil(std::log10(hi));
  if (dhi <= dlo) dhi = dlo + 1.0;

  auto xpix = [&](double pfa) {
    const double lx = std::log10(std::max(pfa, std::pow(10.0, dlo)));
    return ml + (lx - dlo) / (dhi - dlo) * pw;
  };
  auto ypix = [&](double pd) { return mt + (1.0 - pd) * ph; };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_roc_svg: cannot open '" + path + "'");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  // Grid and axes.
  out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double d = dlo; d <= dhi + 1e-9; d += 1.0) {
    const double x = xpix(std::pow(10.0, d));
    out << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\""
        << mt + ph << "\"/>\n";
  }
  for (int i = 0; i <= 10; ++i) {
    const double y = ypix(i / 10.0);
    out << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\""
        << y << "\"/>\n";
  }
  out << "</g>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Tick labels.
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (double d = dlo; d <= dhi + 1e-9; d += 1.0) {
    const double x = xpix(std::pow(10.0, d));
    out << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  }
  for (int i = 0; i <= 10; i += 2) {
    const double y = ypix(i / 10.0);
    out << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << i / 10.0 << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 14
      << "\" text-anchor=\"middle\">false-alarm probability</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
      << ")\">detection probability</text>\n";
  out << "</g>\n";

  // Curves (upper envelope in threshold order is already monotone; draw raw
  // points sorted by p_fa so the polyline reads left to right).
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::vector<RocPoint> pts = curves[ci].points;
    std::sort(pts.begin(), pts.end(),
              [](const RocPoint& a, const RocPoint& b) { return a.p_fa < b.p_fa; });
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const RocPoint& p : pts) out << xpix(p.p_fa) << "," << ypix(p.p_d) << " ";
    out << "\"/>\n";
    const double ly = mt + 16 + 16 * static_cast<double>(ci);
    out << "<line x1=\"" << ml + 10 << "\" y1=\"" << ly << "\" x2=\"" << ml + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">"
        << curves[ci].detector;
    if (!curves[ci].params.empty()) out << " (" << curves[ci].params << ")";
    out << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write_roc_svg: write failed for '" + path + "'");
}

void write_fit_report(const std::string& path, const std::vector<FitResult>& fits,
                      std::size_t n_samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_fit_report: cannot open '" + path + "'");
  out << "# radet fit 1\n";
  out << "# samples " << n_samples << "\n";
  out << "# columns family p1 p2 ks iterations\n";
  for (const FitResult& f : fits) {
    out << dist_family_id(f.family) << " " << fmt_double(f.p1) << " " << fmt_double(f.p2)
        << " " << fmt_double(f.ks) << " " << f.iterations << "\n";
  }
  if (!out) throw std::runtime_error("write_fit_report: write failed for '" + path + "'");
}

}  // namespace radet
