#include "biphoton/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "biphoton/error.hpp"

namespace biphoton {
namespace {

std::string g9(double v) { return format_double(v, 9); }

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string scan_csv(const ScanResult& scan) {
  std::string out = "delay_fs,rate,rate_over_baseline\n";
  for (std::size_t i = 0; i < scan.delays.size(); ++i) {
    out += g9(scan.delays[i]) + ',' + g9(scan.rates[i]) + ',' +
           g9(scan.rates[i] / scan.baseline) + '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis_value,visibility,kind,extremum,baseline\n";
  for (const SweepRow& r : rows) {
    out += g9(r.value) + ',' + g9(r.visibility) + ',' + to_string(r.kind) + ',' + g9(r.extremum) +
           ',' + g9(r.baseline) + '\n';
  }
  return out;
}

std::string scan_svg(const ScanResult& scan, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  const double x_lo = scan.delays.front();
  const double x_hi = scan.delays.back();
  std::vector<double> y(scan.rates.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = scan.rates[i] / scan.baseline;
  const double y_lo = 0.0;
  const double y_hi = std::max(2.0, *std::max_element(y.begin(), y.end()));

  const auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double v) { return kTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << escape_xml(title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double tick : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    if (tick > y_hi) break;
    svg << "<line x1=\"" << kLeft - 4 << "\" x2=\"" << kLeft << "\" y1=\"" << g9(py(tick))
        << "\" y2=\"" << g9(py(tick)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << g9(py(tick) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << g9(tick)
        << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double x = x_lo + (x_hi - x_lo) * k / 4.0;
    svg << "<text x=\"" << g9(px(x)) << "\" y=\"" << kHeight - kBottom + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << g9(x)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">delay (fs)</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">rate / baseline</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < y.size(); ++i)
    svg << (i ? " " : "") << g9(px(scan.delays[i])) << ',' << g9(py(y[i]));
  svg << "\"/>\n";
  for (std::size_t i = 0; i < y.size(); ++i)
    svg << "<circle cx=\"" << g9(px(scan.delays[i])) << "\" cy=\"" << g9(py(y[i]))
        << "\" r=\"2\" fill=\"#1f4e9c\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::io, "write to '" + path + "' failed");
}

}  // namespace biphoton
