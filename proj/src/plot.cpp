#include <algorithm>
#include <cmath>
#include <sstream>

#include "courtrank/plot.hpp"
#include "text.hpp"

namespace courtrank {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 440;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(std::string_view s) {
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

std::string num(double v) { return text::format_fixed(v, 2); }

class Canvas {
 public:
  Canvas(double x_max, double y_min, double y_max) : x_max_(x_max), y_min_(y_min), y_max_(y_max) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }

  double x(double v) const { return kLeft + (kWidth - kLeft - kRight) * v / x_max_; }
  double y(double v) const {
    return kHeight - kBottom - (kHeight - kTop - kBottom) * (v - y_min_) / (y_max_ - y_min_);
  }

  void axes(const std::string& title, const std::string& x_label, const std::string& y_label,
            int x_ticks, int y_ticks) {
    out_ << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
         << escape(title) << "</text>\n";
    out_ << "<g stroke=\"#444\" fill=\"none\">"
         << "<line x1=\"" << num(x(0)) << "\" y1=\"" << num(y(y_min_)) << "\" x2=\"" << num(x(x_max_))
         << "\" y2=\"" << num(y(y_min_)) << "\"/>"
         << "<line x1=\"" << num(x(0)) << "\" y1=\"" << num(y(y_min_)) << "\" x2=\"" << num(x(0))
         << "\" y2=\"" << num(y(y_max_)) << "\"/></g>\n";
    for (int i = 0; i <= x_ticks; ++i) {
      const double v = x_max_ * i / x_ticks;
      out_ << "<text x=\"" << num(x(v)) << "\" y=\"" << num(y(y_min_) + 18)
           << "\" text-anchor=\"middle\">" << text::format_sig(v, 4) << "</text>\n";
    }
    for (int i = 0; i <= y_ticks; ++i) {
      const double v = y_min_ + (y_max_ - y_min_) * i / y_ticks;
      out_ << "<text x=\"" << num(x(0) - 6) << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">"
           << text::format_sig(v, 3) << "</text>\n";
    }
    out_ << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
         << escape(x_label) << "</text>\n";
    out_ << "<text transform=\"translate(16 " << kHeight / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
         << escape(y_label) << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* colour, const char* dash = nullptr) {
    out_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"";
    if (dash) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << " points=\"";
    for (const auto& [px, py] : pts) out_ << num(x(px)) << ',' << num(y(py)) << ' ';
    out_ << "\"/>\n";
  }

  void circle(double px, double py, double r, const char* colour) {
    out_ << "<circle cx=\"" << num(x(px)) << "\" cy=\"" << num(y(py)) << "\" r=\"" << num(r) << "\" fill=\""
         << colour << "\" fill-opacity=\"0.45\"/>\n";
  }

  void legend(int row, const std::string& label, const char* colour) {
    const double ly = kTop + 10 + 18 * row;
    const double lx = kWidth - kRight - 230;
    out_ << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
         << "\" stroke=\"" << colour << "\" stroke-width=\"3\"/><text x=\"" << lx + 26 << "\" y=\"" << ly + 4
         << "\">" << escape(label) << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double x_max_;
  double y_min_;
  double y_max_;
  std::ostringstream out_;
};

}  // namespace

std::string logistic_svg(std::span<const DiffBin> bins, const LogisticModel& model, const std::string& title) {
  int max_diff = 10;
  long max_total = 1;
  for (const auto& b : bins) {
    max_diff = std::max(max_diff, b.diff);
    max_total = std::max(max_total, b.total);
  }
  Canvas c(max_diff, 0.0, 1.0);
  c.axes(title, "rank difference", "hit rate", 5, 4);
  for (const auto& b : bins) {
    const double r = 1.5 + 4.5 * std::sqrt(static_cast<double>(b.total) / static_cast<double>(max_total));
    c.circle(b.diff, b.rate(), r, kPalette[0]);
  }
  std::vector<std::pair<double, double>> curve;
  for (int i = 0; i <= 200; ++i) {
    const double d = max_diff * i / 200.0;
    curve.emplace_back(d, p_victory(0.0, d, model.a));
  }
  c.polyline(curve, kPalette[1]);
  c.legend(0, "fit a = " + text::format_fixed(model.a, 3), kPalette[1]);
  return c.finish();
}

std::string roc_svg(std::span<const RocSeries> series, const std::string& title) {
  Canvas c(1.0, 0.0, 1.0);
  c.axes(title, "false positive rate", "true positive rate", 5, 5);
  c.polyline({{0.0, 0.0}, {1.0, 1.0}}, "#999999", "4 4");
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* colour = kPalette[i % std::size(kPalette)];
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : series[i].roc.curve) pts.emplace_back(p.fpr, p.tpr);
    c.polyline(pts, colour);
    c.legend(static_cast<int>(i), series[i].label + " (AUROC " + text::format_fixed(series[i].roc.auroc, 4) + ")",
             colour);
  }
  return c.finish();
}

}  // namespace courtrank
