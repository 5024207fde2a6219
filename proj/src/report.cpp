#include "cumdiff/report.hpp"

#include <algorithm>
#include <concepts>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cumdiff/error.hpp"

namespace cumdiff {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "svg") return OutputFormat::svg;
  if (name == "json") return OutputFormat::json;
  if (name == "both") return OutputFormat::both;
  throw Error(ErrorKind::InvalidSpec, "unknown format '" + name + "'");
}

Triangle significance_triangle(const CurveMetrics& metrics) {
  Triangle t;
  if (metrics.sigma > 0.0) {
    t.omitted = false;
    t.upper = 2.0 * metrics.sigma;
    t.lower = -2.0 * metrics.sigma;
  }
  return t;
}

namespace {

// Minimal streaming JSON writer; handles commas and nesting, nothing else.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    separate();
    string_literal(k);
    out_ << ':';
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    separate();
    out_ << (std::isfinite(v) ? format_double(v) : "null");
    return *this;
  }
  template <std::unsigned_integral T>
  JsonWriter& value(T v) {
    separate();
    out_ << v;
    return *this;
  }
  JsonWriter& value(bool v) {
    separate();
    out_ << (v ? "true" : "false");
    return *this;
  }
  JsonWriter& value(const std::string& v) {
    separate();
    string_literal(v);
    return *this;
  }
  JsonWriter& value(std::string_view v) { return value(std::string(v)); }
  JsonWriter& null() {
    separate();
    out_ << "null";
    return *this;
  }
  JsonWriter& value(const std::optional<double>& v) { return v ? value(*v) : null(); }
  JsonWriter& array(const std::vector<double>& values) {
    begin_array();
    for (double v : values) value(v);
    return end_array();
  }

  std::string str() const { return out_.str() + "\n"; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ << c;
    first_.push_back(true);
    return *this;
  }
  JsonWriter& close(char c) {
    out_ << c;
    first_.pop_back();
    return *this;
  }
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ << ',';
      first_.back() = false;
    }
  }
  void string_literal(const std::string& s) {
    out_ << '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ << "\\\""; break;
        case '\\': out_ << "\\\\"; break;
        case '\n': out_ << "\\n"; break;
        case '\t': out_ << "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ << buf;
          } else {
            out_ << c;
          }
      }
    }
    out_ << '"';
  }

  std::ostringstream out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_diagrams(JsonWriter& w, const std::vector<DiagramEntry>& diagrams) {
  w.key("diagrams").begin_array();
  for (const auto& entry : diagrams) {
    const auto& d = entry.diagram;
    w.begin_object();
    w.key("strategy").value(to_string(d.strategy));
    w.key("requested_bins").value(entry.requested_bins);
    w.key("bins").value(d.boundaries.bin_count());
    w.key("boundaries").array(d.boundaries.interior);
    w.key("s_mean").array(d.s_mean);
    w.key("q_mean").array(d.q_mean);
    w.key("r_mean").array(d.r_mean);
    w.key("bin_weight").array(d.bin_weight);
    w.end_object();
  }
  w.end_array();
}

void write_provenance(JsonWriter& w, const Provenance& p) {
  w.key("provenance").begin_object();
  w.key("covariates").begin_array();
  for (const auto& c : p.covariates) w.value(c);
  w.end_array();
  w.key("tie_mode").value(hilbert::to_string(p.tie_mode));
  w.key("seed").value(p.seed);
  w.key("bits_per_dim").value(p.bits_per_dim);
  w.key("perturb_scale").value(p.perturb_scale);
  w.key("bins").begin_array();
  for (auto b : p.bins) w.value(b);
  w.end_array();
  w.key("bin_strategies").begin_array();
  for (auto s : p.strategies) w.value(to_string(s));
  w.end_array();
  w.key("records").value(p.records);
  w.key("unique_scores").value(p.unique_scores);
  w.key("dropped").value(p.dropped);
  w.end_object();
}

}  // namespace

std::string bundle_json(const PlotBundle& bundle) {
  JsonWriter w;
  w.begin_object();
  w.key("curve").begin_object();
  w.key("abscissae").array(bundle.curve.abscissae);
  w.key("ordinates").array(bundle.curve.ordinates);
  w.end_object();

  const auto& m = bundle.metrics;
  w.key("metrics").begin_object();
  w.key("kuiper").value(m.kuiper);
  w.key("ks").value(m.kolmogorov_smirnov);
  w.key("avg_diff").value(m.average_difference);
  w.key("sigma").value(m.sigma);
  w.key("kuiper_over_sigma").value(m.kuiper_over_sigma);
  w.key("ks_over_sigma").value(m.ks_over_sigma);
  w.end_object();

  const Triangle t = significance_triangle(m);
  w.key("triangle").begin_object();
  w.key("omitted").value(t.omitted);
  if (!t.omitted) {
    w.key("vertices").begin_array();
    w.begin_array().value(0.0).value(t.upper).end_array();
    w.begin_array().value(0.0).value(t.lower).end_array();
    w.begin_array().value(t.apex).value(0.0).end_array();
    w.end_array();
  }
  w.end_object();

  write_diagrams(w, bundle.diagrams);
  write_provenance(w, bundle.provenance);
  w.end_object();
  return w.str();
}

std::string diagrams_json(const std::vector<DiagramEntry>& diagrams, const Provenance& provenance) {
  JsonWriter w;
  w.begin_object();
  write_diagrams(w, diagrams);
  write_provenance(w, provenance);
  w.end_object();
  return w.str();
}

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); }
  double py(double y) const {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string svg_open(const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title
     << "</text>\n";
  return os.str();
}

std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream os;
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\""
     << num(kWidth - 2 * kMargin) << "\" height=\"" << num(kHeight - 2 * kMargin) << "\"/>\n"
     << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x_lo + (f.x_hi - f.x_lo) * i / 4.0;
    const double y = f.y_lo + (f.y_hi - f.y_lo) * i / 4.0;
    os << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(kHeight - kMargin + 15)
       << "\" text-anchor=\"middle\">" << num(x) << "</text>\n"
       << "<text x=\"" << num(kMargin - 5) << "\" y=\"" << num(f.py(y) + 4)
       << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
     << xlabel << "</text>\n"
     << "<text transform=\"translate(15," << kHeight / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n</g>\n";
  return os.str();
}

std::string polyline(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& colour, bool from_origin) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
  if (from_origin) os << num(f.px(0)) << ',' << num(f.py(0)) << ' ';
  for (std::size_t i = 0; i < xs.size(); ++i) os << num(f.px(xs[i])) << ',' << num(f.py(ys[i])) << ' ';
  os << "\"/>\n";
  return os.str();
}

}  // namespace

std::string cumulative_svg(const PlotBundle& bundle) {
  const auto& c = bundle.curve;
  const Triangle t = significance_triangle(bundle.metrics);
  double lo = std::min(0.0, t.lower), hi = std::max(0.0, t.upper);
  for (double v : c.ordinates) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  const Frame f{0.0, 1.0, lo - pad, hi + pad};

  std::ostringstream os;
  os << svg_open("cumulative differences; Kuiper " + short_num(bundle.metrics.kuiper) +
                 (bundle.metrics.kuiper_over_sigma
                      ? " = " + short_num(*bundle.metrics.kuiper_over_sigma) + " sigma"
                      : std::string()));
  os << axes(f, "accumulated weight", "cumulative difference");
  os << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.px(1))
     << "\" y2=\"" << num(f.py(0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  if (!t.omitted) {
    os << "<polygon fill=\"none\" stroke=\"black\" points=\"" << num(f.px(0)) << ','
       << num(f.py(t.upper)) << ' ' << num(f.px(0)) << ',' << num(f.py(t.lower)) << ' '
       << num(f.px(t.apex)) << ',' << num(f.py(0)) << "\"/>\n";
  }
  os << polyline(f, c.abscissae, c.ordinates, "black", true);
  os << "</svg>\n";
  return os.str();
}

std::string reliability_svg(const DiagramEntry& entry) {
  const auto& d = entry.diagram;
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (d.size() > 0) {
    x_lo = *std::min_element(d.s_mean.begin(), d.s_mean.end());
    x_hi = *std::max_element(d.s_mean.begin(), d.s_mean.end());
    y_lo = std::min(*std::min_element(d.q_mean.begin(), d.q_mean.end()),
                    *std::min_element(d.r_mean.begin(), d.r_mean.end()));
    y_hi = std::max(*std::max_element(d.q_mean.begin(), d.q_mean.end()),
                    *std::max_element(d.r_mean.begin(), d.r_mean.end()));
  }
  if (!(x_hi > x_lo)) { x_lo -= 0.5; x_hi += 0.5; }
  if (!(y_hi > y_lo)) { y_lo -= 0.5; y_hi += 0.5; }
  const double xp = 0.05 * (x_hi - x_lo), yp = 0.05 * (y_hi - y_lo);
  const Frame f{x_lo - xp, x_hi + xp, y_lo - yp, y_hi + yp};

  std::ostringstream os;
  os << svg_open("reliability diagram, " + std::string(to_string(d.strategy)) + ", " +
                 std::to_string(d.boundaries.bin_count()) + " bins");
  os << axes(f, "score", "weighted mean response");
  os << polyline(f, d.s_mean, d.q_mean, "#1f77b4", false);
  os << polyline(f, d.s_mean, d.r_mean, "#d62728", false);
  for (std::size_t i = 0; i < d.size(); ++i) {
    os << "<circle cx=\"" << num(f.px(d.s_mean[i])) << "\" cy=\"" << num(f.py(d.q_mean[i]))
       << "\" r=\"2\" fill=\"#1f77b4\"/>\n"
       << "<circle cx=\"" << num(f.px(d.s_mean[i])) << "\" cy=\"" << num(f.py(d.r_mean[i]))
       << "\" r=\"2\" fill=\"#d62728\"/>\n";
  }
  os << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 15
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f77b4\">Q</text>\n"
     << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 30
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#d62728\">R</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string scatter_svg(const Scatter& scatter) {
  const Frame f{0.0, 1.0, 0.0, 1.0};
  std::ostringstream os;
  os << svg_open("covariates shaded by score");
  os << axes(f, "first covariate", "second covariate");
  for (std::size_t i = 0; i < scatter.x.size(); ++i) {
    const int shade = static_cast<int>(std::lround(255.0 * scatter.score[i]));
    os << "<circle cx=\"" << num(f.px(scatter.x[i])) << "\" cy=\"" << num(f.py(scatter.y[i]))
       << "\" r=\"1.5\" fill=\"rgb(" << shade << ",0," << 255 - shade << ")\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> emit_plots(const PlotBundle& bundle, OutputFormat format,
                                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    written.push_back(dir / name);
    write_text(written.back(), text);
  };
  if (format != OutputFormat::svg) emit("analysis.json", bundle_json(bundle));
  if (format != OutputFormat::json) {
    emit("cumulative.svg", cumulative_svg(bundle));
    for (const auto& entry : bundle.diagrams) {
      emit("reliability_" + std::string(to_string(entry.diagram.strategy)) + "_" +
               std::to_string(entry.requested_bins) + ".svg",
           reliability_svg(entry));
    }
    if (bundle.scatter) emit("scatter.svg", scatter_svg(*bundle.scatter));
  }
  return written;
}

}  // namespace cumdiff
