#include "qmem/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "qmem/closed_forms.hpp"

namespace qmem {

namespace {

std::string equation_name(std::string_view prefix, ChannelKind kind, std::string_view suffix = "") {
  return std::string(prefix) + "_" + std::string(short_name(kind)) + std::string(suffix);
}

template <typename T>
std::size_t distinct_count(const std::vector<ResultsRow>& rows, T ResultsRow::*field) {
  std::vector<T> seen;
  for (const auto& row : rows) {
    if (std::find(seen.begin(), seen.end(), row.*field) == seen.end()) seen.push_back(row.*field);
  }
  return seen.size();
}

// Python string literal; labels contain no quotes or backslashes besides what
// we escape here.
std::string py_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

struct Series {
  ChannelKind kind;
  double a;  // the two non-x coordinates, in (p, mu, r) order
  double b;
  std::vector<double> xs;
  std::vector<double> ys;
};

}  // namespace

const ErrataSummary& ErrataReport::summary_for(const std::string& equation) const {
  for (const auto& s : summary) {
    if (s.equation == equation) return s;
  }
  throw InvalidArgument("errata report has no equation '" + equation + "'");
}

ErrataReport build_errata(const SweepGrid& grid, double tol) {
  grid.validate();
  if (!(tol >= 0.0)) throw InvalidArgument("errata tolerance must be non-negative");

  ErrataReport report{tol, {}, {}};
  report.rows.reserve(3 * grid.size());
  for (ChannelKind kind : grid.kinds)
    for (double p : grid.p_values)
      for (double mu : grid.mu_values)
        for (double r : grid.r_values) {
          const CrosscheckReport c = crosscheck_point(kind, p, mu, r, tol);
          report.rows.push_back({equation_name("state", kind), kind, p, mu, r, c.matrix_hermitian, c.matrix_max_dev});
          report.rows.push_back({equation_name("state", kind, "_paired"), kind, p, mu, r, c.matrix_paired_hermitian,
                                 c.matrix_paired_max_dev});
          report.rows.push_back({equation_name("lambda", kind), kind, p, mu, r, std::nullopt,
                                 c.lambda_max_dev.value_or(std::numeric_limits<double>::quiet_NaN())});
        }

  for (const auto& row : report.rows) {
    auto it = std::find_if(report.summary.begin(), report.summary.end(),
                           [&](const ErrataSummary& s) { return s.equation == row.equation; });
    if (it == report.summary.end()) {
      report.summary.push_back({row.equation, true, 0.0, 0, 0, 0});
      it = std::prev(report.summary.end());
    }
    ++it->rows;
    if (row.hermitian == false) {
      ++it->non_hermitian_rows;
      it->pass = false;
    }
    if (!std::isfinite(row.max_dev)) {
      ++it->non_finite_rows;
      it->pass = false;
    } else {
      it->worst_dev = std::max(it->worst_dev, row.max_dev);
      if (row.max_dev > tol) it->pass = false;
    }
  }
  return report;
}

void write_errata_csv(std::ostream& os, const ErrataReport& report) {
  os << kErrataCsvHeader << '\n';
  for (const auto& row : report.rows) {
    os << row.equation << ',' << short_name(row.kind) << ',' << format_real(row.p) << ',' << format_real(row.mu)
       << ',' << format_real(row.r) << ',';
    if (row.hermitian) os << (*row.hermitian ? "true" : "false");
    os << ',' << format_real(row.max_dev) << '\n';
  }
  os << "# summary at tol=" << format_real(report.tol) << '\n';
  os << "# equation,pass,worst_max_dev,rows,non_hermitian_rows,non_finite_rows\n";
  for (const auto& s : report.summary) {
    os << "# " << s.equation << ',' << (s.pass ? "pass" : "fail") << ',' << format_real(s.worst_dev) << ','
       << s.rows << ',' << s.non_hermitian_rows << ',' << s.non_finite_rows << '\n';
  }
}

ErrataReport errata_report(const SweepGrid& grid, double tol, const std::filesystem::path& out) {
  ErrataReport report = build_errata(grid, tol);
  std::ofstream os = open_for_write(out);
  write_errata_csv(os, report);
  os.flush();
  if (!os) throw IoError("failed writing '" + out.string() + "'");
  return report;
}

std::string format_angle(double r, std::string_view pi_symbol) {
  if (r == 0.0) return "0";
  for (int d = 1; d <= 512; ++d) {
    const double k = r * d / std::numbers::pi;
    const double kr = std::round(k);
    if (kr >= 1.0 && std::abs(k - kr) < 1e-9) {
      std::string out;
      if (kr != 1.0) out += std::to_string(static_cast<long>(kr));
      out += pi_symbol;
      if (d != 1) out += "/" + std::to_string(d);
      return out;
    }
  }
  return format_real(r);
}

std::string plot_script(const std::vector<ResultsRow>& rows, const std::string& image_name) {
  if (rows.empty()) throw InvalidArgument("results CSV has no data rows");

  const std::size_t n_p = distinct_count(rows, &ResultsRow::p);
  const std::size_t n_mu = distinct_count(rows, &ResultsRow::mu);
  const std::size_t n_r = distinct_count(rows, &ResultsRow::r);
  const std::size_t n_kind = distinct_count(rows, &ResultsRow::kind);

  // 0 = p, 1 = mu, 2 = r
  int x_axis = 0;
  if (n_mu > n_p) x_axis = 1;
  if (n_r > std::max(n_p, n_mu)) x_axis = 2;

  auto coords = [&](const ResultsRow& row) -> std::array<double, 3> { return {row.p, row.mu, row.r}; };
  auto others = [&](const ResultsRow& row) {
    const auto c = coords(row);
    std::array<double, 2> o{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != x_axis) o[k++] = c[i];
    return o;
  };

  std::vector<Series> series;
  for (const auto& row : rows) {
    const auto o = others(row);
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.kind == row.kind && s.a == o[0] && s.b == o[1]; });
    if (it == series.end()) {
      series.push_back({row.kind, o[0], o[1], {}, {}});
      it = std::prev(series.end());
    }
    it->xs.push_back(coords(row)[x_axis]);
    it->ys.push_back(row.concurrence);
  }

  const std::array<std::size_t, 3> counts = {n_p, n_mu, n_r};
  std::vector<int> other_axes;
  for (int i = 0; i < 3; ++i)
    if (i != x_axis) other_axes.push_back(i);

  auto label_for = [&](const Series& s) {
    std::vector<std::string> parts;
    if (n_kind > 1) parts.emplace_back(display_name(s.kind));
    const std::array<double, 2> vals = {s.a, s.b};
    for (int k = 0; k < 2; ++k) {
      const int axis = other_axes[k];
      if (counts[axis] <= 1) continue;
      switch (axis) {
        case 0: parts.push_back("p=" + format_real(vals[k])); break;
        case 1: parts.push_back("μ=" + format_real(vals[k])); break;
        default: parts.push_back("r=" + format_angle(vals[k], "π")); break;
      }
    }
    if (parts.empty()) parts.emplace_back(display_name(s.kind));
    std::string label = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) label += ", " + parts[i];
    return label;
  };

  static constexpr std::array<const char*, 4> kStyles = {"-", "--", ":", "-."};
  static constexpr std::array<const char*, 3> kAxisLabels = {"$p$", "$\\\\mu$", "$r$"};

  std::ostringstream py;
  py << "#!/usr/bin/env python3\n"
     << "# Concurrence curves; regenerate with `qmem plot`.\n"
     << "import os\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "SERIES = [\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    py << "    (" << py_string(label_for(s)) << ", \"" << kStyles[i % kStyles.size()] << "\",\n     [";
    for (std::size_t k = 0; k < s.xs.size(); ++k) py << (k ? ", " : "") << format_real(s.xs[k]);
    py << "],\n     [";
    for (std::size_t k = 0; k < s.ys.size(); ++k) py << (k ? ", " : "") << format_real(s.ys[k]);
    py << "]),\n";
  }
  py << "]\n\n"
     << "fig, ax = plt.subplots(figsize=(6, 4.5))\n"
     << "for label, style, xs, ys in SERIES:\n"
     << "    ax.plot(xs, ys, linestyle=style, color=\"black\", label=label)\n"
     << "ax.set_xlabel(\"" << kAxisLabels[x_axis] << "\")\n"
     << "ax.set_ylabel(\"concurrence\")\n"
     << "ax.set_ylim(0.0, 1.05)\n"
     << "ax.legend()\n"
     << "fig.tight_layout()\n"
     << "fig.savefig(os.path.join(os.path.dirname(os.path.abspath(__file__)), " << py_string(image_name)
     << "), dpi=150)\n";
  return py.str();
}

void emit_plot_script(const std::filesystem::path& csv, const std::filesystem::path& out) {
  std::ifstream is(csv);
  if (!is) throw IoError("cannot open '" + csv.string() + "' for reading");
  const auto rows = read_results_csv(is);
  std::filesystem::path image = out;
  image.replace_extension(".png");
  const std::string script = plot_script(rows, image.filename().string());
  std::ofstream os = open_for_write(out);
  os << script;
  os.flush();
  if (!os) throw IoError("failed writing '" + out.string() + "'");
}

}  // namespace qmem
