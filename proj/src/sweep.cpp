#include "qmem/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "qmem/closed_forms.hpp"
#include "qmem/entanglement.hpp"

namespace qmem {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_plain(std::string_view text, std::string_view whole) {
  text = trim(text);
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw InvalidArgument("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

void check_axis(const std::vector<double>& v, const char* name, double lo, double hi) {
  if (v.empty()) throw InvalidArgument(std::string("grid axis ") + name + " is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= lo && v[i] <= hi)) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "grid axis " << name << " value " << v[i] << " outside [" << lo << ", " << hi
          << "]";
      throw InvalidArgument(msg.str());
    }
    if (i > 0 && !(v[i] > v[i - 1])) {
      throw InvalidArgument(std::string("grid axis ") + name + " is not strictly increasing");
    }
  }
}

std::vector<double> evenly(double a, double b, int n) {
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = a + (b - a) * i / n;
  v.back() = b;
  return v;
}

}  // namespace

void SweepGrid::validate() const {
  if (kinds.empty()) throw InvalidArgument("grid has no channels");
  for (std::size_t i = 0; i < kinds.size(); ++i)
    for (std::size_t j = i + 1; j < kinds.size(); ++j)
      if (kinds[i] == kinds[j]) throw InvalidArgument("grid lists a channel twice");
  check_axis(p_values, "p", 0.0, 1.0);
  check_axis(mu_values, "mu", 0.0, 1.0);
  check_axis(r_values, "r", 0.0, UnruhParam::max_value());
}

SweepGrid standard_grid() {
  return {{kAllChannels.begin(), kAllChannels.end()},
          evenly(0.0, 1.0, 10),
          evenly(0.0, 1.0, 10),
          evenly(0.0, UnruhParam::max_value(), 8)};
}

double parse_real(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  const std::size_t at = text.find("pi");
  if (at == std::string_view::npos) return parse_plain(text, whole);

  std::string_view coeff = trim(text.substr(0, at));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double factor = 1.0;
  if (coeff == "-") {
    factor = -1.0;
  } else if (!coeff.empty()) {
    factor = parse_plain(coeff, whole);
  }

  std::string_view rest = trim(text.substr(at + 2));
  double denom = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw InvalidArgument("cannot parse number '" + std::string(whole) + "'");
    denom = parse_plain(rest.substr(1), whole);
    if (denom == 0.0) throw InvalidArgument("division by zero in '" + std::string(whole) + "'");
  }
  return factor * std::numbers::pi / denom;
}

std::vector<double> parse_range(std::string_view text) {
  text = trim(text);
  if (text.find(',') != std::string_view::npos) {
    std::vector<double> v;
    for (auto part : split(text, ',')) v.push_back(parse_real(part));
    return v;
  }
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0])};
  if (parts.size() != 3) throw InvalidArgument("range '" + std::string(text) + "' is not of the form a:b:step");

  const double a = parse_real(parts[0]);
  const double b = parse_real(parts[1]);
  const double step = parse_real(parts[2]);
  if (!(step > 0.0)) throw InvalidArgument("range '" + std::string(text) + "' needs a positive step");
  if (b < a) throw InvalidArgument("range '" + std::string(text) + "' ends before it starts");

  const double count = (b - a) / step;
  if (count > 1e7) throw InvalidArgument("range '" + std::string(text) + "' has too many points");
  const double nearest = std::round(count);
  if (std::abs(count - nearest) <= 1e-9 * std::max(1.0, count)) {
    if (nearest == 0.0) return {a};
    return evenly(a, b, static_cast<int>(nearest));
  }
  std::vector<double> v;
  const int n = static_cast<int>(std::floor(count));
  for (int i = 0; i <= n; ++i) v.push_back(a + i * step);
  return v;
}

std::vector<ChannelKind> parse_channel_list(std::string_view text) {
  text = trim(text);
  if (text == "all") return {kAllChannels.begin(), kAllChannels.end()};
  std::vector<ChannelKind> kinds;
  for (auto part : split(text, ',')) kinds.push_back(parse_channel_kind(trim(part)));
  return kinds;
}

PointResult run_point(const ChannelSpec& spec, UnruhParam r) {
  try {
    const DensityMatrix state = apply_channel(unruh_density_matrix(r), spec);
    const ConcurrenceResult numeric = concurrence(state);
    const ClosedFormConcurrence closed = concurrence_closed_form(spec.kind(), spec.p(), spec.mu(), r.value());

    PointResult out{};
    out.kind = spec.kind();
    out.p = spec.p();
    out.mu = spec.mu();
    out.r = r.value();
    out.concurrence_numeric = numeric.concurrence;
    out.concurrence_closed_form = closed.value;
    out.lambdas = numeric.lambdas;
    if (closed.has_nan) {
      out.lambda_dev = std::numeric_limits<double>::quiet_NaN();
    } else {
      out.lambda_dev = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        out.lambda_dev = std::max(out.lambda_dev, std::abs(closed.sorted_lambdas[i] - numeric.lambdas[i]));
      }
    }
    out.trace_residual = std::abs(trace(state.matrix()) - 1.0);
    out.hermiticity_residual = hermiticity_residual(state.matrix());
    return out;
  } catch (const NumericalFailure& e) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "numerical failure at channel=" << short_name(spec.kind()) << " p=" << spec.p()
        << " mu=" << spec.mu() << " r=" << r.value() << ": " << e.what();
    throw NumericalFailure(msg.str());
  }
}

std::vector<PointResult> run_sweep(const SweepGrid& grid) {
  grid.validate();
  std::vector<PointResult> out;
  out.reserve(grid.size());
  for (ChannelKind kind : grid.kinds)
    for (double p : grid.p_values)
      for (double mu : grid.mu_values)
        for (double r : grid.r_values) out.push_back(run_point(ChannelSpec(kind, p, mu), UnruhParam(r)));
  return out;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_results_csv(std::ostream& os, std::span<const PointResult> results) {
  os << kResultsCsvHeader << '\n';
  for (const auto& r : results) {
    os << short_name(r.kind) << ',' << format_real(r.p) << ',' << format_real(r.mu) << ',' << format_real(r.r)
       << ',' << format_real(r.concurrence_numeric) << ',' << format_real(r.concurrence_closed_form) << ','
       << format_real(r.trace_residual) << ',' << format_real(r.hermiticity_residual) << '\n';
  }
}

std::vector<ResultsRow> read_results_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("results CSV is empty");
  const auto header = split(trim(line), ',');
  auto column = [&](std::string_view name) {
    const auto it = std::find_if(header.begin(), header.end(), [&](std::string_view h) { return trim(h) == name; });
    if (it == header.end()) throw InvalidArgument("results CSV header lacks column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ic = column("channel"), ip = column("p"), imu = column("mu"), ir = column("r"),
                    iconc = column("concurrence");

  std::vector<ResultsRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != header.size()) {
      throw InvalidArgument("results CSV line " + std::to_string(lineno) + " has the wrong number of cells");
    }
    rows.push_back({parse_channel_kind(trim(cells[ic])), parse_real(cells[ip]), parse_real(cells[imu]),
                    parse_real(cells[ir]), parse_real(cells[iconc])});
  }
  return rows;
}

SweepGrid figure_grid(int n) {
  const double pi = std::numbers::pi;
  const std::vector<ChannelKind> all(kAllChannels.begin(), kAllChannels.end());
  switch (n) {
    case 1:
    case 2:
    case 3:
    case 4:
      return {{kAllChannels[n - 1]}, {0.5}, evenly(0.0, 1.0, 100), {0.0, pi / 6, pi / 4}};
    case 5: return {all, {0.5}, {0.5}, evenly(0.0, UnruhParam::max_value(), 100)};
    case 6: return {all, evenly(0.0, 1.0, 100), {0.5}, {pi / 6}};
    case 7: return {all, evenly(0.0, 1.0, 100), {0.0}, {pi / 10}};
    default: throw InvalidArgument("figure number must be in 1..7, got " + std::to_string(n));
  }
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

void emit_figure(int n, const std::filesystem::path& out) {
  const auto results = run_sweep(figure_grid(n));
  std::ofstream os = open_for_write(out);
  write_results_csv(os, results);
  os.flush();
  if (!os) throw IoError("failed writing '" + out.string() + "'");
}

}  // namespace qmem
