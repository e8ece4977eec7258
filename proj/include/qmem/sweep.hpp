#pragma once

// Parameter grids, the per-point pipeline (state -> channel -> concurrence) and
// CSV emission for sweeps and figure reproduction.

#include <array>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/channels.hpp"

namespace qmem {

struct SweepGrid {
  std::vector<ChannelKind> kinds;
  std::vector<double> p_values;
  std::vector<double> mu_values;
  std::vector<double> r_values;

  /// Throws InvalidArgument unless every axis is non-empty, strictly
  /// increasing and inside its domain, and kinds has no duplicates.
  void validate() const;
  std::size_t size() const noexcept {
    return kinds.size() * p_values.size() * mu_values.size() * r_values.size();
  }
};

/// Four channels x p, mu in {0, 0.1, ..., 1} x r in {0, pi/32, ..., pi/4}.
SweepGrid standard_grid();

/// A real literal or a multiple of pi: "0.25", "pi", "pi/4", "3pi/32",
/// "3*pi/32", "0.5pi".
double parse_real(std::string_view text);

/// "a:b:step" (inclusive of b when step divides b - a), "a,b,c", or a single
/// value. Evenly dividing ranges are generated as a + (b - a) * i / n so that
/// decimal steps land on the nearest doubles and the end point is exact.
std::vector<double> parse_range(std::string_view text);

/// "all" or a comma-separated list of short channel names.
std::vector<ChannelKind> parse_channel_list(std::string_view text);

struct PointResult {
  ChannelKind kind;
  double p;
  double mu;
  double r;
  double concurrence_numeric;
  /// NaN wherever the closed form is not evaluable.
  double concurrence_closed_form;
  /// max deviation of sorted closed-form lambdas from the numeric ones (NaN
  /// when the closed form is not evaluable).
  double lambda_dev;
  double trace_residual;
  double hermiticity_residual;
  std::array<double, 4> lambdas;
};

/// Throws NumericalFailure, naming the point, if the pipeline fails.
PointResult run_point(const ChannelSpec& spec, UnruhParam r);

/// One result per grid point, ordered kind-major, then p, mu, r.
std::vector<PointResult> run_sweep(const SweepGrid& grid);

inline constexpr std::string_view kResultsCsvHeader =
    "channel,p,mu,r,concurrence,concurrence_closed_form,trace_residual,herm_residual";

/// Shortest round-trip decimal with 17 significant digits ("nan" for NaN).
std::string format_real(double v);

void write_results_csv(std::ostream& os, std::span<const PointResult> results);

/// The columns of a results CSV that downstream tools consume.
struct ResultsRow {
  ChannelKind kind;
  double p;
  double mu;
  double r;
  double concurrence;
};

/// Reads a results CSV. The header must contain channel, p, mu, r and
/// concurrence; extra columns are ignored. Throws InvalidArgument otherwise.
std::vector<ResultsRow> read_results_csv(std::istream& is);

/// Grid of figure n (1..7).
SweepGrid figure_grid(int n);

/// Runs figure n and writes its CSV. Throws InvalidArgument for n outside
/// 1..7 and IoError when the file cannot be written.
void emit_figure(int n, const std::filesystem::path& out);

/// Opens `path` for writing, throwing IoError on failure.
std::ofstream open_for_write(const std::filesystem::path& path);

}  // namespace qmem
