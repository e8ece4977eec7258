#pragma once

// Errata auditing of the closed-form expressions over a grid, and generation of
// plotting scripts from results CSVs.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/sweep.hpp"

namespace qmem {

/// One audited expression at one grid point. `equation` names the expression:
///   state_<ch>         final-state matrix exactly as published
///   state_<ch>_paired  same, with unpaired off-diagonal entries dropped
///   lambda_<ch>        eigenvalues of rho * rho~
/// where <ch> is the channel short name. `hermitian` is empty for lambda rows
/// and `max_dev` is NaN where the expression is not evaluable.
struct ErrataRow {
  std::string equation;
  ChannelKind kind;
  double p;
  double mu;
  double r;
  std::optional<bool> hermitian;
  double max_dev;
};

struct ErrataSummary {
  std::string equation;
  /// Every row has a finite max_dev <= tol and no Hermiticity violation.
  bool pass;
  /// Largest finite max_dev (0 if none).
  double worst_dev;
  std::size_t rows;
  std::size_t non_hermitian_rows;
  std::size_t non_finite_rows;
};

struct ErrataReport {
  double tol;
  std::vector<ErrataRow> rows;
  std::vector<ErrataSummary> summary;

  const ErrataSummary& summary_for(const std::string& equation) const;
};

inline constexpr std::string_view kErrataCsvHeader = "equation,channel,p,mu,r,hermitian,max_dev";

ErrataReport build_errata(const SweepGrid& grid, double tol);

/// Data rows under kErrataCsvHeader, followed by '#'-prefixed summary lines
/// (one per equation).
void write_errata_csv(std::ostream& os, const ErrataReport& report);

/// build_errata + write_errata_csv to a file. Throws IoError on write failure.
ErrataReport errata_report(const SweepGrid& grid, double tol, const std::filesystem::path& out);

/// A self-contained matplotlib script drawing one line per series in `rows`.
/// The x axis is whichever of p, mu, r takes the most distinct values; series
/// cycle through solid, dashed, dotted and dot-dashed lines in order of first
/// appearance. `image_name` is the PNG the script writes.
std::string plot_script(const std::vector<ResultsRow>& rows, const std::string& image_name);

/// Reads `csv`, writes the script to `out` (the image goes next to it with a
/// .png extension). Throws InvalidArgument for a malformed CSV and IoError for
/// unreadable or unwritable files.
void emit_plot_script(const std::filesystem::path& csv, const std::filesystem::path& out);

/// "0", "pi/6", "3pi/32", or a decimal if r is not a simple multiple of pi.
std::string format_angle(double r, std::string_view pi_symbol = "pi");

}  // namespace qmem
