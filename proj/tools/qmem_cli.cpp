// qmem: concurrence of the Alice-Rob Dirac-field state under memory channels.
//
//   qmem point  --channel pf --p 0.5 --mu 1 --r pi/6
//   qmem sweep  --channel all --p-range 0:1:0.1 --mu-range 0:1:0.1 --r-range 0:pi/4:pi/32 --out grid.csv
//   qmem figure --n 3 --out fig3.csv
//   qmem errata --tol 1e-9 --out errata.csv
//   qmem plot   --csv fig3.csv --out fig3.py
//
// Every option can also come from `--config FILE` (key=value lines using the
// long option names); flags given on the command line win.
//
// Exit codes: 0 ok, 2 invalid arguments, 3 numerical failure, 4 I/O failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qmem/config.hpp"
#include "qmem/report.hpp"
#include "qmem/sweep.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Options {
  std::optional<std::string> config;
  std::optional<std::string> channel;
  std::optional<std::string> p;
  std::optional<std::string> mu;
  std::optional<std::string> r;
  std::optional<std::string> p_range;
  std::optional<std::string> mu_range;
  std::optional<std::string> r_range;
  std::optional<std::string> out;
  std::optional<std::string> tol;
  std::optional<std::string> figure;
  std::optional<std::string> csv;
};

class Resolver {
 public:
  explicit Resolver(qmem::Config cfg) : cfg_(std::move(cfg)) {}

  std::optional<std::string> find(const std::optional<std::string>& flag, const std::string& key) const {
    if (flag) return flag;
    return cfg_.get(key);
  }

  std::string require(const std::optional<std::string>& flag, const std::string& key) const {
    if (auto v = find(flag, key)) return *v;
    throw qmem::InvalidArgument("missing required option --" + key);
  }

  std::string value_or(const std::optional<std::string>& flag, const std::string& key, std::string fallback) const {
    return find(flag, key).value_or(std::move(fallback));
  }

 private:
  qmem::Config cfg_;
};

// Writes to the named file, or stdout for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    if (!std::cout) throw qmem::IoError("failed writing to stdout");
    return;
  }
  std::ofstream os = qmem::open_for_write(path);
  fn(os);
  os.flush();
  if (!os) throw qmem::IoError("failed writing '" + path + "'");
}

qmem::SweepGrid grid_from(const Resolver& res, const Options& o, const qmem::SweepGrid& defaults) {
  qmem::SweepGrid grid = defaults;
  if (auto v = res.find(o.channel, "channel")) grid.kinds = qmem::parse_channel_list(*v);
  if (auto v = res.find(o.p_range, "p-range")) grid.p_values = qmem::parse_range(*v);
  if (auto v = res.find(o.mu_range, "mu-range")) grid.mu_values = qmem::parse_range(*v);
  if (auto v = res.find(o.r_range, "r-range")) grid.r_values = qmem::parse_range(*v);
  grid.validate();
  return grid;
}

int parse_figure_number(const std::string& text) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw qmem::InvalidArgument("--n expects an integer, got '" + text + "'");
  return n;
}

int run(CLI::App& app, const Options& o) {
  const Resolver res(o.config ? qmem::Config::load(*o.config) : qmem::Config{});

  if (app.got_subcommand("point")) {
    const qmem::ChannelSpec spec(qmem::parse_channel_kind(res.require(o.channel, "channel")),
                                 qmem::parse_real(res.require(o.p, "p")), qmem::parse_real(res.require(o.mu, "mu")));
    const qmem::UnruhParam r(qmem::parse_real(res.require(o.r, "r")));
    const qmem::PointResult result = qmem::run_point(spec, r);
    qmem::write_results_csv(std::cout, std::span(&result, 1));
    return 0;
  }
  if (app.got_subcommand("sweep")) {
    const qmem::SweepGrid grid = grid_from(res, o, qmem::standard_grid());
    const auto results = qmem::run_sweep(grid);
    with_output(res.value_or(o.out, "out", "-"), [&](std::ostream& os) { qmem::write_results_csv(os, results); });
    return 0;
  }
  if (app.got_subcommand("figure")) {
    const int n = parse_figure_number(res.require(o.figure, "n"));
    qmem::emit_figure(n, res.require(o.out, "out"));
    return 0;
  }
  if (app.got_subcommand("errata")) {
    const double tol = qmem::parse_real(res.value_or(o.tol, "tol", "1e-9"));
    const qmem::SweepGrid grid = grid_from(res, o, qmem::standard_grid());
    const qmem::ErrataReport report = qmem::build_errata(grid, tol);
    with_output(res.value_or(o.out, "out", "-"), [&](std::ostream& os) { qmem::write_errata_csv(os, report); });
    for (const auto& s : report.summary) {
      std::cerr << s.equation << ": " << (s.pass ? "pass" : "FAIL") << " (worst " << qmem::format_real(s.worst_dev)
                << ", non-hermitian " << s.non_hermitian_rows << ", non-finite " << s.non_finite_rows << ")\n";
    }
    return 0;
  }
  if (app.got_subcommand("plot")) {
    qmem::emit_plot_script(res.require(o.csv, "csv"), res.require(o.out, "out"));
    return 0;
  }
  throw qmem::InvalidArgument("no subcommand given");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrence of a Dirac-field state shared with an accelerated observer under memory channels"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "key=value file supplying defaults for any option");

  auto* point = app.add_subcommand("point", "Evaluate a single (channel, p, mu, r) point");
  point->add_option("--channel", o.channel, "ad | dep | bpf | pf");
  point->add_option("--p", o.p, "decoherence probability in [0, 1]");
  point->add_option("--mu", o.mu, "memory parameter in [0, 1]");
  point->add_option("--r", o.r, "Unruh angle in [0, pi/4]; accepts e.g. pi/6");

  auto* sweep = app.add_subcommand("sweep", "Evaluate a Cartesian grid and write a results CSV");
  sweep->add_option("--channel", o.channel, "all, or a comma list of ad, dep, bpf, pf");
  sweep->add_option("--p-range", o.p_range, "a:b:step, a comma list, or a single value");
  sweep->add_option("--mu-range", o.mu_range, "a:b:step, a comma list, or a single value");
  sweep->add_option("--r-range", o.r_range, "a:b:step, a comma list, or a single value");
  sweep->add_option("--out", o.out, "output CSV path, - for stdout");

  auto* figure = app.add_subcommand("figure", "Write the CSV behind one of the seven reference figures");
  figure->add_option("--n", o.figure, "figure number 1..7");
  figure->add_option("--out", o.out, "output CSV path");

  auto* errata = app.add_subcommand("errata", "Audit the closed-form expressions against the Kraus pipeline");
  errata->add_option("--tol", o.tol, "pass/fail tolerance (default 1e-9)");
  errata->add_option("--channel", o.channel, "all, or a comma list of ad, dep, bpf, pf");
  errata->add_option("--p-range", o.p_range, "p grid (default 0:1:0.1)");
  errata->add_option("--mu-range", o.mu_range, "mu grid (default 0:1:0.1)");
  errata->add_option("--r-range", o.r_range, "r grid (default 0:pi/4:pi/32)");
  errata->add_option("--out", o.out, "report CSV path, - for stdout");

  auto* plot = app.add_subcommand("plot", "Generate a matplotlib script from a results CSV");
  plot->add_option("--csv", o.csv, "results CSV produced by sweep or figure");
  plot->add_option("--out", o.out, "script path; the image is written next to it as .png");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    return run(app, o);
  } catch (const qmem::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qmem::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const qmem::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}
