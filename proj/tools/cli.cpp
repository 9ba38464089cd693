#include "cli.hpp"

#include "checks.hpp"

#include "shiftwave/coeff_io.hpp"
#include "shiftwave/dualtree.hpp"
#include "shiftwave/dualtree2d.hpp"
#include "shiftwave/fht.hpp"
#include "shiftwave/fracspline.hpp"
#include "shiftwave/metrics.hpp"
#include "shiftwave/parallel.hpp"
#include "shiftwave/signal_io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace shiftwave::tools {

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCheck = 3;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kGenusNames = {"bspline", "orthonormal", "dual", "shannon", "gabor"};

struct SpecOptions {
  std::string genus = "bspline";
  double alpha = 3.0;
  double tau = 0.0;
  int levels = 4;
  CLI::Option* genus_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* levels_opt = nullptr;

  void add(CLI::App* app, bool with_levels) {
    genus_opt = app->add_option("--genus", genus, "Wavelet genus")
                    ->check(CLI::IsMember(kGenusNames))
                    ->capture_default_str();
    alpha_opt = app->add_option("--alpha", alpha, "Spline degree")->check(CLI::NonNegativeNumber)->capture_default_str();
    tau_opt = app->add_option("--tau", tau, "Spline shift")->capture_default_str();
    if (with_levels)
      levels_opt = app->add_option("--levels", levels, "Decomposition depth")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
  }

  SplineSpec spec() const { return SplineSpec{parse_genus(genus), alpha, tau}; }
};

const CLI::Validator kPowerOfTwo(
    [](std::string& s) -> std::string {
      std::size_t n = 0;
      try {
        n = std::stoul(s);
      } catch (const std::exception&) {
        return "must be a positive integer";
      }
      return is_power_of_two(n) && n >= 8 ? std::string() : "must be a power of two >= 8, got " + s;
    },
    "POW2");

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// One "key=value" per line; written as '#' comments above CSV data.
std::string metadata_text(const io::Metadata& m) {
  std::ostringstream os;
  for (const auto& [k, v] : m) os << k << '=' << v << '\n';
  return os.str();
}

io::Metadata spec_metadata(const std::string& command, const SplineSpec& spec, int levels, const Grid1D& grid) {
  io::Metadata m;
  m["command"] = command;
  m["genus"] = genus_name(spec.genus);
  m["alpha"] = fmt(spec.degree_alpha);
  m["tau"] = fmt(spec.shift_tau);
  if (levels > 0) m["levels"] = std::to_string(levels);
  m["n"] = std::to_string(grid.n);
  m["dx"] = fmt(grid.dx);
  m["x0"] = fmt(grid.x0);
  m["defaults"] = "n=4096,levels=4,alpha=3,genus=bspline";
  return m;
}

// Runs `body` with "-" meaning the given stream.
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  body(f);
  if (!f) throw Error("write to '" + path + "' failed");
}

void write_signal(const std::string& path, std::ostream& out, const SampledSignal1D& f, const io::Metadata& m) {
  if (path == "-")
    io::write_signal_csv(out, f, metadata_text(m));
  else
    io::write_signal_file(path, f, metadata_text(m));
}

// Spec for reconstruction: the coefficient file's spec, unless flags given
// on the command line say otherwise, which is an error.
SplineSpec resolve_spec(const SpecOptions& o, const SplineSpec& file_spec, int file_levels) {
  SplineSpec s = file_spec;
  if (o.genus_opt->count()) s.genus = parse_genus(o.genus);
  if (o.alpha_opt->count()) s.degree_alpha = o.alpha;
  if (o.tau_opt->count()) s.shift_tau = o.tau;
  int levels = o.levels_opt && o.levels_opt->count() ? o.levels : file_levels;
  if (!(s == file_spec) || levels != file_levels) {
    throw BankMismatch("bank spec " + s.label() + " levels=" + std::to_string(levels) +
                       " does not match the coefficients' spec " + file_spec.label() +
                       " levels=" + std::to_string(file_levels));
  }
  return s;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  int exit_code = 0;
};

void add_synth(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("synth", "Sample a wavelet or scaling function");
  auto o = std::make_shared<SpecOptions>();
  o->add(cmd, false);
  auto n = std::make_shared<std::size_t>(4096);
  auto dx = std::make_shared<double>(1.0 / 32.0);
  auto output = std::make_shared<std::string>();
  auto quadrature = std::make_shared<bool>(false);
  auto scaling = std::make_shared<bool>(false);
  auto periodic = std::make_shared<bool>(false);
  cmd->add_option("--n", *n, "Number of samples")->check(kPowerOfTwo)->capture_default_str();
  cmd->add_option("--dx", *dx, "Sample spacing")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("-o,--output", *output, "Output CSV ('-' for stdout)")->required();
  cmd->add_flag("--quadrature", *quadrature, "Write x, fHT_tau psi, fHT_{tau+1/2} psi, envelope");
  cmd->add_flag("--scaling", *scaling, "Sample the scaling function instead of the wavelet");
  cmd->add_flag("--periodic", *periodic, "Periodized synthesis without the boundary check");
  cmd->callback([=, &ctx] {
    SplineSpec spec = o->spec();
    Grid1D grid = Grid1D::centered(*n, *dx);
    io::Metadata meta = spec_metadata("synth", spec, 0, grid);
    if (*quadrature) {
      // The pair is built from the unshifted wavelet: w1 = fHT_tau psi_0, w2 = fHT_{tau+1/2} psi_0.
      SplineSpec base = spec.with_tau(0.0);
      SampledSignal1D psi = *scaling ? synthesize_scaling(base, grid)
                            : *periodic ? synthesize_wavelet_periodic(base, grid)
                                        : synthesize_wavelet(base, grid);
      SampledSignal1D w1 = fht_apply(psi, FhtShift(spec.shift_tau));
      SampledSignal1D w2 = fht_apply(psi, FhtShift(spec.shift_tau + 0.5));
      meta["columns"] = "x,w1,w2,envelope";
      with_output(*output, ctx.out, [&](std::ostream& os) {
        for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
        os << "x,w1,w2,envelope\n" << std::setprecision(17);
        for (std::size_t p = 0; p < grid.n; ++p) {
          double a = w1.values[p].real(), b = w2.values[p].real();
          os << grid.x(p) << ',' << a << ',' << b << ',' << std::hypot(a, b) << '\n';
        }
      });
      return;
    }
    SampledSignal1D f = *scaling ? synthesize_scaling(spec, grid)
                        : *periodic ? synthesize_wavelet_periodic(spec, grid)
                                    : synthesize_wavelet(spec, grid);
    meta["function"] = *scaling ? "scaling" : "wavelet";
    write_signal(*output, ctx.out, f, meta);
  });
}

void add_analyze(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("analyze", "Dual-tree analysis of a 1D signal");
  auto o = std::make_shared<SpecOptions>();
  o->add(cmd, true);
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  cmd->add_option("-i,--input", *input, "Signal file (CSV x,re,im or SWV1)")->required();
  cmd->add_option("-o,--output", *output, "Coefficient JSON ('-' for stdout)")->required();
  cmd->callback([=, &ctx] {
    SampledSignal1D f = io::read_signal_file(*input);
    WaveletBank1D bank = build_bank(o->spec(), o->levels, f.grid);
    DualTreeCoeffs1D c = analyze(f, bank);
    io::Metadata meta = spec_metadata("analyze", bank.spec, bank.levels, f.grid);
    meta["input"] = *input;
    with_output(*output, ctx.out, [&](std::ostream& os) { io::write_coeffs_json(os, c, meta); });
  });
}

void add_reconstruct(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("reconstruct", "Amplitude-phase synthesis from 1D coefficients");
  auto o = std::make_shared<SpecOptions>();
  o->add(cmd, true);
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto reference = std::make_shared<std::string>();
  auto two_branch = std::make_shared<bool>(false);
  cmd->add_option("-i,--input", *input, "Coefficient JSON")->required();
  cmd->add_option("-o,--output", *output, "Signal file ('-' for stdout)")->required();
  cmd->add_option("--reference", *reference, "Signal to compare against; prints relative_error");
  cmd->add_flag("--two-branch", *two_branch, "Use the two-branch synthesis");
  cmd->callback([=, &ctx] {
    DualTreeCoeffs1D c = io::read_coeffs_file(*input);
    SplineSpec spec = resolve_spec(*o, c.spec, c.levels);
    WaveletBank1D bank = build_bank(spec, c.levels, c.grid);
    SampledSignal1D f = *two_branch ? reconstruct_two_branch(c, bank) : reconstruct(c, bank);
    io::Metadata meta = spec_metadata("reconstruct", spec, c.levels, c.grid);
    if (!reference->empty()) {
      SampledSignal1D ref = io::read_signal_file(*reference);
      require_same_grid(f, ref, "reconstruct --reference");
      double e = relative_l2_distance(real_part(f), ref);
      meta["relative_error"] = fmt(e);
      std::ostream& os = *output == "-" ? ctx.err : ctx.out;
      os << "relative_error " << std::setprecision(6) << std::scientific << e << std::defaultfloat << '\n';
    }
    write_signal(*output, ctx.out, f, meta);
  });
}

void add_analyze2d(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("analyze2d", "Directional dual-tree analysis of an image");
  auto o = std::make_shared<SpecOptions>();
  o->levels = 3;
  o->add(cmd, true);
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  cmd->add_option("-i,--input", *input, "Image (PGM or CSV matrix)")->required();
  cmd->add_option("-o,--output", *output, "Coefficient JSON ('-' for stdout)")->required();
  cmd->callback([=, &ctx] {
    SampledSignal2D f = io::read_image_file(*input);
    DirectionalBank2D bank = build_directional_bank(o->spec(), o->levels, f.grid_x, f.grid_y);
    DualTreeCoeffs2D c = analyze2d(f, bank);
    io::Metadata meta = spec_metadata("analyze2d", bank.spec, bank.levels, f.grid_x);
    meta["ny"] = std::to_string(f.grid_y.n);
    meta["input"] = *input;
    with_output(*output, ctx.out, [&](std::ostream& os) { io::write_coeffs2d_json(os, c, meta); });
  });
}

void add_reconstruct2d(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("reconstruct2d", "Amplitude-phase synthesis from 2D coefficients");
  auto o = std::make_shared<SpecOptions>();
  o->add(cmd, true);
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto reference = std::make_shared<std::string>();
  cmd->add_option("-i,--input", *input, "Coefficient JSON")->required();
  cmd->add_option("-o,--output", *output, "Image file, .pgm or CSV ('-' for CSV on stdout)")->required();
  cmd->add_option("--reference", *reference, "Image to compare against; prints relative_error");
  cmd->callback([=, &ctx] {
    DualTreeCoeffs2D c = io::read_coeffs2d_file(*input);
    SplineSpec spec = resolve_spec(*o, c.spec, c.levels);
    DirectionalBank2D bank = build_directional_bank(spec, c.levels, c.grid_x, c.grid_y);
    SampledSignal2D f = reconstruct2d(c, bank);
    io::Metadata meta = spec_metadata("reconstruct2d", spec, c.levels, c.grid_x);
    if (!reference->empty()) {
      SampledSignal2D ref = io::read_image_file(*reference);
      // Image files carry no grid origin; compare values only.
      if (ref.grid_x.n != f.grid_x.n || ref.grid_y.n != f.grid_y.n)
        throw GridMismatch("reconstruct2d --reference: image size does not match the coefficients");
      SampledSignal2D re(f.grid_x, f.grid_y);
      for (std::size_t i = 0; i < f.values.size(); ++i) re.values[i] = f.values[i].real();
      ref.grid_x = f.grid_x;
      ref.grid_y = f.grid_y;
      double e = relative_l2_distance(re, ref);
      meta["relative_error"] = fmt(e);
      std::ostream& os = *output == "-" ? ctx.err : ctx.out;
      os << "relative_error " << std::setprecision(6) << std::scientific << e << std::defaultfloat << '\n';
    }
    if (*output == "-")
      io::write_image_csv(ctx.out, f, metadata_text(meta));
    else
      io::write_image_file(*output, f, metadata_text(meta));
  });
}

void add_metrics_table(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("metrics-table", "Quality metrics rho and kappa for dual-tree wavelet pairs");
  auto cfg = std::make_shared<TableConfig>();
  auto output = std::make_shared<std::string>("-");
  auto json = std::make_shared<std::string>();
  auto filters = std::make_shared<std::vector<std::string>>();
  cmd->add_option("-o,--output", *output, "CSV output ('-' for stdout)")->capture_default_str();
  cmd->add_option("--json", *json, "Also write a JSON report with grid metadata");
  cmd->add_option("--filters", *filters, "Extra filter-pair CSV files (k,h1,h2)")->check(CLI::ExistingFile);
  cmd->add_option("--n", cfg->n, "Grid size")->check(kPowerOfTwo)->capture_default_str();
  cmd->add_option("--dx", cfg->dx, "Grid spacing")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--dilation", cfg->dilation, "Synthesis dilation")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--shift", cfg->shift_samples, "Translation in samples")->capture_default_str();
  cmd->callback([=, &ctx] {
    std::vector<TableEntry> entries = default_table_entries();
    for (const auto& path : *filters) {
      FilterPair p = read_filter_pair_file(path);
      entries.push_back({p.label, std::nullopt, p});
    }
    std::vector<MetricsRow> rows = metrics_table(entries, *cfg);
    std::ostringstream meta;
    meta << "# command=metrics-table\n# n=" << cfg->n << "\n# dx=" << fmt(cfg->dx) << "\n# dilation=" << cfg->dilation
         << "\n# shift=" << cfg->shift_samples << "\n# defaults=n=4096,levels=4,alpha=3,genus=bspline\n";
    with_output(*output, ctx.out, [&](std::ostream& os) {
      os << meta.str();
      write_table_csv(os, rows);
    });
    if (!json->empty()) with_output(*json, ctx.out, [&](std::ostream& os) { write_table_json(os, rows, *cfg); });
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        ctx.err << "error: row '" << r.label << "': " << r.error << '\n';
        ctx.exit_code = kExitData;
      }
    }
  });
}

void add_checks(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("checks", "Run identity and property checks");
  auto suite = std::make_shared<std::string>("all");
  auto overlap = std::make_shared<bool>(false);
  auto json = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(20240611);
  std::vector<std::string> names = check_suites();
  names.push_back("all");
  cmd->add_option("--suite", *suite, "Suite to run")->check(CLI::IsMember(names))->capture_default_str();
  cmd->add_flag("--overlap", *overlap, "Add the overlapping-support Bedrosian negative controls");
  cmd->add_option("--json", *json, "Write the JSON report to this path ('-' for stdout)");
  cmd->add_option("--seed", *seed, "Random seed")->capture_default_str();
  cmd->callback([=, &ctx] {
    CheckReport r = run_checks(*suite, *overlap, *seed);
    if (*json == "-") {
      write_check_report_json(ctx.out, r);
    } else {
      write_check_report_text(ctx.out, r);
      if (!json->empty()) with_output(*json, ctx.out, [&](std::ostream& os) { write_check_report_json(os, r); });
    }
    if (!r.all_pass()) ctx.exit_code = kExitCheck;
  });
}

void add_step_demo(CLI::App& app, Context& ctx) {
  auto* cmd = app.add_subcommand("step-demo", "Correlation of a step with reference and fHT-shifted wavelets");
  auto o = std::make_shared<SpecOptions>();
  o->add(cmd, true);
  auto n = std::make_shared<std::size_t>(4096);
  auto dx = std::make_shared<double>(1.0);
  auto level = std::make_shared<int>(0);
  auto x0 = std::make_shared<double>(10.3);
  auto output = std::make_shared<std::string>();
  auto sweep = std::make_shared<int>(0);
  auto seed = std::make_shared<std::uint64_t>(20240611);
  cmd->add_option("--n", *n, "Number of samples")->check(kPowerOfTwo)->capture_default_str();
  cmd->add_option("--dx", *dx, "Sample spacing")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--level", *level, "Analysis level (default: --levels)")->check(CLI::PositiveNumber);
  cmd->add_option("--x0", *x0, "Step position")->capture_default_str();
  cmd->add_option("-o,--output", *output, "Plot data CSV: x,step,reference,shifted,envelope");
  cmd->add_option("--sweep", *sweep, "Run this many random step positions instead")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", *seed, "Random seed for --sweep")->capture_default_str();
  cmd->callback([=, &ctx] {
    int lev = *level ? *level : o->levels;
    if (lev > o->levels) throw UsageError("--level: " + std::to_string(lev) + " exceeds --levels " + std::to_string(o->levels));
    Grid1D grid = Grid1D::centered(*n, *dx);
    WaveletBank1D bank = build_bank(o->spec(), o->levels, grid);
    const double lo = grid.x(0) + grid.length() / 8, hi = grid.x(grid.n - 1) - grid.length() / 8;
    ctx.out << std::setprecision(10);
    if (*sweep > 0) {
      std::mt19937_64 rng(*seed);
      std::uniform_real_distribution<double> U(lo, hi);
      int ok = 0;
      ctx.out << "x0,k,tau,corr_reference,corr_shifted,corr_reference_dual,corr_shifted_dual,holds\n";
      for (int i = 0; i < *sweep; ++i) {
        StepDemoReport r = step_demo(U(rng), bank, lev);
        bool holds = r.corr_shifted >= r.corr_reference;
        ok += holds;
        ctx.out << r.x0 << ',' << r.k << ',' << r.tau_at_singularity << ',' << r.corr_reference << ','
                << r.corr_shifted << ',' << r.corr_reference_dual << ',' << r.corr_shifted_dual << ','
                << (holds ? "yes" : "no") << '\n';
      }
      ctx.out << "# " << ok << "/" << *sweep << " positions with corr_shifted >= corr_reference\n";
      if (ok != *sweep) ctx.exit_code = kExitCheck;
      return;
    }
    double pos = *x0;
    if (pos < lo || pos > hi) {
      double c = std::clamp(pos, lo, hi);
      ctx.err << "warning: x0=" << pos << " lies outside [" << lo << ", " << hi << "]; clamped to " << c << '\n';
      pos = c;
    }
    StepDemoReport r = step_demo(pos, bank, lev);
    ctx.out << "x0 " << r.x0 << "\nlevel " << r.level << "\nk " << r.k << "\ntau " << r.tau_at_singularity
            << "\ncorr_reference " << r.corr_reference << "\ncorr_shifted " << r.corr_shifted
            << "\ncorr_reference_dual " << r.corr_reference_dual << "\ncorr_shifted_dual " << r.corr_shifted_dual << '\n';
    if (!output->empty()) {
      io::Metadata meta = spec_metadata("step-demo", bank.spec, bank.levels, grid);
      meta["x0"] = fmt(r.x0);
      meta["level"] = std::to_string(r.level);
      meta["tau_at_singularity"] = fmt(r.tau_at_singularity);
      meta["corr_reference"] = fmt(r.corr_reference);
      meta["corr_shifted"] = fmt(r.corr_shifted);
      with_output(*output, ctx.out, [&](std::ostream& os) {
        for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
        os << "x,step,reference,shifted,envelope\n" << std::setprecision(17);
        for (std::size_t p = 0; p < grid.n; ++p)
          os << grid.x(p) << ',' << r.step.values[p].real() << ',' << r.reference.values[p].real() << ','
             << r.shifted.values[p].real() << ',' << r.envelope.values[p].real() << '\n';
      });
    }
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_threads_from_env();
  Context ctx{out, err};
  CLI::App app{"Dual-tree complex wavelets with fractional Hilbert shifts", "shiftwave"};
  app.set_config("--config", "", "TOML file with the same keys as the flags ([subcommand] sections)");
  app.require_subcommand(1);
  add_synth(app, ctx);
  add_analyze(app, ctx);
  add_reconstruct(app, ctx);
  add_analyze2d(app, ctx);
  add_reconstruct2d(app, ctx);
  add_metrics_table(app, ctx);
  add_checks(app, ctx);
  add_step_demo(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return ctx.exit_code;
}

}  // namespace shiftwave::tools
