#include "gkfade/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gkfade/ber.hpp"
#include "gkfade/egbmgf.hpp"
#include "gkfade/errors.hpp"
#include "gkfade/montecarlo.hpp"

namespace gkfade::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kCsvHeader = "modulation,snr_db,ber_analytic,ber_mc,mc_stderr";

// Relative MC standard error above which a comparison cannot tell a 3-sigma
// disagreement from noise.
constexpr double kInconclusiveRelStderr = 0.1;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.10g", v);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (!v.is_array()) throw UsageError(std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) throw UsageError(std::string("'") + key + "' must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const char* where) {
  if (!j.is_object()) throw UsageError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw UsageError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

VariableBlock block_from_json(const json& j, const char* where) {
  reject_unknown_keys(j, {"c_num", "c_den", "d_num", "d_den"}, where);
  return {numbers(j, "c_num"), numbers(j, "c_den"), numbers(j, "d_num"), numbers(j, "d_den")};
}

double required_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw UsageError(std::string("spec needs a numeric '") + key + "'");
  }
  return j.at(key).get<double>();
}

EgbmgfSpec spec_from_json(const json& j) {
  reject_unknown_keys(j, {"joint_num", "joint_den_upper", "joint_den_lower", "x_block", "y_block", "x", "y"},
                      "spec");
  EgbmgfSpec spec;
  spec.joint_num = numbers(j, "joint_num");
  spec.joint_den_upper = numbers(j, "joint_den_upper");
  spec.joint_den_lower = numbers(j, "joint_den_lower");
  if (!j.contains("x_block") || !j.contains("y_block")) {
    throw UsageError("spec needs both 'x_block' and 'y_block'");
  }
  spec.x_block = block_from_json(j.at("x_block"), "x_block");
  spec.y_block = block_from_json(j.at("y_block"), "y_block");
  spec.x = required_number(j, "x");
  spec.y = required_number(j, "y");
  return spec;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": not a number: '" + text + "'");
  }
  if (used != text.size() || !(v >= 1.0) || v > 1e18 || std::floor(v) != v) {
    throw UsageError(std::string(what) + ": expected a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--snr: bad number '" + item + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("--snr expects start:stop:step");
  const double start = parts[0];
  const double stop = parts[1];
  const double step = parts[2];
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw UsageError("--snr: step must be positive and bounds finite");
  }
  if (stop < start) throw UsageError("--snr: empty grid (stop < start)");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (n > 100000) throw UsageError("--snr: grid too large");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = start + static_cast<double>(i) * step;
  return grid;
}

std::vector<Modulation> parse_modulations(const std::string& text) {
  std::vector<Modulation> mods;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      mods.push_back(Modulation::from_name(item));
    } catch (const DomainError& e) {
      throw UsageError(std::string("--mod: ") + e.what());
    }
  }
  if (mods.empty()) throw UsageError("--mod: no modulation given");
  return mods;
}

// Everything `ber` and `validate` share.
struct Sweep {
  std::string mod = "bpsk";
  double mm1 = 1.0, ms1 = 1.0, mm2 = 1.0, ms2 = 1.0;
  std::string snr;
  double omega1 = 0.0, omega2 = 0.0;
  std::string output = "analytic";
  std::string samples = "1000000";
  std::uint64_t seed = McConfig{}.seed;
  std::uint32_t streams = McConfig{}.streams;
  unsigned threads = 0;
  std::string out = "-";
  std::string config;
  std::string plot_script;
  double mc_omega_scale = 1.0;

  CLI::Option* o_mod{};
  CLI::Option* o_mm1{};
  CLI::Option* o_ms1{};
  CLI::Option* o_mm2{};
  CLI::Option* o_ms2{};
  CLI::Option* o_snr{};
  CLI::Option* o_omega1{};
  CLI::Option* o_omega2{};
  CLI::Option* o_output{};
  CLI::Option* o_samples{};
  CLI::Option* o_seed{};
  CLI::Option* o_streams{};
  CLI::Option* o_threads{};
  CLI::Option* o_out{};

  void attach(CLI::App* app, bool with_output) {
    o_mod = app->add_option("--mod", mod, "Comma-separated modulations: bpsk, dpsk, bfsk");
    o_mm1 = app->add_option("--mm1", mm1, "Multipath parameter m_m of branch 1");
    o_ms1 = app->add_option("--ms1", ms1, "Shadowing parameter m_s of branch 1");
    o_mm2 = app->add_option("--mm2", mm2, "Multipath parameter m_m of branch 2");
    o_ms2 = app->add_option("--ms2", ms2, "Shadowing parameter m_s of branch 2");
    o_snr = app->add_option("--snr", snr, "SNR grid in dB, start:stop:step (Ω₀ = 10^(dB/10) on both branches)");
    o_omega1 = app->add_option("--omega1", omega1, "Linear Ω₀ of branch 1 (single point)");
    o_omega2 = app->add_option("--omega2", omega2, "Linear Ω₀ of branch 2 (single point)");
    o_snr->excludes(o_omega1)->excludes(o_omega2);
    if (with_output) {
      o_output = app->add_option("--output", output, "Columns to fill: analytic, mc or both")
                     ->check(CLI::IsMember({"analytic", "mc", "both"}));
    }
    o_samples = app->add_option("--samples", samples, "Monte Carlo samples per point (1e6 notation accepted)");
    o_seed = app->add_option("--seed", seed, "Monte Carlo seed");
    o_streams = app->add_option("--streams", streams, "Monte Carlo substreams");
    o_threads = app->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    o_out = app->add_option("--out", out, "Output file, or - for stdout");
    app->add_option("--config", config, "JSON file with defaults for any of the options above");
    app->add_option("--plot-script", plot_script, "Also write a gnuplot script stub for the CSV");
  }

  template <class T>
  static void merge(const CLI::Option* opt, const json& cfg, const char* key, T& target) {
    if (opt == nullptr || opt->count() > 0 || !cfg.contains(key)) return;
    try {
      target = cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw UsageError(std::string("config: bad value for '") + key + "'");
    }
  }

  // Flags beat the config file, which beats built-in defaults.
  void apply_config() {
    if (config.empty()) return;
    const json cfg = read_json_file(config);
    reject_unknown_keys(cfg,
                        {"mod", "mm1", "ms1", "mm2", "ms2", "snr", "omega1", "omega2", "output", "samples",
                         "seed", "streams", "threads", "out"},
                        "config");
    if (o_mod->count() == 0 && cfg.contains("mod") && cfg.at("mod").is_array()) {
      std::string joined;
      for (const json& m : cfg.at("mod")) {
        if (!m.is_string()) throw UsageError("config: 'mod' entries must be strings");
        joined += (joined.empty() ? "" : ",") + m.get<std::string>();
      }
      mod = joined;
    } else {
      merge(o_mod, cfg, "mod", mod);
    }
    merge(o_mm1, cfg, "mm1", mm1);
    merge(o_ms1, cfg, "ms1", ms1);
    merge(o_mm2, cfg, "mm2", mm2);
    merge(o_ms2, cfg, "ms2", ms2);
    const bool grid_on_cli = o_snr->count() > 0 || o_omega1->count() > 0 || o_omega2->count() > 0;
    if (!grid_on_cli) {
      merge(o_snr, cfg, "snr", snr);
      merge(o_omega1, cfg, "omega1", omega1);
      merge(o_omega2, cfg, "omega2", omega2);
      if (!snr.empty() && (cfg.contains("omega1") || cfg.contains("omega2"))) {
        throw UsageError("config: 'snr' and 'omega1'/'omega2' are mutually exclusive");
      }
    }
    merge(o_output, cfg, "output", output);
    if (o_samples->count() == 0 && cfg.contains("samples")) {
      const json& s = cfg.at("samples");
      if (s.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << s.get<double>();
        samples = os.str();
      } else if (s.is_string()) {
        samples = s.get<std::string>();
      } else {
        throw UsageError("config: bad value for 'samples'");
      }
    }
    merge(o_seed, cfg, "seed", seed);
    merge(o_streams, cfg, "streams", streams);
    merge(o_threads, cfg, "threads", threads);
    merge(o_out, cfg, "out", out);
  }

  bool omega_mode() const { return omega1 > 0.0 || omega2 > 0.0 || o_omega1->count() > 0 || o_omega2->count() > 0; }
};

struct Point {
  Modulation mod;
  double snr_db = 0.0;
  ScLink link;
};

std::vector<Point> build_points(const Sweep& s) {
  const std::vector<Modulation> mods = parse_modulations(s.mod);
  std::vector<std::pair<double, std::pair<double, double>>> grid;  // snr_db, (Ω₁, Ω₂)
  if (s.omega_mode()) {
    if (!(s.omega1 > 0.0) || !(s.omega2 > 0.0)) {
      throw UsageError("--omega1 and --omega2 must both be given and positive");
    }
    grid.push_back({10.0 * std::log10(s.omega1), {s.omega1, s.omega2}});
  } else {
    if (s.snr.empty()) throw UsageError("an SNR grid (--snr) or --omega1/--omega2 is required");
    for (double db : parse_snr_grid(s.snr)) {
      const double omega = std::pow(10.0, db / 10.0);
      grid.push_back({db, {omega, omega}});
    }
  }
  std::vector<Point> points;
  for (const Modulation& m : mods) {
    for (const auto& [db, omegas] : grid) {
      Point p{m, db, ScLink{{s.mm1, s.ms1, omegas.first}, {s.mm2, s.ms2, omegas.second}}};
      try {
        p.link.validate();
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
      points.push_back(p);
    }
  }
  return points;
}

McConfig mc_config(const Sweep& s, unsigned mc_threads) {
  McConfig cfg;
  cfg.samples = parse_count(s.samples, "--samples");
  cfg.seed = s.seed;
  cfg.streams = s.streams;
  cfg.threads = mc_threads;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

struct RowResult {
  std::optional<double> analytic;
  std::optional<double> mc;
  std::optional<double> stderr_mc;
  std::string error;
  int code = kOk;
};

int code_for(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e) != nullptr || dynamic_cast<const NoStripError*>(&e) != nullptr) {
    return kUsage;
  }
  return kNumeric;
}

// Evaluates every point on a small worker pool; results keep point order.
std::vector<RowResult> evaluate(const std::vector<Point>& points, bool analytic, bool mc, const McConfig& mc_cfg,
                                unsigned threads, double mc_omega_scale) {
  std::vector<RowResult> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const Point& p = points[i];
      RowResult& r = rows[i];
      try {
        if (analytic) r.analytic = ber_closed_form(p.link, p.mod);
        if (mc) {
          ScLink mc_link = p.link;
          mc_link.branch1.omega0 *= mc_omega_scale;
          mc_link.branch2.omega0 *= mc_omega_scale;
          const McEstimate e = estimate_ber(mc_link, p.mod, mc_cfg);
          r.mc = e.ber;
          r.stderr_mc = e.std_error;
        }
      } catch (const Error& e) {
        r.error = e.what();
        r.code = code_for(e);
      }
    }
  };
  unsigned n = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::clamp<unsigned>(n, 1u, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  }
  return rows;
}

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Opens --out; "-" means the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_plot_script(const std::string& path, const std::string& csv_path, const std::vector<Modulation>& mods) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  const std::string data = csv_path == "-" ? "ber.csv" : csv_path;
  f << "# gnuplot stub for " << data << "\n"
    << "set datafile separator ','\n"
    << "set logscale y\n"
    << "set xlabel 'SNR (dB)'\n"
    << "set ylabel 'BER'\n"
    << "set key bottom left\n"
    << "plot \\\n";
  for (std::size_t i = 0; i < mods.size(); ++i) {
    const std::string& m = mods[i].name;
    f << "  '" << data << "' using 2:(strcol(1) eq '" << m << "' ? $3 : 1/0) with lines title '" << m
      << " analytic', \\\n"
      << "  '" << data << "' using 2:(strcol(1) eq '" << m << "' ? $4 : 1/0) with points title '" << m
      << " mc'" << (i + 1 < mods.size() ? ", \\\n" : "\n");
  }
}

unsigned mc_threads_for(unsigned point_threads, std::size_t points) {
  // Parallelism goes to the sweep points when there are several of them.
  return (point_threads != 1 && points > 1) ? 1u : point_threads;
}

int cmd_ber(Sweep& s, std::ostream& out, std::ostream& err) {
  s.apply_config();
  const std::vector<Point> points = build_points(s);
  const bool want_analytic = s.output != "mc";
  const bool want_mc = s.output != "analytic";
  McConfig cfg;
  if (want_mc) cfg = mc_config(s, mc_threads_for(s.threads, points.size()));
  if (!s.plot_script.empty()) write_plot_script(s.plot_script, s.out, parse_modulations(s.mod));

  Sink sink(s.out, out);
  const std::vector<RowResult> rows = evaluate(points, want_analytic, want_mc, cfg, s.threads, 1.0);
  *sink << kCsvHeader << '\n';
  int code = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Point& p = points[i];
    const RowResult& r = rows[i];
    if (!r.error.empty()) {
      err << "gkfade ber: " << p.mod.name << " @ " << fmt(p.snr_db) << " dB: " << r.error << '\n';
      code = std::max(code, r.code);
      continue;
    }
    *sink << p.mod.name << ',' << fmt(p.snr_db) << ',' << cell(r.analytic) << ',' << cell(r.mc) << ','
          << cell(r.stderr_mc) << '\n';
  }
  (*sink).flush();
  return code;
}

int cmd_validate(Sweep& s, std::ostream& out, std::ostream& err) {
  s.apply_config();
  const std::vector<Point> points = build_points(s);
  const McConfig cfg = mc_config(s, mc_threads_for(s.threads, points.size()));
  if (!(s.mc_omega_scale > 0.0) || !std::isfinite(s.mc_omega_scale)) {
    throw UsageError("--mc-omega-scale must be positive");
  }

  Sink sink(s.out, out);
  const std::vector<RowResult> rows = evaluate(points, true, true, cfg, s.threads, s.mc_omega_scale);
  *sink << kCsvHeader << ",z_score,status\n";
  int code = kOk;
  std::size_t passed = 0;
  std::size_t inconclusive = 0;
  double worst_z = -1.0;
  std::string worst;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Point& p = points[i];
    const RowResult& r = rows[i];
    if (!r.error.empty()) {
      err << "gkfade validate: " << p.mod.name << " @ " << fmt(p.snr_db) << " dB: " << r.error << '\n';
      code = std::max(code, r.code);
      continue;
    }
    const double z = (*r.analytic - *r.mc) / *r.stderr_mc;
    std::string status;
    if (!(*r.stderr_mc <= kInconclusiveRelStderr * *r.analytic)) {
      status = "inconclusive";
      ++inconclusive;
    } else if (std::abs(z) <= 3.0) {
      status = "pass";
      ++passed;
    } else {
      status = "fail";
    }
    if (status != "inconclusive" && std::abs(z) > worst_z) {
      worst_z = std::abs(z);
      worst = p.mod.name + " @ " + fmt(p.snr_db) + " dB";
    }
    *sink << p.mod.name << ',' << fmt(p.snr_db) << ',' << cell(r.analytic) << ',' << cell(r.mc) << ','
          << cell(r.stderr_mc) << ',' << fmt(z) << ',' << status << '\n';
  }
  (*sink).flush();

  err << "gkfade validate: " << passed << "/" << points.size() << " points pass";
  if (inconclusive > 0) {
    err << ", " << inconclusive << " inconclusive (stderr too large to discriminate; raise --samples)";
  }
  if (!worst.empty()) err << "; worst |z| = " << fmt(worst_z) << " at " << worst;
  err << '\n';
  if (code != kOk) return code;
  return passed == points.size() ? kOk : kValidationFailed;
}

int cmd_egbmgf(const std::string& path, double scale, std::ostream& out) {
  const json j = read_json_file(path);
  EgbmgfSpec spec;
  try {
    spec = spec_from_json(j);
  } catch (const json::exception& e) {
    throw UsageError(std::string("spec: ") + e.what());
  }
  const EgbmgfResult r = evaluate_egbmgf(spec);
  check_imag_residual(r.value, r.imag_residual, "EGBMGF");
  nlohmann::ordered_json report = {
      {"value", scale * r.value},
      {"imag_residual", std::abs(scale * r.imag_residual)},
      {"boundary_convergence", r.boundary_convergence},
      {"contour_adjusted", r.contour_adjusted},
      {"abscissa_s", r.abscissa_s},
      {"abscissa_t", r.abscissa_t},
  };
  out << report.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dual-branch selection-combining BER over generalized-K fading", "gkfade"};
  app.require_subcommand(1);

  Sweep ber;
  CLI::App* ber_cmd = app.add_subcommand("ber", "Average BER over an SNR sweep, as CSV");
  ber.attach(ber_cmd, true);

  Sweep val;
  CLI::App* val_cmd = app.add_subcommand("validate", "Compare the closed form with Monte Carlo, point by point");
  val.attach(val_cmd, false);
  val_cmd->add_option("--mc-omega-scale", val.mc_omega_scale,
                      "Scale Ω₀ on the Monte Carlo side only (negative control)");

  std::string spec_path;
  double scale = 1.0;
  CLI::App* eg_cmd = app.add_subcommand("egbmgf", "Evaluate a bivariate Meijer G spec from JSON");
  eg_cmd->add_option("spec", spec_path, "JSON spec file")->required();
  eg_cmd->add_option("--scale", scale, "Multiply the value by this factor (e.g. a BER prefactor)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (ber_cmd->parsed()) return cmd_ber(ber, out, err);
    if (val_cmd->parsed()) return cmd_validate(val, out, err);
    return cmd_egbmgf(spec_path, scale, out);
  } catch (const UsageError& e) {
    err << "gkfade: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "gkfade: " << e.what() << '\n';
    return code_for(e);
  }
}

}  // namespace gkfade::cli
