#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "gegtau/parallel.hpp"
#include "gegtau/pencil.hpp"
#include "json_out.hpp"
#include "verify.hpp"

#ifndef GEGTAU_VERSION
#define GEGTAU_VERSION "0.0.0"
#endif

namespace gegtau::cli {
namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Shortest decimal form that round-trips.
std::string format_param(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// "a", or "a:b:step" with b included when reached within rounding.
std::vector<double> parse_real_range(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto num = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + t + "' in range '" + s + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw UsageError("bad number '" + t + "' in range '" + s + "'");
    return v;
  };
  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() != 3) throw UsageError("range must be a or a:b:step, got '" + s + "'");
  const double a = num(parts[0]);
  const double b = num(parts[1]);
  const double step = num(parts[2]);
  if (!(step > 0)) throw UsageError("range step must be positive in '" + s + "'");
  if (b < a) throw UsageError("empty range '" + s + "'");
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 100000) throw UsageError("range '" + s + "' has too many points");
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    // Snap to 12 significant digits so 0.1*3 reads as 0.3.
    const double v = a + static_cast<double>(i) * step;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out.push_back(std::strtod(buf, nullptr));
  }
  return out;
}

std::vector<int> parse_int_range(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_real_range(s)) {
    if (v != std::floor(v) || std::fabs(v) > 1e6) throw UsageError("degree range must be integral: '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Json tolerances_json(const Tolerances& t) {
  return Json{{"real_rel", t.real_rel},
              {"real_abs_scale", t.real_abs_scale},
              {"distinct_rel", t.distinct_rel},
              {"infinite_rel", t.infinite_rel},
              {"root_residual", static_cast<double>(root_residual_tol)}};
}

Json timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (env == nullptr || *env == '\0') return nullptr;
  char* end = nullptr;
  const long long secs = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0') return nullptr;
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buf);
}

// The output destination is not part of the computation, so it is dropped from
// the command echo; a rerun then writes byte-identical output.
std::vector<std::string> without_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

Json manifest(const std::vector<std::string>& args, Json grid, const Tolerances& tol) {
  return Json{{"tool", "gegtau"},
              {"version", GEGTAU_VERSION},
              {"command", without_out(args)},
              {"grid", std::move(grid)},
              {"tolerances", tolerances_json(tol)},
              {"timestamp", timestamp()}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  f << text;
  if (!f) throw UsageError("failed writing output file '" + path + "'");
}

std::string csv_manifest(const Json& m) { return "# manifest: " + dump_compact(m) + "\n"; }

std::string parity_label(Parity p) { return p == Parity::none ? "both" : std::string(to_string(p)); }

Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  return Parity::none;
}

struct Common {
  std::string out;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  Tolerances tol;
};

void add_common(CLI::App* app, Common& c, bool with_jobs) {
  app->add_option("--out", c.out, "Output file ('-' for stdout)");
  if (with_jobs) app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
  app->add_option("--real-rel", c.tol.real_rel, "Relative imaginary-part tolerance for real eigenvalues")
      ->check(CLI::PositiveNumber);
  app->add_option("--real-abs", c.tol.real_abs_scale, "Imaginary-part tolerance relative to the spectrum scale")
      ->check(CLI::PositiveNumber);
  app->add_option("--distinct-rel", c.tol.distinct_rel, "Minimum relative gap between real eigenvalues")
      ->check(CLI::PositiveNumber);
  app->add_option("--infinite-rel", c.tol.infinite_rel, "|mu| cutoff, relative to max |mu|, for infinite eigenvalues")
      ->check(CLI::PositiveNumber);
}

MethodConfig make_config(const std::string& method, double gamma, int n, double alpha, Parity parity) {
  if (!(gamma > -0.5)) throw UsageError("--gamma must exceed -1/2");
  if (alpha < 0) throw UsageError("--alpha must be >= 0");
  MethodConfig cfg = MethodConfig::make(method_from_string(method), gamma, n, alpha);
  if (parity != Parity::none) cfg.parity_split = true;
  return cfg;
}

Json config_json(const MethodConfig& c, Parity parity) {
  return Json{{"method", std::string(to_string(c.kind))},
              {"gamma", static_cast<double>(c.gamma)},
              {"n", c.n},
              {"alpha", static_cast<double>(c.alpha)},
              {"parity_split", c.parity_split},
              {"parity", parity_label(parity)}};
}

Json report_json(const SpectrumReport& r) {
  const ClassCounts c = r.counts();
  Json eig = Json::array();
  for (const auto& e : r.entries) {
    const bool inf = e.cls == EigenClass::near_infinite;
    eig.push_back(Json{{"re", inf ? Json(nullptr) : Json(e.lambda.real())},
                       {"im", inf ? Json(nullptr) : Json(e.lambda.imag())},
                       {"class", std::string(to_string(e.cls))},
                       {"parity", e.parity == Parity::none ? Json(nullptr) : Json(std::string(to_string(e.parity)))},
                       {"residual", e.residual}});
  }
  return Json{{"summary",
               Json{{"total", c.total()},
                    {"real_negative", c.real_negative},
                    {"spurious_positive", c.spurious_positive},
                    {"complex_pair", c.complex_pair},
                    {"near_infinite", c.near_infinite},
                    {"distinct", r.distinct},
                    {"interlaced", r.interlaced ? Json(*r.interlaced) : Json(nullptr)}}},
              {"eigenvalues", eig}};
}

int cmd_spectrum(const std::vector<std::string>& args, const Common& c, const std::string& method, double gamma, int n,
                 double alpha, const std::string& parity_s, const std::string& format, std::ostream& out) {
  const Parity parity = parse_parity(parity_s);
  const MethodConfig cfg = make_config(method, gamma, n, alpha, parity);
  const SpectrumReport rep = compute_spectrum(cfg, c.tol, parity);
  const Json m = manifest(args, config_json(cfg, parity), c.tol);
  std::string text;
  if (format == "json") {
    Json doc{{"manifest", m}, {"config", config_json(cfg, parity)}, {"tolerances", tolerances_json(c.tol)}};
    const Json body = report_json(rep);
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = *it;
    text = dump(doc) + "\n";
  } else {
    text = csv_manifest(m) + "re,im,class,parity,residual\n";
    for (const auto& e : rep.entries) {
      const bool inf = e.cls == EigenClass::near_infinite;
      text += (inf ? "" : format_double(e.lambda.real())) + "," + (inf ? "" : format_double(e.lambda.imag())) + "," +
              std::string(to_string(e.cls)) + "," + parity_label(e.parity) + "," + format_double(e.residual) + "\n";
    }
  }
  emit(text, c.out, out);
  return exit_ok;
}

struct SweepRow {
  double gamma;
  int n;
  ClassCounts counts;
  std::optional<std::complex<double>> extreme;
};

int cmd_sweep(const std::vector<std::string>& args, const Common& c, const std::string& method,
              const std::string& gamma_range, const std::string& n_range, double alpha, const std::string& parity_s,
              const std::string& track, std::ostream& out, std::ostream& err) {
  const Parity parity = parse_parity(parity_s);
  const auto gammas = parse_real_range(gamma_range);
  const auto ns = parse_int_range(n_range);
  std::vector<MethodConfig> grid;
  for (double g : gammas) {
    for (int n : ns) grid.push_back(make_config(method, g, n, alpha, parity));
  }
  if (grid.empty()) throw UsageError("empty grid");

  const auto rows = parallel_map(
      grid,
      [&](const MethodConfig& cfg) {
        try {
          const SpectrumReport r = compute_spectrum(cfg, c.tol, parity);
          return SweepRow{static_cast<double>(cfg.gamma), cfg.n, r.counts(), r.extreme()};
        } catch (const NumericalError& e) {
          throw NumericalError("gamma=" + format_param(static_cast<double>(cfg.gamma)) + ", n=" +
                               std::to_string(cfg.n) + ": " + e.what());
        }
      },
      c.jobs);

  Json g{{"method", method}, {"gamma_range", gamma_range}, {"n_range", n_range}, {"alpha", alpha},
         {"parity", parity_label(parity)}, {"track", track}};
  std::string text = csv_manifest(manifest(args, g, c.tol));
  text += "gamma,n,method,alpha,parity,n_real_negative,n_spurious_positive,n_complex,n_infinite,extreme_re,extreme_im\n";
  const std::string mname(to_string(method_from_string(method)));
  for (const auto& r : rows) {
    text += format_param(r.gamma) + "," + std::to_string(r.n) + "," + mname + "," + format_param(alpha) + "," +
            parity_label(parity) + "," + std::to_string(r.counts.real_negative) + "," +
            std::to_string(r.counts.spurious_positive) + "," + std::to_string(r.counts.complex_pair) + "," +
            std::to_string(r.counts.near_infinite) + "," + (r.extreme ? format_double(r.extreme->real()) : "") + "," +
            (r.extreme ? format_double(r.extreme->imag()) : "") + "\n";
  }
  emit(text, c.out, out);

  // One-line digest of the tracked quantity.
  if (track == "complex_count") {
    auto it = std::find_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.counts.complex_pair > 0; });
    if (it == rows.end()) {
      err << "complex_count: zero at every grid point\n";
    } else {
      err << "complex_count: first nonzero at gamma=" << format_param(it->gamma) << ", n=" << it->n << " ("
          << it->counts.complex_pair << ")\n";
    }
  } else if (track == "spurious_count") {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& r : rows) {
      lo = std::min(lo, r.counts.spurious_positive);
      hi = std::max(hi, r.counts.spurious_positive);
    }
    err << "spurious_count: min " << lo << ", max " << hi << "\n";
  } else {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& r : rows) {
      if (!r.extreme) continue;
      lo = std::min(lo, r.extreme->real());
      hi = std::max(hi, r.extreme->real());
    }
    err << "extreme_eigenvalue: real part in [" << format_double(lo) << ", " << format_double(hi) << "]\n";
  }
  return exit_ok;
}

int cmd_verify(const std::vector<std::string>& args, const Common& c, const std::string& suite,
               const std::vector<double>& gammas, const std::vector<int>& ns, const std::string& gamma_range,
               const std::string& n_range, std::ostream& out, std::ostream& err) {
  SuiteGrid grid{gammas, ns};
  if (!gamma_range.empty()) {
    const auto extra = parse_real_range(gamma_range);
    grid.gammas.insert(grid.gammas.end(), extra.begin(), extra.end());
  }
  if (!n_range.empty()) {
    const auto extra = parse_int_range(n_range);
    grid.ns.insert(grid.ns.end(), extra.begin(), extra.end());
  }
  const SuiteGrid used = resolved_grid(suite, grid);
  const SuiteResult res = run_suite(suite, grid, c.jobs, c.tol);

  Json gj{{"suite", suite}, {"gammas", used.gammas}, {"ns", used.ns}};
  Json doc{{"manifest", manifest(args, gj, c.tol)},
           {"suite", suite},
           {"pass", res.pass},
           {"points", res.points},
           {"first_failure", res.pass ? Json(nullptr) : Json(res.first_failure)},
           {"results", res.detail}};
  emit(dump(doc) + "\n", c.out, out);
  err << suite << ": " << (res.pass ? "PASS" : "FAIL") << " (" << res.points << " grid points)";
  if (!res.pass) err << "; first counterexample: " << res.first_failure;
  err << "\n";
  return res.pass ? exit_ok : exit_verification_failed;
}

int cmd_rerun(const std::string& file, const std::string& out_override, std::ostream& out, std::ostream& err) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + file + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  Json m;
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      m = Json::parse(text).at("manifest");
    } else {
      const std::string tag = "# manifest: ";
      const auto pos = text.find(tag);
      if (pos == std::string::npos) throw UsageError("no manifest found in '" + file + "'");
      const auto eol = text.find('\n', pos);
      m = Json::parse(text.substr(pos + tag.size(), eol - pos - tag.size()));
    }
  } catch (const Json::exception& e) {
    throw UsageError("malformed manifest in '" + file + "': " + e.what());
  }
  std::vector<std::string> args;
  try {
    args = m.at("command").get<std::vector<std::string>>();
  } catch (const Json::exception&) {
    throw UsageError("manifest in '" + file + "' has no command echo");
  }
  if (!args.empty() && args.front() == "rerun") throw UsageError("refusing to rerun a rerun command");
  if (!out_override.empty()) {
    args = without_out(args);
    args.push_back("--out");
    args.push_back(out_override);
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gegenbauer tau spectra for D^4 u = lambda D^2 u with clamped ends", "gegtau"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GEGTAU_VERSION);
  const std::vector<std::string> methods{"tau", "galerkin", "inviscid", "modified", "collocation"};

  Common sc;
  std::string s_method = "tau", s_parity = "both", s_format = "json";
  double s_gamma = 0, s_alpha = 0;
  int s_n = 0;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues of one discretization");
  spectrum->add_option("--method", s_method, "Discretization")->check(CLI::IsMember(methods));
  spectrum->add_option("--gamma", s_gamma, "Gegenbauer index (> -1/2)")->required();
  spectrum->add_option("--n", s_n, "Polynomial degree")->required()->check(CLI::Range(4, 4096));
  spectrum->add_option("--alpha", s_alpha, "Wavenumber (>= 0)");
  spectrum->add_option("--parity", s_parity, "Parity block")->check(CLI::IsMember({"even", "odd", "both"}));
  spectrum->add_option("--format", s_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  add_common(spectrum, sc, false);

  Common wc;
  std::string w_method = "tau", w_gamma, w_n, w_parity = "both", w_track = "spurious_count";
  double w_alpha = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "CSV of spectrum statistics over a (gamma, n) grid");
  sweep->add_option("--method", w_method, "Discretization")->check(CLI::IsMember(methods));
  sweep->add_option("--gamma-range", w_gamma, "a:b:step or a single value")->required();
  sweep->add_option("--n-range", w_n, "a:b:step or a single value")->required();
  sweep->add_option("--alpha", w_alpha, "Wavenumber (>= 0)");
  sweep->add_option("--parity", w_parity, "Parity block")->check(CLI::IsMember({"even", "odd", "both"}));
  sweep->add_option("--track", w_track, "Quantity summarized on stderr")
      ->check(CLI::IsMember({"spurious_count", "complex_count", "extreme_eigenvalue"}));
  add_common(sweep, wc, true);

  Common vc;
  std::string v_suite, v_gamma_range, v_n_range;
  std::vector<double> v_gammas;
  std::vector<int> v_ns;
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite; exit 1 on the first violation");
  verify->add_option("--suite", v_suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--gamma", v_gammas, "Gamma grid values (repeatable)");
  verify->add_option("--n", v_ns, "Degree grid values (repeatable)");
  verify->add_option("--gamma-range", v_gamma_range, "a:b:step added to the gamma grid");
  verify->add_option("--n-range", v_n_range, "a:b:step added to the degree grid");
  add_common(verify, vc, true);

  std::string r_file, r_out;
  CLI::App* rerun = app.add_subcommand("rerun", "Re-execute the command recorded in an output's manifest");
  rerun->add_option("file", r_file, "JSON or CSV output with an embedded manifest")->required();
  rerun->add_option("--out", r_out, "Override the recorded output destination");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << GEGTAU_VERSION << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (spectrum->parsed()) {
      return cmd_spectrum(args, sc, s_method, s_gamma, s_n, s_alpha, s_parity, s_format, out);
    }
    if (sweep->parsed()) {
      return cmd_sweep(args, wc, w_method, w_gamma, w_n, w_alpha, w_parity, w_track, out, err);
    }
    if (verify->parsed()) {
      return cmd_verify(args, vc, v_suite, v_gammas, v_ns, v_gamma_range, v_n_range, out, err);
    }
    return cmd_rerun(r_file, r_out, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const NumericalError& e) {
    err << "numerical diagnostic: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace gegtau::cli
