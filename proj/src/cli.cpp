#include "mldelta/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "mldelta/flux.hpp"
#include "mldelta/numerics.hpp"
#include "mldelta/quasiposition.hpp"
#include "mldelta/scattering.hpp"

namespace mldelta::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return xs;
}

unsigned worker_count() {
  const char* env = std::getenv("MLDELTA_WORKERS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  return static_cast<unsigned>(std::min(v, 64L));
}

// Fans row computations out to MLDELTA_WORKERS threads; results land by index,
// so the assembled output is identical to the serial order.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(workers, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct Cell {
  bool is_num = true;
  double num = 0.0;
  std::string str;
  Cell(double v) : num(v) {}                             // NOLINT
  Cell(std::string s) : is_num(false), str(std::move(s)) {}  // NOLINT
};

struct Entry {
  enum Kind { Data, AbsentRow } kind = Data;
  std::vector<Cell> cells;   // Data: both formats; AbsentRow: JSON only
  std::string comment;       // AbsentRow: CSV comment line
};

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<Entry> entries;

  void add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
  }
  void add_param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
  }
  void add_row(std::vector<Cell> cells) {
    entries.push_back({Entry::Data, std::move(cells), {}});
  }
  void add_absent_row(std::vector<Cell> cells, std::string comment) {
    entries.push_back({Entry::AbsentRow, std::move(cells), std::move(comment)});
  }

  void write_csv(std::ostream& out) const {
    out << "# command=" << command << "\n";
    out << "# schema_version=1\n";
    for (const auto& [k, v] : params) out << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& e : entries) {
      if (e.kind == Entry::AbsentRow) {
        out << "# " << e.comment << "\n";
        continue;
      }
      for (std::size_t i = 0; i < e.cells.size(); ++i) {
        if (i) out << ",";
        out << (e.cells[i].is_num ? format_double(e.cells[i].num) : e.cells[i].str);
      }
      out << "\n";
    }
  }

  void write_json(std::ostream& out) const {
    ordered_json doc;
    doc["schema_version"] = "1";
    doc["command"] = command;
    ordered_json jp = ordered_json::object();
    for (const auto& [k, v] : params) jp[k] = v;
    doc["parameters"] = jp;
    doc["columns"] = columns;
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) {
      ordered_json row = ordered_json::array();
      for (const auto& c : e.cells) {
        if (c.is_num)
          row.push_back(c.num);
        else
          row.push_back(c.str);
      }
      rows.push_back(row);
    }
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
  }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json")
      write_json(out);
    else
      write_csv(out);
  }
};

void echo_physics(OutputRecord& rec, const RunConfig& cfg, const DeformationSpec& d,
                  const PotentialSpec& pot) {
  rec.add_param("deformation", cfg.deformation);
  rec.add_param("beta", d.beta());
  rec.add_param("b", d.b());
  rec.add_param("a", d.a());
  rec.add_param("l0", d.l0(pot.hbar));
  rec.add_param("v0", pot.V0);
  rec.add_param("vtilde", pot.vtilde);
  rec.add_param("hbar", pot.hbar);
  rec.add_param("mass", pot.m);
  rec.add_param("tol", cfg.tol);
}

OutputRecord run_bound(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  const BoundState st = solve_bound_state(d, pot);
  OutputRecord rec;
  rec.command = "bound";
  echo_physics(rec, cfg, d, pot);
  rec.columns = {"q", "energy", "i2", "norm_const"};
  rec.add_row({st.q, st.E, st.i2, st.norm_const});
  return rec;
}

OutputRecord run_wavefunction(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  const BoundState st = solve_bound_state(d, pot);
  OutputRecord rec;
  rec.command = "wavefunction";
  echo_physics(rec, cfg, d, pot);
  rec.add_param("x_min", cfg.x_min);
  rec.add_param("x_max", cfg.x_max);
  rec.add_param("samples", format_double(cfg.samples));
  rec.add_param("q", st.q);
  rec.add_param("energy", st.E);
  rec.add_param("norm_const", st.norm_const);
  rec.columns = {"x", "psi"};
  const auto xs = linspace(cfg.x_min, cfg.x_max, cfg.samples);
  std::vector<double> psi(xs.size());
  for_each_index(xs.size(), [&](std::size_t i) {
    psi[i] = bound_wavefunction(d, pot, st, xs[i]);
  });
  for (std::size_t i = 0; i < xs.size(); ++i) rec.add_row({xs[i], psi[i]});
  return rec;
}

OutputRecord run_scatter(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  OutputRecord rec;
  rec.command = "scatter";
  echo_physics(rec, cfg, d, pot);
  rec.add_param("k_min", cfg.k_min);
  rec.add_param("k_max", cfg.k_max);
  rec.add_param("samples", format_double(cfg.samples));
  rec.columns = {"k", "p0", "G", "re_A", "im_A", "T", "R"};
  const auto ks = linspace(cfg.k_min, cfg.k_max, cfg.samples);
  std::vector<ScatteringPoint> pts(ks.size());
  for_each_index(ks.size(), [&](std::size_t i) {
    pts[i] = scattering_point(d, pot, ks[i]);
  });
  for (const auto& sp : pts)
    rec.add_row({sp.k, sp.p0, sp.G, sp.A.real(), sp.A.imag(), sp.T, sp.R});
  return rec;
}

OutputRecord run_resonance(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  OutputRecord rec;
  rec.command = "resonance";
  echo_physics(rec, cfg, d, pot);
  rec.add_param("v0_min", cfg.v0_min);
  rec.add_param("v0_max", cfg.v0_max);
  rec.add_param("samples", format_double(cfg.samples));
  rec.add_param("k_max", cfg.k_max);
  rec.columns = {"v0", "vtilde", "k_star"};

  const auto v0s = linspace(cfg.v0_min, cfg.v0_max, cfg.samples);
  std::vector<double> vts(v0s.size());
  for (std::size_t i = 0; i < v0s.size(); ++i)
    vts[i] = pot.m * v0s[i] / (std::numbers::pi * pot.hbar);
  const ResonanceCurve curve = resonance_curve(d, vts, cfg.k_max);

  for (std::size_t i = 0; i < v0s.size(); ++i) {
    bool any = false;
    for (const auto& pt : curve.points)
      if (pt.vtilde == vts[i]) {
        rec.add_row({v0s[i], vts[i], pt.k_star});
        any = true;
      }
    if (!any)
      rec.add_absent_row({v0s[i], vts[i], std::string("none")},
                         "v0=" + format_double(v0s[i]) +
                             ": no resonance in (0, k_max]");
  }
  return rec;
}

OutputRecord run_flux(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  OutputRecord rec;
  rec.command = "flux";
  echo_physics(rec, cfg, d, pot);
  rec.add_param("k_min", cfg.k_min);
  rec.add_param("k_max", cfg.k_max);
  rec.add_param("samples", format_double(cfg.samples));
  rec.columns = {"k", "p0", "j_incident", "j_transmitted", "j_reflected",
                 "conservation_defect"};
  const auto ks = linspace(cfg.k_min, cfg.k_max, cfg.samples);
  std::vector<FluxReport> reps(ks.size());
  for_each_index(ks.size(), [&](std::size_t i) {
    reps[i] = flux_conservation_check(d, pot, ks[i]);
  });
  for (std::size_t i = 0; i < ks.size(); ++i)
    rec.add_row({ks[i], d.g_inverse(ks[i]), reps[i].j_incident,
                 reps[i].j_transmitted, reps[i].j_reflected,
                 reps[i].conservation_defect});
  return rec;
}

OutputRecord run_asymptotic(const RunConfig& cfg) {
  const DeformationSpec d = cfg.make_deformation();
  const PotentialSpec pot = cfg.make_potential();
  OutputRecord rec;
  rec.command = "asymptotic-check";
  echo_physics(rec, cfg, d, pot);
  rec.add_param("k", cfg.k);
  rec.add_param("x_min", cfg.x_min);
  rec.add_param("x_max", cfg.x_max);
  rec.add_param("samples", format_double(cfg.samples));
  const auto xs = linspace(cfg.x_min, cfg.x_max, cfg.samples);
  const AsymptoticCheckReport rep = asymptotic_wave_check(d, cfg.k, xs, pot.hbar);
  rec.add_param("deviation_decreasing", rep.deviation_decreasing ? "true" : "false");
  rec.columns = {"x", "re_integral", "im_integral", "limit_magnitude",
                 "rel_deviation"};
  for (const auto& row : rep.rows)
    rec.add_row({row.x, row.integral.real(), row.integral.imag(),
                 std::abs(row.limit), row.rel_deviation});
  return rec;
}

struct SelfCheck {
  std::string name;
  double defect = 0.0;
  double threshold = 0.0;
  bool pass() const { return defect < threshold; }
};

std::vector<SelfCheck> run_selfcheck_list() {
  std::vector<SelfCheck> checks;
  const PotentialSpec unit(1.0);

  {
    const double v = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                        std::numbers::pi)
                         .value;
    checks.push_back({"quadrature_sin", std::abs(v - 2.0), 1e-10});
  }
  {
    const PoleSubtraction poles[2] = {{2.0, 0.5}, {-2.0, 0.5}};
    const double v = principal_value_integral(
        [](double p) { return p / (p * p - 4.0); }, -10.0, 10.0, poles);
    checks.push_back({"pv_odd_integrand", std::abs(v), 1e-12});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0);
    double worst = 0.0;
    for (double k : {0.5, 1.0, 3.0, 7.0, 9.5}) {
      const double closed = std::log((10.0 - k) / (10.0 + k)) / k;
      worst = std::max(worst, std::abs(g_principal(d, k) - closed));
    }
    checks.push_back({"g_cutoff_closed_form", worst, 1e-8});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::Kempf, 1.0);
    double worst = 0.0;
    for (double k : {0.3, 1.0, 2.0, 4.0}) {
      const double closed = -std::numbers::pi / (1.0 + k * k);
      worst = std::max(worst, std::abs(g_principal(d, k) - closed));
    }
    checks.push_back({"g_kempf_closed_form", worst, 1e-8});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::MaxMomentum, 1.0);
    double worst = 0.0;
    for (double k : {0.2, 0.5, 0.8}) worst = std::max(worst, std::abs(g_principal(d, k)));
    checks.push_back({"g_maxmomentum_zero", worst, 1e-8});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::Undeformed);
    double worst = 0.0;
    for (double k : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(g_principal(d, k)));
    checks.push_back({"g_undeformed_zero", worst, 1e-8});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::Undeformed);
    const BoundState st = solve_bound_state(d, unit);
    checks.push_back({"bound_undeformed_energy", std::abs(st.E + 0.5), 1e-10});
  }
  {
    double worst = 0.0;
    for (double beta : {1.0, 0.1, 0.01}) {
      const auto d = DeformationSpec::make(DeformationKind::Kempf, beta);
      const BoundState st = solve_bound_state(d, unit);
      worst = std::max(worst, std::abs(st.E - kempf_bound_energy(beta, unit)));
    }
    checks.push_back({"bound_kempf_closed_form", worst, 1e-8});
  }
  {
    double worst = 0.0;
    const std::vector<std::pair<DeformationSpec, double>> cases = {
        {DeformationSpec::make(DeformationKind::Undeformed), 5.0},
        {DeformationSpec::make(DeformationKind::Cutoff, 0.0, 10.0), 9.0},
        {DeformationSpec::make(DeformationKind::Kempf, 1.0), 5.0},
        {DeformationSpec::make(DeformationKind::MaxMomentum, 1.0), 0.95}};
    for (const auto& [d, hi] : cases)
      for (const double k : linspace(hi / 25.0, hi, 25)) {
        const auto [T, R] = transmission_reflection(d, unit, k);
        worst = std::max(worst, std::abs(T + R - 1.0));
      }
    checks.push_back({"unitarity", worst, 1e-12});
  }
  {
    const auto d = DeformationSpec::make(DeformationKind::Kempf, 1.0);
    const PotentialSpec pot(std::numbers::pi);  // vtilde = 1
    const double k = find_resonance(d, pot, 1.0, 2.0);
    checks.push_back(
        {"resonance_kempf_closed_form", std::abs(k - std::sqrt(std::numbers::pi - 1.0)), 1e-8});
  }
  return checks;
}

OutputRecord run_selfcheck(bool& all_pass) {
  OutputRecord rec;
  rec.command = "selfcheck";
  rec.columns = {"check", "status", "defect"};
  all_pass = true;
  for (const auto& c : run_selfcheck_list()) {
    rec.add_row({Cell(c.name), Cell(std::string(c.pass() ? "pass" : "fail")),
                 Cell(c.defect)});
    all_pass = all_pass && c.pass();
  }
  return rec;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

void RunConfig::validate() const {
  const bool known =
      deformation == "undeformed" || deformation == "cutoff" ||
      deformation == "kempf" || deformation == "maxmomentum";
  if (!known) throw ConfigError("deformation: unknown value '" + deformation + "'");
  if (beta < 0 || !std::isfinite(beta)) throw ConfigError("beta: must be >= 0");
  if ((deformation == "kempf" || deformation == "maxmomentum") && !(beta > 0))
    throw ConfigError("beta: " + deformation + " needs beta > 0");
  if (deformation == "cutoff" && (!(b > 0) || !std::isfinite(b)))
    throw ConfigError("b: cutoff needs finite b > 0");
  if (!(v0 > 0)) throw ConfigError("v0: must be > 0");
  if (!(hbar > 0)) throw ConfigError("hbar: must be > 0");
  if (!(mass > 0)) throw ConfigError("mass: must be > 0");
  if (!(tol > 0)) throw ConfigError("tol: must be > 0");
  if (samples < 2) throw ConfigError("samples: must be >= 2");
  if (!(k > 0)) throw ConfigError("k: must be > 0");
  if (!(k_min > 0)) throw ConfigError("k-min: must be > 0");
  if (!(k_min < k_max)) throw ConfigError("k-min/k-max: range must be ordered");
  if (!(x_min < x_max)) throw ConfigError("x-min/x-max: range must be ordered");
  if (!(v0_min > 0)) throw ConfigError("v0-min: must be > 0");
  if (!(v0_min <= v0_max)) throw ConfigError("v0-min/v0-max: range must be ordered");
  if (format != "csv" && format != "json")
    throw ConfigError("format: must be csv or json");
}

DeformationSpec RunConfig::make_deformation() const {
  if (deformation == "undeformed") return DeformationSpec::make(DeformationKind::Undeformed);
  if (deformation == "cutoff") return DeformationSpec::make(DeformationKind::Cutoff, 0.0, b);
  if (deformation == "kempf") return DeformationSpec::make(DeformationKind::Kempf, beta);
  if (deformation == "maxmomentum")
    return DeformationSpec::make(DeformationKind::MaxMomentum, beta);
  throw ConfigError("deformation: unknown value '" + deformation + "'");
}

PotentialSpec RunConfig::make_potential() const { return PotentialSpec(v0, hbar, mass); }

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  auto parse_double = [](const std::string& raw, const std::string& key, int line) {
    double v = 0.0;
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
      throw ConfigError("config line " + std::to_string(line) + ": bad number for '" +
                        key + "'");
    return v;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b0 = s.find_first_not_of(" \t");
      const auto b1 = s.find_last_not_of(" \t");
      return b0 == std::string::npos ? std::string() : s.substr(b0, b1 - b0 + 1);
    };
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));

    if (key == "deformation") cfg.deformation = value;
    else if (key == "format") cfg.format = value;
    else if (key == "output") cfg.output = value;
    else if (key == "beta") cfg.beta = parse_double(value, key, lineno);
    else if (key == "b") cfg.b = parse_double(value, key, lineno);
    else if (key == "v0") cfg.v0 = parse_double(value, key, lineno);
    else if (key == "hbar") cfg.hbar = parse_double(value, key, lineno);
    else if (key == "mass") cfg.mass = parse_double(value, key, lineno);
    else if (key == "tol") cfg.tol = parse_double(value, key, lineno);
    else if (key == "k") cfg.k = parse_double(value, key, lineno);
    else if (key == "k-min") cfg.k_min = parse_double(value, key, lineno);
    else if (key == "k-max") cfg.k_max = parse_double(value, key, lineno);
    else if (key == "x-min") cfg.x_min = parse_double(value, key, lineno);
    else if (key == "x-max") cfg.x_max = parse_double(value, key, lineno);
    else if (key == "v0-min") cfg.v0_min = parse_double(value, key, lineno);
    else if (key == "v0-max") cfg.v0_max = parse_double(value, key, lineno);
    else if (key == "samples")
      cfg.samples = static_cast<int>(parse_double(value, key, lineno));
    else
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  apply_config_file(cfg, path);
  cfg.validate();
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;

  // The config file seeds the defaults; flags parsed afterwards override it.
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") {
      try {
        apply_config_file(cfg, args[i + 1]);
      } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
      }
    }

  CLI::App app{"attractive delta potential under minimal-length deformed algebras"};
  app.require_subcommand(1);
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--deformation", cfg.deformation,
                    "undeformed|cutoff|kempf|maxmomentum");
    sub->add_option("--beta", cfg.beta, "deformation parameter (momentum^-2)");
    sub->add_option("--b", cfg.b, "cutoff half-width");
    sub->add_option("--v0", cfg.v0, "well depth V0");
    sub->add_option("--hbar", cfg.hbar, "action constant");
    sub->add_option("--mass", cfg.mass, "particle mass");
    sub->add_option("--tol", cfg.tol, "numeric tolerance");
    sub->add_option("--format", cfg.format, "csv|json");
    sub->add_option("--output", cfg.output, "output path (default: stdout)");
    return sub;
  };

  auto* c_bound = add_common(app.add_subcommand("bound", "bound level q, E, norm"));
  auto* c_wave = add_common(
      app.add_subcommand("wavefunction", "bound-state wavefunction over an x grid"));
  c_wave->add_option("--x-min", cfg.x_min);
  c_wave->add_option("--x-max", cfg.x_max);
  c_wave->add_option("--samples", cfg.samples);
  auto* c_scatter =
      add_common(app.add_subcommand("scatter", "G, amplitude, T, R over a k grid"));
  c_scatter->add_option("--k-min", cfg.k_min);
  c_scatter->add_option("--k-max", cfg.k_max);
  c_scatter->add_option("--samples", cfg.samples);
  auto* c_res = add_common(
      app.add_subcommand("resonance", "perfect-reflection momenta over a V0 sweep"));
  c_res->add_option("--v0-min", cfg.v0_min);
  c_res->add_option("--v0-max", cfg.v0_max);
  c_res->add_option("--samples", cfg.samples);
  c_res->add_option("--k-max", cfg.k_max);
  auto* c_flux = add_common(app.add_subcommand("flux", "flux balance over a k grid"));
  c_flux->add_option("--k-min", cfg.k_min);
  c_flux->add_option("--k-max", cfg.k_max);
  c_flux->add_option("--samples", cfg.samples);
  auto* c_asym = add_common(
      app.add_subcommand("asymptotic-check", "far-field kernel against its limit"));
  c_asym->add_option("--k", cfg.k);
  c_asym->add_option("--x-min", cfg.x_min);
  c_asym->add_option("--x-max", cfg.x_max);
  c_asym->add_option("--samples", cfg.samples);
  auto* c_self =
      add_common(app.add_subcommand("selfcheck", "closed forms vs numeric paths"));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    bool ok = true;
    OutputRecord rec;
    if (c_bound->parsed()) {
      cfg.command = "bound";
      cfg.validate();
      rec = run_bound(cfg);
    } else if (c_wave->parsed()) {
      cfg.command = "wavefunction";
      cfg.validate();
      rec = run_wavefunction(cfg);
    } else if (c_scatter->parsed()) {
      cfg.command = "scatter";
      cfg.validate();
      rec = run_scatter(cfg);
    } else if (c_res->parsed()) {
      cfg.command = "resonance";
      cfg.validate();
      rec = run_resonance(cfg);
    } else if (c_flux->parsed()) {
      cfg.command = "flux";
      cfg.validate();
      rec = run_flux(cfg);
    } else if (c_asym->parsed()) {
      cfg.command = "asymptotic-check";
      cfg.validate();
      rec = run_asymptotic(cfg);
    } else if (c_self->parsed()) {
      cfg.command = "selfcheck";
      cfg.validate();
      rec = run_selfcheck(ok);
    }

    if (!cfg.output.empty()) {
      std::ofstream file(cfg.output);
      if (!file) throw std::runtime_error("cannot open output file '" + cfg.output + "'");
      rec.write(file, cfg.format);
    } else {
      rec.write(out, cfg.format);
    }
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 1 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace mldelta::cli
