// Command-line front end: solve benchmark problems, reproduce the benchmark
// tables, export eigenvalue scatters (CSV + SVG), dump the fractional
// weights, and run the dense conditioning diagnostics.
//
// Exit codes: 0 success/converged, 2 invalid configuration, 3 non-convergence
// (or failed checks), 4 size guard refusal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracpint/analysis.hpp"
#include "fracpint/driver.hpp"
#include "fracpint/parallel.hpp"
#include "fracpint/weights.hpp"

namespace {

constexpr std::int64_t kDofGuard = std::int64_t{1} << 22;
constexpr std::size_t kSpectrumLimit = fracpint::kDenseLimit;

// Thrown when a requested run exceeds the desk-scale guards.
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string problem = "example1";
  double gamma = 1.5;
  double gamma_x = 1.5;
  double gamma_y = 1.5;
  int nt = 64;
  int h_inv = 128;
  std::string alpha = "auto";  // auto | strang | numeric value in (0,1]
  std::string method = "gmres";
  double tol = 1e-9;
  int max_iter = 200;
  std::string out;  // output directory; empty writes to stdout only
  int repeat = 3;
  int threads = 1;
  bool allow_large = false;
  // spectrum
  std::string kind = "lambda";  // lambda | preconditioned | self
  std::vector<std::string> alphas;
  std::string inner = "tau";  // tau | exact
  // bench
  int table = 1;
  std::string rows = "all";
  // weights
  int count = 16;
};

// ---------------------------------------------------------------------------
// Config file: JSON with keys named after the long flags.

void load_json_defaults(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "problem") o.problem = value.get<std::string>();
    else if (key == "gamma") o.gamma = value.get<double>();
    else if (key == "gamma-x") o.gamma_x = value.get<double>();
    else if (key == "gamma-y") o.gamma_y = value.get<double>();
    else if (key == "nt") o.nt = value.get<int>();
    else if (key == "h-inv") o.h_inv = value.get<int>();
    else if (key == "alpha") {
      o.alpha = value.is_number() ? std::to_string(value.get<double>())
                                  : value.get<std::string>();
    } else if (key == "method") o.method = value.get<std::string>();
    else if (key == "tol") o.tol = value.get<double>();
    else if (key == "max-iter") o.max_iter = value.get<int>();
    else if (key == "out") o.out = value.get<std::string>();
    else if (key == "repeat") o.repeat = value.get<int>();
    else if (key == "threads") o.threads = value.get<int>();
    else if (key == "allow-large") o.allow_large = value.get<bool>();
    else if (key == "kind") o.kind = value.get<std::string>();
    else if (key == "inner") o.inner = value.get<std::string>();
    else if (key == "table") o.table = value.get<int>();
    else if (key == "rows") o.rows = value.get<std::string>();
    else if (key == "count") o.count = value.get<int>();
    else throw std::invalid_argument("unknown config key: " + key);
  }
}

// ---------------------------------------------------------------------------
// Small shared helpers.

fracpint::PreconditionerKind parse_kind(const std::string& alpha) {
  if (alpha == "auto") return fracpint::PreconditionerKind::generalized();
  if (alpha == "strang") return fracpint::PreconditionerKind::strang();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(alpha, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("--alpha must be auto, strang, or a number in (0, 1]");
  }
  if (used != alpha.size())
    throw std::invalid_argument("--alpha must be auto, strang, or a number in (0, 1]");
  return fracpint::PreconditionerKind::with_alpha(value);
}

fracpint::KrylovMethod parse_method(const std::string& method) {
  if (method == "gmres") return fracpint::KrylovMethod::gmres;
  if (method == "bicgstab") return fracpint::KrylovMethod::bicgstab;
  throw std::invalid_argument("--method must be gmres or bicgstab");
}

std::int64_t dof_for(const std::string& problem, int nt, int h_inv) {
  const std::int64_t ns_per_dim = h_inv - 1;
  const std::int64_t ns =
      problem == "example2" ? ns_per_dim * ns_per_dim : ns_per_dim;
  return static_cast<std::int64_t>(nt) * ns;
}

void check_dof_guard(std::int64_t dof, bool allow_large) {
  if (dof > kDofGuard && !allow_large)
    throw GuardError("requested run has " + std::to_string(dof) +
                     " unknowns, above the guard of " + std::to_string(kDofGuard) +
                     "; pass --allow-large to proceed");
}

std::string format_iterations(double iters) {
  std::ostringstream s;
  if (iters == std::floor(iters))
    s << static_cast<long long>(iters);
  else
    s << std::fixed << std::setprecision(1) << iters;
  return s.str();
}

std::string format_log10_trr(double trr) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << std::log10(std::max(trr, 1e-300));
  return s.str();
}

std::string format_err(double err) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(4) << err;
  return s.str();
}

std::string format_seconds(double seconds) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << seconds;
  return s.str();
}

// Rational grid label in the style used by the benchmark tables, e.g. 1/128.
std::string h_label(double extent, int h_inv) {
  std::ostringstream s;
  if (extent == std::floor(extent))
    s << static_cast<long long>(extent) << '/' << h_inv;
  else
    s << (extent / h_inv);
  return s.str();
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& body) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

// Static SVG 1.1 scatter chart of complex points.
std::string scatter_svg(const std::vector<std::complex<double>>& pts,
                        const std::string& title) {
  const int width = 640, height = 480, margin = 56;
  double re_min = 1e300, re_max = -1e300, im_min = 1e300, im_max = -1e300;
  for (const auto& p : pts) {
    re_min = std::min(re_min, p.real());
    re_max = std::max(re_max, p.real());
    im_min = std::min(im_min, p.imag());
    im_max = std::max(im_max, p.imag());
  }
  if (pts.empty()) re_min = im_min = -1.0, re_max = im_max = 1.0;
  const double re_pad = std::max(1e-3, 0.08 * (re_max - re_min));
  const double im_pad = std::max(1e-3, 0.08 * (im_max - im_min));
  re_min -= re_pad, re_max += re_pad, im_min -= im_pad, im_max += im_pad;
  auto sx = [&](double re) {
    return margin + (re - re_min) / (re_max - re_min) * (width - 2 * margin);
  };
  auto sy = [&](double im) {
    return height - margin - (im - im_min) / (im_max - im_min) * (height - 2 * margin);
  };
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "  <rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  // Axes frame and extreme tick labels.
  svg << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
      << width - 2 * margin << "\" height=\"" << height - 2 * margin
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << std::setprecision(4);
  svg << "  <text x=\"" << margin << "\" y=\"" << height - margin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << re_min << "</text>\n"
      << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << re_max << "</text>\n"
      << "  <text x=\"" << margin - 6 << "\" y=\"" << height - margin
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << im_min << "</text>\n"
      << "  <text x=\"" << margin - 6 << "\" y=\"" << margin + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << im_max << "</text>\n"
      << "  <text x=\"" << width / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">Re</text>\n"
      << "  <text x=\"16\" y=\"" << height / 2
      << "\" font-family=\"sans-serif\" font-size=\"12\">Im</text>\n";
  for (const auto& p : pts)
    svg << "  <circle cx=\"" << sx(p.real()) << "\" cy=\"" << sy(p.imag())
        << "\" r=\"3\" fill=\"#27538a\" fill-opacity=\"0.65\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------
// solve

constexpr const char* kSolveHeader = "N_t,h,DoF,Iter,CPU,log10TRR,Err";

fracpint::RunResult run_once(const Options& o, fracpint::RunConfig cfg) {
  if (o.problem == "example1")
    return fracpint::run_problem(fracpint::example1(o.gamma), cfg);
  if (o.problem == "example2")
    return fracpint::run_problem(fracpint::example2(o.gamma_x, o.gamma_y), cfg);
  throw std::invalid_argument("--problem must be example1 or example2");
}

std::string solve_csv_row(const fracpint::RunResult& r, double cpu_mean) {
  std::ostringstream row;
  row << r.n_time << ',' << std::setprecision(10) << r.h << ',' << r.dof << ','
      << format_iterations(r.report.iterations) << ',' << format_seconds(cpu_mean)
      << ',' << format_log10_trr(r.report.true_relative_residual) << ','
      << format_err(r.err_inf);
  return row.str();
}

int cmd_solve(const Options& o) {
  check_dof_guard(dof_for(o.problem, o.nt, o.h_inv), o.allow_large);
  fracpint::set_thread_count(o.threads);

  fracpint::RunConfig cfg;
  cfg.n_time = o.nt;
  cfg.h_inv = o.h_inv;
  cfg.kind = parse_kind(o.alpha);
  cfg.method = parse_method(o.method);
  cfg.solver.tol = o.tol;
  cfg.solver.max_iter = o.max_iter;

  const int repeat = std::max(1, o.repeat);
  double cpu_sum = 0.0;
  fracpint::RunResult result;
  for (int rep = 0; rep < repeat; ++rep) {
    result = run_once(o, cfg);
    cpu_sum += result.report.seconds;
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  const std::string csv =
      std::string(kSolveHeader) + '\n' + solve_csv_row(result, cpu_sum / repeat) + '\n';
  std::cout << csv;
  if (!o.out.empty()) write_file(o.out, "solve.csv", csv);

  if (!result.report.converged) {
    std::cerr << "did not converge within " << o.max_iter
              << " iterations; final relative residual "
              << result.report.final_relative_residual << '\n';
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  int nt;
  int h_inv;
};

struct BenchTable {
  int id;
  bool two_dim;
  double gx, gy;
  fracpint::KrylovMethod method;
  std::vector<BenchRow> rows;
};

BenchTable bench_table(int id) {
  // 1D tables sweep the GMRES configurations; 2D tables use BiCGSTAB. The
  // row lists stop where the desk-scale guard starts.
  const std::vector<BenchRow> rows_1d{{64, 128},  {64, 256},  {64, 512},  {64, 1024},
                                      {256, 128}, {256, 256}, {256, 512}, {256, 1024}};
  const std::vector<BenchRow> rows_2d{{64, 64}, {64, 128}, {256, 64}, {256, 128}};
  switch (id) {
    case 1: return {1, false, 1.2, 1.2, fracpint::KrylovMethod::gmres, rows_1d};
    case 2: return {2, false, 1.5, 1.5, fracpint::KrylovMethod::gmres, rows_1d};
    case 3: return {3, false, 1.9, 1.9, fracpint::KrylovMethod::gmres, rows_1d};
    case 4: return {4, true, 1.4, 1.2, fracpint::KrylovMethod::bicgstab, rows_2d};
    case 5: return {5, true, 1.5, 1.5, fracpint::KrylovMethod::bicgstab, rows_2d};
    case 6: return {6, true, 1.7, 1.9, fracpint::KrylovMethod::bicgstab, rows_2d};
    default: throw std::invalid_argument("--table must be in 1..6");
  }
}

std::vector<std::size_t> parse_rows(const std::string& rows, std::size_t n_rows) {
  std::vector<std::size_t> picked;
  if (rows.empty()) return picked;  // explicit empty set: no-op
  if (rows == "all") {
    for (std::size_t i = 0; i < n_rows; ++i) picked.push_back(i);
    return picked;
  }
  std::istringstream in(rows);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long idx = -1;
    try {
      idx = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--rows must be 'all' or comma-separated indices");
    }
    if (used != tok.size() || idx < 0 || static_cast<std::size_t>(idx) >= n_rows)
      throw std::invalid_argument("--rows index out of range: " + tok);
    picked.push_back(static_cast<std::size_t>(idx));
  }
  return picked;
}

int cmd_bench(const Options& o) {
  const BenchTable table = bench_table(o.table);
  const auto picked = parse_rows(o.rows, table.rows.size());
  if (picked.empty()) return 0;

  const std::string problem = table.two_dim ? "example2" : "example1";
  for (std::size_t i : picked)
    check_dof_guard(dof_for(problem, table.rows[i].nt, table.rows[i].h_inv),
                    o.allow_large);
  fracpint::set_thread_count(o.threads);

  const char* columns =
      "N_t,h,DoF,Iter(P_alpha),CPU(P_alpha),log10TRR(P_alpha),"
      "Iter(P_1),CPU(P_1),log10TRR(P_1),Err";
  std::ostringstream csv, md;
  csv << columns << '\n';
  md << "| N_t | h | DoF | Iter(P_alpha) | CPU(P_alpha) | log10TRR(P_alpha) "
        "| Iter(P_1) | CPU(P_1) | log10TRR(P_1) | Err |\n"
     << "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";

  bool all_converged = true;
  const int repeat = std::max(1, o.repeat);
  for (std::size_t i : picked) {
    const BenchRow& row = table.rows[i];
    Options ro = o;
    ro.problem = problem;
    ro.gamma = table.gx;
    ro.gamma_x = table.gx;
    ro.gamma_y = table.gy;

    fracpint::RunConfig cfg;
    cfg.n_time = row.nt;
    cfg.h_inv = row.h_inv;
    cfg.method = table.method;
    cfg.solver.tol = o.tol;
    cfg.solver.max_iter = o.max_iter;

    fracpint::RunResult general, strang;
    double cpu_general = 0.0, cpu_strang = 0.0;
    for (int rep = 0; rep < repeat; ++rep) {
      cfg.kind = fracpint::PreconditionerKind::generalized();
      general = run_once(ro, cfg);
      cpu_general += general.report.seconds;
      cfg.kind = fracpint::PreconditionerKind::strang();
      strang = run_once(ro, cfg);
      cpu_strang += strang.report.seconds;
    }
    cpu_general /= repeat;
    cpu_strang /= repeat;
    all_converged = all_converged && general.report.converged && strang.report.converged;

    const double extent = table.two_dim ? 2.0 : 1.0;
    std::ostringstream cells;
    cells << row.nt << ',' << h_label(extent, row.h_inv) << ',' << general.dof << ','
          << format_iterations(general.report.iterations) << ','
          << format_seconds(cpu_general) << ','
          << format_log10_trr(general.report.true_relative_residual) << ','
          << format_iterations(strang.report.iterations) << ','
          << format_seconds(cpu_strang) << ','
          << format_log10_trr(strang.report.true_relative_residual) << ','
          << format_err(general.err_inf);
    csv << cells.str() << '\n';

    std::string md_row = cells.str();
    std::replace(md_row.begin(), md_row.end(), ',', '|');
    md << "| " << md_row << " |\n";
  }

  std::cout << csv.str() << '\n' << md.str();
  if (!o.out.empty()) {
    const std::string stem = "table" + std::to_string(table.id);
    write_file(o.out, stem + ".csv", csv.str());
    write_file(o.out, stem + ".md", md.str());
  }
  return all_converged ? 0 : 3;
}

// ---------------------------------------------------------------------------
// spectrum

double resolve_alpha(const std::string& text, double dt) {
  return parse_kind(text).alpha_for(dt);
}

int cmd_spectrum(const Options& o) {
  if (o.nt < 3) throw std::invalid_argument("--nt must be at least 3");
  const double dt = 1.0 / o.nt;

  if (o.kind == "lambda") {
    std::vector<std::string> alphas = o.alphas;
    if (alphas.empty()) alphas = {o.alpha};
    for (const std::string& text : alphas) {
      const double alpha = resolve_alpha(text, dt);
      const auto lam = fracpint::lambda_scatter(alpha, o.nt);
      std::ostringstream head;
      head << "# lambda scatter: n_time=" << o.nt << " alpha=" << std::setprecision(10)
           << alpha << '\n';
      const std::string csv = head.str() + fracpint::spectrum_csv(lam);
      std::cout << csv;
      if (!o.out.empty()) {
        std::ostringstream stem;
        stem << "lambda_nt" << o.nt << "_alpha" << std::setprecision(6) << alpha;
        write_file(o.out, stem.str() + ".csv", csv);
        write_file(o.out, stem.str() + ".svg",
                   scatter_svg(lam, "lambda scatter, alpha=" + text));
      }
    }
    return 0;
  }

  if (o.kind != "preconditioned" && o.kind != "self")
    throw std::invalid_argument("--kind must be lambda, preconditioned, or self");

  const int ns = o.h_inv - 1;
  if (ns < 1) throw std::invalid_argument("--h-inv must be at least 2");
  const std::size_t dim = static_cast<std::size_t>(o.nt) * static_cast<std::size_t>(ns);
  if (dim > kSpectrumLimit)
    throw GuardError("spectrum instance has " + std::to_string(dim) +
                     " unknowns; dense eigensolves are capped at " +
                     std::to_string(kSpectrumLimit));

  fracpint::RieszJacobian1D jac(o.gamma, 0.01, 1.0 / o.h_inv, ns);
  fracpint::SpectrumReport report;
  if (o.kind == "self") {
    const Eigen::MatrixXd a = fracpint::dense_all_at_once(o.nt, jac, dt);
    report = fracpint::spectrum_of(a.partialPivLu().solve(a), "self-preconditioned");
  } else {
    const double alpha = resolve_alpha(o.alpha, dt);
    const auto inner = [&] {
      if (o.inner == "tau") return fracpint::InnerVariant::tau;
      if (o.inner == "exact") return fracpint::InnerVariant::exact;
      throw std::invalid_argument("--inner must be tau or exact");
    }();
    report = fracpint::preconditioned_spectrum(o.nt, jac, dt, alpha, inner);
  }

  std::ostringstream head;
  head << "# " << report.description << '\n'
       << "# cluster_fraction = " << std::setprecision(6) << report.cluster_fraction
       << '\n';
  const std::string csv = head.str() + fracpint::spectrum_csv(report.eigenvalues);
  std::cout << csv;
  if (!o.out.empty()) {
    const std::string stem = o.kind == "self" ? "spectrum_self" : "spectrum_precond";
    write_file(o.out, stem + ".csv", csv);
    write_file(o.out, stem + ".svg", scatter_svg(report.eigenvalues, report.description));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// weights

int cmd_weights(const Options& o) {
  if (o.count < 1) throw std::invalid_argument("--count must be at least 1");
  const auto fw = fracpint::centred_weights(o.gamma, o.count);
  std::ostringstream csv;
  csv << "l,w\n" << std::setprecision(17);
  for (int l = 0; l < o.count; ++l)
    csv << l << ',' << fw.weights[static_cast<std::size_t>(l)] << '\n';
  std::cout << csv.str();
  if (!o.out.empty()) write_file(o.out, "weights.csv", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// cond

int cmd_cond(const Options& o) {
  const int ns = o.h_inv - 1;
  if (o.nt < 3) throw std::invalid_argument("--nt must be at least 3");
  if (ns < 1) throw std::invalid_argument("--h-inv must be at least 2");
  const std::size_t dim = static_cast<std::size_t>(o.nt) * static_cast<std::size_t>(ns);
  if (dim > kSpectrumLimit)
    throw GuardError("cond instance has " + std::to_string(dim) +
                     " unknowns; dense diagnostics are capped at " +
                     std::to_string(kSpectrumLimit));

  fracpint::RieszJacobian1D jac(o.gamma, 0.01, 1.0 / o.h_inv, ns);
  const auto r = fracpint::verify_bounds(o.nt, jac, 1.0 / o.nt);

  std::ostringstream csv;
  csv << "n_time,dt,norm_inf_cinv,norm_inf_expected,norm_one_cinv,norm_one_expected,"
         "sigma_max,sigma_max_bound,sigma_min,sigma_min_bound,cond,cond_bound,"
         "norms_ok,bounds_ok\n"
      << std::setprecision(15) << r.n_time << ',' << r.dt << ',' << r.norm_inf_cinv
      << ',' << r.norm_inf_expected << ',' << r.norm_one_cinv << ','
      << r.norm_one_expected << ',' << r.sigma_max << ',' << r.sigma_max_bound << ','
      << r.sigma_min << ',' << r.sigma_min_bound << ',' << r.cond << ','
      << r.cond_bound << ',' << (r.norms_ok() ? 1 : 0) << ','
      << (r.bounds_ok() ? 1 : 0) << '\n';
  std::cout << csv.str();
  if (!o.out.empty()) write_file(o.out, "cond.csv", csv.str());
  return r.norms_ok() && r.bounds_ok() ? 0 : 3;
}

// ---------------------------------------------------------------------------

void add_common_flags(CLI::App* cmd, Options& o, std::string& config_path) {
  cmd->add_option("--out", o.out, "Directory for output files (created if missing)");
  cmd->add_option("--threads", o.threads, "Worker thread cap for parallel loops")
      ->capture_default_str();
  cmd->add_option("--config", config_path, "JSON config file; flags override its values");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  std::string config_path;

  // First pass: pull --config so its values become the defaults the flags
  // then override.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        load_json_defaults(argv[i + 1], o);
      else if (arg.rfind("--config=", 0) == 0)
        load_json_defaults(arg.substr(9), o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{
      "fracpint: all-at-once solver for Riesz fractional diffusion with "
      "block alpha-circulant parallel-in-time preconditioning"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one benchmark configuration and print a CSV record");
  solve->add_option("--problem", o.problem, "example1 (1D) or example2 (2D)")
      ->capture_default_str();
  solve->add_option("--gamma", o.gamma, "Fractional order (1D)")->capture_default_str();
  solve->add_option("--gamma-x", o.gamma_x, "Fractional order in x (2D)")
      ->capture_default_str();
  solve->add_option("--gamma-y", o.gamma_y, "Fractional order in y (2D)")
      ->capture_default_str();
  solve->add_option("--nt", o.nt, "Number of time levels")->capture_default_str();
  solve->add_option("--h-inv", o.h_inv, "Spatial intervals per dimension")
      ->capture_default_str();
  solve->add_option("--alpha", o.alpha, "auto, strang, or a value in (0,1]")
      ->capture_default_str();
  solve->add_option("--method", o.method, "gmres or bicgstab")->capture_default_str();
  solve->add_option("--tol", o.tol, "Relative residual tolerance")->capture_default_str();
  solve->add_option("--max-iter", o.max_iter, "Iteration budget")->capture_default_str();
  solve->add_option("--repeat", o.repeat, "Timing repetitions to average")
      ->capture_default_str();
  solve->add_flag("--allow-large", o.allow_large,
                  "Override the degrees-of-freedom guard");
  add_common_flags(solve, o, config_path);

  CLI::App* bench = app.add_subcommand(
      "bench", "Reproduce a benchmark table with both preconditioner flavors");
  bench->add_option("--table", o.table, "Table number 1-6")->capture_default_str();
  bench->add_option("--rows", o.rows, "'all', '' or comma-separated row indices")
      ->capture_default_str();
  bench->add_option("--repeat", o.repeat, "Timing repetitions to average")
      ->capture_default_str();
  bench->add_option("--tol", o.tol, "Relative residual tolerance")->capture_default_str();
  bench->add_option("--max-iter", o.max_iter, "Iteration budget")->capture_default_str();
  bench->add_flag("--allow-large", o.allow_large,
                  "Override the degrees-of-freedom guard");
  add_common_flags(bench, o, config_path);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Emit eigenvalue scatter data as CSV (and SVG with --out)");
  spectrum->add_option("--kind", o.kind, "lambda, preconditioned, or self")
      ->capture_default_str();
  spectrum->add_option("--nt", o.nt, "Number of time levels")->capture_default_str();
  spectrum->add_option("--h-inv", o.h_inv, "Spatial intervals (preconditioned/self)")
      ->capture_default_str();
  spectrum->add_option("--gamma", o.gamma, "Fractional order (preconditioned/self)")
      ->capture_default_str();
  spectrum->add_option("--alpha", o.alphas,
                       "auto, strang, or a value in (0,1]; repeatable for sweeps");
  spectrum->add_option("--inner", o.inner, "Inner solve variant: tau or exact")
      ->capture_default_str();
  add_common_flags(spectrum, o, config_path);

  CLI::App* weights = app.add_subcommand(
      "weights", "Emit the fractional centred-difference weights as CSV");
  weights->add_option("--gamma", o.gamma, "Fractional order")->capture_default_str();
  weights->add_option("--count", o.count, "Number of weights")->capture_default_str();
  add_common_flags(weights, o, config_path);

  CLI::App* cond = app.add_subcommand(
      "cond", "Dense norm identities and singular-value bounds report");
  cond->add_option("--nt", o.nt, "Number of time levels")->capture_default_str();
  cond->add_option("--h-inv", o.h_inv, "Spatial intervals")->capture_default_str();
  cond->add_option("--gamma", o.gamma, "Fractional order")->capture_default_str();
  add_common_flags(cond, o, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (bench->parsed()) return cmd_bench(o);
    if (spectrum->parsed()) return cmd_spectrum(o);
    if (weights->parsed()) return cmd_weights(o);
    if (cond->parsed()) return cmd_cond(o);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
