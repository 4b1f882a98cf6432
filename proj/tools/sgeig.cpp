// sgeig: first Dirichlet eigenvalues of balls and bands in explicit warped
// model geometries, with bound sandwiches, identity verification, and
// asymptotic-expansion fitting. CSV/JSON output for batch pipelines.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <semaphore>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sg/asymptotics.hpp"
#include "sg/lee_bound.hpp"
#include "sg/models.hpp"
#include "sg/quadrature.hpp"
#include "sg/radial_solver.hpp"
#include "sg/rayleigh.hpp"

using json = nlohmann::ordered_json;
using namespace sg;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// shortest round-trip decimal representation
std::string fmt(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

json json_opt(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

struct OutputTarget {
  std::optional<std::string> path;

  // writes to --out (resolved against SGEIG_OUT_DIR for relative paths)
  // or standard output
  void write(const std::string& payload) const {
    if (!path) {
      std::cout << payload;
      return;
    }
    std::filesystem::path p(*path);
    if (p.is_relative()) {
      if (const char* dir = std::getenv("SGEIG_OUT_DIR")) {
        p = std::filesystem::path(dir) / p;
      }
    }
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open output path " + p.string());
    out << payload;
  }
};

json metadata_block(const std::string& subcommand) {
  json meta;
  meta["tool"] = "sgeig";
  meta["version"] = "1.0.0";
  meta["subcommand"] = subcommand;
  meta["unix_time"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  return meta;
}

struct CommonOptions {
  std::string model_name = "sinh-ball";
  int n = 2;
  double tol = 1e-10;
  std::string format = "json";
  std::optional<std::string> out_path;
  bool metadata = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_model = true) {
  if (with_model) {
    cmd->add_option("--model", opts.model_name,
                    "model geometry: sinh-ball, linear-ball, exp-band, cosh-band")
        ->check(CLI::IsMember({"sinh-ball", "linear-ball", "exp-band", "cosh-band"}));
    cmd->add_option("--n", opts.n, "fiber dimension n (ambient dimension n+1)")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--tol", opts.tol, "eigenvalue bracket tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opts.out_path,
                  "output path (relative paths resolve against SGEIG_OUT_DIR)");
  cmd->add_flag("--metadata", opts.metadata,
                "append a run-metadata block (timestamps allowed there only)");
}

// ---------------------------------------------------------------- eigen ----

int run_eigen(const CommonOptions& opts, double radius, bool with_oracle,
              int mesh) {
  const WarpedModel model = WarpedModel::from_name(opts.model_name, opts.n);
  const DomainSpec spec(radius);
  const EigenEstimate est = first_eigenvalue(model, spec, opts.tol);
  std::optional<double> oracle;
  if (with_oracle) oracle = fd_oracle(model, spec, mesh);

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "model,n,R,lambda,lambda_low,lambda_high,oracle_lambda\n";
    body << opts.model_name << ',' << opts.n << ',' << fmt(radius) << ','
         << fmt(est.lambda) << ',' << fmt(est.lambda_low) << ','
         << fmt(est.lambda_high) << ',' << csv_opt(oracle) << '\n';
    if (opts.metadata) {
      body << "# metadata: " << metadata_block("eigen").dump() << '\n';
    }
  } else {
    json rec;
    rec["model"] = opts.model_name;
    rec["n"] = opts.n;
    rec["R"] = radius;
    rec["lambda"] = est.lambda;
    rec["lambda_low"] = est.lambda_low;
    rec["lambda_high"] = est.lambda_high;
    rec["oracle_lambda"] = json_opt(oracle);
    if (opts.metadata) rec["run_metadata"] = metadata_block("eigen");
    body << rec.dump(2) << '\n';
  }
  OutputTarget{opts.out_path}.write(body.str());
  return kExitOk;
}

// ---------------------------------------------------------------- sweep ----

struct SweepRow {
  double R = 0.0;
  std::optional<double> lambda, lambda_low, lambda_high;
  std::optional<double> lower_bound, upper_bound, scaled_residual;
  std::string status = "ok";
};

SweepRow sweep_one(const WarpedModel& model, double radius, double tol) {
  SweepRow row;
  row.R = radius;
  const int n = model.fiber_dim();
  try {
    const DomainSpec spec(radius);
    const EigenEstimate est = first_eigenvalue(model, spec, tol);
    row.lambda = est.lambda;
    row.lambda_low = est.lambda_low;
    row.lambda_high = est.lambda_high;

    if (model.warping() == Warping::Sinh) {
      try {
        row.lower_bound = ball_lower_bound(n, radius);
      } catch (const std::exception&) {
        // bound not certified at this radius: leave the column empty
      }
      row.upper_bound = test_function_upper_bound(n, radius).quotient_FG;
    }

    const double c2 = (model.domain_kind() == DomainKind::BallFromCenter)
                          ? kPi * kPi
                          : 0.25 * kPi * kPi;
    row.scaled_residual = (est.lambda - 0.25 * n * n - c2 / (radius * radius)) *
                          radius * radius * radius;
  } catch (const std::exception& e) {
    row.status = e.what();
  }
  return row;
}

int run_sweep(const CommonOptions& opts, const std::vector<double>& radii,
              int jobs) {
  const WarpedModel model = WarpedModel::from_name(opts.model_name, opts.n);

  std::vector<SweepRow> rows(radii.size());
  std::counting_semaphore<64> slots(std::max(1, std::min(jobs, 64)));
  std::vector<std::future<void>> futures;
  for (size_t i = 0; i < radii.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] {
      slots.acquire();
      rows[i] = sweep_one(model, radii[i], opts.tol);
      slots.release();
    }));
  }
  for (auto& f : futures) f.get();

  bool any_failed = false;
  std::ostringstream body;
  if (opts.format == "csv") {
    body << "model,n,R,lambda,lambda_low,lambda_high,lower_bound,upper_bound,"
            "scaled_residual,status\n";
    for (const SweepRow& row : rows) {
      if (row.status != "ok") any_failed = true;
      body << opts.model_name << ',' << opts.n << ',' << fmt(row.R) << ','
           << csv_opt(row.lambda) << ',' << csv_opt(row.lambda_low) << ','
           << csv_opt(row.lambda_high) << ',' << csv_opt(row.lower_bound) << ','
           << csv_opt(row.upper_bound) << ',' << csv_opt(row.scaled_residual)
           << ',' << row.status << '\n';
    }
    if (opts.metadata) {
      body << "# metadata: " << metadata_block("sweep").dump() << '\n';
    }
  } else {
    json arr = json::array();
    for (const SweepRow& row : rows) {
      if (row.status != "ok") any_failed = true;
      json rec;
      rec["model"] = opts.model_name;
      rec["n"] = opts.n;
      rec["R"] = row.R;
      rec["lambda"] = json_opt(row.lambda);
      rec["lambda_low"] = json_opt(row.lambda_low);
      rec["lambda_high"] = json_opt(row.lambda_high);
      rec["lower_bound"] = json_opt(row.lower_bound);
      rec["upper_bound"] = json_opt(row.upper_bound);
      rec["scaled_residual"] = json_opt(row.scaled_residual);
      rec["status"] = row.status;
      arr.push_back(rec);
    }
    json doc;
    doc["rows"] = arr;
    if (opts.metadata) doc["run_metadata"] = metadata_block("sweep");
    body << doc.dump(2) << '\n';
  }
  OutputTarget{opts.out_path}.write(body.str());
  return any_failed ? kExitCheckFailed : kExitOk;
}

// --------------------------------------------------------------- verify ----

struct CheckResult {
  std::string name;
  double measured;
  double threshold;
  bool pass;
  std::string detail;
};

std::vector<CheckResult> run_checks(const std::vector<std::string>& only,
                                    std::optional<double> epsilon_override) {
  auto wanted = [&only](const std::string& name) {
    return only.empty() ||
           std::find(only.begin(), only.end(), name) != only.end();
  };
  std::vector<CheckResult> results;

  if (wanted("closed-form-integral")) {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0, 10.0, 100.0}) {
      const double oracle = integrate(
          [r](double theta) {
            const double s = std::sin(theta);
            return std::exp(-r * theta) * s * s;
          },
          0.0, kPi);
      worst = std::max(worst, std::abs(sin2_exp_integral(r) - oracle) / oracle);
    }
    results.push_back({"closed-form-integral", worst, 1e-10, worst < 1e-10,
                       "max relative error of the closed form vs quadrature"});
  }

  if (wanted("expansion-coefficient")) {
    double worst = std::abs(alternating_binomial_sum(1) - 1.0);
    worst = std::max(worst, std::abs(alternating_binomial_sum(2) - 15.0 / 8.0));
    worst = std::max(worst, std::abs(alternating_binomial_sum(4) -
                                     (4.0 - 6.0 / 8.0 + 4.0 / 27.0 - 1.0 / 64.0)));
    results.push_back({"expansion-coefficient", worst, 1e-12, worst < 1e-12,
                       "rational-sum coefficients vs hand values"});
  }

  if (wanted("lee-eigenfunction")) {
    const LeeEigenfunction u;
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
      for (double t = 0.01; t <= 30.0; t += 0.05) {
        worst = std::max(worst, std::abs(u.laplace_residual(n, t)));
      }
    }
    results.push_back({"lee-eigenfunction", worst, 1e-10, worst < 1e-10,
                       "max residual of the cosh eigenfunction equation"});
  }

  if (wanted("test-function-identity")) {
    const LeeParameters p = LeeParameters::make(2, 1e-3);
    const double res = std::abs(identity_residual(p, 2, 2.0, 1e-3));
    results.push_back({"test-function-identity", res, 1e-5, res < 1e-5,
                       "finite-difference check of the product-rule identity"});
  }

  if (wanted("pointwise-lower-bound")) {
    double worst = std::numeric_limits<double>::infinity();
    std::string detail = "min pointwise margin over the certification grid";
    try {
      if (epsilon_override) {
        const LeeParameters p = LeeParameters::make(2, *epsilon_override);
        worst = pointwise_lower_bound_check(p, 2, 10000);
      } else {
        for (int n : {2, 3}) {
          for (double eps : {1e-3, 1e-4}) {
            const LeeParameters p = LeeParameters::make(n, eps);
            worst = std::min(worst, pointwise_lower_bound_check(p, n, 10000));
          }
        }
      }
      results.push_back({"pointwise-lower-bound", worst, 0.0, worst >= 0.0,
                         detail});
    } catch (const std::exception& e) {
      results.push_back({"pointwise-lower-bound", -1.0, 0.0, false,
                         std::string("parameter rejection: ") + e.what()});
    }
  }

  if (wanted("exact-band-eigenvalues")) {
    double worst = 0.0;
    for (int n : {2, 3}) {
      for (double R : {2.0, 5.0, 10.0}) {
        const double lam =
            first_eigenvalue(WarpedModel::exp_band(n), DomainSpec(R), 1e-10).lambda;
        worst = std::max(worst, std::abs(lam - (0.25 * n * n +
                                                0.25 * kPi * kPi / (R * R))));
      }
    }
    for (double R : {2.0, 5.0, 10.0}) {
      const double lam =
          first_eigenvalue(WarpedModel::cosh_band(), DomainSpec(R), 1e-10).lambda;
      worst = std::max(worst, std::abs(lam - (1.0 + 0.25 * kPi * kPi / (R * R))));
    }
    results.push_back({"exact-band-eigenvalues", worst, 1e-8, worst < 1e-8,
                       "solver vs closed-form band eigenvalues"});
  }

  if (wanted("sandwich")) {
    double worst = std::numeric_limits<double>::infinity();
    for (int n : {2, 3}) {
      for (double R : {10.0, 20.0}) {
        const double lower = ball_lower_bound(n, R);
        const double lam =
            first_eigenvalue(WarpedModel::sinh_ball(n), DomainSpec(R), 1e-10).lambda;
        const double upper = test_function_upper_bound(n, R).quotient_FG;
        worst = std::min({worst, lam - lower, upper - lam});
      }
    }
    results.push_back({"sandwich", worst, -1e-9, worst >= -1e-9,
                       "min slack of lower <= lambda <= upper"});
  }

  return results;
}

int run_verify(const CommonOptions& opts, const std::vector<std::string>& only,
               std::optional<double> epsilon_override) {
  const std::vector<CheckResult> results = run_checks(only, epsilon_override);
  if (results.empty()) {
    std::cerr << "verify: no matching checks\n";
    return kExitUsage;
  }

  bool all_pass = true;
  json arr = json::array();
  for (const CheckResult& c : results) {
    all_pass = all_pass && c.pass;
    json rec;
    rec["check"] = c.name;
    rec["measured"] = c.measured;
    rec["threshold"] = c.threshold;
    rec["pass"] = c.pass;
    rec["detail"] = c.detail;
    arr.push_back(rec);
  }
  json doc;
  doc["checks"] = arr;
  doc["all_pass"] = all_pass;
  if (opts.metadata) doc["run_metadata"] = metadata_block("verify");

  OutputTarget{opts.out_path}.write(doc.dump(2) + "\n");
  if (!all_pass) {
    for (const CheckResult& c : results) {
      if (!c.pass) {
        std::cerr << "verify: FAILED " << c.name << " (measured " << fmt(c.measured)
                  << ", threshold " << fmt(c.threshold) << ")\n";
      }
    }
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ fit ----

int run_fit(const CommonOptions& opts, const std::vector<double>& radii,
            double verdict_tol) {
  const WarpedModel model = WarpedModel::from_name(opts.model_name, opts.n);
  const TwoTermReport report = two_term_report(model, radii, verdict_tol);

  std::ostringstream body;
  if (opts.format == "csv") {
    body << "model,n,c0,c2,c3,residual_norm,condition,c0_target,c2_target,"
            "c0_pass,c2_pass,max_scaled_residual\n";
    body << opts.model_name << ',' << opts.n << ',' << fmt(report.fit.c0) << ','
         << fmt(report.fit.c2) << ',' << fmt(report.fit.c3) << ','
         << fmt(report.fit.residual_norm) << ','
         << fmt(report.fit.condition_estimate) << ',' << fmt(report.c0_target)
         << ',' << fmt(report.c2_target) << ',' << (report.c0_pass ? 1 : 0) << ','
         << (report.c2_pass ? 1 : 0) << ',' << fmt(report.max_scaled_residual)
         << '\n';
    if (opts.metadata) {
      body << "# metadata: " << metadata_block("fit").dump() << '\n';
    }
  } else {
    json rec;
    rec["model"] = opts.model_name;
    rec["n"] = opts.n;
    rec["c0"] = report.fit.c0;
    rec["c2"] = report.fit.c2;
    rec["c3"] = report.fit.c3;
    rec["residual_norm"] = report.fit.residual_norm;
    rec["condition"] = report.fit.condition_estimate;
    rec["condition_warning"] = report.fit.condition_warning;
    rec["sample_count"] = report.fit.sample_count;
    rec["c0_target"] = report.c0_target;
    rec["c2_target"] = report.c2_target;
    rec["c0_pass"] = report.c0_pass;
    rec["c2_pass"] = report.c2_pass;
    rec["scaled_residuals"] = report.scaled_residuals;
    rec["max_scaled_residual"] = report.max_scaled_residual;
    if (opts.metadata) rec["run_metadata"] = metadata_block("fit");
    body << rec.dump(2) << '\n';
  }
  OutputTarget{opts.out_path}.write(body.str());
  return (report.c0_pass && report.c2_pass) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first Dirichlet eigenvalues of balls and bands in warped model "
               "geometries"};
  app.require_subcommand(1);

  CommonOptions eigen_opts, sweep_opts, verify_opts, fit_opts;
  double radius = 0.0;
  bool with_oracle = false;
  int mesh = 20000;
  std::vector<double> sweep_radii, fit_radii;
  int jobs = 1;
  std::vector<std::string> only;
  std::optional<double> epsilon_override;
  double verdict_tol = 1e-4;

  CLI::App* eigen_cmd =
      app.add_subcommand("eigen", "first eigenvalue at a single radius");
  add_common(eigen_cmd, eigen_opts);
  eigen_cmd->add_option("--radius", radius, "domain radius")->required()
      ->check(CLI::PositiveNumber);
  eigen_cmd->add_flag("--oracle", with_oracle,
                      "also run the finite-difference matrix oracle");
  eigen_cmd->add_option("--mesh", mesh, "oracle mesh intervals")
      ->check(CLI::Range(100, 10000000));

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "eigenvalues and bound sandwich over radii");
  add_common(sweep_cmd, sweep_opts);
  sweep_opts.format = "csv";
  sweep_cmd->add_option("--radii", sweep_radii, "radius list (>= 2 values)");
  sweep_cmd->add_option("--jobs", jobs, "max concurrent radius evaluations")
      ->check(CLI::Range(1, 64));

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the named verification checks");
  add_common(verify_cmd, verify_opts, /*with_model=*/false);
  verify_cmd->add_option(
      "--only", only,
      "restrict to named checks: closed-form-integral, expansion-coefficient, "
      "lee-eigenfunction, test-function-identity, pointwise-lower-bound, "
      "exact-band-eigenvalues, sandwich");
  verify_cmd->add_option("--epsilon", epsilon_override,
                         "override epsilon for pointwise-lower-bound");

  CLI::App* fit_cmd =
      app.add_subcommand("fit", "fit the two-term eigenvalue expansion");
  add_common(fit_cmd, fit_opts);
  fit_cmd->add_option("--radii", fit_radii, "radius list (>= 5 values)");
  fit_cmd->add_option("--fit-tol", verdict_tol, "verdict tolerance on c0")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (eigen_cmd->parsed()) {
      return run_eigen(eigen_opts, radius, with_oracle, mesh);
    }
    if (sweep_cmd->parsed()) {
      if (sweep_radii.size() < 2) {
        std::cerr << "sweep: need at least 2 radii\n";
        return kExitUsage;
      }
      std::vector<double> sorted = sweep_radii;
      std::sort(sorted.begin(), sorted.end());
      return run_sweep(sweep_opts, sorted, jobs);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_opts, only, epsilon_override);
    }
    if (fit_cmd->parsed()) {
      if (fit_radii.size() < 5) {
        std::cerr << "fit: need at least 5 radii\n";
        return kExitUsage;
      }
      std::vector<double> sorted = fit_radii;
      std::sort(sorted.begin(), sorted.end());
      return run_fit(fit_opts, sorted, verdict_tol);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}
