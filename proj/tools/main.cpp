// unilab: exact runtime analysis of the (1+1) EA on functions of unitation.
//
// Subcommands: dss-info, runtime, curve, opt-rate, sweep, simulate, verify.
// Exit codes: 0 success, 2 validation error, 3 verification failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "unilab/analysis.hpp"
#include "unilab/chain.hpp"
#include "unilab/fitness.hpp"
#include "unilab/montecarlo.hpp"
#include "unilab/serialize.hpp"

namespace {

using namespace unilab;

constexpr int kExitValidation = 2;
constexpr int kExitVerifyFailed = 3;

struct Output {
  std::string format;  // "json" or "csv"
  std::string path;    // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
  }

  void emit(const json& j, const std::string& csv) const {
    write(format == "json" ? j.dump(2) : csv);
  }
};

std::string default_format() {
  if (const char* env = std::getenv("UNILAB_FORMAT")) {
    const std::string v(env);
    if (v == "json" || v == "csv") return v;
  }
  return "json";
}

struct FitnessArgs {
  std::string kind = "dss";
  int n = 0;
  std::string p_text;
  int m = 0;

  UnitationFitness fitness;
  std::optional<SteppingStoneProfile> profile;

  void add_to(CLI::App* cmd, bool dss_only = false) {
    if (!dss_only)
      cmd->add_option("--fitness", kind, "fitness kind: dss, onemax, needle, jump")
          ->check(CLI::IsMember({"dss", "onemax", "needle", "jump"}))
          ->required();
    cmd->add_option("--n", n, "bitstring length")->required();
    cmd->add_option("--p", p_text, "dss construction rate (decimal or fraction)");
    cmd->add_option("--m", m, "jump parameter");
  }

  void build() {
    if (kind == "dss") {
      if (p_text.empty()) throw std::invalid_argument("dss requires --p");
      auto rate = parse_rate(p_text);
      auto [f, prof] = build_dss(rate.exact, n);
      fitness = std::move(f);
      profile = std::move(prof);
    } else if (kind == "onemax") {
      fitness = build_onemax(n);
    } else if (kind == "needle") {
      fitness = build_needle(n);
    } else if (kind == "jump") {
      if (m == 0) throw std::invalid_argument("jump requires --m");
      fitness = build_jump(n, m);
    } else {
      throw std::invalid_argument("unknown fitness kind '" + kind + "'");
    }
  }
};

ParsedRate exact_rate_for_backend(const std::string& text, const std::string& backend) {
  auto rate = parse_rate(text);
  if (backend == "rational" && !rate.fraction_form)
    throw std::invalid_argument(
        "rational backend requires rates in fraction form (e.g. 3/10), got '" + text + "'");
  return rate;
}

void check_rational_size(const std::string& backend, int n) {
  if (backend == "rational" && n > 14)
    throw std::invalid_argument(
        "rational backend supports n <= 14 (exact solves grow quickly); use --backend float");
}

int run_app(int argc, char** argv) {
  CLI::App app{"exact (1+1) EA runtime analysis on functions of unitation"};
  app.require_subcommand(1);
  app.fallthrough(true);  // lets --format / --output appear after the subcommand

  Output out;
  out.format = default_format();
  app.add_option("--format", out.format, "output format (default from UNILAB_FORMAT, else json)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", out.path, "write the report to a file instead of stdout");

  // dss-info
  auto* dss_info = app.add_subcommand("dss-info", "print the stepping-stone profile and table");
  FitnessArgs dss_args;
  dss_args.add_to(dss_info, /*dss_only=*/true);
  dss_info->callback([&] {
    dss_args.kind = "dss";
    dss_args.build();
    json j{{"profile", to_json(*dss_args.profile)}, {"fitness", to_json(dss_args.fitness)}};
    std::ostringstream csv;
    csv << "k,level,fitness\n";
    const auto& prof = *dss_args.profile;
    for (int k = 0; k <= prof.num_stones; ++k) {
      const int level = prof.levels[static_cast<std::size_t>(k)];
      csv << k << "," << level << "," << format_double(dss_args.fitness.at(level)) << "\n";
    }
    out.emit(j, csv.str());
  });

  // runtime
  auto* runtime = app.add_subcommand("runtime", "exact or float expected runtime at one rate");
  FitnessArgs rt_args;
  rt_args.add_to(runtime);
  std::string rt_q, rt_backend = "float", rt_dump;
  runtime->add_option("--q", rt_q, "mutation rate")->required();
  runtime->add_option("--backend", rt_backend, "numeric backend")
      ->check(CLI::IsMember({"rational", "float"}));
  runtime->add_option("--dump-chain", rt_dump, "write the chain matrix to a JSON file");
  runtime->callback([&] {
    rt_args.build();
    check_rational_size(rt_backend, rt_args.n);
    const auto rate = exact_rate_for_backend(rt_q, rt_backend);
    json j{{"fitness", rt_args.fitness.label},
           {"n", rt_args.n},
           {"q", rate.text},
           {"backend", rt_backend}};
    std::string value_text;
    if (rt_backend == "rational") {
      const auto chain = build_ea_chain(rt_args.fitness, rate.exact, Acceptance::kElitistGE);
      const auto value =
          expected_hitting_time(chain, binomial_half_start_exact(rt_args.fitness.n));
      value_text = to_fraction_string(value);
      j["expected_runtime"] = value_text;
      j["expected_runtime_approx"] = to_double(value);
      if (!rt_dump.empty()) {
        std::ofstream dump(rt_dump, std::ios::binary);
        dump << chain_debug_json(chain).dump(2);
      }
    } else {
      const auto chain = build_ea_chain(rt_args.fitness, rate.approx, Acceptance::kElitistGE);
      const double value = expected_hitting_time(chain, binomial_half_start(rt_args.fitness.n));
      value_text = format_double(value);
      j["expected_runtime"] = std::isinf(value) ? json("inf") : json(value);
      if (!rt_dump.empty()) {
        std::ofstream dump(rt_dump, std::ios::binary);
        dump << chain_debug_json(chain).dump(2);
      }
    }
    std::ostringstream csv;
    csv << "fitness,n,q,backend,expected_runtime\n"
        << rt_args.fitness.label << "," << rt_args.n << "," << rate.text << "," << rt_backend
        << "," << value_text << "\n";
    out.emit(j, csv.str());
  });

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "expected runtime over a uniform q grid");
  FitnessArgs cv_args;
  cv_args.add_to(curve_cmd);
  std::string cv_qmin = "1/100", cv_qmax = "99/100", cv_backend = "float";
  int cv_points = 99;
  curve_cmd->add_option("--q-min", cv_qmin, "grid start");
  curve_cmd->add_option("--q-max", cv_qmax, "grid end");
  curve_cmd->add_option("--points", cv_points, "grid size");
  curve_cmd->add_option("--backend", cv_backend, "numeric backend")
      ->check(CLI::IsMember({"rational", "float"}));
  curve_cmd->callback([&] {
    cv_args.build();
    check_rational_size(cv_backend, cv_args.n);
    const auto lo = exact_rate_for_backend(cv_qmin, cv_backend);
    const auto hi = exact_rate_for_backend(cv_qmax, cv_backend);
    if (cv_points < 1) throw std::invalid_argument("--points must be >= 1");
    if (cv_points > 1 && !(lo.exact < hi.exact))
      throw std::invalid_argument("--q-min must be below --q-max");
    if (cv_backend == "rational") {
      std::vector<Rational> grid;
      for (int i = 0; i < cv_points; ++i)
        grid.push_back(cv_points == 1 ? lo.exact
                                      : lo.exact + (hi.exact - lo.exact) * i / (cv_points - 1));
      const auto curve = runtime_curve(cv_args.fitness, grid);
      out.emit(to_json(curve), curve_csv(curve));
    } else {
      std::vector<double> grid;
      for (int i = 0; i < cv_points; ++i)
        grid.push_back(cv_points == 1
                           ? lo.approx
                           : lo.approx + (hi.approx - lo.approx) * i / (cv_points - 1));
      const auto curve = runtime_curve(cv_args.fitness, grid);
      out.emit(to_json(curve), curve_csv(curve));
    }
  });

  // opt-rate
  auto* opt = app.add_subcommand("opt-rate", "locate the runtime-minimizing mutation rate");
  FitnessArgs op_args;
  op_args.add_to(opt);
  SearchOptions op_so;
  std::string op_emit;
  opt->add_option("--q-min", op_so.q_min, "search interval start");
  opt->add_option("--q-max", op_so.q_max, "search interval end");
  opt->add_option("--coarse", op_so.coarse_points, "coarse grid size (>= 16)");
  opt->add_option("--tol", op_so.tol, "bracket width tolerance");
  opt->add_option("--emit-curve", op_emit, "write the coarse curve to a CSV file");
  opt->callback([&] {
    op_args.build();
    RuntimeCurve<double> coarse;
    const auto result = optimal_rate(op_args.fitness, op_so, &coarse);
    if (!op_emit.empty()) {
      std::ofstream f(op_emit, std::ios::binary);
      f << curve_csv(coarse);
    }
    json j = to_json(result);
    j["fitness"] = op_args.fitness.label;
    std::ostringstream csv;
    csv << "q_star,t_star,bracket_lo,bracket_hi,refinement_iterations,boundary_flag\n"
        << format_double(result.q_star) << "," << format_double(result.t_star) << ","
        << format_double(result.bracket_lo) << "," << format_double(result.bracket_hi) << ","
        << result.refinement_iterations << "," << (result.boundary_flag ? "true" : "false")
        << "\n";
    out.emit(j, csv.str());
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "optimal rate of DSS_p across problem sizes");
  std::string sw_p;
  std::vector<int> sw_n;
  SearchOptions sw_so;
  sweep->add_option("--p", sw_p, "dss construction rate")->required();
  sweep->add_option("--n", sw_n, "comma-separated problem sizes")->required()->delimiter(',');
  sweep->add_option("--q-min", sw_so.q_min, "search interval start");
  sweep->add_option("--q-max", sw_so.q_max, "search interval end");
  sweep->add_option("--coarse", sw_so.coarse_points, "coarse grid size (>= 16)");
  sweep->add_option("--tol", sw_so.tol, "bracket width tolerance");
  sweep->callback([&] {
    const auto rate = parse_rate(sw_p);
    const auto report = convergence_study(rate.exact, sw_n, sw_so);
    out.emit(to_json(report), convergence_csv(report));
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "bitstring-level (1+1) EA runs");
  FitnessArgs sim_args;
  sim_args.add_to(sim);
  std::string sim_q;
  std::uint64_t sim_runs = 1000, sim_seed = 0, sim_cap = 1000000;
  sim->add_option("--q", sim_q, "mutation rate")->required();
  sim->add_option("--runs", sim_runs, "number of independent runs");
  sim->add_option("--seed", sim_seed, "base seed (required: runs are deterministic)")->required();
  sim->add_option("--cap", sim_cap, "step cap per run (default 10^6)");
  sim->callback([&] {
    sim_args.build();
    const auto rate = parse_rate(sim_q);
    const auto stats = estimate_runtime(sim_args.fitness, rate.approx, sim_runs, sim_cap, sim_seed);
    json j = to_json(stats);
    j["fitness"] = sim_args.fitness.label;
    j["q"] = rate.text;
    std::ostringstream csv;
    csv << "fitness,q,runs,hits,censored,mean_steps,standard_error,cap,seed\n"
        << sim_args.fitness.label << "," << rate.text << "," << stats.runs << "," << stats.hits
        << "," << stats.censored << ","
        << (stats.estimate_available ? format_double(stats.mean_steps) : "na") << ","
        << (stats.se_valid ? format_double(stats.standard_error) : "na") << "," << stats.cap
        << "," << stats.seed << "\n";
    out.emit(j, csv.str());
  });

  // verify
  auto* verify = app.add_subcommand("verify", "analytic-lemma grid checks + Needle oracle suite");
  int vf_grid = 1000;
  bool vf_failed = false;
  verify->add_option("--grid", vf_grid, "grid density (>= 100)");
  verify->callback([&] {
    auto checks = verify_analytic_lemmas(vf_grid);

    LemmaCheck needle_check;
    needle_check.id = "needle-oracle-equality";
    needle_check.pass = true;
    needle_check.worst_margin = 0.0;
    int comparisons = 0;
    for (int n = 1; n <= 12; ++n) {
      const auto start = binomial_half_start_exact(n);
      const auto needle = build_needle(n);
      for (const auto& q : {Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                            Rational(4, 5)}) {
        const auto chain_value =
            expected_hitting_time(build_ea_chain(needle, q, Acceptance::kElitistGE), start);
        const auto formula_value = needle_closed_form(n, q);
        ++comparisons;
        if (chain_value != formula_value) {
          needle_check.pass = false;
          needle_check.worst_point = {static_cast<double>(n), to_double(q)};
          needle_check.worst_margin = to_double(chain_value - formula_value);
        }
      }
    }
    needle_check.note = "chain solver vs closed form, exact equality over " +
                        std::to_string(comparisons) + " (n, q) pairs";
    checks.push_back(std::move(needle_check));

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.pass;
    vf_failed = !all_pass;

    json rows = json::array();
    for (const auto& c : checks) rows.push_back(to_json(c));
    out.emit(json{{"checks", rows}, {"all_pass", all_pass}}, lemma_csv(checks));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::ostringstream sink;
    app.exit(e, sink, sink);
    std::cerr << sink.str();
    if (out.format == "json")
      std::cout << json{{"error", {{"code", kExitValidation}, {"message", e.what()}}}}.dump(2)
                << "\n";
    return kExitValidation;
  }
  return vf_failed ? kExitVerifyFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (default_format() == "json")
      std::cout << unilab::json{{"error", {{"code", kExitValidation}, {"message", e.what()}}}}
                       .dump(2)
                << "\n";
    return kExitValidation;
  }
}
