#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pgst/decider.hpp"
#include "pgst/dynamics.hpp"
#include "pgst/errors.hpp"
#include "pgst/serialize.hpp"
#include "pgst/spectrum.hpp"
#include "pgst/state_spec.hpp"
#include "pgst/states.hpp"

namespace {

using pgst::ordered_json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

pgst::PureState state_from_text(const std::string& text, int n) {
  return pgst::build_state(pgst::parse_state_spec(text, n));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw pgst::refusal_error("output_unwritable",
                              "cannot open '" + path + "' for writing");
  return out;
}

ordered_json run_spectrum(int n, const std::string& out_path) {
  pgst::PathSpectrum spectrum(n);
  ordered_json eigenvalues = ordered_json::array();
  for (const auto& record : spectrum.eigenvalues()) {
    ordered_json item;
    item["j"] = record.j;
    item["theta"] = record.numeric;
    item["exact"] = record.exact.to_string();
    eigenvalues.push_back(item);
  }
  ordered_json results;
  results["n"] = n;
  results["m"] = n + 1;
  results["eigenvalues"] = eigenvalues;
  if (!out_path.empty()) {
    std::ofstream out = open_output(out_path);
    out << "j,theta_numeric,theta_exact_string\n";
    for (const auto& record : spectrum.eigenvalues())
      out << record.j << ',' << format_double(record.numeric) << ','
          << record.exact.to_string() << '\n';
    results["out"] = out_path;
  }
  return results;
}

ordered_json run_support(int n, const std::string& state_text) {
  pgst::PureState state = state_from_text(state_text, n);
  pgst::SupportSet support = state.exact_mode()
                                 ? pgst::eigenvalue_support_exact(state)
                                 : pgst::eigenvalue_support_numeric(state);
  ordered_json results;
  results["exact"] = state.exact_mode();
  results["parity_state"] = pgst::is_parity_state(state);
  results["support"] = pgst::to_json(support);
  return results;
}

ordered_json run_decide(int n, const std::string& state_text,
                        const std::string& method, bool check_certificate) {
  pgst::PureState state = state_from_text(state_text, n);
  pgst::PgstVerdict verdict = [&] {
    if (method == "general") return pgst::decide_pgst_general(state);
    if (method == "s-sets") return pgst::decide_pgst_parity_s(state);
    if (method == "r-sets") return pgst::decide_pgst_parity_r(state);
    return pgst::decide_auto(state);
  }();
  ordered_json results = pgst::to_json(verdict);
  results["state_spec"] =
      pgst::render_state_spec(pgst::parse_state_spec(state_text, n));
  if (check_certificate) {
    if (!pgst::verify_certificate(verdict))
      throw std::logic_error("certificate failed independent re-verification");
    results["certificate_verified"] = true;
  }
  return results;
}

ordered_json run_simulate(int n, const std::string& state_text, double t_max,
                          double dt, const std::string& out_path) {
  pgst::PureState state = state_from_text(state_text, n);
  std::vector<pgst::FidelitySample> trace =
      pgst::fidelity_trace(state, pgst::mirror(state), t_max, dt);
  std::ofstream out = open_output(out_path);
  out << "t,overlap,fidelity\n";
  const pgst::FidelitySample* best = &trace.front();
  for (const auto& sample : trace) {
    out << format_double(sample.t) << ',' << format_double(sample.overlap)
        << ',' << format_double(sample.fidelity) << '\n';
    if (sample.overlap > best->overlap) best = &sample;
  }
  ordered_json results;
  results["samples"] = trace.size();
  results["t_at_max"] = best->t;
  results["max_overlap"] = best->overlap;
  results["max_fidelity"] = best->fidelity;
  results["out"] = out_path;
  return results;
}

ordered_json run_search_time(int n, const std::string& state_text,
                             double epsilon, long long budget) {
  pgst::PureState state = state_from_text(state_text, n);
  return pgst::to_json(pgst::find_transfer_time(state, epsilon, budget));
}

ordered_json run_family(long p, int t, bool verify) {
  std::vector<pgst::FamilyInstance> instances = pgst::corollary_family(p, t);
  const int n = (1 << t) * static_cast<int>(p) - 1;

  std::vector<ordered_json> rows(instances.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) {
      try {
        const pgst::FamilyInstance& inst = instances[i];
        ordered_json row;
        row["a"] = inst.a;
        row["b"] = inst.b;
        row["alpha"] = inst.alpha;
        if (verify) {
          pgst::PureState state = pgst::family_state(p, t, inst);
          row["s_sets"] = pgst::answer_name(pgst::decide_pgst_parity_s(state).answer);
          row["general"] = pgst::answer_name(pgst::decide_pgst_general(state).answer);
        }
        rows[i] = std::move(row);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error.empty()) error = e.what();
      }
    }
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t count =
      std::min<std::size_t>(instances.size(), hw ? hw : 2);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  if (!error.empty()) throw std::runtime_error(error);

  ordered_json results;
  results["p"] = p;
  results["t"] = t;
  results["n"] = n;
  results["count"] = instances.size();
  if (verify) {
    bool all_yes = true;
    for (const auto& row : rows)
      all_yes = all_yes && row["s_sets"] == "yes" && row["general"] == "yes";
    results["all_yes"] = all_yes;
  }
  results["instances"] = rows;
  return results;
}

int emit(const ordered_json& report, bool pretty) {
  std::cout << (pretty ? report.dump(2) : report.dump()) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyzer and simulator for pretty good state transfer on paths"};
  app.require_subcommand(1);
  bool pretty = false;

  int sp_n = 0;
  std::string sp_out;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "eigenvalues of the path, exact and numeric");
  spectrum->add_option("--n", sp_n, "path order")->required()
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--out", sp_out, "also write a csv table here");
  spectrum->add_flag("--pretty", pretty, "indent the json report");

  int su_n = 0;
  std::string su_state;
  CLI::App* support = app.add_subcommand(
      "support", "eigenvalue support of a state");
  support->add_option("--n", su_n, "path order")->required()
      ->check(CLI::PositiveNumber);
  support->add_option("--state", su_state, "state as vertex:amplitude,...")
      ->required();
  support->add_flag("--pretty", pretty, "indent the json report");

  int de_n = 0;
  std::string de_state;
  std::string de_method = "auto";
  bool de_check = false;
  CLI::App* decide = app.add_subcommand(
      "decide", "decide transfer to the mirror state, with certificate");
  decide->add_option("--n", de_n, "path order")->required()
      ->check(CLI::PositiveNumber);
  decide->add_option("--state", de_state, "state as vertex:amplitude,...")
      ->required();
  decide->add_option("--method", de_method, "auto, general, s-sets, or r-sets")
      ->check(CLI::IsMember({"auto", "general", "s-sets", "r-sets"}));
  decide->add_flag("--check-certificate", de_check,
                   "re-verify the emitted certificate independently");
  decide->add_flag("--pretty", pretty, "indent the json report");

  int si_n = 0;
  std::string si_state;
  std::string si_out;
  double si_tmax = 0.0;
  double si_dt = 0.0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "trace mirror-transfer fidelity over a time grid");
  simulate->add_option("--n", si_n, "path order")->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--state", si_state, "state as vertex:amplitude,...")
      ->required();
  simulate->add_option("--t-max", si_tmax, "end of the time grid")->required();
  simulate->add_option("--dt", si_dt, "grid step")->required();
  simulate->add_option("--out", si_out, "csv output path")->required();
  simulate->add_flag("--pretty", pretty, "indent the json report");

  int st_n = 0;
  std::string st_state;
  double st_epsilon = 0.0;
  long long st_budget = 1'000'000;
  CLI::App* search_time = app.add_subcommand(
      "search-time", "find a time with mirror-transfer overlap above 1 - epsilon");
  search_time->add_option("--n", st_n, "path order")->required()
      ->check(CLI::PositiveNumber);
  search_time->add_option("--state", st_state, "state as vertex:amplitude,...")
      ->required();
  search_time->add_option("--epsilon", st_epsilon, "target overlap deficit")
      ->required();
  search_time->add_option("--budget", st_budget,
                          "cap on overlap evaluations during the search");
  search_time->add_flag("--pretty", pretty, "indent the json report");

  long fa_p = 0;
  int fa_t = 0;
  bool fa_verify = false;
  CLI::App* family = app.add_subcommand(
      "family", "enumerate the two-vertex transfer family on P_{2^t p - 1}");
  family->add_option("--p", fa_p, "odd prime")->required();
  family->add_option("--t", fa_t, "power of two exponent, at least 2")->required();
  family->add_flag("--verify", fa_verify, "decide every enumerated instance");
  family->add_flag("--pretty", pretty, "indent the json report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json report;
    report["schema_version"] = 1;
    report["command"] = "";
    ordered_json err;
    err["type"] = "refusal";
    err["code"] = "usage_error";
    err["message"] = e.what();
    report["error"] = err;
    std::cout << report.dump() << std::endl;
    return 2;
  }

  std::string command;
  ordered_json inputs;
  try {
    const auto start = std::chrono::steady_clock::now();
    ordered_json results;
    if (spectrum->parsed()) {
      command = "spectrum";
      inputs["n"] = sp_n;
      if (!sp_out.empty()) inputs["out"] = sp_out;
      results = run_spectrum(sp_n, sp_out);
    } else if (support->parsed()) {
      command = "support";
      inputs["n"] = su_n;
      inputs["state"] = su_state;
      results = run_support(su_n, su_state);
    } else if (decide->parsed()) {
      command = "decide";
      inputs["n"] = de_n;
      inputs["state"] = de_state;
      inputs["method"] = de_method;
      results = run_decide(de_n, de_state, de_method, de_check);
    } else if (simulate->parsed()) {
      command = "simulate";
      inputs["n"] = si_n;
      inputs["state"] = si_state;
      inputs["t_max"] = si_tmax;
      inputs["dt"] = si_dt;
      inputs["out"] = si_out;
      results = run_simulate(si_n, si_state, si_tmax, si_dt, si_out);
    } else if (search_time->parsed()) {
      command = "search-time";
      inputs["n"] = st_n;
      inputs["state"] = st_state;
      inputs["epsilon"] = st_epsilon;
      inputs["budget"] = st_budget;
      results = run_search_time(st_n, st_state, st_epsilon, st_budget);
    } else {
      command = "family";
      inputs["p"] = fa_p;
      inputs["t"] = fa_t;
      inputs["verify"] = fa_verify;
      results = run_family(fa_p, fa_t, fa_verify);
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return emit(pgst::make_report(command, inputs, results, ms), pretty);
  } catch (const pgst::refusal_error& e) {
    ordered_json report;
    report["schema_version"] = 1;
    report["command"] = command;
    ordered_json err;
    err["type"] = "refusal";
    err["code"] = e.code();
    err["message"] = e.what();
    report["error"] = err;
    std::cout << (pretty ? report.dump(2) : report.dump()) << std::endl;
    return 2;
  } catch (const std::exception& e) {
    ordered_json report;
    report["schema_version"] = 1;
    report["command"] = command;
    ordered_json err;
    err["type"] = "internal";
    err["message"] = e.what();
    report["error"] = err;
    std::cout << (pretty ? report.dump(2) : report.dump()) << std::endl;
    return 1;
  }
}
