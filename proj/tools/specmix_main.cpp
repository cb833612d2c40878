#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "specmix/experiments.hpp"
#include "specmix/json_io.hpp"
#include "specmix/kozma.hpp"
#include "specmix/mixing.hpp"
#include "specmix/profile.hpp"
#include "specmix/rough_isometry.hpp"
#include "specmix/spectral.hpp"

namespace {

using nlohmann::json;
using namespace specmix;

struct Options {
  std::string input;
  std::string target;  // second graph for rough-iso
  std::string map_path;
  std::string out;
  std::string format = "json";
  std::string suite = "default";
  double epsilon = 0.5;
  double big_k = 1.0;  // rough-isometry constant
  std::uint64_t seed = 0;
  int k = 3;
  int kmax = 8;
  int height = 8;
  int start = 0;
  long steps = 0;  // 0: default 2^{k+1}
  int replicas = 100000;
  bool poissonized = false;
  double time = 0.0;
};

void emit(const json& body, const Options& opt) {
  std::string text;
  if (opt.format == "csv" && body.contains("csv")) {
    text = body["csv"].get<std::string>();
  } else {
    json clean = body;
    clean.erase("csv");
    text = clean.dump(2) + "\n";
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw Error(ErrorCode::BadInputFile, "cannot write " + opt.out);
    f << text;
  }
}

json report_to_json(const TheoremReport& report) {
  json rows = json::array();
  std::string csv = "name";
  for (const auto& c : report.columns) csv += "," + c;
  csv += "\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    json row;
    row["name"] = report.row_labels[i];
    csv += report.row_labels[i];
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      row[report.columns[c]] = round12(report.rows[i][c]);
      csv += "," + format_number(report.rows[i][c]);
    }
    rows.push_back(row);
  }
  json flags = json::object();
  for (const auto& [name, ok] : report.flags) flags[name] = ok;
  json out;
  out["rows"] = rows;
  out["flags"] = flags;
  out["passed"] = report.passed();
  out["csv"] = csv;
  return out;
}

json big_to_json(const BigFloat& x) {
  BigValueRepr r = big_value_repr(x);
  json j;
  j["significand"] = r.significand;
  j["exp2"] = r.exponent2;
  j["approx"] = r.decimal;
  return j;
}

int run_command(const std::string& cmd, const Options& opt) {
  if (cmd == "stationary") {
    WeightedGraph g = load_graph(opt.input);
    json out;
    out["num_vertices"] = g.num_vertices();
    json pi = json::array();
    std::string csv = "vertex,pi\n";
    for (int x = 0; x < g.num_vertices(); ++x) {
      pi.push_back(round12(g.stationary(x)));
      csv += std::to_string(x) + "," + format_number(g.stationary(x)) + "\n";
    }
    out["pi"] = pi;
    out["csv"] = csv;
    emit(out, opt);
    return 0;
  }

  if (cmd == "profile") {
    WeightedGraph g = load_graph(opt.input);
    SpectralProfileCurve curve = spectral_profile(g);
    json bands = json::array();
    std::string csv = "r_from,r_to,lambda\n";
    for (const ProfileBand& b : curve_bands(curve)) {
      json jb;
      jb["r_from"] = round12(b.r_from);
      jb["r_to"] = std::isfinite(b.r_to) ? json(round12(b.r_to)) : json();
      jb["lambda"] = round12(b.lambda);
      bands.push_back(jb);
      csv += format_number(b.r_from) + "," +
             (std::isfinite(b.r_to) ? format_number(b.r_to) : "inf") + "," +
             format_number(b.lambda) + "\n";
    }
    json out;
    out["bands"] = bands;
    out["pi_star"] = round12(curve.pi_star);
    out["spectral_gap"] = round12(curve.gap);
    out["csv"] = csv;
    emit(out, opt);
    return 0;
  }

  if (cmd == "rho") {
    WeightedGraph g = load_graph(opt.input);
    RhoResult r = rho(g, opt.epsilon);
    json bands = json::array();
    for (const RhoBand& b : r.bands) {
      bands.push_back({{"r_from", round12(b.r_from)},
                       {"r_to", round12(b.r_to)},
                       {"lambda", round12(b.lambda)},
                       {"contribution", round12(b.contribution)}});
    }
    json out;
    out["rho"] = round12(r.rho);
    out["epsilon"] = r.epsilon;
    out["dyadic_sum"] = round12(r.dyadic_sum);
    out["bands"] = bands;
    std::cout << format_number(r.rho) << "\n";
    out["csv"] = "rho\n" + format_number(r.rho) + "\n";
    if (!opt.out.empty()) emit(out, opt);
    return 0;
  }

  if (cmd == "tau") {
    WeightedGraph g = load_graph(opt.input);
    MixingReport mix = tau_inf(g, opt.epsilon);
    std::cout << format_number(mix.tau_inf) << "\n";
    if (!opt.out.empty()) {
      json samples = json::array();
      std::string csv = "t,d\n";
      for (const DeviationSample& s : mix.samples) {
        samples.push_back({round12(s.t), round12(s.d)});
        csv += format_number(s.t) + "," + format_number(s.d) + "\n";
      }
      json out;
      out["tau_inf"] = round12(mix.tau_inf);
      out["epsilon"] = mix.epsilon;
      out["seed"] = opt.seed;
      out["samples"] = samples;
      out["csv"] = csv;
      emit(out, opt);
    }
    return 0;
  }

  if (cmd == "tau-from") {
    WeightedGraph g = load_graph(opt.input);
    if (opt.start < 0 || opt.start >= g.num_vertices()) {
      throw Error(ErrorCode::BadInputFile, "--start out of range");
    }
    double tau = tau_inf_from(g, opt.start, opt.epsilon);
    std::cout << format_number(tau) << "\n";
    if (!opt.out.empty()) {
      json out;
      out["tau_inf_from"] = round12(tau);
      out["start"] = opt.start;
      out["epsilon"] = opt.epsilon;
      out["csv"] = "start,tau\n" + std::to_string(opt.start) + "," +
                   format_number(tau) + "\n";
      emit(out, opt);
    }
    return 0;
  }

  if (cmd == "verify-gmt" || cmd == "thm1") {
    if (opt.suite != "default") {
      throw Error(ErrorCode::BadInputFile, "unknown suite " + opt.suite);
    }
    SuiteSpec suite = SuiteSpec::default_suite(opt.seed);
    TheoremReport report =
        cmd == "verify-gmt" ? verify_gmt(suite) : thm1_report(suite);
    json out = report_to_json(report);
    out["seed"] = opt.seed;
    emit(out, opt);
    return report.passed() ? 0 : 1;
  }

  if (cmd == "construct") {
    WeightedGraph g = build_gk_dense(opt.k);
    if (opt.out.empty()) {
      std::cout << graph_to_json(g).dump() << "\n";
    } else {
      save_graph(g, opt.out);
    }
    return 0;
  }

  if (cmd == "thm2") {
    TheoremReport report = thm2_report(opt.kmax);
    json out = report_to_json(report);
    emit(out, opt);
    return report.passed() ? 0 : 1;
  }

  if (cmd == "simulate") {
    ConstructionParams params = construction_sizes(opt.k);
    int l = opt.start > 0 ? opt.start : params.min_piece;
    long steps = opt.steps > 0 ? opt.steps : (1L << (opt.k + 1));
    WalkStatistics stats =
        simulate_walk(opt.k, l, steps, opt.seed, opt.replicas,
                      opt.poissonized, opt.time);
    json out;
    out["k"] = stats.k;
    out["start_piece"] = stats.l_start;
    out["steps"] = stats.steps;
    out["seed"] = stats.seed;
    out["replicas"] = stats.replicas;
    out["poissonized"] = stats.poissonized;
    if (stats.poissonized) out["time"] = stats.time;
    auto block = [](double emp, double se, double exact) {
      return json{{"empirical", round12(emp)},
                  {"std_error", round12(se)},
                  {"exact", round12(exact)}};
    };
    out["tau1_survival"] =
        block(stats.empirical_tau1_gt, stats.se_tau1, stats.exact_tau1);
    out["tau12_survival"] =
        block(stats.empirical_tau12_gt, stats.se_tau12, stats.exact_tau12);
    out["tau123_survival"] =
        block(stats.empirical_tau123_gt, stats.se_tau123, stats.exact_tau123);
    json counts = json::object();
    for (std::size_t c = 0; c < stats.class_names.size(); ++c) {
      counts[stats.class_names[c]] = stats.final_class_counts[c];
    }
    out["final_class_counts"] = counts;
    std::string csv = "event,empirical,std_error,exact\n";
    csv += "tau1," + format_number(stats.empirical_tau1_gt) + "," +
           format_number(stats.se_tau1) + "," +
           format_number(stats.exact_tau1) + "\n";
    csv += "tau12," + format_number(stats.empirical_tau12_gt) + "," +
           format_number(stats.se_tau12) + "," +
           format_number(stats.exact_tau12) + "\n";
    csv += "tau123," + format_number(stats.empirical_tau123_gt) + "," +
           format_number(stats.se_tau123) + "," +
           format_number(stats.exact_tau123) + "\n";
    out["csv"] = csv;
    emit(out, opt);
    return 0;
  }

  if (cmd == "tree-demo") {
    TheoremReport report = tree_demo(opt.height);
    json out = report_to_json(report);
    emit(out, opt);
    return report.passed() ? 0 : 1;
  }

  if (cmd == "rough-iso") {
    WeightedGraph gx = load_graph(opt.input);
    WeightedGraph gy = load_graph(opt.target);
    std::ifstream mf(opt.map_path);
    if (!mf) {
      throw Error(ErrorCode::BadInputFile, "cannot open " + opt.map_path);
    }
    json jm;
    try {
      mf >> jm;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::BadInputFile, opt.map_path + ": " + e.what());
    }
    if (!jm.is_array()) {
      throw Error(ErrorCode::BadInputFile, "map file must be a JSON array");
    }
    std::vector<int> map;
    for (const auto& v : jm) {
      if (!v.is_number_integer()) {
        throw Error(ErrorCode::BadInputFile, "map entries must be integers");
      }
      map.push_back(v.get<int>());
    }
    RoughIsometryReport rep = check_rough_isometry(
        path_metric(gx), path_metric(gy), map, opt.big_k);
    json out;
    out["K"] = rep.k;
    out["holds"] = rep.holds;
    switch (rep.violation) {
      case RoughIsometryReport::Violation::None:
        out["violation"] = nullptr;
        break;
      case RoughIsometryReport::Violation::PairLower:
        out["violation"] = "pair_lower";
        out["witness"] = {rep.witness_a, rep.witness_b};
        break;
      case RoughIsometryReport::Violation::PairUpper:
        out["violation"] = "pair_upper";
        out["witness"] = {rep.witness_a, rep.witness_b};
        break;
      case RoughIsometryReport::Violation::Uncovered:
        out["violation"] = "uncovered";
        out["uncovered"] = rep.uncovered;
        break;
    }
    out["csv"] = std::string("holds\n") + (rep.holds ? "1" : "0") + "\n";
    emit(out, opt);
    return rep.holds ? 0 : 1;
  }

  throw Error(ErrorCode::UnknownSubcommand, cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-profile and L-infinity mixing-time toolkit"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> names = {
      "stationary", "profile", "rho",      "tau",      "tau-from",
      "verify-gmt", "thm1",    "construct", "thm2",    "simulate",
      "tree-demo",  "rough-iso"};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opt.input);
    sub->add_option("--target", opt.target);
    sub->add_option("--map", opt.map_path);
    sub->add_option("--out", opt.out);
    sub->add_option("--format", opt.format)
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--suite", opt.suite);
    sub->add_option("--epsilon", opt.epsilon);
    sub->add_option("--K", opt.big_k);
    sub->add_option("--seed", opt.seed);
    sub->add_option("--k", opt.k);
    sub->add_option("--kmax", opt.kmax);
    sub->add_option("--height", opt.height);
    sub->add_option("--start", opt.start);
    sub->add_option("--steps", opt.steps);
    sub->add_option("--replicas", opt.replicas);
    sub->add_flag("--poissonized", opt.poissonized);
    sub->add_option("--time", opt.time);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return run_command(app.get_subcommands().front()->get_name(), opt);
  } catch (const specmix::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
