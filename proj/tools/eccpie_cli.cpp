#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "eccpie/charts.hpp"
#include "eccpie/homotopy.hpp"
#include "eccpie/newton.hpp"
#include "eccpie/piecut.hpp"
#include "eccpie/polysys.hpp"
#include "eccpie/taylor.hpp"

using json = nlohmann::ordered_json;
using namespace eccpie;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

std::vector<double> parse_csv(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "'" + item + "' is not a number");
    }
  }
  return out;
}

Point2 parse_point(const std::string& s, const std::string& flag) {
  const auto v = parse_csv(s, flag);
  if (v.size() != 2) throw CLI::ValidationError(flag, "expected two comma-separated values");
  return {v[0], v[1]};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

json layout_to_json(const ChartLayout& lay) {
  json j;
  j["apex"] = {lay.apex.x, lay.apex.y};
  j["orientation"] =
      lay.orientation == Orientation::counterclockwise ? "counterclockwise" : "clockwise";
  j["ray_angles"] = lay.ray_angles;
  json pts = json::array();
  for (const auto& p : lay.boundary_points) pts.push_back({p.x, p.y});
  j["boundary_points"] = pts;
  j["sector_areas"] = lay.sector_areas;
  j["warnings"] = lay.warnings;
  return j;
}

json solution_to_json(const PiecutSolution& s, const std::vector<std::string>& names) {
  json vars;
  for (std::size_t i = 0; i < names.size(); ++i) vars[names[i]] = s.values[i];
  json j;
  j["variables"] = vars;
  j["exact_residual_inf_norm"] = s.exact_residual_norm;
  j["equivalence_class_size"] = s.class_size;
  return j;
}

ChartLayout layout_from_piecut(const PiecutSolution& s) {
  const auto& v = s.values;
  ChartLayout lay;
  lay.apex = {v[0], 0.0};
  const Point2 pts[3] = {{v[1], v[2]}, {v[3], v[4]}, {v[5], v[6]}};
  for (const auto& p : pts) {
    const Point2 d = p - lay.apex;
    lay.ray_angles.push_back(std::atan2(d.y, d.x));
    lay.boundary_points.push_back(p);
  }
  for (int i = 0; i < 3; ++i) {
    EccentricSector sec{lay.apex, lay.ray_angles[static_cast<std::size_t>(i)],
                        lay.ray_angles[static_cast<std::size_t>((i + 1) % 3)],
                        Orientation::counterclockwise};
    lay.sector_areas.push_back(sector_area_decomposed(sec));
  }
  return lay;
}

struct Options {
  // chart
  std::string shares, apex, start{"0,1"};
  bool clockwise = false;
  // cut / solve-poly
  std::string proportions{"0.4,0.35,0.25"};
  std::string mode{"oracle"};
  std::vector<std::string> starts;
  std::string system_file;
  bool export_only = false;
  unsigned long long path_budget = 100000;
  bool budget_override = false;
  // pizza
  int blades = 4;
  double alpha = 0.0;
  // common
  std::string svg_out, json_out;
  unsigned seed = 0;
};

int run_chart(const Options& opt) {
  ChartSpec spec;
  spec.shares = parse_csv(opt.shares, "--shares");
  spec.apex = parse_point(opt.apex, "--apex");
  spec.start_point = parse_point(opt.start, "--start");
  spec.orientation = opt.clockwise ? Orientation::clockwise : Orientation::counterclockwise;

  ChartLayout lay;
  try {
    lay = solve_chart(spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  json report;
  report["command"] = "chart";
  report["inputs"] = {{"shares", spec.shares},
                      {"apex", {spec.apex.x, spec.apex.y}},
                      {"start", {spec.start_point.x, spec.start_point.y}},
                      {"orientation", opt.clockwise ? "clockwise" : "counterclockwise"}};
  report["layout"] = layout_to_json(lay);
  report["warnings"] = lay.warnings;

  if (!opt.svg_out.empty()) write_file(opt.svg_out, render_svg({lay}));
  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  for (const auto& w : lay.warnings) std::cerr << "warning: " << w << "\n";
  return kExitOk;
}

int run_cut(const Options& opt) {
  const auto props = parse_csv(opt.proportions, "--proportions");
  if (props.size() != 3) {
    std::cerr << "error: --proportions expects exactly 3 values (regular 3-blade cutter)\n";
    return kExitInvalid;
  }
  const double sum = props[0] + props[1] + props[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    std::cerr << "error: --proportions must sum to 1 (got " << sum << ")\n";
    return kExitInvalid;
  }
  const double lmax = std::max({props[0], props[1], props[2]});
  if (lmax > max_sector_fraction()) {
    std::cerr << "error: share " << lmax
              << " is infeasible: the largest 3-blade sector area is at most pi - "
                 "2(pi/6 - sqrt(3)/4) ~ 0.9423*pi (share bound "
              << max_sector_fraction() << ")\n";
    return kExitInvalid;
  }

  PiecutMode mode;
  if (opt.mode == "oracle")
    mode = PiecutMode::oracle;
  else if (opt.mode == "pipeline")
    mode = PiecutMode::pipeline;
  else if (opt.mode == "refine")
    mode = PiecutMode::refine_only;
  else {
    std::cerr << "error: --mode must be oracle, pipeline or refine\n";
    return kExitInvalid;
  }

  TrackerConfig cfg;
  cfg.seed = opt.seed;
  cfg.path_budget = opt.path_budget;
  cfg.budget_override = opt.budget_override;

  std::vector<RealVec> starts;
  for (const auto& s : opt.starts) {
    auto v = parse_csv(s, "--start-values");
    if (v.size() != 11)
      throw CLI::ValidationError("--start-values", "expected 11 comma-separated values");
    starts.push_back(std::move(v));
  }

  PiecutOutcome outcome;
  try {
    outcome = solve_piecut(props[0], props[1], mode, cfg, starts);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }

  const std::vector<std::string> names = {"x0", "x1", "y1", "x2",     "y2",   "x3",
                                          "y3", "beta", "phi", "s_beta", "s_phi"};
  json report;
  report["command"] = "cut";
  report["inputs"] = {{"proportions", props}, {"mode", opt.mode}, {"seed", opt.seed}};
  report["solutions"] = json::array();
  for (const auto& s : outcome.solutions)
    report["solutions"].push_back(solution_to_json(s, names));
  report["warnings"] = outcome.diagnostics;

  // Self-check against the published 40-35-25 placement.
  if (props[0] == 0.4 && props[1] == 0.35 && props[2] == 0.25 && !outcome.solutions.empty()) {
    const RealVec reference = {0.164641996,  0.375176778, 0.926953281, -0.939722783,
                               -0.341937259, 0.805164109, -0.593052069, 2.304361451,
                               2.157770813,  0.742792198, 0.832620150};
    double max_dev = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i)
      max_dev = std::max(max_dev, std::abs(outcome.solutions[0].values[i] - reference[i]));
    report["paper_check"] = {{"reference", reference}, {"max_abs_deviation", max_dev}};
  }

  if (!opt.svg_out.empty() && !outcome.solutions.empty())
    write_file(opt.svg_out, render_svg({layout_from_piecut(outcome.solutions[0])}));
  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_solve_poly(const Options& opt) {
  if (opt.export_only) {
    const auto props = parse_csv(opt.proportions, "--proportions");
    if (props.size() != 3) {
      std::cerr << "error: --proportions expects exactly 3 values\n";
      return kExitInvalid;
    }
    const PolySystem sys = build_piecut_system(props[0], props[1], arccos_taylor(0.0, 6));
    const std::string text = export_system(sys);
    if (!opt.system_file.empty())
      write_file(opt.system_file, text);
    else
      std::cout << text;
    return kExitOk;
  }

  if (opt.system_file.empty()) {
    std::cerr << "error: --system file required (or --export-only)\n";
    return kExitInvalid;
  }
  std::ifstream in(opt.system_file, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read --system file " << opt.system_file << "\n";
    return kExitInvalid;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  PolySystem sys;
  try {
    sys = parse_system(buf.str());
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  TrackerConfig cfg;
  cfg.seed = opt.seed;
  cfg.path_budget = opt.path_budget;
  cfg.budget_override = opt.budget_override;

  RootSet roots;
  try {
    roots = total_degree_solve(sys, cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  roots = filter_roots(sys, roots);

  json report;
  report["command"] = "solve-poly";
  report["inputs"] = {{"system", opt.system_file},
                      {"path_budget", opt.path_budget},
                      {"seed", opt.seed}};
  report["bezout_count"] = sys.bezout_count();
  report["roots"] = json::array();
  for (const auto& r : roots.roots) {
    json jr;
    json pt = json::array();
    for (const auto& z : r.point) pt.push_back({z.real(), z.imag()});
    jr["point"] = pt;
    jr["classification"] = r.classification == RootClass::complex_root ? "complex"
                           : r.classification == RootClass::real_accepted
                               ? "real_accepted"
                               : "real_rejected";
    jr["rejection_reasons"] = r.rejection_reasons;
    report["roots"].push_back(jr);
  }
  report["counts"] = {{"total", roots.roots.size()},
                      {"real_accepted", roots.count(RootClass::real_accepted)},
                      {"real_rejected", roots.count(RootClass::real_rejected)},
                      {"complex", roots.count(RootClass::complex_root)}};

  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int run_pizza(const Options& opt) {
  const Point2 apex = parse_point(opt.apex, "--apex");
  std::pair<double, double> sums;
  try {
    sums = pizza_check(apex, opt.blades, opt.alpha);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  json report;
  report["command"] = "pizza";
  report["inputs"] = {{"apex", {apex.x, apex.y}}, {"blades", opt.blades}, {"alpha", opt.alpha}};
  report["sum_even"] = sums.first;
  report["sum_odd"] = sums.second;
  report["deviation_even"] = std::abs(sums.first - kPi / 2.0);
  report["deviation_odd"] = std::abs(sums.second - kPi / 2.0);
  if (!opt.json_out.empty()) write_file(opt.json_out, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eccentric pie charts: layout solving, 3-blade pie cutting, polynomial "
               "system export/solve, pizza-theorem check"};
  app.require_subcommand(1);

  Options opt;

  auto* chart = app.add_subcommand("chart", "Solve an eccentric pie chart layout");
  chart->add_option("--shares", opt.shares, "comma-separated shares summing to 1")->required();
  chart->add_option("--apex", opt.apex, "apex as x,y inside the unit circle")->required();
  chart->add_option("--start", opt.start, "first boundary point on the circle (default 0,1)");
  chart->add_flag("--clockwise", opt.clockwise, "clockwise layout");
  chart->add_option("--svg", opt.svg_out, "SVG output file");
  chart->add_option("--json", opt.json_out, "JSON report file");

  auto* cut = app.add_subcommand("cut", "Place a regular 3-blade cutter for given shares");
  cut->add_option("--proportions", opt.proportions, "three shares, e.g. 0.4,0.35,0.25")
      ->required();
  cut->add_option("--mode", opt.mode, "oracle | pipeline | refine (default oracle)");
  cut->add_option("--start-values", opt.starts,
                  "11 comma-separated start values for refine mode (repeatable)");
  cut->add_option("--path-budget", opt.path_budget, "homotopy path budget");
  cut->add_flag("--budget-override", opt.budget_override,
                "track paths beyond the budget (full 11-variable system)");
  cut->add_option("--seed", opt.seed, "seed for the gamma constant (default 0)");
  cut->add_option("--svg", opt.svg_out, "SVG output file");
  cut->add_option("--json", opt.json_out, "JSON report file");

  auto* poly = app.add_subcommand("solve-poly",
                                  "Solve a polynomial system file by total-degree homotopy");
  poly->add_option("--system", opt.system_file, "system text file (format 1)");
  poly->add_flag("--export-only", opt.export_only,
                 "write the built-in pie-cut system instead of solving");
  poly->add_option("--proportions", opt.proportions,
                   "shares for --export-only (default 0.4,0.35,0.25)");
  poly->add_option("--path-budget", opt.path_budget, "homotopy path budget");
  poly->add_flag("--budget-override", opt.budget_override, "ignore the path budget");
  poly->add_option("--seed", opt.seed, "seed for the gamma constant");
  poly->add_option("--json", opt.json_out, "JSON report file");

  auto* pizza = app.add_subcommand("pizza", "Check the pizza theorem numerically");
  pizza->add_option("--apex", opt.apex, "apex as x,y")->required();
  pizza->add_option("--blades", opt.blades, "even blade count >= 4")->required();
  pizza->add_option("--alpha", opt.alpha, "angle of the first blade (default 0)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (chart->parsed()) return run_chart(opt);
    if (cut->parsed()) return run_cut(opt);
    if (poly->parsed()) return run_solve_poly(opt);
    if (pizza->parsed()) return run_pizza(opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
