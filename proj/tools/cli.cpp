#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qcluster/agreement.hpp"
#include "qcluster/dynamics.hpp"
#include "qcluster/error.hpp"
#include "qcluster/graph.hpp"
#include "qcluster/io.hpp"
#include "qcluster/plot.hpp"
#include "qcluster/sim.hpp"
#include "qcluster/spectral.hpp"
#include "report.hpp"

namespace qcluster::cli {

namespace {

struct Options {
  std::string graph_path;
  std::string dynamics_path;
  std::string init_path;
  std::string csv_path;
  std::optional<int> h;
  bool scan = false;
  std::optional<double> tol;
  double t_end = 5.0;
  double dt = 1e-3;
  int stride = 10;
  std::uint64_t seed = 1;
  double omega = 1.0;
  std::string out_path;
  std::vector<int> pair;
  std::optional<int> coord;
  bool phase = false;
};

struct Loaded {
  WeightedGraph graph;
  Laplacian lap;
  SpectralData spectral;
};

Loaded load_graph(const std::string& path) {
  auto graph = parse_graph(read_file(path));
  auto lap = laplacian(graph);
  auto spectral = eigendecompose(lap);
  return {std::move(graph), std::move(lap), std::move(spectral)};
}

void require_connected(const WeightedGraph& g) {
  const auto comps = connected_components(g);
  if (comps.size() != 1) {
    throw PreconditionError("graph is disconnected (" + std::to_string(comps.size()) +
                            " components); agents in different components never agree");
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_file(out_path, text);
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const auto g = load_graph(o.graph_path);
  out << format_spectrum(g.spectral) << '\n';
  const auto comps = connected_components(g.graph);
  out << "connected: " << (comps.size() == 1 ? "true" : "false") << '\n';
  if (comps.size() != 1) out << "components: " << comps.size() << '\n';
  return kOk;
}

int cmd_cluster(const Options& o, std::ostream& out, std::ostream& err) {
  const int modes = (o.dynamics_path.empty() ? 0 : 1) + (o.h ? 1 : 0) + (o.scan ? 1 : 0);
  if (modes != 1) {
    err << "cluster: give exactly one of a dynamics file, --h or --scan\n";
    return kInputError;
  }
  const auto g = load_graph(o.graph_path);
  require_connected(g.graph);

  if (o.scan) {
    const Eigen::MatrixXd pt = compute_PT(compute_P(g.spectral), g.spectral);
    const double tol = o.tol.value_or(default_zero_tolerance(pt));
    emit(scan_report(g.spectral, scan_h(g.spectral, tol), tol).dump(2) + "\n", o.out_path, out);
    return kOk;
  }

  std::optional<int> h;
  std::vector<int> z;
  std::vector<std::string> warnings;
  if (o.h) {
    if (*o.h < 2 || *o.h > g.graph.n()) {
      err << "cluster: --h must lie in [2, " << g.graph.n() << "]\n";
      return kInputError;
    }
    h = o.h;
    z = required_zero_for_h(*o.h);
    if (*o.h >= 3 && *o.h <= g.graph.n() &&
        g.spectral.eigenvalues(*o.h - 1) - g.spectral.eigenvalues(*o.h - 2) <= degeneracy_tolerance(g.spectral)) {
      warnings.emplace_back("h splits a repeated eigenvalue; no gains realize this split and the result depends on the eigenbasis");
    }
  } else {
    const auto dyn = parse_dynamics(read_file(o.dynamics_path));
    const auto part = stability_partition(dyn, g.spectral);
    h = part.h;
    z = part.required_zero;
    warnings = part.warnings;
  }
  const auto report = analyze_agreement(g.spectral, z, o.tol);
  emit(zero_pattern_report(g.spectral, h, report, warnings).dump(2) + "\n", o.out_path, out);
  return kOk;
}

int cmd_design(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.h) {
    err << "design: --h is required\n";
    return kInputError;
  }
  const auto g = load_graph(o.graph_path);
  require_connected(g.graph);
  const auto dyn = design_second_order(g.spectral, *o.h, o.omega);
  const auto part = stability_partition(dyn, g.spectral);

  std::ostream& info = o.out_path.empty() ? err : out;
  emit(render_dynamics(dyn), o.out_path, out);
  info << "realized h: " << *part.h << '\n' << "hurwitz:";
  for (const bool flag : part.hurwitz) info << (flag ? " T" : " F");
  info << '\n';
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto g = load_graph(o.graph_path);
  std::optional<AgentDynamics> dyn;
  if (!o.dynamics_path.empty()) {
    dyn = parse_dynamics(read_file(o.dynamics_path));
  } else if (o.h) {
    require_connected(g.graph);
    dyn = design_second_order(g.spectral, *o.h, o.omega);
  } else {
    err << "simulate: give a dynamics file or --h for designed gains\n";
    return kInputError;
  }

  SimConfig cfg;
  cfg.t_end = o.t_end;
  cfg.dt = o.dt;
  cfg.record_stride = o.stride;
  cfg.seed = o.seed;
  if (!o.init_path.empty()) {
    cfg.init = parse_matrix_csv(read_file(o.init_path));
  }
  const auto x0 = initial_state(g.graph.n(), dyn->d(), cfg);
  const auto tr = integrate(build_system_matrix(g.lap, *dyn), x0, g.graph.n(), cfg);
  if (tr.truncated) {
    err << "warning: a state exceeded the blow-up cap at t = " << tr.times.back()
        << "; trajectory truncated\n";
  }
  if (!o.out_path.empty()) write_file(o.out_path, render_trajectory_csv(tr));

  const auto part = stability_partition(*dyn, g.spectral);
  std::optional<QuasiClusterReport> quasi;
  std::vector<std::string> warnings = part.warnings;
  if (tr.size() >= 10) {
    quasi = quasi_clusters(tr);
  } else {
    warnings.emplace_back("fewer than 10 recorded points; quasi-cluster analysis skipped");
  }
  out << trajectory_report(g.spectral, part.h, part.required_zero, tr, quasi, warnings).dump(2) << '\n';
  return kOk;
}

int cmd_plot(const Options& o, std::ostream& out, std::ostream& err) {
  const auto tr = parse_trajectory_csv(read_file(o.csv_path));
  ChartSpec chart;
  chart.x_label = "t";
  if (o.phase) {
    if (tr.dim < 2) {
      err << "plot: --phase needs at least two coordinates per agent\n";
      return kInputError;
    }
    chart.title = "Agent trajectories (phase plane)";
    chart.x_label = "x_i1";
    chart.y_label = "x_i2";
    for (int i = 1; i <= tr.agents; ++i) {
      ChartSeries s{"agent " + std::to_string(i), {}, true};
      for (std::size_t k = 0; k < tr.size(); ++k) {
        const auto x = tr.agent(k, i);
        s.points.emplace_back(x(0), x(1));
      }
      chart.series.push_back(std::move(s));
    }
  } else if (!o.pair.empty()) {
    const int coord = o.coord.value_or(1);
    const int i = o.pair[0], j = o.pair[1];
    chart.title = "Difference between agents " + std::to_string(i) + " and " + std::to_string(j);
    chart.y_label = "x_" + std::to_string(i) + std::to_string(coord) + " - x_" + std::to_string(j) +
                    std::to_string(coord);
    chart.series.push_back({chart.y_label, difference_series(tr, i, j, coord), false});
  } else {
    const int coord = o.coord.value_or(1);
    if (coord < 1 || coord > tr.dim) throw InputError("coordinate out of range");
    chart.title = "Agent states, coordinate " + std::to_string(coord);
    chart.y_label = "x_i" + std::to_string(coord);
    for (int i = 1; i <= tr.agents; ++i) {
      ChartSeries s{"agent " + std::to_string(i), {}, false};
      for (std::size_t k = 0; k < tr.size(); ++k) s.points.emplace_back(tr.times[k], tr.agent(k, i)(coord - 1));
      chart.series.push_back(std::move(s));
    }
  }
  emit(render_svg(chart), o.out_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Graph clustering through group consensus of unstable linear multi-agent systems"};
  app.name(args.empty() ? "qcluster" : args[0]);
  app.set_help_flag("--help", "Print help and exit");
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Print Laplacian eigenvalues and connectivity");
  spectrum->add_option("graph", o.graph_path, "Edge list or CSV adjacency matrix")->required();

  auto* cluster = app.add_subcommand("cluster", "Zero-pattern clustering of the PT matrix");
  cluster->add_option("graph", o.graph_path, "Edge list or CSV adjacency matrix")->required();
  cluster->add_option("dynamics", o.dynamics_path, "Dynamics file (A, F)");
  cluster->add_option("--h", o.h, "Assume the first Hurwitz mode is h");
  cluster->add_flag("--scan", o.scan, "Report every distinct partition over h = 2..N");
  cluster->add_option("--tol", o.tol, "Zero tolerance for PT entries");
  cluster->add_option("--out", o.out_path, "Write the JSON report here");

  auto* design = app.add_subcommand("design", "Design second-order gains for a target h");
  design->add_option("graph", o.graph_path, "Edge list or CSV adjacency matrix")->required();
  design->add_option("--h", o.h, "Target first Hurwitz mode")->required();
  design->add_option("--omega", o.omega, "Minimum rotation rate");
  design->add_option("--out", o.out_path, "Write the dynamics file here");

  auto* simulate = app.add_subcommand("simulate", "Integrate the coupled system");
  simulate->add_option("graph", o.graph_path, "Edge list or CSV adjacency matrix")->required();
  simulate->add_option("dynamics", o.dynamics_path, "Dynamics file (A, F)");
  simulate->add_option("--h", o.h, "Design gains for this h instead of reading a file");
  simulate->add_option("--omega", o.omega, "Minimum rotation rate for designed gains");
  simulate->add_option("--t-end", o.t_end, "Final time");
  simulate->add_option("--dt", o.dt, "RK4 step size");
  simulate->add_option("--stride", o.stride, "Record every k-th step");
  simulate->add_option("--seed", o.seed, "Seed for uniform(-1,1) initial states");
  simulate->add_option("--init", o.init_path, "CSV of N x d initial states");
  simulate->add_option("--out", o.out_path, "Write the trajectory CSV here");

  auto* plot = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot->add_option("trajectory", o.csv_path, "Trajectory CSV from simulate")->required();
  plot->add_option("--pair", o.pair, "Plot x_i - x_j for agents i j")->expected(2);
  plot->add_option("--coord", o.coord, "Coordinate (1-based)");
  plot->add_flag("--phase", o.phase, "Plot coordinate 2 against coordinate 1 per agent");
  plot->add_option("--out", o.out_path, "Write the SVG here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*spectrum) return cmd_spectrum(o, out);
    if (*cluster) return cmd_cluster(o, out, err);
    if (*design) return cmd_design(o, out, err);
    if (*simulate) return cmd_simulate(o, out, err);
    if (*plot) {
      if (o.phase && !o.pair.empty()) {
        err << "plot: --phase and --pair are exclusive\n";
        return kInputError;
      }
      return cmd_plot(o, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const DesignError& e) {
    err << "error: " << e.what() << '\n';
    return kDesignInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInputError;
}

}  // namespace qcluster::cli
