// Command-line front end: lattice generation, spectra, walk evolution,
// long-time averages, threshold tables, hopping sweeps and zero-state checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "penrose_ctqw/penrose_ctqw.hpp"

namespace pc = penrose_ctqw;

namespace {

struct RunConfig {
  int depth = 5;
  std::string lattice_file;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  std::optional<double> tol_eig;
  std::optional<unsigned> threads;
  std::string out;
  std::string format = "csv";
  std::string node = "center";
  double horizon = 1000.0;
  std::size_t samples = 10000;

  // command specific
  std::string report;
  std::string dump_matrix;
  std::string series;
  std::string svg;
  std::string state;
  std::vector<double> thresholds = pc::table1_thresholds();
  double bmin = 0.0, bmax = 2.0, cmin = 0.0, cmax = 2.0;
  std::size_t steps = 21;
};

/// Output sink: a file when a path is given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw pc::Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close(const std::string& path) {
    if (file_) {
      file_->close();
      if (!*file_) throw pc::Error("failed writing " + path);
    }
  }

private:
  std::unique_ptr<std::ofstream> file_;
};

void write_to(const std::string& path, auto&& writer) {
  Sink sink(path);
  writer(sink.stream());
  sink.close(path);
}

pc::TableFormat table_format(const RunConfig& cfg) {
  return cfg.format == "json" ? pc::TableFormat::Json : pc::TableFormat::Csv;
}

pc::PenroseLattice load_lattice(const RunConfig& cfg) {
  if (cfg.lattice_file.empty()) return pc::generate(cfg.depth);
  std::ifstream in(cfg.lattice_file);
  if (!in) throw pc::Error("cannot read " + cfg.lattice_file);
  pc::json j;
  try {
    in >> j;
  } catch (const pc::json::exception& e) {
    throw pc::FormatError(cfg.lattice_file + ": " + e.what());
  }
  return pc::lattice_from_json(j);
}

pc::HoppingModel model_of(const RunConfig& cfg) {
  pc::HoppingModel m{cfg.a, cfg.b, cfg.c};
  m.validate();
  return m;
}

unsigned thread_count(const RunConfig& cfg) {
  if (cfg.threads) return *cfg.threads;
  if (const char* env = std::getenv("PENROSE_CTQW_THREADS")) {
    std::size_t v = 0;
    if (!pc::detail::parse_index(env, v) || v == 0)
      throw pc::InvalidArgument("PENROSE_CTQW_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 0;
}

std::string histogram_text(const pc::PenroseLattice& lat) {
  std::ostringstream os;
  bool first = true;
  for (auto [d, n] : pc::degree_histogram(lat)) {
    os << (first ? "" : " ") << d << ':' << n;
    first = false;
  }
  return os.str();
}

void add_lattice_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--depth", cfg.depth, "Subdivision depth of the sun patch")->check(CLI::Range(0, pc::kMaxDepth));
  cmd->add_option("--lattice", cfg.lattice_file, "Read the lattice from a JSON file instead of generating it");
}

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--a", cfg.a, "Hopping on rhombus edges");
  cmd->add_option("--b", cfg.b, "Hopping on thin-rhombus short diagonals");
  cmd->add_option("--c", cfg.c, "Hopping on fat-rhombus short diagonals");
}

void add_tol_option(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol-eig", cfg.tol_eig, "Degeneracy tolerance (default 1e-8 * max(1, |H|))")
      ->check(CLI::PositiveNumber);
}

void add_format_option(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Table format")->check(CLI::IsMember({"csv", "json"}));
}

// ---------------------------------------------------------------- commands

void cmd_generate(const RunConfig& cfg) {
  const auto lat = pc::generate(cfg.depth);
  if (!cfg.out.empty()) write_to(cfg.out, [&](std::ostream& os) { pc::write_lattice_json(os, lat); });
  std::cerr << "depth " << cfg.depth << ": " << lat.size() << " vertices, " << lat.bonds().edges.size()
            << " edges, " << lat.bonds().thin_diagonals.size() << " thin diagonals, "
            << lat.bonds().fat_diagonals.size() << " fat diagonals\n";
  std::cerr << "degree histogram: " << histogram_text(lat) << '\n';
  if (cfg.out.empty()) pc::write_lattice_json(std::cout, lat);
}

void cmd_spectrum(const RunConfig& cfg) {
  const auto lat = load_lattice(cfg);
  const auto h = pc::build(lat, model_of(cfg));
  const auto spec = pc::decompose(h, cfg.tol_eig);
  const auto report = pc::efficiency_report(spec);
  write_to(cfg.out, [&](std::ostream& os) { pc::write_csv(os, pc::spectrum_table(spec)); });
  if (!cfg.report.empty())
    write_to(cfg.report, [&](std::ostream& os) { os << pc::report_to_json(report).dump(1) << '\n'; });
  if (!cfg.dump_matrix.empty())
    write_to(cfg.dump_matrix, [&](std::ostream& os) { pc::write_coordinate_dump(os, h); });
  std::cerr << pc::report_to_json(report).dump() << '\n';
}

void cmd_evolve(const RunConfig& cfg) {
  if (!(cfg.horizon >= 0.0)) throw pc::InvalidArgument("--t must be non-negative");
  const auto lat = load_lattice(cfg);
  const auto spec = pc::decompose(pc::build(lat, model_of(cfg)), cfg.tol_eig);
  const std::size_t j = pc::select_node(lat, cfg.node);

  const Eigen::VectorXd dist = pc::evolve_distribution(spec, j, cfg.horizon);
  write_to(cfg.out, [&](std::ostream& os) { pc::write_table(os, pc::distribution_table(lat, dist), table_format(cfg)); });

  if (!cfg.series.empty()) {
    if (cfg.samples < 2) throw pc::InvalidArgument("--samples must be at least 2");
    pc::Table t{{"t", "probability"}, {}};
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      const double time = cfg.horizon * static_cast<double>(s) / static_cast<double>(cfg.samples - 1);
      t.add({time, pc::transition_probability(spec, j, j, time)});
    }
    write_to(cfg.series, [&](std::ostream& os) { pc::write_table(os, t, table_format(cfg)); });
  }

  const double chi = pc::lta_diagonal(spec)(static_cast<Eigen::Index>(j));
  std::cerr << "node " << j << " (degree " << lat.degree(j) << "): R_j = " << pc::format_double(chi)
            << ", bound_eigenbasis = " << pc::format_double(pc::return_bound_eigenbasis(spec, j))
            << ", bound_projector = " << pc::format_double(pc::return_bound_projector(spec, j)) << '\n';
}

void cmd_lta(const RunConfig& cfg, bool column) {
  const auto lat = load_lattice(cfg);
  const auto spec = pc::decompose(pc::build(lat, model_of(cfg)), cfg.tol_eig);
  pc::Table t;
  if (column) {
    const std::size_t j = pc::select_node(lat, cfg.node);
    const auto lta = pc::lta_exact(spec);
    t.columns = {"node_id", "x", "y", "chi"};
    for (const auto& v : lat.vertices())
      t.add({static_cast<std::int64_t>(v.id), v.pos.x, v.pos.y,
             lta.chi(static_cast<Eigen::Index>(v.id), static_cast<Eigen::Index>(j))});
    std::cerr << "source node " << j << '\n';
  } else {
    const Eigen::VectorXd r = pc::lta_diagonal(spec);
    t.columns = {"node_id", "x", "y", "degree", "return_probability", "bound_eigenbasis", "bound_projector"};
    for (const auto& v : lat.vertices())
      t.add({static_cast<std::int64_t>(v.id), v.pos.x, v.pos.y, static_cast<std::int64_t>(lat.degree(v.id)),
             r(static_cast<Eigen::Index>(v.id)), pc::return_bound_eigenbasis(spec, v.id),
             pc::return_bound_projector(spec, v.id)});
    std::cerr << "chi_bar = " << pc::format_double(r.mean()) << " (N = " << lat.size() << ")\n";
  }
  write_to(cfg.out, [&](std::ostream& os) { pc::write_table(os, t, table_format(cfg)); });
}

void cmd_table1(const RunConfig& cfg) {
  const auto lat = load_lattice(cfg);
  const std::pair<const char*, pc::HoppingModel> models[] = {
      {"a1_b0_c0", pc::HoppingModel::edges_only()},
      {"a1_b1.618_c0", pc::HoppingModel::thin_near()},
      {"a1_b1.618_c0.85", pc::HoppingModel::thin_fat_near()},
  };
  std::vector<std::vector<double>> cols;
  pc::Table t{{"threshold"}, {}};
  for (const auto& [name, m] : models) {
    const auto spec = pc::decompose(pc::build(lat, m), cfg.tol_eig);
    cols.push_back(pc::threshold_table(pc::lta_diagonal(spec), cfg.thresholds));
    t.columns.emplace_back(name);
  }
  for (std::size_t k = 0; k < cfg.thresholds.size(); ++k)
    t.add({cfg.thresholds[k], cols[0][k], cols[1][k], cols[2][k]});
  write_to(cfg.out, [&](std::ostream& os) { pc::write_table(os, t, table_format(cfg)); });
  std::cerr << "N = " << lat.size() << '\n';
}

void cmd_sweep(const RunConfig& cfg) {
  const auto lat = load_lattice(cfg);
  if (cfg.steps == 0) throw pc::InvalidArgument("--steps must be positive");
  pc::SweepOptions opts;
  opts.threads = thread_count(cfg);
  opts.eigen_tolerance = cfg.tol_eig;
  const auto grid = pc::sweep(lat, cfg.a, pc::linear_axis(cfg.bmin, cfg.bmax, cfg.steps),
                              pc::linear_axis(cfg.cmin, cfg.cmax, cfg.steps), opts);
  write_to(cfg.out, [&](std::ostream& os) { pc::write_table(os, pc::sweep_table(grid), table_format(cfg)); });
  if (!cfg.svg.empty()) write_to(cfg.svg, [&](std::ostream& os) { pc::write_sweep_svg(os, grid); });
  for (const auto& f : grid.failures)
    std::cerr << "cell b=" << pc::format_double(grid.b_values[f.b_index])
              << " c=" << pc::format_double(grid.c_values[f.c_index]) << " failed: " << f.message << '\n';
  std::cerr << grid.b_values.size() * grid.c_values.size() << " cells, N = " << grid.n << '\n';
}

void cmd_verify_state(const RunConfig& cfg) {
  const auto lat = load_lattice(cfg);
  const auto h = pc::build(lat, model_of(cfg));
  std::ifstream in(cfg.state);
  if (!in) throw pc::Error("cannot read " + cfg.state);
  pc::json j;
  try {
    in >> j;
  } catch (const pc::json::exception& e) {
    throw pc::FormatError(cfg.state + ": " + e.what());
  }
  const auto check = pc::verify_zero_state(h, pc::sparse_state_from_json(j));
  pc::json out{{"residual", check.residual}, {"threshold", check.threshold}, {"accepted", check.accepted}};
  write_to(cfg.out, [&](std::ostream& os) { os << out.dump() << '\n'; });
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on Penrose rhombus lattices"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* gen = app.add_subcommand("generate", "Generate a lattice and write it as JSON");
  gen->add_option("--depth", cfg.depth, "Subdivision depth of the sun patch")->check(CLI::Range(0, pc::kMaxDepth));
  gen->add_option("--out", cfg.out, "Lattice JSON path (stdout when omitted)");

  auto* spec = app.add_subcommand("spectrum", "Eigenvalues, clusters and the efficiency report");
  add_lattice_options(spec, cfg);
  add_model_options(spec, cfg);
  add_tol_option(spec, cfg);
  spec->add_option("--out", cfg.out, "Spectrum CSV path (index,eigenvalue,cluster_id)");
  spec->add_option("--report", cfg.report, "Efficiency report JSON path");
  spec->add_option("--dump-matrix", cfg.dump_matrix, "Hamiltonian coordinate dump path");

  auto* evo = app.add_subcommand("evolve", "Distribution at time T and the return-probability series");
  add_lattice_options(evo, cfg);
  add_model_options(evo, cfg);
  add_tol_option(evo, cfg);
  add_format_option(evo, cfg);
  evo->add_option("--node", cfg.node, "Start node: id, center, max-degree or degree:<d>:nearest-center");
  evo->add_option("--t", cfg.horizon, "Evolution time T");
  evo->add_option("--samples", cfg.samples, "Points in the return-probability series over [0, T]");
  evo->add_option("--out", cfg.out, "Distribution table path (node_id,x,y,probability)");
  evo->add_option("--series", cfg.series, "Return-probability series path (t,probability)");

  bool lta_column = false;
  auto* lta = app.add_subcommand("lta", "Long-time-average return probabilities per node");
  add_lattice_options(lta, cfg);
  add_model_options(lta, cfg);
  add_tol_option(lta, cfg);
  add_format_option(lta, cfg);
  lta->add_option("--node", cfg.node, "Emit the LTA column chi(k, j) for this source instead")
      ->each([&](const std::string&) { lta_column = true; });
  lta->add_option("--out", cfg.out, "Output path");

  auto* tab = app.add_subcommand("table1", "Fraction of nodes above return-probability thresholds");
  add_lattice_options(tab, cfg);
  add_tol_option(tab, cfg);
  add_format_option(tab, cfg);
  tab->add_option("--thresholds", cfg.thresholds, "Ascending thresholds")->delimiter(',');
  tab->add_option("--out", cfg.out, "Output path");

  auto* swp = app.add_subcommand("sweep", "chi_bar over a (b, c) grid");
  add_lattice_options(swp, cfg);
  add_tol_option(swp, cfg);
  add_format_option(swp, cfg);
  swp->add_option("--a", cfg.a, "Edge hopping");
  swp->add_option("--bmin", cfg.bmin);
  swp->add_option("--bmax", cfg.bmax);
  swp->add_option("--cmin", cfg.cmin);
  swp->add_option("--cmax", cfg.cmax);
  swp->add_option("--steps", cfg.steps, "Points per axis");
  swp->add_option("--threads", cfg.threads, "Worker threads (default: PENROSE_CTQW_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  swp->add_option("--out", cfg.out, "Sweep table path (b,c,chi_bar)");
  swp->add_option("--svg", cfg.svg, "Heatmap SVG path");

  auto* ver = app.add_subcommand("verify-state", "Check a candidate zero-energy eigenstate");
  add_lattice_options(ver, cfg);
  add_model_options(ver, cfg);
  ver->add_option("--state", cfg.state, "Candidate state JSON")->required();
  ver->add_option("--out", cfg.out, "Result JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.get_exit_code() ? e.get_exit_code() : 2;
  }

  try {
    if (*gen) cmd_generate(cfg);
    if (*spec) cmd_spectrum(cfg);
    if (*evo) cmd_evolve(cfg);
    if (*lta) cmd_lta(cfg, lta_column);
    if (*tab) cmd_table1(cfg);
    if (*swp) cmd_sweep(cfg);
    if (*ver) cmd_verify_state(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
