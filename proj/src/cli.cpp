#include "mwcut/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mwcut/density.hpp"
#include "mwcut/instances.hpp"
#include "mwcut/io.hpp"
#include "mwcut/util.hpp"

namespace mwcut {

namespace {

std::string parent_dir(const std::string& path) {
  auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? std::string(".") : p.string();
}

WeightedGraph<double> read_graph_file(const std::string& path) {
  std::istringstream is(read_file(path));
  return load_graph(is);
}

Embedding<double> read_embedding_file(const std::string& path) {
  std::istringstream is(read_file(path));
  return load_embedding(is);
}

SchemeConfig read_scheme_file(const std::string& path) {
  return scheme_from_json(nlohmann::json::parse(read_file(path)), parent_dir(path));
}

void write_text(const std::string& path, const std::string& text) {
  if (!path.empty()) write_file(path, text);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

struct CliOptions {
  std::string graph_path, embedding_path, scheme_path, out_path, lp_out;
  std::string graph_out, embedding_out, fn;
  long trials = 100000;
  std::uint64_t seed = 0;
  int k = 3, grid = 24, grid_n = 3, m = 3, n = 1;
  double eps = 1e-3, x1 = 0.0, x2 = 0.0, corner_at = 6.0 / 11.0;
};

int cmd_relax(const CliOptions& opt, std::ostream& out) {
  WeightedGraph<double> g = read_graph_file(opt.graph_path);
  if (!opt.lp_out.empty()) {
    std::ostringstream lp;
    write_lp_format(build_embedding_lp(g), lp, "embedding-relaxation");
    write_file(opt.lp_out, lp.str());
  }
  auto [emb, vol] = solve_relaxation(g);
  std::ostringstream es;
  save_embedding(emb, es);
  write_text(opt.out_path, es.str());
  out << "volume=" << format_double(vol) << "\n";
  return 0;
}

int cmd_round(const CliOptions& opt, std::ostream& out) {
  WeightedGraph<double> g = read_graph_file(opt.graph_path);
  Embedding<double> emb = read_embedding_file(opt.embedding_path);
  SchemeConfig cfg = read_scheme_file(opt.scheme_path);
  AlignedInstance<double> inst = align_embedding(g, emb);
  auto [lab, cost] = round_embedding(cfg, inst, RngState(opt.seed), opt.trials);
  std::ostringstream ls;
  ls << "mwc-labeling 1\n";
  for (size_t v = 0; v < lab.label.size(); ++v) ls << "label " << v << " " << lab.label[v] << "\n";
  write_text(opt.out_path, ls.str());
  out << "cost=" << format_double(cost) << "\n";
  return 0;
}

int cmd_density(const CliOptions& opt, std::ostream& out) {
  SchemeConfig cfg = read_scheme_file(opt.scheme_path);
  if (cfg.k != opt.k) throw Error("BadArguments", "--k disagrees with the scheme file");
  DensityReport report =
      max_density_scan(cfg, opt.grid, opt.eps, opt.trials, RngState(opt.seed));
  std::ostringstream cs;
  write_density_csv(report, cs);
  write_text(opt.out_path, cs.str());
  out << "max_density=" << format_double(report.max_density) << "\n";
  return 0;
}

int cmd_search(const CliOptions& opt, std::ostream& out) {
  if (!opt.lp_out.empty()) {
    std::ostringstream lp;
    write_lp_format(build_discrete_lp(opt.k, opt.grid_n), lp, "discrete-sparc-search");
    write_file(opt.lp_out, lp.str());
  }
  DiscreteDistribution dist = solve_discrete_search(opt.k, opt.grid_n);
  write_text(opt.out_path, distribution_to_json(dist).dump(2) + "\n");
  out << "bound=" << format_double(dist.bound) << "\n";
  return 0;
}

int cmd_mesh_lp(const CliOptions& opt, std::ostream& out) {
  if (!opt.lp_out.empty()) {
    std::ostringstream lp;
    write_lp_format(build_mesh_lp(opt.m), lp, "mesh-worst-case");
    write_file(opt.lp_out, lp.str());
  }
  GapCertificate cert = solve_mesh_lp(opt.m);
  write_text(opt.out_path, certificate_to_json(cert).dump(2) + "\n");
  out << "W=" << format_double(cert.W) << " gap=" << format_double(cert.gap_lower_bound) << "\n";
  return 0;
}

int cmd_lowerbound(const CliOptions& opt, std::ostream& out) {
  LowerBoundInstance inst = generate_gn(opt.n);
  GnReport rep = verify_gn(opt.n);
  if (!opt.graph_out.empty()) {
    std::ostringstream gs;
    save_graph(inst.graph, gs);
    write_file(opt.graph_out, gs.str());
  }
  if (!opt.embedding_out.empty()) {
    std::ostringstream es;
    save_embedding(inst.embedding, es);
    write_file(opt.embedding_out, es.str());
  }
  out << "volume=" << rep.volume << " mincut=" << rep.min_cut << " ratio="
      << fixed6(rep.ratio.to_double()) << "\n";
  return 0;
}

int cmd_eval(const CliOptions& opt, std::ostream& out) {
  ThresholdCdf F = ThresholdCdf::uniform_to(opt.corner_at);
  double value = 0.0;
  if (opt.fn == "c_k")
    value = c_k(opt.x1, opt.x2, opt.k, F);
  else if (opt.fn == "c_inf")
    value = c_inf(opt.x1, opt.x2, F);
  else if (opt.fn == "c3")
    value = c3(opt.x1, opt.x2, F);
  else if (opt.fn == "d_bound")
    value = d_bound(opt.x1, opt.x2, opt.k, F);
  else
    throw Error("BadArguments", "--fn must be c_k|c_inf|c3|d_bound");
  out << format_double(value) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric relaxation of minimum multiway cut: embedding LP, "
               "rounding schemes, density analysis, and the search experiments"};
  app.require_subcommand(1);
  CliOptions opt;

  auto* relax = app.add_subcommand("relax", "Solve the embedding relaxation of a graph");
  relax->add_option("--graph", opt.graph_path, "input graph file")->required();
  relax->add_option("--out", opt.out_path, "output embedding file");
  relax->add_option("--lp-out", opt.lp_out, "also export the LP in CPLEX LP format");

  auto* round = app.add_subcommand("round", "Round an embedding into a multiway cut");
  round->add_option("--graph", opt.graph_path, "input graph file")->required();
  round->add_option("--embedding", opt.embedding_path, "input embedding file")->required();
  round->add_option("--scheme", opt.scheme_path, "scheme config JSON")->required();
  round->add_option("--trials", opt.trials, "rounding repetitions")->required();
  round->add_option("--seed", opt.seed, "rng seed (default 0)");
  round->add_option("--out", opt.out_path, "output labeling file");

  auto* density = app.add_subcommand("density", "Scan per-segment densities of a scheme");
  density->add_option("--scheme", opt.scheme_path, "scheme config JSON")->required();
  density->add_option("--k", opt.k, "number of terminals")->required();
  density->add_option("--grid", opt.grid, "barycentric grid resolution")->required();
  density->add_option("--eps", opt.eps, "scan segment length")->required();
  density->add_option("--trials", opt.trials, "Monte-Carlo trials per segment")->required();
  density->add_option("--seed", opt.seed, "rng seed (default 0)");
  density->add_option("--out", opt.out_path, "output CSV");

  auto* search = app.add_subcommand("search", "Discrete sparc distribution search LP");
  search->add_option("--k", opt.k, "number of terminals")->required();
  search->add_option("--grid-n", opt.grid_n, "slice grid size N")->required();
  search->add_option("--out", opt.out_path, "output distribution JSON");
  search->add_option("--lp-out", opt.lp_out, "also export the LP in CPLEX LP format");

  auto* mesh = app.add_subcommand("mesh-lp", "Worst-case mesh LP (k = 3)");
  mesh->add_option("--m", opt.m, "mesh subdivision")->required();
  mesh->add_option("--out", opt.out_path, "output gap certificate JSON");
  mesh->add_option("--lp-out", opt.lp_out, "also export the LP in CPLEX LP format");

  auto* lower = app.add_subcommand("lowerbound", "Generate and verify the grid instance G_N");
  lower->add_option("--n", opt.n, "instance parameter N")->required();
  lower->add_option("--graph-out", opt.graph_out, "output graph file");
  lower->add_option("--embedding-out", opt.embedding_out, "output embedding file");

  auto* eval = app.add_subcommand("eval", "Evaluate an analytic density function");
  eval->add_option("--fn", opt.fn, "one of c_k|c_inf|c3|d_bound")->required();
  eval->add_option("--x1", opt.x1, "first coordinate")->required();
  eval->add_option("--x2", opt.x2, "second coordinate")->required();
  eval->add_option("--k", opt.k, "number of terminals (c_k, d_bound)");
  eval->add_option("--corner-at", opt.corner_at, "threshold cdf support end (default 6/11)");

  std::vector<std::string> argv_store;
  argv_store.push_back("mwc");
  for (const auto& a : args) argv_store.push_back(a);
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);  // prints the selected subcommand's help
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (relax->parsed()) return cmd_relax(opt, out);
    if (round->parsed()) return cmd_round(opt, out);
    if (density->parsed()) return cmd_density(opt, out);
    if (search->parsed()) return cmd_search(opt, out);
    if (mesh->parsed()) return cmd_mesh_lp(opt, out);
    if (lower->parsed()) return cmd_lowerbound(opt, out);
    if (eval->parsed()) return cmd_eval(opt, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.name() == "LpFailed" ? 2 : 1;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace mwcut
