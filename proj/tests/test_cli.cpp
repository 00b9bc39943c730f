#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwcut/cli.hpp"
#include "mwcut/io.hpp"

using namespace mwcut;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "mwc_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) { return read_file(p.string()); }

}  // namespace

TEST_CASE("help output matches the golden file and lists every flag") {
  auto root = run({"--help"});
  CHECK(root.code == 0);
  CHECK(root.out == read_file(std::string(TEST_DATA_DIR) + "/help_root.golden"));

  auto density = run({"density", "--help"});
  CHECK(density.code == 0);
  CHECK(density.out == read_file(std::string(TEST_DATA_DIR) + "/help_density.golden"));
  for (const char* flag : {"--scheme", "--k", "--grid", "--eps", "--trials", "--seed", "--out"})
    CHECK(density.out.find(flag) != std::string::npos);
}

TEST_CASE("lowerbound reports the exact instance numbers") {
  auto dir = tmp_dir();
  auto gpath = (dir / "g7.graph").string();
  auto epath = (dir / "g7.embedding").string();
  auto res = run({"lowerbound", "--n", "7", "--graph-out", gpath, "--embedding-out", epath});
  CHECK(res.code == 0);
  CHECK(res.out == "volume=78 mincut=84 ratio=1.076923\n");
  // The emitted files load back into the exact instance.
  std::istringstream gs(slurp(gpath));
  auto g = load_graph_rational(gs);
  std::istringstream es(slurp(epath));
  auto emb = load_embedding_rational(es);
  CHECK(volume(g, emb) == Rational(78));
}

TEST_CASE("eval prints analytic values") {
  auto res = run({"eval", "--fn", "c3", "--x1", "0", "--x2", "0"});
  CHECK(res.code == 0);
  CHECK(res.out.substr(0, 8) == "1.833333");
  auto dres = run({"eval", "--fn", "d_bound", "--x1", "0", "--x2", "0", "--k", "3"});
  CHECK(dres.out.substr(0, 8) == "1.833333");
  auto bad = run({"eval", "--fn", "nope", "--x1", "0", "--x2", "0"});
  CHECK(bad.code == 1);
}

TEST_CASE("relax/round pipeline over files") {
  auto dir = tmp_dir();
  WeightedGraph<double> star;
  star.k = 3;
  star.node_count = 4;
  star.terminals = {0, 1, 2};
  star.edges = {{0, 3, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}};
  std::ostringstream gs;
  save_graph(star, gs);
  auto gpath = (dir / "star.graph").string();
  write_file(gpath, gs.str());

  auto epath = (dir / "star.embedding").string();
  auto res = run({"relax", "--graph", gpath, "--out", epath});
  CHECK(res.code == 0);
  CHECK(res.out.substr(0, 7) == "volume=");

  auto spath = (dir / "ckr.json").string();
  write_file(spath, scheme_to_json(make_ckr(3)).dump() + "\n");
  auto lpath = (dir / "star.labeling").string();
  auto rres = run({"round", "--graph", gpath, "--embedding", epath, "--scheme", spath,
                   "--trials", "200", "--seed", "5", "--out", lpath});
  CHECK(rres.code == 0);
  CHECK(rres.out == "cost=2\n");
  CHECK(slurp(lpath).substr(0, 14) == "mwc-labeling 1");
}

TEST_CASE("outputs are byte-identical across reruns with the same argv") {
  auto dir = tmp_dir();
  auto spath = (dir / "bc.json").string();
  write_file(spath, scheme_to_json(make_ball_corner()).dump() + "\n");
  auto csv1 = (dir / "scan1.csv").string();
  auto csv2 = (dir / "scan2.csv").string();
  std::vector<std::string> base{"density", "--scheme", spath, "--k",    "3",  "--grid", "6",
                                "--eps",   "0.01",     "--trials", "200", "--seed", "9"};
  auto args1 = base;
  args1.push_back("--out");
  args1.push_back(csv1);
  auto args2 = base;
  args2.push_back("--out");
  args2.push_back(csv2);
  auto r1 = run(args1);
  auto r2 = run(args2);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(slurp(csv1) == slurp(csv2));

  // Discrete search and mesh LP are deterministic end to end.
  auto s1 = run({"search", "--k", "3", "--grid-n", "2"});
  auto s2 = run({"search", "--k", "3", "--grid-n", "2"});
  CHECK(s1.out == s2.out);
  auto m1 = run({"mesh-lp", "--m", "1"});
  auto m2 = run({"mesh-lp", "--m", "1"});
  CHECK(m1.out == m2.out);
}

TEST_CASE("validation failures exit with code 1") {
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"lowerbound"}).code == 1);                      // missing --n
  CHECK(run({"relax", "--graph", "/nonexistent"}).code == 1);
  auto dir = tmp_dir();
  auto spath = (dir / "ckr4.json").string();
  write_file(spath, scheme_to_json(make_ckr(4)).dump() + "\n");
  auto res = run({"density", "--scheme", spath, "--k", "3", "--grid", "6", "--eps", "0.01",
                  "--trials", "200"});
  CHECK(res.code == 1);  // --k disagrees with the scheme file
}
