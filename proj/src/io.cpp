#include "mwcut/io.hpp"

#include <fstream>
#include <sstream>

#include "mwcut/util.hpp"

namespace mwcut {

namespace {

std::string weight_str(double w) { return format_double(w); }
std::string weight_str(const Rational& w) { return w.str(); }

double parse_weight(const std::string& s, double*) { return std::stod(s); }
Rational parse_weight(const std::string& s, Rational*) { return Rational::from_string(s); }

template <class Weight>
void save_graph_impl(const WeightedGraph<Weight>& g, std::ostream& os) {
  g.validate();
  os << "mwc-graph 1\n";
  os << "k " << g.k << "\n";
  os << "nodes " << g.node_count << "\n";
  os << "terminals";
  for (int t : g.terminals) os << " " << t;
  os << "\n";
  for (const auto& e : g.edges)
    os << "edge " << e.u << " " << e.v << " " << weight_str(e.weight) << "\n";
}

// Tokenizes a line-based file, dropping '#' comments.
class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(is_, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

 private:
  std::istream& is_;
};

template <class Weight>
WeightedGraph<Weight> load_graph_impl(std::istream& is) {
  LineReader reader(is);
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok.size() != 2 || tok[0] != "mwc-graph" || tok[1] != "1")
    throw Error("BadFile", "expected 'mwc-graph 1' header");
  WeightedGraph<Weight> g;
  while (reader.next(tok)) {
    if (tok[0] == "k" && tok.size() == 2) {
      g.k = std::stoi(tok[1]);
    } else if (tok[0] == "nodes" && tok.size() == 2) {
      g.node_count = std::stoi(tok[1]);
    } else if (tok[0] == "terminals") {
      for (size_t i = 1; i < tok.size(); ++i) g.terminals.push_back(std::stoi(tok[i]));
    } else if (tok[0] == "edge" && tok.size() == 4) {
      g.edges.push_back({std::stoi(tok[1]), std::stoi(tok[2]),
                         parse_weight(tok[3], static_cast<Weight*>(nullptr))});
    } else {
      throw Error("BadFile", "unrecognized line '" + tok[0] + "'");
    }
  }
  g.validate();
  return g;
}

std::string coord_str(double c) { return format_double(c); }
std::string coord_str(const Rational& c) { return c.str(); }

template <class Scalar>
void save_embedding_impl(const Embedding<Scalar>& emb, std::ostream& os) {
  if (emb.points.empty()) throw Error("BadEmbedding", "no points");
  os << "mwc-embedding 1\n";
  os << "k " << emb.points.front().k() << "\n";
  for (size_t v = 0; v < emb.points.size(); ++v) {
    os << "point " << v;
    for (int l = 0; l < emb.points[v].k(); ++l) os << " " << coord_str(emb.points[v].coords[l]);
    os << "\n";
  }
}

template <class Scalar>
Embedding<Scalar> load_embedding_impl(std::istream& is) {
  LineReader reader(is);
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok.size() != 2 || tok[0] != "mwc-embedding" || tok[1] != "1")
    throw Error("BadFile", "expected 'mwc-embedding 1' header");
  int k = 0;
  std::vector<std::pair<int, Coords<Scalar>>> rows;
  while (reader.next(tok)) {
    if (tok[0] == "k" && tok.size() == 2) {
      k = std::stoi(tok[1]);
    } else if (tok[0] == "point") {
      if (k == 0 || static_cast<int>(tok.size()) != 2 + k)
        throw Error("BadFile", "point line arity mismatch");
      Coords<Scalar> c(k);
      for (int l = 0; l < k; ++l)
        c[l] = parse_weight(tok[static_cast<size_t>(2 + l)], static_cast<Scalar*>(nullptr));
      rows.push_back({std::stoi(tok[1]), std::move(c)});
    } else {
      throw Error("BadFile", "unrecognized line '" + tok[0] + "'");
    }
  }
  Embedding<Scalar> emb;
  emb.points.resize(rows.size(), SimplexPoint<Scalar>{Coords<Scalar>::Zero(k)});
  std::vector<char> seen(rows.size(), 0);
  for (auto& [id, c] : rows) {
    if (id < 0 || id >= static_cast<int>(rows.size()) || seen[static_cast<size_t>(id)])
      throw Error("BadFile", "point ids must be 0..n-1, unique");
    seen[static_cast<size_t>(id)] = 1;
    emb.points[static_cast<size_t>(id)] = make_point(std::move(c));
  }
  return emb;
}

}  // namespace

void save_graph(const WeightedGraph<double>& g, std::ostream& os) { save_graph_impl(g, os); }
void save_graph(const WeightedGraph<Rational>& g, std::ostream& os) { save_graph_impl(g, os); }
WeightedGraph<double> load_graph(std::istream& is) { return load_graph_impl<double>(is); }
WeightedGraph<Rational> load_graph_rational(std::istream& is) {
  return load_graph_impl<Rational>(is);
}

void save_embedding(const Embedding<double>& emb, std::ostream& os) {
  save_embedding_impl(emb, os);
}
void save_embedding(const Embedding<Rational>& emb, std::ostream& os) {
  save_embedding_impl(emb, os);
}
Embedding<double> load_embedding(std::istream& is) { return load_embedding_impl<double>(is); }
Embedding<Rational> load_embedding_rational(std::istream& is) {
  return load_embedding_impl<Rational>(is);
}

nlohmann::json scheme_to_json(const SchemeConfig& cfg) {
  nlohmann::json j;
  j["k"] = cfg.k;
  if (std::holds_alternative<CkrConfig>(cfg.variant)) {
    j["variant"] = "ckr";
  } else if (std::holds_alternative<IndependentUniformConfig>(cfg.variant)) {
    j["variant"] = "independent_uniform";
  } else if (std::holds_alternative<BallCornerConfig>(cfg.variant)) {
    const auto& c = std::get<BallCornerConfig>(cfg.variant);
    j["variant"] = "ball_corner";
    j["ball_prob"] = c.ball_prob;
    j["independent_rays"] = c.independent_rays;
  } else if (std::holds_alternative<IcutCornerConfig>(cfg.variant)) {
    const auto& c = std::get<IcutCornerConfig>(cfg.variant);
    j["variant"] = "icut_corner";
    j["corner_at"] = c.corner_at;
    j["icut_prob"] = c.icut_prob;
    j["use_last_slice"] = c.use_last_slice;
  } else if (std::holds_alternative<DiscreteConfig>(cfg.variant)) {
    j["variant"] = "discrete";
    j["table"] = distribution_to_json(std::get<DiscreteConfig>(cfg.variant).dist);
  } else {
    const auto& mix = std::get<MixtureConfig>(cfg.variant);
    j["variant"] = "mixture";
    nlohmann::json comps = nlohmann::json::array();
    for (size_t i = 0; i < mix.components.size(); ++i) {
      nlohmann::json c;
      c["weight"] = mix.weights[i];
      c["scheme"] = scheme_to_json(*mix.components[i]);
      comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);
  }
  return j;
}

SchemeConfig scheme_from_json(const nlohmann::json& j, const std::string& base_dir) {
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "ckr") return make_ckr(j.at("k").get<int>());
  if (variant == "independent_uniform") return make_independent_uniform(j.at("k").get<int>());
  if (variant == "ball_corner")
    return make_ball_corner(j.value("ball_prob", 8.0 / 11.0), j.value("independent_rays", false));
  if (variant == "icut_corner")
    return make_icut_corner(j.at("k").get<int>(), j.value("corner_at", 6.0 / 11.0),
                            j.value("icut_prob", 0.667186), j.value("use_last_slice", true));
  if (variant == "discrete") {
    if (j.contains("table")) return make_discrete(distribution_from_json(j.at("table")));
    std::string path = j.at("file").get<std::string>();
    if (!base_dir.empty() && !path.empty() && path.front() != '/') path = base_dir + "/" + path;
    return make_discrete(distribution_from_json(nlohmann::json::parse(read_file(path))));
  }
  if (variant == "mixture") {
    std::vector<std::pair<double, SchemeConfig>> comps;
    for (const auto& c : j.at("components"))
      comps.push_back({c.at("weight").get<double>(), scheme_from_json(c.at("scheme"), base_dir)});
    return make_mixture(std::move(comps));
  }
  throw Error("BadFile", "unknown scheme variant '" + variant + "'");
}

nlohmann::json distribution_to_json(const DiscreteDistribution& dist) {
  nlohmann::json j;
  j["k"] = dist.k;
  j["N"] = dist.N;
  j["bound"] = dist.bound;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [sparc, p] : dist.entries) {
    nlohmann::json e;
    e["q"] = sparc.q;
    e["p"] = p;
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
  DiscreteDistribution dist;
  dist.k = j.at("k").get<int>();
  dist.N = j.at("N").get<int>();
  dist.bound = j.value("bound", 0.0);
  for (const auto& e : j.at("entries")) {
    DiscreteSparc sparc;
    sparc.q = e.at("q").get<std::vector<int>>();
    dist.entries.push_back({std::move(sparc), e.at("p").get<double>()});
  }
  dist.validate();
  return dist;
}

nlohmann::json certificate_to_json(const GapCertificate& cert) {
  MeshGraph<double> mesh = make_mesh<double>(cert.M);
  nlohmann::json j;
  j["M"] = cert.M;
  j["W"] = cert.W;
  j["gap"] = cert.gap_lower_bound;
  nlohmann::json weights = nlohmann::json::array();
  for (size_t e = 0; e < cert.weights.size(); ++e)
    weights.push_back({mesh.edges[e].a, mesh.edges[e].b, cert.weights[e]});
  j["weights"] = std::move(weights);
  return j;
}

GapCertificate certificate_from_json(const nlohmann::json& j) {
  GapCertificate cert;
  cert.M = j.at("M").get<int>();
  cert.W = j.at("W").get<double>();
  cert.gap_lower_bound = j.value("gap", cert.W > 0 ? 1.0 / cert.W : 0.0);
  MeshGraph<double> mesh = make_mesh<double>(cert.M);
  cert.weights.assign(mesh.edges.size(), 0.0);
  for (const auto& row : j.at("weights")) {
    int u = row.at(0).get<int>();
    int v = row.at(1).get<int>();
    auto it = mesh.edge_ids.find(std::minmax(u, v));
    if (it == mesh.edge_ids.end()) throw Error("BadFile", "not a mesh edge");
    cert.weights[static_cast<size_t>(it->second)] = row.at(2).get<double>();
  }
  return cert;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileNotFound", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("FileWriteFailed", path);
  out << contents;
}

}  // namespace mwcut
