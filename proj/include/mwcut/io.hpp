#ifndef MWCUT_IO_HPP_
#define MWCUT_IO_HPP_

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mwcut/discrete.hpp"
#include "mwcut/graph.hpp"
#include "mwcut/relaxation.hpp"
#include "mwcut/schemes.hpp"
#include "mwcut/search.hpp"

namespace mwcut {

// Line-based graph file: "mwc-graph 1" header, then k / nodes / terminals /
// edge lines; weights are decimal or exact p/q; '#' starts a comment.
void save_graph(const WeightedGraph<double>& g, std::ostream& os);
void save_graph(const WeightedGraph<Rational>& g, std::ostream& os);
WeightedGraph<double> load_graph(std::istream& is);
WeightedGraph<Rational> load_graph_rational(std::istream& is);

// Embedding file: "mwc-embedding 1", k, then one "point <id> <c_1..c_k>"
// line per node.
void save_embedding(const Embedding<double>& emb, std::ostream& os);
void save_embedding(const Embedding<Rational>& emb, std::ostream& os);
Embedding<double> load_embedding(std::istream& is);
Embedding<Rational> load_embedding_rational(std::istream& is);

nlohmann::json scheme_to_json(const SchemeConfig& cfg);
/// base_dir resolves a discrete scheme's "file" reference.
SchemeConfig scheme_from_json(const nlohmann::json& j, const std::string& base_dir = "");

nlohmann::json distribution_to_json(const DiscreteDistribution& dist);
DiscreteDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const GapCertificate& cert);
GapCertificate certificate_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mwcut

#endif  // MWCUT_IO_HPP_
