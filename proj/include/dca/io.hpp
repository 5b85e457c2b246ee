#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "dca/ext_rat.hpp"
#include "dca/graph.hpp"
#include "dca/lconvex.hpp"
#include "dca/poset.hpp"
#include "dca/solvers.hpp"
#include "dca/submodular.hpp"

namespace dca::io {

using Json = nlohmann::json;

/// Throws BadInput naming the file on read or parse failure.
Json load_file(const std::string& path);
/// Writes through a temporary file and a rename.
void save_file(const std::string& path, const std::string& text);

/// "p/q", "inf" or a JSON integer.
ExtRat read_ext(const Json& j, const std::string& field);
Rational read_rational(const Json& j, const std::string& field);
Json write_ext(const ExtRat& x);

/// Semilattice plus what is known about its family (for specialised checks).
struct LatticeSpec {
  Semilattice lattice;
  std::string family;  // "sk" or empty
  int k = 0;
  int n = 0;
};

/// {"elements": [...], "covers": [[child, parent], ...]} or a family:
/// {"family": "sk"|"skl"|"boolean"|"chain"|"pentagon", "k", "l", "n"}.
LatticeSpec read_lattice(const Json& j);
bool looks_like_poset(const Json& j);

/// {"vertices", "edges", "orientation", "arcs", "edge_length"} or a
/// {"generator": ...} object. Any graph accepts "orient": "admissible".
Graph read_graph(const Json& j);
Json write_graph(const Graph& g);
/// Products and grids keep their factors.
ProductSpace read_space(const Json& j);
bool looks_like_graph(const Json& j);

/// "values": object keyed by element names or an array in id order;
/// missing names take "default" when present.
FnTable read_values(const Json& j, std::size_t size, const std::function<std::size_t(const std::string&)>& find);
FnTable read_function(const Json& j, const Semilattice& lattice);
FnTable read_function(const Json& j, const ProductSpace& space);

/// {"values": {...}} / {"alpha": [...]} / "rank" (or absent).
Valuation read_valuation(const Json& j, const Semilattice& lattice);

/// {"graph": <graph>, "n": k, "b": [[i, "v", w], ...], "c": [[i, j, w], ...]}.
ZeroExtInstance read_zero_ext(const Json& j);
Json write_zero_ext(const ZeroExtInstance& inst);
/// {"nodes": [...], "edges": [["u", "v", cap], ...], "terminals": [...]}.
CutInstance read_cut(const Json& j);
Json write_cut(const CutInstance& cut);

Json trace_json(const SDATrace& trace, const ProductSpace& space);

}  // namespace dca::io
