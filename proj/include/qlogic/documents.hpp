#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qlogic/blocks.hpp"
#include "qlogic/bohr.hpp"
#include "qlogic/context.hpp"
#include "qlogic/frames.hpp"
#include "qlogic/projection.hpp"

namespace qlogic {

using Json = nlohmann::ordered_json;

/// Parses text as JSON. Throws Parse.
Json parse_json(std::string_view text);
/// Reads a file and parses it. Throws Parse.
Json load_json_file(const std::string& path);
/// Two-space indented, trailing newline.
std::string dump(const Json& j);

// Lattice document:
//   {"elements": [labels], "covers": [[lo, hi], ...], "perp": {label: label}}
// "leq" may replace "covers" on input; output always uses covers, in
// ascending id order, with perp keys in element order.

/// Throws Parse for malformed documents and the lattice errors for invalid
/// ones.
FiniteOrtholattice lattice_from_json(const Json& j);
Json lattice_to_json(const FiniteOrtholattice& L);

// Blocks document: {"blocks": [{"name": n, "carrier": [labels], "atoms": [labels]}]}.
// Input needs only the carriers; names are optional.
Json blocks_to_json(const BlockPoset& P);
BlockPoset blocks_from_json(const Json& j, LatticePtr host);

/// {block name: element label}, in block order.
Json section_to_json(const Section& f);
/// Missing blocks are an error. Throws Parse, UnknownLabel, PreconditionViolated.
Section section_from_json(const Json& j, BlockPosetPtr base);

/// Member downsets as label lists.
Json frame_to_json(const DownsetFrame& F);
Json set_to_json(const FiniteOrtholattice& L, const ElementSet& s);

// Matrix document:
//   {"dim": n, "matrices": {name: [[re, im], ...]}}
// with n*n entries in row-major order. A list of n rows of [re, im] pairs
// is accepted too. Non-finite numbers are rejected.

struct MatrixDocument {
  Eigen::Index dim = 0;
  std::map<std::string, Matrix> matrices;
  std::vector<std::string> order;  // names in document order
  const Matrix& at(const std::string& name) const;  // Throws UnknownLabel
};

MatrixDocument matrices_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Eigen::Index dim);

// Context document:
//   {"contexts": {name: [generator matrix names]}, "meet_closed": false}
// Generators must be pairwise commuting projections; the context they
// generate is used. May live in the same file as the matrices.

struct ContextDocument {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> generators;
  bool meet_closed = false;
};

ContextDocument contexts_from_json(const Json& j);
/// Builds the context poset (trivial context added). Throws the matrix
/// layer errors.
ContextPoset build_context_poset(const MatrixDocument& m, const ContextDocument& c,
                                 const Tolerances& tol = {});

// State document: {"dim": n, "state": matrix} or {"dim": n, "vector": [[re, im], ...]}.
Matrix state_matrix_from_json(const Json& j);

}  // namespace qlogic
