#include "qlogic/documents.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_label(const Json& j) {
  if (!j.is_string()) bad("expected a label string, got " + j.dump());
  return j.get<std::string>();
}

double as_number(const Json& j) {
  if (!j.is_number()) bad("expected a number, got " + j.dump());
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad("non-finite number");
  return v;
}

Complex as_complex(const Json& j) {
  if (j.is_number()) return {as_number(j), 0.0};
  if (!j.is_array() || j.size() != 2) bad("expected an [re, im] pair, got " + j.dump());
  return {as_number(j[0]), as_number(j[1])};
}

std::vector<ElementId> labels_to_ids(const Json& j, const FiniteOrtholattice& L) {
  if (!j.is_array()) bad("expected a list of labels");
  std::vector<ElementId> out;
  for (const auto& x : j) out.push_back(L.id(as_label(x)));
  return out;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("malformed document: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

FiniteOrtholattice lattice_from_json(const Json& j) {
  const auto& elems = field(j, "elements");
  if (!elems.is_array() || elems.empty()) bad("'elements' must be a nonempty list");
  std::vector<std::string> labels;
  std::unordered_map<std::string, ElementId> index;
  for (const auto& e : elems) {
    auto s = as_label(e);
    if (!index.emplace(s, static_cast<ElementId>(labels.size())).second) {
      bad("duplicate element label '" + s + "'");
    }
    labels.push_back(std::move(s));
  }
  auto lookup = [&](const Json& x) {
    auto s = as_label(x);
    auto it = index.find(s);
    if (it == index.end()) throw Error(ErrorKind::UnknownLabel, "unknown label '" + s + "'", {s});
    return it->second;
  };
  const bool has_covers = j.contains("covers");
  const bool has_leq = j.contains("leq");
  if (has_covers == has_leq) bad("exactly one of 'covers' and 'leq' is required");
  const auto& rel = has_covers ? j["covers"] : j["leq"];
  if (!rel.is_array()) bad("relation must be a list of pairs");
  std::vector<ElementPair> pairs;
  for (const auto& p : rel) {
    if (!p.is_array() || p.size() != 2) bad("relation entries must be label pairs");
    pairs.emplace_back(lookup(p[0]), lookup(p[1]));
  }
  std::optional<std::vector<ElementId>> perp;
  if (j.contains("perp")) {
    const auto& pm = j["perp"];
    if (!pm.is_object()) bad("'perp' must be a label map");
    std::vector<ElementId> v(labels.size(), 0);
    std::vector<bool> seen(labels.size(), false);
    for (auto it = pm.begin(); it != pm.end(); ++it) {
      const auto x = lookup(Json(it.key()));
      v[x] = lookup(it.value());
      seen[x] = true;
    }
    // A map listing each pair once is completed by involution.
    for (std::size_t x = 0; x < labels.size(); ++x) {
      if (seen[x] && !seen[v[x]]) {
        v[v[x]] = static_cast<ElementId>(x);
        seen[v[x]] = true;
      }
    }
    for (std::size_t x = 0; x < labels.size(); ++x) {
      if (!seen[x]) {
        throw Error(ErrorKind::BadPerp, "perp is not defined on " + labels[x], {labels[x]});
      }
    }
    perp = std::move(v);
  }
  return FiniteOrtholattice::build(std::move(labels), pairs,
                                   has_covers ? RelationKind::Covers : RelationKind::Leq,
                                   std::move(perp));
}

Json lattice_to_json(const FiniteOrtholattice& L) {
  Json j;
  j["elements"] = L.labels();
  Json covers = Json::array();
  for (auto [x, y] : L.covers()) covers.push_back({L.label(x), L.label(y)});
  j["covers"] = std::move(covers);
  if (L.has_perp()) {
    Json perp = Json::object();
    for (ElementId x = 0; x < L.size(); ++x) perp[L.label(x)] = L.label(L.perp(x));
    j["perp"] = std::move(perp);
  }
  return j;
}

Json set_to_json(const FiniteOrtholattice& L, const ElementSet& s) {
  Json out = Json::array();
  for (auto x : members_of(s)) out.push_back(L.label(x));
  return out;
}

Json blocks_to_json(const BlockPoset& P) {
  Json list = Json::array();
  const auto& H = P.host();
  for (const auto& b : P.blocks()) {
    Json e;
    e["name"] = b.name;
    Json carrier = Json::array();
    for (auto x : members_of(b.carrier)) carrier.push_back(H.labels[x]);
    Json atoms = Json::array();
    for (auto x : members_of(b.atoms)) atoms.push_back(H.labels[x]);
    e["carrier"] = std::move(carrier);
    e["atoms"] = std::move(atoms);
    list.push_back(std::move(e));
  }
  Json j;
  j["blocks"] = std::move(list);
  return j;
}

BlockPoset blocks_from_json(const Json& j, LatticePtr host) {
  const auto& list = field(j, "blocks");
  if (!list.is_array() || list.empty()) bad("'blocks' must be a nonempty list");
  std::vector<ElementSet> carriers;
  std::vector<std::string> names;
  bool named = true;
  for (const auto& b : list) {
    ElementSet c = host->empty_set();
    for (auto x : labels_to_ids(field(b, "carrier"), *host)) c.set(x);
    carriers.push_back(std::move(c));
    if (b.contains("name")) {
      names.push_back(as_label(b["name"]));
    } else {
      named = false;
    }
  }
  if (!named) names.clear();
  return BlockPoset(std::move(host), std::move(carriers), std::move(names));
}

Json section_to_json(const Section& f) {
  Json j = Json::object();
  const auto& P = *f.base;
  for (std::size_t i = 0; i < P.size(); ++i) j[P.block(i).name] = P.host().labels[f.values[i]];
  return j;
}

Section section_from_json(const Json& j, BlockPosetPtr base) {
  if (!j.is_object()) bad("a section is a map from block names to labels");
  std::vector<ElementId> values(base->size(), 0);
  std::vector<bool> seen(base->size(), false);
  const auto& H = base->host();
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto i = base->find(it.key());
    if (!i) throw Error(ErrorKind::UnknownLabel, "unknown block '" + it.key() + "'", {it.key()});
    const auto label = as_label(it.value());
    auto pos = std::find(H.labels.begin(), H.labels.end(), label);
    if (pos == H.labels.end()) {
      throw Error(ErrorKind::UnknownLabel, "unknown label '" + label + "'", {label});
    }
    values[*i] = static_cast<ElementId>(pos - H.labels.begin());
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < base->size(); ++i) {
    if (!seen[i]) bad("section has no value for block " + base->block(i).name);
  }
  return make_section(std::move(base), std::move(values));
}

Json frame_to_json(const DownsetFrame& F) {
  Json members = Json::array();
  for (const auto& m : F.members()) members.push_back(set_to_json(F.base(), m));
  Json j;
  j["kind"] = F.kind();
  j["size"] = F.size();
  j["members"] = std::move(members);
  return j;
}

const Matrix& MatrixDocument::at(const std::string& name) const {
  auto it = matrices.find(name);
  if (it == matrices.end()) {
    throw Error(ErrorKind::UnknownLabel, "unknown matrix '" + name + "'", {name});
  }
  return it->second;
}

Matrix matrix_from_json(const Json& j, Eigen::Index dim) {
  if (!j.is_array()) bad("a matrix is a list of [re, im] entries");
  Matrix m(dim, dim);
  const auto n = static_cast<std::size_t>(dim);
  auto scalar = [](const Json& e) {
    return e.is_number() || (e.is_array() && e.size() == 2 && e[0].is_number());
  };
  bool flat = j.size() == n * n;
  for (const auto& e : j) flat = flat && scalar(e);
  if (flat) {
    for (std::size_t k = 0; k < n * n; ++k) {
      m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = as_complex(j[k]);
    }
    return m;
  }
  if (j.size() != n) bad("matrix has the wrong number of entries for dim " + std::to_string(n));
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) bad("matrix row has the wrong length");
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_complex(j[r][c]);
    }
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return out;
}

namespace {

Eigen::Index read_dim(const Json& j) {
  const auto& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 64) {
    bad("'dim' must be an integer in 1..64");
  }
  return static_cast<Eigen::Index>(d.get<long long>());
}

}  // namespace

MatrixDocument matrices_from_json(const Json& j) {
  MatrixDocument doc;
  doc.dim = read_dim(j);
  const auto& ms = field(j, "matrices");
  if (!ms.is_object()) bad("'matrices' must map names to matrices");
  for (auto it = ms.begin(); it != ms.end(); ++it) {
    doc.matrices.emplace(it.key(), matrix_from_json(it.value(), doc.dim));
    doc.order.push_back(it.key());
  }
  return doc;
}

ContextDocument contexts_from_json(const Json& j) {
  ContextDocument doc;
  const auto& cs = field(j, "contexts");
  if (!cs.is_object()) bad("'contexts' must map names to generator lists");
  for (auto it = cs.begin(); it != cs.end(); ++it) {
    if (!it.value().is_array()) bad("context generators must be a list of matrix names");
    std::vector<std::string> gens;
    for (const auto& g : it.value()) gens.push_back(as_label(g));
    doc.names.push_back(it.key());
    doc.generators.push_back(std::move(gens));
  }
  if (j.contains("meet_closed")) {
    if (!j["meet_closed"].is_boolean()) bad("'meet_closed' must be a boolean");
    doc.meet_closed = j["meet_closed"].get<bool>();
  }
  return doc;
}

ContextPoset build_context_poset(const MatrixDocument& m, const ContextDocument& c,
                                 const Tolerances& tol) {
  std::vector<Context> contexts;
  for (const auto& gens : c.generators) {
    std::vector<MatProjection> ps;
    for (const auto& g : gens) ps.push_back(MatProjection::from_matrix(m.at(g), tol));
    contexts.push_back(context_generate(ps, m.dim, tol));
  }
  return ContextPoset::build(std::move(contexts), c.names, c.meet_closed, tol);
}

Matrix state_matrix_from_json(const Json& j) {
  const auto n = read_dim(j);
  if (j.contains("state")) return matrix_from_json(j["state"], n);
  if (j.contains("vector")) {
    const auto& v = j["vector"];
    if (!v.is_array() || v.size() != static_cast<std::size_t>(n)) bad("'vector' must have dim entries");
    Eigen::VectorXcd x(n);
    for (Eigen::Index k = 0; k < n; ++k) x(k) = as_complex(v[static_cast<std::size_t>(k)]);
    const double norm = x.norm();
    if (norm == 0.0) throw Error(ErrorKind::InvalidState, "zero state vector");
    x /= norm;
    return x * x.adjoint();
  }
  bad("state document needs 'state' or 'vector'");
}

}  // namespace qlogic
