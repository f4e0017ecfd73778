#include "qlogic/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlogic/blocks.hpp"
#include "qlogic/bohr.hpp"
#include "qlogic/context.hpp"
#include "qlogic/documents.hpp"
#include "qlogic/error.hpp"
#include "qlogic/frames.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/projection.hpp"
#include "qlogic/quantum_logic.hpp"
#include "qlogic/worked_example.hpp"

namespace qlogic::cli {

namespace {

enum class Format { Table, Json, Dot };

struct Config {
  std::size_t budget = kDefaultBudget;
  Tolerances tol;
  Format format = Format::Table;
  BlockMode mode = BlockMode::All;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::Parse, what); }

std::size_t parse_size(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos == s.size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  usage("expected a count, got '" + s + "'");
}

LatticePtr load_lattice(const std::string& src) {
  const std::string prefix = "builtin:";
  if (src.rfind(prefix, 0) == 0) {
    const auto name = src.substr(prefix.size());
    if (name == "hasse-example") return hasse_example();
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
      const auto kind = name.substr(0, colon);
      const auto n = parse_size(name.substr(colon + 1));
      if (n > 16) usage("builtin lattice too large");
      if (kind == "chain" && n >= 1) return std::make_shared<const FiniteOrtholattice>(chain_lattice(n));
      if (kind == "pow") return std::make_shared<const FiniteOrtholattice>(power_set_lattice(n));
      if (kind == "mo" && n >= 1) return std::make_shared<const FiniteOrtholattice>(mo_lattice(n));
    }
    usage("unknown builtin lattice '" + src + "'");
  }
  return std::make_shared<const FiniteOrtholattice>(lattice_from_json(load_json_file(src)));
}

BlockPosetPtr load_base(const LatticePtr& L, const std::string& blocks, const Config& cfg) {
  if (blocks == "builtin:four-block") return four_block_family(L);
  if (!blocks.empty()) {
    return std::make_shared<const BlockPoset>(blocks_from_json(load_json_file(blocks), L));
  }
  return std::make_shared<const BlockPoset>(enumerate_blocks(L, cfg.mode, cfg.budget));
}

ElementId host_id(const BlockPoset& base, const std::string& label) {
  const auto& labels = base.host().labels;
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw Error(ErrorKind::UnknownLabel, "unknown label '" + label + "'", {label});
  return static_cast<ElementId>(it - labels.begin());
}

/// "top", "bottom", "D:<label>", "@<file>" or an inline label map.
Section parse_section_arg(const std::string& s, const BlockPosetPtr& base) {
  if (s == "top") return top_section(base);
  if (s == "bottom") return bottom_section(base);
  if (s.rfind("D:", 0) == 0) return embed_D(base, host_id(*base, s.substr(2)));
  const Json j = s.rfind('@', 0) == 0 ? load_json_file(s.substr(1)) : parse_json(s);
  return section_from_json(j, base);
}

std::string yes(bool b) { return b ? "true" : "false"; }

std::string join_labels(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += sep;
    s += xs[k];
  }
  return s;
}

/// Hasse diagram of an arbitrary finite order given by leq.
template <class Leq>
std::string order_dot(const std::vector<std::string>& labels, Leq leq) {
  const auto n = labels.size();
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (const auto& l : labels) os << "  \"" << l << "\";\n";
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || !leq(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n && cover; ++z) {
        if (z != x && z != y && leq(x, z) && leq(z, y)) cover = false;
      }
      if (cover) os << "  \"" << labels[x] << "\" -> \"" << labels[y] << "\";\n";
    }
  }
  os << "}\n";
  return os.str();
}

void no_dot(const Config& cfg, const char* cmd) {
  if (cfg.format == Format::Dot) usage(std::string("--format dot is not available for ") + cmd);
}

Json witness_json(const FiniteOrtholattice& L, const LawWitness& w) {
  Json j;
  j["law"] = w.law;
  Json els = Json::array();
  for (auto x : w.elements) els.push_back(L.label(x));
  j["elements"] = std::move(els);
  if (w.lhs) j["lhs"] = L.label(*w.lhs);
  if (w.rhs) j["rhs"] = L.label(*w.rhs);
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

// ---------------------------------------------------------------------------
// lattice side

std::string cmd_classify(const Config& cfg, const std::string& path) {
  const auto L = load_lattice(path);
  if (cfg.format == Format::Dot) return hasse_dot(*L);
  const auto r = classify(*L);
  if (cfg.format == Format::Json) {
    Json j;
    j["elements"] = L->size();
    j["lattice"] = r.is_lattice;
    j["orthocomplemented"] = r.is_orthocomplemented;
    j["orthomodular"] = r.is_orthomodular;
    j["distributive"] = r.is_distributive;
    j["boolean"] = r.is_boolean;
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(witness_json(*L, w));
    j["witnesses"] = std::move(ws);
    return dump(j);
  }
  std::ostringstream os;
  os << "elements: " << L->size() << "\n"
     << "lattice: " << yes(r.is_lattice) << "\n"
     << "orthocomplemented: " << yes(r.is_orthocomplemented) << "\n"
     << "orthomodular: " << yes(r.is_orthomodular) << "\n"
     << "distributive: " << yes(r.is_distributive) << "\n"
     << "boolean: " << yes(r.is_boolean) << "\n";
  for (const auto& w : r.witnesses) {
    std::vector<std::string> els;
    for (auto x : w.elements) els.push_back(L->label(x));
    os << "witness " << w.law << ": (" << join_labels(els) << ")";
    if (w.lhs && w.rhs) os << " lhs " << L->label(*w.lhs) << " != rhs " << L->label(*w.rhs);
    if (!w.note.empty()) os << "  " << w.note;
    os << "\n";
  }
  return os.str();
}

std::string cmd_blocks(const Config& cfg, const std::string& path) {
  const auto L = load_lattice(path);
  const auto P = enumerate_blocks(L, cfg.mode, cfg.budget);
  std::vector<std::string> names;
  for (const auto& b : P.blocks()) names.push_back(b.name);
  if (cfg.format == Format::Dot) {
    return order_dot(names, [&](std::size_t i, std::size_t j) { return P.leq(i, j); });
  }
  const auto pba = verify_partial_boolean(P);
  if (cfg.format == Format::Json) {
    Json j = blocks_to_json(P);
    j["count"] = P.size();
    j["mode"] = cfg.mode == BlockMode::All ? "all" : "maximal";
    Json bullets = Json::array();
    for (const auto& b : pba.bullets) bullets.push_back({{"name", b.name}, {"pass", b.pass}});
    j["partial_boolean"] = std::move(bullets);
    return dump(j);
  }
  std::ostringstream os;
  os << "blocks: " << P.size() << " (" << (cfg.mode == BlockMode::All ? "all" : "maximal") << ")\n";
  for (const auto& b : P.blocks()) {
    std::vector<std::string> c;
    for (auto x : members_of(b.carrier)) c.push_back(L->label(x));
    os << "  " << b.name << ": {" << join_labels(c, ",") << "}\n";
  }
  os << "partial Boolean algebra:\n";
  for (const auto& b : pba.bullets) {
    os << "  " << b.name << ": " << (b.pass ? "pass" : "FAIL");
    if (!b.witness.empty()) os << " (" << join_labels(b.witness) << ")";
    os << "\n";
  }
  return os.str();
}

std::string cmd_bohrify(const Config& cfg, const std::string& path, const std::string& blocks,
                        bool list) {
  const auto L = load_lattice(path);
  const auto base = load_base(L, blocks, cfg);
  const auto Y = bohrify(base, cfg.budget);
  if (cfg.format == Format::Dot) {
    if (!Y.enumerated()) throw Error(ErrorKind::BudgetExceeded, "too many sections to draw");
    return hasse_dot(as_lattice(Y));
  }
  std::optional<StructureReport> structure;
  if (Y.enumerated() && Y.counted <= 2000) structure = classify(as_lattice(Y));
  if (cfg.format == Format::Json) {
    Json j;
    j["blocks"] = base->size();
    j["sections"] = Y.counted;
    j["within_budget"] = Y.enumerated();
    if (structure) j["distributive"] = structure->is_distributive;
    if (list && Y.enumerated()) {
      Json ms = Json::array();
      for (const auto& f : *Y.enumeration) ms.push_back(section_to_json(f));
      j["members"] = std::move(ms);
    }
    return dump(j);
  }
  std::ostringstream os;
  os << "blocks: " << base->size() << "\n";
  if (Y.enumerated()) {
    os << "sections: " << Y.counted << "\n";
  } else {
    os << "sections: more than " << cfg.budget << "\n";
  }
  if (structure) os << "distributive: " << yes(structure->is_distributive) << "\n";
  if (list && Y.enumerated()) {
    for (const auto& f : *Y.enumeration) os << "  " << format_section(f) << "\n";
  }
  return os.str();
}

std::string emit_section(const Config& cfg, const Section& f) {
  no_dot(cfg, "sections");
  if (cfg.format == Format::Json) return dump(section_to_json(f));
  return format_section(f) + "\n";
}

std::string cmd_implies(const Config& cfg, const std::string& path, const std::string& blocks,
                        const std::string& g, const std::string& h) {
  const auto base = load_base(load_lattice(path), blocks, cfg);
  return emit_section(cfg, implies(parse_section_arg(g, base), parse_section_arg(h, base)));
}

std::string cmd_negate(const Config& cfg, const std::string& path, const std::string& blocks,
                       const std::string& f) {
  const auto base = load_base(load_lattice(path), blocks, cfg);
  return emit_section(cfg, negate(parse_section_arg(f, base)));
}

Json sasaki_json(const SasakiReport& r, const BlockPoset& P) {
  const auto& labels = P.host().labels;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j;
    j["block"] = P.block(row.block).name;
    j["case"] = row.case_name;
    j["hook"] = labels[row.hook];
    j["heyting"] = labels[row.heyting];
    j["agree"] = row.agree;
    j["hook_display"] = labels[row.hook_display];
    j["heyting_display"] = labels[row.heyting_display];
    j["hook_display_matches"] = row.hook_display_matches;
    j["heyting_display_matches"] = row.heyting_display_matches;
    rows.push_back(std::move(j));
  }
  Json j;
  j["x"] = labels[r.x];
  j["y"] = labels[r.y];
  j["hook"] = section_to_json(r.hook_section);
  j["heyting"] = section_to_json(r.heyting_section);
  j["rows"] = std::move(rows);
  return j;
}

void sasaki_table(std::ostream& os, const SasakiReport& r, const BlockPoset& P) {
  const auto& labels = P.host().labels;
  os << "D(" << labels[r.x] << " =>_S " << labels[r.y] << ") vs D(" << labels[r.x] << ") => D("
     << labels[r.y] << ")\n";
  os << "  " << std::left << std::setw(12) << "block" << std::setw(12) << "case" << std::setw(8)
     << "hook" << std::setw(9) << "heyting" << std::setw(7) << "agree" << std::setw(14)
     << "hook-display" << "heyting-display\n";
  for (const auto& row : r.rows) {
    os << "  " << std::setw(12) << P.block(row.block).name << std::setw(12) << row.case_name
       << std::setw(8) << labels[row.hook] << std::setw(9) << labels[row.heyting] << std::setw(7)
       << (row.agree ? "yes" : "NO") << std::setw(14)
       << (labels[row.hook_display] + (row.hook_display_matches ? "" : " (!)"))
       << labels[row.heyting_display] << (row.heyting_display_matches ? "" : " (!)") << "\n";
  }
}

std::string cmd_sasaki(const Config& cfg, const std::string& path, const std::string& blocks,
                       const std::string& x, const std::string& y) {
  no_dot(cfg, "sasaki");
  const auto base = load_base(load_lattice(path), blocks, cfg);
  const auto r = sasaki_report(base, host_id(*base, x), host_id(*base, y));
  if (cfg.format == Format::Json) return dump(sasaki_json(r, *base));
  std::ostringstream os;
  sasaki_table(os, r, *base);
  return os.str();
}

void frame_check_table(std::ostream& os, const char* name, const FrameCheck& c) {
  os << name << ": lattice " << yes(c.is_lattice) << ", bounded " << yes(c.has_bounds)
     << ", distributive " << yes(c.is_distributive);
  if (!c.witness.empty()) os << " (" << join_labels(c.witness) << ")";
  if (!c.note.empty()) os << " [" << c.note << "]";
  os << "\n";
}

Json frame_check_json(const FrameCheck& c) {
  return {{"lattice", c.is_lattice},
          {"bounded", c.has_bounds},
          {"distributive", c.is_distributive},
          {"witness", c.witness},
          {"note", c.note}};
}

std::string cmd_idl(const Config& cfg, const std::string& path) {
  const auto L = load_lattice(path);
  const auto I = ideal_completion(L);
  const auto& F = I.frame;
  std::vector<std::string> labels;
  for (const auto& m : F.members()) labels.push_back(L->format_set(m));
  if (cfg.format == Format::Dot) {
    return order_dot(labels, [&](std::size_t i, std::size_t j) { return F.leq(i, j); });
  }
  const auto check = check_frame(F);
  const auto points = frame_points(F, cfg.budget);
  if (cfg.format == Format::Json) {
    Json j = frame_to_json(F);
    j["frame"] = frame_check_json(check);
    j["points"] = points.size();
    return dump(j);
  }
  std::ostringstream os;
  os << "ideals: " << F.size() << "\n";
  frame_check_table(os, "frame", check);
  os << "points: " << points.size() << "\n";
  for (const auto& l : labels) os << "  " << l << "\n";
  return os.str();
}

std::string cmd_bruns_lakser(const Config& cfg, const std::string& path) {
  no_dot(cfg, "bruns-lakser");
  const auto L = load_lattice(path);
  const auto r = bruns_lakser(L, cfg.budget);
  auto sets = [&](const std::vector<ElementSet>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(set_to_json(*L, s));
    return a;
  };
  if (cfg.format == Format::Json) {
    Json j;
    if (r.definitional) {
      j["definitional"] = frame_to_json(*r.definitional);
      j["definitional_frame"] = frame_check_json(*r.definitional_check);
    }
    if (r.family) {
      j["family"] = frame_to_json(*r.family);
      j["family_generators"] = r.family_generators;
      j["family_frame"] = frame_check_json(*r.family_check);
      j["only_definitional"] = sets(r.only_definitional);
      j["only_family"] = sets(r.only_family);
      j["in_both"] = r.in_both.size();
    }
    return dump(j);
  }
  std::ostringstream os;
  if (r.definitional) {
    os << "distributive ideals (by definition): " << r.definitional->size() << "\n";
    frame_check_table(os, "  frame", *r.definitional_check);
  }
  if (r.family) {
    os << "union family: " << r.family->size() << " distinct of " << r.family_generators
       << " unions\n";
    frame_check_table(os, "  frame", *r.family_check);
    os << "in both: " << r.in_both.size() << "\n";
    os << "only by definition: " << r.only_definitional.size() << "\n";
    for (const auto& s : r.only_definitional) os << "  " << L->format_set(s) << "\n";
    os << "only in family: " << r.only_family.size() << "\n";
    for (const auto& s : r.only_family) os << "  " << L->format_set(s) << "\n";
  } else {
    os << "union family: not applicable (base is not the ten-element example)\n";
  }
  return os.str();
}

std::string cmd_points(const Config& cfg, const std::string& path, const std::string& frame) {
  no_dot(cfg, "points");
  const auto L = load_lattice(path);
  std::optional<DownsetFrame> F;
  if (frame == "idl") {
    F = ideal_completion(L).frame;
  } else if (frame == "downsets") {
    F.emplace(L, downsets(*L, cfg.budget), "downsets");
  } else if (frame == "di") {
    auto r = bruns_lakser(L, cfg.budget);
    F = std::move(*r.definitional);
  } else {
    usage("--frame must be idl, downsets or di");
  }
  const auto points = frame_points(*F, cfg.budget);
  if (cfg.format == Format::Json) {
    Json ks = Json::array();
    for (const auto& p : points) ks.push_back(set_to_json(*L, F->member(p.kernel)));
    return dump({{"frame", F->kind()}, {"members", F->size()}, {"points", points.size()},
                 {"kernels", ks}});
  }
  std::ostringstream os;
  os << "frame: " << F->kind() << " (" << F->size() << " members)\n";
  os << "points: " << points.size() << "\n";
  for (const auto& p : points) os << "  kernel " << L->format_set(F->member(p.kernel)) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// matrix side

struct MatrixInputs {
  MatrixDocument matrices;
  BohrImagePtr image;
};

MatrixInputs load_matrix_inputs(const Config& cfg, const std::string& mpath,
                                const std::string& cpath) {
  MatrixInputs in;
  const Json mj = load_json_file(mpath);
  in.matrices = matrices_from_json(mj);
  const Json cj = cpath.empty() ? mj : load_json_file(cpath);
  const auto P = build_context_poset(in.matrices, contexts_from_json(cj), cfg.tol);
  in.image = std::make_shared<const BohrImage>(P, cfg.tol);
  return in;
}

DensityState load_state(const Config& cfg, const std::string& path, Eigen::Index dim) {
  auto rho = DensityState::from_matrix(state_matrix_from_json(load_json_file(path)), cfg.tol);
  if (rho.dim() != dim) throw Error(ErrorKind::DimMismatch, "state has the wrong dimension");
  return rho;
}

std::string mask_text(AtomMask m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t k = 0; k < 64; ++k) {
    if (!(m >> k & 1u)) continue;
    if (!first) s += ",";
    s += std::to_string(k);
    first = false;
  }
  return s + "}";
}

Json member_json(const ContextPoset& P, const SpectrumMember& m) {
  Json j = Json::object();
  for (std::size_t i = 0; i < P.size(); ++i) {
    Json atoms = Json::array();
    for (std::size_t k = 0; k < 64; ++k) {
      if (m[i] >> k & 1u) atoms.push_back(k);
    }
    j[P.name(i)] = std::move(atoms);
  }
  return j;
}

std::string member_text(const ContextPoset& P, const SpectrumMember& m) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < P.size(); ++i) parts.push_back(P.name(i) + ":" + mask_text(m[i]));
  return "{" + join_labels(parts) + "}";
}

std::vector<std::string> context_names(const ContextPoset& P, const ElementSet& s) {
  std::vector<std::string> out;
  for (auto i : members_of(s)) out.push_back(P.name(i));
  return out;
}

std::string cmd_mat_context(const Config& cfg, const std::string& mpath, const std::string& cpath) {
  const auto in = load_matrix_inputs(cfg, mpath, cpath);
  const auto& P = in.image->poset();
  if (cfg.format == Format::Dot) {
    return order_dot(P.names(), [&](std::size_t i, std::size_t j) { return P.leq(i, j); });
  }
  const auto Y = bohrify(in.image->blocks(), cfg.budget);
  if (cfg.format == Format::Json) {
    Json cs = Json::array();
    for (std::size_t i = 0; i < P.size(); ++i) {
      Json ranks = Json::array();
      for (const auto& a : P.context(i).atoms()) ranks.push_back(a.rank());
      cs.push_back({{"name", P.name(i)}, {"atoms", P.context(i).size()}, {"ranks", ranks},
                    {"above", context_names(P, P.up(i))}});
    }
    Json j;
    j["dim"] = P.dim();
    j["contexts"] = std::move(cs);
    j["projections"] = in.image->host_size();
    j["sections"] = Y.counted;
    j["within_budget"] = Y.enumerated();
    return dump(j);
  }
  std::ostringstream os;
  os << "dim: " << P.dim() << "\n";
  os << "contexts: " << P.size() << "\n";
  for (std::size_t i = 0; i < P.size(); ++i) {
    std::vector<std::string> ranks;
    for (const auto& a : P.context(i).atoms()) ranks.push_back(std::to_string(a.rank()));
    auto up = P.up(i);
    up.reset(i);
    os << "  " << P.name(i) << ": " << P.context(i).size() << " atoms (ranks "
       << join_labels(ranks, ",") << "), below {" << join_labels(context_names(P, up)) << "}\n";
  }
  os << "projections: " << in.image->host_size() << "\n";
  if (Y.enumerated()) {
    os << "sections: " << Y.counted << "\n";
  } else {
    os << "sections: more than " << cfg.budget << "\n";
  }
  return os.str();
}

std::string cmd_mat_spectrum(const Config& cfg, const std::string& mpath, const std::string& cpath,
                             const std::string& element, bool list) {
  const auto in = load_matrix_inputs(cfg, mpath, cpath);
  const auto& P = in.image->poset();
  if (!element.empty()) {
    no_dot(cfg, "mat-spectrum --element");
    const Matrix& a = in.matrices.at(element);
    const auto sp = spectrum(a, cfg.tol);
    Json rows = Json::array();
    std::ostringstream os;
    os << "eigenvalues:";
    for (double v : sp.values) os << " " << v;
    os << "\n";
    for (std::size_t i = 0; i < P.size(); ++i) {
      const auto& C = P.context(i);
      if (!C.contains(a, cfg.tol.proj)) continue;
      const auto basis = spectrum_basis(a, C, cfg.tol);
      const auto clauses = support_clauses(a, C, cfg.tol);
      rows.push_back({{"context", P.name(i)}, {"support_atoms", mask_text(basis)},
                      {"support_clauses", clauses.all()}});
      os << "  " << P.name(i) << ": [a>0] = atoms " << mask_text(basis) << ", support clauses "
         << (clauses.all() ? "hold" : "FAIL") << "\n";
    }
    if (cfg.format == Format::Json) {
      return dump({{"element", element}, {"eigenvalues", sp.values}, {"contexts", rows}});
    }
    return os.str();
  }
  const auto X = external_spectrum(in.image, cfg.budget);
  if (cfg.format == Format::Dot) return hasse_dot(X.order_lattice());
  const auto Y = bohrify(in.image->blocks(), cfg.budget);
  std::optional<DensityReport> density;
  if (Y.enumerated()) density = check_density(X, Y);
  if (cfg.format == Format::Json) {
    Json j;
    j["members"] = X.size();
    j["sections"] = Y.counted;
    if (density) {
      j["density"] = {{"basis_in_frame", density->basis_in_frame},
                      {"injective", density->injective},
                      {"dense", density->dense}};
    }
    if (list) {
      Json ms = Json::array();
      for (const auto& m : X.members) ms.push_back(member_json(P, m));
      j["list"] = std::move(ms);
    }
    return dump(j);
  }
  std::ostringstream os;
  os << "spectrum members: " << X.size() << "\n";
  os << "sections: " << Y.counted << "\n";
  if (density) {
    os << "basis density: " << (density->pass() ? "holds" : "FAILS") << " (in frame "
       << yes(density->basis_in_frame) << ", injective " << yes(density->injective) << ", dense "
       << yes(density->dense) << ")\n";
  }
  if (list) {
    for (const auto& m : X.members) os << "  " << member_text(P, m) << "\n";
  }
  return os.str();
}

std::string cmd_daseinise(const Config& cfg, const std::string& mpath, const std::string& cpath,
                          const std::string& proj) {
  const auto in = load_matrix_inputs(cfg, mpath, cpath);
  const auto p = MatProjection::from_matrix(in.matrices.at(proj), cfg.tol);
  return emit_section(cfg, daseinise(p, *in.image, cfg.tol));
}

std::string emit_context_set(const Config& cfg, const ContextPoset& P, const ContextSet& s,
                             Json extra) {
  no_dot(cfg, "valuations");
  const auto names = context_names(P, s.contexts);
  if (cfg.format == Format::Json) {
    Json j;
    j["contexts"] = names;
    j["upward_closed"] = s.upward_closed;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return dump(j);
  }
  std::ostringstream os;
  os << "{" << join_labels(names) << "}\n";
  os << "upward closed: " << yes(s.upward_closed) << "\n";
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    os << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
       << "\n";
  }
  return os.str();
}

std::string cmd_valuate(const Config& cfg, const std::string& mpath, const std::string& cpath,
                        const std::string& spath, const std::string& proj) {
  const auto in = load_matrix_inputs(cfg, mpath, cpath);
  const auto& P = in.image->poset();
  const auto psi = load_state(cfg, spath, P.dim());
  const auto p = MatProjection::from_matrix(in.matrices.at(proj), cfg.tol);
  const auto S = daseinise(p, *in.image, cfg.tol);
  const auto V = kripke_valuation(psi, S, *in.image, cfg.tol);
  Json extra;
  extra["probability"] = psi.expectation(p.matrix());
  extra["classically_true"] = classical_truth(psi, p, cfg.tol);
  return emit_context_set(cfg, P, V, std::move(extra));
}

SpectrumMember parse_member(const std::string& text, const ContextPoset& P) {
  const Json j = text.rfind('@', 0) == 0 ? load_json_file(text.substr(1)) : parse_json(text);
  if (!j.is_object()) usage("a spectrum member maps context names to atom index lists");
  SpectrumMember m(P.size(), 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto i = P.find(it.key());
    if (!i) throw Error(ErrorKind::UnknownLabel, "unknown context '" + it.key() + "'", {it.key()});
    if (!it.value().is_array()) usage("atom indices must be a list");
    for (const auto& k : it.value()) {
      if (!k.is_number_unsigned() || k.get<std::size_t>() >= P.context(*i).size()) {
        usage("bad atom index " + k.dump() + " for context " + it.key());
      }
      m[*i] |= AtomMask{1} << k.get<std::size_t>();
    }
  }
  return m;
}

std::string cmd_pairing(const Config& cfg, const std::string& mpath, const std::string& cpath,
                        const std::string& spath, const std::string& proj,
                        const std::string& member) {
  const auto in = load_matrix_inputs(cfg, mpath, cpath);
  const auto& P = in.image->poset();
  const auto psi = load_state(cfg, spath, P.dim());
  ExternalSpectrum X;
  X.image = in.image;
  SpectrumMember U;
  Json extra = Json::object();
  std::optional<Section> S;
  if (!proj.empty() == !member.empty()) usage("give exactly one of --proj and --member");
  if (!proj.empty()) {
    S = daseinise(MatProjection::from_matrix(in.matrices.at(proj), cfg.tol), *in.image, cfg.tol);
    U = X.basis(*S);
  } else {
    U = parse_member(member, P);
    if (!X.is_member(U)) {
      throw Error(ErrorKind::PreconditionViolated, "not closed under refinement",
                  {member_text(P, U)});
    }
    S = X.section_of(U);
  }
  const auto pr = pairing(psi, U, *in.image, cfg.tol);
  const auto kv = kripke_valuation(psi, *S, *in.image, cfg.tol);
  extra["member"] = member_text(P, U);
  extra["equals_kripke_valuation"] = pr.contexts == kv.contexts;
  return emit_context_set(cfg, P, pr, std::move(extra));
}

// ---------------------------------------------------------------------------
// worked example

std::string cmd_worked_example(const Config& cfg) {
  no_dot(cfg, "worked-example");
  const auto X = hasse_example();
  const auto structure = classify(*X);
  const auto all = std::make_shared<const BlockPoset>(enumerate_blocks(X, BlockMode::All, cfg.budget));
  const auto family = four_block_family(X);
  const auto Y = bohrify(family, cfg.budget, true);
  const auto Yall = bohrify(all, cfg.budget);
  const auto pt = product_plus_top(Y);
  const bool iso = is_order_isomorphism(as_lattice(Y), pt.target, pt.image);
  const auto bl = bruns_lakser(X, cfg.budget);
  const auto amalgam = amalgamate(*family);

  const auto a = X->id("a");
  const auto b = X->id("b");
  const auto Da = embed_D(family, a);
  const auto neg = negate(Da);
  const auto Dperp = embed_D(family, X->perp(a));
  const auto sas = sasaki_report(family, a, b);
  const auto& labels = X->labels();

  if (cfg.format == Format::Json) {
    Json j;
    j["lattice"] = {{"elements", X->size()},
                    {"orthomodular", structure.is_orthomodular},
                    {"distributive", structure.is_distributive}};
    j["blocks_enumerated"] = all->size();
    j["blocks_family"] = family->size();
    j["sections_family"] = Y.counted;
    j["sections_enumerated"] = Yall.counted;
    j["product_plus_top_isomorphic"] = iso;
    j["family_amalgam_elements"] = amalgam.size();
    j["union_family"] = bl.family ? bl.family->size() : 0;
    j["distributive_ideals_by_definition"] = bl.definitional ? bl.definitional->size() : 0;
    Json negrows = Json::array();
    for (std::size_t i = 0; i < family->size(); ++i) {
      negrows.push_back({{"block", family->block(i).name},
                         {"D(a')", labels[Dperp.values[i]]},
                         {"~D(a)", labels[neg.values[i]]},
                         {"agree", Dperp.values[i] == neg.values[i]}});
    }
    j["negation"] = std::move(negrows);
    j["sasaki"] = sasaki_json(sas, *family);
    return dump(j);
  }
  std::ostringstream os;
  os << "ten-element lattice: orthomodular " << yes(structure.is_orthomodular) << ", distributive "
     << yes(structure.is_distributive) << "\n";
  os << "Boolean subalgebras (enumerated): " << all->size() << "\n";
  for (const auto& blk : all->blocks()) os << "  " << blk.name << "\n";
  os << "Boolean subalgebras (four-block family with B0): " << family->size() << "\n";
  os << "  family amalgamates to " << amalgam.size() << " elements\n";
  os << "sections over the family: " << Y.counted << "\n";
  os << "  isomorphic to (Ba x Bb x Bc x Bd) + top: " << yes(iso) << "\n";
  os << "sections over all enumerated blocks: " << Yall.counted << "\n";
  if (bl.family) {
    os << "union family: " << bl.family->size() << " distinct downsets\n";
  }
  if (bl.definitional) {
    os << "distributive ideals by definition: " << bl.definitional->size() << " ("
       << bl.in_both.size() << " shared with the family)\n";
  }
  os << "\nnegation: D(a') vs ~D(a)\n";
  os << "  " << std::left << std::setw(8) << "block" << std::setw(8) << "D(a')" << std::setw(8)
     << "~D(a)" << "\n";
  for (std::size_t i = 0; i < family->size(); ++i) {
    os << "  " << std::setw(8) << family->block(i).name << std::setw(8) << labels[Dperp.values[i]]
       << std::setw(8) << labels[neg.values[i]]
       << (Dperp.values[i] == neg.values[i] ? "" : "differs") << "\n";
  }
  os << "\n";
  sasaki_table(os, sas, *family);
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quantum logic toolkit: orthomodular lattices, Boolean blocks, section "
               "algebras, frames and matrix contexts.", "qlogic"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  std::string budget_text;
  double tol_proj = cfg.tol.proj;
  double tol_val = cfg.tol.val;
  int iterate_cap = cfg.tol.iterate_cap;
  std::string format = "table";
  std::string mode = "all";
  app.add_option("--budget", budget_text, "Enumeration budget (default 10000000)");
  app.add_option("--tol-proj", tol_proj, "Projection tolerance");
  app.add_option("--tol-val", tol_val, "Probability-one tolerance");
  app.add_option("--iterate-cap", iterate_cap, "Squarings in the (pq)^m iterate");
  app.add_option("--format", format, "table | json-like | dot")
      ->check(CLI::IsMember({"table", "json-like", "dot"}));
  app.add_option("--mode", mode, "Block enumeration: all | maximal")
      ->check(CLI::IsMember({"all", "maximal"}));

  std::string lattice, blocks, g, h, x, y, frame = "idl";
  std::string mpath, cpath, spath, proj, member, element;
  bool list = false;

  auto* classify_cmd = app.add_subcommand("classify", "Structural laws of a lattice");
  classify_cmd->add_option("lattice", lattice, "Lattice document or builtin:NAME")->required();

  auto* blocks_cmd = app.add_subcommand("blocks", "Boolean subalgebras");
  blocks_cmd->add_option("lattice", lattice)->required();

  auto add_base = [&](CLI::App* c) {
    c->add_option("lattice", lattice)->required();
    c->add_option("--blocks", blocks, "Blocks document, or builtin:four-block");
  };
  auto* bohrify_cmd = app.add_subcommand("bohrify", "Count and list monotone sections");
  add_base(bohrify_cmd);
  bohrify_cmd->add_flag("--list", list, "List every section");

  auto* implies_cmd = app.add_subcommand("implies", "Heyting implication g => h");
  add_base(implies_cmd);
  implies_cmd->add_option("premise", g, "Section: top, bottom, D:label, @file or label map")->required();
  implies_cmd->add_option("conclusion", h)->required();

  auto* negate_cmd = app.add_subcommand("negate", "Heyting negation");
  add_base(negate_cmd);
  negate_cmd->add_option("f", g)->required();

  auto* sasaki_cmd = app.add_subcommand("sasaki", "Sasaki hook against Heyting implication");
  add_base(sasaki_cmd);
  sasaki_cmd->add_option("x", x)->required();
  sasaki_cmd->add_option("y", y)->required();

  auto* idl_cmd = app.add_subcommand("idl", "Ideal completion");
  idl_cmd->add_option("lattice", lattice)->required();

  auto* bl_cmd = app.add_subcommand("bruns-lakser", "Distributive ideals");
  bl_cmd->add_option("lattice", lattice)->required();

  auto* points_cmd = app.add_subcommand("points", "Points of a downset frame");
  points_cmd->add_option("lattice", lattice)->required();
  points_cmd->add_option("--frame", frame, "idl | downsets | di");

  auto add_matrix = [&](CLI::App* c) {
    c->add_option("matrices", mpath, "Matrix document")->required();
    c->add_option("--contexts", cpath, "Context document (default: the matrix document)");
  };
  auto* mctx_cmd = app.add_subcommand("mat-context", "Context poset of a matrix family");
  add_matrix(mctx_cmd);

  auto* mspec_cmd = app.add_subcommand("mat-spectrum", "External spectrum, or spectral data");
  add_matrix(mspec_cmd);
  mspec_cmd->add_option("--element", element, "Hermitian matrix name");
  mspec_cmd->add_flag("--list", list, "List every member");

  auto* das_cmd = app.add_subcommand("daseinise", "Section of a projection over the contexts");
  add_matrix(das_cmd);
  das_cmd->add_option("--proj", proj, "Projection matrix name")->required();

  auto* val_cmd = app.add_subcommand("valuate", "Kripke valuation of a daseinised projection");
  add_matrix(val_cmd);
  val_cmd->add_option("--state", spath, "State document")->required();
  val_cmd->add_option("--proj", proj)->required();

  auto* pair_cmd = app.add_subcommand("pairing", "Contexts where a spectrum member has probability one");
  add_matrix(pair_cmd);
  pair_cmd->add_option("--state", spath)->required();
  pair_cmd->add_option("--proj", proj, "Use the basis member of this projection");
  pair_cmd->add_option("--member", member, "Member as {context: [atom indices]}");

  auto* worked_cmd = app.add_subcommand("worked-example", "The ten-element worked example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (!budget_text.empty()) cfg.budget = parse_size(budget_text);
    if (cfg.budget < 1) usage("--budget must be at least 1");
    auto tol_ok = [](double t) { return t > 0.0 && t < 1e-2; };
    if (!tol_ok(tol_proj) || !tol_ok(tol_val)) usage("tolerances must lie in (0, 1e-2)");
    if (iterate_cap < 1) usage("--iterate-cap must be at least 1");
    cfg.tol.proj = tol_proj;
    cfg.tol.val = tol_val;
    cfg.tol.iterate_cap = iterate_cap;
    cfg.format = format == "table" ? Format::Table : format == "dot" ? Format::Dot : Format::Json;
    cfg.mode = mode == "maximal" ? BlockMode::Maximal : BlockMode::All;

    std::string text;
    if (classify_cmd->parsed()) {
      text = cmd_classify(cfg, lattice);
    } else if (blocks_cmd->parsed()) {
      text = cmd_blocks(cfg, lattice);
    } else if (bohrify_cmd->parsed()) {
      text = cmd_bohrify(cfg, lattice, blocks, list);
    } else if (implies_cmd->parsed()) {
      text = cmd_implies(cfg, lattice, blocks, g, h);
    } else if (negate_cmd->parsed()) {
      text = cmd_negate(cfg, lattice, blocks, g);
    } else if (sasaki_cmd->parsed()) {
      text = cmd_sasaki(cfg, lattice, blocks, x, y);
    } else if (idl_cmd->parsed()) {
      text = cmd_idl(cfg, lattice);
    } else if (bl_cmd->parsed()) {
      text = cmd_bruns_lakser(cfg, lattice);
    } else if (points_cmd->parsed()) {
      text = cmd_points(cfg, lattice, frame);
    } else if (mctx_cmd->parsed()) {
      text = cmd_mat_context(cfg, mpath, cpath);
    } else if (mspec_cmd->parsed()) {
      text = cmd_mat_spectrum(cfg, mpath, cpath, element, list);
    } else if (das_cmd->parsed()) {
      text = cmd_daseinise(cfg, mpath, cpath, proj);
    } else if (val_cmd->parsed()) {
      text = cmd_valuate(cfg, mpath, cpath, spath, proj);
    } else if (pair_cmd->parsed()) {
      text = cmd_pairing(cfg, mpath, cpath, spath, proj, member);
    } else if (worked_cmd->parsed()) {
      text = cmd_worked_example(cfg);
    }
    out << text;
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kParseError : kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace qlogic::cli
