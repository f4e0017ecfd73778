#include <doctest.h>

#include "qlogic/documents.hpp"
#include "qlogic/error.hpp"
#include "qlogic/worked_example.hpp"

using namespace qlogic;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("lattice documents round-trip") {
  for (const auto& L : {*hasse_example(), power_set_lattice(3), mo_lattice(2), chain_lattice(4)}) {
    const auto text = dump(lattice_to_json(L));
    const auto back = lattice_from_json(parse_json(text));
    CHECK(dump(lattice_to_json(back)) == text);
    CHECK(back.labels() == L.labels());
  }
}

TEST_CASE("lattice documents: leq input, half perp maps, errors") {
  const auto j = parse_json(R"({"elements": ["0", "a", "a'", "1"],
      "leq": [["0", "a"], ["0", "a'"], ["a", "1"], ["a'", "1"], ["0", "1"]],
      "perp": {"0": "1", "a": "a'"}})");
  const auto L = lattice_from_json(j);
  CHECK(L.size() == 4);
  CHECK(L.perp(L.id("a'")) == L.id("a"));
  CHECK(classify(L).is_boolean);
  CHECK(kind_of([] { lattice_from_json(parse_json(R"({"elements": ["0"]})")); }) == ErrorKind::Parse);
  CHECK(kind_of([] { parse_json("{not json"); }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"elements": ["0","1"], "covers": [["0","x"]]})"));
        }) == ErrorKind::UnknownLabel);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"elements": ["0","0"], "covers": []})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([] {
          lattice_from_json(parse_json(R"({"elements": ["0","a","1"],
              "covers": [["0","a"],["a","1"]], "perp": {"0": "1"}})"));
        }) == ErrorKind::BadPerp);
}

TEST_CASE("blocks and sections round-trip") {
  const auto X = hasse_example();
  const auto F = four_block_family(X);
  const auto j = blocks_to_json(*F);
  const auto back = std::make_shared<const BlockPoset>(blocks_from_json(j, X));
  CHECK(back->size() == F->size());
  CHECK(dump(blocks_to_json(*back)) == dump(j));
  const auto f = embed_D(back, X->id("a"));
  const auto sj = section_to_json(f);
  CHECK(sj["Ba"] == "a");
  CHECK(section_from_json(sj, back) == f);
  CHECK(kind_of([&] { section_from_json(parse_json(R"({"B0": "0"})"), back); }) == ErrorKind::Parse);
}

TEST_CASE("matrix documents") {
  const auto j = parse_json(R"({"dim": 2, "matrices": {
      "flat": [[1,0],[0,0],[0,0],[0,0]],
      "rows": [[[0,0],[0,-1]], [[0,1],[0,0]]]}})");
  const auto doc = matrices_from_json(j);
  CHECK(doc.dim == 2);
  CHECK(doc.order == std::vector<std::string>{"flat", "rows"});
  CHECK(doc.at("flat")(0, 0) == Complex(1, 0));
  CHECK(doc.at("rows")(0, 1) == Complex(0, -1));
  CHECK(doc.at("rows")(1, 0) == Complex(0, 1));
  const auto back = matrix_from_json(matrix_to_json(doc.at("rows")), 2);
  CHECK(back == doc.at("rows"));
  CHECK(kind_of([] { matrices_from_json(parse_json(R"({"dim": 2, "matrices": {"m": [[1,0]]}})")); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] {
          matrices_from_json(parse_json(R"({"dim": 1, "matrices": {"m": [[1e999, 0]]}})"));
        }) == ErrorKind::Parse);
  CHECK(kind_of([&] { doc.at("missing"); }) == ErrorKind::UnknownLabel);
}

TEST_CASE("context and state documents") {
  const auto j = load_json_file(std::string(QLOGIC_DATA_DIR) + "/m2_contexts.json");
  const auto m = matrices_from_json(j);
  const auto c = contexts_from_json(j);
  CHECK(c.names == std::vector<std::string>{"C_z", "C_x"});
  const auto P = build_context_poset(m, c);
  CHECK(P.size() == 3);
  const auto rho = state_matrix_from_json(load_json_file(std::string(QLOGIC_DATA_DIR) + "/m2_state_up.json"));
  CHECK(rho(0, 0) == Complex(1, 0));
  const auto pure = state_matrix_from_json(parse_json(R"({"dim": 2, "vector": [[1,0],[1,0]]})"));
  CHECK(std::abs(pure(0, 1).real() - 0.5) < 1e-12);
}
