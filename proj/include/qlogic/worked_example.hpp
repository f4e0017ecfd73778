#pragma once

#include <cstddef>
#include <vector>

#include "qlogic/bohr.hpp"
#include "qlogic/lattice.hpp"

namespace qlogic {

/// The ten-element orthomodular lattice with atoms a, b, c, d, d' below
/// 1 and a, b, c pairwise orthogonal (a <= b', c' and so on). Labels are
/// 0 a b c d d' a' b' c' 1.
LatticePtr hasse_example();

/// The five blocks {0,1} and {0,i,i',1} for i in a, b, c, d over `X`
/// (which must be isomorphic to hasse_example()).
BlockPosetPtr four_block_family(const LatticePtr& X);

/// Unions of principal downsets generated by a subset of {a,b,c,d,d'} and a
/// subset of {a',b',c'}, without the empty union and with the full set added.
/// `image` maps hasse_example() ids into the target lattice.
std::vector<ElementSet> union_family(const FiniteOrtholattice& target,
                                     const std::vector<ElementId>& image);

/// Order isomorphism from the sections over four_block_family to the product
/// of the four 4-element blocks with a new top adjoined: the section with
/// f(B0) = 0 goes to its tuple, the all-1 section to the new top. The target
/// lattice is power_set_lattice(8) plus a top; ids follow that construction.
struct ProductPlusTop {
  FiniteOrtholattice target;
  std::vector<ElementId> image;  // enumeration index -> target id
};
ProductPlusTop product_plus_top(const BohrAlgebra& Y);

/// Pow(n) with one extra element above the top.
FiniteOrtholattice power_set_plus_top(std::size_t n);

}  // namespace qlogic
