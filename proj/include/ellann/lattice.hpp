#pragma once

#include <optional>
#include <vector>

#include "ellann/group_ring.hpp"
#include "ellann/intmat.hpp"

namespace ellann {

/* Sublattice of Z^ambient.  The basis is kept in Hermite normal form
 * with zero rows dropped, so two lattices are equal iff their basis
 * matrices are equal. */
struct Lattice {
  std::size_t ambient = 0;
  Mat basis; // rank x ambient, rows independent, HNF

  std::size_t rank() const { return basis.nr; }
  bool operator==(const Lattice&) const = default;
};

Lattice lattice_from_rows(std::size_t ambient, const Mat& rows);
Lattice full_lattice(std::size_t n);

// Does v lie in L?  coords additionally recovers the (unique) basis
// coefficients.
bool lat_contains(const Lattice& L, const std::vector<Int>& v);
std::optional<std::vector<Int>> lat_coords(const Lattice& L, const std::vector<Int>& v);
bool lat_subset(const Lattice& inner, const Lattice& outer);

// Smallest lattice containing L whose quotient in its Q-span is
// torsion-free: {x : m*x in L for some m >= 1}.
Lattice saturate(const Lattice& L);

/* Index [outer : inner].  Requires inner ⊆ outer (NOT_SUBLATTICE
 * otherwise); infinite exactly when the ranks differ. */
struct LatIndex {
  bool finite = true;
  Int value = 1;
  bool operator==(const LatIndex&) const = default;
};
LatIndex lattice_index(const Lattice& inner, const Lattice& outer);

Lattice lat_sum(const Lattice& a, const Lattice& b);
Lattice lat_intersect(const Lattice& a, const Lattice& b);

/* A lattice together with commuting finite-order integer matrices
 * acting on the ambient space (row convention, v -> v*g) that map the
 * lattice into itself. */
struct ActionLattice {
  Lattice lattice;
  std::vector<Mat> generators;
};

// Enforce the type's invariants (stability, commutation, finite order
// bounded by max_order); INVALID_INPUT on violation.
void validate_action(const ActionLattice& M, unsigned long max_order);

/* Generating set of the module of equivariant maps M -> target, where
 * the j-th generator of M corresponds to the j-th action matrix on the
 * target's coefficient space.  Each map is returned as a rank x dim
 * matrix sending basis coordinates to target coefficients; the returned
 * maps generate all equivariant maps over Z (hence over the acting
 * ring). */
std::vector<Mat> hom_module(const ActionLattice& M, const std::vector<Mat>& target_actions);

// Hom into the group ring acted on by s, for a lattice with a single
// generator matrix realizing s.
std::vector<Mat> hom_module(const ActionLattice& M, const GroupRing& R);

// Hom into a quotient ring, same convention.
std::vector<Mat> hom_module(const ActionLattice& M, const QuotRing& Q);

} // namespace ellann
