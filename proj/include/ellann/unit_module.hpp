#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellann/group_ring.hpp"
#include "ellann/instance.hpp"
#include "ellann/lattice.hpp"

namespace ellann {

/* The presented module: torsion-free quotient of the free module
 *
 *   F = (+)_{J proper} Z[G/T_J] x_J  (+)  Z x_I  (+)  (+)_j Z e_j
 *
 * by the norm relations
 *   (R1)  s(T_j) x_J = (1 - lambda_j^{-1}) x_{J+j}   (J+j proper)
 *   (R2)  s(T_j) x_{I-j} = t_j e_j,
 *
 * realized on Z^rank with the group acting by integer matrices.  Subsets
 * J of the index set are bitmasks over the places.  Quotient coordinates
 * come from the Smith form of the relation rows: q(v) = v * Qlast, and
 * w * QinvBottom is a section of q. */
struct SMModule {
  GroupData frame;
  std::size_t free_rank = 0; // rank of F
  std::size_t rank = 0;      // rank of the quotient

  Mat Qlast;      // free_rank x rank, the quotient map
  Mat QinvBottom; // rank x free_rank, a section of it

  std::vector<Mat> act;       // one rank x rank matrix per frame generator
  std::vector<Mat> shat_pows; // powers of the lift's action, index = exponent

  std::vector<std::vector<Int>> rho; // per subset mask (identity-coset images)
  std::vector<std::vector<Int>> e;   // e_j images
  /* orbit_part spans the x_J orbits alone; psi_part adds the e images
   * and is the exact complement of the fixed line Z*rho_I (the orbit
   * span only contains each e_j scaled by t_j, so it sits inside
   * psi_part with index prod t_j). */
  Lattice orbit_part;
  Lattice psi_part;
  Lattice e_span;

  Mat relations;   // relation rows in F coordinates
  Mat functionals; // s x rank; row j is the j-th valuation functional

  bool rank_expected = true; // rank == |G| + s
  std::vector<std::string> diagnostics;

  // block bookkeeping (masks run over subsets of the places)
  std::vector<std::size_t> block_offset; // per proper mask; x_I and e after
  std::size_t xI_offset = 0, e_offset = 0;
  std::vector<std::vector<std::size_t>> coset_pos;  // per mask: group index -> slot
  std::vector<std::vector<std::size_t>> coset_reps; // per mask: slot -> rep index

  std::vector<Int> quotient(const std::vector<Int>& f) const;   // q
  std::vector<Int> section(const std::vector<Int>& w) const;

  // action of an arbitrary group element on quotient coordinates
  Mat element_action(const std::vector<unsigned long>& a) const;

  // action of a group-ring element through the chosen lift
  Mat gr_action(const GrElem& y) const;
  std::vector<Int> apply_gr(const GrElem& y, const std::vector<Int>& x) const;

  // image of the g-translate of the generator x_J (J a proper mask) in
  // quotient coordinates
  std::vector<Int> coset_vector(std::size_t mask, const std::vector<unsigned long>& g) const;
};

// Construct the module for a validated frame.  Rank != |G| + s is
// reported in diagnostics (degenerate splitting data), not fatal.
SMModule build_U(const GroupData& frame);

// Fingerprint of the canonical basis of the saturated relation lattice,
// for regression pinning across runs.
std::uint64_t relation_checksum(const SMModule& U);

/* Quotient of U by the saturated e-span; carries the induced action and
 * the images of the rho generators.  Coordinates relate to U's like U's
 * relate to F's. */
struct QuotientModule {
  std::size_t rank = 0;
  Mat Qlast, QinvBottom;
  std::vector<Mat> act;
  std::vector<std::vector<Int>> rho;
};
QuotientModule project_Uprime(const SMModule& U);

/* Sublattice of W fixed by every generator of H (given as frame
 * elements).  Empty generator list returns W itself. */
Lattice fixed_sublattice(const SMModule& U, const std::vector<std::vector<unsigned long>>& H_gens,
                         const Lattice& W);

/* The two readings of the level target sum over the res-kernel B_i.
 * The literal orbit sum counts each translate once per kernel element,
 * so vectors with stabilizers inside the kernel pick up a multiplicity;
 * the coset sum counts each distinct translate once. */
enum class TargetConvention { orbit_sum, coset_sum };

/* Sum of b * rho_{I - M_i} over b in B_i.  Verifies that the level norm
 * kills it (MODEL_DISCREPANCY otherwise). */
std::vector<Int> target_vector(const SMModule& U, unsigned long level,
                               TargetConvention conv = TargetConvention::orbit_sum);

// {x in W : N_n x = 0}, the norm acting through the lift.
Lattice kernel_of_norm(const SMModule& U, const Lattice& W, unsigned long n_param);

// j-th valuation of x; a unit is an x on which all s of them vanish.
Int valuation(const SMModule& U, std::size_t j, const std::vector<Int>& x);
bool is_unit(const SMModule& U, const std::vector<Int>& x);

/* Sweep over a generating set of the equivariant maps U^B -> Z[Gamma]:
 * for each generator phi, check (1-s) phi(w) lies in the ideal generated
 * by prod_j (1 - s^{n_j}) and record the witness. */
struct HomSweepEntry {
  Mat phi;        // fixed-sublattice coords -> group-ring coefficients
  GrElem value;   // (1-s) * phi(w)
  GrElem witness; // quotient when membership holds
  bool pass = false;
};
struct HomSweepReport {
  std::vector<HomSweepEntry> entries;
  bool all_pass = true;
};
HomSweepReport hom_sweep(const SMModule& U, const std::vector<std::vector<unsigned long>>& B_gens,
                         const std::vector<Int>& w);

/* Root extraction: the unique delta in M with y * delta = target,
 * certified two independent ways (direct integer solve, and the
 * membership criterion phi(target) in y*R for every generator phi of
 * the equivariant maps M -> R, R the level quotient ring). */
struct HomEvidence {
  Mat phi;
  QuotElem value;   // phi(target)
  QuotElem witness; // value / y in R
};
struct RootCertificate {
  unsigned long level = 0;
  GrElem y;
  std::vector<Int> target, delta;
  std::vector<HomEvidence> hom_evidence;
};
std::optional<RootCertificate> solve_root(const SMModule& U, const Lattice& M, const GrElem& y,
                                          const std::vector<Int>& target, unsigned long n_param,
                                          unsigned long level);

/* The root scaling identity: (prod over interior j of M_level of the
 * twisted weight sums) applied to the target equals (-1)^{|M|} * r *
 * delta with r = prod p^level / n_j.  True for certificates produced by
 * solve_root on norm-killed targets. */
bool verify_delta_identity(const SMModule& U, const RootCertificate& cert, const LevelData& lv);

/* The (s+1)-place extension: frame times a cyclic p-power factor of
 * order m whose restriction is trivial, with the supplied kernel
 * element as the new splitting datum. */
SMModule build_Uq(const GroupData& frame, unsigned long m,
                  const std::vector<unsigned long>& lambda_extra);

/* The two embeddings tying U and U' to the extension: chi sends rho_J to
 * rho~_{J + extra}, chi' sends rho'_J to rho~_J.  Both are verified to
 * respect the presentations, to be injective, and to commute with the
 * base group action. */
struct ChiEmbeddings {
  Mat chi;       // rank(U) x rank(Uq)
  Mat chi_prime; // rank(U') x rank(Uq)
};
ChiEmbeddings chi_embeddings(const SMModule& U, const QuotientModule& Uprime, const SMModule& Uq);

/* Solve (1 - s) y delta = s(B) rho~_empty inside the norm-kernel part of
 * the extension, and verify the two scaling identities that pin delta:
 * r (1-s) delta = (-1)^s (prod_{j=2}^{s-1} D_j) target and
 * p^k r delta = (-1)^{s+1} (prod_{j=1}^{s-1} D_j) target. */
std::optional<RootCertificate> solve_beta(const SMModule& Uq, const GroupData& base);

} // namespace ellann
