#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ellann/group_ring.hpp"

namespace ellann {

/* Optional arithmetic side data carried by an instance.  Everything is
 * exact; the q list gives one rational prime per ramified place. */
struct AnalyticData {
  std::optional<Int> h, w_K, f_I, h_L, h_FI;
  std::optional<std::vector<Int>> q;
};

/* Axiomatic ramification data: the abelian frame G = prod T_j with
 * |T_j| = t_j, the restriction map onto a cyclic p-power quotient of
 * order p^k encoded by unit multipliers, and per-place splitting
 * elements lambda_j given as exponent vectors.  Indices are in input
 * order here; validate() produces the canonically ordered view. */
struct RamificationInstance {
  Int p = 0, k = 0;
  std::vector<Int> t;
  std::vector<Int> res_units; // empty means all ones
  std::vector<std::vector<Int>> lambda;
  std::optional<AnalyticData> analytic;
  std::size_t s() const { return t.size(); }
};

RamificationInstance instance_from_json_text(const std::string& text);
RamificationInstance instance_from_file(const std::string& path);

/* Validated instance in canonical index order (stable sort by n_j
 * ascending, then t_j descending, so position 1 carries a full-order
 * component).  Carries the mixed-radix element calculus for G. */
struct GroupData {
  unsigned long p = 0, k = 0, pk = 1, s = 0;
  std::vector<unsigned long> t;
  std::vector<unsigned long> res_units;
  std::vector<std::vector<unsigned long>> lambda; // canonical-order vectors
  std::vector<unsigned long> n;                   // decomposition indices
  std::vector<std::size_t> perm;                  // canonical pos -> input pos
  std::optional<AnalyticData> analytic;

  unsigned long order = 1;            // |G|
  std::vector<unsigned long> stride;  // big-endian mixed radix: lex order = index order
  std::vector<unsigned long> shat;    // chosen lift of the quotient generator
  GroupRing gamma;                    // Z[<s>] of order p^k

  // element calculus: exponent vectors of length s, component j mod t_j
  std::size_t idx(const std::vector<unsigned long>& a) const;
  std::vector<unsigned long> elem(std::size_t index) const;
  std::vector<unsigned long> mul(const std::vector<unsigned long>& a,
                                 const std::vector<unsigned long>& b) const;
  std::vector<unsigned long> gen(std::size_t j) const; // g_j (0-based j)
  std::vector<unsigned long> inv(const std::vector<unsigned long>& a) const;
  unsigned long res(const std::vector<unsigned long>& a) const; // value in [0, p^k)
};

// Full list of violated structural hypotheses (empty when valid).
std::vector<std::string> validate_errors(const RamificationInstance& inst);

// Canonicalize and derive, or fail with every violation listed.
GroupData validate(const RamificationInstance& inst);

// Index in Z/p^k of the subgroup generated by res(lambda_j) and res(T_j).
unsigned long decomposition_index(const GroupData& G, std::size_t j);

// M_i = {j : t_j > p^{k-i}} for i = 1..k, as 0-based index sets.
std::vector<std::vector<std::size_t>> ramified_sets(const GroupData& G);

/* Jump data of the tower: mu_i per level, the declared jumps
 * {0, k} plus every i with mu_i < mu_{i+1}, the largest jump r below k,
 * i* = max{i : |M_i| <= 1} and the index p^{k-i*} it controls. */
struct JumpProfile {
  std::vector<unsigned long> mu; // mu_1..mu_k
  std::vector<unsigned long> jumps;
  unsigned long r = 0;
  unsigned long i_star = 0;
  Int L_index; // p^{k - i*}
};
JumpProfile jump_profile(const GroupData& G);

// Independent characterization r' = k - log_p max{t_j : n_j = n_s};
// must agree with jump_profile (MODEL_DISCREPANCY otherwise).
unsigned long r_characterization(const GroupData& G);

/* Smallest c >= 1 with -c*n_j = res(lambda_j) mod p^i at the level
 * i = k - log_p t_j where the j-th place becomes unramified; c = 1 when
 * i = 0.  Always prime to p (checked). */
unsigned long compute_c(const GroupData& G, std::size_t j);

/* Level slice: the ramified set, the kernel of res mod p^i (as subgroup
 * generators), the level norm parameter, and the two group-ring
 * multipliers used to pass between the level unit and its root. */
struct LevelData {
  unsigned long i = 0;
  std::vector<std::size_t> M;
  unsigned long n_param = 1;
  std::vector<std::vector<unsigned long>> B_gens;
  GrElem y, z;
  std::vector<unsigned long> c; // all c_j, canonical order
};
LevelData level_data(const GroupData& G, unsigned long i);

// Generators of ker(res mod p^i); i = 0 gives all of G.
std::vector<std::vector<unsigned long>> res_kernel_gens(const GroupData& G, unsigned long i);

// Enumerate the subgroup generated by the given elements (indices into
// the mixed-radix order, sorted).
std::vector<std::size_t> subgroup_elements(const GroupData& G,
                                           const std::vector<std::vector<unsigned long>>& gens);

} // namespace ellann
