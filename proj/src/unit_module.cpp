#include "ellann/unit_module.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ellann/errors.hpp"

namespace ellann {

namespace {

Mat from_rows(std::size_t nc, const std::vector<std::vector<Int>>& rows) {
  Mat m(rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

bool mat_is_zero(const Mat& m) {
  for (const Int& v : m.a)
    if (v != 0) return false;
  return true;
}

std::size_t bit(std::size_t j) { return std::size_t{1} << j; }

// Coset bookkeeping for one subset mask: the representative of g zeroes
// the masked components, and slots are numbered by increasing rep index.
void make_cosets(const GroupData& G, std::size_t mask, std::vector<std::size_t>& pos,
                 std::vector<std::size_t>& reps) {
  pos.assign(G.order, 0);
  reps.clear();
  for (std::size_t g = 0; g < G.order; ++g) {
    std::vector<unsigned long> a = G.elem(g);
    for (std::size_t j = 0; j < G.s; ++j)
      if (mask & bit(j)) a[j] = 0;
    std::size_t r = G.idx(a);
    if (r == g) {
      pos[g] = reps.size();
      reps.push_back(g);
    } else {
      pos[g] = pos[r]; // reps precede their cosets in index order
    }
  }
}

// Permutation of the free basis induced by left translation by h.
std::vector<std::size_t> free_perm(const SMModule& U, const std::vector<unsigned long>& h) {
  const GroupData& G = U.frame;
  std::size_t full = bit(G.s) - 1;
  std::vector<std::size_t> perm(U.free_rank);
  for (std::size_t J = 0; J < full; ++J) {
    for (std::size_t c = 0; c < U.coset_reps[J].size(); ++c) {
      auto hg = G.mul(h, G.elem(U.coset_reps[J][c]));
      perm[U.block_offset[J] + c] = U.block_offset[J] + U.coset_pos[J][G.idx(hg)];
    }
  }
  perm[U.xI_offset] = U.xI_offset;
  for (std::size_t j = 0; j < G.s; ++j) perm[U.e_offset + j] = U.e_offset + j;
  return perm;
}

Mat relation_rows(const SMModule& U) {
  const GroupData& G = U.frame;
  std::size_t full = bit(G.s) - 1;
  std::vector<std::vector<Int>> rows;
  for (std::size_t J = 0; J < full; ++J) {
    for (std::size_t j = 0; j < G.s; ++j) {
      if (J & bit(j)) continue;
      std::size_t Jj = J | bit(j);
      if (Jj == full) continue;
      // one row per coset of the enlarged stabilizer: both sides only
      // depend on g modulo T_{J+j}
      for (std::size_t c = 0; c < U.coset_reps[Jj].size(); ++c) {
        std::vector<Int> row(U.free_rank, Int(0));
        auto g = G.elem(U.coset_reps[Jj][c]);
        std::vector<unsigned long> step(G.s, 0);
        for (unsigned long a = 0; a < G.t[j]; ++a) {
          step[j] = a;
          auto gt = G.mul(g, step);
          row[U.block_offset[J] + U.coset_pos[J][G.idx(gt)]] += 1;
        }
        row[U.block_offset[Jj] + U.coset_pos[Jj][G.idx(g)]] -= 1;
        auto gl = G.mul(g, G.inv(G.lambda[j]));
        row[U.block_offset[Jj] + U.coset_pos[Jj][G.idx(gl)]] += 1;
        rows.push_back(std::move(row));
      }
    }
  }
  for (std::size_t j = 0; j < G.s; ++j) {
    // the scaled relation is translation-invariant: one row suffices
    std::vector<Int> row(U.free_rank, Int(0));
    std::size_t Imj = full ^ bit(j);
    std::vector<unsigned long> step(G.s, 0);
    for (unsigned long a = 0; a < G.t[j]; ++a) {
      step[j] = a;
      row[U.block_offset[Imj] + U.coset_pos[Imj][G.idx(step)]] += 1;
    }
    row[U.e_offset + j] -= Int(G.t[j]);
    rows.push_back(std::move(row));
  }
  return from_rows(U.free_rank, rows);
}

SMModule build_presented(const GroupData& frame) {
  SMModule U;
  U.frame = frame;
  const GroupData& G = U.frame;
  std::size_t nmask = bit(G.s), full = nmask - 1;

  U.block_offset.assign(nmask, 0);
  U.coset_pos.resize(nmask);
  U.coset_reps.resize(nmask);
  std::size_t off = 0;
  for (std::size_t J = 0; J < nmask; ++J) {
    make_cosets(G, J, U.coset_pos[J], U.coset_reps[J]);
    if (J == full) continue;
    U.block_offset[J] = off;
    off += U.coset_reps[J].size();
  }
  U.xI_offset = off;
  U.block_offset[full] = off;
  U.e_offset = off + 1;
  U.free_rank = U.e_offset + G.s;

  U.relations = relation_rows(U);
  SnfResult S = snf(U.relations);
  std::size_t rho = S.rank;
  U.rank = U.free_rank - rho;

  U.Qlast = Mat(U.free_rank, U.rank);
  for (std::size_t i = 0; i < U.free_rank; ++i)
    for (std::size_t j = 0; j < U.rank; ++j) U.Qlast.at(i, j) = S.Q.at(i, rho + j);
  U.QinvBottom = Mat(U.rank, U.free_rank);
  for (std::size_t i = 0; i < U.rank; ++i)
    for (std::size_t j = 0; j < U.free_rank; ++j) U.QinvBottom.at(i, j) = S.Qinv.at(rho + i, j);
  Mat QinvTop(rho, U.free_rank);
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < U.free_rank; ++j) QinvTop.at(i, j) = S.Qinv.at(i, j);

  for (std::size_t j = 0; j < G.s; ++j) {
    auto perm = free_perm(U, G.gen(j));
    Mat PQ(U.free_rank, U.rank);
    for (std::size_t i = 0; i < U.free_rank; ++i) PQ.set_row(i, U.Qlast.row(perm[i]));
    check(mat_is_zero(mat_mul(QinvTop, PQ)), errc::internal,
          "group action does not stabilize the relation span");
    U.act.push_back(mat_mul(U.QinvBottom, PQ));
  }

  Mat Cs = Mat::identity(U.rank);
  for (std::size_t j = 0; j < G.s; ++j) Cs = mat_mul(Cs, mat_pow(U.act[j], G.shat[j]));
  U.shat_pows.push_back(Mat::identity(U.rank));
  for (unsigned long e = 1; e < G.pk; ++e) U.shat_pows.push_back(mat_mul(U.shat_pows[e - 1], Cs));

  U.rho.resize(nmask);
  for (std::size_t J = 0; J < full; ++J) U.rho[J] = U.Qlast.row(U.block_offset[J]);
  U.rho[full] = U.Qlast.row(U.xI_offset);
  U.e.resize(G.s);
  for (std::size_t j = 0; j < G.s; ++j) U.e[j] = U.Qlast.row(U.e_offset + j);

  Mat orbit_rows(U.xI_offset, U.rank);
  for (std::size_t i = 0; i < U.xI_offset; ++i) orbit_rows.set_row(i, U.Qlast.row(i));
  U.orbit_part = lattice_from_rows(U.rank, orbit_rows);
  Mat e_rows(G.s, U.rank);
  for (std::size_t j = 0; j < G.s; ++j) e_rows.set_row(j, U.e[j]);
  U.e_span = lattice_from_rows(U.rank, e_rows);
  U.psi_part = lat_sum(U.orbit_part, U.e_span);

  // valuation functionals: on the free module, the indicator of the
  // block missing exactly place j plus the indicator of e_j
  U.functionals = Mat(G.s, U.rank);
  for (std::size_t j = 0; j < G.s; ++j) {
    std::vector<Int> f(U.free_rank, Int(0));
    std::size_t Imj = full ^ bit(j);
    for (std::size_t c = 0; c < U.coset_reps[Imj].size(); ++c)
      f[U.block_offset[Imj] + c] = 1;
    f[U.e_offset + j] = 1;
    for (std::size_t r = 0; r < U.relations.nr; ++r) {
      Int dot = 0;
      for (std::size_t cidx = 0; cidx < U.free_rank; ++cidx)
        dot += U.relations.at(r, cidx) * f[cidx];
      check(dot == 0, errc::internal, "valuation functional does not vanish on a relation row");
    }
    std::vector<Int> vf(U.rank, Int(0));
    for (std::size_t i = 0; i < U.rank; ++i)
      for (std::size_t cidx = 0; cidx < U.free_rank; ++cidx)
        vf[i] += U.QinvBottom.at(i, cidx) * f[cidx];
    U.functionals.set_row(j, vf);
  }

  if (U.rank != G.order + G.s) {
    U.rank_expected = false;
    U.diagnostics.push_back("DEGENERATE_LAMBDA: module rank " + std::to_string(U.rank) +
                            " differs from |G| + s = " + std::to_string(G.order + G.s) +
                            "; the splitting data collapses part of the presentation");
  }
  return U;
}

} // namespace

std::vector<Int> SMModule::quotient(const std::vector<Int>& f) const { return vec_mat(f, Qlast); }

std::vector<Int> SMModule::section(const std::vector<Int>& w) const {
  return vec_mat(w, QinvBottom);
}

Mat SMModule::element_action(const std::vector<unsigned long>& a) const {
  check(a.size() == frame.s, errc::invalid_input, "element has the wrong number of components");
  Mat m = Mat::identity(rank);
  for (std::size_t j = 0; j < frame.s; ++j) m = mat_mul(m, mat_pow(act[j], a[j] % frame.t[j]));
  return m;
}

Mat SMModule::gr_action(const GrElem& y) const {
  Mat m = Mat::zero(rank, rank);
  for (std::size_t e = 0; e < y.c.size(); ++e) {
    if (y.c[e] == 0) continue;
    m = mat_add(m, mat_scal(y.c[e], shat_pows[e % frame.pk]));
  }
  return m;
}

std::vector<Int> SMModule::apply_gr(const GrElem& y, const std::vector<Int>& x) const {
  std::vector<Int> acc(rank, Int(0));
  for (std::size_t e = 0; e < y.c.size(); ++e) {
    if (y.c[e] == 0) continue;
    acc = vec_add(acc, vec_scal(y.c[e], vec_mat(x, shat_pows[e % frame.pk])));
  }
  return acc;
}

std::vector<Int> SMModule::coset_vector(std::size_t mask,
                                        const std::vector<unsigned long>& g) const {
  check(mask < coset_pos.size() && mask + 1 != coset_pos.size(), errc::invalid_input,
        "coset vectors live in the proper-subset blocks");
  return Qlast.row(block_offset[mask] + coset_pos[mask][frame.idx(g)]);
}

SMModule build_U(const GroupData& frame) { return build_presented(frame); }

std::uint64_t relation_checksum(const SMModule& U) {
  Lattice sat = saturate(lattice_from_rows(U.free_rank, U.relations));
  std::string text = std::to_string(sat.basis.nr) + "x" + std::to_string(sat.basis.nc);
  for (const Int& v : sat.basis.a) {
    text += ',';
    text += v.get_str();
  }
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : text) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

QuotientModule project_Uprime(const SMModule& U) {
  Lattice E = saturate(U.e_span);
  SnfResult S = snf(E.basis);
  std::size_t rho = S.rank;
  QuotientModule P;
  P.rank = U.rank - rho;
  P.Qlast = Mat(U.rank, P.rank);
  for (std::size_t i = 0; i < U.rank; ++i)
    for (std::size_t j = 0; j < P.rank; ++j) P.Qlast.at(i, j) = S.Q.at(i, rho + j);
  P.QinvBottom = Mat(P.rank, U.rank);
  for (std::size_t i = 0; i < P.rank; ++i)
    for (std::size_t j = 0; j < U.rank; ++j) P.QinvBottom.at(i, j) = S.Qinv.at(rho + i, j);
  Mat QinvTop(rho, U.rank);
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < U.rank; ++j) QinvTop.at(i, j) = S.Qinv.at(i, j);
  for (const Mat& A : U.act) {
    Mat AQ = mat_mul(A, P.Qlast);
    check(mat_is_zero(mat_mul(QinvTop, AQ)), errc::internal,
          "group action does not stabilize the saturated e-span");
    P.act.push_back(mat_mul(P.QinvBottom, AQ));
  }
  P.rho.resize(U.rho.size());
  for (std::size_t J = 0; J < U.rho.size(); ++J) P.rho[J] = vec_mat(U.rho[J], P.Qlast);
  return P;
}

Lattice fixed_sublattice(const SMModule& U, const std::vector<std::vector<unsigned long>>& H_gens,
                         const Lattice& W) {
  Lattice L = W;
  for (const auto& h : H_gens) {
    Mat A = mat_sub(U.element_action(h), Mat::identity(U.rank));
    Lattice K = lattice_from_rows(U.rank, left_kernel(A));
    L = lat_intersect(L, K);
  }
  return L;
}

std::vector<Int> target_vector(const SMModule& U, unsigned long level, TargetConvention conv) {
  const GroupData& G = U.frame;
  LevelData lv = level_data(G, level);
  std::size_t full = bit(G.s) - 1;
  std::size_t Mmask = 0;
  for (std::size_t j : lv.M) Mmask |= bit(j);
  std::size_t Jmask = full ^ Mmask;
  check(Jmask != full, errc::internal, "level has an empty ramified set");

  std::vector<std::size_t> kernel = subgroup_elements(G, lv.B_gens);
  std::vector<Int> target(U.rank, Int(0));
  if (conv == TargetConvention::orbit_sum) {
    for (std::size_t b : kernel)
      target = vec_add(target, U.Qlast.row(U.block_offset[Jmask] + U.coset_pos[Jmask][b]));
  } else {
    std::set<std::size_t> slots;
    for (std::size_t b : kernel) slots.insert(U.coset_pos[Jmask][b]);
    for (std::size_t c : slots) target = vec_add(target, U.Qlast.row(U.block_offset[Jmask] + c));
  }

  GrElem N = norm_element(G.gamma, lv.n_param);
  std::vector<Int> img = U.apply_gr(N, target);
  if (lv.M.size() >= 2) {
    check(vec_is_zero(img), errc::model_discrepancy,
          "level norm does not annihilate the level target");
  } else {
    // a lone ramified place is not norm-killed: the norm sum runs into
    // the boundary relation and lands on that place's generator
    std::size_t j = lv.M[0];
    Int c = valuation(U, j, img);
    check(c > 0 && img == vec_scal(c, U.e[j]), errc::model_discrepancy,
          "singleton level norm must land on the place generator");
  }
  return target;
}

Lattice kernel_of_norm(const SMModule& U, const Lattice& W, unsigned long n_param) {
  for (std::size_t i = 0; i < W.rank(); ++i)
    check(lat_contains(W, vec_mat(W.basis.row(i), U.shat_pows[1])), errc::invalid_input,
          "norm kernels require a lift-stable sublattice");
  Mat Nmat = U.gr_action(norm_element(U.frame.gamma, n_param));
  Mat A = mat_mul(W.basis, Nmat);
  Mat K = left_kernel(A);
  return lattice_from_rows(U.rank, mat_mul(K, W.basis));
}

Int valuation(const SMModule& U, std::size_t j, const std::vector<Int>& x) {
  check(j < U.frame.s, errc::invalid_input, "valuation index out of range");
  std::vector<Int> f = U.functionals.row(j);
  Int dot = 0;
  for (std::size_t i = 0; i < U.rank; ++i) dot += f[i] * x[i];
  return dot;
}

bool is_unit(const SMModule& U, const std::vector<Int>& x) {
  for (std::size_t j = 0; j < U.frame.s; ++j)
    if (valuation(U, j, x) != 0) return false;
  return true;
}

HomSweepReport hom_sweep(const SMModule& U, const std::vector<std::vector<unsigned long>>& B_gens,
                         const std::vector<Int>& w) {
  const GroupRing& R = U.frame.gamma;
  Lattice UB = fixed_sublattice(U, B_gens, full_lattice(U.rank));
  auto cw = lat_coords(UB, w);
  check(cw.has_value(), errc::invalid_input, "sweep point is not fixed by the given subgroup");

  ActionLattice MA{UB, {U.shat_pows[1]}};
  std::vector<Mat> gens = hom_module(MA, R);

  GrElem one_minus_s = gr_sub(gr_one(R), gr_sigma(R, 1));
  GrElem ideal_gen = gr_one(R);
  for (std::size_t j = 0; j < U.frame.s; ++j)
    ideal_gen = gr_mul(R, ideal_gen, gr_sub(gr_one(R), gr_sigma(R, U.frame.n[j])));

  HomSweepReport rep;
  for (const Mat& phi : gens) {
    HomSweepEntry ent;
    ent.phi = phi;
    ent.value = gr_mul(R, one_minus_s, GrElem{vec_mat(*cw, phi)});
    auto wit = gr_divides(R, ideal_gen, ent.value);
    ent.pass = wit.has_value();
    if (wit) ent.witness = *wit;
    rep.all_pass = rep.all_pass && ent.pass;
    rep.entries.push_back(std::move(ent));
  }
  return rep;
}

std::optional<RootCertificate> solve_root(const SMModule& U, const Lattice& M, const GrElem& y,
                                          const std::vector<Int>& target, unsigned long n_param,
                                          unsigned long level) {
  const GroupData& G = U.frame;
  check(level >= 1 && level <= G.k, errc::invalid_input, "level out of range");
  check(lat_contains(M, target), errc::invalid_input,
        "target does not lie in the supplied module");
  // the module must live at the requested level: the lift raised to
  // p^level acts trivially on it
  unsigned long pl = 1;
  for (unsigned long i = 0; i < level; ++i) pl *= G.p;
  Mat fix = U.shat_pows[pl % G.pk];
  for (std::size_t i = 0; i < M.rank(); ++i) {
    std::vector<Int> r = M.basis.row(i);
    check(vec_mat(r, fix) == r, errc::invalid_input, "module is not fixed at the requested level");
  }

  // level quotient ring and the image of the multiplier there
  GroupRing Rl(G.p, level);
  QuotRing Ql(Rl, n_param);
  GrElem yl = gr_zero(Rl);
  for (std::size_t e = 0; e < y.c.size(); ++e) yl.c[e % Rl.order] += y.c[e];
  QuotElem yq = quot_reduce(Ql, yl);
  check(quot_is_nonzerodivisor(Ql, yq), errc::invalid_input,
        "multiplier is a zero divisor in the level quotient ring");

  // direct integer solve inside M; the multiplier must act injectively,
  // which also makes the solution unique
  Mat A = mat_mul(M.basis, U.gr_action(y));
  check(left_kernel(A).nr == 0, errc::model_discrepancy,
        "multiplier fails to act injectively on the module");
  auto sol = solve_integer(transpose(A), target);

  // independent certificate: target is divisible by y inside M exactly
  // when every equivariant map M -> level ring sends it into y * ring
  ActionLattice MA{M, {U.shat_pows[1]}};
  std::vector<Mat> gens = hom_module(MA, Ql);
  auto tc = lat_coords(M, target);
  bool certified = true;
  std::vector<HomEvidence> evidence;
  for (const Mat& phi : gens) {
    HomEvidence ev;
    ev.phi = phi;
    ev.value = QuotElem{vec_mat(*tc, phi)};
    auto wit = quot_divides(Ql, yq, ev.value);
    if (wit)
      ev.witness = *wit;
    else
      certified = false;
    evidence.push_back(std::move(ev));
  }
  check(sol.has_value() == certified, errc::internal,
        "direct solve and membership certificate disagree");
  if (!sol) return std::nullopt;

  RootCertificate cert;
  cert.level = level;
  cert.y = y;
  cert.target = target;
  cert.delta = vec_mat(sol->x, M.basis);
  cert.hom_evidence = std::move(evidence);
  check(U.apply_gr(y, cert.delta) == target, errc::internal,
        "solved root does not reproduce the target");
  check(is_unit(U, cert.delta), errc::model_discrepancy, "root fails the unit criterion");
  return cert;
}

bool verify_delta_identity(const SMModule& U, const RootCertificate& cert, const LevelData& lv) {
  const GroupData& G = U.frame;
  check(lv.M.size() >= 2, errc::invalid_input,
        "the root scaling identity needs at least two ramified places at the level");
  GrElem D = gr_one(G.gamma);
  Int r = 1;
  for (std::size_t idx = 1; idx + 1 < lv.M.size(); ++idx) {
    std::size_t j = lv.M[idx];
    D = gr_mul(G.gamma, D, delta_twisted(G.gamma, lv.c[j], G.n[j]));
    r *= Int(G.pk / G.n[j]);
  }
  if (lv.M.size() % 2 != 0) r = -r;
  return U.apply_gr(D, cert.target) == vec_scal(r, cert.delta);
}

SMModule build_Uq(const GroupData& frame, unsigned long m,
                  const std::vector<unsigned long>& lambda_extra) {
  auto e = exact_plog(Int(m), Int(frame.p));
  check(e.has_value() && *e >= 1, errc::invalid_input,
        "extension order must be a positive power of p");
  check(lambda_extra.size() == frame.s, errc::invalid_input,
        "extension splitting element has the wrong number of components");
  check(frame.res(lambda_extra) == 0, errc::invalid_input,
        "extension splitting element must restrict trivially");

  GroupData Gq = frame;
  Gq.s = frame.s + 1;
  Gq.t.push_back(m);
  Gq.res_units.push_back(0); // the new factor restricts trivially
  for (auto& lam : Gq.lambda) lam.push_back(0);
  std::vector<unsigned long> lam_ext = lambda_extra;
  lam_ext.push_back(0);
  Gq.lambda.push_back(lam_ext);
  Gq.n.push_back(Gq.pk); // trivial restriction: formally full index
  Gq.perm.push_back(frame.s);
  Gq.analytic.reset();
  Gq.order = frame.order * m;
  Gq.stride.assign(Gq.s, 1);
  for (std::size_t j = Gq.s - 1; j > 0; --j) Gq.stride[j - 1] = Gq.stride[j] * Gq.t[j];
  Gq.shat = frame.shat;
  Gq.shat.push_back(0);

  SMModule Uq = build_presented(Gq);
  Int stable = ipow(Int(frame.p), frame.k * frame.s);
  if (Int(m) % stable != 0)
    Uq.diagnostics.push_back("extension order m is not a multiple of p^(k*s); "
                             "stability of the extension is not guaranteed");
  return Uq;
}

ChiEmbeddings chi_embeddings(const SMModule& U, const QuotientModule& Uprime,
                             const SMModule& Uq) {
  const GroupData& G = U.frame;
  const GroupData& Gq = Uq.frame;
  check(Gq.s == G.s + 1, errc::invalid_input, "extension frame does not extend the base frame");
  std::size_t full = bit(G.s) - 1;
  std::size_t extra = bit(G.s);

  auto embed = [&](std::size_t gidx) {
    std::vector<unsigned long> a = G.elem(gidx);
    a.push_back(0);
    return Gq.idx(a);
  };

  // chi at the free level: x_J -> x~_{J + extra}, e_j -> e~_j
  Mat XF(U.free_rank, Uq.rank);
  for (std::size_t J = 0; J < full; ++J) {
    std::size_t Jq = J | extra;
    for (std::size_t c = 0; c < U.coset_reps[J].size(); ++c) {
      std::size_t g = embed(U.coset_reps[J][c]);
      XF.set_row(U.block_offset[J] + c,
                 Uq.Qlast.row(Uq.block_offset[Jq] + Uq.coset_pos[Jq][g]));
    }
  }
  XF.set_row(U.xI_offset, Uq.Qlast.row(Uq.xI_offset));
  for (std::size_t j = 0; j < G.s; ++j)
    XF.set_row(U.e_offset + j, Uq.Qlast.row(Uq.e_offset + j));

  // chi' at the free level: x_J -> x~_J, x_I -> the identity coset of
  // the x~_I block, e_j -> 0
  Mat XFp = Mat::zero(U.free_rank, Uq.rank);
  for (std::size_t J = 0; J < full; ++J) {
    for (std::size_t c = 0; c < U.coset_reps[J].size(); ++c) {
      std::size_t g = embed(U.coset_reps[J][c]);
      XFp.set_row(U.block_offset[J] + c,
                  Uq.Qlast.row(Uq.block_offset[J] + Uq.coset_pos[J][g]));
    }
  }
  XFp.set_row(U.xI_offset, Uq.Qlast.row(Uq.block_offset[full]));

  // well-definedness: every base relation must map into the extension's
  // relation span (i.e. to zero in its quotient coordinates)
  for (std::size_t r = 0; r < U.relations.nr; ++r) {
    std::vector<Int> row = U.relations.row(r);
    check(vec_is_zero(vec_mat(row, XF)), errc::model_discrepancy,
          "base relation is not respected by the extension embedding");
    check(vec_is_zero(vec_mat(row, XFp)), errc::model_discrepancy,
          "base relation is not respected by the co-trivial embedding");
  }

  ChiEmbeddings out;
  out.chi = mat_mul(U.QinvBottom, XF);
  Mat chi_on_U = mat_mul(U.QinvBottom, XFp);
  for (std::size_t i = 0; i < U.e_span.rank(); ++i)
    check(vec_is_zero(vec_mat(U.e_span.basis.row(i), chi_on_U)), errc::internal,
          "co-trivial embedding fails to kill the e-span");
  out.chi_prime = mat_mul(Uprime.QinvBottom, chi_on_U);

  check(hnf(out.chi).rank == U.rank, errc::model_discrepancy,
        "extension embedding is not injective");
  check(hnf(out.chi_prime).rank == Uprime.rank, errc::model_discrepancy,
        "co-trivial embedding is not injective");
  for (std::size_t j = 0; j < G.s; ++j) {
    check(mat_mul(U.act[j], out.chi) == mat_mul(out.chi, Uq.act[j]), errc::model_discrepancy,
          "extension embedding does not commute with the base action");
    check(mat_mul(Uprime.act[j], out.chi_prime) == mat_mul(out.chi_prime, Uq.act[j]),
          errc::model_discrepancy,
          "co-trivial embedding does not commute with the base action");
  }
  return out;
}

std::optional<RootCertificate> solve_beta(const SMModule& Uq, const GroupData& base) {
  const GroupRing& R = base.gamma;
  LevelData lv = level_data(base, base.k);

  // multiplier (1 - s) * y and the kernel-sum target in the empty block
  GrElem y_eff = gr_mul(R, gr_sub(gr_one(R), gr_sigma(R, 1)), lv.y);

  // the restriction kernel of the extended frame contains the whole new
  // factor (its res unit is 0); only the full-kernel sum is norm-killed
  std::vector<std::vector<unsigned long>> B_ext = res_kernel_gens(Uq.frame, base.k);
  Lattice W = fixed_sublattice(Uq, B_ext, Uq.psi_part);
  Lattice M = kernel_of_norm(Uq, W, lv.n_param);

  std::vector<std::size_t> kernel = subgroup_elements(Uq.frame, B_ext);
  std::vector<Int> target(Uq.rank, Int(0));
  for (std::size_t b : kernel)
    target = vec_add(target, Uq.Qlast.row(Uq.block_offset[0] + Uq.coset_pos[0][b]));

  auto cert = solve_root(Uq, M, y_eff, target, lv.n_param, base.k);
  if (!cert) return std::nullopt;

  // scaling identities pinning the solution: with D_j the twisted weight
  // sums over the interior places and r the matching power product,
  //   r (1-s) delta = (-1)^s (prod D_j) target
  //   p^k r delta   = (-1)^{s+1} (D_1 prod D_j) target
  GrElem D = gr_one(R);
  Int r = 1;
  for (std::size_t idx = 1; idx + 1 < lv.M.size(); ++idx) {
    std::size_t j = lv.M[idx];
    D = gr_mul(R, D, delta_twisted(R, lv.c[j], base.n[j]));
    r *= Int(base.pk / base.n[j]);
  }
  Int sign = (base.s % 2 != 0) ? Int(-1) : Int(1);
  GrElem one_minus_s = gr_sub(gr_one(R), gr_sigma(R, 1));
  std::vector<Int> lhs1 = vec_scal(r, Uq.apply_gr(one_minus_s, cert->delta));
  std::vector<Int> rhs1 = vec_scal(sign, Uq.apply_gr(D, cert->target));
  check(lhs1 == rhs1, errc::model_discrepancy,
        "extension root fails the first scaling identity");

  std::size_t j0 = lv.M[0];
  GrElem Dfull = gr_mul(R, delta_twisted(R, lv.c[j0], base.n[j0]), D);
  std::vector<Int> lhs2 = vec_scal(Int(base.pk) * r, cert->delta);
  std::vector<Int> rhs2 = vec_scal(-sign, Uq.apply_gr(Dfull, cert->target));
  check(lhs2 == rhs2, errc::model_discrepancy,
        "extension root fails the second scaling identity");
  return cert;
}

} // namespace ellann
