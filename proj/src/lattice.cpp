#include "ellann/lattice.hpp"

#include "ellann/errors.hpp"

namespace ellann {

Lattice lattice_from_rows(std::size_t ambient, const Mat& rows) {
  check(rows.nr == 0 || rows.nc == ambient, errc::invalid_input, "row length differs from ambient rank");
  HnfResult h = hnf(rows);
  Lattice L;
  L.ambient = ambient;
  L.basis = Mat(h.rank, ambient);
  for (std::size_t i = 0; i < h.rank; ++i) L.basis.set_row(i, h.H.row(i));
  return L;
}

Lattice full_lattice(std::size_t n) { return Lattice{n, Mat::identity(n)}; }

std::optional<std::vector<Int>> lat_coords(const Lattice& L, const std::vector<Int>& v) {
  check(v.size() == L.ambient, errc::invalid_input, "vector length differs from ambient rank");
  auto s = solve_integer(transpose(L.basis), v);
  if (!s) return std::nullopt;
  return s->x;
}

bool lat_contains(const Lattice& L, const std::vector<Int>& v) {
  return lat_coords(L, v).has_value();
}

bool lat_subset(const Lattice& inner, const Lattice& outer) {
  check(inner.ambient == outer.ambient, errc::invalid_input, "lattices live in different ambients");
  for (std::size_t i = 0; i < inner.rank(); ++i)
    if (!lat_contains(outer, inner.basis.row(i))) return false;
  return true;
}

Lattice saturate(const Lattice& L) {
  /* SNF of the basis: B = Pinv * D * Qinv, so over Q the row span of B
   * is the span of the first rank rows of Qinv.  Those rows are part of
   * a Z-basis of the ambient (Qinv is unimodular), hence they span
   * exactly the saturation. */
  SnfResult s = snf(L.basis);
  Mat rows(s.rank, L.ambient);
  for (std::size_t i = 0; i < s.rank; ++i) rows.set_row(i, s.Qinv.row(i));
  return lattice_from_rows(L.ambient, rows);
}

LatIndex lattice_index(const Lattice& inner, const Lattice& outer) {
  check(inner.ambient == outer.ambient, errc::invalid_input, "lattices live in different ambients");
  Mat coords(inner.rank(), outer.rank());
  for (std::size_t i = 0; i < inner.rank(); ++i) {
    auto c = lat_coords(outer, inner.basis.row(i));
    check(c.has_value(), errc::not_sublattice, "index requested for a lattice that is not contained");
    coords.set_row(i, *c);
  }
  if (inner.rank() < outer.rank()) return LatIndex{false, Int(0)};
  // equal ranks: index is |det| of the change of basis
  return LatIndex{true, abs(det(coords))};
}

Lattice lat_sum(const Lattice& a, const Lattice& b) {
  check(a.ambient == b.ambient, errc::invalid_input, "lattices live in different ambients");
  return lattice_from_rows(a.ambient, vstack(a.basis, b.basis));
}

Lattice lat_intersect(const Lattice& a, const Lattice& b) {
  check(a.ambient == b.ambient, errc::invalid_input, "lattices live in different ambients");
  /* (u, v) in the left kernel of [A; B] means u*A = -v*B, and every
   * intersection vector arises this way. */
  Mat stacked = vstack(a.basis, b.basis);
  Mat k = left_kernel(stacked);
  Mat rows(k.nr, a.ambient);
  for (std::size_t i = 0; i < k.nr; ++i) {
    std::vector<Int> kr = k.row(i);
    std::vector<Int> u(kr.begin(), kr.begin() + a.rank());
    rows.set_row(i, vec_mat(u, a.basis));
  }
  return lattice_from_rows(a.ambient, rows);
}

void validate_action(const ActionLattice& M, unsigned long max_order) {
  const std::size_t n = M.lattice.ambient;
  for (const Mat& g : M.generators) {
    check(g.nr == n && g.nc == n, errc::invalid_input, "action matrix size differs from ambient rank");
    for (std::size_t i = 0; i < M.lattice.rank(); ++i)
      check(lat_contains(M.lattice, vec_mat(M.lattice.basis.row(i), g)), errc::invalid_input,
            "action does not stabilize the lattice");
    bool finite = false;
    Mat pw = g;
    for (unsigned long e = 1; e <= max_order; ++e) {
      if (pw == Mat::identity(n)) {
        finite = true;
        break;
      }
      pw = mat_mul(pw, g);
    }
    check(finite, errc::invalid_input, "action generator has order beyond the stated bound");
  }
  for (std::size_t i = 0; i < M.generators.size(); ++i)
    for (std::size_t j = i + 1; j < M.generators.size(); ++j)
      check(mat_mul(M.generators[i], M.generators[j]) == mat_mul(M.generators[j], M.generators[i]),
            errc::invalid_input, "action generators do not commute");
}

std::vector<Mat> hom_module(const ActionLattice& M, const std::vector<Mat>& target_actions) {
  check(M.generators.size() == target_actions.size(), errc::invalid_input,
        "generator count differs between module and target");
  const std::size_t r = M.lattice.rank();
  if (r == 0) return {};
  const std::size_t m = target_actions.empty() ? 0 : target_actions[0].nr;
  check(m > 0, errc::invalid_input, "target ring has no coefficients");

  /* Unknowns: the images F[j][l] of the basis rows, flattened row-major.
   * For each generator g: coords(b_i * g) gives c with b_i*g = c*B, and
   * equivariance says sum_j c_j F[j] = F[i] * A_g, one linear equation
   * per (i, l). */
  Mat eqs(M.generators.size() * r * m, r * m);
  std::size_t row = 0;
  for (std::size_t gi = 0; gi < M.generators.size(); ++gi) {
    const Mat& A = target_actions[gi];
    check(A.nr == m && A.nc == m, errc::invalid_input, "target action size mismatch");
    for (std::size_t i = 0; i < r; ++i) {
      auto c = lat_coords(M.lattice, vec_mat(M.lattice.basis.row(i), M.generators[gi]));
      check(c.has_value(), errc::invalid_input, "action does not stabilize the lattice");
      for (std::size_t l = 0; l < m; ++l, ++row) {
        for (std::size_t j = 0; j < r; ++j) eqs.at(row, j * m + l) += (*c)[j];
        for (std::size_t u = 0; u < m; ++u) eqs.at(row, i * m + u) -= A.at(u, l);
      }
    }
  }
  auto sol = solve_integer(eqs, std::vector<Int>(eqs.nr, Int(0)));
  check(sol.has_value(), errc::internal, "homogeneous system must be solvable");
  std::vector<Mat> out;
  for (std::size_t t = 0; t < sol->kernel.nr; ++t) {
    Mat F(r, m);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < m; ++l) F.at(j, l) = sol->kernel.at(t, j * m + l);
    out.push_back(std::move(F));
  }
  return out;
}

std::vector<Mat> hom_module(const ActionLattice& M, const GroupRing& R) {
  return hom_module(M, std::vector<Mat>{gr_mult_matrix(R, gr_sigma(R, 1))});
}

std::vector<Mat> hom_module(const ActionLattice& M, const QuotRing& Q) {
  QuotElem x = quot_reduce(Q, gr_sigma(Q.base, 1));
  return hom_module(M, std::vector<Mat>{quot_mult_matrix(Q, x)});
}

} // namespace ellann
