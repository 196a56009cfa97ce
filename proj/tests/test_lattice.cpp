#include <random>

#include "doctest.h"
#include "ellann/errors.hpp"
#include "ellann/lattice.hpp"

using namespace ellann;

namespace {

Lattice scaled(std::size_t n, long c) { return lattice_from_rows(n, mat_scal(Int(c), Mat::identity(n))); }

} // namespace

TEST_CASE("saturation removes finite index") {
  Lattice L = lattice_from_rows(2, Mat{{2, 0}});
  CHECK(saturate(L) == lattice_from_rows(2, Mat{{1, 0}}));
  Lattice D = lattice_from_rows(2, Mat{{2, 2}});
  CHECK(saturate(D) == lattice_from_rows(2, Mat{{1, 1}}));
  CHECK(saturate(saturate(D)) == saturate(D));
  // already saturated stays put
  Lattice F = full_lattice(3);
  CHECK(saturate(F) == F);
}

TEST_CASE("lattice index: pinned cases") {
  CHECK(lattice_index(scaled(2, 3), full_lattice(2)) == LatIndex{true, Int(9)});
  Lattice L = lattice_from_rows(2, Mat{{1, 2}, {0, 5}});
  CHECK(lattice_index(L, L) == LatIndex{true, Int(1)});
  CHECK(lattice_index(lattice_from_rows(2, Mat{{1, 0}}), full_lattice(2)).finite == false);
  CHECK_THROWS_AS(lattice_index(lattice_from_rows(2, Mat{{1, 0}}), scaled(2, 2)), error);
}

TEST_CASE("lattice index is multiplicative along chains") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Mat b1(3, 3), c21(3, 3), c32(3, 3);
    do {
      for (auto& v : b1.a) v = d(rng);
    } while (det(b1) == 0);
    do {
      for (auto& v : c21.a) v = d(rng);
    } while (det(c21) == 0);
    do {
      for (auto& v : c32.a) v = d(rng);
    } while (det(c32) == 0);
    Lattice L1 = lattice_from_rows(3, b1);
    Lattice L2 = lattice_from_rows(3, mat_mul(c21, L1.basis));
    Lattice L3 = lattice_from_rows(3, mat_mul(c32, L2.basis));
    LatIndex i21 = lattice_index(L2, L1), i32 = lattice_index(L3, L2), i31 = lattice_index(L3, L1);
    CHECK(i31.value == i21.value * i32.value);
  }
}

TEST_CASE("sum and intersection") {
  CHECK(lat_intersect(scaled(2, 2), scaled(2, 3)) == scaled(2, 6));
  CHECK(lat_sum(scaled(2, 2), scaled(2, 3)) == full_lattice(2));
  // mixed ranks: the axes intersect trivially
  Lattice x = lattice_from_rows(2, Mat{{1, 0}});
  Lattice y = lattice_from_rows(2, Mat{{0, 1}});
  CHECK(lat_intersect(x, y).rank() == 0);
  CHECK(lat_sum(x, y) == full_lattice(2));
  // intersection sits inside both
  Lattice a = lattice_from_rows(2, Mat{{2, 1}, {0, 3}});
  Lattice b = lattice_from_rows(2, Mat{{1, 1}});
  Lattice c = lat_intersect(a, b);
  CHECK(lat_subset(c, a));
  CHECK(lat_subset(c, b));
  CHECK(c.rank() == 1);
}

TEST_CASE("membership and coordinates") {
  Lattice L = lattice_from_rows(3, Mat{{1, 2, 0}, {0, 4, 1}});
  std::vector<Int> v = vec_add(L.basis.row(0), vec_scal(Int(-3), L.basis.row(1)));
  auto c = lat_coords(L, v);
  REQUIRE(c.has_value());
  CHECK(vec_mat(*c, L.basis) == v);
  CHECK((*c)[0] == 1);
  CHECK((*c)[1] == -3);
  CHECK_FALSE(lat_contains(L, {Int(0), Int(0), Int(2)}));
}

TEST_CASE("action validation") {
  // cyclic shift on Z^3 stabilizes everything and has order 3
  Mat shift{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  ActionLattice M{full_lattice(3), {shift}};
  CHECK_NOTHROW(validate_action(M, 3));
  CHECK_THROWS_AS(validate_action(M, 2), error); // order bound too small
  // a lattice the shift does not stabilize
  ActionLattice bad{lattice_from_rows(3, Mat{{1, 0, 0}}), {shift}};
  CHECK_THROWS_AS(validate_action(bad, 3), error);
  ActionLattice nc{full_lattice(2), {Mat{{0, 1}, {1, 0}}, Mat{{1, 0}, {0, -1}}}};
  CHECK_THROWS_AS(validate_action(nc, 4), error); // reflections that do not commute
}

TEST_CASE("equivariant maps out of the regular module") {
  GroupRing R(3, 1);
  Mat S = gr_mult_matrix(R, gr_sigma(R, 1));
  ActionLattice M{full_lattice(3), {S}};
  std::vector<Mat> gens = hom_module(M, R);
  REQUIRE(gens.size() == 3); // free of rank 1 over the ring = rank p^k over Z
  // every generator is equivariant
  for (const Mat& F : gens)
    CHECK(mat_mul(S, F) == mat_mul(F, S));
  // the maps x -> x * s^j flatten to the powers of the shift; same span
  Mat got(gens.size(), 9), want(3, 9);
  for (std::size_t t = 0; t < gens.size(); ++t)
    for (std::size_t i = 0; i < 9; ++i) got.at(t, i) = gens[t].a[i];
  for (unsigned long j = 0; j < 3; ++j) {
    Mat Sj = mat_pow(S, j);
    for (std::size_t i = 0; i < 9; ++i) want.at(j, i) = Sj.a[i];
  }
  CHECK(lattice_from_rows(9, got) == lattice_from_rows(9, want));
}

TEST_CASE("equivariant maps from the trivial module land on the fixed line") {
  GroupRing R(3, 1);
  ActionLattice M{full_lattice(1), {Mat::identity(1)}};
  std::vector<Mat> gens = hom_module(M, R);
  REQUIRE(gens.size() == 1);
  // image must be a multiple of 1 + s + s^2
  Mat F = gens[0];
  CHECK(abs(F.at(0, 0)) == 1);
  CHECK(F.at(0, 0) == F.at(0, 1));
  CHECK(F.at(0, 1) == F.at(0, 2));
}

TEST_CASE("equivariant maps from the zero module") {
  GroupRing R(3, 1);
  ActionLattice M{lattice_from_rows(3, Mat(0, 3)), {gr_mult_matrix(R, gr_sigma(R, 1))}};
  CHECK(hom_module(M, R).empty());
}
