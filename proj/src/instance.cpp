#include "ellann/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "ellann/errors.hpp"
#include "json.hpp"

namespace ellann {

using nlohmann::json;

namespace {

Int json_int(const json& v, const std::string& what) {
  if (v.is_string()) return int_from_decimal(v.get<std::string>());
  if (v.is_number_integer()) return int_from_decimal(std::to_string(v.get<long long>()));
  fail(errc::parse, what + " must be an integer or a decimal string");
}

std::vector<Int> json_int_list(const json& v, const std::string& what) {
  check(v.is_array(), errc::parse, what + " must be an array");
  std::vector<Int> out;
  for (const auto& e : v) out.push_back(json_int(e, what + " entry"));
  return out;
}

} // namespace

RamificationInstance instance_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse, std::string("instance is not valid JSON: ") + e.what());
  }
  check(j.is_object(), errc::parse, "instance file must be a JSON object");
  check(j.contains("p") && j.contains("k") && j.contains("t") && j.contains("lambda"),
        errc::parse, "instance requires fields p, k, t, lambda");

  RamificationInstance inst;
  inst.p = json_int(j["p"], "p");
  inst.k = json_int(j["k"], "k");
  inst.t = json_int_list(j["t"], "t");
  if (j.contains("s")) {
    Int s = json_int(j["s"], "s");
    check(s == Int((unsigned long)inst.t.size()), errc::parse, "field s disagrees with the length of t");
  }
  if (j.contains("res_units"))
    inst.res_units = json_int_list(j["res_units"], "res_units");
  check(j["lambda"].is_array(), errc::parse, "lambda must be an array of exponent vectors");
  for (const auto& row : j["lambda"]) inst.lambda.push_back(json_int_list(row, "lambda entry"));

  if (j.contains("analytic")) {
    const json& a = j["analytic"];
    check(a.is_object(), errc::parse, "analytic must be an object");
    AnalyticData d;
    if (a.contains("h")) d.h = json_int(a["h"], "analytic.h");
    if (a.contains("w_K")) d.w_K = json_int(a["w_K"], "analytic.w_K");
    if (a.contains("f_I")) d.f_I = json_int(a["f_I"], "analytic.f_I");
    if (a.contains("h_L")) d.h_L = json_int(a["h_L"], "analytic.h_L");
    if (a.contains("h_FI")) d.h_FI = json_int(a["h_FI"], "analytic.h_FI");
    if (a.contains("q")) d.q = json_int_list(a["q"], "analytic.q");
    inst.analytic = std::move(d);
  }
  return inst;
}

RamificationInstance instance_from_file(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::io, "cannot open instance file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  check(!in.bad(), errc::io, "cannot read instance file '" + path + "'");
  return instance_from_json_text(buf.str());
}

namespace {

// res(lambda_j) as an integer in [0, p^k), computed in input order.
Int res_of_lambda(const RamificationInstance& inst, const Int& pk, std::size_t j) {
  Int acc = 0;
  for (std::size_t m = 0; m < inst.s(); ++m) {
    Int u = inst.res_units.empty() ? Int(1) : inst.res_units[m];
    acc += inst.lambda[j][m] * u * (pk / inst.t[m]);
  }
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), acc.get_mpz_t(), pk.get_mpz_t());
  return r;
}

Int gcd3(const Int& a, const Int& b, const Int& c) { return gcd(gcd(a, b), c); }

} // namespace

std::vector<std::string> validate_errors(const RamificationInstance& inst) {
  std::vector<std::string> errs;
  const std::size_t s = inst.s();
  if (s < 2) errs.push_back("at least two ramified places are required");
  if (!inst.res_units.empty() && inst.res_units.size() != s)
    errs.push_back("res_units must have one entry per place");
  if (inst.lambda.size() != s)
    errs.push_back("lambda must have one exponent vector per place");
  for (std::size_t j = 0; j < inst.lambda.size(); ++j)
    if (inst.lambda[j].size() != s)
      errs.push_back("lambda[" + std::to_string(j + 1) + "] must have one exponent per place");
  if (!errs.empty()) return errs; // shape is broken; the rest would index out of range

  bool p_ok = inst.p >= 3 && inst.p % 2 == 1 && is_probable_prime(inst.p);
  if (!p_ok) errs.push_back("p must be an odd prime (got " + inst.p.get_str() + ")");
  if (inst.k < 1) errs.push_back("k must be at least 1");
  bool basics_ok = p_ok && inst.k >= 1 && inst.k.fits_ulong_p();

  unsigned long k = basics_ok ? to_ulong_checked(inst.k, "k") : 1;
  Int pk = basics_ok ? ipow(inst.p, k) : Int(0);

  bool t_ok = basics_ok;
  for (std::size_t j = 0; j < s && basics_ok; ++j) {
    auto e = inst.t[j] > 0 ? exact_plog(inst.t[j], inst.p) : std::nullopt;
    if (!e || *e < 1 || *e > k) {
      errs.push_back("t[" + std::to_string(j + 1) + "] must be a power of p in [p, p^k] (got " +
                     inst.t[j].get_str() + ")");
      t_ok = false;
    }
  }
  if (t_ok && std::find(inst.t.begin(), inst.t.end(), pk) == inst.t.end())
    errs.push_back("no inertia order equals the full group order p^k; at least one place must be totally ramified at the top");
  for (std::size_t j = 0; j < s; ++j)
    if (inst.t[j] >= 1 && inst.lambda[j][j] % inst.t[j] != 0)
      errs.push_back("lambda[" + std::to_string(j + 1) +
                     "] must have trivial component in its own inertia subgroup");
  for (std::size_t j = 0; j < s && !inst.res_units.empty() && p_ok; ++j)
    if (gcd(inst.res_units[j], inst.p) != 1)
      errs.push_back("res_units[" + std::to_string(j + 1) + "] must be prime to p");
  if (!errs.empty() || !t_ok) return errs;

  // decomposition indices and the divisibility constraint t_j * n_j | p^k
  for (std::size_t j = 0; j < s; ++j) {
    Int nj = gcd3(res_of_lambda(inst, pk, j), pk / inst.t[j], pk);
    if (pk % (inst.t[j] * nj) != 0)
      errs.push_back("place " + std::to_string(j + 1) +
                     ": t_j * n_j must divide p^k (n_j = " + nj.get_str() + ")");
  }

  if (inst.analytic) {
    const AnalyticData& a = *inst.analytic;
    if (a.h && *a.h % inst.p == 0) errs.push_back("analytic.h must be prime to p");
    if (a.w_K && *a.w_K % inst.p == 0) errs.push_back("analytic.w_K must be prime to p");
    if (inst.p > 3 && a.w_K && a.f_I && (Int(12) * *a.w_K * *a.f_I) % inst.p == 0)
      errs.push_back("analytic: 12 * w_K * f_I must be prime to p when p > 3");
    if (a.q) {
      if (a.q->size() != s) {
        errs.push_back("analytic.q must list one rational prime per place");
      } else {
        for (std::size_t j = 0; j < s; ++j) {
          const Int& q = (*a.q)[j];
          if (!is_probable_prime(q))
            errs.push_back("analytic.q[" + std::to_string(j + 1) + "] must be prime");
          else if ((q * q - 1) % inst.t[j] != 0)
            errs.push_back("analytic.q[" + std::to_string(j + 1) +
                           "]: the prime's norm cannot be 1 mod t_j (needs q or q^2 = 1 mod t_j)");
        }
      }
    }
  }
  return errs;
}

GroupData validate(const RamificationInstance& inst) {
  std::vector<std::string> errs = validate_errors(inst);
  if (!errs.empty()) {
    std::string msg = "instance invalid:";
    for (const std::string& e : errs) msg += "\n  - " + e;
    fail(errc::validation, msg);
  }

  GroupData G;
  G.p = to_ulong_checked(inst.p, "p");
  G.k = to_ulong_checked(inst.k, "k");
  G.s = inst.s();
  Int pk = ipow(inst.p, G.k);
  G.pk = to_ulong_checked(pk, "p^k");
  G.analytic = inst.analytic;
  G.gamma = GroupRing(G.p, G.k);

  // canonical order: stable by n_j ascending, then t_j descending
  std::vector<Int> n_in(G.s);
  for (std::size_t j = 0; j < G.s; ++j)
    n_in[j] = gcd3(res_of_lambda(inst, pk, j), pk / inst.t[j], pk);
  G.perm.resize(G.s);
  std::iota(G.perm.begin(), G.perm.end(), std::size_t{0});
  std::stable_sort(G.perm.begin(), G.perm.end(), [&](std::size_t a, std::size_t b) {
    if (n_in[a] != n_in[b]) return n_in[a] < n_in[b];
    return inst.t[a] > inst.t[b];
  });

  for (std::size_t c = 0; c < G.s; ++c) {
    std::size_t o = G.perm[c];
    G.t.push_back(to_ulong_checked(inst.t[o], "t"));
    Int u = inst.res_units.empty() ? Int(1) : inst.res_units[o];
    Int ur;
    mpz_fdiv_r(ur.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
    G.res_units.push_back(to_ulong_checked(ur, "res unit"));
    G.n.push_back(to_ulong_checked(n_in[o], "n"));
  }
  for (std::size_t c = 0; c < G.s; ++c) {
    std::size_t o = G.perm[c];
    std::vector<unsigned long> lam(G.s);
    for (std::size_t d = 0; d < G.s; ++d) {
      Int r;
      Int tj = Int(G.t[d]);
      mpz_fdiv_r(r.get_mpz_t(), inst.lambda[o][G.perm[d]].get_mpz_t(), tj.get_mpz_t());
      lam[d] = to_ulong_checked(r, "lambda exponent");
    }
    G.lambda.push_back(std::move(lam));
  }
  if (G.analytic && G.analytic->q) {
    std::vector<Int> q(G.s);
    for (std::size_t c = 0; c < G.s; ++c) q[c] = (*G.analytic->q)[G.perm[c]];
    G.analytic->q = std::move(q);
  }

  Int ord = 1;
  for (unsigned long tj : G.t) ord *= tj;
  G.order = to_ulong_checked(ord, "group order");
  G.stride.assign(G.s, 1);
  for (std::size_t j = G.s; j-- > 1;) G.stride[j - 1] = G.stride[j] * G.t[j];

  // lift of the quotient generator: a full-order component with unit 1
  // if one exists, else the lexicographically least element restricting
  // to the generator
  G.shat.clear();
  for (std::size_t j = 0; j < G.s; ++j)
    if (G.t[j] == G.pk && G.res_units[j] % G.pk == 1) {
      G.shat = G.gen(j);
      break;
    }
  if (G.shat.empty()) {
    for (std::size_t idx = 0; idx < G.order; ++idx) {
      std::vector<unsigned long> a = G.elem(idx);
      if (G.res(a) == 1) {
        G.shat = std::move(a);
        break;
      }
    }
    check(!G.shat.empty(), errc::model_discrepancy, "no element restricts to the chosen generator");
  }
  return G;
}

std::size_t GroupData::idx(const std::vector<unsigned long>& a) const {
  std::size_t v = 0;
  for (std::size_t j = 0; j < s; ++j) v += (a[j] % t[j]) * stride[j];
  return v;
}

std::vector<unsigned long> GroupData::elem(std::size_t index) const {
  std::vector<unsigned long> a(s);
  for (std::size_t j = 0; j < s; ++j) {
    a[j] = (index / stride[j]) % t[j];
  }
  return a;
}

std::vector<unsigned long> GroupData::mul(const std::vector<unsigned long>& a,
                                          const std::vector<unsigned long>& b) const {
  std::vector<unsigned long> c(s);
  for (std::size_t j = 0; j < s; ++j) c[j] = (a[j] + b[j]) % t[j];
  return c;
}

std::vector<unsigned long> GroupData::gen(std::size_t j) const {
  std::vector<unsigned long> a(s, 0);
  a[j] = 1 % t[j];
  return a;
}

std::vector<unsigned long> GroupData::inv(const std::vector<unsigned long>& a) const {
  std::vector<unsigned long> c(s);
  for (std::size_t j = 0; j < s; ++j) c[j] = (t[j] - a[j] % t[j]) % t[j];
  return c;
}

unsigned long GroupData::res(const std::vector<unsigned long>& a) const {
  unsigned __int128 acc = 0;
  for (std::size_t j = 0; j < s; ++j) {
    unsigned __int128 term = (unsigned __int128)(a[j] % t[j]) * (res_units[j] % pk);
    term %= pk;
    term *= pk / t[j];
    acc = (acc + term) % pk;
  }
  return (unsigned long)acc;
}

unsigned long decomposition_index(const GroupData& G, std::size_t j) {
  unsigned long rl = G.res(G.lambda[j]);
  return std::gcd(std::gcd(rl, G.pk / G.t[j]), G.pk);
}

std::vector<std::vector<std::size_t>> ramified_sets(const GroupData& G) {
  std::vector<std::vector<std::size_t>> M(G.k);
  for (unsigned long i = 1; i <= G.k; ++i) {
    unsigned long bound = 1;
    for (unsigned long e = 0; e < G.k - i; ++e) bound *= G.p;
    for (std::size_t j = 0; j < G.s; ++j)
      if (G.t[j] > bound) M[i - 1].push_back(j);
  }
  return M;
}

JumpProfile jump_profile(const GroupData& G) {
  JumpProfile out;
  auto M = ramified_sets(G);
  for (unsigned long i = 1; i <= G.k; ++i) out.mu.push_back(G.n[M[i - 1].back()]);
  out.jumps.push_back(0);
  for (unsigned long i = 1; i + 1 <= G.k; ++i)
    if (out.mu[i - 1] < out.mu[i]) out.jumps.push_back(i);
  out.jumps.push_back(G.k);
  out.r = 0;
  for (unsigned long j : out.jumps)
    if (j < G.k) out.r = std::max(out.r, j);
  out.i_star = 0;
  for (unsigned long i = G.k; i >= 1; --i)
    if (M[i - 1].size() <= 1) {
      out.i_star = i;
      break;
    }
  out.L_index = ipow(Int(G.p), G.k - out.i_star);
  return out;
}

unsigned long r_characterization(const GroupData& G) {
  unsigned long ns = G.n.back();
  unsigned long maxt = 0;
  for (std::size_t j = 0; j < G.s; ++j)
    if (G.n[j] == ns) maxt = std::max(maxt, G.t[j]);
  auto e = exact_plog(Int(maxt), Int(G.p));
  check(e.has_value(), errc::internal, "inertia order is not a p-power");
  unsigned long rp = G.k - *e;
  check(rp == jump_profile(G).r, errc::model_discrepancy,
        "the two characterizations of the top jump disagree");
  return rp;
}

unsigned long compute_c(const GroupData& G, std::size_t j) {
  auto e = exact_plog(Int(G.t[j]), Int(G.p));
  check(e.has_value(), errc::internal, "inertia order is not a p-power");
  unsigned long i = G.k - *e;
  if (i == 0) return 1;
  unsigned long pi = 1;
  for (unsigned long v = 0; v < i; ++v) pi *= G.p;
  unsigned long nj = G.n[j] % pi;
  unsigned long rl = G.res(G.lambda[j]) % pi;
  unsigned long d = std::gcd(nj, pi); // gcd(0, pi) = pi covers nj = 0
  check(rl % d == 0, errc::model_discrepancy,
        "no multiple of the decomposition index matches the splitting element at its level");
  unsigned long m = pi / d;
  unsigned long c;
  if (m == 1) {
    c = 1;
  } else {
    Int inv;
    int ok = mpz_invert(inv.get_mpz_t(), Int(nj / d).get_mpz_t(), Int(m).get_mpz_t());
    check(ok != 0, errc::internal, "reduced index must be invertible");
    Int c0 = (Int(m) - Int(rl / d)) * inv; // solves c * (nj/d) = -(rl/d) mod m
    mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), Int(m).get_mpz_t());
    c = c0 == 0 ? m : to_ulong_checked(c0, "c");
  }
  check(c % G.p != 0, errc::model_discrepancy, "level multiplier must be prime to p");
  return c;
}

std::vector<std::vector<unsigned long>> res_kernel_gens(const GroupData& G, unsigned long i) {
  std::vector<std::vector<unsigned long>> gens;
  if (i == 0) {
    for (std::size_t j = 0; j < G.s; ++j) gens.push_back(G.gen(j));
    return gens;
  }
  Int pi = ipow(Int(G.p), i);
  // integer kernel of [r_1 ... r_s p^i], projected to the first s
  // coordinates, generates the kernel subgroup mod (t_1,...,t_s)
  Mat A(1, G.s + 1);
  for (std::size_t j = 0; j < G.s; ++j) A.at(0, j) = Int(G.res_units[j]) * Int(G.pk / G.t[j]);
  A.at(0, G.s) = pi;
  auto sol = solve_integer(A, {Int(0)});
  check(sol.has_value(), errc::internal, "homogeneous system must be solvable");
  for (std::size_t r = 0; r < sol->kernel.nr; ++r) {
    std::vector<unsigned long> g(G.s);
    bool nonzero = false;
    for (std::size_t j = 0; j < G.s; ++j) {
      Int v;
      Int tj = Int(G.t[j]);
      mpz_fdiv_r(v.get_mpz_t(), sol->kernel.at(r, j).get_mpz_t(), tj.get_mpz_t());
      g[j] = to_ulong_checked(v, "kernel exponent");
      nonzero = nonzero || g[j] != 0;
    }
    if (nonzero) gens.push_back(std::move(g));
  }
  return gens;
}

std::vector<std::size_t> subgroup_elements(const GroupData& G,
                                           const std::vector<std::vector<unsigned long>>& gens) {
  std::set<std::size_t> seen;
  std::queue<std::size_t> work;
  std::vector<unsigned long> id(G.s, 0);
  seen.insert(G.idx(id));
  work.push(G.idx(id));
  while (!work.empty()) {
    std::vector<unsigned long> cur = G.elem(work.front());
    work.pop();
    for (const auto& g : gens) {
      std::size_t nx = G.idx(G.mul(cur, g));
      if (seen.insert(nx).second) work.push(nx);
    }
  }
  return std::vector<std::size_t>(seen.begin(), seen.end());
}

LevelData level_data(const GroupData& G, unsigned long i) {
  check(i >= 1 && i <= G.k, errc::invalid_input, "level must lie in 1..k");
  LevelData out;
  out.i = i;
  out.M = ramified_sets(G)[i - 1];
  unsigned long pi = 1;
  for (unsigned long v = 0; v < i; ++v) pi *= G.p;
  out.n_param = 1;
  for (std::size_t j : out.M) {
    unsigned long rl = G.res(G.lambda[j]) % pi;
    unsigned long g = std::gcd(std::gcd(rl, G.pk / G.t[j]), pi);
    out.n_param = std::max(out.n_param, g);
  }
  out.B_gens = res_kernel_gens(G, i);
  for (std::size_t j = 0; j < G.s; ++j) out.c.push_back(compute_c(G, j));
  // strictly interior indices of the ramified set contribute to y
  out.y = gr_one(G.gamma);
  std::size_t mx = out.M.back();
  for (std::size_t j : out.M)
    if (j != 0 && j != mx)
      out.y = gr_mul(G.gamma, out.y,
                     gr_sub(gr_one(G.gamma), gr_sigma(G.gamma, out.c[j] * G.n[j])));
  out.z = gr_sub(gr_one(G.gamma), gr_sigma(G.gamma, out.c[mx] * G.n[mx]));
  return out;
}

} // namespace ellann
