#include "k1lab/logmaps.hpp"

#include <algorithm>
#include <string>

namespace k1lab {

namespace {

int ilog(int n, unsigned p) {
  int k = 0;
  while (n > 1) {
    n /= static_cast<int>(p);
    ++k;
  }
  return k;
}

struct LogSeries {
  Elt value;
  int prec;
};

// Log(1+y) for y in p*ring.
LogSeries log_near_one(const GroupRing& R, const Elt& y) {
  const PrimeConfig& P = R.prime();
  const SeriesRing& S = R.series();
  const unsigned p = P.p();
  const int M = static_cast<int>(P.N());
  Elt sum = R.zero();
  Elt pw = y;
  int V = 0;
  int n = 1;
  for (; !R.is_zero(pw); ++n) {
    if (n > 4 * M + 100) raise(ErrorKind::PrecisionExhausted, "log series did not terminate");
    const int v = valuation(static_cast<u64>(n), p);
    const u64 unit = static_cast<u64>(n) / ipow(p, static_cast<unsigned>(v));
    PadicScalar c = P.invert(P.from_int(static_cast<long long>(unit)));
    if (n % 2 == 0) c = P.neg(c);
    sum = R.add(sum, R.scale(S.constant(c), R.div_pk(pw, static_cast<unsigned>(v))));
    V = std::max(V, v);
    pw = R.mul(pw, y);
  }
  const int vy = static_cast<int>(R.valuation(y));
  int prec = M - V;
  for (int k = n; k < n + 4 * M + 100; ++k)
    prec = std::min(prec, std::max(M, k * vy) - valuation(static_cast<u64>(k), p));
  return {sum, prec};
}

const Subgroup& sub(const GroupContext& ctx, int P) { return ctx.model().subgroup(P); }

bool cyclic_nontrivial(const GroupContext& ctx, int P) {
  return P != ctx.model().trivial_id() && sub(ctx, P).cyclic;
}

}  // namespace

Frac log_unit(const ConjModule& C, const Elt& u) {
  const GroupRing& R = C.ring();
  const PrimeConfig& P = R.prime();
  const PadicScalar r = R.residue(u);
  if (P.is_zero(r)) raise(ErrorKind::NonUnit, "log of a non-unit");
  Elt w = R.scale(R.series().constant(P.invert(P.teichmuller(r))), u);
  const Elt one = R.one();
  Elt y = R.sub(w, one);
  int k = 0;
  while (R.valuation(y) < 1) {
    if (++k > 40) raise(ErrorKind::PrecisionExhausted, "unit does not reach 1 + p*ring");
    w = R.pow(w, P.p());
    y = R.sub(w, one);
  }
  LogSeries L = log_near_one(R, y);
  return C.make(L.value, k, L.prec - k);
}

Frac log_radical(const ConjModule& C, const Elt& x) {
  const GroupRing& R = C.ring();
  if (!R.prime().is_zero(R.residue(x)))
    raise(ErrorKind::NotInRadical, "argument of Log is not in the radical");
  return log_unit(C, R.add(R.one(), x));
}

ExpResult exp_radical(const GroupRing& R, const Elt& x) {
  const PrimeConfig& P = R.prime();
  const SeriesRing& S = R.series();
  const unsigned p = P.p();
  const int M = static_cast<int>(P.N());
  const int vx = static_cast<int>(R.valuation(x));
  if (vx < 1) raise(ErrorKind::NotInScaledIdeal, "argument of exp is not in p*ring");
  Elt sum = R.one();
  Elt pw = x;
  int vf = 0, maxv = 0;
  PadicScalar uf = P.one();
  int n = 1;
  for (; !R.is_zero(pw); ++n) {
    const int v = valuation(static_cast<u64>(n), p);
    vf += v;
    uf = P.mul(uf, P.from_int(static_cast<long long>(static_cast<u64>(n) / ipow(p, static_cast<unsigned>(v)))));
    sum = R.add(sum, R.scale(S.constant(P.invert(uf)), R.div_pk(pw, static_cast<unsigned>(vf))));
    maxv = std::max(maxv, vf);
    pw = R.mul(pw, x);
  }
  int prec = M - maxv;
  for (int k = n; k < n + 4 * M + 100; ++k) {
    vf += valuation(static_cast<u64>(k), p);
    prec = std::min(prec, std::max(M, k * vx) - vf);
  }
  prec = std::max(prec, 0);
  return {R.reduce(sum, static_cast<unsigned>(prec)), prec};
}

Frac frobenius_conj(const ConjModule& C, const Frac& c) {
  const GroupRing& R = C.ring();
  const FiniteGroup& G = R.group();
  Elt out = R.zero();
  for (int g = 0; g < G.n; ++g) {
    if (c.num[g].is_zero()) continue;
    const TwistedElt tp = twisted_pow(G, {g, 0}, R.prime().p());
    R.add_term(out, tp.g, R.series().frobenius(c.num[g]), tp.m);
  }
  return C.make(out, c.d, c.K);
}

Frac integral_log(const ConjModule& C, const Elt& u) {
  const Frac L = log_unit(C, u);
  const Frac res = C.sub(L, C.scale_pk(frobenius_conj(C, L), -1));
  if (res.d > 0)
    raise(ErrorKind::IntegralityViolation,
          "integral logarithm keeps denominator p^" + std::to_string(res.d));
  return res;
}

Frac t_map(const GroupContext& ctx, const Frac& c, int P) {
  const GroupModel& model = ctx.model();
  const FiniteGroup& G = model.group();
  const auto& d = model.data(P);
  const Subgroup& s = model.subgroup(P);
  const GroupRing& A = ctx.ab_ring(P);
  Elt out = A.zero();
  for (int g = 0; g < G.n; ++g) {
    if (c.num[g].is_zero()) continue;
    for (int x : d.left_reps) {
      if (!s.contains(G.op(G.op(G.inv(x), g), x))) continue;
      const TwistedElt te = twisted_conj(G, x, g);
      A.add_term(out, d.ab_of[te.g], c.num[g], te.m);
    }
  }
  return ctx.ab_module(P).make(out, c.d, c.K);
}

Frac res_conj(const GroupContext& ctx, const Frac& c, int P) {
  const GroupModel& model = ctx.model();
  const FiniteGroup& G = model.group();
  const auto& d = model.data(P);
  const Subgroup& s = model.subgroup(P);
  const ConjModule& C = ctx.sub_conj(P);
  const GroupRing& A = C.ring();
  Elt out = A.zero();
  for (int g = 0; g < G.n; ++g) {
    if (c.num[g].is_zero()) continue;
    for (int x : d.left_reps) {
      if (!s.contains(G.op(G.op(G.inv(x), g), x))) continue;
      const TwistedElt te = twisted_conj(G, x, g);
      A.add_term(out, d.sub.local[te.g], c.num[g], te.m);
    }
  }
  return C.make(out, c.d, c.K);
}

Frac sub_to_ab(const GroupContext& ctx, const Frac& c, int P) {
  const auto& d = ctx.model().data(P);
  const GroupRing& A = ctx.ab_ring(P);
  Elt out = A.zero();
  for (std::size_t l = 0; l < c.num.size(); ++l) A.add_term(out, d.ab_of[d.sub.embed[l]], c.num[l]);
  return ctx.ab_module(P).make(out, c.d, c.K);
}

Elt eta_generic(const GroupRing& A, const Elt& x) {
  const FiniteGroup& G = A.group();
  Elt out = A.zero();
  for (int g = 0; g < G.n; ++g)
    if (G.order_of(g) == G.n) out[g] = x[g];
  return out;
}

Frac eta_map(const GroupContext& ctx, const Frac& x, int P) {
  if (!sub(ctx, P).cyclic) raise(ErrorKind::NotCyclic, "eta needs a cyclic subgroup");
  return ctx.ab_module(P).make(eta_generic(ctx.ab_ring(P), x.num), x.d, x.K);
}

std::vector<Frac> beta_map(const GroupContext& ctx, const Frac& c) {
  std::vector<Frac> out;
  out.reserve(ctx.num_subgroups());
  for (int P = 0; P < ctx.num_subgroups(); ++P) {
    Frac t = t_map(ctx, c, P);
    out.push_back(sub(ctx, P).cyclic ? eta_map(ctx, t, P) : std::move(t));
  }
  return out;
}

Frac delta_map(const GroupContext& ctx, const std::vector<Frac>& t) {
  const ConjModule& C = ctx.conj();
  const GroupRing& R = C.ring();
  const unsigned p = ctx.model().p();
  Frac acc = C.zero();
  for (int P = 0; P < ctx.num_subgroups(); ++P) {
    if (!sub(ctx, P).cyclic) continue;
    const auto& d = ctx.model().data(P);
    Elt e = R.zero();
    for (std::size_t a = 0; a < t[P].num.size(); ++a) R.add_term(e, d.ab_rep[a], t[P].num[a]);
    const int idx = ilog(ctx.model().order() / sub(ctx, P).order(), p);
    acc = C.add(acc, C.scale_pk(C.make(e, t[P].d, t[P].K), -idx));
  }
  return acc;
}

Elt cyclo_product(const GroupContext& ctx, const Elt& x, int P) {
  const GroupModel& model = ctx.model();
  const FiniteGroup& G = model.group();
  const Subgroup& s = model.subgroup(P);
  if (!s.cyclic) raise(ErrorKind::NotCyclic, "character product needs a cyclic subgroup");
  const unsigned p = model.p();
  const auto& d = model.data(P);
  const GroupRing& A = ctx.ab_ring(P);
  std::vector<int> dlog(G.n, -1);
  for (int j = 0, h = 0; j < s.order(); ++j, h = G.op(h, s.generator)) dlog[h] = j;
  CycloRing<GroupRing> Z(A, p);
  auto twist = [&](unsigned k) {
    CycloRing<GroupRing>::Elt e{std::vector<Elt>(p, A.zero())};
    for (int a = 0; a < A.size(); ++a) {
      if (x[a].is_zero()) continue;
      const unsigned slot = (k * static_cast<unsigned>(dlog[d.ab_rep[a]])) % p;
      A.add_term(e.c[slot], a, x[a]);
    }
    return e;
  };
  auto prod = twist(0);
  for (unsigned k = 1; k < p; ++k) prod = Z.mul(prod, twist(k));
  Elt base;
  if (!Z.equal(Z.galois(prod, primitive_root(p)), prod) || !Z.descends(prod, base))
    raise(ErrorKind::NotGaloisStable, "character product does not descend");
  return base;
}

Elt alpha_map(const GroupContext& ctx, const Elt& x, int P) {
  const GroupRing& A = ctx.ab_ring(P);
  if (!A.is_unit(x)) raise(ErrorKind::NonUnit, "alpha of a non-unit");
  Elt xp = A.pow(x, ctx.model().p());
  if (!cyclic_nontrivial(ctx, P)) return xp;
  return A.mul(xp, A.invert(cyclo_product(ctx, x, P)));
}

Elt phi_push(const GroupContext& ctx, const Elt& x, int Pp, int P) {
  const GroupModel& model = ctx.model();
  const FiniteGroup& G = model.group();
  const auto& dp = model.data(Pp);
  const auto& d = model.data(P);
  const GroupRing& A = ctx.ab_ring(P);
  Elt out = A.zero();
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a].is_zero()) continue;
    const TwistedElt tp = twisted_pow(G, {dp.ab_rep[a], 0}, model.p());
    const int target = d.ab_of[tp.g];
    if (target < 0) raise(ErrorKind::BadChain, "p-th power leaves the target subgroup");
    A.add_term(out, target, ctx.series().frobenius(x[a]), tp.m);
  }
  return out;
}

std::vector<int> v_index_set(const GroupContext& ctx, int P) {
  const GroupModel& model = ctx.model();
  if (sub(ctx, P).cyclic) return model.data(P).cp_set;
  std::vector<int> out;
  for (int C : model.cyclic_ids())
    if (model.is_subgroup_of(model.data(C).pth_power, P)) out.push_back(C);
  return out;
}

Elt u_map(const GroupContext& ctx, const std::vector<Elt>& x, int P) {
  const GroupRing& A = ctx.ab_ring(P);
  const bool cyc = sub(ctx, P).cyclic;
  Elt res = A.one();
  for (int C : v_index_set(ctx, P)) {
    Elt f = phi_push(ctx, x[C], C, P);
    if (!cyc) f = A.pow(f, static_cast<unsigned long long>(sub(ctx, C).order()));
    res = A.mul(res, f);
  }
  return res;
}

Frac v_map(const GroupContext& ctx, const std::vector<Frac>& y, int P, int shift) {
  const ConjModule& M = ctx.ab_module(P);
  const unsigned p = ctx.model().p();
  const bool cyc = sub(ctx, P).cyclic;
  const int lp = ilog(sub(ctx, P).order(), p);
  Frac acc = M.zero();
  for (int C : v_index_set(ctx, P)) {
    Frac f = M.make(phi_push(ctx, y[C].num, C, P), y[C].d, y[C].K);
    const int w = cyc ? shift + 1 : shift + ilog(sub(ctx, C).order(), p) - lp;
    acc = M.add(acc, M.scale_pk(f, w));
  }
  return acc;
}

int omega_gab(const GroupContext& ctx, const Frac& c) {
  const ConjModule& C = ctx.conj();
  Frac x = c;
  C.normalize(x);
  if (x.d > 0) raise(ErrorKind::NonIntegral, "omega needs an integral class");
  const GroupModel& model = ctx.model();
  const FiniteGroup& G = model.group();
  std::vector<int> frattini_gens;
  for (int g = 0; g < G.n; ++g) {
    frattini_gens.push_back(G.power(g, model.p()));
    for (int h = 0; h < G.n; ++h) frattini_gens.push_back(G.op(G.op(G.inv(g), G.inv(h)), G.op(g, h)));
  }
  std::sort(frattini_gens.begin(), frattini_gens.end());
  frattini_gens.erase(std::unique(frattini_gens.begin(), frattini_gens.end()), frattini_gens.end());
  const std::vector<int> phi = G.closure(frattini_gens);
  const PrimeConfig& P = ctx.series().prime();
  int r = 0;
  for (int g = 0; g < G.n; ++g) {
    if (x.num[g].is_zero()) continue;
    const unsigned t = P.residue_trace(ctx.series().constant_term(x.num[g]));
    r = G.op(r, G.power(g, t));
  }
  int rep = G.n;
  for (int k : phi) rep = std::min(rep, G.op(r, k));
  return rep;
}

std::vector<Elt> alpha_tuple(const GroupContext& ctx, const std::vector<Elt>& xi) {
  std::vector<Elt> out;
  out.reserve(xi.size());
  for (int P = 0; P < ctx.num_subgroups(); ++P) out.push_back(alpha_map(ctx, xi[P], P));
  return out;
}

std::vector<Frac> calL_map(const GroupContext& ctx, const std::vector<Elt>& xi) {
  const unsigned p = ctx.model().p();
  const std::vector<Elt> al = alpha_tuple(ctx, xi);
  std::vector<Frac> out;
  out.reserve(xi.size());
  for (int P = 0; P < ctx.num_subgroups(); ++P) {
    const GroupRing& A = ctx.ab_ring(P);
    const ConjModule& M = ctx.ab_module(P);
    const Elt u = u_map(ctx, al, P);
    Elt arg;
    int shift;
    if (P == ctx.model().trivial_id()) {
      const Elt den = A.mul(A.map_coeffs(xi[P], &SeriesRing::frobenius), u);
      arg = A.mul(A.pow(xi[P], p), A.invert(den));
      shift = 1;
    } else if (sub(ctx, P).cyclic) {
      arg = A.mul(al[P], A.invert(u));
      shift = 1;
    } else {
      const int order = sub(ctx, P).order();
      arg = A.mul(A.pow(al[P], static_cast<unsigned long long>(p) * order), A.invert(u));
      shift = 2 + ilog(order, p);
    }
    Frac L = M.scale_pk(log_unit(M, arg), -shift);
    if (L.d > 0)
      raise(ErrorKind::DenominatorNotCleared,
            "component " + std::to_string(P) + " keeps denominator p^" + std::to_string(L.d));
    out.push_back(std::move(L));
  }
  return out;
}

}  // namespace k1lab
