#include "k1lab/congruence.hpp"

#include <algorithm>
#include <limits>

#include "k1lab/serialize.hpp"

namespace k1lab {

using nlohmann::json;

namespace {

int ilog(int n, unsigned p) {
  int k = 0;
  while (n > 1) {
    n /= static_cast<int>(p);
    ++k;
  }
  return k;
}

template <class F>
Verdict guarded(std::string name, std::vector<int> ids, F&& body) {
  Verdict v{std::move(name), std::move(ids), true, std::nullopt};
  try {
    body(v);
  } catch (const Error& e) {
    v.pass = false;
    v.witness = json{{"error", to_string(e.kind())}, {"message", e.what()}};
  }
  return v;
}

void expect_equal(Verdict& v, const GroupRing& R, const Elt& a, const Elt& b, unsigned prec) {
  Elt diff = R.reduce(R.sub(a, b), prec);
  if (R.is_zero(diff)) return;
  v.pass = false;
  v.witness = json{{"difference", element_to_json(R, diff)}, {"modulus_exponent", prec}};
}

void expect_equal(Verdict& v, const ConjModule& C, const Frac& a, const Frac& b, unsigned prec) {
  if (C.equal_at(a, b, static_cast<int>(prec))) return;
  Frac diff = C.sub(a, b);
  v.pass = false;
  v.witness = json{{"difference", element_to_json(C.ring(), diff.num)},
                   {"denominator_exponent", diff.d},
                   {"modulus_exponent", prec}};
}

void expect_member(Verdict& v, const GroupRing& R, const BlockLattice& lat, const Elt& a,
                   const std::string& lattice) {
  if (lat.contains(a)) return;
  v.pass = false;
  v.witness = json{{"difference", element_to_json(R, R.reduce(a, lat.precision()))},
                   {"lattice", lattice},
                   {"modulus_exponent", lat.precision()}};
}

std::string lattice_name(int P) { return "T(" + std::to_string(P) + ")"; }
std::string lattice_name(int P, int Pp) {
  return "T(" + std::to_string(P) + "," + std::to_string(Pp) + ")";
}

// [P',P'] <= P < P'.
bool is_chain(const GroupModel& model, int P, int Pp) {
  if (P == Pp || !model.is_subgroup_of(P, Pp)) return false;
  const Subgroup& s = model.subgroup(P);
  return std::ranges::all_of(model.data(Pp).commutator, [&](int c) { return s.contains(c); });
}

TruncSeries random_series_term(const SeriesRing& S, Rng& rng, std::uint32_t idx) {
  return S.from_terms({{idx, random_scalar(S.prime(), rng)}});
}

}  // namespace

SeriesRef make_series(const EngineConfig& cfg) {
  if (cfg.N == 0) raise(ErrorKind::InvalidConfig, "precision N must be positive");
  auto prime = PrimeConfig::make(cfg.p, cfg.f, cfg.M());
  return SeriesRing::make(prime, cfg.r, cfg.D, cfg.D_T);
}

std::unique_ptr<GroupContext> make_context(const EngineConfig& cfg, GroupRef model) {
  if (model->p() != cfg.p) raise(ErrorKind::ConfigMismatch, "group built for another prime");
  return std::make_unique<GroupContext>(std::move(model), make_series(cfg), cfg.N);
}

Rng::Rng(u64 seed, u64 index, u64 stream) {
  auto lo = [](u64 v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](u64 v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), lo(stream), hi(stream)};
  eng_.seed(seq);
}

u64 Rng::below(u64 n) {
  if (n == 0) return 0;
  const u64 top = std::numeric_limits<u64>::max();
  const u64 limit = top - (top % n + 1) % n;
  u64 x;
  do x = eng_();
  while (x > limit);
  return x % n;
}

PadicScalar random_scalar(const PrimeConfig& P, Rng& rng) {
  PadicScalar s;
  for (unsigned i = 0; i < P.f(); ++i) s.c[i] = rng.below(P.modulus());
  return s;
}

Elt random_unit(const GroupRing& R, Rng& rng) {
  const SeriesRing& S = R.series();
  const PrimeConfig& P = R.prime();
  PadicScalar res;
  do {
    for (unsigned i = 0; i < P.f(); ++i) res.c[i] = rng.below(P.p());
  } while (P.is_zero(res));
  const PadicScalar zeta = P.teichmuller(res);

  Elt u = R.one();
  const int terms = 3 + static_cast<int>(rng.below(4));
  for (int k = 0; k < terms; ++k) {
    const int g = static_cast<int>(rng.below(R.size()));
    switch (rng.below(3)) {
      case 0: {
        const auto idx = static_cast<std::uint32_t>(1 + rng.below(S.num_monomials() - 1));
        R.add_term(u, g, random_series_term(S, rng, idx));
        break;
      }
      case 1: {
        R.add_term(u, g, S.mul_pk(S.constant(random_scalar(P, rng)), 1));
        break;
      }
      default: {
        TruncSeries s = S.constant(random_scalar(P, rng));
        R.add_term(u, g, s);
        R.add_term(u, 0, S.neg(s));
      }
    }
  }
  return R.scale(S.constant(zeta), u);
}

Elt random_element(const GroupRing& R, Rng& rng) {
  const SeriesRing& S = R.series();
  Elt a = R.zero();
  for (int g = 0; g < R.size(); ++g) {
    std::vector<std::pair<std::uint32_t, PadicScalar>> terms;
    for (std::uint32_t i = 0; i < S.num_monomials(); ++i)
      terms.emplace_back(i, random_scalar(S.prime(), rng));
    a[g] = S.from_terms(std::move(terms));
  }
  return a;
}

Elt random_p_element(const GroupRing& R, Rng& rng) {
  const SeriesRing& S = R.series();
  Elt a = R.zero();
  const int terms = 3 + static_cast<int>(rng.below(4));
  for (int k = 0; k < terms; ++k) {
    const int g = static_cast<int>(rng.below(R.size()));
    const auto idx = static_cast<std::uint32_t>(rng.below(S.num_monomials()));
    R.add_term(a, g, random_series_term(S, rng, idx));
  }
  return R.mul_pk(a, 1);
}

CongruenceTuple build_tuple(const GroupContext& ctx, const Elt& xi) {
  if (!ctx.ring().is_unit(xi)) raise(ErrorKind::NonUnit, "tuple of a non-unit");
  CongruenceTuple t{xi, {}};
  t.comps.reserve(ctx.num_subgroups());
  for (int P = 0; P < ctx.num_subgroups(); ++P) t.comps.push_back(ctx.theta(xi, P));
  return t;
}

int mutate_tuple(const GroupContext& ctx, CongruenceTuple& t, Rng& rng) {
  const int P = static_cast<int>(rng.below(ctx.num_subgroups()));
  t.comps[P] = random_unit(ctx.ab_ring(P), rng);
  return P;
}

std::vector<Verdict> check_c1_c4(const GroupContext& ctx, const CongruenceTuple& t) {
  const GroupModel& model = ctx.model();
  const int ns = ctx.num_subgroups();
  const unsigned N = ctx.N();
  const unsigned p = model.p();
  std::vector<Verdict> out;

  for (int Pp = 0; Pp < ns; ++Pp)
    for (int P = 0; P < ns; ++P) {
      if (!is_chain(model, P, Pp)) continue;
      out.push_back(guarded("C1", {P, Pp}, [&](Verdict& v) {
        const ChainData& ch = ctx.chain(P, Pp);
        expect_equal(v, *ch.ring, ctx.norm(t.comps[Pp], P, Pp),
                     ctx.project_down(t.comps[P], P, Pp), N);
      }));
    }

  for (int P = 0; P < ns; ++P)
    for (int g = 0; g < model.order(); ++g) {
      out.push_back(guarded("C2", {P, g}, [&](Verdict& v) {
        const int Q = model.conjugate_id(P, g);
        expect_equal(v, ctx.ab_ring(Q), ctx.conj_map(t.comps[P], P, g), t.comps[Q], N);
      }));
    }

  for (int Pp = 0; Pp < ns; ++Pp)
    for (int P = 0; P < ns; ++P) {
      if (!model.is_subgroup_of(P, Pp) ||
          model.subgroup(Pp).order() != static_cast<int>(p) * model.subgroup(P).order())
        continue;
      out.push_back(guarded("C3", {P, Pp}, [&](Verdict& v) {
        const GroupRing& A = ctx.ab_ring(P);
        Elt diff = A.sub(ctx.ver(t.comps[Pp], P, Pp, true), t.comps[P]);
        expect_member(v, A, ctx.trace_lattice(P, Pp), diff, lattice_name(P, Pp));
      }));
    }

  std::vector<Elt> al;
  std::optional<Verdict> alpha_error;
  try {
    al = alpha_tuple(ctx, t.comps);
  } catch (const Error& e) {
    alpha_error = Verdict{"C4", {}, false,
                          json{{"error", to_string(e.kind())}, {"message", e.what()}}};
  }
  if (alpha_error) {
    out.push_back(*alpha_error);
    return out;
  }
  for (int P : model.cyclic_ids()) {
    out.push_back(guarded("C4", {P}, [&](Verdict& v) {
      const GroupRing& A = ctx.ab_ring(P);
      Elt lhs = al[P];
      if (P == model.trivial_id())
        lhs = A.mul(lhs, A.invert(A.map_coeffs(t.comps[P], &SeriesRing::frobenius)));
      Elt diff = A.sub(lhs, u_map(ctx, al, P));
      expect_member(v, A, ctx.trace_lattice_p(P), diff, "p" + lattice_name(P));
    }));
  }
  return out;
}

std::vector<Verdict> check_additive_tuple(const GroupContext& ctx, const std::vector<Frac>& a) {
  const GroupModel& model = ctx.model();
  const int ns = ctx.num_subgroups();
  const unsigned N = ctx.N();
  std::vector<Verdict> out;

  for (int Pp = 0; Pp < ns; ++Pp)
    for (int P = 0; P < ns; ++P) {
      if (!is_chain(model, P, Pp)) continue;
      const bool cyc = model.subgroup(P).cyclic;
      const bool cyc_up = model.subgroup(Pp).cyclic;
      if (cyc && P != model.trivial_id() &&
          model.find_subgroup(model.data(Pp).commutator) == P)
        continue;
      out.push_back(guarded("A1", {P, Pp}, [&](Verdict& v) {
        const ChainData& ch = ctx.chain(P, Pp);
        const ConjModule mod(ch.ring, nullptr);
        Elt tr = ctx.trace_down(a[Pp].num, P, Pp);
        Frac rhs = cyc_up ? mod.zero()
                          : mod.make(ctx.project_down(a[P].num, P, Pp), a[P].d, a[P].K);
        if (cyc && !cyc_up) tr = eta_generic(*ch.ring, tr);
        expect_equal(v, mod, mod.make(tr, a[Pp].d, a[Pp].K), rhs, N);
      }));
    }

  for (int P : model.cyclic_ids())
    for (int g = 0; g < model.order(); ++g) {
      out.push_back(guarded("A2", {P, g}, [&](Verdict& v) {
        const int Q = model.conjugate_id(P, g);
        const ConjModule& mod = ctx.ab_module(Q);
        expect_equal(v, mod, mod.make(ctx.conj_map(a[P].num, P, g), a[P].d, a[P].K), a[Q], N);
      }));
    }

  for (int P : model.cyclic_ids()) {
    out.push_back(guarded("A3", {P}, [&](Verdict& v) {
      const ConjModule& mod = ctx.ab_module(P);
      if (mod.in_lattice(a[P], ctx.trace_lattice(P))) return;
      v.pass = false;
      v.witness = json{{"element", element_to_json(mod.ring(), a[P].num)},
                       {"denominator_exponent", a[P].d},
                       {"lattice", lattice_name(P)}};
    }));
  }
  return out;
}

std::vector<Verdict> check_additive(const GroupContext& ctx, const Frac& c) {
  const std::vector<Frac> a = beta_map(ctx, c);
  std::vector<Verdict> out = check_additive_tuple(ctx, a);
  out.push_back(guarded("delta-beta", {}, [&](Verdict& v) {
    expect_equal(v, ctx.conj(), delta_map(ctx, a), c, ctx.N());
  }));
  return out;
}

std::vector<Verdict> check_diagrams(const GroupContext& ctx, const Elt& xi) {
  const GroupModel& model = ctx.model();
  const int ns = ctx.num_subgroups();
  const unsigned N = ctx.N();
  const unsigned p = model.p();
  const ConjModule& C = ctx.conj();
  std::vector<Verdict> out;

  const CongruenceTuple t = build_tuple(ctx, xi);
  const Frac Lu = log_unit(C, xi);
  std::optional<Frac> IL;
  out.push_back(guarded("integrality", {}, [&](Verdict&) { IL = integral_log(C, xi); }));
  if (!IL) return out;

  out.push_back(guarded("omega-gab", {}, [&](Verdict& v) {
    const int w = omega_gab(ctx, *IL);
    if (w == 0) return;
    v.pass = false;
    v.witness = json{{"class", model.label(w)}};
  }));

  std::vector<Frac> logs(ns);
  for (int P = 0; P < ns; ++P) {
    out.push_back(guarded("log-theta-res", {P}, [&](Verdict& v) {
      logs[P] = log_unit(ctx.ab_module(P), t.comps[P]);
      expect_equal(v, ctx.ab_module(P), logs[P], sub_to_ab(ctx, res_conj(ctx, Lu, P), P), N);
    }));
  }

  const std::vector<Frac> beta = beta_map(ctx, *IL);
  std::vector<Frac> calL;
  out.push_back(guarded("calL", {}, [&](Verdict&) { calL = calL_map(ctx, t.comps); }));
  if (!calL.empty()) {
    for (int P = 0; P < ns; ++P)
      out.push_back(guarded("beta-formula", {P}, [&](Verdict& v) {
        expect_equal(v, ctx.ab_module(P), calL[P], beta[P], N);
      }));
    for (int P : model.cyclic_ids())
      out.push_back(guarded("calL-trace", {P}, [&](Verdict& v) {
        const ConjModule& mod = ctx.ab_module(P);
        if (mod.in_lattice(calL[P], ctx.trace_lattice(P))) return;
        v.pass = false;
        v.witness = json{{"element", element_to_json(mod.ring(), calL[P].num)},
                         {"lattice", lattice_name(P)}};
      }));
  }

  const std::vector<Elt> al = alpha_tuple(ctx, t.comps);
  for (int P : model.cyclic_ids()) {
    out.push_back(guarded("log-eta-res", {P}, [&](Verdict& v) {
      const GroupRing& A = ctx.ab_ring(P);
      const ConjModule& mod = ctx.ab_module(P);
      Elt den = u_map(ctx, al, P);
      if (P == model.trivial_id()) den = A.mul(den, A.map_coeffs(t.comps[P], &SeriesRing::frobenius));
      Frac lhs = log_unit(mod, A.mul(al[P], A.invert(den)));
      Frac res = sub_to_ab(ctx, res_conj(ctx, *IL, P), P);
      if (P != model.trivial_id()) res = eta_map(ctx, res, P);
      expect_equal(v, mod, lhs, mod.scale_pk(res, 1), N);
    }));
  }

  const Frac phiL = frobenius_conj(C, Lu);
  const std::vector<Frac> beta_phi = beta_map(ctx, phiL);
  const std::vector<Frac> beta_log = beta_map(ctx, Lu);
  for (int P = 0; P < ns; ++P) {
    out.push_back(guarded("beta-restr", {P}, [&](Verdict& v) {
      const ConjModule& mod = ctx.ab_module(P);
      Frac rhs = v_map(ctx, beta_log, P);
      if (P == model.trivial_id()) {
        const Frac& b = beta_log[P];
        rhs = mod.add(rhs, mod.make(mod.ring().map_coeffs(b.num, &SeriesRing::frobenius), b.d, b.K));
      }
      expect_equal(v, mod, beta_phi[P], rhs, N);
    }));
  }

  for (int P = 0; P < ns; ++P) {
    out.push_back(guarded("u-restr", {P}, [&](Verdict& v) {
      const ConjModule& mod = ctx.ab_module(P);
      for (int Q : v_index_set(ctx, P))
        if (logs[Q].num.empty()) logs[Q] = log_unit(ctx.ab_module(Q), t.comps[Q]);
      const Subgroup& s = model.subgroup(P);
      const int shift = s.cyclic ? -1 : ilog(s.order(), p);
      expect_equal(v, mod, log_unit(mod, u_map(ctx, t.comps, P)), v_map(ctx, logs, P, shift), N);
    }));
  }

  for (int P : model.cyclic_ids()) {
    out.push_back(guarded("theta-power", {P}, [&](Verdict& v) {
      const GroupRing& A = ctx.ab_ring(P);
      Elt lhs = A.pow(t.comps[P], static_cast<unsigned long long>(model.subgroup(P).order()));
      expect_equal(v, A, lhs, A.from_series(t.comps[model.trivial_id()][0]), 1);
    }));
    if (P == model.trivial_id()) continue;
    out.push_back(guarded("alpha-unit", {P}, [&](Verdict& v) {
      const GroupRing& A = ctx.ab_ring(P);
      expect_equal(v, A, al[P], A.one(), 1);
    }));
  }

  const FiniteGroup& G = model.group();
  for (int P = 0; P < ns; ++P) {
    out.push_back(guarded("theta-reps", {P}, [&](Verdict& v) {
      const auto& co = ctx.right_coset_of(P);
      std::vector<int> reps(model.data(P).right_reps.size(), -1);
      for (int g = 0; g < G.n; ++g) reps[co[g]] = std::max(reps[co[g]], g);
      expect_equal(v, ctx.ab_ring(P), ctx.theta(xi, P, reps), t.comps[P], N);
    }));
  }
  return out;
}

std::vector<Verdict> check_specialization(const GroupContext& ctx, const GroupContext& ctx0,
                                          const Elt& xi, const std::vector<PadicScalar>& values) {
  const SeriesRing& S = ctx.series();
  const PrimeConfig& prime = S.prime();
  if (values.size() != S.r())
    raise(ErrorKind::BadSpecPoint, "need one value per variable");
  for (const auto& c : values)
    if (!prime.is_zero(prime.reduce(c, 1)))
      raise(ErrorKind::BadSpecPoint, "specialization values must lie in p*O");
  if (ctx0.series().r() != 0 || !ctx0.series().prime().same_as(prime))
    raise(ErrorKind::ConfigMismatch, "target context must have r = 0 over the same prime");

  const unsigned prec = std::min(ctx.N(), S.D() + 1);
  auto eval = [&](const GroupRing& from, const GroupRing& to, const Elt& a) {
    Elt out = to.zero();
    for (std::size_t g = 0; g < a.size(); ++g)
      out[g] = from.series().evaluate_x(a[g], values, to.series());
    return out;
  };
  const Elt xi0 = eval(ctx.ring(), ctx0.ring(), xi);
  std::vector<Verdict> out;
  for (int P = 0; P < ctx.num_subgroups(); ++P) {
    out.push_back(guarded("specialization", {P}, [&](Verdict& v) {
      Elt lhs = eval(ctx.ab_ring(P), ctx0.ab_ring(P), ctx.theta(xi, P));
      expect_equal(v, ctx0.ab_ring(P), lhs, ctx0.theta(xi0, P), prec);
    }));
  }
  return out;
}

// ---- torsion congruence ----

namespace {

std::vector<int> commutator_of(const FiniteGroup& G) {
  std::vector<int> comms;
  for (int a = 0; a < G.n; ++a)
    for (int b = 0; b < G.n; ++b) comms.push_back(G.op(G.op(G.inv(a), G.inv(b)), G.op(a, b)));
  return G.closure(comms);
}

}  // namespace

TorsionSetup make_torsion_setup(const GroupModel& model, SeriesRef ring, unsigned N) {
  const unsigned p = model.p();
  FiniteGroup G = model.group();
  const auto gamma = G.gamma;
  std::fill(G.gamma.begin(), G.gamma.end(), 0u);
  G.gamma_mod = 1;

  std::vector<int> normal;
  for (int g = 0; g < G.n; ++g)
    if (gamma[g] % p == 0) normal.push_back(g);
  int delta = -1;
  for (int g = 0; g < G.n && delta < 0; ++g)
    if (gamma[g] % p != 0) delta = g;

  TorsionSetup s;
  s.label = model.name();
  s.N = N;
  const Quotient A = quotient(G, commutator_of(G));
  const Restriction Nn = restrict_to(G, normal);
  const Quotient Ap = quotient(Nn.group, commutator_of(Nn.group));
  s.A = GroupRing::make(ring, A.group);
  s.Ap = GroupRing::make(ring, Ap.group);

  // Right coset reps delta^i of Nn; ver(g) = prod_i c_i g c_{j(i)}^{-1}.
  std::vector<int> reps;
  for (unsigned i = 0; i < p; ++i) reps.push_back(G.power(delta, i));
  auto coset = [&](int g) {
    for (std::size_t j = 0; j < reps.size(); ++j)
      if (Nn.local[G.op(g, G.inv(reps[j]))] >= 0) return reps[j];
    return -1;
  };
  s.ver.resize(A.group.n);
  for (int a = 0; a < A.group.n; ++a) {
    const int g = A.rep[a];
    int acc = 0;
    for (int c : reps) {
      const int cg = G.op(c, g);
      const int n = G.op(cg, G.inv(coset(cg)));
      acc = Ap.group.op(acc, Ap.proj[Nn.local[n]]);
    }
    s.ver[a] = acc;
  }
  s.delta.resize(Ap.group.n);
  for (int a = 0; a < Ap.group.n; ++a) {
    const int n = Nn.embed[Ap.rep[a]];
    s.delta[a] = Ap.proj[Nn.local[G.op(G.op(delta, n), G.inv(delta))]];
  }

  std::vector<Elt> gens;
  for (int a = 0; a < Ap.group.n; ++a) gens.push_back(torsion_trace(s, s.Ap->basis(a)));
  s.trace = std::make_unique<BlockLattice>(*s.Ap, N, gens, true);
  return s;
}

Elt torsion_ver(const TorsionSetup& s, const Elt& mu) {
  Elt out = s.Ap->zero();
  for (std::size_t a = 0; a < mu.size(); ++a)
    if (!mu[a].is_zero()) s.Ap->add_term(out, s.ver[a], mu[a]);
  return out;
}

namespace {

Elt act(const TorsionSetup& s, const Elt& x) {
  Elt out = s.Ap->zero();
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!x[a].is_zero()) s.Ap->add_term(out, s.delta[a], x[a]);
  return out;
}

}  // namespace

Elt torsion_trace(const TorsionSetup& s, const Elt& x) {
  Elt acc = x;
  Elt cur = x;
  const unsigned p = s.Ap->prime().p();
  for (unsigned k = 1; k < p; ++k) {
    cur = act(s, cur);
    acc = s.Ap->add(acc, cur);
  }
  return acc;
}

bool is_delta_invariant(const TorsionSetup& s, const Elt& x) {
  return s.Ap->is_zero(s.Ap->reduce(s.Ap->sub(act(s, x), x), s.N));
}

std::optional<Elt> torsion_non_trace_invariant(const TorsionSetup& s) {
  std::vector<char> seen(s.delta.size(), 0);
  for (std::size_t a = 0; a < s.delta.size(); ++a) {
    if (seen[a]) continue;
    Elt orbit = s.Ap->zero();
    for (int b = static_cast<int>(a); !seen[b]; b = s.delta[b]) {
      seen[b] = 1;
      s.Ap->add_term(orbit, b, s.Ap->series().one());
    }
    if (!s.trace->contains(orbit)) return orbit;
  }
  return std::nullopt;
}

Verdict check_torsion_congruence(const TorsionSetup& s, const Elt& mu_F, const Elt& mu_Fp) {
  if (!is_delta_invariant(s, mu_Fp))
    raise(ErrorKind::NotDeltaInvariant, "subgroup-side element is not Delta-invariant");
  Verdict v{"torsion", {}, true, std::nullopt};
  expect_member(v, *s.Ap, *s.trace, s.Ap->sub(torsion_ver(s, mu_F), mu_Fp), "trace(Delta)");
  return v;
}

}  // namespace k1lab
