#include "k1lab/runner.hpp"

#include <chrono>
#include <map>
#include <set>
#include <tuple>

namespace k1lab {

using nlohmann::json;

namespace {

enum Stream : std::uint64_t {
  kUnits = 0,
  kMutation = 1,
  kAdditive = 2,
  kDiagrams = 3,
  kSpecialization = 4,
  kTorsion = 5,
  kArithmetic = 6,
};

class Aggregator {
 public:
  explicit Aggregator(Report& rep) : rep_(rep) {}

  void add(const std::string& suite, const Verdict& v) {
    auto key = std::make_tuple(suite, v.name, v.ids);
    auto [it, fresh] = index_.try_emplace(key, rep_.checks.size());
    if (fresh) rep_.checks.push_back(CheckRecord{suite, v.name, v.ids, 0, 0, nullptr});
    CheckRecord& rec = rep_.checks[it->second];
    ++rec.samples;
    if (!v.pass) {
      if (rec.failures == 0) rec.witness = v.witness.value_or(json::object());
      ++rec.failures;
    }
  }
  void add(const std::string& suite, const std::vector<Verdict>& vs) {
    for (const auto& v : vs) add(suite, v);
  }

 private:
  Report& rep_;
  std::map<std::tuple<std::string, std::string, std::vector<int>>, std::size_t> index_;
};

Verdict verdict(std::string name, std::vector<int> ids, bool pass, json witness = nullptr) {
  Verdict v{std::move(name), std::move(ids), pass, std::nullopt};
  if (!pass) v.witness = std::move(witness);
  return v;
}

Verdict error_verdict(std::string name, const Error& e) {
  return verdict(std::move(name), {}, false,
                 json{{"error", to_string(e.kind())}, {"message", e.what()}});
}

bool same_at(const GroupRing& R, const Elt& a, const Elt& b, unsigned prec) {
  return R.is_zero(R.reduce(R.sub(a, b), prec));
}

void run_c1c4(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  for (unsigned i = 0; i < cfg.samples; ++i) {
    try {
      CongruenceTuple t = build_tuple(ctx, sample_unit(ctx.ring(), cfg.seed, i));
      if (cfg.mutate) {
        Rng rng(cfg.seed, i, kMutation);
        mutate_tuple(ctx, t, rng);
      }
      agg.add("c1c4", check_c1_c4(ctx, t));
    } catch (const Error& e) {
      agg.add("c1c4", error_verdict("tuple", e));
    }
  }
  if (cfg.samples == 0) return;

  unsigned rejected = 0;
  std::map<std::string, unsigned> per_check;
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kMutation);
    CongruenceTuple t = build_tuple(ctx, random_unit(ctx.ring(), rng));
    mutate_tuple(ctx, t, rng);
    std::set<std::string> failed;
    for (const auto& v : check_c1_c4(ctx, t))
      if (!v.pass) failed.insert(v.name);
    if (!failed.empty()) ++rejected;
    for (const auto& n : failed) ++per_check[n];
  }
  const bool ok = 10 * rejected >= 9 * cfg.samples;
  agg.add("c1c4", verdict("mutation-sensitivity", {}, ok,
                          json{{"rejected", rejected}, {"trials", cfg.samples},
                               {"per_check", per_check}}));
}

void run_additive(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kAdditive);
    try {
      const Frac c = ctx.conj().make(random_element(ctx.ring(), rng));
      agg.add("additive", check_additive(ctx, c));
    } catch (const Error& e) {
      agg.add("additive", error_verdict("additive", e));
    }
  }
}

void run_diagrams(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kDiagrams);
    try {
      agg.add("diagrams", check_diagrams(ctx, random_unit(ctx.ring(), rng)));
    } catch (const Error& e) {
      agg.add("diagrams", error_verdict("diagrams", e));
    }
  }
}

void run_specialization(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  EngineConfig flat = engine_config(cfg);
  flat.r = 0;
  const auto ctx0 = make_context(flat, ctx.model_ref());
  const PrimeConfig& P = ctx.series().prime();
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kSpecialization);
    try {
      const Elt xi = random_unit(ctx.ring(), rng);
      std::vector<PadicScalar> values;
      for (unsigned j = 0; j < cfg.r; ++j) values.push_back(P.mul_int(random_scalar(P, rng), P.p()));
      agg.add("specialization", check_specialization(ctx, *ctx0, xi, values));
    } catch (const Error& e) {
      agg.add("specialization", error_verdict("specialization", e));
    }
  }
}

void run_torsion(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  const TorsionSetup s = make_torsion_setup(ctx.model(), ctx.series_ref(), ctx.N());
  const std::optional<Elt> outside = torsion_non_trace_invariant(s);
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kTorsion);
    const Elt mu = random_element(*s.A, rng);
    const Elt image = torsion_ver(s, mu);
    Verdict v = check_torsion_congruence(s, mu, image);
    v.name = "torsion-ver";
    agg.add("torsion", v);

    const Elt shift = torsion_trace(s, random_element(*s.Ap, rng));
    v = check_torsion_congruence(s, mu, s.Ap->add(image, shift));
    v.name = "torsion-trace";
    agg.add("torsion", v);

    if (!outside) {
      agg.add("torsion", verdict("torsion-negative", {}, false,
                                 json{{"error", "no invariant element outside the trace lattice"}}));
      continue;
    }
    v = check_torsion_congruence(s, mu, s.Ap->add(image, *outside));
    const bool rejected = !v.pass && v.witness.has_value();
    agg.add("torsion", verdict("torsion-negative", {}, rejected,
                               json{{"error", "non-trace perturbation was accepted"}}));
  }
}

void run_arithmetic(const RunConfig& cfg, const GroupContext& ctx, Aggregator& agg) {
  const GroupRing& R = ctx.ring();
  const ConjModule& C = ctx.conj();
  const ConjModule flat(ctx.ring_ref(), nullptr);
  const unsigned N = ctx.N();
  const char* suite = "arithmetic-properties";
  for (unsigned i = 0; i < cfg.samples; ++i) {
    Rng rng(cfg.seed, i, kArithmetic);
    try {
      const Elt a = random_element(R, rng), b = random_element(R, rng), c = random_element(R, rng);
      const bool assoc = R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c));
      const bool distrib = R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c));
      agg.add(suite, verdict("ring-axioms", {}, assoc && distrib,
                             json{{"associative", assoc}, {"distributive", distrib}}));

      const Elt u = random_unit(R, rng), w = random_unit(R, rng);
      const Elt ui = R.invert(u);
      agg.add(suite, verdict("inverse", {}, R.mul(u, ui) == R.one() && R.mul(ui, u) == R.one(),
                             json{{"unit", element_to_json(R, u)}}));

      const Frac sum = C.add(log_unit(C, u), log_unit(C, w));
      agg.add(suite, verdict("log-additive", {}, C.equal_at(sum, log_unit(C, R.mul(u, w)), N),
                             json{{"unit", element_to_json(R, u)}}));

      try {
        const Frac il = integral_log(C, u);
        agg.add(suite, verdict("integrality", {}, il.d == 0, json{{"denominator_exponent", il.d}}));
      } catch (const Error& e) {
        agg.add(suite, error_verdict("integrality", e));
      }

      const Elt x = random_p_element(R, rng);
      const Frac L = log_radical(flat, x);
      if (L.d != 0) raise(ErrorKind::NotInScaledIdeal, "log of 1 + p*ring left p*ring");
      const ExpResult E = exp_radical(R, L.num);
      const int prec = std::min({static_cast<int>(N), E.prec, L.K});
      agg.add(suite, verdict("exp-log", {}, prec == static_cast<int>(N) && same_at(R, E.value, R.add(R.one(), x), N),
                             json{{"x", element_to_json(R, x)}, {"precision", prec}}));

      const Elt y = random_p_element(R, rng);
      const ExpResult Ey = exp_radical(R, y);
      const Frac Ly = log_radical(flat, R.sub(Ey.value, R.one()));
      agg.add(suite, verdict("log-exp", {},
                             Ey.prec >= static_cast<int>(N) && flat.equal_at(Ly, flat.make(y), N),
                             json{{"y", element_to_json(R, y)}}));
    } catch (const Error& e) {
      agg.add(suite, error_verdict("arithmetic", e));
    }
  }
  if (cfg.samples == 0) return;

  const GroupModel& model = ctx.model();
  for (int P = 0; P < ctx.num_subgroups(); ++P) {
    json witness = nullptr;
    for (int g = 0; g < model.order() && witness.is_null(); ++g) {
      const TwistedElt te = model.transfer(g, 0, P, model.full_id());
      const GroupRing& A = ctx.ab_ring(P);
      if (ctx.theta(R.basis(g), P) != A.basis(te.g, te.m))
        witness = json{{"element", g}, {"label", model.label(g)}};
    }
    agg.add(suite, verdict("theta-transfer", {P}, witness.is_null(), witness));
  }
}

}  // namespace

EngineConfig engine_config(const RunConfig& cfg) {
  return EngineConfig{cfg.p, cfg.f, cfg.N, cfg.guard, cfg.r, cfg.D, cfg.D_T};
}

GroupRef build_group(const RunConfig& cfg) { return GroupModel::build(cfg.group, cfg.p); }

Elt sample_unit(const GroupRing& R, std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index, kUnits);
  return random_unit(R, rng);
}

Report run_suites(const RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  validate(cfg);

  Report rep;
  rep.config = cfg;
  const GroupRef model = build_group(cfg);
  const auto ctx = make_context(engine_config(cfg), model);
  rep.group.name = model->name();
  rep.group.order = model->order();
  rep.group.subgroups = ctx->num_subgroups();
  for (const auto& s : model->subgroups())
    rep.group.subgroup_labels.push_back(std::to_string(s.id) + ":order " +
                                        std::to_string(s.order()) + (s.cyclic ? " cyclic" : ""));

  Aggregator agg(rep);
  using Runner = void (*)(const RunConfig&, const GroupContext&, Aggregator&);
  const std::map<std::string, Runner> runners = {
      {"c1c4", run_c1c4},
      {"additive", run_additive},
      {"diagrams", run_diagrams},
      {"specialization", run_specialization},
      {"torsion", run_torsion},
      {"arithmetic-properties", run_arithmetic},
  };
  for (const auto& suite : cfg.suites) {
    if (rep.timing.count(suite)) continue;
    const auto t0 = clock::now();
    runners.at(suite)(cfg, *ctx, agg);
    rep.timing[suite] = std::chrono::duration<double>(clock::now() - t0).count();
  }
  rep.timing["total"] = std::chrono::duration<double>(clock::now() - start).count();
  return rep;
}

}  // namespace k1lab
