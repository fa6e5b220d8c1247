#include "k1lab/pgroup.hpp"

#include <algorithm>
#include <set>

namespace k1lab {

namespace {

bool is_power_of(long long n, unsigned p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

std::vector<std::vector<int>> square_table(int p) {
  int n = p * p;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[a][b] = ((a / p + b / p) % p) * p + (a % p + b % p) % p;
  return t;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return s;
}

}  // namespace

int FiniteGroup::order_of(int g) const {
  int k = 1;
  for (int x = g; x != 0; x = op(x, g)) ++k;
  return k;
}

int FiniteGroup::power(int g, long long k) const {
  long long ord = order_of(g);
  k %= ord;
  if (k < 0) k += ord;
  int r = 0;
  for (long long i = 0; i < k; ++i) r = op(r, g);
  return r;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::closure(std::span<const int> gens) const {
  std::vector<char> seen(n, 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      int y = op(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

TwistedElt twisted_mul(const FiniteGroup& G, TwistedElt a, TwistedElt b) {
  return {G.op(a.g, b.g), a.m + b.m + G.carry(a.g, b.g)};
}

TwistedElt twisted_inv(const FiniteGroup& G, TwistedElt a) {
  int gi = G.inv(a.g);
  return {gi, -a.m - G.carry(a.g, gi)};
}

TwistedElt twisted_pow(const FiniteGroup& G, TwistedElt a, long long k) {
  if (k < 0) return twisted_pow(G, twisted_inv(G, a), -k);
  TwistedElt r{0, 0};
  while (k) {
    if (k & 1) r = twisted_mul(G, r, a);
    a = twisted_mul(G, a, a);
    k >>= 1;
  }
  return r;
}

TwistedElt twisted_conj(const FiniteGroup& G, int x, int g) {
  TwistedElt xi = twisted_inv(G, {x, 0});
  return twisted_mul(G, twisted_mul(G, xi, {g, 0}), {x, 0});
}

Restriction restrict_to(const FiniteGroup& G, std::span<const int> subgroup) {
  Restriction r;
  r.embed.assign(subgroup.begin(), subgroup.end());
  std::sort(r.embed.begin(), r.embed.end());
  r.local.assign(G.n, -1);
  for (std::size_t i = 0; i < r.embed.size(); ++i) r.local[r.embed[i]] = static_cast<int>(i);
  const int m = static_cast<int>(r.embed.size());
  r.group.n = m;
  r.group.gamma_mod = G.gamma_mod;
  r.group.table.resize(static_cast<std::size_t>(m) * m);
  r.group.inverse.resize(m);
  r.group.gamma.resize(m);
  for (int i = 0; i < m; ++i) {
    r.group.gamma[i] = G.gamma[r.embed[i]];
    r.group.inverse[i] = r.local[G.inv(r.embed[i])];
    for (int j = 0; j < m; ++j) {
      int v = r.local[G.op(r.embed[i], r.embed[j])];
      if (v < 0) raise(ErrorKind::NotSubgroupChain, "subset is not closed under multiplication");
      r.group.table[static_cast<std::size_t>(i) * m + j] = v;
    }
  }
  return r;
}

Quotient quotient(const FiniteGroup& G, std::span<const int> K) {
  Quotient q;
  for (int k : K)
    if (G.gamma[k] != 0) raise(ErrorKind::InvalidConfig, "quotient by a subgroup outside H");
  q.proj.assign(G.n, -1);
  for (int g = 0; g < G.n; ++g) {
    if (q.proj[g] >= 0) continue;
    int idx = static_cast<int>(q.rep.size());
    q.rep.push_back(g);
    for (int k : K) q.proj[G.op(g, k)] = idx;
  }
  for (int g = 0; g < G.n; ++g)
    for (int k : K)
      if (q.proj[G.op(k, g)] != q.proj[g]) raise(ErrorKind::InvalidConfig, "subgroup is not normal");
  const int m = static_cast<int>(q.rep.size());
  q.group.n = m;
  q.group.gamma_mod = G.gamma_mod;
  q.group.table.resize(static_cast<std::size_t>(m) * m);
  q.group.inverse.resize(m);
  q.group.gamma.resize(m);
  for (int i = 0; i < m; ++i) {
    q.group.gamma[i] = G.gamma[q.rep[i]];
    q.group.inverse[i] = q.proj[G.inv(q.rep[i])];
    for (int j = 0; j < m; ++j)
      q.group.table[static_cast<std::size_t>(i) * m + j] = q.proj[G.op(q.rep[i], q.rep[j])];
  }
  return q;
}

std::vector<std::string> catalog_names(unsigned p) {
  const std::string s = std::to_string(p), s2 = std::to_string(p * p),
                    s3 = std::to_string(p * p * p);
  return {"C" + s,        "C" + s2,        "C" + s3,        "C" + s + "xC" + s,
          "C" + s + "xC" + s2, "Heisenberg" + s3, "M" + s3};
}

GroupSpec catalog_spec(const std::string& name, unsigned p) {
  const auto names = catalog_names(p);
  const int ip = static_cast<int>(p);
  GroupSpec spec;
  spec.catalog = name;
  if (name == names[0] || name == names[1] || name == names[2]) {
    spec.cayley = cyclic_table(1);
    spec.sigma = identity_perm(1);
    spec.e = name == names[0] ? 1 : name == names[1] ? 2 : 3;
  } else if (name == names[3] || name == names[4]) {
    spec.cayley = cyclic_table(ip);
    spec.sigma = identity_perm(ip);
    spec.e = name == names[3] ? 1 : 2;
  } else if (name == names[5]) {
    spec.cayley = square_table(ip);
    spec.sigma.resize(ip * ip);
    for (int x = 0; x < ip; ++x)
      for (int y = 0; y < ip; ++y) spec.sigma[x * ip + y] = x * ip + (x + y) % ip;
    spec.e = 1;
  } else if (name == names[6]) {
    spec.cayley = cyclic_table(ip * ip);
    spec.sigma.resize(ip * ip);
    for (int x = 0; x < ip * ip; ++x) spec.sigma[x] = (x * (1 + ip)) % (ip * ip);
    spec.e = 1;
  } else {
    raise(ErrorKind::InvalidConfig, "unknown catalog group '" + name + "'");
  }
  return spec;
}

std::shared_ptr<const GroupModel> GroupModel::build(const GroupSpec& spec_in, unsigned p) {
  GroupSpec spec = spec_in;
  if (!spec.catalog.empty() && spec.cayley.empty()) spec = catalog_spec(spec.catalog, p);
  const int n = static_cast<int>(spec.cayley.size());
  if (n == 0) raise(ErrorKind::BadCayleyTable, "empty Cayley table");
  for (const auto& row : spec.cayley) {
    if (static_cast<int>(row.size()) != n) raise(ErrorKind::BadCayleyTable, "table is not square");
    std::vector<char> seen(n, 0);
    for (int v : row) {
      if (v < 0 || v >= n || seen[v]) raise(ErrorKind::BadCayleyTable, "row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int i = 0; i < n; ++i)
    if (spec.cayley[0][i] != i || spec.cayley[i][0] != i)
      raise(ErrorKind::BadCayleyTable, "element 0 must be the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (spec.cayley[spec.cayley[a][b]][c] != spec.cayley[a][spec.cayley[b][c]])
          raise(ErrorKind::BadCayleyTable, "table is not associative");
  if (!is_power_of(n, p)) raise(ErrorKind::InvalidConfig, "|H| must be a power of p");
  if (spec.e < 1) raise(ErrorKind::InvalidConfig, "depth e must be >= 1");
  if (static_cast<int>(spec.sigma.size()) != n)
    raise(ErrorKind::NotAutomorphism, "sigma has the wrong length");
  {
    std::vector<char> seen(n, 0);
    for (int v : spec.sigma) {
      if (v < 0 || v >= n || seen[v]) raise(ErrorKind::NotAutomorphism, "sigma is not a bijection");
      seen[v] = 1;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (spec.sigma[spec.cayley[a][b]] != spec.cayley[spec.sigma[a]][spec.sigma[b]])
        raise(ErrorKind::NotAutomorphism, "sigma is not multiplicative");
  long long pe = 1;
  for (unsigned i = 0; i < spec.e; ++i) pe *= p;
  if (pe * n > 243) raise(ErrorKind::InvalidConfig, "group order exceeds 243");
  std::vector<std::vector<int>> sig_pow(pe, std::vector<int>(n));
  sig_pow[0] = identity_perm(n);
  for (long long a = 1; a < pe; ++a)
    for (int h = 0; h < n; ++h) sig_pow[a][h] = spec.sigma[sig_pow[a - 1][h]];
  for (int h = 0; h < n; ++h)
    if (spec.sigma[sig_pow[pe - 1][h]] != h)
      raise(ErrorKind::OrderViolation, "sigma^(p^e) is not the identity");

  auto model = std::shared_ptr<GroupModel>(new GroupModel());
  model->p_ = p;
  model->e_ = spec.e;
  model->name_ = spec.catalog.empty() ? "custom" : spec.catalog;
  model->h_order_ = n;
  FiniteGroup& G = model->G_;
  G.n = static_cast<int>(n * pe);
  G.gamma_mod = static_cast<unsigned>(pe);
  G.table.resize(static_cast<std::size_t>(G.n) * G.n);
  G.gamma.resize(G.n);
  for (int h = 0; h < n; ++h)
    for (long long a = 0; a < pe; ++a) {
      int g = static_cast<int>(h * pe + a);
      G.gamma[g] = static_cast<unsigned>(a);
      for (int h2 = 0; h2 < n; ++h2)
        for (long long b = 0; b < pe; ++b) {
          int prod_h = spec.cayley[h][sig_pow[a][h2]];
          long long prod_a = (a + b) % pe;
          G.table[static_cast<std::size_t>(g) * G.n + h2 * pe + b] =
              static_cast<int>(prod_h * pe + prod_a);
        }
    }
  G.inverse.resize(G.n);
  for (int g = 0; g < G.n; ++g)
    for (int x = 0; x < G.n; ++x)
      if (G.op(g, x) == 0) {
        G.inverse[g] = x;
        break;
      }
  model->build_lattice();
  model->build_classes();
  model->build_subgroup_data();
  return model;
}

std::string GroupModel::label(int g) const {
  auto [h, a] = coords(g);
  return "(" + std::to_string(h) + "," + std::to_string(a) + ")";
}

void GroupModel::build_lattice() {
  std::set<std::vector<int>> seen;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> queue;  // (elems, gens)
  std::vector<int> triv{0};
  seen.insert(triv);
  queue.push_back({triv, {}});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto elems = queue[qi].first;
    const auto gens = queue[qi].second;
    std::vector<char> in(G_.n, 0);
    for (int x : elems) in[x] = 1;
    for (int g = 0; g < G_.n; ++g) {
      if (in[g]) continue;
      std::vector<int> ng = gens;
      ng.push_back(g);
      auto cl = G_.closure(ng);
      if (seen.insert(cl).second) queue.push_back({cl, ng});
    }
  }
  std::vector<std::vector<int>> all(seen.begin(), seen.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  subs_.clear();
  for (std::size_t i = 0; i < all.size(); ++i) {
    Subgroup s;
    s.id = static_cast<int>(i);
    s.elems = all[i];
    s.mask.assign(G_.n, 0);
    for (int x : s.elems) s.mask[x] = 1;
    for (int x : s.elems)
      if (G_.order_of(x) == s.order()) {
        s.cyclic = true;
        s.generator = x;
        break;
      }
    sub_index_[s.elems] = s.id;
    subs_.push_back(std::move(s));
  }
  // Minimal generating set: lift a basis of G / Frattini.
  std::vector<int> frat;
  for (int a = 0; a < G_.n; ++a) {
    frat.push_back(G_.power(a, p_));
    for (int b = 0; b < G_.n; ++b) frat.push_back(G_.op(G_.op(a, b), G_.op(G_.inv(a), G_.inv(b))));
  }
  std::sort(frat.begin(), frat.end());
  frat.erase(std::unique(frat.begin(), frat.end()), frat.end());
  gens_.clear();
  std::vector<int> cur = G_.closure(frat);
  for (int g = 0; g < G_.n && static_cast<int>(cur.size()) < G_.n; ++g) {
    if (std::binary_search(cur.begin(), cur.end(), g)) continue;
    gens_.push_back(g);
    frat.push_back(g);
    cur = G_.closure(frat);
  }
}

void GroupModel::build_classes() {
  class_of_.assign(G_.n, -1);
  classes_.clear();
  for (int g = 0; g < G_.n; ++g) {
    if (class_of_[g] >= 0) continue;
    std::set<int> cls;
    for (int x = 0; x < G_.n; ++x) cls.insert(G_.op(G_.op(x, g), G_.inv(x)));
    int id = static_cast<int>(classes_.size());
    for (int y : cls) class_of_[y] = id;
    classes_.emplace_back(cls.begin(), cls.end());
  }
  center_.clear();
  for (int g = 0; g < G_.n; ++g)
    if (classes_[class_of_[g]].size() == 1) center_.push_back(g);
}

int GroupModel::find_subgroup(std::span<const int> sorted_elems) const {
  auto it = sub_index_.find(std::vector<int>(sorted_elems.begin(), sorted_elems.end()));
  return it == sub_index_.end() ? -1 : it->second;
}

int GroupModel::conjugate_id(int id, int g) const {
  std::vector<int> el;
  for (int x : subs_.at(id).elems) el.push_back(G_.op(G_.op(g, x), G_.inv(g)));
  std::sort(el.begin(), el.end());
  return find_subgroup(el);
}

bool GroupModel::is_subgroup_of(int a, int b) const {
  for (int x : subs_.at(a).elems)
    if (!subs_.at(b).contains(x)) return false;
  return true;
}

std::vector<int> GroupModel::cyclic_ids() const {
  std::vector<int> out;
  for (const auto& s : subs_)
    if (s.cyclic) out.push_back(s.id);
  return out;
}

std::vector<int> GroupModel::right_reps_in(int P, int Pp) const {
  const auto& sp = subs_.at(P);
  std::vector<char> done(G_.n, 0);
  std::vector<int> reps;
  for (int g : subs_.at(Pp).elems) {
    if (done[g]) continue;
    reps.push_back(g);
    for (int h : sp.elems) done[G_.op(h, g)] = 1;
  }
  return reps;
}

void GroupModel::build_subgroup_data() {
  data_.clear();
  data_.resize(subs_.size());
  long long pe = G_.gamma_mod;
  for (const auto& s : subs_) {
    SubgroupData& d = data_[s.id];
    d.sub = restrict_to(G_, s.elems);
    std::vector<int> comm_gens;
    for (int a : s.elems)
      for (int b : s.elems) comm_gens.push_back(G_.op(G_.op(a, b), G_.op(G_.inv(a), G_.inv(b))));
    std::sort(comm_gens.begin(), comm_gens.end());
    comm_gens.erase(std::unique(comm_gens.begin(), comm_gens.end()), comm_gens.end());
    d.commutator = G_.closure(comm_gens);
    std::vector<int> comm_local;
    for (int x : d.commutator) comm_local.push_back(d.sub.local[x]);
    d.ab = quotient(d.sub.group, comm_local);
    d.ab_of.assign(G_.n, -1);
    for (int x : s.elems) d.ab_of[x] = d.ab.proj[d.sub.local[x]];
    d.ab_rep.resize(d.ab.rep.size());
    for (std::size_t i = 0; i < d.ab.rep.size(); ++i) d.ab_rep[i] = d.sub.embed[d.ab.rep[i]];
    for (int i = 0; i < d.ab.group.n; ++i)
      if (d.ab.group.gamma[i] == 0) d.torsion.push_back(i);
    unsigned best = 0;
    for (int x : s.elems) {
      unsigned gx = G_.gamma[x];
      if (gx > 0 && (best == 0 || gx < best)) {
        best = gx;
        d.u0 = x;
      }
    }
    if (d.u0 < 0) {
      d.c = e_;
      d.b0 = 0;
      d.u0_exponent = 1;
    } else {
      unsigned c = 0;
      for (unsigned v = best; v % p_ == 0; v /= p_) ++c;
      d.c = c;
      d.u0_exponent = pe / best;
      TwistedElt w = twisted_pow(d.ab.group, {d.ab_of[d.u0], 0}, d.u0_exponent);
      if (w.m != 1 || d.ab.group.gamma[w.g] != 0)
        raise(ErrorKind::InvalidConfig, "unexpected Gamma structure of a subgroup");
      d.b0 = d.ab.group.inv(w.g);
    }
    std::vector<char> done(G_.n, 0);
    for (int g = 0; g < G_.n; ++g) {
      if (done[g]) continue;
      d.right_reps.push_back(g);
      for (int h : s.elems) done[G_.op(h, g)] = 1;
    }
    std::fill(done.begin(), done.end(), 0);
    for (int g = 0; g < G_.n; ++g) {
      if (done[g]) continue;
      d.left_reps.push_back(g);
      for (int h : s.elems) done[G_.op(g, h)] = 1;
    }
    for (int g = 0; g < G_.n; ++g)
      if (conjugate_id(s.id, g) == s.id) d.normalizer.push_back(g);
    if (s.cyclic) {
      int cp = G_.power(s.generator, p_);
      std::vector<int> gens{cp};
      d.pth_power = find_subgroup(G_.closure(gens));
    }
  }
  for (const auto& s : subs_) {
    if (!s.cyclic) continue;
    int target = data_[s.id].pth_power;
    if (target != s.id) data_[target].cp_set.push_back(s.id);
  }
}

TwistedElt GroupModel::transfer(int g, long long texp, int P, int Pp,
                                std::span<const int> reps_in) const {
  if (!is_subgroup_of(P, Pp)) raise(ErrorKind::NotSubgroupChain, "P is not contained in P'");
  const auto& sp = subs_.at(P);
  const auto& spp = subs_.at(Pp);
  if (!spp.contains(g)) raise(ErrorKind::NotSubgroupChain, "element is not in P'");
  std::vector<int> reps = reps_in.empty() ? right_reps_in(P, Pp)
                                          : std::vector<int>(reps_in.begin(), reps_in.end());
  const std::size_t index = spp.elems.size() / sp.elems.size();
  if (reps.size() != index) raise(ErrorKind::NotSubgroupChain, "wrong number of coset representatives");
  std::vector<int> coset_of(G_.n, -1);
  for (std::size_t j = 0; j < reps.size(); ++j)
    for (int h : sp.elems) {
      int x = G_.op(h, reps[j]);
      if (!spp.contains(x) || coset_of[x] >= 0)
        raise(ErrorKind::NotSubgroupChain, "representatives do not form a transversal");
      coset_of[x] = static_cast<int>(j);
    }
  const SubgroupData& d = data_.at(P);
  TwistedElt acc{0, 0};
  for (int c : reps) {
    int x = G_.op(c, g);
    int j = coset_of[x];
    int h = G_.op(x, G_.inv(reps[j]));
    int k = G_.carry(c, g) - G_.carry(h, reps[j]);
    acc = twisted_mul(d.ab.group, acc, {d.ab_of[h], k});
  }
  acc.m += texp * static_cast<long long>(index);
  return acc;
}

TwistedElt GroupModel::transfer_ab(TwistedElt x, int P, int Pp) const {
  return transfer(data_.at(Pp).ab_rep.at(x.g), x.m, P, Pp);
}

AbCoords GroupModel::abelian_coords(int P, TwistedElt x) const {
  const SubgroupData& d = data_.at(P);
  AbCoords out;
  out.t = x.m;
  if (d.u0 < 0) {
    out.b = x.g;
    return out;
  }
  const auto& A = d.ab.group;
  long long step = static_cast<long long>(d.ab.group.gamma[d.ab_of[d.u0]]);
  out.k = A.gamma[x.g] / step;
  TwistedElt uk = twisted_pow(A, {d.ab_of[d.u0], 0}, out.k);
  out.b = A.op(x.g, A.inv(uk.g));
  return out;
}

}  // namespace k1lab
