#pragma once

#include <vector>

#include "k1lab/groupring.hpp"

namespace k1lab {

struct ExpResult {
  Elt value;
  int prec = 0;  // value is known modulo p^prec
};

// Log(1+x) for x in the Jacobson radical, via Log(1+x) = p^{-k} Log((1+x)^{p^k}).
Frac log_radical(const ConjModule& C, const Elt& x);
// Log of u / teichmuller(residue(u)); the torsion factor maps to zero.
Frac log_unit(const ConjModule& C, const Elt& u);
// exp(x) = sum x^n/n! for x in p*ring.
ExpResult exp_radical(const GroupRing& R, const Elt& x);

// Coefficientwise Frobenius with g^tau -> (g^tau)^p.
Frac frobenius_conj(const ConjModule& C, const Frac& c);
// log - p^{-1} phi_conj(log); raises IntegralityViolation when the division does not clear.
Frac integral_log(const ConjModule& C, const Elt& u);

// Sum over cosets xP with x^{-1} g x in P of the twisted conjugate, pushed to P^ab.
Frac t_map(const GroupContext& ctx, const Frac& c, int P);
// The same sum into the conjugacy module of P.
Frac res_conj(const GroupContext& ctx, const Frac& c, int P);
// Conjugacy module of P -> R[P^ab].
Frac sub_to_ab(const GroupContext& ctx, const Frac& c, int P);

// Keeps the coefficients of elements generating the (cyclic) group of A.
Elt eta_generic(const GroupRing& A, const Elt& x);
Frac eta_map(const GroupContext& ctx, const Frac& x, int P);
std::vector<Frac> beta_map(const GroupContext& ctx, const Frac& c);
Frac delta_map(const GroupContext& ctx, const std::vector<Frac>& t);

// x -> x^p (P trivial or non-cyclic), x^p (prod_k omega^k(x))^{-1} for cyclic P != 1.
Elt alpha_map(const GroupContext& ctx, const Elt& x, int P);
// prod_k omega_P^k(x), descended to R[P].
Elt cyclo_product(const GroupContext& ctx, const Elt& x, int P);

// Ring map R[P'^ab] -> R[P^ab], a g -> phi(a) (g^tau)^p, for cyclic P' with P'^p <= P.
Elt phi_push(const GroupContext& ctx, const Elt& x, int Pp, int P);
// Cyclic P' with P'^p <= P (all of them for non-cyclic P; P'^p = P, P' != P for cyclic P).
std::vector<int> v_index_set(const GroupContext& ctx, int P);
Elt u_map(const GroupContext& ctx, const std::vector<Elt>& x, int P);
// p^shift * v_P((y_C)).
Frac v_map(const GroupContext& ctx, const std::vector<Frac>& y, int P, int shift = 0);

// Image in the Frattini quotient of G: minimal representative of prod g^{Tr(a_g mod m)}.
int omega_gab(const GroupContext& ctx, const Frac& c);

std::vector<Elt> alpha_tuple(const GroupContext& ctx, const std::vector<Elt>& xi);
// The additive tuple attached to a tuple of units; DenominatorNotCleared on non-integral output.
std::vector<Frac> calL_map(const GroupContext& ctx, const std::vector<Elt>& xi);

}  // namespace k1lab
