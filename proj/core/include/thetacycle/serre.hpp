#pragma once

#include "thetacycle/forms.hpp"

namespace thetacycle {

// Serre derivative of a weight-k series: theta(f) - (k/12) E_2 f, landing in
// weight k + 2.  Requires a weight tag (the quasi-modular E_2 itself is not
// accepted).  The E_2 overload avoids recomputing E_2 in inner loops.
QSeries serre_derivative(const QSeries& f);
QSeries serre_derivative(const QSeries& f, const QSeries& e2);

// Iterated modified Serre derivative: with f of weight k,
//   D^0 f = f,  D^1 f = serre_derivative(f),
//   D^(i+1) f = serre_derivative(D^i f) - i(i+k-1)/144 * E4 * D^(i-1) f,
// a form of weight k + 2i.
QSeries modified_serre_power(const QSeries& f, unsigned i);
QSeries modified_serre_power(const QSeries& f, unsigned i,
                             const QSeries& e2, const QSeries& e4);

// theta^i f as the finite sum over j of
//   C(i,j) * (i+k-1)!/(j+k-1)! * D^j f * (E_2/12)^(i-j),
// the factorial ratio evaluated as a product of consecutive integers in
// (valuation, unit) form.  Agrees with i applications of theta_apply.
QSeries theta_power_expansion(const QSeries& f, unsigned i);

// Weight 2 + 2p(p-1) holomorphic representative of E_2 mod p^2:
//   12 serre_derivative(E_{p-1}) E_{p-1}^(2p-1) + p E_{p+1}^p E_{p-1}^(p-2).
// Requires m = 2.  Verified against eisenstein_qexp(2) on construction.
QSeries e2_representative_mod_p2(const Modulus& mod, std::size_t n);

} // namespace thetacycle
