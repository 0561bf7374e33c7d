#pragma once

#include "eps0/chars.hpp"
#include "eps0/virtualrep.hpp"

namespace eps0 {

struct Eps0Result {
    CycNum value;
    bool certified_unit;     // always true on return; failures throw
    int64_t gamma_valuation; // Sw(chi) + n(psi) + 1 for rank-1 inputs, -1 otherwise
    int64_t level;           // cyclotomic level of the value
};

/// The rank-1 epsilon factor: the integral of chi^{-1} psi over
/// gamma^{-1} O_K^x with v(gamma) = Sw(chi) + n(psi) + 1, evaluated as a
/// finite sum over unit cosets modulo 1 + pi^M O with M = max(a(chi), 1).
/// The result is certified to be a unit of Z[1/p][zeta]; the certificate
/// failing throws TheoremViolation.
Eps0Result epsilon0_char(const MulChar& chi, const AdditiveCharacter& psi,
                         const HaarMeasure& dx);

// Same, with an explicit gamma; only v(gamma) enters the computation, so any
// unit multiple produces the identical result.
Eps0Result epsilon0_char_with_gamma(const MulChar& chi, const AdditiveCharacter& psi,
                                    const HaarMeasure& dx, const KElement& gamma);

// closed form -theta(pi)^{n+1} q^n vol for unramified theta, used as an
// independent cross-check of the shell sum
CycNum epsilon0_unramified_formula(const MulChar& theta, const AdditiveCharacter& psi,
                                   const HaarMeasure& dx);

/// Multiplicative extension to virtual representations. Base atoms go through
/// epsilon0_char; an atom induced from the unramified extension L of degree
/// f' is computed as
///   eps0(chi, psi o Tr, dx_L) * eps0(1_L, psi o Tr, dx_L)^{-1}
///     * prod_eta eps0(eta, psi, dx),
/// eta running over the f' unramified characters of K^x with
/// eta(pi)^{f'} = 1 (the decomposition of Ind 1_L), and dx_L normalized by
/// vol(O_L) = vol(O_K). The rank-0 part makes the dx_L choice immaterial.
Eps0Result epsilon0_virtual(const VirtualRep& v, const AddChar& psi,
                            const HaarMeasure& dx);

// right-hand side of the unramified twisting formula:
// theta(pi)^{Sw v + rk v * (n(psi)+1)} * eps0(v, psi, dx)
CycNum epsilon0_twist_formula(const VirtualRep& v, const MulChar& theta,
                              const AddChar& psi, const HaarMeasure& dx);

// tensor version for an unramified atom sum w (all atoms unramified, base
// field): det w(Frob)^{Sw v + rk v (n+1)} * eps0(v)^{rk w}
CycNum epsilon0_tensor_unramified_formula(const VirtualRep& v, const VirtualRep& w,
                                          const AddChar& psi, const HaarMeasure& dx);

/// epsilon = epsilon0 * det(-Frob | V^{I})^{-1}; for an unramified character
/// the determinant factor is -chi(pi) (and -chi_L(pi_L) for an atom induced
/// from an unramified character), otherwise 1.
CycNum epsilon_full(const VirtualRep& v, const AddChar& psi, const HaarMeasure& dx);

struct ExplicitInverseCheck {
    CycNum first;    // eps0(chi, psi, dx)
    CycNum second;   // eps0(chi^{-1} |.|, -psi, dual dx)
    CycNum product;
    CycNum expected; // q^{-rk chi^I}
    bool pass;
};

ExplicitInverseCheck explicit_inverse_check(const MulChar& chi, const AddChar& psi,
                                            const HaarMeasure& dx);

// V^* tensor |.|_K, atom by atom: chi goes to chi^{-1} |.|_L (for unramified
// L/K the norm carries |.|_K to |.|_L)
VirtualRep dual_abs_twist(const VirtualRep& v);

// higher-rank version of the identity: eps0(v) * eps0(v^* |.|, -psi, dual dx)
// against q^{-rk v^{I'}}, with l = 0 or the residue characteristic of the
// intended coefficient field (the invariant count is the same for the atoms
// modeled here)
ExplicitInverseCheck explicit_inverse_check_virtual(const VirtualRep& v,
                                                    const AddChar& psi,
                                                    const HaarMeasure& dx,
                                                    int64_t l = 0);

} // namespace eps0
