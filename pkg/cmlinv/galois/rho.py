"""The infinitesimal deformation rho_F of rho_f = Ind psi, modulo X^2.

In the basis (e1, e2 = rho(tau) e1):

    rho_F(tau) = ((0, 1), (1, 0))
    rho_F(g)   = (I - M(g) X) diag(psi(g), psibar(g))      for g in G_K

with
    M11 = Lbar eta_p + L eta_pbar          M12 = xi L eta_phi
    M22 = L eta_p + Lbar eta_pbar          M21 = xi^-1 Lbar S_phibar eta_phibar

The twist F (x) eps_K is obtained by replacing xi with -xi.
"""
from __future__ import annotations

import logging
from typing import Tuple

from ..cmfield import CMSetting
from ..errors import IllDefinedCocycleValue, UnsupportedCase
from ..linv import LInvariantSet
from ..padic import DualScalar, PadicScalar
from .elements import FROB_P, G_K, INERT, RAMIFIED, TAU_COSET, GroupElementData
from .matrix import DualMatrix, Line

logger = logging.getLogger(__name__)


def _xi(inv: LInvariantSet, twist: int) -> PadicScalar:
    if twist not in (1, -1):
        raise ValueError("twist must be +1 or -1")
    return inv.xi if twist == 1 else -inv.xi


def _dual(x: PadicScalar, slope: PadicScalar) -> DualScalar:
    return DualScalar(x, slope)


def _require(g: GroupElementData, *names: str) -> None:
    missing = [n for n in names if getattr(g, n) is None]
    if missing:
        raise IllDefinedCocycleValue("cocycle value is not well defined", element=g.name,
                                     missing=missing)


def _diagonal_M(inv: LInvariantSet, g: GroupElementData) -> Tuple[PadicScalar, PadicScalar]:
    _require(g, "eta_p", "eta_pbar")
    m11 = inv.Lbar * g.eta_p + inv.L * g.eta_pbar
    m22 = inv.L * g.eta_p + inv.Lbar * g.eta_pbar
    return m11, m22


def _psi_pair(setting: CMSetting, g: GroupElementData) -> Tuple[PadicScalar, PadicScalar]:
    return setting.to_padic(g.psi), setting.to_padic(g.psibar)


def rho_F_diagonal(setting: CMSetting, inv: LInvariantSet, g: GroupElementData) -> DualMatrix:
    """The diagonal part of rho_F(g), g in G_K; defined whenever eta_p and eta_pbar are."""
    if g.kind != G_K:
        raise UnsupportedCase("the diagonal part is taken on G_K", element=g.name)
    m11, m22 = _diagonal_M(inv, g)
    z, zbar = _psi_pair(setting, g)
    return DualMatrix.diagonal(_dual(z, -z * m11), _dual(zbar, -zbar * m22))


def _rho_G_K(setting: CMSetting, inv: LInvariantSet, g: GroupElementData, twist: int) -> DualMatrix:
    _require(g, "eta_phi", "eta_phibar")
    xi = _xi(inv, twist)
    m11, m22 = _diagonal_M(inv, g)
    m12 = xi * inv.L * g.eta_phi
    m21 = inv.Lbar * inv.S_phibar * g.eta_phibar / xi
    z, zbar = _psi_pair(setting, g)
    zero = setting.field.zero(setting.prec + 2)
    return DualMatrix(((_dual(z, -z * m11), _dual(zero, -zbar * m12)),
                       (_dual(zero, -z * m21), _dual(zbar, -zbar * m22))))


def rho_F_at(setting: CMSetting, inv: LInvariantSet, g: GroupElementData, twist: int = 1) -> DualMatrix:
    """rho_F(g) (twist = 1) or rho_{F (x) eps_K}(g) (twist = -1) modulo X^2."""
    if g.kind == G_K:
        return _rho_G_K(setting, inv, g, twist)
    if g.kind == TAU_COSET:
        h = GroupElementData(G_K, g.name, g.psi, g.psibar, g.eta_p, g.eta_pbar,
                             g.eta_phi, g.eta_phibar)
        swap = DualMatrix.swap(setting.field, setting.prec + 2)
        return swap * _rho_G_K(setting, inv, h, twist)
    raise IllDefinedCocycleValue("only the trace is determined for this element",
                                 element=g.name, kind=g.kind)


def ramified_eigenvalue(setting: CMSetting, inv: LInvariantSet, g: GroupElementData,
                        twist: int = 1) -> DualScalar:
    """Eigenvalue of a Frobenius lift on the inertia invariants at l | D: a_l(F)."""
    if g.kind != RAMIFIED:
        raise UnsupportedCase("not a ramified element", element=g.name)
    xi = _xi(inv, twist)
    z_l = setting.to_padic(g.psi_l)
    slope = -g.eta_cyc / (2 * inv.A) - xi * inv.L * setting.to_padic(g.psi) * g.eta_phi_sq
    return _dual(z_l, z_l * slope)


def unramified_quotient(setting: CMSetting, inv: LInvariantSet, g: GroupElementData) -> DualScalar:
    """chi_F(g) = psi(g)(1 - (L (eta_p - eta_phi) + Lbar eta_pbar) X) on the decomposition group at p."""
    diff = g.eta_p_minus_phi
    if diff is None:
        _require(g, "eta_p", "eta_phi")
        diff = g.eta_p - g.eta_phi
    _require(g, "eta_pbar")
    z = setting.to_padic(g.psi)
    return _dual(z, -z * (inv.L * diff + inv.Lbar * g.eta_pbar))


def trace_F_at(setting: CMSetting, inv: LInvariantSet, g: GroupElementData, twist: int = 1) -> DualScalar:
    """tr rho_F(g) modulo X^2.

    On the nonsplit coset only the trace is determined:
    tr rho_F(g) = -xi L psi(tau g) eta_phi(g^2) X.
    """
    if g.kind == G_K:
        return rho_F_diagonal(setting, inv, g).trace()
    if g.kind == TAU_COSET:
        return rho_F_at(setting, inv, g, twist).trace()
    if g.kind == INERT:
        xi = _xi(inv, twist)
        zero = setting.field.zero(setting.prec + 2)
        return _dual(zero, -xi * inv.L * setting.to_padic(g.psi) * g.eta_phi_sq)
    if g.kind == RAMIFIED:
        return ramified_eigenvalue(setting, inv, g, twist)
    if g.kind == FROB_P:
        return unramified_quotient(setting, inv, g)
    raise UnsupportedCase("unknown element kind", kind=g.kind)


def det_F_at(setting: CMSetting, inv: LInvariantSet, g: GroupElementData) -> DualScalar:
    """det rho_f(g) (1 - eta_cyc(g) X / A); at Frob_l this is det rho_f(Frob_l)(1 + log_p(l) X / A)."""
    _require(g, "eta_cyc")
    if g.kind == G_K:
        base = setting.to_padic(g.psi * g.psibar)
    elif g.kind == TAU_COSET:
        base = -setting.to_padic(g.psi * g.psibar)
    elif g.kind == INERT:
        base = setting.field.element(-1, setting.prec + 2)
    else:
        raise UnsupportedCase("determinant is taken at unramified elements", element=g.name)
    return _dual(base, -base * g.eta_cyc / inv.A)


def tangent_point(inv: LInvariantSet) -> Tuple[PadicScalar, PadicScalar]:
    """(x, y) = (-Lbar, -L) on the tangent line x L = y Lbar, with x + y = -1/A."""
    return -inv.Lbar, -inv.L


def ramified_fixed_line(setting: CMSetting, inv: LInvariantSet, ell: int) -> Line:
    """The inertia-fixed line [1 : psi(tau gamma)] of rho_f at l | D."""
    if ell not in inv.psi_tau_gamma or setting.D % ell:
        raise UnsupportedCase("ramified data not computed", ell=ell)
    return Line(setting.field.one(setting.prec + 2), setting.to_padic(inv.psi_tau_gamma[ell]))
