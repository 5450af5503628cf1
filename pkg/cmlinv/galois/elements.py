"""Galois elements represented by their character and cocycle values.

Only values that reciprocity makes well defined are ever filled in; a field
left as None marks a value that is not a function of the element's
Frobenius class.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional

from ..cmfield import CMSetting
from ..errors import UnsupportedCase
from ..linv import LInvariantSet, eta_phi_frobenius
from ..padic import PadicScalar, RootOfUnity, iwasawa_log
from ..quadfield import split_type

logger = logging.getLogger(__name__)

G_K = "G_K"
TAU_COSET = "tau_h"
INERT = "inert"
RAMIFIED = "ramified"
FROB_P = "frob_p"


def _add(x: Optional[PadicScalar], y: Optional[PadicScalar]) -> Optional[PadicScalar]:
    return None if x is None or y is None else x + y


def _times(x: Optional[PadicScalar], n) -> Optional[PadicScalar]:
    return None if x is None else x * n


@dataclass(frozen=True)
class GroupElementData:
    """Character and cocycle values attached to a Galois element.

    For kind G_K the element is g in G_K; for TAU_COSET it is tau h with the
    fields describing h. ``psi`` and ``psibar`` are psi(g) and psi(tau g tau);
    for INERT and RAMIFIED ``psi`` is psi(tau g) and ``eta_phi_sq`` is
    eta_phi(g^2).
    """
    kind: str
    name: str
    psi: RootOfUnity
    psibar: RootOfUnity
    eta_p: Optional[PadicScalar] = None
    eta_pbar: Optional[PadicScalar] = None
    eta_phi: Optional[PadicScalar] = None
    eta_phibar: Optional[PadicScalar] = None
    eta_p_minus_phi: Optional[PadicScalar] = None
    eta_phi_sq: Optional[PadicScalar] = None
    cyc: Optional[PadicScalar] = None
    ell: Optional[int] = None
    psi_l: Optional[RootOfUnity] = None

    @property
    def phi(self) -> RootOfUnity:
        """phi(g) = psi(g) / psibar(g) on G_K."""
        return self.psi / self.psibar

    @property
    def in_G_H(self) -> bool:
        return self.kind == G_K and self.phi == 1

    @property
    def eta_cyc(self) -> Optional[PadicScalar]:
        """The cyclotomic log-character at g; -log_p(l) at Frob_l."""
        return self.cyc if self.cyc is not None else _add(self.eta_p, self.eta_pbar)

    # -- constructors --

    @classmethod
    def tau(cls, setting: CMSetting) -> "GroupElementData":
        zero = setting.field.zero(setting.prec + 2)
        one = RootOfUnity.one()
        return cls(TAU_COSET, "tau", one, one, zero, zero, zero, zero)

    @classmethod
    def frobenius_h(cls, name: str, psi: RootOfUnity, psibar: RootOfUnity,
                    eta_p: Optional[PadicScalar], eta_pbar: Optional[PadicScalar],
                    eta_phi: Optional[PadicScalar] = None,
                    eta_phibar: Optional[PadicScalar] = None) -> "GroupElementData":
        """A G_K element given directly by its values."""
        return cls(G_K, name, psi, psibar, eta_p, eta_pbar, eta_phi, eta_phibar)

    @classmethod
    def frobenius_split(cls, setting: CMSetting, inv: LInvariantSet, ell: int,
                        cache=None) -> "GroupElementData":
        """Frob at the place lambda above the first prime l of K over a split l.

        eta_p(Frob_l) = L_l and eta_pbar(Frob_l) = L_lbar. The phi-cocycle is
        only well defined when phi(l) = 1; eta_phibar(Frob_lambda) is the
        value of the tau-conjugate cochain, which is S_phi times eta_phi
        built with slope 1/S_phi.
        """
        if ell not in inv.split:
            raise UnsupportedCase("split L-invariants not computed", ell=ell)
        L_l, L_lbar = inv.split[ell]
        ideal, conj = inv.split_ideals[ell]
        psi, psibar = setting.psi_of(ideal), setting.psi_of(conj)
        eta_phi = eta_phibar = None
        if ell != 2 and setting.phi_of(ideal) == 1:
            eta_phi = inv.eta_frobenius.get(ell)
            if eta_phi is None:
                eta_phi = eta_phi_frobenius(setting, ell, inv.S_phi, cache)
            eta_phibar = inv.S_phi * eta_phi_frobenius(setting, ell, inv.S_phibar, cache)
        return cls(G_K, f"Frob_{ell}", psi, psibar, L_l, L_lbar, eta_phi, eta_phibar, ell=ell)

    @classmethod
    def frobenius_p(cls, setting: CMSetting, inv: LInvariantSet) -> "GroupElementData":
        """A Frobenius in the decomposition group at frak p.

        Only the classes unramified at frak p are evaluated: eta_pbar and
        eta_phi - eta_p, the latter through the anticyclotomic L-invariant.
        """
        psi = setting.psi_of(setting.frak_p)
        psibar = setting.psi_of(setting.frak_pbar)
        return cls(FROB_P, "Frob_p", psi, psibar, eta_pbar=-inv.L_p,
                   eta_p_minus_phi=-(inv.Lminus_phibar + inv.L_p), ell=setting.p)

    @classmethod
    def inert_frobenius(cls, setting: CMSetting, inv: LInvariantSet, ell: int) -> "GroupElementData":
        """Frob_lambda for l inert in K: an element of the nontrivial coset."""
        if ell not in inv.L_phi or setting.D % ell == 0:
            raise UnsupportedCase("inert data not computed", ell=ell)
        z = inv.psi_tau_gamma[ell]
        log_ell = iwasawa_log(setting.field.element(ell, setting.prec + 2))
        return cls(INERT, f"Frob_{ell}", z, z.inverse(), eta_phi_sq=inv.L_phi[ell],
                   cyc=-log_ell, ell=ell)

    @classmethod
    def ramified_inertia(cls, setting: CMSetting, inv: LInvariantSet, ell: int) -> "GroupElementData":
        """A Frobenius lift acting on the inertia invariants at l | D."""
        if ell not in inv.L_phi or setting.D % ell:
            raise UnsupportedCase("ramified data not computed", ell=ell)
        st = split_type(-setting.D, ell)
        z = inv.psi_tau_gamma[ell]
        log_ell = iwasawa_log(setting.field.element(ell, setting.prec + 2))
        return cls(RAMIFIED, f"Frob_{ell}", z, z.inverse(), eta_phi_sq=inv.L_phi[ell],
                   cyc=-log_ell, ell=ell, psi_l=setting.psi_of(st.ideal))

    # -- operations --

    def tau_times(self) -> "GroupElementData":
        """tau h for this h in G_K."""
        if self.kind != G_K:
            raise UnsupportedCase("tau_times needs an element of G_K", kind=self.kind)
        return replace(self, kind=TAU_COSET, name=f"tau*{self.name}")

    def __mul__(self, other: "GroupElementData") -> "GroupElementData":
        """g h in G_K; eta_phi follows the cocycle rule eta(gh) = eta(g) + phi(g) eta(h)."""
        if self.kind != G_K or other.kind != G_K:
            raise UnsupportedCase("products are defined on G_K data only")
        phi = 1 if self.phi == 1 else -1
        return GroupElementData(
            G_K, f"{self.name}*{other.name}", self.psi * other.psi, self.psibar * other.psibar,
            _add(self.eta_p, other.eta_p), _add(self.eta_pbar, other.eta_pbar),
            _add(self.eta_phi, _times(other.eta_phi, phi)),
            _add(self.eta_phibar, _times(other.eta_phibar, phi)))

    def power(self, n: int) -> "GroupElementData":
        if not self.in_G_H:
            raise UnsupportedCase("powers are taken of G_H elements", name=self.name)
        if n < 1:
            raise ValueError("power must be positive")
        return GroupElementData(
            G_K, f"{self.name}^{n}", self.psi ** n, self.psibar ** n,
            _times(self.eta_p, n), _times(self.eta_pbar, n),
            _times(self.eta_phi, n), _times(self.eta_phibar, n), ell=self.ell)
