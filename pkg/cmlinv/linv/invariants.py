"""The L-invariants of a p-irregular CM setting, all through reciprocity_eval."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from ..cmfield import (GALOIS, CMSetting, Place, eigen_project, prime_above_in, psi_tau_gamma_any,
                       split_lambda)
from ..errors import DegenerateLog, GenericCMViolated, InconsistentWitnesses
from ..metrics import computations_total
from ..padic import PadicScalar, RootOfUnity, hensel_sqrt, iwasawa_log
from ..quadfield import (Inert, QuadElement, QuadIdeal, Split, fundamental_unit, generator_of_power,
                         ideal_power_generator, kronecker, s_unit_search, split_type)
from ..settings import settings
from .cochain import (CochainSpec, Target, Witness, eta_frak_p, eta_phi, reciprocity_eval,
                      required_digits)

logger = logging.getLogger(__name__)


def _negligible(setting: CMSetting, x: PadicScalar) -> bool:
    return x.is_zero() or x.val >= required_digits(setting)


def _check_agree(setting: CMSetting, a: PadicScalar, b: PadicScalar, what: str, **details) -> None:
    if not _negligible(setting, a - b):
        raise InconsistentWitnesses(f"{what}: two routes disagree", **details)


def fundamental_unit_H(setting: CMSetting, cache=None):
    eps, _ = fundamental_unit(setting.d1, cache)
    return setting.lift(eps)


def _unit_witness(setting: CMSetting, cache=None) -> Witness:
    return Witness.of(fundamental_unit_H(setting, cache), 1, f"eps_F (d={setting.d1})")


def _generator_witness(setting: CMSetting, u: QuadElement, exponent, label: str) -> Witness:
    return Witness.of(setting.lift(u), exponent, f"{label} = {u!r}")


def _power_witness(setting: CMSetting, ideal: QuadIdeal, k: int, label: str) -> Witness:
    """A generator of ideal^k searched for afresh, not derived from an earlier generator."""
    return _generator_witness(setting, generator_of_power(ideal, k), 1, f"{label}[{k}]")


def _subfield_witness(setting: CMSetting, ell: int, cache=None) -> Optional[Witness]:
    """For l nonsplit in K, a generator of a power of the prime of F or K2 below lambda."""
    if ell == 2:
        return None
    place = prime_above_in(setting, ell, 0)
    if place.ideal is None:
        return None
    dE = setting.d1 if place.subfield == "F" else setting.d2
    v, _ = s_unit_search(dE, {ell}, place.ideal, cache=cache)
    return _generator_witness(setting, v, 1, f"v_{place.subfield}")


# -- split and nonsplit primes of K --

def ell_L_invariant(setting: CMSetting, prime, cache=None) -> PadicScalar:
    """L_l = -log_p(u_l)/k with (u_l) = l^k, checked against eta_p(Frob_l).

    ``prime`` is a prime ideal of K, or a rational prime that is inert or
    ramified in K.
    """
    d = -setting.D
    if isinstance(prime, int):
        st = split_type(d, prime)
        if isinstance(st, Split):
            raise ValueError("a split prime needs its prime ideal")
        ideal = st if isinstance(st, Inert) else st.ideal
        target = Target.k_prime(prime if isinstance(st, Inert) else st.ideal)
        second = _subfield_witness(setting, prime, cache)
    else:
        ideal = prime
        target = Target.k_prime(prime)
        second = None
    u, k = ideal_power_generator(ideal, d, cache=cache)
    uH = setting.lift(u)
    value = -setting.log_at(uH) / k
    w = _generator_witness(setting, u, 1, "u_l")
    if second is None and isinstance(prime, QuadIdeal):
        second = _power_witness(setting, prime, 2 * k, "u_l")
    witnesses = [w] + ([second] if second is not None else []) + [w * _unit_witness(setting, cache)]
    V = reciprocity_eval(setting, eta_frak_p(), target, witnesses)
    _check_agree(setting, value, V, "L_l", prime=repr(prime))
    computations_total.labels(kind="ell_L_invariant").inc()
    return value


def L_p(setting: CMSetting, cache=None) -> PadicScalar:
    """L_frak_p = -log_p(iota_p(u_p))/k for a generator of frak_p^k."""
    u, k = ideal_power_generator(setting.frak_p, cache=cache)
    return -setting.log_at(setting.lift(u)) / k


def slope(setting: CMSetting, cache=None) -> PadicScalar:
    """S_phi = -log_p(u_phi)/log_p(tau u_phi), u_phi the phi-part of eps_F."""
    u_phi = eigen_project(fundamental_unit_H(setting, cache))
    num = u_phi.log_at(setting, Place("1"))
    den = u_phi.log_at(setting, Place("t"))
    if _negligible(setting, den):
        raise DegenerateLog("log_p(tau u_phi) vanishes at working precision", D=setting.D)
    return -num / den


# -- the anticyclotomic invariants --

def _p_subfield_prime(setting: CMSetting, d: int, root: PadicScalar) -> QuadIdeal:
    """The prime of Q(sqrt d) below pi."""
    st = split_type(d, setting.p, root=root.residue()[0])
    assert isinstance(st, Split)
    return st.ideal


def p_unit_witness(setting: CMSetting, cache=None, scale: int = 1) -> Witness:
    """u_p^(L/k1) v^(L/k2) w^(L/k3) p^(-L): valuation 2L at pi and 0 at the other p-places.

    With ``scale`` > 1 the three generators are searched for afresh on the
    scale-th powers of the ideals instead of being taken from the cache.
    """
    qF = _p_subfield_prime(setting, setting.d1, setting.r1)
    qK2 = _p_subfield_prime(setting, setting.d2, setting.r2)
    u, k1 = ideal_power_generator(setting.frak_p, cache=cache)
    v, k2 = s_unit_search(setting.d1, {setting.p}, qF, cache=cache)
    w, k3 = s_unit_search(setting.d2, {setting.p}, qK2, cache=cache)
    if scale > 1:
        k1, k2, k3 = scale * k1, scale * k2, scale * k3
        u, v, w = (generator_of_power(setting.frak_p, k1), generator_of_power(qF, k2),
                   generator_of_power(qK2, k3))
    L = math.lcm(k1, k2, k3)
    p = setting.element((setting.p, 0, 0, 0))
    return (_generator_witness(setting, u, L // k1, f"u_p[{k1}]")
            * _generator_witness(setting, v, L // k2, f"v_F[{k2}]")
            * _generator_witness(setting, w, L // k3, f"w_K2[{k3}]")
            * Witness.of(p, -L, f"p={setting.p}"))


def anticyclotomic_L(setting: CMSetting, S_phi: Optional[PadicScalar] = None,
                     Lp: Optional[PadicScalar] = None, cache=None
                     ) -> Tuple[PadicScalar, PadicScalar, List[str]]:
    """(L_-(phi), L_-(phibar), witness provenance)."""
    S = S_phi if S_phi is not None else slope(setting, cache)
    Sbar = 1 / S
    Lp = Lp if Lp is not None else L_p(setting, cache)
    w = p_unit_witness(setting, cache)
    w2 = p_unit_witness(setting, cache, scale=2)
    eps = _unit_witness(setting, cache)
    V = reciprocity_eval(setting, eta_phi(S) - eta_frak_p(), Target.p_place(setting, Place("1")),
                         [w, w2, w * eps])
    spec_bar = CochainSpec("S_phibar eta_phi - eta_pbar", (Sbar, -Sbar, 0, -2), equivariance="phi")
    V_bar = reciprocity_eval(setting, spec_bar, Target.p_place(setting, Place("t")),
                             [w.apply("t"), w2.apply("t"), w.apply("t") * eps])
    Lminus_phibar = V - Lp
    Lminus_phi = V_bar - Lp
    if setting.psi_order == 4:
        _check_agree(setting, Lminus_phi, Lminus_phibar, "L_-(phi) = L_-(phibar) for quadratic phi")
    for name, x in (("L_p", Lp), ("L_-(phi)", Lminus_phi), ("L_-(phibar)", Lminus_phibar),
                    ("L_-(phi) + L_-(phibar)", Lminus_phi + Lminus_phibar)):
        if _negligible(setting, x):
            raise GenericCMViolated(f"{name} vanishes at working precision", D=setting.D, p=setting.p)
    return Lminus_phi, Lminus_phibar, w.to_json()


# -- nonsplit primes --

def L_phi_lambda(setting: CMSetting, ell: int, choice: int = 0, S_phi: Optional[PadicScalar] = None,
                 cache=None) -> PadicScalar:
    """L_{phi,lambda} = -(log u_phi + S_phi log tau u_phi)/ord_lambda(u_lambda)."""
    place = prime_above_in(setting, ell, choice)
    if place.ideal is None:
        # lambda is sigma-stable, so phi-equivariance forces the value to vanish
        return setting.field.zero(setting.prec)
    S = S_phi if S_phi is not None else slope(setting, cache)
    dE = setting.d1 if place.subfield == "F" else setting.d2
    u, k = s_unit_search(dE, {ell}, place.ideal, cache=cache)
    uH = setting.lift(u)
    logs = [setting.log_at(uH, Place(h)) for h in GALOIS]
    value = -(logs[0] - logs[1] + S * (logs[2] - logs[3])) / place.ord(uH)
    w = _generator_witness(setting, u, 1, "u_lambda")
    target = Target.lambda_orbit(place, [("1", 1), ("s", -1)], name=f"lambda|{ell}")
    w2 = _power_witness(setting, place.ideal, 2 * k, "u_lambda")
    V = reciprocity_eval(setting, eta_phi(S), target, [w, w2, w * _unit_witness(setting, cache)])
    _check_agree(setting, value, V, "L_phi_lambda", ell=ell, choice=choice)
    computations_total.labels(kind="L_phi_lambda").inc()
    return value


def L_psi_ell(setting: CMSetting, ell: int, S_phi: Optional[PadicScalar] = None, cache=None
              ) -> Tuple[PadicScalar, RootOfUnity, PadicScalar]:
    """(L_{psi,l}, psi(tau gamma), L_{phi,lambda}) for the first choice of lambda.

    The product psi(tau gamma) L_{phi,lambda} is recomputed at sigma(lambda)
    and must agree.
    """
    out = []
    for choice in (0, 1):
        z = psi_tau_gamma_any(setting, ell, choice, cache=cache)
        L_phi = L_phi_lambda(setting, ell, choice, S_phi, cache)
        out.append((setting.to_padic(z) * L_phi, z, L_phi))
    _check_agree(setting, out[0][0], out[1][0], "L_psi_l is independent of lambda", ell=ell)
    return out[0]


def eta_phi_frobenius(setting: CMSetting, ell: int, S_phi: Optional[PadicScalar] = None,
                      cache=None) -> PadicScalar:
    """eta_phi(Frob_lambda) for l split in K with phi(l) = 1.

    The witness v^(L/k2) w^(L/k3) l^(-L), built from generators of the primes
    of F and K2 below lambda, has valuation (L, -L, 0, 0) at
    (lambda, sigma lambda, tau lambda, sigma tau lambda).
    """
    lam = split_lambda(setting, ell)
    S = S_phi if S_phi is not None else slope(setting, cache)
    qF, qK2 = lam.subfield_ideal("F"), lam.subfield_ideal("K2")
    v, k2 = s_unit_search(setting.d1, {ell}, qF, cache=cache)
    w, k3 = s_unit_search(setting.d2, {ell}, qK2, cache=cache)

    def witness(v, k2, w, k3) -> Witness:
        L = math.lcm(k2, k3)
        return (_generator_witness(setting, v, L // k2, f"v_F[{k2}]")
                * _generator_witness(setting, w, L // k3, f"w_K2[{k3}]")
                * Witness.of(setting.element((ell, 0, 0, 0)), -L, f"l={ell}"))

    first = witness(v, k2, w, k3)
    second = witness(generator_of_power(qF, 2 * k2), 2 * k2, generator_of_power(qK2, 2 * k3), 2 * k3)
    target = Target.lambda_orbit(lam, [("1", 1), ("s", -1)], name=f"lambda|{ell}")
    return reciprocity_eval(setting, eta_phi(S), target,
                            [first, second, first * _unit_witness(setting, cache)])


# -- the full set --

@dataclass
class LInvariantSet:
    setting: CMSetting
    L_p: PadicScalar
    S_phi: PadicScalar
    S_phibar: PadicScalar
    Lminus_phi: PadicScalar
    Lminus_phibar: PadicScalar
    L: PadicScalar
    Lbar: PadicScalar
    xi: PadicScalar
    split: Dict[int, Tuple[PadicScalar, PadicScalar]] = dc_field(default_factory=dict)
    split_ideals: Dict[int, Tuple[QuadIdeal, QuadIdeal]] = dc_field(default_factory=dict)
    eta_frobenius: Dict[int, PadicScalar] = dc_field(default_factory=dict)
    ell_L: Dict[int, PadicScalar] = dc_field(default_factory=dict)
    L_psi: Dict[int, PadicScalar] = dc_field(default_factory=dict)
    L_phi: Dict[int, PadicScalar] = dc_field(default_factory=dict)
    psi_tau_gamma: Dict[int, RootOfUnity] = dc_field(default_factory=dict)
    provenance: Dict[str, List[str]] = dc_field(default_factory=dict)

    @property
    def A(self) -> PadicScalar:
        return self.setting.A

    @property
    def prec(self) -> int:
        return self.setting.prec

    def primes(self) -> List[int]:
        return sorted(set(self.split) | set(self.L_psi))

    def identities(self) -> List[Tuple[str, int, bool]]:
        """(name, digits of agreement, ok) for every identity among the invariants."""
        need = required_digits(self.setting)
        checks = [
            ("S_phi * S_phibar = 1", self.S_phi * self.S_phibar, 1),
            ("L + Lbar = 1/A", self.L + self.Lbar, 1 / self.A),
            ("xi^2 = S_phibar Lbar / L", self.xi * self.xi, self.S_phibar * self.Lbar / self.L),
        ]
        if self.setting.psi_order == 4:
            checks.append(("xi^2 = -1", self.xi * self.xi, -1))
        for ell, (a, b) in sorted(self.split.items()):
            log_ell = iwasawa_log(self.setting.field.element(ell, self.prec + 2))
            checks.append((f"L_l + L_lbar = -log l (l={ell})", a + b, -log_ell))
        for ell, a in sorted(self.ell_L.items()):
            log_ell = iwasawa_log(self.setting.field.element(ell, self.prec + 2))
            expected = -log_ell / 2 if self.setting.D % ell == 0 else -log_ell
            checks.append((f"L_l for nonsplit l={ell}", a, expected))
        out = []
        for name, lhs, rhs in checks:
            digits = int(min(lhs.agreement(lhs._coerce(rhs)), self.prec))
            out.append((name, digits, digits >= need))
        return out

    def to_json(self) -> Dict:
        def j(x: PadicScalar) -> Dict:
            return x.to_json()
        return {
            "L_p": j(self.L_p),
            "S_phi": j(self.S_phi),
            "S_phibar": j(self.S_phibar),
            "L_minus_phi": j(self.Lminus_phi),
            "L_minus_phibar": j(self.Lminus_phibar),
            "L": j(self.L),
            "Lbar": j(self.Lbar),
            "xi": j(self.xi),
            "split": {str(ell): {"ideal": self.split_ideals[ell][0].to_json(), "L_l": j(a),
                                 "L_lbar": j(b)}
                      for ell, (a, b) in sorted(self.split.items())},
            "eta_phi_frobenius": {str(ell): j(v) for ell, v in sorted(self.eta_frobenius.items())},
            "nonsplit": {str(ell): {"L_l": j(self.ell_L[ell]), "L_psi": j(self.L_psi[ell]),
                                    "L_phi_lambda": j(self.L_phi[ell]),
                                    "psi_tau_gamma": self.psi_tau_gamma[ell].to_json()}
                         for ell in sorted(self.L_psi)},
            "provenance": {k: list(v) for k, v in sorted(self.provenance.items())},
        }


def _prime_job(setting: CMSetting, ell: int, S: PadicScalar, cache) -> Dict:
    st = split_type(-setting.D, ell)
    if isinstance(st, Split):
        out = {"kind": "split", "ideals": (st.ideal, st.conjugate),
               "values": (ell_L_invariant(setting, st.ideal, cache),
                          ell_L_invariant(setting, st.conjugate, cache))}
        if ell != 2 and setting.phi_of(st.ideal) == 1:
            out["eta"] = eta_phi_frobenius(setting, ell, S, cache)
        return out
    L_ell = ell_L_invariant(setting, ell, cache)
    L_psi, z, L_phi = L_psi_ell(setting, ell, S, cache)
    return {"kind": "nonsplit", "L_l": L_ell, "L_psi": L_psi, "psi_tau_gamma": z, "L_phi": L_phi}


def compute_invariants(setting: CMSetting, primes: Sequence[int], threads: Optional[int] = None,
                       cache=None) -> LInvariantSet:
    """Every L-invariant of the setting at the given primes (p and l = 2 nonsplit are skipped).

    Per-prime work may run in a thread pool; the result does not depend on
    the thread count.
    """
    threads = threads or settings.THREADS
    S = slope(setting, cache)
    Sbar = 1 / S
    Lp = L_p(setting, cache)
    Lm, Lm_bar, prov = anticyclotomic_L(setting, S, Lp, cache)
    A = setting.A
    denom = A * (Lm + Lm_bar)
    L = Lm / denom
    Lbar = Lm_bar / denom
    xi = hensel_sqrt(Sbar * Lbar / L)
    inv = LInvariantSet(setting=setting, L_p=Lp, S_phi=S, S_phibar=Sbar, Lminus_phi=Lm,
                        Lminus_phibar=Lm_bar, L=L, Lbar=Lbar, xi=xi)
    inv.provenance["anticyclotomic"] = prov

    todo = []
    for ell in sorted(set(primes)):
        if ell == setting.p:
            continue
        if ell == 2 and kronecker(-setting.D, 2) != 1:
            logger.info("skipping l = 2: nonsplit primes above 2 are not supported")
            continue
        todo.append(ell)

    def job(ell: int) -> Dict:
        return _prime_job(setting, ell, S, cache)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, todo))
    else:
        results = [job(ell) for ell in todo]

    for ell, res in zip(todo, results):
        if res["kind"] == "split":
            inv.split[ell] = res["values"]
            inv.split_ideals[ell] = res["ideals"]
            if "eta" in res:
                inv.eta_frobenius[ell] = res["eta"]
        else:
            inv.ell_L[ell] = res["L_l"]
            inv.L_psi[ell] = res["L_psi"]
            inv.L_phi[ell] = res["L_phi"]
            inv.psi_tau_gamma[ell] = res["psi_tau_gamma"]
    computations_total.labels(kind="invariant_set").inc()
    logger.info("L-invariants for D=%d p=%d at %d primes", setting.D, setting.p, len(todo))
    return inv
