#!/usr/bin/env python3
# cmlinv/cli/main.py
import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import sympy
import yaml
from pydantic import BaseModel, ValidationError, field_validator

from cmlinv import metrics
from cmlinv.audit import ArtifactCache
from cmlinv.cmfield import CMSetting, admissible_settings, characters_of_order
from cmlinv.errors import (CacheCorrupted, CMLInvError, InadmissibleSetting, InconsistentWitnesses,
                           VerificationFailed)
from cmlinv.quadfield import class_group, is_fundamental
from cmlinv.report import (SUITES, DEPTH_SUITES, build_report, compute_bundle, export_csv,
                           recheck_report, run_suites, validate_report)
from cmlinv.settings import settings

logger = logging.getLogger("cmlinv.cli")

EXIT_OK, EXIT_USAGE, EXIT_EMPTY, EXIT_COMPUTE, EXIT_VERIFY = 0, 2, 3, 4, 5

PSI_ORDER = 4


class RunConfig(BaseModel):
    D: int = 39
    p: int = 43
    psi: int = 0
    prec: int = settings.PRECISION
    qmax: int = settings.QMAX
    depth: List[int] = list(range(4, settings.DEPTH + 1))
    dmax: int = 100
    pmax: int = 100
    cache: Optional[str] = None
    out: Optional[str] = None
    threads: int = settings.THREADS

    @field_validator("p")
    @classmethod
    def odd_prime(cls, v: int) -> int:
        if v == 2 or not sympy.isprime(v):
            raise ValueError("p must be an odd prime")
        return v

    @field_validator("D", "dmax", "pmax", "qmax", "threads")
    @classmethod
    def positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be positive")
        return v

    @field_validator("psi")
    @classmethod
    def selector(cls, v: int) -> int:
        if v < 0:
            raise ValueError("psi selector is an index, >= 0")
        return v

    @field_validator("prec")
    @classmethod
    def enough_digits(cls, v: int) -> int:
        if v < 20:
            raise ValueError("precision below 20 digits")
        return v

    @field_validator("depth")
    @classmethod
    def depths(cls, v: List[int]) -> List[int]:
        if not v or min(v) < 2:
            raise ValueError("oracle depth must be at least 2")
        return sorted(set(v))

    def report_config(self) -> Dict[str, Any]:
        # threads, cache and out never reach the report
        return {"D": self.D, "p": self.p, "psi": self.psi, "prec": self.prec, "qmax": self.qmax}

    def cache_path(self) -> str:
        return self.cache or settings.cache_path()


def _load_config(args) -> RunConfig:
    raw: Dict[str, Any] = {}
    if getattr(args, "config", None):
        with open(args.config, "r") as f:
            raw = yaml.safe_load(f) or {}
        if not isinstance(raw, dict):
            raise ValueError(f"{args.config}: expected a mapping")
    for key in RunConfig.model_fields:
        v = getattr(args, key, None)
        if v is not None:
            raw[key] = v
    return RunConfig(**raw)


def _error(err: CMLInvError, code: int) -> int:
    print(json.dumps(err.to_dict(), sort_keys=True, default=str), file=sys.stderr)
    return code


def _setting(cfg: RunConfig) -> CMSetting:
    if not is_fundamental(-cfg.D):
        raise InadmissibleSetting(f"-{cfg.D} is not a fundamental discriminant", D=cfg.D)
    choices = characters_of_order(class_group(-cfg.D), PSI_ORDER)
    if cfg.psi >= len(choices):
        raise InadmissibleSetting(f"no character of order {PSI_ORDER} with index {cfg.psi}",
                                  D=cfg.D, available=len(choices))
    return CMSetting.build(cfg.D, cfg.p, choices[cfg.psi], cfg.prec)


def _write(text: str, out: Optional[str]) -> None:
    if not out:
        sys.stdout.write(text)
        return
    parent = os.path.dirname(out)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("wrote %s", out)


def _dump(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def cmd_search(cfg: RunConfig, args) -> int:
    found = admissible_settings(cfg.dmax, cfg.pmax, cfg.prec)
    if not found:
        print(f"no admissible settings with D <= {cfg.dmax}, p <= {cfg.pmax}", file=sys.stderr)
        return EXIT_EMPTY
    print("D\tp\tpsi\th\td1\td2\tf")
    for s in found:
        psi = ",".join(str(e) for e in s.psi_exponents)
        print(f"{s.D}\t{s.p}\t{psi}\t{s.cg.h}\t{s.d1}\t{s.d2}\t{s.f}")
    return EXIT_OK


def cmd_compute(cfg: RunConfig, args) -> int:
    try:
        setting = _setting(cfg)
    except CMLInvError as e:
        return _error(e, EXIT_USAGE)
    try:
        bundle = compute_bundle(setting, cfg.qmax, threads=cfg.threads,
                                cache=ArtifactCache(cfg.cache_path()))
        doc = build_report(cfg.report_config(), bundle)
    except CMLInvError as e:
        return _error(e, EXIT_COMPUTE)
    ok, msg = validate_report(doc)
    if not ok:
        print(f"report failed schema validation: {msg}", file=sys.stderr)
        return EXIT_COMPUTE
    _write(_dump(doc), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    try:
        setting = _setting(cfg)
    except CMLInvError as e:
        return _error(e, EXIT_USAGE)
    try:
        bundle = compute_bundle(setting, cfg.qmax, threads=cfg.threads,
                                cache=ArtifactCache(cfg.cache_path()))
    except CacheCorrupted as e:
        err = InconsistentWitnesses(f"cached witness rejected: {e.message}", **e.details)
        return _error(err, EXIT_VERIFY)
    except CMLInvError as e:
        return _error(e, EXIT_COMPUTE)
    results = run_suites(bundle, cfg.depth, only=args.suite or ())
    for r in results:
        print(f"{'PASS' if r['ok'] else 'FAIL'}\t{r['suite']}\t{r['msg']}")
    print(json.dumps(metrics.snapshot(), sort_keys=True))
    if not results:
        print("no suite selected", file=sys.stderr)
        return EXIT_USAGE
    failed = [r["suite"] for r in results if not r["ok"]]
    if failed:
        return _error(VerificationFailed(f"{len(failed)} suite(s) failed", suites=failed),
                      EXIT_VERIFY)
    return EXIT_OK


def cmd_report(cfg: RunConfig, args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except (OSError, ValueError) as e:
        print(f"cmlinv report: cannot read {args.input}\n{e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        ok, msg = recheck_report(doc)
    except CMLInvError as e:
        return _error(e, EXIT_VERIFY)
    if not ok:
        return _error(VerificationFailed(msg, input=args.input), EXIT_VERIFY)
    if args.format == "csv":
        _write(export_csv(doc), cfg.out)
    else:
        _write(_dump(doc), cfg.out)
    return EXIT_OK


def cmd_cache(cfg: RunConfig, args) -> int:
    cache = ArtifactCache(cfg.cache_path())
    try:
        if args.action == "verify":
            print(f"OK {cache.verify()} records")
        else:
            print(json.dumps(cache.stats(), sort_keys=True))
    except CacheCorrupted as e:
        return _error(e, EXIT_VERIFY)
    return EXIT_OK


def _setting_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--D", type=int, help="|disc K|")
    sp.add_argument("--p", type=int)
    sp.add_argument("--psi", type=int, help="index into the order-4 class characters")
    sp.add_argument("--prec", type=int, help="p-adic digits")
    sp.add_argument("--qmax", type=int)
    sp.add_argument("--threads", type=int)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser("cmlinv")
    p.add_argument("--config", help="YAML file with RunConfig fields")
    p.add_argument("--cache", help="artifact cache file")
    p.add_argument("--out", help="output path (default stdout)")
    s = p.add_subparsers(dest="cmd", required=True)

    sp = s.add_parser("search", help="list admissible (D, p, psi)")
    sp.add_argument("--dmax", type=int)
    sp.add_argument("--pmax", type=int)
    sp.add_argument("--prec", type=int)
    sp.set_defaults(func=cmd_search)

    sp = s.add_parser("compute", help="write the JSON report")
    _setting_flags(sp)
    sp.set_defaults(func=cmd_compute)

    sp = s.add_parser("verify", help="run the verification suites")
    _setting_flags(sp)
    sp.add_argument("--depth", type=int, nargs="+", help="oracle depths")
    sp.add_argument("--suite", action="append",
                    choices=sorted(list(SUITES) + list(DEPTH_SUITES)))
    sp.set_defaults(func=cmd_verify)

    sp = s.add_parser("report", help="re-check a report and re-export it")
    sp.add_argument("input")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_report)

    sp = s.add_parser("cache", help="inspect the artifact cache")
    sp.add_argument("action", choices=["verify", "stats"])
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ValidationError, ValueError, OSError) as e:
        print(f"cmlinv {args.cmd}: invalid configuration\n{e}", file=sys.stderr)
        return EXIT_USAGE
    return args.func(cfg, args)


if __name__ == "__main__":
    sys.exit(main())
