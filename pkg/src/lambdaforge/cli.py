"""Command-line front end.

Commands:

* ``univpoly {pn|pnm|nu}``: compute and print universal polynomials.
* ``verify {pre-lambda|lambda|adams|gamma|diffk|equivariant|splitting}``:
  run a verification suite on a named model (or a model spec file) and emit
  a report; exit status 0 exactly when every check passed.
* ``model {list|validate}``: enumerate built-in models or validate a spec.
* ``cache {clear|stats}``: manage the on-disk polynomial cache.

Reports are deterministic: the same seed and configuration produce byte
identical JSON.  The cache location comes from ``--cache``, the
``LAMBDA_FORGE_CACHE`` environment variable, or the user cache directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import symfun
from .axioms import AxiomReport, verify_axioms
from .cache import PolyCache
from .cdga import build_model
from .contexts import diffk_context, equivariant_context, get_model, list_models
from .equivariant import CharacterGroup
from .errors import LambdaForgeError
from .suites import (
    run_adams_suite,
    run_diffk_suite,
    run_equivariant_suite,
    run_gamma_suite,
    run_splitting_suite,
)

_VERIFY_MODES = (
    "pre-lambda",
    "lambda",
    "adams",
    "gamma",
    "diffk",
    "equivariant",
    "splitting",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lambdaforge",
        description="Exact lambda-ring calculus over symbolic differential K-cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    up = sub.add_parser("univpoly", help="compute universal polynomials")
    up.add_argument("family", choices=["pn", "pnm", "nu"])
    up.add_argument("--n", type=int, required=True, help="degree (or index for nu)")
    up.add_argument("--m", type=int, help="exterior-power index (pnm only)")
    up.add_argument("--format", choices=["text", "json"], default="text")
    up.add_argument("--cache", help="cache directory")

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("mode", choices=_VERIFY_MODES)
    vf.add_argument("--model", default="torus4", help="built-in model name")
    vf.add_argument("--spec", help="path to a model specification JSON file")
    vf.add_argument("--group", default="z2", help="built-in character group (equivariant)")
    vf.add_argument("--trunc", type=int, default=6, help="series truncation order")
    vf.add_argument("--samples", type=int, default=25)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--max-n", type=int, default=None,
                    help="product-law order bound (defaults: 3 on class rings)")
    vf.add_argument("--max-m", type=int, default=6, help="composition-law bound on n*m")
    vf.add_argument("--format", choices=["text", "json"], default="text")
    vf.add_argument("--cache", help="cache directory")

    md = sub.add_parser("model", help="inspect models")
    mdsub = md.add_subparsers(dest="model_command", required=True)
    mdsub.add_parser("list", help="list built-in models")
    mdv = mdsub.add_parser("validate", help="build and validate a model spec")
    mdv.add_argument("--spec", required=True)

    ca = sub.add_parser("cache", help="manage the polynomial cache")
    ca.add_argument("cache_command", choices=["clear", "stats"])
    ca.add_argument("--cache", help="cache directory")

    return parser


def _install_cache(path: str | None) -> PolyCache | None:
    cache = PolyCache(path) if path else PolyCache()
    try:
        cache.root.mkdir(parents=True, exist_ok=True)
    except OSError:
        if path:
            raise
        return None  # default location unusable; run without a disk cache
    symfun.set_disk_cache(cache)
    return cache


def _note_corruption(cache: PolyCache | None) -> None:
    if cache and cache.corrupt_seen:
        bad = ", ".join(sorted(set(cache.corrupt_seen)))
        print(f"note: recomputed corrupt cache entries: {bad}", file=sys.stderr)


def _emit_report(report: AxiomReport, fmt: str) -> int:
    if fmt == "json":
        print(report.to_json())
    else:
        for check in report.checks:
            status = "PASS" if check["pass"] else "FAIL"
            line = f"{status} {check['axiom']} @ {check['instance']}"
            if not check["pass"] and check.get("witness"):
                line += f"  [{check['witness']}]"
            print(line)
        passed = sum(1 for c in report.checks if c["pass"])
        print(
            f"{report.mode} on {report.context}: {passed}/{len(report.checks)} checks passed "
            f"(seed {report.seed}, truncation {report.truncation})"
        )
    return 0 if report.all_pass else 1


def _cmd_univpoly(args) -> int:
    cache = _install_cache(args.cache)
    if args.family == "pn":
        up = symfun.compute_Pn(args.n)
    elif args.family == "pnm":
        if args.m is None:
            print("univpoly pnm needs --m", file=sys.stderr)
            return 2
        up = symfun.compute_Pnm(args.n, args.m)
    else:
        up = symfun.newton_nu(args.n)
    if args.format == "json":
        payload = {"key": up.cache_key, "poly": up.to_json_dict()}
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        print(str(up))
    _note_corruption(cache)
    return 0


def _load_model_spec(path: str):
    data = json.loads(Path(path).read_text("utf-8"))
    group = None
    if "group" in data:
        group = CharacterGroup.from_spec(data["group"])
    model = build_model({k: v for k, v in data.items() if k != "group"})
    return model, group


def _cmd_verify(args) -> int:
    _install_cache(args.cache)
    model_name = args.model
    if args.spec:
        # register the external model under its own name for this run
        from . import contexts

        model, group = _load_model_spec(args.spec)
        contexts.MODEL_SPECS[model.name] = lambda: model.spec
        contexts._MODEL_CACHE[model.name] = model
        model_name = model.name
        if group is not None:
            contexts.GROUPS[f"spec:{model.name}"] = group
            args.group = f"spec:{model.name}"

    if args.mode == "splitting":
        report = run_splitting_suite(max_rank=5, seed=args.seed)
    elif args.mode == "gamma":
        report = run_gamma_suite(model_name, samples=args.samples, seed=args.seed,
                                 truncation=args.trunc)
    elif args.mode == "diffk":
        report = run_diffk_suite(model_name, samples=args.samples, seed=args.seed)
    elif args.mode == "equivariant":
        report = run_equivariant_suite(model_name, args.group, samples=args.samples,
                                       seed=args.seed)
    elif args.mode == "adams":
        report = run_adams_suite(model_name, samples=args.samples, seed=args.seed,
                                 truncation=args.trunc)
    else:
        mode = {"pre-lambda": "pre-lambda", "lambda": "lambda"}[args.mode]
        mult_order = args.max_n if args.max_n is not None else 3
        report = verify_axioms(
            diffk_context(model_name),
            mode,
            samples=args.samples,
            seed=args.seed,
            truncation=args.trunc,
            mult_order=mult_order,
            composition_cap=args.max_m,
        )
    return _emit_report(report, args.format)


def _cmd_model(args) -> int:
    if args.model_command == "list":
        for name in list_models():
            model = get_model(name)
            print(f"{name}: dimension {model.dimension}, top degree {model.top_degree}")
        return 0
    try:
        model, group = _load_model_spec(args.spec)
    except (LambdaForgeError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"invalid model spec: {exc}", file=sys.stderr)
        return 1
    print(f"valid: {model.name} (dimension {model.dimension}, top degree {model.top_degree})")
    if group is not None:
        print(f"group: {group}")
    return 0


def _cmd_cache(args) -> int:
    cache = PolyCache(args.cache) if args.cache else PolyCache()
    if args.cache_command == "clear":
        removed = cache.clear()
        print(f"removed {removed} entries from {cache.root}")
    else:
        stats = cache.stats()
        print(json.dumps(stats, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "univpoly":
            return _cmd_univpoly(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "model":
            return _cmd_model(args)
        if args.command == "cache":
            return _cmd_cache(args)
    except LambdaForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
