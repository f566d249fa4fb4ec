"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .cohomtools import admissible_massey_triples, cohomology_ring
from .complexes import ComplexView, boundary
from .exactlin import ZZ, Ring, parse_ring
from .ezaw import aw_multisimplicial, aw_simplicial, check_identities, ez_multisimplicial
from .msets import MSet, StandardMultisimplex, diagonal
from .surjection import (BarrattEccles, MalformedDiagonal, Surjection, TC, counting_polynomial_be,
                         counting_polynomial_sur, tc, tc_respects_filtration)

# multisimplices that are always checked by ``verify`` when the instance contains them
ANCHORS = ((1, 2, 3, 2, 1), (1, 2, 1, 2, 1))


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    family: str
    k: int
    d: Optional[int]
    dims: tuple = ()
    ring: Ring = ZZ
    cap: int = 3
    fmt: str = "text"

    def build(self) -> MSet:
        if self.family == "sur":
            return Surjection(self.k, self.d)
        if self.family == "be":
            return BarrattEccles(self.k, self.d)
        return StandardMultisimplex(self.dims)

    @property
    def label(self) -> str:
        if self.family == "std":
            return "std:" + ",".join(map(str, self.dims))
        return f"{self.family}{self.k}" + ("" if self.d is None else f":{self.d}")


def _parse_d(s: Optional[str]) -> Optional[int]:
    if s is None or s.lower() in ("inf", "none", "oo"):
        return None
    try:
        d = int(s)
    except ValueError:
        raise UsageError(f"--d must be an integer or 'inf', got {s!r}")
    if d < 1:
        raise UsageError("--d must be >= 1")
    return d


def job_from_args(args) -> JobSpec:
    try:
        ring = parse_ring(args.ring) if getattr(args, "ring", None) else ZZ
    except ValueError as e:
        raise UsageError(str(e))
    cap = getattr(args, "cap", 3)
    if cap is None or cap < 0:
        raise UsageError("--cap must be >= 0")
    d = _parse_d(getattr(args, "d", "2"))
    inst = getattr(args, "instance", None)
    fmt = getattr(args, "format", "text")
    if inst:
        inst = inst.strip().lower()
        if inst.startswith("std:"):
            try:
                dims = tuple(int(t) for t in inst[4:].split(","))
            except ValueError:
                raise UsageError(f"bad standard multisimplex {inst!r}")
            if any(a < 0 for a in dims):
                raise UsageError("negative dimension")
            return JobSpec("std", len(dims), None, dims, ring, cap, fmt)
        for fam in ("sur", "be"):
            if inst.startswith(fam):
                body = inst[len(fam):]
                kpart, _, dpart = body.partition(":")
                if not kpart.isdigit() or int(kpart) < 1:
                    raise UsageError(f"bad instance {inst!r}")
                if dpart:
                    d = _parse_d(dpart)
                return JobSpec(fam, int(kpart), d, (), ring, cap, fmt)
        raise UsageError(f"unknown instance {inst!r} (use surK[:d], beK[:d] or std:i1,...,ik)")
    family = getattr(args, "family", None) or "sur"
    k = getattr(args, "k", None)
    if family not in ("sur", "be") or k is None or k < 1:
        raise UsageError("give --instance, or --family sur|be with --k >= 1")
    return JobSpec(family, k, d, (), ring, cap, fmt)


# --- chain JSON ----------------------------------------------------------------

def _coeff_str(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def chain_to_json(X: MSet, c: dict, ring: Ring, tensor: bool = False) -> dict:
    terms = []
    for key in sorted(c, key=lambda g: _sort_key(X, g, tensor)):
        v = c[key]
        if tensor:
            u, w = key
            terms.append({"coeff": _coeff_str(v), "left": X.encode(u), "right": X.encode(w),
                          "left_degree": list(X.degree(u)), "right_degree": list(X.degree(w))})
        else:
            terms.append({"coeff": _coeff_str(v), "gen": X.encode(key), "degree": list(X.degree(key))})
    return {"ring": ring.tag, "terms": terms}


def _sort_key(X: MSet, g, tensor: bool):
    parts = g if tensor else (g,)
    return tuple((X.total_degree(p), X.encode(p)) for p in parts)


def chain_from_json(X: MSet, data: dict) -> tuple:
    """Inverse of ``chain_to_json``: returns ``(chain, ring, is_tensor)``."""
    try:
        ring = parse_ring(data.get("ring", "Z"))
        out: dict = {}
        tensor = False
        for t in data["terms"]:
            coeff = ring.parse(str(t["coeff"]))
            if "gen" in t:
                key = X.decode(t["gen"])
                if "degree" in t and list(X.degree(key)) != list(t["degree"]):
                    raise UsageError(f"degree mismatch for {t['gen']}")
            else:
                tensor = True
                key = (X.decode(t["left"]), X.decode(t["right"]))
            out[key] = ring(out.get(key, 0) + coeff)
        return {g: v for g, v in out.items() if v}, ring, tensor
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed chain JSON: {e}")


def chain_to_text(X: MSet, c: dict, tensor: bool = False) -> str:
    if not c:
        return "0"
    parts = []
    for key in sorted(c, key=lambda g: _sort_key(X, g, tensor)):
        v = c[key]
        gen = f"{X.encode(key[0])} (x) {X.encode(key[1])}" if tensor else X.encode(key)
        s = _coeff_str(v)
        if s == "1":
            term = gen
        elif s == "-1":
            term = f"-{gen}"
        else:
            term = f"{s}*{gen}"
        parts.append(term)
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# --- commands --------------------------------------------------------------------

def _emit(args, payload: dict, text: str, out) -> None:
    if getattr(args, "format", "text") == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _input_chain(args, X: MSet, ring: Ring) -> tuple:
    if getattr(args, "from_json", None):
        try:
            with (nullcontext(sys.stdin) if args.from_json == "-" else open(args.from_json)) as fh:
                data = json.load(fh)
        except OSError as e:
            raise UsageError(str(e))
        except json.JSONDecodeError as e:
            raise UsageError(f"invalid JSON: {e}")
        c, r, tensor = chain_from_json(X, data)
        if getattr(args, "ring", None) and r != ring:
            raise UsageError(f"--ring {ring} disagrees with JSON ring {r}")
        return c, r, tensor
    if not getattr(args, "gen", None):
        raise UsageError("give a generator or --from-json")
    return {_read_generator(X, args.gen): ring(1)}, ring, False


def _read_generator(X, text: str):
    try:
        x = X.decode(text)
        X.degree(x)
    except (ValueError, TypeError) as e:
        raise UsageError(f"cannot read generator {text!r}: {e}")
    if hasattr(X, "contains") and not X.contains(x):
        raise UsageError(f"{text} is not an element of {X!r}")
    return x


def _count_job(args):
    d = _parse_d(args.d)
    if args.k is None or args.k < 1:
        raise UsageError("--k must be >= 1")
    if d is None:
        raise UsageError("counting needs a finite --d")
    return d


def cmd_count(args, out) -> int:
    d = _count_job(args)
    fam = args.family or "sur"
    if fam == "sur":
        P = counting_polynomial_sur(args.k, d)
    elif fam == "be":
        P = counting_polynomial_be(args.k, d)
    else:
        raise UsageError(f"unknown family {fam!r}")
    payload = {"family": fam, "k": args.k, "d": d, "coefficients": list(P.coeffs),
               "factored": P.factored(), "total": P.total}
    _emit(args, payload, f"{P.factored()}\ncoefficients: {list(P.coeffs)}", out)
    return 0


def _top_nonempty(view: ComplexView, cap: int) -> int:
    top = 0
    for n in range(cap + 1):
        if view.basis(n):
            top = n
    return top


def cmd_enumerate(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    view = ComplexView(X, job.ring, not args.all, job.cap)
    rows = {n: [X.encode(x) for x in view.basis(n)] for n in range(job.cap + 1)}
    text = "\n".join(f"degree {n} ({len(v)}): " + " ".join(v) for n, v in rows.items())
    _emit(args, {"instance": job.label, "normalized": not args.all,
                 "basis": {str(n): v for n, v in rows.items()}}, text, out)
    return 0


def cmd_homology(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    view = ComplexView(X, job.ring, not args.unnormalized, job.cap + 1)
    top = _top_nonempty(view, job.cap)
    hom = view.homology(range(top + 1))
    betti = [h.betti for h in hom]
    torsion = [list(h.torsion) for h in hom]
    text = f"instance {job.label} over {job.ring}\nbetti {betti}"
    if any(torsion):
        text += f"\ntorsion {torsion}"
    _emit(args, {"instance": job.label, "ring": job.ring.tag, "betti": betti, "torsion": torsion},
          text, out)
    return 0


def cmd_ring(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    view = ComplexView(X, job.ring, True, job.cap + 1)
    top = _top_nonempty(view, job.cap)
    pres = cohomology_ring(view, cap=job.cap, products=job.ring.is_field)
    betti = pres.betti[:top + 1]
    lines = [f"instance {job.label} over {job.ring}", f"betti {betti}"]
    for (p, i, q, j), v in sorted(pres.products.items()):
        if p and q and any(v):
            lines.append(f"e{p}_{i} * e{q}_{j} = " + " + ".join(
                f"{_coeff_str(c)}*e{p + q}_{s}" for s, c in enumerate(v) if c))
    for p in range(1, top + 1):
        for q in range(p, top + 1 - p):
            lines.append(f"rank H^{p} x H^{q} -> H^{p + q}: {pres.cup_rank(p, q)}")
    payload = pres.as_dict()
    payload.update({"instance": job.label, "betti": betti})
    _emit(args, payload, "\n".join(lines), out)
    return 0


def cmd_cup(args, out) -> int:
    from .complexes import Cochain
    from .ezaw import cup

    job = job_from_args(args)
    X = job.build()
    u, v = (_read_generator(X, g) for g in args.gens)
    p, q = X.total_degree(u), X.total_degree(v)
    view = ComplexView(X, job.ring, True, max(job.cap, p + q))
    res = cup(view, Cochain(p, {u: 1}, job.ring), Cochain(q, {v: 1}, job.ring))
    c = dict(res.values)
    rhs = _dual_text(chain_to_text(X, c)) if c else "0"
    text = f"1_{args.gens[0]} u 1_{args.gens[1]} = {rhs}"
    payload = chain_to_json(X, c, job.ring)
    payload["degree"] = p + q
    _emit(args, payload, text, out)
    return 0


def _dual_text(s: str) -> str:
    out = []
    for tok in s.split(" "):
        if tok in ("+", "-"):
            out.append(tok)
        elif "*" in tok:
            a, g = tok.split("*", 1)
            out.append(f"{a}*1_{g}")
        elif tok.startswith("-"):
            out.append(f"-1_{tok[1:]}")
        else:
            out.append(f"1_{tok}")
    return " ".join(out)


def cmd_boundary(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    c, ring, tensor = _input_chain(args, X, job.ring)
    if tensor:
        raise UsageError("boundary takes a plain chain")
    res = boundary(X, c, ring, args.normalized)
    _emit(args, chain_to_json(X, res, ring), chain_to_text(X, res), out)
    return 0


def cmd_ez(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    c, ring, _ = _input_chain(args, X, job.ring)
    res = ez_multisimplicial(X, c, ring, args.normalized)
    _emit(args, chain_to_json(X, res, ring), chain_to_text(X, res), out)
    return 0


def cmd_aw(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    c, ring, _ = _input_chain(args, X, job.ring)
    if args.simplicial:
        Y = diagonal(X)
        for x in c:
            try:
                Y.degree(x)
            except ValueError as e:
                raise UsageError(str(e)) from None
        res = aw_simplicial(Y, c, ring, args.normalized)
    else:
        res = aw_multisimplicial(X, c, ring, args.normalized)
    _emit(args, chain_to_json(X, res, ring, tensor=True), chain_to_text(X, res, tensor=True), out)
    return 0


def cmd_tc(args, out) -> int:
    if args.gen and not args.chain:
        try:
            s = tuple(int(ch) for ch in (args.gen.split(",") if "," in args.gen else args.gen))
            t = tc(s)
        except (ValueError, MalformedDiagonal) as e:
            raise UsageError(str(e))
        text = "(" + ", ".join("".join(map(str, p)) if len(p) < 10 else ",".join(map(str, p))
                               for p in t) + ")"
        _emit(args, {"input": args.gen, "tc": ["".join(map(str, p)) for p in t]}, text, out)
        return 0
    job = job_from_args(args)
    if job.family != "sur":
        raise UsageError("tc needs a surjection instance")
    X = job.build()
    if args.gen or args.from_json:
        c, ring, _ = _input_chain(args, X, job.ring)
        res = TC(X, c, ring)
        B = BarrattEccles(job.k)
        _emit(args, chain_to_json(B, res, ring), chain_to_text(B, res), out)
        return 0
    if job.d is None:
        raise UsageError("filtration check needs a finite --d")
    rep = tc_respects_filtration(job.k, job.d, job.cap, args.samples, args.seed)
    text = (f"tc on {job.label} up to degree {job.cap}: {rep.checked} simplices\n"
            f"forward (image in W_d): {'ok' if rep.forward_ok else rep.forward_counterexample}\n"
            f"onto W_d (informational): {'yes' if rep.preimage_ok else 'no, e.g. ' + str(rep.preimage_counterexample)}")
    _emit(args, {"instance": job.label, "checked": rep.checked, "forward_ok": rep.forward_ok,
                 "forward_counterexample": rep.forward_counterexample,
                 "preimage_checked": rep.preimage_checked, "preimage_ok": rep.preimage_ok,
                 "preimage_counterexample": rep.preimage_counterexample}, text, out)
    return 0 if rep.ok else 1


def cmd_verify(args, out) -> int:
    job = job_from_args(args)
    X = job.build()
    rng = random.Random(args.seed)
    pool = [x for n in range(job.cap + 1) for x in X.basis(n)]
    if not pool:
        raise UsageError("instance has no multisimplices up to --cap")
    inputs = [x for x in ANCHORS if job.family == "sur" and X.contains(x)
              and X.total_degree(x) <= job.cap]
    inputs += [rng.choice(pool) for _ in range(args.samples)]
    failures = []
    for x in inputs:
        bad = check_identities(X, x, job.ring, rng)
        if bad:
            failures.append((X.encode(x), bad))
            if not args.keep_going:
                break
    ok = not failures
    lines = [f"verify {job.label} over {job.ring}: {len(inputs)} inputs, seed {args.seed}"]
    if ok:
        lines.append("all identities hold")
    else:
        lines += [f"FAIL {g}: {', '.join(b)}" for g, b in failures]
    _emit(args, {"instance": job.label, "ring": job.ring.tag, "inputs": len(inputs),
                 "seed": args.seed, "passed": ok,
                 "failures": [{"gen": g, "checks": b} for g, b in failures]}, "\n".join(lines), out)
    return 0 if ok else 1


def cmd_massey(args, out) -> int:
    job = job_from_args(args)
    if not job.ring.is_field:
        raise UsageError("Massey products need --ring Q or Zp:<p>")
    try:
        degs = tuple(int(t) for t in args.degrees.split(","))
    except ValueError:
        raise UsageError("--degrees takes three comma-separated integers")
    if len(degs) != 3 or min(degs) < 1:
        raise UsageError("--degrees takes three positive integers")
    top = sum(degs) - 1
    cap = max(job.cap, top)
    X = job.build()
    view = ComplexView(X, job.ring, True, cap + 1)
    pres = cohomology_ring(view, cap=cap)
    coeffs = None if job.ring.characteristic else [int(t) for t in args.coeffs.split(",")]
    reports = admissible_massey_triples(pres, view, degs, coeffs, args.seed)
    nonzero = [r for r in reports if not r.vanishes]
    text = (f"Massey <{degs[0]},{degs[1]},{degs[2]}> on {job.label} over {job.ring}: "
            f"{len(reports)} admissible triples, {len(nonzero)} nonzero mod indeterminacy")
    _emit(args, {"instance": job.label, "ring": job.ring.tag, "degrees": list(degs),
                 "triples": len(reports), "nonzero": len(nonzero),
                 "examples": [[str(c) for c in r.coordinates] for r in nonzero[:5]]}, text, out)
    return 0 if not nonzero else 1


# --- parser ----------------------------------------------------------------------

def _common(p, instance=True):
    if instance:
        p.add_argument("--instance", help="surK[:d], beK[:d] or std:i1,...,ik")
        p.add_argument("--family", choices=["sur", "be"])
        p.add_argument("--k", type=int)
        p.add_argument("--d", default="2", help="complexity bound, or 'inf' (default 2)")
    p.add_argument("--ring", help="Z, Q or Zp:<p> (default Z)")
    p.add_argument("--cap", type=int, default=3, help="degree cap (default 3)")
    p.add_argument("--format", choices=["text", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multichain", description="Multisimplicial chain calculus.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("count", help="generator counting polynomial")
    p.add_argument("--family", choices=["sur", "be"], default="sur")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", default="2")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list basis multisimplices by total degree")
    _common(p)
    p.add_argument("--all", action="store_true", help="include degenerate multisimplices")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("homology", help="Betti numbers and torsion")
    _common(p)
    p.add_argument("--unnormalized", action="store_true", help="use C_* instead of N_*")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("ring", help="cohomology ring with structure constants")
    _common(p)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("cup", help="cup product of two indicator cochains")
    _common(p)
    p.add_argument("gens", nargs=2)
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("verify", help="random checks of the chain-level identities")
    _common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--keep-going", action="store_true", help="report every failing input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tc", help="tc of a diagonal surjection, TC of a chain, or the filtration check")
    _common(p)
    p.add_argument("gen", nargs="?")
    p.add_argument("--chain", action="store_true", help="apply TC to the generator instead of tc")
    p.add_argument("--from-json")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tc)

    p = sub.add_parser("massey", help="triple Massey products of all admissible triples")
    _common(p)
    p.add_argument("--degrees", default="1,1,1")
    p.add_argument("--coeffs", default="-1,0,1", help="coefficient set over Q")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_massey)

    for name, fn, help_ in (("boundary", cmd_boundary, "differential of a chain"),
                            ("ez", cmd_ez, "Eilenberg-Zilber map to the diagonal"),
                            ("aw", cmd_aw, "Alexander-Whitney decomposition")):
        p = sub.add_parser(name, help=help_)
        _common(p)
        p.add_argument("gen", nargs="?")
        p.add_argument("--from-json")
        p.add_argument("--normalized", action="store_true")
        if name == "aw":
            p.add_argument("--simplicial", action="store_true", help="AW of the diagonal")
        p.set_defaults(func=fn)
    return ap


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
