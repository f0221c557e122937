"""Command-line front end: parse a presentation file, run one analysis, print a report.

Input is a JSON document::

    {"n": 2, "N": 2,
     "relation": [{"word": [0, 1], "coeff": "1"}, {"word": [1, 0], "coeff": "-1"}],
     "phi": {"0": "1", "1": [{"word": [0], "coeff": "2/3"}]}}

``relations`` (a list of such term lists) may replace ``relation``.  For
symplectic deformations ``v`` (a term list of degree 1) and ``lambda`` are
read instead of ``phi``.  Exit status: 0 when the analysis ran (whatever
the verdict), 1 for bad input, 2 when a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .classification import (
    classify_antisymmetric,
    classify_quadratic,
    is_antisymmetric,
)
from .distributivity import DEFAULT_LATTICE_CAP, gerasimov_suite
from .exactlin import CharacteristicError, DegreeMismatch, Tensor, scalar
from .hilbert import (
    MODULUS_TOLERANCE,
    RationalSeries,
    family_denominator,
    gk_closed_form,
    gk_numeric,
    koszul_series,
    power_relation_series,
    quotient_series,
)
from .koszul import (
    DEFAULT_PROBE_LIMIT,
    AtLeast,
    NotKoszulError,
    criterion_check,
    criterion_check_equalform,
    global_dimension,
)
from .monomial import (
    MonomialSet,
    avoid_count,
    is_koszul_set,
    is_koszul_single,
    koszul_census,
    monomial_profile,
)
from .pbw import PhiMap, pbw_check, pbw_power_closed_form
from .presentation import Presentation, ResourceError, free_product, random_relation, w_space

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2


class InputError(ValueError):
    """Malformed or inconsistent input; ``where`` locates the offending item."""

    def __init__(self, msg, where=None):
        self.where = where
        super().__init__("%s: %s" % (where, msg) if where else msg)


# ---------------------------------------------------------------- parsing

def _coeff(raw, where):
    if isinstance(raw, bool) or isinstance(raw, float):
        raise InputError("coefficients must be integers or 'p/q' strings (got %r)" % (raw,), where)
    if isinstance(raw, int):
        return scalar(raw)
    if isinstance(raw, str):
        try:
            return scalar(Fraction(raw.strip()))
        except (ValueError, ZeroDivisionError):
            raise InputError("bad rational %r" % raw, where) from None
    raise InputError("coefficient must be a string or integer", where)


def _terms(raw, n, degree, where) -> Tensor:
    if not isinstance(raw, list):
        raise InputError("expected a list of {word, coeff} terms", where)
    acc = Tensor.zero(degree)
    for k, term in enumerate(raw):
        at = "%s[%d]" % (where, k)
        if not isinstance(term, dict) or "word" not in term:
            raise InputError("term needs a 'word'", at)
        word = term["word"]
        if not isinstance(word, list) or not all(isinstance(i, int) and not isinstance(i, bool)
                                                  for i in word):
            raise InputError("word must be a list of generator indices", at + ".word")
        if len(word) != degree:
            raise InputError("word has degree %d, expected %d" % (len(word), degree), at + ".word")
        for j, i in enumerate(word):
            if not 0 <= i < n:
                raise InputError("generator index %d ≥ n" % i if i >= n
                                 else "negative generator index %d" % i,
                                 "%s.word[%d]" % (at, j))
        acc = acc + Tensor.monomial(word, _coeff(term.get("coeff", "1"), at + ".coeff"))
    return acc


def _natural(doc, key, lo):
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < lo:
        raise InputError("'%s' must be an integer >= %d" % (key, lo), key)
    return v


def parse_document(text: str, degree_cap: int | None = None) -> dict:
    """Parse to {"presentation", "phi", "v", "lambda"} (absent parts are None)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(e.msg, "line %d, column %d" % (e.lineno, e.colno)) from None
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    n = _natural(doc, "n", 1)
    N = _natural(doc, "N", 2)
    if "relation" in doc and "relations" in doc:
        raise InputError("give either 'relation' or 'relations'")
    if "relation" in doc:
        raw_rels = [("relation", doc["relation"])]
    else:
        raw = doc.get("relations", [])
        if not isinstance(raw, list):
            raise InputError("expected a list of relations", "relations")
        raw_rels = [("relations[%d]" % k, r) for k, r in enumerate(raw)]
    rels = []
    for where, r in raw_rels:
        t = _terms(r, n, N, where)
        if not t:
            raise InputError("relation is zero", where)
        rels.append(t)
    kw = {} if degree_cap is None else {"degree_cap": degree_cap}
    P = Presentation(n, N, tuple(rels), **kw)

    phi = None
    if "phi" in doc:
        raw = doc["phi"]
        if not isinstance(raw, dict):
            raise InputError("phi must map component degrees to terms", "phi")
        comps = {}
        for key, val in raw.items():
            try:
                j = int(key)
            except ValueError:
                raise InputError("component key must be a degree", "phi.%s" % key) from None
            if not 0 <= j < N:
                raise InputError("component degree must lie in 0..N-1", "phi.%s" % key)
            if j == 0 and not isinstance(val, list):
                comps[0] = _coeff(val, "phi.0")
            else:
                comps[j] = _terms(val, n, j, "phi.%d" % j)
        phi = PhiMap.from_components(N, comps)
    v = _terms(doc["v"], n, 1, "v") if "v" in doc else None
    lam = _coeff(doc["lambda"], "lambda") if "lambda" in doc else None
    if (v is not None or lam is not None) and phi is None:
        if N != 2:
            raise InputError("'v' and 'lambda' describe N = 2 deformations only")
        phi = PhiMap.from_components(2, {0: lam if lam is not None else 0,
                                         1: v if v is not None else Tensor.zero(1)})
    return {"presentation": P, "phi": phi, "v": v, "lambda": lam}


def parse_presentation(text: str):
    """Presentation and optional PhiMap from a document."""
    d = parse_document(text)
    return d["presentation"], d["phi"]


def _emit_terms(t: Tensor) -> list:
    return [{"word": list(w), "coeff": str(c)} for w, c in sorted(t.coeffs.items())]


def emit_presentation(P: Presentation, phi: PhiMap | None = None) -> str:
    doc = {"n": P.n, "N": P.N}
    if P.is_single:
        doc["relation"] = _emit_terms(P.relation)
    else:
        doc["relations"] = [_emit_terms(f) for f in P.relations]
    if phi is not None:
        doc["phi"] = {str(j): (str(phi.constant) if j == 0 else _emit_terms(phi[j]))
                      for j in range(phi.N) if phi[j]}
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------- reports

def _num(x):
    """JSON-friendly rendering of dimensions that may be infinite or bounded below."""
    if isinstance(x, AtLeast):
        return ">=%d" % x.value
    if x == math.inf:
        return "inf"
    return x


def _str_tensor(t):
    return None if t is None else repr(t)


def koszul_report(P, probe_limit):
    v1 = criterion_check(P)
    v2 = criterion_check_equalform(P)
    out = {
        "module": "koszul",
        "criterion": v1.criterion,
        "is_koszul": v1.is_koszul,
        "failing_m": v1.failing_m,
        "witness": _str_tensor(v1.witness),
        "equality_form_agrees": v1.is_koszul == v2.is_koszul and v1.failing_m == v2.failing_m,
    }
    if v1:
        out["global_dimension"] = _num(global_dimension(P, probe_limit))
    return out


def distributivity_report(P, m_max, cap):
    rep = gerasimov_suite(P, m_max, cap, require_single=False)
    return {
        "module": "distributivity",
        "criterion": "all triples in generated sublattices",
        "guaranteed": P.is_single,
        "m_max": m_max,
        "all_pass": rep.all_pass,
        "violations": rep.violations,
        "degrees": [{"m": r.m, "lattice_size": r.lattice_size, "distributive": r.distributive}
                    for r in rep.results],
    }


def _gk_report(P, tolerance):
    """GK dimension for the two recognised series shapes, by both routes."""
    if not P.is_single:
        return None
    f = P.relation
    power = len(f) == 1 and len(set(next(iter(f.coeffs)))) == 1
    if power:
        closed = 0 if P.n == 1 else math.inf
        series = power_relation_series(P.n, P.N)
    elif w_space(P, P.N + 1).is_zero() and P.n >= 2:
        closed = gk_closed_form(P.n, P.N)
        series = RationalSeries((1,), family_denominator(P.n, P.N))
    else:
        return None
    return {"closed_form": _num(closed), "numeric": _num(gk_numeric(series, tolerance))}


def hilbert_report(P, degree, tolerance):
    out = {"module": "hilbert", "degree": degree}
    q = quotient_series(P, degree)
    out["quotient_dims"] = list(q.coefficients)
    try:
        ks = koszul_series(P, degree)
    except NotKoszulError as e:
        out["criterion"] = "quotient dimensions only"
        out["koszul_formula"] = None
        out["note"] = str(e)
        out["coefficients"] = list(q.coefficients)
        return out
    out["criterion"] = "Euler-Poincare identity on the Koszul complex"
    out["koszul_formula"] = list(ks.coefficients)
    out["coefficients"] = list(ks.coefficients)
    out["agree"] = ks.agrees(q)
    gk = _gk_report(P, tolerance)
    if gk is not None:
        out["gk_dimension"] = gk
    return out


def _profile_dict(prof):
    return {k: _num(v) if isinstance(v, (int, float)) and not isinstance(v, bool) else v
            for k, v in vars(prof).items()}


def classify_report(P):
    out = {"module": "classification", "profiles": {}}
    if not P.is_single:
        out["note"] = "classification needs a single relation"
        return out
    f = P.relation
    if not P.is_rational():
        out["note"] = "classification holds in characteristic zero only"
        return out
    if P.N == 2:
        out["profiles"]["quadratic"] = _profile_dict(classify_quadratic(P))
    if is_antisymmetric(f) and P.N <= P.n:
        prof = _profile_dict(classify_antisymmetric(P))
        prof["overlap_vanishing"] = {str(k): v for k, v in prof["overlap_vanishing"].items()}
        out["profiles"]["antisymmetric"] = prof
    if len(f) == 1:
        (w,) = f.coeffs
        if is_koszul_single(w):
            prof = monomial_profile(w, P.n)
            out["profiles"]["monomial"] = {
                "koszul": True,
                "global_dimension": _num(prof.global_dimension),
                "hilbert_numerator": [str(c) for c in prof.hilbert_series.num],
                "hilbert_denominator": [str(c) for c in prof.hilbert_series.den],
                "gk_dimension": _num(prof.gk_dimension),
                "as_gorenstein": prof.as_gorenstein,
            }
    return out


def monomial_report(P, degree):
    if not all(len(f) == 1 for f in P.relations) or not P.relations:
        raise InputError("monomial analysis needs relations that are single words")
    ws = [next(iter(f.coeffs)) for f in P.relations]
    C = MonomialSet(P.n, P.N, frozenset(ws))
    v = is_koszul_set(C)
    out = {
        "module": "monomial",
        "criterion": "overlap factors",
        "is_koszul": v.is_koszul,
        "counterexample": list(v.counterexample) if v.counterexample else None,
    }
    if len(ws) == 1:
        out["single_word_test"] = is_koszul_single(ws[0])
        out["avoid_counts"] = [avoid_count(ws[0], P.n, d) for d in range(degree + 1)]
    return out


def census_report(n, N, p):
    ps = range(n ** N + 1) if p is None else [p]
    return {"module": "monomial", "criterion": "overlap factors", "n": n, "N": N,
            "counts": {str(q): koszul_census(n, N, q) for q in ps}}


def pbw_report(P, phi):
    if phi is None:
        raise InputError("pbw needs 'phi' (or 'v'/'lambda') in the input")
    v = pbw_check(P, phi)
    out = {
        "module": "pbw",
        "criterion": "J1-J3 on W_{N+1}",
        "is_pbw": v.is_pbw,
        "failed_condition": v.failed_condition,
        "witness": _str_tensor(v.witness[0]) if v.witness else None,
        "w_basis_checked": v.checked,
    }
    f = P.relation
    if len(f) == 1 and len(set(next(iter(f.coeffs)))) == 1:
        letter = next(iter(f.coeffs))[0]
        closed = pbw_power_closed_form(P.n, P.N, phi, letter)
        out["power_closed_form"] = closed
        out["closed_form_agrees"] = closed == v.is_pbw
    return out


# ---------------------------------------------------------------- driver

COMMANDS = ("check-koszul", "distributivity", "hilbert", "classify", "monomial",
            "census", "pbw", "free-product", "report-all")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nkoszul", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("inputs", nargs="*", help="presentation file(s); '-' reads stdin")
    ap.add_argument("--random", metavar="n:N",
                    help="use a random single relation instead of a file (see --seed)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-degree", type=int, default=None, help="degree cap for exact algebra")
    ap.add_argument("--degree", type=int, default=6, help="series / count degree")
    ap.add_argument("--probe-limit", type=int, default=DEFAULT_PROBE_LIMIT)
    ap.add_argument("--lattice-cap", type=int, default=DEFAULT_LATTICE_CAP)
    ap.add_argument("--m-max", type=int, default=None)
    ap.add_argument("--tolerance", type=float, default=MODULUS_TOLERANCE)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--no-timing", action="store_true", help="omit the timing field")
    ap.add_argument("-n", type=int, help="census: number of generators")
    ap.add_argument("-N", type=int, help="census: word degree")
    ap.add_argument("-p", type=int, help="census: set size (default: all sizes)")
    return ap


def _positive(args):
    for name in ("degree", "probe_limit", "lattice_cap", "max_degree", "m_max"):
        v = getattr(args, name)
        if v is not None and v <= 0:
            raise InputError("--%s must be positive" % name.replace("_", "-"))
    if args.tolerance <= 0:
        raise InputError("--tolerance must be positive")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(e.strerror, path) from None
    except UnicodeDecodeError:
        raise InputError("input is not UTF-8 text", path) from None


def _load(args):
    """List of parsed documents from the input files or --random."""
    if args.random:
        try:
            n, N = (int(x) for x in args.random.split(":"))
        except ValueError:
            raise InputError("--random expects n:N") from None
        if n < 1 or N < 2:
            raise InputError("--random needs n >= 1 and N >= 2")
        rng = random.Random(args.seed)
        kw = {} if args.max_degree is None else {"degree_cap": args.max_degree}
        P = Presentation(n, N, (random_relation(n, N, rng),), **kw)
        return [{"presentation": P, "phi": None, "v": None, "lambda": None}]
    if not args.inputs:
        raise InputError("no input file given")
    docs = []
    for path in args.inputs:
        try:
            docs.append(parse_document(_read(path), args.max_degree))
        except InputError as e:
            raise InputError(str(e), path) from None
    return docs


def run(args) -> dict:
    """Execute one job and return the report (without timing)."""
    _positive(args)
    rep = {"command": args.command}
    if args.command == "census":
        if args.n is None or args.N is None:
            raise InputError("census needs -n and -N")
        rep["census"] = census_report(args.n, args.N, args.p)
        return rep
    docs = _load(args)
    if args.command == "free-product":
        if len(docs) != 2:
            raise InputError("free-product needs exactly two inputs")
        P = free_product(docs[0]["presentation"], docs[1]["presentation"])
        rep["presentation"] = json.loads(emit_presentation(P))
        if P.is_single:
            rep["koszul"] = koszul_report(P, args.probe_limit)
        rep["hilbert"] = hilbert_report(P, args.degree, args.tolerance)
        return rep
    if len(docs) != 1:
        raise InputError("%s takes one input" % args.command)
    P, phi = docs[0]["presentation"], docs[0]["phi"]
    rep["presentation"] = json.loads(emit_presentation(P, phi))
    m_max = args.m_max if args.m_max is not None else P.N + 3
    cmd = args.command
    if cmd == "check-koszul":
        rep["koszul"] = koszul_report(P, args.probe_limit)
    elif cmd == "distributivity":
        rep["distributivity"] = distributivity_report(P, m_max, args.lattice_cap)
    elif cmd == "hilbert":
        rep["hilbert"] = hilbert_report(P, args.degree, args.tolerance)
    elif cmd == "classify":
        rep["classification"] = classify_report(P)
    elif cmd == "monomial":
        rep["monomial"] = monomial_report(P, args.degree)
    elif cmd == "pbw":
        rep["pbw"] = pbw_report(P, phi)
    elif cmd == "report-all":
        if P.is_single:
            rep["koszul"] = koszul_report(P, args.probe_limit)
        rep["distributivity"] = distributivity_report(P, m_max, args.lattice_cap)
        rep["hilbert"] = hilbert_report(P, args.degree, args.tolerance)
        rep["classification"] = classify_report(P)
        if all(len(f) == 1 for f in P.relations) and P.relations:
            rep["monomial"] = monomial_report(P, args.degree)
        if phi is not None and P.is_single and rep["koszul"]["is_koszul"]:
            rep["pbw"] = pbw_report(P, phi)
    return rep


def render_text(rep, prefix="") -> str:
    lines = []
    for k, v in rep.items():
        key = prefix + str(k)
        if isinstance(v, dict):
            lines.append(render_text(v, key + "."))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                lines.append(render_text(item, "%s[%d]." % (key, i)))
        else:
            lines.append("%s: %s" % (key, json.dumps(v) if isinstance(v, (list, bool)) or v is None
                                     else v))
    return "\n".join(line for line in lines if line)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = run(args)
    except ResourceError as e:
        print("resource limit: %s" % e, file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, DegreeMismatch, CharacteristicError, NotKoszulError, ValueError) as e:
        print("input error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    if not args.no_timing:
        rep["timing_s"] = round(time.perf_counter() - start, 6)
    if args.format == "json":
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(render_text(rep))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
