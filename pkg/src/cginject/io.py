"""JSON (de)serialization for groups, maps, representations, complexes and assignments.

Rationals are written as strings ``"a/b"`` (or ``"a"``); readers also accept
plain JSON integers.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources

from .complexes import FreeChainComplex
from .errors import MalformedInputError
from .groups.realized import DEFAULT_CAP, RealizedElement, build_realized_group
from .groups.splitting import decompose, splitting_subgroup
from .modmaps import GroupRingElement, GroupRingMatrix
from .reps import from_generator_images, tautological
from .words import format_word, parse_word


def rational_from_json(x):
    if isinstance(x, bool):
        raise MalformedInputError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            q = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInputError(f"bad rational {x!r}") from None
        return q.numerator if q.denominator == 1 else q
    raise MalformedInputError(f"expected a rational, got {x!r}")


def rational_to_json(x):
    return str(Fraction(x))


def jsonable(obj):
    """Recursively convert Fractions (and tuples) into JSON-friendly values."""
    if isinstance(obj, Fraction):
        return rational_to_json(obj)
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc.strerror}") from None


def digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _need(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise MalformedInputError(f"{where}: missing field {key!r}")
    return d[key]


def matrix_from_json(m, where="matrix"):
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise MalformedInputError(f"{where}: expected a list of rows")
    return tuple(tuple(rational_from_json(x) for x in r) for r in m)


def matrix_to_json(m):
    return [[rational_to_json(x) for x in r] for r in m]


def element_from_json(d, r, where):
    mat = matrix_from_json(_need(d, "mat", where), where)
    h = d.get("h", [0] * r)
    if not isinstance(h, list) or len(h) != r or not all(isinstance(x, int) for x in h):
        raise MalformedInputError(f"{where}: 'h' must be a list of {r} integers")
    return RealizedElement(mat, h)


# --- groups -------------------------------------------------------------------------------

def group_from_json(d):
    k = _need(d, "k", "group")
    r = _need(d, "r", "group")
    prime = d.get("prime")
    cap = d.get("cap", DEFAULT_CAP)
    gens, names = [], []
    for i, g in enumerate(d.get("generators", [])):
        gens.append(element_from_json(g, r, f"group.generators[{i}]"))
        names.append(g.get("name", f"g{i + 1}"))
    pgens, pnames = [], []
    for i, g in enumerate(d.get("p_generators", [])):
        pgens.append(element_from_json(g, r, f"group.p_generators[{i}]"))
        pnames.append(g.get("name", f"q{i + 1}"))
    for g in gens + pgens:
        if g.k != k:
            raise MalformedInputError(f"group: matrices must be {k}x{k}")
    return build_realized_group(gens, pgens, prime=prime, cap=cap, generator_names=names,
                                p_names=pnames)


def group_to_json(G):
    return {
        "k": G.k,
        "r": G.r,
        "prime": G.prime,
        "generators": [{"name": n, "mat": matrix_to_json(g.mat), "h": list(g.hvec)}
                       for n, g in zip(G.generator_names, G.generators)],
        "p_generators": [{"name": n, "mat": matrix_to_json(g.mat), "h": list(g.hvec)}
                         for n, g in zip(G.p_names, G.p_generators)],
        "cap": G.cap,
    }


# --- maps ---------------------------------------------------------------------------------

def element_word(G, g, cert=None):
    """A generator word for ``g`` via its normal form psi(f) q t_j."""
    cert = cert or splitting_subgroup(G)
    c, qi, j = decompose(G, cert, g)
    word = ()
    for w, ci in zip(cert.section_words, c):
        if ci > 0:
            word += w * ci
        elif ci < 0:
            word += tuple((n, -e) for n, e in reversed(w)) * (-ci)
    return word + G.kernel_words[qi] + cert.coset_words[j]


def map_from_json(d, G):
    rows = _need(d, "rows", "map")
    cols = _need(d, "cols", "map")
    entries = _need(d, "entries", "map")
    if not isinstance(entries, list) or len(entries) != rows:
        raise MalformedInputError(f"map: expected {rows} rows of entries")
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MalformedInputError(f"map: row {i} must have {cols} entries")
        line = []
        for j, terms in enumerate(row):
            e = GroupRingElement()
            if not isinstance(terms, list):
                raise MalformedInputError(f"map: entry ({i}, {j}) must be a list of terms")
            for t in terms:
                w = parse_word(_need(t, "word", f"map entry ({i}, {j})"))
                if w == (("e", 1),):
                    w = ()
                c = rational_from_json(t.get("coeff", 1))
                e = e + GroupRingElement.of(G.evaluate_word(w), c, w)
            line.append(e)
        out.append(line)
    return GroupRingMatrix(out, rows, cols)


def map_to_json(m, G):
    cert = None
    entries = []
    for row in m.entries:
        line = []
        for e in row:
            terms = []
            for g, c in e.terms.items():
                w = e.words.get(g)
                if w is None:
                    cert = cert or splitting_subgroup(G)
                    w = element_word(G, g, cert)
                terms.append({"word": format_word(w), "coeff": rational_to_json(c)})
            terms.sort(key=lambda t: (t["word"], t["coeff"]))
            line.append(terms)
        entries.append(line)
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


# --- representations ----------------------------------------------------------------------

def rep_from_json(d, G):
    if d is None or d.get("kind") == "tautological" or "alpha" not in d:
        return tautological(G)
    alpha = d["alpha"]
    images = {n: matrix_from_json(m, f"rep.alpha[{n}]") for n, m in alpha.items()}
    phi = d.get("phi", {})
    for n, v in phi.items():
        g = G.element(n)
        if list(g.hvec) != list(v):
            raise MalformedInputError(f"rep.phi[{n}] = {v} disagrees with the group's h-vector")
    return from_generator_images(G, images)


def rep_to_json(rep):
    G = rep.group
    return {"alpha": {n: matrix_to_json(rep.alpha(G.element(n))) for n in G.names},
            "phi": {n: list(G.element(n).hvec) for n in G.names}}


# --- complexes ----------------------------------------------------------------------------

def complex_from_json(d, G):
    ranks = _need(d, "ranks", "complex")
    bds = _need(d, "boundaries", "complex")
    maps = [map_from_json(b, G) for b in bds]
    return FreeChainComplex(ranks, maps, G.identity())


def complex_to_json(C, G):
    return {"ranks": list(C.ranks), "boundaries": [map_to_json(d, G) for d in C.boundaries]}


# --- knot assignments ---------------------------------------------------------------------

def assignment_from_json(d, pres):
    images = _need(d, "images", "assignment")
    out = {}
    for n in pres.generators:
        if n not in images:
            raise MalformedInputError(f"assignment: no image for generator {n!r}")
        img = dict(images[n])
        img.setdefault("h", list(pres.phi(n)))
        out[n] = element_from_json(img, pres.r, f"assignment.images[{n}]")
    extra = set(images) - set(pres.generators)
    if extra:
        raise MalformedInputError(f"assignment: unknown generators {sorted(extra)}")
    return out


def assignment_to_json(images):
    return {"images": {n: {"mat": matrix_to_json(g.mat), "h": list(g.hvec)}
                       for n, g in images.items()}}


# --- bundled fixtures ---------------------------------------------------------------------

def fixture_path(name):
    return str(resources.files("cginject").joinpath("fixtures", name))


def fixture_text(name):
    return resources.files("cginject").joinpath("fixtures", name).read_text(encoding="utf-8")
