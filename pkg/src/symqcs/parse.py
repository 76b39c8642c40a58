"""Builder specs and element strings.

Ring specs: ``Q[x,y]``, ``Q[x,y]/(x^3, x*y)``, ``GF(5)[x:2,y]`` (``name:degree``),
``T(2)`` tensor algebra on two letters, ``Lambda(3)`` exterior algebra,
``kSigma`` / ``kSigma(conjugation)`` symmetric group algebra.

Elements are sums of ``coeff*factor*factor...`` where a factor is a basis label of the
algebra (``x``, ``xy``, ``21``) optionally raised to a power ``^k``.
"""
from __future__ import annotations

import re

from .algebra import MonomialRing, SymAlgebra, exterior_algebra, sym_group_algebra, tensor_algebra, trivial_action
from .errors import ConfigurationError
from .linalg import Field, QQ

_FIELD = re.compile(r"^\s*(Q|QQ|GF\(\d+\))\s*\[(.*?)\]\s*(?:/\s*\((.*)\))?\s*$")


def parse_field(s: str | None) -> Field:
    if s is None:
        return QQ
    try:
        f = Field.from_json(s)
    except ValueError as exc:
        raise ConfigurationError(f"unknown field {s!r}") from exc
    if f.char and any(f.char % p == 0 for p in range(2, int(f.char ** 0.5) + 1)):
        raise ConfigurationError(f"GF({f.char}) needs a prime")
    return f


def parse_ring(spec: str, field: Field | None = None) -> MonomialRing:
    m = _FIELD.match(spec)
    if not m:
        raise ConfigurationError(f"cannot parse ring {spec!r}")
    fld = parse_field(m.group(1)) if field is None else field
    names, degrees = [], []
    for part in m.group(2).split(","):
        part = part.strip()
        if not part:
            continue
        name, _, deg = part.partition(":")
        if not re.fullmatch(r"[A-Za-z]\w*", name):
            raise ConfigurationError(f"bad variable name {name!r}")
        names.append(name)
        degrees.append(int(deg) if deg else 1)
    if not names:
        raise ConfigurationError("a ring needs at least one variable")
    rels = []
    if m.group(3):
        for r in m.group(3).split(","):
            rels.append(parse_monomial(r, names))
    return MonomialRing(names, degrees, rels, fld)


def parse_monomial(s: str, names: list[str]) -> tuple:
    exps = [0] * len(names)
    for f in s.strip().split("*"):
        f = f.strip()
        base, _, pw = f.partition("^")
        if base not in names:
            raise ConfigurationError(f"unknown variable {base!r} in monomial {s!r}")
        exps[names.index(base)] += int(pw) if pw else 1
    return tuple(exps)


def build_algebra(spec: str, cutoff: int, field: Field | None = None) -> SymAlgebra:
    s = spec.strip()
    fld = QQ if field is None else field
    if cutoff < 0:
        raise ConfigurationError("cutoff must be non-negative")
    m = re.fullmatch(r"T\((\d+)\)", s)
    if m:
        E = tensor_algebra(int(m.group(1)), cutoff, fld)
    elif re.fullmatch(r"(Lambda|Λ)\((\d+)\)", s):
        E = exterior_algebra(int(re.search(r"\d+", s).group()), cutoff, fld)
    elif re.fullmatch(r"kSigma(\((left|conjugation)\))?", s):
        action = "conjugation" if "conjugation" in s else "left"
        E = sym_group_algebra(cutoff, action, fld)
    else:
        ring = parse_ring(s, field)
        E = trivial_action(ring, cutoff)
    E._cache["builder"] = {"spec": s, "cutoff": cutoff, "field": E.field.to_json()}
    return E


def label_table(E: SymAlgebra) -> dict:
    if "labels_by_name" in E._cache:
        return E._cache["labels_by_name"]
    table = {}
    for n in range(E.cutoff + 1):
        for i in range(E.dim(n)):
            table.setdefault(E.label(n, i), (n, i))
    E._cache["labels_by_name"] = table
    return table


def _split_terms(s: str) -> list[tuple[int, str]]:
    s = s.replace(" ", "")
    if not s:
        raise ConfigurationError("empty element")
    terms, sign, cur = [], 1, ""
    for ch in s:
        if ch in "+-" and cur and not cur.endswith(("*", "^", "/")):
            terms.append((sign, cur))
            sign, cur = (1 if ch == "+" else -1), ""
        elif ch in "+-" and not cur:
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
    terms.append((sign, cur))
    return terms


def parse_element(E: SymAlgebra, s: str) -> tuple[int, dict]:
    """Homogeneous element (degree, vector) from a string."""
    table = label_table(E)
    total: dict = {}
    degree = None
    for sign, term in _split_terms(s):
        coeff = E.field(sign)
        deg, vec = 0, dict(E.unit)
        for fac in term.split("*"):
            base, _, pw = fac.partition("^")
            power = int(pw) if pw else 1
            if base in table:
                n, i = table[base]
                for _ in range(power):
                    if deg + n > E.cutoff:
                        raise ConfigurationError(f"element {s!r} beyond cutoff {E.cutoff}")
                    vec = E.mul(deg, vec, n, {i: E.field.one})
                    deg += n
            else:
                try:
                    c = E.field.parse(base)
                except (ValueError, ZeroDivisionError, ConfigurationError) as exc:
                    raise ConfigurationError(f"unknown factor {base!r} in {s!r}") from exc
                if pw:
                    c = c ** power if E.field.char == 0 else E.field(int(c.v) ** power)
                coeff = coeff * c
        if degree is None:
            degree = deg
        elif deg != degree:
            raise ConfigurationError(f"element {s!r} is not homogeneous")
        for k, x in vec.items():
            y = total.get(k, 0) + coeff * x
            if y:
                total[k] = y
            else:
                total.pop(k, None)
    return degree, total


def parse_elements(E: SymAlgebra, s: str) -> list[tuple[int, dict]]:
    return [parse_element(E, part) for part in s.split(",") if part.strip()]
