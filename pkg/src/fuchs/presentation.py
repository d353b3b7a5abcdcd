"""Shared text format for ring and TN-model presentations.

One document per object.  Lines are ``key = value`` pairs; ``#`` starts a
comment.  Three kinds are supported:

``kind = radical``
    prime, basis_orders, and symmetric ``mult[i][j] = c1 c2 ...`` rows
    (1-based indices, i <= j), each value a coordinate vector.

``kind = ring``
    like radical but with arbitrary basis orders, no ``prime``, and an
    extra ``one = c1 c2 ...`` row for the identity coordinates.

``kind = tn``
    conductor, free_basis (symbol names, first one is the identity),
    tors_basis (``name:order`` pairs), ``scalar_action name = ...`` rows
    giving the base root of unity acting on each torsion symbol, and
    ``mult a b = ...`` rows over all basis symbols.  Values on free symbols
    are integer polynomials in ``z`` (the base root of unity), e.g.
    ``(1+2z^2)*x``; values on torsion symbols are plain integers.

Round-trip guarantee: ``parse(print(obj)) == obj`` for every emitted
document.
"""

from __future__ import annotations

import re


class PresentationError(ValueError):
    pass


def _strip_lines(text: str):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _intvec(s: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in s.split())


_MULT_RE = re.compile(r"^mult\[(\d+)\]\[(\d+)\]$")


def parse_ring_document(text: str) -> dict:
    """Parse a ``radical`` or ``ring`` document into a plain dict."""
    fields: dict = {"mult": {}}
    for line in _strip_lines(text):
        if "=" not in line:
            raise PresentationError(f"bad line: {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        m = _MULT_RE.match(key)
        if m:
            i, j = int(m.group(1)), int(m.group(2))
            fields["mult"][(i, j)] = _intvec(value)
        elif key == "kind":
            fields["kind"] = value
        elif key == "prime":
            fields["prime"] = int(value)
        elif key == "basis_orders":
            fields["basis_orders"] = _intvec(value)
        elif key == "one":
            fields["one"] = _intvec(value)
        elif key == "name":
            fields["name"] = value
        else:
            raise PresentationError(f"unknown key {key!r}")
    if fields.get("kind") not in ("radical", "ring"):
        raise PresentationError("document kind must be 'radical' or 'ring'")
    if "basis_orders" not in fields:
        raise PresentationError("missing basis_orders")
    r = len(fields["basis_orders"])
    for i in range(1, r + 1):
        for j in range(i, r + 1):
            if (i, j) not in fields["mult"]:
                raise PresentationError(f"missing mult[{i}][{j}]")
    return fields


def format_ring_document(kind: str, basis_orders, mult, one=None, prime=None, name=None) -> str:
    lines = []
    if name:
        lines.append(f"name = {name}")
    lines.append(f"kind = {kind}")
    if prime is not None:
        lines.append(f"prime = {prime}")
    lines.append("basis_orders = " + " ".join(str(n) for n in basis_orders))
    if one is not None:
        lines.append("one = " + " ".join(str(c) for c in one))
    r = len(basis_orders)
    for i in range(1, r + 1):
        for j in range(i, r + 1):
            vec = mult[(i, j)]
            lines.append(f"mult[{i}][{j}] = " + " ".join(str(c) for c in vec))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# TN documents: coefficients are integer polynomials in z


_TERM_RE = re.compile(r"^(?:\(([^()]*)\)|(-?\d+))(?:\*([A-Za-z]\w*))?$|^([A-Za-z]\w*)$")


def _parse_zpoly(s: str) -> tuple[int, ...]:
    """Parse '1+2z^2-z' into little-endian coefficients (1, -1, 2)."""
    s = s.replace(" ", "")
    if not s:
        raise PresentationError("empty coefficient")
    coeffs: dict[int, int] = {}
    for m in re.finditer(r"([+-]?)(\d*)(z(?:\^(\d+))?)?", s):
        sign, digits, zpart, power = m.groups()
        if not sign and not digits and not zpart:
            continue
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        k = 0
        if zpart:
            k = int(power) if power else 1
        coeffs[k] = coeffs.get(k, 0) + c
    deg = max(coeffs) if coeffs else 0
    out = [coeffs.get(k, 0) for k in range(deg + 1)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _format_zpoly(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            terms.append(f"{c:+d}")
        else:
            z = "z" if k == 1 else f"z^{k}"
            if c == 1:
                terms.append(f"+{z}")
            elif c == -1:
                terms.append(f"-{z}")
            else:
                terms.append(f"{c:+d}{z}")
    if not terms:
        return "0"
    joined = "".join(terms)
    return joined[1:] if joined.startswith("+") else joined


def parse_combination(s: str, free_names, tors_names):
    """Parse a sum like ``x + (1+z)*u + 3*y`` into coefficient maps.

    Returns (free: {name: zpoly}, tors: {name: int}).  The literal ``0``
    denotes the zero combination.
    """
    free: dict[str, tuple[int, ...]] = {}
    tors: dict[str, int] = {}
    s = s.replace(" ", "")
    if s == "0":
        return free, tors
    # split into top-level terms on +/- not inside parentheses
    terms = []
    depth = 0
    cur = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur:
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    for term in terms:
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise PresentationError(f"bad term {term!r}")
        paren, number, starred, bare = m.groups()
        name = starred or bare
        if paren is not None:
            coeff = _parse_zpoly(paren)
        elif number is not None:
            coeff = (int(number),)
        else:
            coeff = (1,)
        coeff = tuple(sign * c for c in coeff)
        if name is None:
            raise PresentationError(f"constant term {term!r} needs a basis symbol")
        if name in free_names:
            prev = free.get(name, ())
            width = max(len(prev), len(coeff))
            merged = tuple((prev[i] if i < len(prev) else 0) +
                           (coeff[i] if i < len(coeff) else 0) for i in range(width))
            free[name] = merged
        elif name in tors_names:
            if len(coeff) > 1:
                raise PresentationError(f"torsion coefficient must be an integer: {term!r}")
            tors[name] = tors.get(name, 0) + (coeff[0] if coeff else 0)
        else:
            raise PresentationError(f"unknown basis symbol {name!r}")
    return free, tors


def format_combination(free: dict, tors: dict) -> str:
    parts = []
    for name, poly in free.items():
        poly = list(poly)
        while poly and poly[-1] == 0:
            poly.pop()
        if not poly:
            continue
        if poly == [1]:
            parts.append(name)
        else:
            parts.append(f"({_format_zpoly(poly)})*{name}")
    for name, c in tors.items():
        if c == 0:
            continue
        if c == 1:
            parts.append(name)
        elif c > 0:
            parts.append(f"{c}*{name}")
        else:
            parts.append(f"({c})*{name}")  # parens keep the join '+'-safe
    return " + ".join(parts) if parts else "0"


def parse_tn_document(text: str) -> dict:
    fields: dict = {"scalar_action": {}, "mult": {}}
    pending = []
    for line in _strip_lines(text):
        if "=" not in line:
            raise PresentationError(f"bad line: {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "kind":
            fields["kind"] = value
        elif key == "name":
            fields["name"] = value
        elif key == "conductor":
            fields["conductor"] = int(value)
        elif key == "free_basis":
            fields["free_basis"] = tuple(value.split())
        elif key == "tors_basis":
            pairs = []
            for tok in value.split():
                nm, _, order = tok.partition(":")
                pairs.append((nm, int(order)))
            fields["tors_basis"] = tuple(pairs)
        elif key.startswith("scalar_action"):
            pending.append(("scalar", key.split()[1], value))
        elif key.startswith("mult"):
            _, a, b = key.split()
            pending.append(("mult", (a, b), value))
        else:
            raise PresentationError(f"unknown key {key!r}")
    if fields.get("kind") != "tn":
        raise PresentationError("document kind must be 'tn'")
    free_names = fields["free_basis"]
    tors_names = tuple(nm for nm, _ in fields.get("tors_basis", ()))
    for tag, where, value in pending:
        if tag == "scalar":
            free, tors = parse_combination(value, (), tors_names)
            fields["scalar_action"][where] = tors
        else:
            fields["mult"][where] = parse_combination(value, free_names, tors_names)
    return fields


def format_tn_document(name, conductor, free_names, tors_pairs, scalar_action, mult) -> str:
    lines = [f"name = {name}", "kind = tn", f"conductor = {conductor}"]
    lines.append("free_basis = " + " ".join(free_names))
    lines.append("tors_basis = " + " ".join(f"{nm}:{o}" for nm, o in tors_pairs))
    tors_names = [nm for nm, _ in tors_pairs]
    for nm in tors_names:
        lines.append(f"scalar_action {nm} = " + format_combination({}, scalar_action[nm]))
    names = list(free_names) + tors_names
    for i, a in enumerate(names):
        for b in names[i:]:
            free, tors = mult[(a, b)]
            lines.append(f"mult {a} {b} = " + format_combination(free, tors))
    return "\n".join(lines) + "\n"
