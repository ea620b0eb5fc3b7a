"""Line-oriented session scripts: ring/ideal/module declarations plus
invariant, resolution, check, depth-sequence and explorer commands."""

from __future__ import annotations

import re

from .kernel import AmbientRing, KernelError, UnsupportedInput
from .modules import GradedMap, GradedModule, Ideal, QuotientRing, dual, tensor
from .invariants import h, invariant_report, _json_val
from .resolutions import resolve
from . import checks


class ScriptError(KernelError):
    """Parse or execution error with a source location."""

    def __init__(self, message, line, col=1):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# -- module expressions ------------------------------------------------------------


class ExprName:
    def __init__(self, name):
        self.name = name

    def pretty(self):
        return self.name


class ExprDual:
    def __init__(self, inner):
        self.inner = inner

    def pretty(self):
        inner = self.inner.pretty()
        if isinstance(self.inner, ExprTensor):
            inner = f"({inner})"
        return inner + "*"


class ExprTensor:
    def __init__(self, parts):
        self.parts = parts

    def pretty(self):
        out = []
        for p in self.parts:
            s = p.pretty()
            if isinstance(p, ExprTensor):
                s = f"({s})"
            out.append(s)
        return "⊗".join(out)


class _ExprParser:
    def __init__(self, text, line, col0):
        self.text = text
        self.line = line
        self.col0 = col0
        self.pos = 0

    def error(self, msg):
        raise ScriptError(msg, self.line, self.col0 + self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected input {self.text[self.pos:]!r} after module expression")
        return e

    def expr(self):
        parts = [self.term()]
        while self.peek() == "⊗":
            self.pos += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else ExprTensor(parts)

    def term(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
        else:
            m = re.match(r"[A-Za-z_][A-Za-z0-9_]*", self.text[self.pos:])
            if not m:
                self.error("expected a module name or '('")
            e = ExprName(m.group(0))
            self.pos += len(m.group(0))
        while self.peek() == "*":
            self.pos += 1
            e = ExprDual(e)
        return e


def parse_module_expr(text, line=1, col0=1):
    return _ExprParser(text, line, col0).parse()


# -- statements ---------------------------------------------------------------------


class StRingPoly:
    def __init__(self, name, char, variables):
        self.name, self.char, self.variables = name, char, list(variables)

    def pretty(self):
        return f"ring {self.name} = poly(p={self.char}, vars=[{','.join(self.variables)}])"


class StRingQuot:
    def __init__(self, name, base, ideal):
        self.name, self.base, self.ideal = name, base, ideal

    def pretty(self):
        return f"ring {self.name} = {self.base} / {self.ideal}"


class StIdeal:
    def __init__(self, name, gens, ring):
        self.name, self.gens, self.ring = name, list(gens), ring

    def pretty(self):
        return f"ideal {self.name} = ({', '.join(self.gens)}) in {self.ring}"


class StCoker:
    def __init__(self, name, ring, rows, gen_twists, rel_twists):
        self.name, self.ring, self.rows = name, ring, [list(r) for r in rows]
        self.gen_twists = None if gen_twists is None else list(gen_twists)
        self.rel_twists = None if rel_twists is None else list(rel_twists)

    def pretty(self):
        mat = "[" + ", ".join("[" + ", ".join(r) + "]" for r in self.rows) + "]"
        out = f"module {self.name} = coker {self.ring} {mat}"
        if self.gen_twists is not None:
            out += (f" twists [{','.join(map(str, self.gen_twists))}]"
                    f" -> [{','.join(map(str, self.rel_twists))}]")
        return out


class StModuleIdeal:
    def __init__(self, name, gens, ring):
        self.name, self.gens, self.ring = name, list(gens), ring

    def pretty(self):
        return f"module {self.name} = ideal ({', '.join(self.gens)}) in {self.ring}"


class StInvariants:
    def __init__(self, expr):
        self.expr = expr

    def pretty(self):
        return f"invariants {self.expr.pretty()}"


class StH:
    def __init__(self, expr, lo, hi):
        self.expr, self.lo, self.hi = expr, lo, hi

    def pretty(self):
        rng = str(self.lo) if self.lo == self.hi else f"{self.lo}..{self.hi}"
        return f"h {self.expr.pretty()} {rng}"


class StResolve:
    def __init__(self, expr, bound):
        self.expr, self.bound = expr, bound

    def pretty(self):
        out = f"resolve {self.expr.pretty()}"
        if self.bound is not None:
            out += f" bound {self.bound}"
        return out


class StCheck:
    def __init__(self, check_id, exprs, ideal, r):
        self.check_id, self.exprs, self.ideal, self.r = check_id, list(exprs), ideal, r

    def pretty(self):
        out = f"check {self.check_id}"
        for e in self.exprs:
            out += f" {e.pretty()}"
        if self.ideal is not None:
            out += f" ideal {self.ideal}"
        if self.r is not None:
            out += f" r={self.r}"
        return out


class StDepthseq:
    def __init__(self, expr, n, ideal):
        self.expr, self.n, self.ideal = expr, n, ideal

    def pretty(self):
        out = f"depthseq {self.expr.pretty()} n={self.n}"
        if self.ideal is not None:
            out += f" ideal {self.ideal}"
        return out


class StExplore:
    def __init__(self, check_id, trials, seed):
        self.check_id, self.trials, self.seed = check_id, trials, seed

    def pretty(self):
        return f"explore {self.check_id} trials={self.trials} seed={self.seed}"


class SessionScript:
    def __init__(self, statements):
        self.statements = list(statements)

    def pretty(self):
        return "\n".join(s.pretty() for s in self.statements) + "\n"


# -- parser ---------------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_CHECKID = r"[A-Za-z0-9][A-Za-z0-9_-]*"

_RE_RING_POLY = re.compile(
    rf"ring\s+({_NAME})\s*=\s*poly\(\s*p\s*=\s*(\d+)\s*,\s*vars\s*=\s*\[([^\]]*)\]\s*\)\s*$")
_RE_RING_QUOT = re.compile(rf"ring\s+({_NAME})\s*=\s*({_NAME})\s*/\s*({_NAME})\s*$")
_RE_IDEAL = re.compile(rf"ideal\s+({_NAME})\s*=\s*\((.*)\)\s*in\s+({_NAME})\s*$")
_RE_COKER = re.compile(
    rf"module\s+({_NAME})\s*=\s*coker\s+({_NAME})\s*(\[\[.*\]\])"
    rf"(?:\s+twists\s*\[([^\]]*)\]\s*->\s*\[([^\]]*)\])?\s*$")
_RE_MODIDEAL = re.compile(rf"module\s+({_NAME})\s*=\s*ideal\s*\((.*)\)\s*in\s+({_NAME})\s*$")
_RE_H = re.compile(r"h\s+(.*?)\s+(\d+)(?:\.\.(\d+))?\s*$")
_RE_RESOLVE = re.compile(r"resolve\s+(.*?)(?:\s+bound\s+(\d+))?\s*$")
_RE_CHECK = re.compile(rf"check\s+({_CHECKID})\s+(.*)$")
_RE_DEPTHSEQ = re.compile(rf"depthseq\s+(.*?)\s+n\s*=\s*(\d+)(?:\s+ideal\s+({_NAME}))?\s*$")
_RE_EXPLORE = re.compile(
    rf"explore\s+({_CHECKID})\s+trials\s*=\s*(\d+)\s+seed\s*=\s*(\d+)\s*$")


def _split_commas(text):
    """Split on top-level commas, respecting (), []."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return [p for p in parts if p]


def _parse_matrix(text, line):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ScriptError("expected a [[...], ...] matrix literal", line)
    rows_text = _split_commas(text[1:-1])
    rows = []
    for rt in rows_text:
        rt = rt.strip()
        if not (rt.startswith("[") and rt.endswith("]")):
            raise ScriptError("expected a [...] matrix row", line)
        rows.append(_split_commas(rt[1:-1]))
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ScriptError("ragged matrix literal", line)
    return rows


def _parse_ints(text, line):
    try:
        return [int(x) for x in _split_commas(text)]
    except ValueError:
        raise ScriptError(f"expected an integer list, got [{text}]", line)


def parse(text) -> SessionScript:
    """Parse a session script; raises ScriptError with a location."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        if head == "ring":
            m = _RE_RING_POLY.match(line)
            if m:
                names = [v.strip() for v in m.group(3).split(",") if v.strip()]
                if not names:
                    raise ScriptError("a polynomial ring needs variables", lineno)
                statements.append(StRingPoly(m.group(1), int(m.group(2)), names))
                continue
            m = _RE_RING_QUOT.match(line)
            if m:
                statements.append(StRingQuot(m.group(1), m.group(2), m.group(3)))
                continue
            raise ScriptError("malformed ring declaration", lineno)
        if head == "ideal":
            m = _RE_IDEAL.match(line)
            if not m:
                raise ScriptError("malformed ideal declaration", lineno)
            statements.append(StIdeal(m.group(1), _split_commas(m.group(2)), m.group(3)))
            continue
        if head == "module":
            m = _RE_COKER.match(line)
            if m:
                rows = _parse_matrix(m.group(3), lineno)
                gt = rt = None
                if m.group(4) is not None:
                    gt = _parse_ints(m.group(4), lineno)
                    rt = _parse_ints(m.group(5), lineno)
                statements.append(StCoker(m.group(1), m.group(2), rows, gt, rt))
                continue
            m = _RE_MODIDEAL.match(line)
            if m:
                statements.append(
                    StModuleIdeal(m.group(1), _split_commas(m.group(2)), m.group(3)))
                continue
            raise ScriptError("malformed module declaration", lineno)
        if head == "invariants":
            arg = line[len("invariants"):].strip()
            statements.append(StInvariants(parse_module_expr(arg, lineno)))
            continue
        if head == "h":
            m = _RE_H.match(line)
            if not m:
                raise ScriptError("malformed h command", lineno)
            lo = int(m.group(2))
            hi = int(m.group(3)) if m.group(3) is not None else lo
            if hi < lo:
                raise ScriptError("empty cohomology range", lineno)
            statements.append(StH(parse_module_expr(m.group(1), lineno), lo, hi))
            continue
        if head == "resolve":
            m = _RE_RESOLVE.match(line)
            if not m:
                raise ScriptError("malformed resolve command", lineno)
            bound = int(m.group(2)) if m.group(2) is not None else None
            statements.append(StResolve(parse_module_expr(m.group(1), lineno), bound))
            continue
        if head == "check":
            m = _RE_CHECK.match(line)
            if not m:
                raise ScriptError("malformed check command", lineno)
            statements.append(_parse_check_args(m.group(1), m.group(2), lineno))
            continue
        if head == "depthseq":
            m = _RE_DEPTHSEQ.match(line)
            if not m:
                raise ScriptError("malformed depthseq command", lineno)
            ideal = m.group(3)
            statements.append(
                StDepthseq(parse_module_expr(m.group(1), lineno), int(m.group(2)), ideal))
            continue
        if head == "explore":
            m = _RE_EXPLORE.match(line)
            if not m:
                raise ScriptError("malformed explore command", lineno)
            statements.append(StExplore(m.group(1), int(m.group(2)), int(m.group(3))))
            continue
        raise ScriptError(f"unknown statement {head!r}", lineno)
    return SessionScript(statements)


def _parse_check_args(check_id, rest, lineno):
    exprs, ideal, r = [], None, None
    tokens = rest.split()
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t == "ideal":
            if i + 1 >= len(tokens):
                raise ScriptError("check: 'ideal' needs a name", lineno)
            ideal = tokens[i + 1]
            i += 2
        elif t.startswith("r="):
            try:
                r = int(t[2:])
            except ValueError:
                raise ScriptError("check: malformed r=<int>", lineno)
            i += 1
        else:
            exprs.append(parse_module_expr(t, lineno))
            i += 1
    return StCheck(check_id, exprs, ideal, r)


# -- execution ------------------------------------------------------------------------


class Session:
    """Executes a SessionScript, accumulating JSON-ready output records."""

    def __init__(self, field_char=None, bound=None, certificates=None, seed=None):
        self.field_char = field_char
        self.bound = bound
        self.certificates = dict(certificates or {})
        self.seed = seed
        self.rings = {}
        self.ideals = {}
        self.modules = {}
        self.last_ring = None
        self.outputs = []

    # name resolution -----------------------------------------------------------

    def _defined(self, name):
        return name in self.rings or name in self.ideals or name in self.modules

    def _module_of(self, name, line):
        if name in self.modules:
            return self.modules[name]
        if name in self.ideals:
            return self.ideals[name].module()
        if name in self.rings:
            return self.rings[name].one_module()
        if name == "m" and self.last_ring is not None:
            return self.last_ring.irrelevant_ideal().module()
        raise ScriptError(f"undefined name {name!r}", line)

    def _eval(self, expr, line):
        if isinstance(expr, ExprName):
            return self._module_of(expr.name, line)
        if isinstance(expr, ExprDual):
            return dual(self._eval(expr.inner, line))
        if isinstance(expr, ExprTensor):
            out = self._eval(expr.parts[0], line)
            for p in expr.parts[1:]:
                out = tensor(out, self._eval(p, line))
            return out
        raise ScriptError("bad module expression", line)

    def _check_arg(self, expr, line):
        """Ideals and ring names pass through unwrapped so checks that need
        an Ideal or a ring module presentation see them directly."""
        if isinstance(expr, ExprName):
            if expr.name in self.ideals:
                return self.ideals[expr.name]
            if expr.name in self.rings:
                return self.rings[expr.name]
        return self._eval(expr, line)

    def _declare(self, name, line):
        if self._defined(name):
            raise ScriptError(f"name {name!r} is already defined", line)

    # statement execution -------------------------------------------------------

    def run(self, script: SessionScript):
        for idx, st in enumerate(script.statements, start=1):
            try:
                self._exec(st, idx)
            except ScriptError:
                raise
            except KernelError as exc:
                raise ScriptError(str(exc), idx)
        return self.outputs

    def _exec(self, st, line):
        if isinstance(st, StRingPoly):
            self._declare(st.name, line)
            char = self.field_char or st.char
            amb = AmbientRing(st.variables, char=char)
            self.rings[st.name] = QuotientRing(amb)
            self.last_ring = self.rings[st.name]
        elif isinstance(st, StRingQuot):
            self._declare(st.name, line)
            base = self.rings.get(st.base)
            if base is None:
                raise ScriptError(f"undefined ring {st.base!r}", line)
            I = self.ideals.get(st.ideal)
            if I is None:
                raise ScriptError(f"undefined ideal {st.ideal!r}", line)
            domain = self.certificates.get("domain")
            self.rings[st.name] = QuotientRing(base.ambient, I.gens, domain=domain)
            self.last_ring = self.rings[st.name]
        elif isinstance(st, StIdeal):
            self._declare(st.name, line)
            ring = self.rings.get(st.ring)
            if ring is None:
                raise ScriptError(f"undefined ring {st.ring!r}", line)
            self.ideals[st.name] = Ideal(ring, [ring.poly(g) for g in st.gens])
        elif isinstance(st, StCoker):
            self._declare(st.name, line)
            ring = self.rings.get(st.ring)
            if ring is None:
                raise ScriptError(f"undefined ring {st.ring!r}", line)
            entries = [[ring.poly(e) for e in row] for row in st.rows]
            pres = GradedMap.from_entries(ring, entries,
                                          target_twists=st.gen_twists,
                                          source_twists=st.rel_twists)
            self.modules[st.name] = GradedModule(pres)
        elif isinstance(st, StModuleIdeal):
            self._declare(st.name, line)
            ring = self.rings.get(st.ring)
            if ring is None:
                raise ScriptError(f"undefined ring {st.ring!r}", line)
            self.modules[st.name] = Ideal(ring, [ring.poly(g) for g in st.gens]).module()
        elif isinstance(st, StInvariants):
            M = self._eval(st.expr, line)
            self.outputs.append({"op": "invariants", "arg": st.expr.pretty(),
                                 "result": invariant_report(M)})
        elif isinstance(st, StH):
            M = self._eval(st.expr, line)
            vals = [_json_val(h(M, i)) for i in range(st.lo, st.hi + 1)]
            self.outputs.append({"op": "h", "arg": st.expr.pretty(),
                                 "range": [st.lo, st.hi], "values": vals})
        elif isinstance(st, StResolve):
            M = self._eval(st.expr, line)
            over = "S" if M.ring.is_ambient else "R"
            res = resolve(M, over=over, bound=st.bound or self.bound)
            self.outputs.append({
                "op": "resolve", "arg": st.expr.pretty(), "over": over,
                "bound": st.bound, "betti": res.betti().as_json(),
                "pd": _json_val(res.pd() if isinstance(res.pd(), int) else "unknown"),
            })
        elif isinstance(st, StCheck):
            args = [self._check_arg(e, line) for e in st.exprs]
            a = None
            if st.ideal is not None:
                a = self.ideals.get(st.ideal)
                if a is None:
                    raise ScriptError(f"undefined ideal {st.ideal!r}", line)
            if st.check_id == "depth_sequence":
                raise ScriptError("use the depthseq command for depth sequences", line)
            rep = checks.run_check(st.check_id, *args, a=a, r=st.r,
                                   certificates=self.certificates)
            self.outputs.append({"op": "check", "check": st.check_id,
                                 "args": [e.pretty() for e in st.exprs],
                                 "report": rep.as_json()})
        elif isinstance(st, StDepthseq):
            M = self._eval(st.expr, line)
            a = None
            if st.ideal is not None:
                a = self.ideals.get(st.ideal)
                if a is None:
                    raise ScriptError(f"undefined ideal {st.ideal!r}", line)
            seq, rep = checks.depth_sequence(M, a=a, nmax=st.n)
            self.outputs.append({"op": "depthseq", "arg": st.expr.pretty(),
                                 "n": st.n, "sequence": seq.as_json(),
                                 "report": rep.as_json()})
        elif isinstance(st, StExplore):
            from .explore import explore
            seed = self.seed if self.seed is not None else st.seed
            rows = explore(st.check_id, st.trials, seed)
            self.outputs.append({"op": "explore", "check": st.check_id,
                                 "trials": st.trials, "seed": seed, "rows": rows})
        else:
            raise ScriptError("unknown statement", line)


def run_script(text, field_char=None, bound=None, certificates=None, seed=None):
    """Parse and execute a script; returns the list of output records."""
    script = parse(text)
    sess = Session(field_char=field_char, bound=bound,
                   certificates=certificates, seed=seed)
    return sess.run(script)
