#!/usr/bin/env python3
# Copyright 2026 the repart authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference external solver for the CPLEX-LP files this toolkit emits.

Parses the LP text with its own small reader, solves the MILP with scipy's
HiGHS backend, and writes a `variable value` solution file compatible with
the toolkit's solution reader.

Usage: lp_solve.py MODEL.lp SOLUTION.txt [TIMELIMIT_SECONDS]
"""

import re
import sys

import numpy as np
from scipy import optimize, sparse

TOKEN = re.compile(r"<=|>=|=|[+-]|[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|[A-Za-z_][A-Za-z0-9_]*|:")


def tokenize(text):
    lines = []
    for raw in text.splitlines():
        # '\' starts a comment; it may follow content on the same line
        cut = raw.find("\\")
        if cut >= 0:
            raw = raw[:cut]
        if raw.strip():
            lines.append(raw)
    return TOKEN.findall("\n".join(lines))


SECTIONS = {"minimize", "maximize", "subject", "to", "st", "bounds", "binaries",
            "binary", "generals", "general", "end"}


class Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def at_section(self):
        tok = self.peek()
        return tok is not None and tok.lower() in SECTIONS

    def linear_expr(self):
        """Returns (terms: {name: coeff}, constant)."""
        terms = {}
        constant = 0.0
        sign = 1.0
        pending_coeff = None
        while True:
            tok = self.peek()
            if tok is None or tok in ("<=", ">=", "=") or self.at_section():
                break
            if self.toks[self.pos + 1: self.pos + 2] == [":"]:
                break  # next constraint label
            self.next()
            if tok == "+":
                if pending_coeff is not None:
                    constant += sign * pending_coeff
                    pending_coeff = None
                sign = 1.0
            elif tok == "-":
                if pending_coeff is not None:
                    constant += sign * pending_coeff
                    pending_coeff = None
                sign = -1.0
            elif re.fullmatch(r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?", tok):
                if pending_coeff is not None:
                    constant += sign * pending_coeff
                    sign = 1.0
                pending_coeff = float(tok)
            else:  # variable name
                coeff = 1.0 if pending_coeff is None else pending_coeff
                terms[tok] = terms.get(tok, 0.0) + sign * coeff
                pending_coeff = None
                sign = 1.0
        if pending_coeff is not None:
            constant += sign * pending_coeff
        return terms, constant


def parse_lp(text):
    p = Parser(tokenize(text))
    model = {"objective": {}, "obj_constant": 0.0, "constraints": [],
             "binaries": set(), "generals": set(), "bounds": {}}
    sense_min = True
    while p.peek() is not None:
        tok = p.next().lower()
        if tok in ("minimize", "maximize"):
            sense_min = tok == "minimize"
            if p.peek() and p.toks[p.pos + 1: p.pos + 2] == [":"]:
                p.next()  # objective label
                p.next()  # ':'
            terms, const = p.linear_expr()
            model["objective"] = terms
            model["obj_constant"] = const
        elif tok in ("subject", "st"):
            if tok == "subject":
                assert p.next().lower() == "to"
            while p.peek() is not None and not p.at_section():
                name = p.next()
                assert p.next() == ":", f"expected ':' after constraint name {name}"
                terms, const = p.linear_expr()
                op = p.next()
                sgn = 1.0
                nxt = p.next()
                if nxt in ("+", "-"):
                    sgn = 1.0 if nxt == "+" else -1.0
                    nxt = p.next()
                rhs = sgn * float(nxt)
                model["constraints"].append((name, terms, op, rhs - const))
        elif tok == "bounds":
            # forms emitted here: `LO <= var` or `LO <= var <= UP`
            def signed_number(parser):
                tok = parser.next()
                if tok in ("+", "-"):
                    return float(parser.next()) * (-1.0 if tok == "-" else 1.0)
                return float(tok)

            while p.peek() is not None and not p.at_section():
                lo = signed_number(p)
                assert p.next() == "<="
                name = p.next()
                up = None
                if p.peek() == "<=":
                    p.next()
                    up = signed_number(p)
                model["bounds"][name] = (lo, up)
        elif tok in ("binaries", "binary"):
            while p.peek() is not None and not p.at_section():
                model["binaries"].add(p.next())
        elif tok in ("generals", "general"):
            while p.peek() is not None and not p.at_section():
                model["generals"].add(p.next())
        elif tok == "end":
            break
    if not sense_min:
        model["objective"] = {k: -v for k, v in model["objective"].items()}
    return model


def solve(model, time_limit=None):
    names = []
    seen = set()
    def touch(name):
        if name not in seen:
            seen.add(name)
            names.append(name)
    for name in model["objective"]:
        touch(name)
    for _, terms, _, _ in model["constraints"]:
        for name in terms:
            touch(name)
    for name in model["binaries"] | model["generals"] | set(model["bounds"]):
        touch(name)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)

    c = np.zeros(n)
    for name, coeff in model["objective"].items():
        c[index[name]] = coeff

    rows, lb, ub = [], [], []
    data, ri, ci = [], [], []
    for k, (_, terms, op, rhs) in enumerate(model["constraints"]):
        for name, coeff in terms.items():
            data.append(coeff)
            ri.append(k)
            ci.append(index[name])
        if op == "<=":
            lb.append(-np.inf)
            ub.append(rhs)
        elif op == ">=":
            lb.append(rhs)
            ub.append(np.inf)
        else:
            lb.append(rhs)
            ub.append(rhs)
    A = sparse.csr_matrix((data, (ri, ci)), shape=(len(model["constraints"]), n))

    integrality = np.zeros(n)
    var_lb = np.zeros(n)
    var_ub = np.full(n, np.inf)
    for name in model["binaries"]:
        i = index[name]
        integrality[i] = 1
        var_ub[i] = 1.0
    for name in model["generals"]:
        integrality[index[name]] = 1
    for name, (lo, up) in model["bounds"].items():
        i = index[name]
        if lo is not None:
            var_lb[i] = lo
        if up is not None:
            var_ub[i] = up

    options = {}
    if time_limit:
        options["time_limit"] = float(time_limit)
    res = optimize.milp(c, constraints=optimize.LinearConstraint(A, lb, ub),
                        integrality=integrality,
                        bounds=optimize.Bounds(var_lb, var_ub), options=options)
    return names, res


def main():
    if len(sys.argv) < 3:
        sys.exit(__doc__)
    with open(sys.argv[1]) as f:
        model = parse_lp(f.read())
    time_limit = sys.argv[3] if len(sys.argv) > 3 else None
    names, res = solve(model, time_limit)
    with open(sys.argv[2], "w") as out:
        if res.status == 0:
            out.write("# status optimal\n")
        elif res.x is not None:
            out.write("# status feasible\n")
        elif res.status == 2:
            out.write("# status infeasible\n")
        else:
            out.write("# status unknown\n")
        if res.x is not None:
            for name, val in zip(names, res.x):
                if abs(val) > 1e-9:
                    out.write(f"{name} {val:.9g}\n")
    if res.x is None and res.status != 2:
        sys.exit(1)


if __name__ == "__main__":
    main()
