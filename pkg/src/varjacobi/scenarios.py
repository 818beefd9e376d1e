"""Scenario files: named (A, B, n, parameter-rule) bundles for validation runs.

Parameter rules are restricted arithmetic expressions in the degree n
(real literals, n, + - * /, parentheses), parsed by a tiny recursive
descent parser rather than eval, so scenario files stay declarative.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


class RuleError(ValueError):
    pass


def _tokenize(text: str):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/()":
            out.append(ch)
            i += 1
            continue
        if ch == "n":
            out.append("n")
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] in ".eE"
                                     or (text[j] in "+-" and text[j - 1] in "eE")):
                j += 1
            out.append(float(text[i:j]))
            i = j
            continue
        raise RuleError(f"unexpected character {ch!r} in rule {text!r}")
    return out


class Rule:
    """Compiled arithmetic rule in the variable n."""

    def __init__(self, text: str):
        self.text = text
        self._tokens = _tokenize(text)

    def __call__(self, n: int) -> float:
        toks = list(self._tokens)
        pos = [0]

        def peek():
            return toks[pos[0]] if pos[0] < len(toks) else None

        def take():
            pos[0] += 1
            return toks[pos[0] - 1]

        def atom():
            t = take()
            if t == "(":
                v = expr()
                if take() != ")":
                    raise RuleError(f"unbalanced parentheses in {self.text!r}")
                return v
            if t == "n":
                return float(n)
            if t == "-":
                return -atom()
            if t == "+":
                return atom()
            if isinstance(t, float):
                return t
            raise RuleError(f"unexpected token {t!r} in {self.text!r}")

        def term():
            v = atom()
            while peek() in ("*", "/"):
                op = take()
                rhs = atom()
                v = v * rhs if op == "*" else v / rhs
            return v

        def expr():
            v = term()
            while peek() in ("+", "-"):
                op = take()
                rhs = term()
                v = v + rhs if op == "+" else v - rhs
            return v

        val = expr()
        if pos[0] != len(toks):
            raise RuleError(f"trailing tokens in {self.text!r}")
        if not math.isfinite(val):
            raise RuleError(f"rule {self.text!r} is not finite at n={n}")
        return val


@dataclass
class Scenario:
    name: str
    A: float
    B: float
    degrees: list
    alpha_rule: Rule
    beta_rule: Rule
    r: float | None = None
    outputs: tuple = ("zeros", "contours", "report")

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        n = d["n"]
        degrees = [int(n)] if isinstance(n, (int, float)) else [int(k) for k in n]
        return cls(
            name=d["name"],
            A=float(d["A"]),
            B=float(d["B"]),
            degrees=degrees,
            alpha_rule=Rule(d["alpha_rule"]),
            beta_rule=Rule(d["beta_rule"]),
            r=d.get("r"),
            outputs=tuple(d.get("outputs", ("zeros", "contours", "report"))),
        )

    @classmethod
    def load(cls, path) -> "Scenario":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


# the three zero-cloud reproductions at degree 100 (one C2 and two C3 runs)
PAPER_SET = [
    Scenario(name="c2-n100", A=-1.1, B=0.5, degrees=[100],
             alpha_rule=Rule("-1.1*n - 0.00001"), beta_rule=Rule("0.5*n - 0.00001")),
    Scenario(name="c3-n100-shallow", A=-0.8, B=0.5, degrees=[100],
             alpha_rule=Rule("-0.8*n - 0.00001"), beta_rule=Rule("0.5*n - 0.00001")),
    Scenario(name="c3-n100-deep", A=-0.8, B=0.5, degrees=[100],
             alpha_rule=Rule("-0.8*n - 1e-15"), beta_rule=Rule("0.5*n - 0.00001")),
]
