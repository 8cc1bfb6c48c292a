"""
Randomized identity suites and the exponent-convention report.

Each suite draws seeded instances, evaluates both sides of an identity and
records the worst residual.  Exact-backend trials must agree exactly; float
trials are held to a relative tolerance.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field


from .fredholm import cauchy_type_det, d_i_det, d_i_tail_sum, vanishing_residual, vanishing_summands
from .matrix_oracle import build_th, det_lu
from .sampling import make_rng, random_point, random_rational, random_symbol
from .scalars import GaussianRational, is_exact
from .symbol import RationalSymbolBC
from .th_formula import _even_sum, _th_sum
from .zfun import z_properties

__all__ = [
    "SuiteResult",
    "suite_z_properties",
    "suite_cauchy",
    "suite_coefficient_identity",
    "suite_d_i",
    "run_all",
    "format_table",
    "ConventionRow",
    "exponent_report",
    "format_exponent_report",
]

FLOAT_RTOL = 1e-12


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    max_residual: float = 0.0

    @property
    def passed(self) -> bool:
        return self.trials > 0 and not self.failures

    def record(self, values, rtol: float = FLOAT_RTOL, label: str = "") -> None:
        """Compare a list of values that should all agree."""
        ref = values[0]
        for v in values[1:]:
            if is_exact(ref) and is_exact(v):
                ok = ref == v
                res = 0.0 if ok else _rel(ref, v)
            else:
                res = _rel(ref, v)
                ok = res <= rtol
            self.max_residual = max(self.max_residual, res)
            if not ok:
                self.failures.append(f"{label}: {complex(ref)} vs {complex(v)}")


def _rel(x, y) -> float:
    x, y = complex(x), complex(y)
    scale = max(abs(x), abs(y), 1e-300)
    return abs(x - y) / scale


def _rset(rng, size: int, exact: bool, radius: float = 0.9) -> list:
    if exact:
        return [random_rational(rng, radius) for _ in range(size)]
    return [random_point(rng, radius) for _ in range(size)]


# ---------------------------------------------------------------------------
# suites


def suite_z_properties(seed: int = 0, trials: int = 50) -> SuiteResult:
    """Product identities (1)-(6) for Z and Z_O, in both backends."""
    rng = make_rng([seed, 1])
    out = SuiteResult("Z properties (1)-(6)")
    done = 0
    while done < trials:
        sizes = rng.integers(0, 4, size=3)
        exact = bool(done % 2 == 0)
        A, B, C = (_rset(rng, int(s), exact) for s in sizes)
        try:
            props = z_properties(A, B, C)
        except ZeroDivisionError:
            continue
        for label, vals in props.items():
            out.record(vals, label=label)
        done += 1
    out.trials = done
    return out


def suite_cauchy(seed: int = 0, trials: int = 50, max_n: int = 6) -> SuiteResult:
    """Cauchy-type determinant: LU value against the closed product."""
    rng = make_rng([seed, 2])
    out = SuiteResult("Cauchy-type determinant")
    done = 0
    while done < trials:
        n = int(rng.integers(1, max_n + 1))
        exact = bool(done % 2 == 0)
        S = _rset(rng, n, exact)
        T = _rset(rng, n, exact)
        try:
            direct, closed = cauchy_type_det(S, T)
        except ZeroDivisionError:
            continue
        # tiny denominators make float LU too ill-conditioned for a fair test
        if closed == 0 or (not exact and abs(complex(closed)) > 1e12):
            continue
        out.record([direct, closed], rtol=1e-9, label=f"n={n}")
        done += 1
    out.trials = done
    return out


def suite_coefficient_identity(seed: int = 0, trials: int = 50, max_k: int = 3) -> SuiteResult:
    """The alpha linear combination vanishes for every b_i (exactly, k <= max_k)."""
    rng = make_rng([seed, 3])
    out = SuiteResult("coefficient identity")
    done = 0
    while done < trials:
        k = 1 + done % max_k
        exact = done % 4 != 3
        sym = random_symbol(rng, (k, k, k, k), radius=0.9, exact=exact)
        try:
            for i in range(k):
                r = vanishing_residual(sym, i)
                if exact:
                    ok = r == 0
                    res = 0.0 if ok else abs(complex(r))
                else:
                    scale = max(abs(complex(t)) for t in vanishing_summands(sym, i))
                    res = abs(complex(r)) / scale
                    ok = res <= 1e-11
                out.max_residual = max(out.max_residual, res)
                if not ok:
                    out.failures.append(f"k={k} i={i}: residual {complex(r)}")
        except ZeroDivisionError:
            continue
        done += 1
    out.trials = done
    return out


def _brute_tail(T, S, n: int, cutoff: int) -> complex:
    l = len(T)
    total = 0j
    for I in itertools.product(range(n, n + cutoff), repeat=l):
        total += d_i_det(list(I), T, S)
    return total


def suite_d_i(seed: int = 0, trials: int = 50) -> SuiteResult:
    """D_I vanishes for coincident t's; its tail sum vanishes for coincident s's.

    Float trials also check the closed tail sum against direct summation.
    """
    rng = make_rng([seed, 4])
    out = SuiteResult("D_I determinants")
    for trial in range(trials):
        l = int(rng.integers(2, 5))
        I = [int(x) for x in rng.integers(0, 7, size=l)]
        S = _rset(rng, l, True)
        T = _rset(rng, l, True)
        i, j = rng.choice(l, size=2, replace=False)
        T[j] = T[i]
        out.record([d_i_det(I, T, S), GaussianRational(0)], label=f"coincident t, I={I}")

        n = int(rng.integers(1, 5))
        l2 = int(rng.integers(2, 4))
        S = _rset(rng, l2, True, 0.7)
        T = _rset(rng, l2, True, 0.7)
        i, j = rng.choice(l2, size=2, replace=False)
        S[j] = S[i]
        out.record([d_i_tail_sum(T, S, n), GaussianRational(0)], label=f"coincident s, n={n}")

        if trial % 5 == 0:
            Tf = [random_point(rng, 0.5) for _ in range(2)]
            Sf = [random_point(rng, 0.5) for _ in range(2)]
            closed = d_i_tail_sum(Tf, Sf, n)
            brute = _brute_tail(Tf, Sf, n, 60)
            res = abs(closed - brute)
            out.max_residual = max(out.max_residual, res)
            if res > 1e-13:
                out.failures.append(f"tail sum {closed} vs direct {brute}")
    out.trials = trials
    return out


def run_all(seed: int = 0, trials: int = 50) -> list:
    return [
        suite_z_properties(seed, trials),
        suite_cauchy(seed, trials),
        suite_coefficient_identity(seed, trials),
        suite_d_i(seed, trials),
    ]


def format_table(results, seed) -> str:
    lines = [f"seed {seed}", f"{'suite':<28} {'trials':>6}  {'max residual':>12}  status"]
    for r in results:
        lines.append(f"{r.name:<28} {r.trials:>6}  {r.max_residual:>12.3e}  {'PASS' if r.passed else 'FAIL'}")
        for msg in r.failures[:5]:
            lines.append(f"    {msg}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# exponent conventions


@dataclass(frozen=True)
class ConventionRow:
    family: str  # "general" or "even"
    variant: str
    k: int
    n: int
    value: GaussianRational
    oracle: GaussianRational

    @property
    def match(self) -> bool:
        return self.value == self.oracle


GENERAL_VARIANTS = {
    "S^(n-1) T^n": lambda n: (n - 1, n),
    "S^n T^n": lambda n: (n, n),
}

EVEN_VARIANTS = {
    "A^(2n+1)": (lambda n: 2 * n + 1, False),
    "A^(2n-1)": (lambda n: 2 * n - 1, False),
    "(-1)^|S| A^(2n+1)": (lambda n: 2 * n + 1, True),
    "(-1)^|S| A^(2n-1)": (lambda n: 2 * n - 1, True),
}


def exponent_report(seed: int = 0, ns=(1, 2, 3), ks=(1, 2)) -> list:
    """Evaluate each exponent variant against ``det_lu(build_th)`` in exact arithmetic."""
    rng = make_rng([seed, 5])
    rows = []
    for k in ks:
        sym = random_symbol(rng, (k, k, k, k), radius=0.8, exact=True)
        even_a = [random_rational(rng, 0.8) for _ in range(k)]
        even_c = [random_rational(rng, 0.8) for _ in range(k)]
        while len(set(even_a)) < k:
            even_a = [random_rational(rng, 0.8) for _ in range(k)]
        even = RationalSymbolBC(tuple(even_a), tuple(even_a), tuple(even_c), tuple(even_c))
        for n in ns:
            oracle = det_lu(build_th(sym, n))
            for name, powers in GENERAL_VARIANTS.items():
                s_pow, t_pow = powers(n)
                val, _ = _th_sum(sym, n, s_pow, t_pow, False)
                rows.append(ConventionRow("general", name, k, n, val, oracle))
            oracle_even = det_lu(build_th(even, n))
            for name, (power, signed) in EVEN_VARIANTS.items():
                val = _even_sum(even_a, even_c, n, power(n), signed)
                rows.append(ConventionRow("even", name, k, n, val, oracle_even))
    return rows


def format_exponent_report(rows, seed: int) -> str:
    lines = [
        "# Exponent conventions",
        "",
        f"Exact comparison against the LU determinant of T_n + H_n (seed {seed}).",
        "The general subset sum runs over S in A + D and T in B; the even case is A = B, C = D.",
        "",
        "| family | variant | k | n | matches oracle |",
        "|---|---|---|---|---|",
    ]
    for r in rows:
        lines.append(f"| {r.family} | {r.variant} | {r.k} | {r.n} | {'yes' if r.match else 'no'} |")
    lines.append("")
    summary = {}
    for r in rows:
        summary.setdefault((r.family, r.variant), []).append(r.match)
    lines.append("Summary:")
    lines.append("")
    for (fam, var), ms in summary.items():
        verdict = "matches at every (k, n)" if all(ms) else f"fails at {ms.count(False)} of {len(ms)}"
        lines.append(f"- {fam} {var}: {verdict}")
    return "\n".join(lines) + "\n"
