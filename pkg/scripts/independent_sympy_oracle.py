"""Image branch types computed with sympy alone: expand psi, row-reduce its coefficients.

Shares no code with the package beyond the sampled quadric, so it is an
independent check of the oracle and of the s=2e discrepancy.

    python scripts/independent_sympy_oracle.py
"""
import sympy as sp

from halphen.corpus import TEMPLATES, e6_origin_series, generate_branch
from halphen.sampling import SampleConfig, sample_quadric

u = sp.symbols("u")


def image_type(coeff_lists, M, columns):
    alpha = [sum(sp.Rational(str(c)) * u**k for k, c in enumerate(cs)) for cs in coeff_lists]
    d = [sp.diff(a, u) for a in alpha]
    A = [sum(sp.Rational(str(M[i][j])) * alpha[j] for j in range(4)) for i in range(4)]
    q = sp.expand(sum(alpha[i] * A[i] for i in range(4)))
    b = sp.expand(sum(d[i] * A[i] for i in range(4)))
    psi = [sp.Poly(sp.expand(b * alpha[i] - q * d[i]), u) for i in range(4)]
    rows = [[p.coeff_monomial(u**k) for k in range(columns)] for p in psi]
    _, piv = sp.Matrix(rows).rref()
    return tuple(p - piv[0] for p in piv[1:])


def main():
    cfg = SampleConfig(seed=0)
    quadrics = [sample_quadric(cfg, k).M for k in range(3)]
    e6 = [list(a.coeffs) for a in e6_origin_series(40)]
    print("E6 branch at O:", {image_type(e6, M, 38) for M in quadrics})
    for index, (case, t) in enumerate(TEMPLATES):
        if case != "s2e":
            continue
        g = generate_branch(case, t, 0, index)
        coeffs = [list(a.coeffs) for a in g.branch.alpha[:3]] + [[1]]
        print(f"{g.branch.label:24}", {image_type(coeffs, M, 30) for M in quadrics})


if __name__ == "__main__":
    main()
