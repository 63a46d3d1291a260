"""Command-line front end: ``olg <command> W [options]``.

Exit codes: 0 success, 1 input or validation error, 2 a mathematical check failed.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import __version__
from .core import Polynomial, parse_polynomial
from .errors import OLGError
from .invertible import (ExponentMatrix, character_chi, decompose_atomic, fixed_locus, parse_group_spec,
                         symmetry_group, transpose_mirror, validate_invertible, weights)
from .milnor import build_jacobian

FORMATS = click.Choice(["json", "pretty", "csv"])


class CheckFailed(Exception):
    """Raised after the report is written when a math check did not pass."""


# ---------------------------------------------------------------- input handling

def load_polynomial(source: str) -> Polynomial:
    """A polynomial string, or a JSON file / literal of the form {"E": [[...]]}."""
    text = source
    p = Path(source)
    if source.endswith(".json") or (len(source) < 4096 and p.is_file()):
        try:
            text = p.read_text()
        except OSError as exc:
            raise click.BadParameter(f"cannot read {source}: {exc}")
    text = text.strip()
    if text.startswith("{"):
        obj = json.loads(text)
        if "E" not in obj:
            raise click.BadParameter("exponent-matrix JSON needs an 'E' key")
        return ExponentMatrix(tuple(tuple(int(v) for v in row) for row in obj["E"])).polynomial()
    return parse_polynomial(text)


def _header(W: Polynomial, G=None) -> dict:
    out = {"version": __version__, "W": W.pretty()}
    if G is not None:
        out["group_generators"] = [str(g) for g in G.generators]
        out["group_order"] = G.order
    return out


def _frac(x) -> str:
    return str(x)


def _emit(report: dict, fmt: str, out: str | None, rows: list | None = None):
    """Write the report; csv uses ``rows`` (a header row first)."""
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in rows or _flat_rows(report):
            w.writerow(r)
        text = buf.getvalue()
    else:
        text = _pretty(report)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _flat_rows(report: dict) -> list:
    rows = [["key", "value"]]
    for k in sorted(report):
        v = report[k]
        rows.append([k, v if isinstance(v, (str, int, bool)) else json.dumps(v, sort_keys=True)])
    return rows


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                inner = _pretty(v, indent + 1).rstrip("\n").split("\n")
                lines.append(f"{pad}- {inner[0].strip()}")
                lines.extend(inner[1:])
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines) + "\n"


def _run(fn):
    """Map library errors onto exit codes."""
    try:
        fn()
    except OLGError as exc:
        click.echo(f"{type(exc).__name__}: {exc}", err=True)
        sys.exit(1)
    except (click.BadParameter, json.JSONDecodeError) as exc:
        click.echo(f"InvalidInput: {exc}", err=True)
        sys.exit(1)
    except CheckFailed as exc:
        click.echo(f"CheckFailed: {exc}", err=True)
        sys.exit(2)


def _common(f):
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the report here.")(f)
    f = click.option("--format", "fmt", type=FORMATS, default="pretty", show_default=True)(f)
    return f


def _group_opt(f):
    return click.option("--group", "group", default="full", show_default=True,
                        help="full, SL, or gens:1/3,2/3;0,1/2")(f)


def _setup(source: str, group: str | None = None):
    W = load_polynomial(source)
    E = validate_invertible(W)
    G = parse_group_spec(group, E) if group is not None else None
    return W, E, G


# ---------------------------------------------------------------- commands

@click.group()
@click.version_option(__version__, prog_name="olg")
def main():
    """Orbifold Landau-Ginzburg B-model algebras with exact arithmetic."""


@main.command()
@click.argument("source")
@_common
def classify(source, fmt, out):
    """Exponent matrix, atoms, weights, Milnor number and mirror of W."""
    def go():
        W, E, _ = _setup(source)
        q = weights(E)
        J = build_jacobian(W, q)
        dec = decompose_atomic(E)
        _, WT = transpose_mirror(E)
        rep = _header(W)
        rep.update({"exponent_matrix": E.tolist(), "atoms": [str(a) for a in dec],
                    "weights": [_frac(x) for x in q], "mu": J.mu,
                    "socle_degree": _frac(J.socle_degree), "mirror": WT.pretty()})
        _emit(rep, fmt, out)
    _run(go)


@main.command()
@click.argument("source")
@_common
def mirror(source, fmt, out):
    """Transpose polynomial W^T and its group order."""
    def go():
        W, E, _ = _setup(source)
        ET, WT = transpose_mirror(E)
        rep = _header(W)
        rep.update({"mirror": WT.pretty(), "mirror_exponent_matrix": ET.tolist(),
                    "mirror_atoms": [str(a) for a in decompose_atomic(validate_invertible(WT))],
                    "order_G_W": symmetry_group(E).order, "order_G_WT": symmetry_group(ET).order})
        _emit(rep, fmt, out)
    _run(go)


@main.command()
@click.argument("source")
@_common
def symmetry(source, fmt, out):
    """Generators, order and character table of G_W."""
    def go():
        W, E, _ = _setup(source)
        G = symmetry_group(E)
        rep = _header(W, G)
        rep.update({"generator_orders": list(G.orders), "sl_order": G.sl_subgroup().order,
                    "chi": [{"g": str(g), "chi": character_chi(g).pretty()} for g in G]})
        rows = [["g", "chi"]] + [[str(g), character_chi(g).pretty()] for g in G]
        _emit(rep, fmt, out, rows)
    _run(go)


@main.command()
@click.argument("source")
@_group_opt
@_common
def sectors(source, group, fmt, out):
    """Sector inventory: fixed locus, parity and basis of each H_g."""
    def go():
        from .orbifold import build_orbifold
        W, E, G = _setup(source, group)
        O = build_orbifold(W, G)
        rep = _header(W, G)
        inv, rows = [], [["g", "fixed", "parity", "dim", "W_g", "basis"]]
        for g in O.elements:
            s = O.sectors[g]
            fl = fixed_locus(W, g, O.decomposition)
            basis = [Polynomial.monomial(m).pretty() for m in s.ring.basis]
            inv.append({"g": str(g), "fixed": list(fl.fixed), "parity": s.parity, "dim": s.dim,
                        "W_g": fl.W_g.pretty(), "basis": basis})
            rows.append([str(g), " ".join(map(str, fl.fixed)), s.parity, s.dim, fl.W_g.pretty(), " ".join(basis)])
        rep["dimension"] = O.dimension()
        rep["sectors"] = inv
        _emit(rep, fmt, out, rows)
    _run(go)


@main.command()
@click.argument("source")
@_group_opt
@click.option("--invariant", is_flag=True, help="Append the invariant-subalgebra table.")
@click.option("--oracle", is_flag=True, help="Append the four-way cross-check for 1_g u 1_g^-1.")
@_common
def product(source, group, invariant, oracle, fmt, out):
    """Structure constants of the cup product on sector bases."""
    def go():
        from .orbifold import build_orbifold
        W, E, G = _setup(source, group)
        O = build_orbifold(W, G)
        rep = _header(W, G)
        rep["sectors"] = [{"g": str(g), "parity": O.sectors[g].parity, "dim": O.sectors[g].dim} for g in O.elements]
        table, rows = [], [["a", "b", "product"]]
        for g, i in O.basis():
            for h, j in O.basis():
                c = O.structure_constant(g, i, h, j)
                if c.cls.is_zero():
                    continue
                a = O.basis_class(g, i).pretty()
                b = O.basis_class(h, j).pretty()
                table.append({"a": a, "b": b, "product": c.pretty()})
                rows.append([a, b, c.pretty()])
        rep["table"] = table
        if invariant:
            basis, tab = O.invariant_subalgebra()
            rep["invariant_basis"] = [b.pretty() for b in basis]
            rep["invariant_table"] = [{"i": i, "j": j, "coords": [c.pretty() for c in v]}
                                      for (i, j), v in sorted(tab.items()) if any(not c.is_zero() for c in v)]
        bad = []
        if oracle:
            checks = _oracle_checks(W, O.elements)
            rep["oracle"] = [c.to_json() for c in checks]
            bad = [str(c.g) for c in checks if not c.agree]
        _emit(rep, fmt, out, rows)
        if bad:
            raise CheckFailed(f"oracle disagreement for g in {bad}")
    _run(go)


def _oracle_checks(W, elements, retract=True):
    from .koszul import cross_check
    J = build_jacobian(W, weights(validate_invertible(W)))
    return [cross_check(W, g, J, retract=retract) for g in elements if not g.is_identity()]


@main.command()
@click.argument("source")
@_group_opt
@_common
def frobenius(source, group, fmt, out):
    """Run the G-Frobenius axiom suite; exit 2 with a witness on failure."""
    def go():
        from .orbifold import build_orbifold
        W, E, G = _setup(source, group)
        O = build_orbifold(W, G)
        res = O.check_g_frobenius()
        rep = _header(W, G)
        rep.update(res.to_json())
        _emit(rep, fmt, out, list(csv.reader(io.StringIO(res.to_csv()))))
        if not res.passed:
            first = next(k for k, v in res.results.items() if v is not None)
            raise CheckFailed(f"axiom {first} failed: {json.dumps(res.results[first], sort_keys=True)}")
    _run(go)


@main.command("oracle")
@click.argument("source")
@_group_opt
@click.option("--no-retract", is_flag=True, help="Skip the homotopy-retract route.")
@_common
def oracle_cmd(source, group, no_retract, fmt, out):
    """Cross-check matrix: graph sum, quantum Hessian, Hess^g and retract per g."""
    def go():
        W, E, G = _setup(source, group)
        checks = _oracle_checks(W, G.elements, retract=not no_retract)
        rep = _header(W, G)
        rep["checks"] = [c.to_json() for c in checks]
        rep["agree"] = all(c.agree for c in checks)
        rows = [["g", "graph_sum", "det_quantum_hess", "signed_hess", "retract", "agree"]]
        for c in checks:
            j = c.to_json()
            rows.append([j["g"], j["graph_sum"], j["det_quantum_hess"], j["signed_hess"], j["retract"], j["agree"]])
        _emit(rep, fmt, out, rows)
        if not rep["agree"]:
            raise CheckFailed("oracle routes disagree")
    _run(go)


BUILTIN_ALGEBRAS = {
    "x2-z2": dict(n=2, m=2, k=1),
    "x3-z2": dict(n=3, m=2, k=1),
    "x2-z3": dict(n=2, m=3, k=1),
    "x3-z3": dict(n=3, m=3, k=1),
    "x4-w3-z3": dict(n=4, m=3, k=1, W_power=3),
}


@main.command()
@click.argument("fixture")
@click.option("--samples", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--psi", is_flag=True, help="Also compare Psi cohomology dimensions in degrees 0-2.")
@_common
def bracelab(fixture, samples, seed, psi, fmt, out):
    """Brace and differential identities on a finite-dimensional algebra.

    FIXTURE is a JSON file (see FiniteAlgebra.to_json) or one of the builtin
    names x2-z2, x3-z2, x2-z3, x3-z3, x4-w3-z3.
    """
    def go():
        from .bracelab import FiniteAlgebra, identity_suite, psi_comparison, truncated_polynomial_algebra
        if fixture in BUILTIN_ALGEBRAS:
            A = truncated_polynomial_algebra(**BUILTIN_ALGEBRAS[fixture])
        else:
            try:
                A = FiniteAlgebra.from_json(Path(fixture).read_text())
            except OSError as exc:
                raise click.BadParameter(f"cannot read {fixture}: {exc}")
        suite = identity_suite(A, samples=samples, seed=seed)
        rep = {"version": __version__}
        rep.update(suite.to_json())
        ok = suite.passed
        if psi:
            cmp = psi_comparison(A)
            rep["psi_comparison"] = cmp
            ok = ok and cmp["agree"]
        rows = [["identity", "passed", "failed"]] + [[r["name"], r["passed"], r["failed"]] for r in rep["identities"]]
        _emit(rep, fmt, out, rows)
        if not ok:
            raise CheckFailed("an identity failed")
    _run(go)


if __name__ == "__main__":
    main()
