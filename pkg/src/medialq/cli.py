"""Command line entry point: ``medialq <group> <command>``."""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import coloring, diagram, families, harness, quandle, tangle


def load_quandle(spec):
    """A quandle from a file (text or JSON) or a shorthand such as
    ``dihedral:5`` or ``alexander:4:1,1``."""
    if spec.startswith("dihedral:"):
        return quandle.dihedral_quandle(int(spec.split(":")[1]))
    if spec.startswith("alexander:"):
        _, n, h = spec.split(":", 2)
        return quandle.alexander_quandle(int(n), h)
    text = Path(spec).read_text()
    if text.lstrip().startswith("{"):
        return quandle.quandle_from_json(json.loads(text))
    return quandle.parse_quandle(text)


def load_diagram(path):
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return diagram.diagram_from_json(text)
    return diagram.parse_diagram(text)


def emit(obj):
    click.echo(json.dumps(obj, indent=2, default=str))


@click.group()
def main():
    """Quandle colorings, open strands and claim verification."""


# --- quandle ----------------------------------------------------------------------


@main.group("quandle")
def quandle_group():
    """Build and inspect finite quandles."""


@quandle_group.command("check")
@click.argument("file")
def quandle_check(file):
    try:
        Q = load_quandle(file)
    except quandle.AxiomViolation as e:
        emit({"valid": False, "axiom": e.axiom, "witness": e.witness})
        sys.exit(1)
    except quandle.ShapeError as e:
        emit({"valid": False, "error": str(e)})
        sys.exit(1)
    m, t = quandle.medial_report(Q), quandle.tilde_report(Q)
    emit({
        "valid": True, "n": Q.n, "medial": m.is_medial, "medial_witness": m.medial_witness,
        "identity_failures": m.identity_failures, "tilde_equivalence": t.is_equivalence,
        "tilde_classes": t.classes, "tilde_witness": t.failure_witness,
    })


def _print_quandle(Q, as_json):
    click.echo(json.dumps(Q.to_json()) if as_json else Q.to_text(), nl=as_json)


@quandle_group.command("alexander")
@click.option("--n", "n", type=int, required=True, help="modulus")
@click.option("--h", "h", required=True, help='low-to-high coefficients, e.g. "1,1"')
@click.option("--json", "as_json", is_flag=True)
def quandle_alexander(n, h, as_json):
    _print_quandle(quandle.alexander_quandle(n, h), as_json)


@quandle_group.command("dihedral")
@click.option("--n", "n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def quandle_dihedral(n, as_json):
    _print_quandle(quandle.dihedral_quandle(n), as_json)


@quandle_group.command("enumerate")
@click.option("--n", "n", type=int, required=True)
@click.option("--filter", "filt", type=click.Choice(quandle.FILTERS), default="all")
@click.option("--up-to-iso/--labelled", default=True)
def quandle_enumerate(n, filt, up_to_iso):
    qs = list(quandle.enumerate_quandles(n, filt, up_to_iso))
    emit({"n": n, "filter": filt, "up_to_iso": up_to_iso, "count": len(qs),
          "quandles": [q.op for q in qs]})


# --- link ---------------------------------------------------------------------------


@main.group("link")
def link_group():
    """Generate diagrams, read relations and apply Reidemeister moves."""


LINK_FAMILIES = ("unknot", "trefoil", "hopf", "l2h", "allen-swenberg", "kom", "two-lom", "generalized")


@link_group.command("gen")
@click.argument("family", type=click.Choice(LINK_FAMILIES))
@click.option("--n", "n", type=int, default=1, help="index of A_n")
@click.option("--tangle", "tangle_files", multiple=True, help="strand file(s) to use")
@click.option("--json", "as_json", is_flag=True)
def link_gen(family, n, tangle_files, as_json):
    strands = [tangle.parse_strand(Path(f).read_text()) for f in tangle_files]
    if family in families.GENERATORS:
        L = families.GENERATORS[family]()
    elif family == "allen-swenberg":
        L = families.gen_allen_swenberg(n, strands[0] if strands else None)
    elif family == "kom":
        L = families.gen_kom_knot(strands[0] if strands else tangle.example_strand())
    elif family == "two-lom":
        s = strands or [tangle.tangle_t(), tangle.tangle_t()]
        L = families.gen_two_component_lom(s[0], s[1])
    else:
        L = families.gen_generalized_as(strands or [tangle.tangle_t()] * 2)
    click.echo(json.dumps(diagram.diagram_to_json(L), indent=2) if as_json else diagram.serialize(L), nl=as_json)


@link_group.command("relations")
@click.argument("file")
def link_relations(file):
    L = load_diagram(file)
    for r in diagram.crossing_relations(L):
        click.echo(str(r))


def _site(move, direction, text):
    parts = [p for p in text.split(",") if p]
    if direction == "remove" and move in ("r1", "r2"):
        return diagram.RemoveSite(tuple(parts))
    if move == "r1":
        return diagram.R1Site(parts[0], int(parts[1]) if len(parts) > 1 else 1)
    if move == "r2":
        return diagram.R2Site(parts[0], parts[1], int(parts[2]) if len(parts) > 2 else 1)
    return diagram.R3Site(*parts)


@link_group.command("rmove")
@click.argument("file")
@click.option("--move", type=click.Choice(["r1", "r2", "r3"]), required=True)
@click.option("--site", required=True,
              help="r1 add: ARC[,SIGN]; r2 add: OVER,UNDER[,SIGN]; remove: crossing ids; r3: C1,C2,C3")
@click.option("--direction", type=click.Choice(["add", "remove"]), default="add")
def link_rmove(file, move, site, direction):
    L = load_diagram(file)
    try:
        out = diagram.apply_reidemeister(L, move, _site(move, direction, site), direction)
    except diagram.IllegalSite as e:
        raise click.ClickException(str(e))
    click.echo(diagram.serialize(out), nl=False)


# --- color ------------------------------------------------------------------------


@main.group("color")
def color_group():
    """Count colorings and compute the enhanced polynomial."""


link_opt = click.option("--link", "link_file", required=True)
quandle_opt = click.option("--quandle", "quandle_spec", required=True,
                           help="file, dihedral:N or alexander:N:c0,c1,...")


@color_group.command("count")
@link_opt
@quandle_opt
def color_count(link_file, quandle_spec):
    L, Q = load_diagram(link_file), load_quandle(quandle_spec)
    emit({"count": coloring.count_colorings(L, Q)})


@color_group.command("phi")
@link_opt
@quandle_opt
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
def color_phi(link_file, quandle_spec, fmt):
    L, Q = load_diagram(link_file), load_quandle(quandle_spec)
    phi = coloring.enhanced_polynomial(L, Q)
    if fmt == "json":
        emit({"count": phi.total(), "phi": phi.to_json()})
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["image_size", "count"])
        w.writerows(sorted(phi.coeffs.items()))
        click.echo(buf.getvalue(), nl=False)


@color_group.command("list")
@link_opt
@quandle_opt
@click.option("--limit", type=int, default=1000)
def color_list(link_file, quandle_spec, limit):
    L, Q = load_diagram(link_file), load_quandle(quandle_spec)
    cs = coloring.enumerate_colorings(L, Q)
    if len(cs) > limit:
        raise click.ClickException(f"{len(cs)} colorings exceed --limit {limit}")
    phi = coloring.phi_from_colorings(cs)
    emit({"count": len(cs), "phi": phi.to_json(), "witnesses": cs})


@color_group.command("oracle")
@link_opt
@quandle_opt
def color_oracle(link_file, quandle_spec):
    L, Q = load_diagram(link_file), load_quandle(quandle_spec)
    try:
        cs = coloring.brute_force_colorings(L, Q)
    except quandle.SizeLimitExceeded as e:
        raise click.ClickException(str(e))
    emit({"count": len(cs), "phi": coloring.phi_from_colorings(cs).to_json()})


# --- tangle -------------------------------------------------------------------------


@main.group("tangle")
def tangle_group():
    """Build and check open strands."""


def _load_strand(file):
    return tangle.parse_strand(Path(file).read_text())


@tangle_group.command("random")
@click.option("--moves", type=int, required=True)
@click.option("--seed", type=int, default=0)
def tangle_random(moves, seed):
    click.echo(tangle.serialize_strand(tangle.random_lom(moves, seed)), nl=False)


@tangle_group.command("verify")
@click.argument("file")
def tangle_verify(file):
    r = tangle.verify_structure(_load_strand(file))
    emit({"pass": r.ok, "failures": r.failures})
    sys.exit(0 if r.ok else 1)


@tangle_group.command("close")
@click.argument("file")
def tangle_close(file):
    click.echo(diagram.serialize(tangle.glue_closure(_load_strand(file))), nl=False)


@tangle_group.command("thm51")
@click.argument("file")
@click.option("--quandle", "quandle_spec")
@click.option("--all-medial-upto", type=int)
@click.option("--exploratory", is_flag=True, help="allow non-medial quandles")
def tangle_thm51(file, quandle_spec, all_medial_upto, exploratory):
    S = _load_strand(file)
    if quandle_spec:
        qs = [load_quandle(quandle_spec)]
    elif all_medial_upto:
        qs = [q for n in range(1, all_medial_upto + 1) for q in quandle.enumerate_quandles(n, "medial")]
    else:
        raise click.UsageError("give --quandle or --all-medial-upto")
    results = []
    for Q in qs:
        try:
            r = tangle.check_theorem_5_1(S, Q, exploratory)
        except tangle.NotMedial as e:
            raise click.ClickException(str(e))
        results.append({"quandle": Q.name, "pass": r.ok, "colorings": r.colorings, "violations": r.violations})
    ok = all(r["pass"] for r in results)
    emit({"pass": ok, "results": results})
    sys.exit(0 if ok else 1)


# --- verify -------------------------------------------------------------------------


def _report(verdicts):
    click.echo(harness.verdicts_json(verdicts))
    for v in verdicts:
        click.echo(v.summary(), err=True)
    sys.exit(0 if all(v.passed for v in verdicts) else 1)


@main.group("verify")
def verify_group():
    """Reproduce the claims; exit code 0 iff every requested claim passes."""


@verify_group.command("all")
def verify_all():
    _report(harness.verify_all())


@verify_group.command("prop3.1")
@click.option("--max-order", type=int, default=4)
@click.option("--n-max", type=int, default=2)
def verify_prop31(max_order, n_max):
    _report([harness.verify_prop_3_1(max_order, n_max)])


@verify_group.command("thm5.1")
@click.option("--strands", type=int, default=20)
@click.option("--moves", type=int, default=6)
@click.option("--seed", type=int, default=1)
def verify_thm51(strands, moves, seed):
    _report([harness.verify_theorem_5_1(strands, moves, seed)])


@verify_group.command("erratum")
def verify_erratum():
    _report([harness.erratum_report()])


for _claim in ("lemma1", "prop4.4", "prop4.5", "prop7.1", "prop7.2", "prop7.3"):
    def _make(claim):
        @verify_group.command(claim)
        def _cmd():
            _report([harness.CLAIMS[claim]()])
    _make(_claim)


if __name__ == "__main__":
    main()
