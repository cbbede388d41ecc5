"""Command-line interface: JSON on stdout, logs on stderr.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on bad input.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .algebra.cleft import analyze_cleft, build_crossed_product, canonical_map_report, is_trivial_extension
from .algebra.hopf import FinHopfAlgebra, grouplike_group, verify_axioms
from .algebra.morphism import hopf_kernel, identity, kernel_pair
from .algebra.subquot import HopfSubalgebra, abelianization, center, huq_commutator, quotient_by_normal
from .config import Settings, load_settings
from .core.errors import HopfError, InputError, MalformedStructure
from .galois.exact_seq import check_exactness, five_term
from .galois.extensions import (
    extension_report,
    h2_direct,
    h2_group,
    pi1,
    pi1_from_elements,
    pi1_from_groupoid,
    require_in_e,
)
from .groups.homology import abelian_invariants, second_homology
from .groups.zoo import EXTENSION_NAMES, GROUP_NAMES, named_extension, named_group
from .selftest import CHECKS, run_selftest
from .storage.json_storage import WorkspaceStorage, load_document
from .storage.resolver import Workspace

app = typer.Typer(help="Exact computations with finite-dimensional cocommutative Hopf algebras")
console = Console()

logger = logging.getLogger(__name__)


@dataclass
class CliState:
    settings: Settings
    workspace_ref: Optional[str]
    field: Optional[str]
    backend: str
    _workspace: Optional[Workspace] = None

    @property
    def workspace(self) -> Workspace:
        if self._workspace is None:
            if self.workspace_ref is None:
                self._workspace = Workspace(
                    field=self.field or self.settings.default_field,
                    max_permutation_order=self.settings.max_permutation_order,
                )
            else:
                path = Path(self.workspace_ref)
                if path.exists():
                    document = load_document(path)
                else:
                    document = WorkspaceStorage(self.settings.workspace_dir).load(self.workspace_ref)
                self._workspace = Workspace(
                    document, field=self.field, max_permutation_order=self.settings.max_permutation_order
                )
        return self._workspace


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _emit(state: CliState, payload: object) -> None:
    typer.echo(json.dumps(payload, sort_keys=True, indent=state.settings.json_indent or None))


def _run(ctx: typer.Context, compute: Callable[[CliState], Dict], ok: Callable[[Dict], bool] = lambda _: True) -> None:
    """Emit the payload of ``compute`` or the error object, then exit with the mapped code."""
    state: CliState = ctx.obj
    try:
        payload = compute(state)
    except HopfError as exc:
        logger.debug("command failed", exc_info=True)
        _emit(state, exc.to_dict())
        raise typer.Exit(2 if isinstance(exc, InputError) else 1)
    _emit(state, payload)
    if not ok(payload):
        raise typer.Exit(1)


def _subalgebra_payload(sub: HopfSubalgebra) -> Dict:
    payload: Dict = {"dim": sub.dim, "grouplike_basis": sub.grouplike_labels()}
    if payload["grouplike_basis"] is None:
        payload["basis"] = sub.summary().basis
    return payload


def _algebra_payload(A: FinHopfAlgebra) -> Dict:
    payload: Dict = {"name": A.name, "dim": A.dim, "labels": list(A.labels)}
    if A.has_grouplike_basis:
        payload["grouplike_group"] = abelian_invariants(grouplike_group(A)) if A.is_commutative else None
    return payload


@app.callback()
def main(
    ctx: typer.Context,
    workspace: Optional[str] = typer.Option(None, "--workspace", "-w", help="Workspace file, or a name stored in the workspace directory"),
    field: Optional[str] = typer.Option(None, help='Ground field: "Q", "F2", "Fp:5"'),
    max_group_order: Optional[int] = typer.Option(None, help="Largest group the bar-resolution oracle accepts"),
    json_indent: Optional[int] = typer.Option(None, help="Indentation of the JSON output (0 for one line)"),
    backend: str = typer.Option("group", help="H2 and five-term backend: group or direct"),
    log_level: Optional[str] = typer.Option(None, help="Log level on stderr"),
    env_file: Optional[Path] = typer.Option(None, help="Settings file read before the environment"),
):
    settings = load_settings(
        env_file, max_group_order=max_group_order, json_indent=json_indent, log_level=log_level
    )
    _configure_logging(settings.log_level)
    ctx.obj = CliState(settings=settings, workspace_ref=workspace, field=field, backend=backend)


@app.command()
def check(ctx: typer.Context, algebra: str = typer.Argument(..., help="Algebra name")):
    """Verify every Hopf axiom."""
    _run(ctx, lambda s: verify_axioms(s.workspace.algebra(algebra, verify=False)).model_dump(), lambda p: p["passed"])


@app.command()
def kernel(ctx: typer.Context, morphism: str):
    """Hopf kernel of a morphism."""

    def compute(s: CliState) -> Dict:
        f = s.workspace.morphism(morphism)
        return {"morphism": f.name, **_subalgebra_payload(hopf_kernel(f))}

    _run(ctx, compute)


@app.command()
def eqpair(ctx: typer.Context, morphism: str):
    """Kernel pair Eq(f) with its projections and diagonal."""

    def compute(s: CliState) -> Dict:
        f = s.workspace.morphism(morphism)
        pair = kernel_pair(f)
        ident = identity(f.dom).columns
        return {
            "morphism": f.name,
            "dim": pair.dim,
            "grouplike_basis": pair.subalgebra.grouplike_labels(),
            "projections_split_diagonal": all(
                pi.compose(pair.refl).columns == ident for pi in (pair.pi1, pair.pi2)
            ),
        }

    _run(ctx, compute)


@app.command()
def commutator(ctx: typer.Context, x: str, y: str):
    """Huq commutator [X, Y]; X and Y are algebras, Hker(f), Z(A) or D(A)."""
    _run(ctx, lambda s: _subalgebra_payload(huq_commutator(s.workspace.subalgebra(x), s.workspace.subalgebra(y))))


@app.command("center")
def center_cmd(ctx: typer.Context, algebra: str):
    """Center of an algebra with its Hopf closure flags."""

    def compute(s: CliState) -> Dict:
        sub = center(s.workspace.algebra(algebra))
        return {**_subalgebra_payload(sub), "flags": sub.flags()}

    _run(ctx, compute)


@app.command()
def quotient(ctx: typer.Context, algebra: str, subalgebra: str):
    """A / A K+ for a normal Hopf subalgebra K."""

    def compute(s: CliState) -> Dict:
        A = s.workspace.algebra(algebra)
        q = quotient_by_normal(A, s.workspace.subalgebra(subalgebra))
        return _algebra_payload(q.algebra)

    _run(ctx, compute)


@app.command()
def abelianize(ctx: typer.Context, algebra: str):
    """H1(A) = A / A[A,A]+."""
    _run(ctx, lambda s: _algebra_payload(abelianization(s.workspace.algebra(algebra)).algebra))


@app.command()
def crossed(ctx: typer.Context, action: str, cocycle: str):
    """Crossed product B #_sigma H from a measuring and a cocycle."""

    def compute(s: CliState) -> Dict:
        product = build_crossed_product(s.workspace.action(action), s.workspace.cocycle(cocycle))
        return {**_algebra_payload(product.algebra), "axioms": verify_axioms(product.algebra).passed}

    _run(ctx, compute)


@app.command("cleft-analyze")
def cleft_analyze(
    ctx: typer.Context,
    morphism: str,
    section: Optional[str] = typer.Argument(None, help="Coalgebra section; found automatically when omitted"),
):
    """Action, cocycle and crossed-product isomorphism of a cleft surjection."""

    def compute(s: CliState) -> Dict:
        f = s.workspace.morphism(morphism)
        i = s.workspace.section(section) if section else require_in_e(f)
        data = analyze_cleft(f, i)
        return {
            "morphism": f.name,
            "kernel_dim": data.kernel.dim,
            "action_trivial": data.action.is_trivial(),
            "cocycle_trivial": data.cocycle.is_trivial(),
            "section_multiplicative": is_trivial_extension(data),
            "sigma": data.sigma_table(),
            "canonical_map": canonical_map_report(data),
        }

    _run(ctx, compute)


@app.command("extension-report")
def extension_report_cmd(ctx: typer.Context, morphism: str, section: Optional[str] = typer.Option(None)):
    """Surjectivity, membership in E, normality and triviality of an extension."""

    def compute(s: CliState) -> Dict:
        f = s.workspace.morphism(morphism)
        return extension_report(f, s.workspace.section(section) if section else None).model_dump()

    _run(ctx, compute)


@app.command("pi1")
def pi1_cmd(
    ctx: typer.Context,
    morphism: str,
    method: str = typer.Option("formula", help="formula, elements or groupoid"),
    section: Optional[str] = typer.Option(None),
):
    """pi1(B) of a weakly universal normal extension A -> B."""

    def compute(s: CliState) -> Dict:
        f = s.workspace.morphism(morphism)
        if method == "formula":
            sub = pi1(f, s.workspace.section(section) if section else None)
        elif method == "elements":
            sub = pi1_from_elements(f)
        elif method == "groupoid":
            sub = pi1_from_groupoid(f)
        else:
            raise MalformedStructure(f"unknown pi1 method {method!r}")
        payload = _subalgebra_payload(sub)
        payload["grouplike_group"] = abelian_invariants(grouplike_group(sub.algebra()))
        return payload

    _run(ctx, compute)


@app.command()
def h2(
    ctx: typer.Context,
    target: str = typer.Argument(..., help="Group (group backend) or presentation morphism (direct)"),
    backend: Optional[str] = typer.Option(None, help="group or direct; overrides the global --backend"),
):
    """Second homology as a commutative group algebra."""

    def compute(s: CliState) -> Dict:
        ws = s.workspace
        chosen = backend or s.backend
        if chosen == "direct":
            result = h2_direct(ws.morphism(target))
        elif chosen == "group":
            group = ws.group(target) if target in GROUP_NAMES or target in ws.document.groups else ws.extension(target).Q
            result = h2_group(group, ws.field, s.settings.max_group_order, s.settings.normalized_bar)
        else:
            raise MalformedStructure(f"unknown H2 backend {chosen!r}")
        return {
            "backend": chosen,
            "dim": result.dim,
            "invariant_factors": abelian_invariants(grouplike_group(result)),
        }

    _run(ctx, compute)


@app.command()
def schur(ctx: typer.Context, group: str):
    """Schur multiplier H2(G, Z) from the bar resolution."""

    def compute(s: CliState) -> Dict:
        homology = second_homology(s.workspace.group(group), s.settings.max_group_order, s.settings.normalized_bar)
        return homology.snf().model_dump()

    _run(ctx, compute)


@app.command()
def fiveterm(
    ctx: typer.Context,
    morphism: str,
    presentation: Optional[str] = typer.Option(None, help="Presentation P -> A, required by the direct backend"),
    backend: Optional[str] = typer.Option(None, help="group or direct; overrides the global --backend"),
):
    """Five-term exact sequence of a cleft extension, checked node by node."""

    def compute(s: CliState) -> Dict:
        ws = s.workspace
        chosen = backend or s.backend
        if chosen == "group":
            seq = five_term("group", ext=ws.extension(morphism), field_=ws.field, max_order=s.settings.max_group_order)
        else:
            p = ws.morphism(presentation) if presentation else None
            seq = five_term(chosen, f=ws.morphism(morphism), presentation=p, field_=ws.field)
        return check_exactness(seq).model_dump()

    _run(ctx, compute, lambda p: p["is_exact"])


@app.command()
def selftest(ctx: typer.Context, only: Optional[List[str]] = typer.Option(None, help="Run only these checks")):
    """Run the invariant battery; exit 1 on any failure."""

    def compute(s: CliState) -> Dict:
        unknown = [name for name in only or () if name not in CHECKS]
        if unknown:
            raise MalformedStructure(f"unknown selftest checks {unknown}")
        return run_selftest(s.settings, tuple(only or ()))

    _run(ctx, compute, lambda p: all(result["passed"] for result in p.values()))


@app.command()
def zoo():
    """List the builtin groups and extensions."""
    table = Table(title="Builtin groups")
    table.add_column("Name", style="cyan")
    table.add_column("Order", style="green")
    table.add_column("Labels", style="magenta")
    for name in GROUP_NAMES:
        group = named_group(name)
        table.add_row(name, str(group.order), " ".join(group.labels))
    console.print(table)

    table = Table(title="Builtin extensions")
    table.add_column("Name", style="cyan")
    table.add_column("Kernel order", style="green")
    table.add_column("Central", style="yellow")
    table.add_column("Stem", style="yellow")
    for name in EXTENSION_NAMES:
        ext = named_extension(name)
        table.add_row(name, str(len(ext.N)), str(ext.is_central), str(ext.is_stem))
    console.print(table)


@app.command()
def store(ctx: typer.Context, path: Path, name: str):
    """Validate a workspace file and save it under NAME in the workspace directory."""

    def compute(s: CliState) -> Dict:
        document = load_document(path)
        counts = Workspace(document, field=s.field, max_permutation_order=s.settings.max_permutation_order).validate()
        saved = WorkspaceStorage(s.settings.workspace_dir).save(name, document, indent=s.settings.json_indent)
        return {"name": name, "path": str(saved), "entries": counts}

    _run(ctx, compute)


@app.command()
def workspaces(ctx: typer.Context):
    """List the workspaces saved in the workspace directory."""
    _run(ctx, lambda s: {"workspaces": WorkspaceStorage(s.settings.workspace_dir).list()})


if __name__ == "__main__":
    app()
