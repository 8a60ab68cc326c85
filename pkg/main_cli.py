"""
Command-line interface for SymReal.
"""
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import click
from pydantic import BaseModel, Field, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markdown import Markdown
from rich.panel import Panel
from rich.table import Table

from settings import get_settings
from src.combi import Partition, inversions, minimal_adjacent_transpositions
from src.decide import OrbitParam, decide_real_preimage
from src.emptiness import NonnegStatus, nonneg_degree_principle, real_emptiness
from src.errors import InconclusiveError, InputError, InvalidParam, SymRealError
from src.poly import Polynomial, format_rational, infer_nvars, parse, parse_rational
from src.realroot import RootSigns, UniPoly, format_signs, rational_roots
from src.sos import emit_sdpa, gram_system, verify_gram
from src.symfun import BasisKind, BlockStructure, ftsp_rewrite
from src.zerodim import ZeroDimParam, ZeroDimParamDocument

console = Console()
logger = logging.getLogger("symreal")


class CommandResult(BaseModel):
    """Single JSON document written by every command in ``--json`` mode."""

    command: str
    answer: Union[bool, int, str, None] = None
    witness: Optional[List[str]] = None
    certificate: Optional[Dict[str, Any]] = None
    seed: Optional[int] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[str] = None


def command_result_schema() -> Dict[str, Any]:
    return CommandResult.model_json_schema()


class CLIManager:
    """Manages the CLI interface."""

    def __init__(self, seed: Optional[int], json_output: bool):
        self.settings = get_settings()
        self.seed = self.settings.default_seed if seed is None else seed
        self.json_output = json_output

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def run(self, command: str, action: Callable[[], CommandResult], render: Callable[[CommandResult], None]):
        """Run one command, print its result and exit with the matching status."""
        try:
            result = action()
        except SymRealError as exc:
            logger.debug("%s failed", command, exc_info=True)
            self.display_error(command, exc)
            sys.exit(exc.exit_code)
        result.seed = self.seed
        if self.json_output:
            click.echo(json.dumps(result.model_dump(), sort_keys=True))
        else:
            render(result)
        unknown = command == "nonneg" and result.answer == NonnegStatus.UNKNOWN.value
        sys.exit(InconclusiveError.exit_code if unknown else 0)

    def display_error(self, command: str, exc: SymRealError):
        if self.json_output:
            result = CommandResult(command=command, seed=self.seed, error=f"{type(exc).__name__}: {exc}")
            click.echo(json.dumps(result.model_dump(), sort_keys=True))
            return
        title = "Inconclusive" if isinstance(exc, InconclusiveError) else "Error"
        console.print(Panel(f"[bold]{type(exc).__name__}[/bold]: {exc}", title=title, border_style="red"))

    def display_panel(self, text: str, title: str, border_style: str = "blue"):
        console.print(Panel(Markdown(text), title=title, border_style=border_style))


def _read_input(text: str) -> str:
    """Inline text, or the contents of a file when written ``@path``."""
    if not text.startswith("@"):
        return text
    try:
        return Path(text[1:]).read_text(encoding="utf-8").strip()
    except OSError as exc:
        raise InputError(f"cannot read {text[1:]}: {exc}") from exc


def _parse_polys(texts: List[str], nvars: Optional[int]) -> List[Polynomial]:
    sources = [_read_input(t) for t in texts]
    if nvars is None:
        nvars = max((infer_nvars(s) for s in sources), default=0)
    return [parse(s, nvars) for s in sources]


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


class SymRealGroup(click.Group):
    """Click group whose usage errors exit with the input-error status."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            code = super().main(*args, **kwargs)
        except click.ClickException as exc:
            exc.show()
            sys.exit(InputError.exit_code)
        except click.exceptions.Abort:
            sys.exit(InputError.exit_code)
        sys.exit(code if isinstance(code, int) else 0)


@click.group(cls=SymRealGroup)
@click.option("--seed", type=int, default=None, help="Seed for every randomized step (default: SYMREAL_SEED)")
@click.option("--json", "json_output", is_flag=True, help="Print one JSON document instead of panels")
@click.pass_context
def cli(ctx: click.Context, seed: Optional[int], json_output: bool):
    """Exact real algebraic geometry for symmetric polynomials."""
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
    ctx.obj = CLIManager(seed, json_output)


@cli.command()
@click.argument("polynomial")
@click.option("--basis", type=click.Choice(["e", "p", "h"]), default="e", show_default=True)
@click.option("--nvars", type=int, default=None, help="Number of variables (default: largest index used)")
@click.pass_obj
def rewrite(manager: CLIManager, polynomial: str, basis: str, nvars: Optional[int]):
    """Express a symmetric polynomial in elementary, power-sum or complete homogeneous functions."""

    def action() -> CommandResult:
        (f,) = _parse_polys([polynomial], nvars)
        kind = BasisKind.parse(basis)
        names = BlockStructure.single(f.nvars).y_names(kind)
        rewritten = ftsp_rewrite(f, kind)
        return CommandResult(
            command="rewrite",
            answer=rewritten.format(names),
            details={"basis": basis, "nvars": f.nvars},
        )

    def render(result: CommandResult):
        manager.display_panel(f"`{result.answer}`", title=f"Rewritten in {basis}")

    manager.run("rewrite", action, render)


@cli.command()
@click.argument("polynomial")
@click.option("--sign", "sign_poly", default=None, help="Report the sign of this polynomial at every root")
@click.pass_obj
def roots(manager: CLIManager, polynomial: str, sign_poly: Optional[str]):
    """Count the real roots of a univariate polynomial in T and list their Thom encodings."""

    def action() -> CommandResult:
        q = UniPoly.from_polynomial(parse(_read_input(polynomial), 1, names=["T"]))
        table = RootSigns(q)
        encodings = table.encodings()
        details: Dict[str, Any] = {
            "encodings": [enc.format() for enc in encodings],
            "rational_roots": [format_rational(r) for r in rational_roots(q)],
        }
        if sign_poly is not None:
            p = UniPoly.from_polynomial(parse(_read_input(sign_poly), 1, names=["T"]))
            details["signs"] = format_signs([table.sign(enc, p) for enc in encodings])
        return CommandResult(command="roots", answer=len(encodings), details=details)

    def render(result: CommandResult):
        table = Table(title=f"{result.answer} real roots of {polynomial}")
        table.add_column("#", justify="right")
        table.add_column("Thom encoding")
        if "signs" in result.details:
            table.add_column(f"sign of {sign_poly}")
        signs = result.details.get("signs", "[]")[1:-1].split(",")
        for k, enc in enumerate(result.details["encodings"]):
            row = [str(k + 1), enc]
            if "signs" in result.details:
                row.append(signs[k])
            table.add_row(*row)
        console.print(table)

    manager.run("roots", action, render)


@cli.command()
@click.argument("param_file", type=click.Path(dir_okay=False))
@click.option("--partition", "partition_text", required=True, help='Orbit type, e.g. "1,2" or "1^1 2^1"')
@click.pass_obj
def decide(manager: CLIManager, param_file: str, partition_text: str):
    """Decide whether a parametrized point set in block elementary coordinates has a real preimage."""

    def action() -> CommandResult:
        try:
            document = ZeroDimParamDocument.model_validate(_load_json(param_file))
        except ValidationError as exc:
            raise InvalidParam(str(exc)) from exc
        param = ZeroDimParam.from_document(document)
        try:
            partition = Partition.parse(partition_text)
        except ValueError as exc:
            raise InputError(f"invalid partition {partition_text!r}") from exc
        answer = decide_real_preimage(OrbitParam(partition, param))
        return CommandResult(
            command="decide",
            answer=answer,
            details={"partition": str(partition), "degree": param.degree},
        )

    def render(result: CommandResult):
        verdict = "has a real preimage" if result.answer else "has no real preimage"
        manager.display_panel(f"The parametrized set **{verdict}**.", title="Decide", border_style="green")

    manager.run("decide", action, render)


@cli.command()
@click.argument("polynomials", nargs=-1, required=True)
@click.option("--nvars", type=int, default=None)
@click.option("--verify-regularity", is_flag=True, help="Check the rank assumption first (can be slow)")
@click.pass_obj
def empty(manager: CLIManager, polynomials: List[str], nvars: Optional[int], verify_regularity: bool):
    """Decide whether symmetric equations have no common real solution."""

    def action() -> CommandResult:
        fs = _parse_polys(list(polynomials), nvars)
        answer = real_emptiness(fs, rng=manager.rng(), verify=verify_regularity)
        return CommandResult(
            command="empty",
            answer=answer,
            details={"nvars": fs[0].nvars, "equations": len(fs)},
        )

    def render(result: CommandResult):
        verdict = "**empty**" if result.answer else "**not empty**"
        manager.display_panel(f"The real zero set is {verdict}.", title="Real emptiness", border_style="green")

    manager.run("empty", action, render)


@cli.command()
@click.argument("polynomial")
@click.option("--nvars", type=int, default=None)
@click.pass_obj
def nonneg(manager: CLIManager, polynomial: str, nvars: Optional[int]):
    """Check nonnegativity of a symmetric polynomial on points with few distinct coordinates."""

    def action() -> CommandResult:
        (f,) = _parse_polys([polynomial], nvars)
        outcome = nonneg_degree_principle(f, rng=manager.rng())
        witness = None
        details: Dict[str, Any] = {"nvars": f.nvars}
        if outcome.witness is not None:
            witness = [format_rational(x) for x in outcome.witness]
            details["value"] = format_rational(f.evaluate(outcome.witness))
        if outcome.pattern is not None:
            details["pattern"] = str(outcome.pattern)
        return CommandResult(command="nonneg", answer=outcome.status.value, witness=witness, details=details)

    def render(result: CommandResult):
        text = f"Answer: **{result.answer}**"
        if result.witness:
            text += f"\n\nWitness `({', '.join(result.witness)})` with value `{result.details['value']}`"
        elif "pattern" in result.details:
            text += f"\n\nNo certificate on the pattern `{result.details['pattern']}`"
        manager.display_panel(text, title="Nonnegativity", border_style="yellow")

    manager.run("nonneg", action, render)


def _read_matrix(path: str) -> List[List[Fraction]]:
    rows = _load_json(path)
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise InputError("the Gram matrix must be a JSON list of rows")
    return [[parse_rational(str(v)) for v in row] for row in rows]


@cli.command()
@click.argument("polynomial")
@click.option("--nvars", type=int, default=None)
@click.option("--full-basis", is_flag=True, help="Use every monomial of degree <= d/2")
@click.option("--prune", is_flag=True, help="Drop monomials outside the exponent box of the Newton polytope")
@click.option("--matrix", "matrix_file", default=None, help="JSON Gram matrix to verify against the basis")
@click.pass_obj
def gram(manager: CLIManager, polynomial: str, nvars: Optional[int], full_basis: bool, prune: bool, matrix_file: Optional[str]):
    """Build the Gram system of a polynomial and optionally verify a certificate."""

    def action() -> CommandResult:
        (f,) = _parse_polys([polynomial], nvars)
        system = gram_system(f, full_basis=full_basis, prune=prune)
        basis = [m.format() for m in system.basis]
        details = {"basis": basis, "constraints": len(system.constraints)}
        if matrix_file is None:
            return CommandResult(command="gram", answer=len(system.constraints), details=details)
        matrix = _read_matrix(matrix_file)
        answer = verify_gram(f, system.basis, matrix)
        certificate = {"basis": basis, "matrix": [[format_rational(v) for v in row] for row in matrix]}
        return CommandResult(command="gram", answer=answer, certificate=certificate, details=details)

    def render(result: CommandResult):
        text = f"Basis: `{', '.join(result.details['basis'])}`\n\nConstraints: {result.details['constraints']}"
        if result.certificate is not None:
            text += f"\n\nCertificate valid: **{result.answer}**"
        manager.display_panel(text, title="Gram system")

    manager.run("gram", action, render)


@cli.command()
@click.argument("polynomial")
@click.argument("output", type=click.Path(dir_okay=False))
@click.option("--nvars", type=int, default=None)
@click.option("--full-basis", is_flag=True)
@click.option("--prune", is_flag=True)
@click.pass_obj
def sdpa(manager: CLIManager, polynomial: str, output: str, nvars: Optional[int], full_basis: bool, prune: bool):
    """Write the Gram system as a sparse SDPA problem for an external solver."""

    def action() -> CommandResult:
        (f,) = _parse_polys([polynomial], nvars)
        system = gram_system(f, full_basis=full_basis, prune=prune)
        path = emit_sdpa(system, output)
        return CommandResult(
            command="sdpa",
            answer=str(path),
            details={"block_size": system.size, "constraints": len(system.constraints)},
        )

    def render(result: CommandResult):
        manager.display_panel(
            f"Wrote `{result.answer}` (block {result.details['block_size']}, "
            f"{result.details['constraints']} constraints)",
            title="SDPA",
            border_style="green",
        )

    manager.run("sdpa", action, render)


@cli.command(name="sort")
@click.argument("values", nargs=-1, required=True)
@click.pass_obj
def sort_values(manager: CLIManager, values: List[str]):
    """Sort a vector by adjacent transpositions, never swapping equal entries."""

    def action() -> CommandResult:
        vector = [parse_rational(v) for v in values]
        swaps, ordered = minimal_adjacent_transpositions(vector)
        return CommandResult(
            command="sort",
            answer=len(swaps),
            details={
                "transpositions": [f"({i},{j})" for i, j in swaps.swaps],
                "sorted": [format_rational(v) for v in ordered],
                "inversions": inversions(vector),
            },
        )

    def render(result: CommandResult):
        text = (
            f"{result.answer} transpositions: {' '.join(result.details['transpositions']) or '-'}\n\n"
            f"Sorted: `{', '.join(result.details['sorted'])}`"
        )
        manager.display_panel(text, title="Sort")

    manager.run("sort", action, render)


@cli.command()
def schema():
    """Print the JSON schema of the documents written in --json mode."""
    click.echo(json.dumps(command_result_schema(), indent=2, sort_keys=True))


def main():
    cli(prog_name="symreal")


if __name__ == "__main__":
    main()
