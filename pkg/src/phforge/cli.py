"""Command-line front door.

Each subcommand loads curve documents, delegates to the shared op
layer, and prints the same deterministic JSON the HTTP service returns.
Exit codes: 0 success, 2 validation error, 3 solver came back empty.
"""

from __future__ import annotations

import functools
import os

import click

from .docio import ValidationError, document_to_json, load_document, render_json
from .ops import (
    SolverEmptyError,
    op_arclen,
    op_convert,
    op_info,
    op_ortho_basis,
    op_ortho_ph,
    op_perturb,
    op_render,
)
from .perturb import SCHEMES


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(2)
        except SolverEmptyError as exc:
            click.echo(f"empty: {exc}", err=True)
            click.echo(render_json({"diagnostics": exc.diagnostics}), err=True)
            raise SystemExit(3)
    return wrapper


def _floats(text, path):
    try:
        return [float(v) for v in str(text).split(",") if v.strip() != ""]
    except ValueError:
        raise ValidationError(path, f"expected comma-separated numbers, got {text!r}") from None


def _emit(payload):
    click.echo(render_json(payload))


@click.group()
@click.version_option(package_name="phforge")
def main():
    """Planar Pythagorean-hodograph curve toolkit."""


@main.command()
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@_handle_errors
def info(curve_file):
    """Norm, arc length, canonical residual, and PH verification."""
    w, p0, metadata = load_document(curve_file)
    _emit(op_info(w, p0, metadata))


@main.command()
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--to", "target", type=click.Choice(["legendre", "bernstein"]), required=True)
@_handle_errors
def convert(curve_file, target):
    """Rewrite the pre-image in the other basis."""
    w, p0, metadata = load_document(curve_file)
    click.echo(document_to_json(op_convert(w, p0, metadata, to=target)), nl=False)


@main.command("ortho-basis")
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@_handle_errors
def ortho_basis(curve_file):
    """Orthonormal complement basis of the pre-image."""
    w, _, _ = load_document(curve_file)
    _emit(op_ortho_basis(w))


@main.command("ortho-ph")
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--sigma", required=True,
              help="Speed coefficients, comma separated (power basis by default).")
@click.option("--sigma-basis", type=click.Choice(["power", "bernstein"]), default="power",
              show_default=True)
@click.option("--start", default="0,0", show_default=True,
              help="Start point re,im for the orthogonal curves.")
@click.option("--starts", default=512, show_default=True, help="Multistart count.")
@_handle_errors
def ortho_ph(curve_file, sigma, sigma_basis, start, starts):
    """PH curves orthogonal to a cubic with prescribed speed."""
    w, _, _ = load_document(curve_file)
    parts = _floats(start, "start")
    if len(parts) not in (1, 2):
        raise ValidationError("start", "expected re or re,im")
    z0 = complex(parts[0], parts[1] if len(parts) == 2 else 0.0)
    _emit(op_ortho_ph(w, _floats(sigma, "sigma"), sigma_basis=sigma_basis,
                      start=z0, starts=starts))


def _scheme_params(scheme, delta, r, phi, d, rho, phi0):
    params = {}
    if delta is not None:
        params["bound"] = delta
    if scheme == "equal-magnitude-legendre":
        if rho is None or phi is None:
            raise ValidationError("params", "scheme needs --rho and --phi lists")
        params.update(rhos=_floats(rho, "rho"), phis=_floats(phi, "phi"))
    elif scheme == "equal-magnitude-bernstein":
        if r is None or phi is None:
            raise ValidationError("params", "scheme needs --r and --phi lists")
        params.update(rs=_floats(r, "r"), phis=_floats(phi, "phi"))
    elif scheme == "tangent-preserving-bernstein":
        if r is None or phi is None:
            raise ValidationError("params", "scheme needs --r and --phi")
        values = _floats(r, "r")
        params.update(r=values[0] if len(values) == 1 else values,
                      interior_phis=_floats(phi, "phi"))
    elif scheme == "tangent-preserving-legendre":
        if rho is None or phi0 is None:
            raise ValidationError("params", "scheme needs --rho and --phi0")
        values = _floats(rho, "rho")
        if len(values) != 1:
            raise ValidationError("rho", "expected a single magnitude")
        params.update(rho=values[0], phi0=phi0)
    elif scheme == "endpoint-equal-angle":
        if d is None or phi is None:
            raise ValidationError("params", "scheme needs --d and --phi")
        values = _floats(phi, "phi")
        if len(values) != 1:
            raise ValidationError("phi", "expected a single angle")
        params.update(d=d, phi=values[0])
    elif scheme == "endpoints-tangents-quintic":
        if r is None:
            raise ValidationError("params", "scheme needs --r")
        values = _floats(r, "r")
        if len(values) != 1:
            raise ValidationError("r", "expected a single magnitude")
        params.update(r=values[0])
    return params


@main.command()
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--scheme", type=click.Choice(list(SCHEMES)), required=True)
@click.option("--delta", type=float, default=None, help="Perturbation budget.")
@click.option("--r", default=None, help="Bernstein magnitude(s), comma separated.")
@click.option("--phi", default=None, help="Angle or angle list, comma separated.")
@click.option("--d", type=float, default=None, help="Target perturbation size.")
@click.option("--rho", default=None, help="Legendre magnitude(s), comma separated.")
@click.option("--phi0", type=float, default=None, help="Prescribed first angle.")
@_handle_errors
def perturb(curve_file, scheme, delta, r, phi, d, rho, phi0):
    """Bounded pre-image perturbation under the chosen scheme."""
    w, p0, _ = load_document(curve_file)
    _emit(op_perturb(w, scheme, _scheme_params(scheme, delta, r, phi, d, rho, phi0), p0))


@main.command()
@click.argument("curve_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--delta-s", type=float, required=True, help="Arc length increase.")
@click.option("--fix", required=True, help="Pinned gammas as k=v,k=v (1-based).")
@click.option("--starts", default=256, show_default=True)
@_handle_errors
def arclen(curve_file, delta_s, fix, starts):
    """Grow the arc length while keeping both end points."""
    w, p0, _ = load_document(curve_file)
    fixed = {}
    for chunk in str(fix).split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ValidationError("fix", f"expected k=v, got {chunk!r}")
        key, _, val = chunk.partition("=")
        try:
            fixed[int(key)] = float(val)
        except ValueError:
            raise ValidationError("fix", f"bad assignment {chunk!r}") from None
    _emit(op_arclen(w, delta_s, fixed, p0, starts=starts))


@main.command()
@click.argument("curve_files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.option("--centroid-align", is_flag=True, default=False)
@click.option("--samples", default=256, show_default=True)
@click.option("--controls/--no-controls", default=True, show_default=True)
@_handle_errors
def render(curve_files, out, centroid_align, samples, controls):
    """Render curves to a deterministic SVG file."""
    docs = [load_document(f) for f in curve_files]
    svg = op_render(docs, samples=samples, centroid_align=centroid_align,
                    show_controls=controls)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    click.echo(out)


@main.command()
@click.argument("curve_files", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
@click.option("--samples", default=256, show_default=True)
@_handle_errors
def report(curve_files, out_dir, samples):
    """Matplotlib figure plus CSV samples, with a delimited summary."""
    from .curves import build_curve
    from .report import write_report

    docs = [load_document(f) for f in curve_files]
    curves = [build_curve(w, p0=p0) for w, p0, _ in docs]
    labels = [os.path.splitext(os.path.basename(f))[0] for f in curve_files]
    fig_path, csv_path, rows = write_report(curves, out_dir, samples=samples, labels=labels)
    for row in rows:
        click.echo(row)
    click.echo(f"figure\t{fig_path}")
    click.echo(f"samples\t{csv_path}")


@main.command()
@click.option("--port", default=8000, show_default=True,
              help="Port to bind; the PHFORGE_PORT env var overrides this.")
@click.option("--host", default="127.0.0.1", show_default=True)
@_handle_errors
def serve(port, host):
    """Run the stateless HTTP service."""
    import uvicorn

    from .service import app

    env_port = os.environ.get("PHFORGE_PORT")
    if env_port is not None:
        try:
            port = int(env_port)
        except ValueError:
            raise ValidationError("PHFORGE_PORT", f"not a port number: {env_port!r}") from None
    uvicorn.run(app, host=host, port=port)
