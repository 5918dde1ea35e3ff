import functools

import typer
from pydantic import ValidationError

from app import __version__
from app.core.errors import ConfigError, LandscapeError
from app.features.experiments import commands
from app.utils import get_logger


log = get_logger(__name__)
app = typer.Typer(
    name="clifford-landscape",
    help="Loss landscapes of Clifford variational circuits: variance scans, siloed minima and exact checks",
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


def handle_errors(command):
    """Map package errors to their exit codes and validation errors to a config error."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except ValidationError as exc:
            errors = dict()
            for error in exc.errors():
                if "loc" not in error or "msg" not in error:
                    continue
                key = error["loc"][-1] if error["loc"] else "root"
                if key == "__root__":
                    key = "root"
                errors[key] = error["msg"]
            log.error("Config validation error %s", errors)
            raise typer.Exit(code=ConfigError.exit_code)
        except LandscapeError as exc:
            log.error("%s: %s", type(exc).__name__, exc)
            raise typer.Exit(code=exc.exit_code)

    return wrapper


def _version(value: bool):
    if value:
        typer.echo(__version__)
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(False, "--version", callback=_version, is_eager=True, help="Show the version and exit"),
):
    """Reproducible experiments on Clifford-VQA loss landscapes."""


# Register commands
app.command("variance-scan")(handle_errors(commands.variance_scan))
app.command("exact-minima")(handle_errors(commands.exact_minima))
app.command("random-obs")(handle_errors(commands.random_obs))
app.command("lemma-checks")(handle_errors(commands.lemma_checks))
app.command("fixtures")(handle_errors(commands.fixtures))
app.command("plot")(handle_errors(commands.plot))


def run():
    app()
