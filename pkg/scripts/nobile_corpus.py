import json
import logging
from pathlib import Path

import click
from nashfan.cli import configure_logging
from nashfan.config import get_config, parse_int_list
from nashfan.corpus import make_corpus
from nashfan.nash import NON_SINGULAR, SINGULAR, sweep_corpus

logger = logging.getLogger(__name__)


@click.command()
@click.option("--n-values", default="1,2", show_default=True, help="Orders of the blowups.")
@click.option("--primes", default="0,2,5", show_default=True, help="Characteristics, 0 for Q.")
@click.option("--seed", type=int, default=None, help="Corpus seed, the configured one by default.")
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=Path("nobile_corpus.json"))
def nobile_corpus(n_values: str, primes: str, seed: int, jobs: int, out: Path):
    """
    Run the higher Nobile decision on the fixed-seed corpus: every singular cone must give a subdivided
    fan with a verified witness in positive characteristic, every regular cone the trivial fan.
    """
    configure_logging(get_config(ignore_local=True).log_level)
    singular, regular = make_corpus(seed=seed)
    records = sweep_corpus(
        singular + regular, parse_int_list(n_values), parse_int_list(primes), jobs, progress=True, ignore_local=True
    )
    failures = [
        r
        for r in records
        if r["verdict"] != (NON_SINGULAR if r["regular_cone"] else SINGULAR)
        or r["witness_verified"] is False
        or r["non_membership"] is False
    ]
    out.write_text(json.dumps({"records": records, "failures": len(failures)}, indent=2) + "\n")
    click.echo(f"{len(records)} runs, {len(failures)} failures, written to {out}")
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    nobile_corpus()
