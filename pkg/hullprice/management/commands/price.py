import logging

from django.core.management.base import BaseCommand

from hullprice.enums import Method, RoundingPolicy
from hullprice.feasets import LIMIT
from hullprice.management.errors import command_errors
from hullprice.models import load_scenario
from hullprice.reports import render, run_scenario
from hullprice.utils import to_fraction

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Solve the dispatch of a scenario file and price it with convex hull and modified convex hull pricing."

    def add_arguments(self, parser):
        parser.add_argument("scenario", help="Scenario JSON document")
        parser.add_argument("--method", choices=[m.value for m in Method], default=Method.BOTH.value)
        parser.add_argument(
            "--epsilon", default=LIMIT,
            help=f"Inflation of the modified sets in MWh, {LIMIT} (default) for the limit sets",
        )
        parser.add_argument("--resolution", help="Cap sweep resolution in MWh")
        parser.add_argument("--rounding", choices=[r.value for r in RoundingPolicy],
                            help="Overrides the scenario's rounding policy")
        parser.add_argument("--format", dest="output_format", choices=["text", "structured"], default="text")
        parser.add_argument("--oracle", action="store_true", help="Cross-check the dispatch on a 1 MWh grid")
        parser.add_argument("--output", help="Write the report to this file instead of the console")

    def handle(self, *args, **options):
        with command_errors():
            scenario = load_scenario(options["scenario"])
            epsilon = options["epsilon"]
            report = run_scenario(
                scenario,
                method=Method(options["method"]),
                epsilon=epsilon if epsilon == LIMIT else to_fraction(epsilon),
                resolution=options["resolution"],
                rounding=RoundingPolicy(options["rounding"]) if options["rounding"] else None,
                oracle=options["oracle"],
            )
            text = render(report, options["output_format"])
            if options["output"]:
                with open(options["output"], "w", encoding="utf-8") as handle:
                    handle.write(text)
                logger.info("Report of %s written to %s", scenario, options["output"])
            else:
                self.stdout.write(text)
        if options["verbosity"] > 1:
            for step, seconds in report.timings.items():
                self.stderr.write(f"{step}: {seconds:.3f}s")
