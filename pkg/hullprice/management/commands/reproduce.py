from django.core.management.base import BaseCommand, CommandError

from hullprice.golden import EXAMPLES, reproduce_all
from hullprice.management.errors import INCONSISTENT, command_errors
from hullprice.reports import render_golden


class Command(BaseCommand):
    help = "Reproduce the published results of the builtin examples."

    def add_arguments(self, parser):
        parser.add_argument("example", nargs="?", default="all", choices=[str(n) for n in EXAMPLES] + ["all"])
        parser.add_argument("--oracle", action="store_true", help="Also cross-check against the brute force grids")

    def handle(self, *args, **options):
        numbers = None if options["example"] == "all" else [int(options["example"])]
        with command_errors():
            results = reproduce_all(with_oracle=options["oracle"], numbers=numbers)
        self.stdout.write(render_golden(results))
        failed = [str(result.example) for result in results if not result.passed]
        if failed:
            raise CommandError(f"Example(s) {', '.join(failed)} not reproduced", returncode=INCONSISTENT)
