from django.core.management.base import BaseCommand, CommandError

from hullprice.dual import price_membership
from hullprice.enums import Method
from hullprice.feasets import LIMIT, opportunity_sets
from hullprice.management.errors import INVALID_SCENARIO, command_errors
from hullprice.models import PriceVector, load_scenario
from hullprice.reports import render_membership
from hullprice.utils import to_fraction


class Command(BaseCommand):
    help = "Check whether prices minimize the dual of a scenario and print the certificate."

    def add_arguments(self, parser):
        parser.add_argument("scenario", help="Scenario JSON document")
        parser.add_argument("--method", choices=[Method.CHP.value, Method.MCHP.value], default=Method.CHP.value)
        parser.add_argument("--price", action="append", required=True,
                            help="One price per node and period, node-major, repeat the flag")
        parser.add_argument("--epsilon", default=LIMIT)
        parser.add_argument("--resolution")

    def handle(self, *args, **options):
        with command_errors():
            scenario = load_scenario(options["scenario"])
            if len(options["price"]) != scenario.dimension:
                raise CommandError(
                    f"{scenario} has {scenario.dimension} price(s), got {len(options['price'])}",
                    returncode=INVALID_SCENARIO,
                )
            prices = PriceVector.from_values(scenario.keys, options["price"])
            method = Method(options["method"])
            sets = None
            if method == Method.MCHP:
                epsilon = options["epsilon"]
                found = opportunity_sets(
                    scenario, epsilon if epsilon == LIMIT else to_fraction(epsilon), resolution=options["resolution"],
                )
                sets = {player_id: opportunity.modified for player_id, opportunity in found.items()}
            certificate = price_membership(scenario, sets, prices)
        self.stdout.write(render_membership(scenario, method, certificate))
