from django.apps import AppConfig


class HullPriceConfig(AppConfig):
    name = "hullprice"
    verbose_name = "Hull Price"
