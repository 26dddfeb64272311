from django import template

from hullprice.utils import as_json_number, display_money, display_number

register = template.Library()


@register.filter
def money(value):
    return display_money(value)


@register.filter
def number(value):
    return display_number(value)


@register.filter
def exact(values):
    """
    Exact fractions of a price vector, "963/32, 10".
    """
    return ", ".join(as_json_number(value) for value in values)


@register.filter
def with_sign(value):
    text = display_money(value)
    if value is not None and value > 0:
        return f"+{text}"
    return text


@register.filter
def column(value, width):
    """
    Right align a money cell in a fixed width column.
    """
    return money(value).rjust(int(width))
