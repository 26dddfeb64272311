SINGLE_UNIT_DOCUMENT = {
    'name': "Single unit",
    'units': [
        {'id': "unit", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
    'consumers': [
        {'id': "load", 'fixed_load': "50"},
    ],
}

TWO_NODE_DOCUMENT = {
    'name': "Two nodes",
    'rounding_policy': "exact",
    'network': {'kind': "two-node", 'nodes': ["west", "east"], 'line_capacity': "40"},
    'units': [
        {'id': "cheap", 'node': "west", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
        {'id': "dear", 'node': "east", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "25"}},
    ],
    'consumers': [
        {'id': "city", 'node': "east", 'fixed_load': "60"},
    ],
}

TWO_PERIOD_DOCUMENT = {
    'name': "Two periods",
    'periods': 2,
    'units': [
        {
            'id': "unit",
            'g_min': "10",
            'g_max': ["100", "80"],
            'variable_cost': {'kind': "piecewise", 'segments': [["0", "10"], ["50", "12"]]},
            'no_load_cost': "5",
            'startup_cost': "20",
            'ramp_limit': "40",
        },
    ],
    'consumers': [
        {'id': "load", 'fixed_load': ["30", "60"]},
    ],
}

INFEASIBLE_DOCUMENT = {
    'name': "Short of capacity",
    'units': [
        {'id': "unit", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
    'consumers': [
        {'id': "load", 'fixed_load': "150"},
    ],
}

DOCUMENT__NO_UNITS = {
    'consumers': [{'id': "load", 'fixed_load': "50"}],
}

DOCUMENT__MIN_ABOVE_MAX = {
    'units': [
        {'id': "unit", 'g_min': "120", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
}

DOCUMENT__UNKNOWN_NODE = {
    'units': [
        {'id': "unit", 'node': "n9", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
}

DOCUMENT__RISING_BIDS = {
    'units': [
        {'id': "unit", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
    'consumers': [
        {'id': "buyer", 'elastic_segments': [[["20", "10"], ["30", "10"]]]},
    ],
}

DOCUMENT__DUPLICATE_IDS = {
    'units': [
        {'id': "same", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
    'consumers': [
        {'id': "same", 'fixed_load': "50"},
    ],
}

DOCUMENT__BAD_NUMBER = {
    'units': [
        {'id': "unit", 'g_max': "a lot", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
}

DOCUMENT__THREE_PERIODS = {
    'periods': 3,
    'units': [
        {'id': "unit", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"}},
    ],
}

DOCUMENT__ONLINE_RAMP_WITHOUT_OUTPUT = {
    'units': [
        {
            'id': "unit", 'g_max': "100", 'variable_cost': {'kind': "affine", 'slope': "10"},
            'ramp_limit': "20", 'initial_status': "on",
        },
    ],
}
