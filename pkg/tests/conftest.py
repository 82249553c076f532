import copy

import pytest

from physarum.environment.scene import parse_document


def scene_document(width=40, height=16, nutrient=0.0, sources=None, inoculation=None,
                   engine=None, **extra):
    """Small scene document; every test builds its dish from this."""
    document = {
        'grid': {'width': width, 'height': height, 'cell_size_mm': 1.0},
        'substrate': {'default_nutrient': nutrient},
        'sources': sources if sources is not None else [],
        'inoculation': inoculation if inoculation is not None else [{'x': 10, 'y': 8}],
        'engine': engine if engine is not None else {},
    }
    document.update(extra)
    return document


STRAIGHT_ENGINE = {'seed': 7, 'noise_amplitude': 0.0, 'branch_ratio': 1.0}


@pytest.fixture
def straight_document():
    """One inoculation at (10, 8) and one attractant 20 cells east of it."""
    return scene_document(
        sources=[{'x': 30, 'y': 8, 'kind': 'attractant', 'strength': 1.0}],
        engine=dict(STRAIGHT_ENGINE))


@pytest.fixture
def straight_scene(straight_document):
    return parse_document(copy.deepcopy(straight_document))


@pytest.fixture
def rich_pair_scene():
    """Two inoculation sites on nutrient agar, mirror images about x = 15.5."""
    return parse_document(scene_document(
        width=32, height=9, nutrient=1.0,
        inoculation=[{'x': 4, 'y': 4}, {'x': 27, 'y': 4}]))
