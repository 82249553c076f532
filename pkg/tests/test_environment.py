import numpy as np
import pytest

from conftest import scene_document
from physarum.environment.fields import (SimulationFields, StimulusWeights, deposit_sources,
                                         diffuse_step, stimulus_at)
from physarum.environment.models import (ChemicalField, GridSpec, Species, StimulusSource,
                                         SubstrateMap)
from physarum.environment.pgm import encode_pgm, parse_pgm
from physarum.environment.scene import parse_document, parse_scene, scene_to_document
from physarum.errors import (DimensionMismatch, OutOfBounds, SchemaViolation,
                             SemanticViolation, StabilityViolation)
from physarum.harness.scenes import bundled_scene


# -----------------------------------------------------------------------------
# Test Case 1: A minimal document parses into a scene with defaults filled in
# -----------------------------------------------------------------------------
def test_minimal_scene_parses():
    scene = parse_document(scene_document(
        sources=[{'x': 30, 'y': 8, 'kind': 'attractant'}]))

    assert scene.grid == GridSpec(40, 16, 1.0)
    assert scene.inoculation_sites == [(10, 8)]
    assert scene.sources[0].strength == 1.0
    assert not scene.sources[0].consumable
    assert scene.substrate.nutrient.shape == (16, 40)
    assert not scene.substrate.wall.any()
    assert scene.params.wave_speed == 1.0


# -----------------------------------------------------------------------------
# Test Case 2: Schema errors name the offending field
# -----------------------------------------------------------------------------
def test_schema_errors_carry_a_path():
    document = scene_document()
    document['grid']['width'] = 'forty'
    with pytest.raises(SchemaViolation) as exc:
        parse_document(document)
    assert exc.value.path == 'grid.width'

    document = scene_document()
    del document['grid']
    with pytest.raises(SchemaViolation) as exc:
        parse_document(document)
    assert exc.value.path == '<root>'
    assert 'grid' in str(exc.value)

    with pytest.raises(SchemaViolation):
        parse_scene('{"grid": ')


# -----------------------------------------------------------------------------
# Test Case 3: Semantic errors (bounds, walls, engine ranges, grid cap)
# -----------------------------------------------------------------------------
def test_semantic_errors_carry_a_path(monkeypatch):
    outside = scene_document(sources=[{'x': 40, 'y': 8, 'kind': 'attractant'}])
    with pytest.raises(SemanticViolation) as exc:
        parse_document(outside)
    assert exc.value.path == 'sources[0]'

    walled = scene_document(substrate={'wall_cells': [[10, 8]]})
    with pytest.raises(SemanticViolation) as exc:
        parse_document(walled)
    assert exc.value.path == 'inoculation[0]'

    stray_wall = scene_document(substrate={'wall_cells': [[50, 8]]})
    with pytest.raises(SemanticViolation) as exc:
        parse_document(stray_wall)
    assert exc.value.path == 'substrate.wall_cells[0]'

    with pytest.raises(SemanticViolation) as exc:
        parse_document(scene_document(engine={'wave_speed': 1.5}))
    assert exc.value.path == 'engine.wave_speed'

    monkeypatch.setenv('PHYSARUM_MAX_CELLS', '100')
    with pytest.raises(SemanticViolation) as exc:
        parse_document(scene_document())
    assert exc.value.path == 'grid'


# -----------------------------------------------------------------------------
# Test Case 4: A diffusion coefficient above 0.25 is rejected
# -----------------------------------------------------------------------------
def test_unstable_diffusion_is_rejected():
    document = scene_document(diffusion={'attractant': {'D': 0.3, 'lambda': 0.01}})
    with pytest.raises(StabilityViolation) as exc:
        parse_document(document)
    assert exc.value.path == 'diffusion.attractant.D'

    field = ChemicalField.zeros((8, 8))
    with pytest.raises(StabilityViolation):
        diffuse_step(field, SubstrateMap.uniform(GridSpec(8, 8)), 0.3, 0.0)


# -----------------------------------------------------------------------------
# Test Case 5: Without decay, diffusion conserves mass and walls stay empty
# -----------------------------------------------------------------------------
def test_diffusion_conserves_mass_around_walls():
    grid = GridSpec(12, 10)
    wall = np.zeros(grid.shape, dtype=bool)
    wall[:, 6] = True
    wall[4, 6] = False
    substrate = SubstrateMap(np.zeros(grid.shape), wall)
    field = ChemicalField.zeros(grid.shape)
    field.concentration[5, 2] = 100.0

    for _ in range(200):
        field = diffuse_step(field, substrate, 0.25, 0.0)

    assert field.total() == pytest.approx(100.0, rel=1e-9)
    assert (field.concentration[wall] == 0.0).all()
    assert (field.concentration >= 0.0).all()
    assert field.concentration[5, 10] > 0.0


# -----------------------------------------------------------------------------
# Test Case 6: Decay scales a uniform field; mismatched rasters are rejected
# -----------------------------------------------------------------------------
def test_decay_and_dimension_checks():
    grid = GridSpec(8, 8)
    field = ChemicalField(np.ones(grid.shape))
    decayed = diffuse_step(field, SubstrateMap.uniform(grid), 0.2, 0.1)
    assert np.allclose(decayed.concentration, 0.9)
    assert np.allclose(field.concentration, 1.0)

    with pytest.raises(DimensionMismatch):
        diffuse_step(ChemicalField.zeros((9, 8)), SubstrateMap.uniform(grid), 0.2, 0.0)


# -----------------------------------------------------------------------------
# Test Case 7: Deposits follow the source species, strength and remaining mass
# -----------------------------------------------------------------------------
def test_deposit_sources():
    field = ChemicalField.zeros((8, 8))
    plain = StimulusSource(1, 1, Species.ATTRACTANT, 2.0)
    repellent = StimulusSource(2, 2, Species.REPELLENT, 5.0)
    scarce = StimulusSource(3, 3, Species.ATTRACTANT, 1.0, consumable=True, remaining_mass=0.5)
    fed = StimulusSource(4, 4, Species.ATTRACTANT, 2.0, consumable=True, remaining_mass=100.0,
                         colonized=True)

    out = deposit_sources(field, [plain, repellent, scarce, fed], accelerated_depletion=10.0)

    assert out.concentration[1, 1] == 2.0
    assert out.concentration[2, 2] == 0.0
    assert out.concentration[3, 3] == 0.5
    assert scarce.remaining_mass == 0.0
    assert scarce.depleted
    assert out.concentration[4, 4] == 2.0
    assert fed.remaining_mass == 80.0
    assert field.total() == 0.0


# -----------------------------------------------------------------------------
# Test Case 8: The sensed stimulus is signed
# -----------------------------------------------------------------------------
def test_stimulus_is_signed():
    attractant = ChemicalField(np.full((4, 4), 1.0))
    repellent = ChemicalField(np.full((4, 4), 3.0), Species.REPELLENT)

    assert stimulus_at(attractant, repellent, StimulusWeights(1.0, 1.0), (1, 1)) == -2.0
    assert stimulus_at(attractant, repellent, StimulusWeights(2.0, 0.0), (1, 1)) == 2.0
    with pytest.raises(OutOfBounds):
        stimulus_at(attractant, repellent, StimulusWeights(), (4, 0))


# -----------------------------------------------------------------------------
# Test Case 9: Priming fills the dish without consuming food
# -----------------------------------------------------------------------------
def test_priming_does_not_consume_sources():
    scene = parse_document(scene_document(
        sources=[{'x': 30, 'y': 8, 'kind': 'attractant', 'consumable': True, 'mass': 5.0},
                 {'x': 5, 'y': 3, 'kind': 'attractant'}],
        diffusion={'attractant': {'D': 0.2, 'lambda': 0.01, 'prime_ticks': 30}}))

    fields = SimulationFields.prepared(scene)

    assert fields.sources[0].remaining_mass == 5.0
    assert scene.sources[0].remaining_mass == 5.0
    both = fields.attractant().concentration
    first_only = fields.attractant(exclude=[1]).concentration
    assert both[8, 30] > 0.0
    assert np.allclose(both, first_only + fields.plumes[1].concentration)

    fields.advance()
    assert fields.sources[0].remaining_mass == 4.0
    assert scene.sources[0].remaining_mass == 5.0


# -----------------------------------------------------------------------------
# Test Case 10: PGM images, plain and binary
# -----------------------------------------------------------------------------
def test_pgm_codec():
    pixels = parse_pgm(b'P2\n# two pixels\n2 1\n15\n0 15\n')
    assert pixels.shape == (1, 2)
    assert pixels.tolist() == [[0.0, 255.0]]

    encoded = encode_pgm(np.array([[0, 300], [-5, 7]]))
    assert encoded == b'P5 2 2 255\n' + bytes([0, 255, 0, 7])

    with pytest.raises(ValueError):
        parse_pgm(b'P6\n1 1\n255\n\x00')


# -----------------------------------------------------------------------------
# Test Case 11: The silhouette mask rasterizes into nutrient agar
# -----------------------------------------------------------------------------
def test_bundled_mask_scene():
    scene = bundled_scene('substrate_shape')
    rich = scene.substrate.rich(scene.params.nutrient_threshold)

    assert rich.shape == (160, 129)
    assert int(rich.sum()) == 4403
    assert rich[60, 64]
    assert not rich[150, 44] and not rich[150, 84]


# -----------------------------------------------------------------------------
# Test Case 12: A serialized scene parses back to the same dish
# -----------------------------------------------------------------------------
def test_scene_document_round_trip():
    scene = parse_document(scene_document(
        nutrient=0.0,
        substrate={'default_nutrient': 0.0, 'nutrient_rects': [{'x': 2, 'y': 2, 'w': 3, 'h': 2}],
                   'wall_rects': [{'x': 20, 'y': 0, 'w': 1, 'h': 5}]},
        sources=[{'x': 30, 'y': 8, 'kind': 'repellent', 'strength': 0.5}],
        engine={'seed': 3, 'continuation': True}))

    again = parse_document(scene_to_document(scene))

    assert np.array_equal(again.substrate.nutrient, scene.substrate.nutrient)
    assert np.array_equal(again.substrate.wall, scene.substrate.wall)
    assert again.sources == scene.sources
    assert again.params == scene.params
