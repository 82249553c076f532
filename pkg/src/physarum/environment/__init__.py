"""Scenes, substrates and the chemical fields that evolve over them."""

from physarum.environment.fields import (SimulationFields, StimulusWeights, deposit_sources,
                                         diffuse_step, stimulus_at)
from physarum.environment.models import (ChemicalField, DiffusionParams, GridSpec, Scene,
                                         Species, StimulusSource, SubstrateMap)
from physarum.environment.scene import load_scene, parse_document, parse_scene

__all__ = ['ChemicalField', 'DiffusionParams', 'GridSpec', 'Scene', 'SimulationFields',
           'Species', 'StimulusSource', 'StimulusWeights', 'SubstrateMap', 'deposit_sources',
           'diffuse_step', 'load_scene', 'parse_document', 'parse_scene', 'stimulus_at']
