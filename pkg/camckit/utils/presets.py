"""
Module loading the named reproduction presets.

A presets file is a YAML mapping from preset name to a mapping of CLI
option names (with dashes replaced by underscores) to default values.
A preset may instead list other presets under "sections"; such a preset
stands for all of them at once.
"""

from importlib import resources
from typing import Any, Dict, List, Optional

import yaml

from camckit.errors import InvalidPreset

__author__ = "camc-kit developers"
__license__ = "MIT"

PresetTable = Dict[str, Dict[str, Any]]


def load_presets(path: Optional[str] = None) -> PresetTable:
    """Reads the bundled presets, or the file at path when given."""
    try:
        if path is None:
            text = resources.files("camckit").joinpath("presets.yaml").read_text("utf-8")
        else:
            with open(path, "r", encoding="utf-8") as presets_file:
                text = presets_file.read()
    except FileNotFoundError as exc:
        raise InvalidPreset(f"Presets file {path!r} not found.") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InvalidPreset(f"File {path!r} does not contain valid YAML.") from exc
    if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
        raise InvalidPreset(f"File {path!r} must map preset names to option mappings.")
    return data


def expand_preset(presets: PresetTable, name: str) -> List[Dict[str, Any]]:
    """Returns the option mappings a preset name stands for."""
    try:
        preset = presets[name]
    except KeyError as exc:
        raise InvalidPreset(
            f"Unknown preset {name!r}, known: {', '.join(sorted(presets))}"
        ) from exc
    if "sections" not in preset:
        return [dict(preset, name=name)]
    sections: List[Dict[str, Any]] = []
    for section in preset["sections"]:
        if section == name:
            raise InvalidPreset(f"Preset {name!r} lists itself")
        sections.extend(expand_preset(presets, section))
    return sections
